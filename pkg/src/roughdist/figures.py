"""Tabulated data behind the five feasibility figures, as CSV.

Each ``figN_rows`` function returns ``(comments, header, rows)``; rows are
exact integers or ``Fraction`` values and are sorted.  :func:`write_csv`
renders them with LF line endings and ``#`` comment lines.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

from .feasibility import case0_k, case1_powerset_models, case2_count_values

__all__ = [
    "DEFAULT_N_GRID",
    "DEFAULT_PI_GRID",
    "fig1_rows",
    "fig2_rows",
    "fig3_rows",
    "fig4_rows",
    "fig5_rows",
    "figure_rows",
    "write_csv",
    "render_csv",
]

DEFAULT_N_GRID = (10**2, 10**3, 10**4, 10**5, 10**6)
DEFAULT_PI_GRID = tuple(Fraction(i, 20) for i in range(1, 21))


def _case0_pairs(n_max: int):
    k = 1
    while k * k + k <= n_max:
        n = k * k + k
        assert case0_k(n) == k
        yield n, k
        k += 1


def fig1_rows(n_max: int = 10**4):
    comments = [
        "rough objects between crisp objects, reflexive-pairs chain case (n = k^2 + k)",
        "rough_per_crisp_gap = (n-k)/k: rough objects per crisp object along the chain",
    ]
    rows = [(n, k, n - k, Fraction(n - k, k)) for n, k in _case0_pairs(n_max)]
    return comments, ("n", "k", "rough_total", "rough_per_crisp_gap"), rows


def fig2_rows(n_max: int = 10**4):
    comments = ["admissible (n, k), reflexive-pairs chain case"]
    return comments, ("n", "k"), list(_case0_pairs(n_max))


def fig3_rows(n_max: int = 10**8):
    comments = ["power-set models on a chain: 2^x = k^2, n = 2^x"]
    return comments, ("x", "k", "n"), case1_powerset_models(n_max)


def _grid_rows(n_grid: Iterable[int], pi_grid: Iterable, trimmed: bool):
    rows = []
    for n in sorted(set(n_grid)):
        for pi in sorted({Fraction(p) for p in pi_grid}):
            rows.append((n, pi, case2_count_values(n, pi, trimmed=trimmed)))
    return rows


def fig4_rows(n_grid: Iterable[int] = DEFAULT_N_GRID, pi_grid: Iterable = DEFAULT_PI_GRID):
    comments = ["number of candidate k in 2..floor(sqrt(n/pi))"]
    return comments, ("n", "pi", "count"), _grid_rows(n_grid, pi_grid, False)


def fig5_rows(n_grid: Iterable[int] = DEFAULT_N_GRID, pi_grid: Iterable = DEFAULT_PI_GRID):
    comments = ["number of candidate k in 2..min(floor(sqrt(n/pi)), floor(sqrt(n)))"]
    return comments, ("n", "pi", "count"), _grid_rows(n_grid, pi_grid, True)


def figure_rows(fig: int, n_max: int | None = None, n_grid=None, pi_grid=None):
    if fig in (1, 2, 3):
        builder = {1: fig1_rows, 2: fig2_rows, 3: fig3_rows}[fig]
        return builder() if n_max is None else builder(n_max)
    if fig in (4, 5):
        builder = fig4_rows if fig == 4 else fig5_rows
        return builder(n_grid or DEFAULT_N_GRID, pi_grid or DEFAULT_PI_GRID)
    raise ValueError(f"no figure {fig}")


def write_csv(stream: TextIO, comments: Sequence[str], header: Sequence[str], rows: Iterable[Sequence]) -> None:
    for c in comments:
        stream.write(f"# {c}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([str(v) for v in row])


def render_csv(comments, header, rows) -> str:
    buf = io.StringIO()
    write_csv(buf, comments, header, rows)
    return buf.getvalue()
