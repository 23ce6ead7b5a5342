import io
import json
import os
from fractions import Fraction

import pytest

from roughdist import cli, figures
from roughdist.formats import (
    ParseError,
    dump_family,
    dump_gos,
    dump_poset,
    parse_family,
    parse_gos,
    parse_poset,
)
from roughdist.granular import pawlak_from_partition
from roughdist.poset import SetFamily, boolean_lattice, covering_pairs


def run(*argv):
    buf = io.StringIO()
    code = cli.main([str(a) for a in argv], out=buf)
    return code, buf.getvalue()


# --- formats --------------------------------------------------------------------------


def test_parse_poset(fixture_path):
    with open(fixture_path("b2.poset")) as fh:
        p = parse_poset(fh.read())
    assert p.elements == (0, "a", "b", 1)
    assert p.bottom() == 0 and p.top() == 1
    assert len(covering_pairs(p)) == 4


def test_poset_round_trip():
    p = parse_poset("elements: x y z\nx <= y\ny <= z\nx <= z\n")
    again = parse_poset(dump_poset(p))
    assert again.elements == p.elements
    assert (again.leq_table == p.leq_table).all()


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("elements: a b\na => b\n", 2, 1),
        ("a <= b\n", 1, 1),
        ("elements: a b\n  a <= c\n", 2, 8),
        ("# nothing\n", 1, 1),
        ("elements: a a\n", 1, 1),
    ],
)
def test_poset_parse_errors(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_poset(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_gos_round_trip():
    space = pawlak_from_partition([1, 2, 3], [{1, 2}, {3}])
    for pawlak in (True, False):
        again = parse_gos(dump_gos(space, pawlak=pawlak))
        assert all(again.pair(a) == space.pair(a) for a in space.subsets())
        assert set(again.granulation) == set(space.granulation)


def test_gos_parse_errors():
    with pytest.raises(ParseError) as err:
        parse_gos("universe: 1 2\nlower {1,9} -> {}\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_gos("block: 1\n")
    with pytest.raises(ParseError):
        parse_gos("universe: 1 2\nblock: 1\npawlak\n")  # blocks do not cover
    with pytest.raises(ParseError):
        parse_gos("universe: 1\ngranule: 1\nlower {} -> {}\n")  # tables not total


def test_family_round_trip():
    fam = parse_family("ground: 1 2 3 4\nset: 1 2\nset: 2 3\n")
    assert fam.ground == frozenset({1, 2, 3, 4})
    assert parse_family(dump_family(fam)) == fam
    assert parse_family("set: 1\nset: 1 2\n") == SetFamily.of([{1}, {1, 2}])
    with pytest.raises(ParseError):
        parse_family("member: 1\n")


# --- feasible -------------------------------------------------------------------------------


def test_feasible_case1():
    assert run("feasible", "--case", "1", "--n", 9) == (0, "k=3 rough=6\n")


def test_feasible_case0_infeasible():
    code, text = run("feasible", "--case", "0", "--n", 7)
    assert code == 3
    assert text == "infeasible: 1+4n not a perfect square\n"


def test_feasible_case2_alpha():
    code, text = run("feasible", "--case", "2", "--n", 1000000, "--alpha", "1/2")
    assert code == 0
    assert "admissible k values: 1413" in text.splitlines()
    code, text = run("feasible", "--case", "2", "--n", 1000000, "--alpha", "1/2", "--trimmed")
    assert "admissible k values: 999" in text.splitlines()


def test_feasible_case2_pi():
    code, text = run("feasible", "--case", "2", "--n", 35, "--pi", "2/3")
    assert code == 0 and "k=7 rough=28 pi=2/3" in text
    code, _ = run("feasible", "--case", "2", "--n", 12, "--pi", "1/2")
    assert code == 3


def test_feasible_powerset_reports_discrepancy():
    code, text = run("feasible", "--case", "1p", "--n", 10**8)
    assert code == 0
    assert "models: 14" in text
    assert "reported count: 27 (DIFFERS from the enumeration)" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["feasible", "--case", "2", "--n", "100", "--alpha", "0.5"],
        ["feasible", "--case", "2", "--n", "100", "--alpha", "3/2"],
        ["feasible", "--case", "0", "--n", "6", "--alpha", "1/2"],
        ["feasible", "--case", "2", "--n", "100", "--alpha", "1/2", "--pi", "1/2"],
        ["feasible", "--case", "1", "--n", "0"],
        ["feasible", "--case", "7", "--n", "5"],
        ["count", "--r", "3"],
        ["count", "--r", "3", "--g", "2", "--min", "2", "--max", "1"],
        ["poset"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_json_output_is_parseable():
    code, text = run("feasible", "--case", "2", "--n", 100, "--alpha", "1/2", "--json")
    data = json.loads(text)
    assert data["admissible_count"] == 13
    assert data["within_alpha"] == [{"k": 14, "pi": "43/91", "rough": 86}]
    assert Fraction(data["within_alpha"][0]["pi"]) == Fraction(86, 182)


# --- count ------------------------------------------------------------------------------------


def test_count_examples():
    assert run("count", "--r", 4, "--g", 2, "--min", 1, "--max", 3) == (0, "n_o=3 B=10 bounds=[3,27]\n")
    code, text = run("count", "--r", 0, "--g", 3, "--min", 0, "--max", 0)
    assert code == 0 and text.startswith("n_o=1 B=0 bounds=[0,0]")


def test_count_chain_cover(fixture_path):
    code, text = run("count", "--chain-cover", fixture_path("b2.poset"), "--r", 1, "--verify")
    assert code == 0
    assert text == "w=2 slots=[6, 4] count=10\noracle=10 match\n"


def test_count_chain_cover_needs_bounds(fixture_path):
    code, _ = run("count", "--chain-cover", fixture_path("notgraded.poset"), "--r", 1)
    assert code == 0
    code, _ = run("count", "--chain-cover", fixture_path("chain5.poset"), "--r", 1, "--min", 1)
    assert code == 2


# --- index, poset, gos ----------------------------------------------------------------------


def test_index_running_instance(fixture_path):
    code, text = run("index", "--space", fixture_path("pawlak123.gos"))
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "n=8 k=4 rough=4"
    assert lines[1] == "c0=8 c1=8 c_pi=0 c_e=0"
    assert lines[2] == "iota: 8 + 0/pi + 0/e = 8.000000000000"
    assert lines[3] == "iota*: 1/2 + 0/pi + 0/e = 0.500000000000"


def test_poset_width(fixture_path):
    assert run("poset", "--width", fixture_path("chain5.poset")) == (0, "1\n")
    code, text = run("poset", "--width", "--verbose", fixture_path("b2.poset"))
    assert text == "width=2 antichain=a b\n"


def test_poset_grading(fixture_path):
    code, text = run("poset", "--grading", fixture_path("notgraded.poset"))
    assert code == 0
    assert text == "not graded: cover b < 1 breaks the level condition\n"


def test_poset_cover_and_hasse(fixture_path):
    code, text = run("poset", "--cover", "--hasse", fixture_path("b2.poset"))
    assert text == "0 < a < 1\nb\nhasse index: 1\n"


def test_poset_invalid_and_broken(fixture_path, capsys):
    assert run("poset", fixture_path("cycle.poset"))[0] == 3
    code, _ = run("poset", fixture_path("broken.poset"))
    assert code == 2
    assert "line 3, column 1" in capsys.readouterr().err


def test_sdr(fixture_path):
    assert run("poset", "--sdr", fixture_path("hall_ok.family")) == (0, "sdr: 1 2\n")
    assert run("poset", "--sdr", fixture_path("hall_fail.family")) == (3, "sdr: none\n")


def test_gos_validate(fixture_path):
    code, text = run("gos", "--validate", fixture_path("pawlak123.gos"))
    assert code == 0 and text.rstrip().endswith("valid")
    code, text = run("gos", fixture_path("bad.gos"))
    assert code == 3
    assert "empty_upper: FAIL witness {}" in text


def test_gos_classify(fixture_path):
    code, text = run("gos", "--classify", fixture_path("pawlak123.gos"))
    assert code == 0
    assert text.splitlines()[0] == "n=8 k=4 rough=4 classes=6"
    assert "({}, {1,2}): {1} {2}" in text


def test_missing_file_is_io_error(tmp_path):
    assert run("poset", tmp_path / "absent.poset")[0] == 4
    assert run("gos", tmp_path / "absent.gos")[0] == 4


# --- figures ------------------------------------------------------------------------------------


def test_figure_rows():
    _, _, rows = figures.fig3_rows(16)
    assert rows == [(0, 1, 1), (2, 2, 4), (4, 4, 16)]
    _, _, rows = figures.fig1_rows(6)
    assert [(n, k) for n, k, *_ in rows] == [(2, 1), (6, 2)]
    _, _, rows = figures.fig4_rows([10**6], [Fraction(1, 2)])
    assert rows == [(10**6, Fraction(1, 2), 1413)]
    _, _, rows = figures.fig5_rows([10**6], [Fraction(1, 2)])
    assert rows == [(10**6, Fraction(1, 2), 999)]


def test_figure_rows_satisfy_equations():
    for n, k, rough, gap in figures.fig1_rows(10**4)[2]:
        assert n == k * k + k and rough == n - k and gap == Fraction(n - k, k)
    for x, k, n in figures.fig3_rows()[2]:
        assert 2**x == k * k == n


def test_figures_cli(tmp_path):
    code, text = run("figures", "--fig", 3, "--n-max", 16)
    assert code == 0
    assert text.splitlines()[1:] == ["x,k,n", "0,1,1", "2,2,4", "4,4,16"]
    out = tmp_path / "fig4.csv"
    assert run("figures", "--fig", 4, "--n-grid", "1000000", "--pi-grid", "1/2", "--out", out) == (0, "")
    assert out.read_text().splitlines()[-1] == "1000000,1/2,1413"


def test_figures_unwritable_path(tmp_path):
    target = tmp_path / "missing-dir" / "out.csv"
    assert run("figures", "--fig", 1, "--out", target)[0] == 4
    assert not os.path.exists(target)


def test_figures_flag_mismatch():
    assert run("figures", "--fig", 1, "--n-grid", "100")[0] == 2
    assert run("figures", "--fig", 4, "--n-max", "100")[0] == 2


def test_infeasible_constraint_is_not_an_error():
    code, text = run("count", "--r", 5, "--g", 2, "--min", 0, "--max", 2)
    assert code == 0 and text.startswith("n_o=0 B=0 ")


JSON_COMMANDS = [
    ["feasible", "--case", "1", "--n", "9"],
    ["feasible", "--case", "0", "--n", "7"],
    ["feasible", "--case", "1p", "--n", "1000"],
    ["feasible", "--case", "2", "--n", "35", "--pi", "2/3"],
    ["count", "--r", "4", "--g", "2", "--min", "1", "--max", "3", "--unordered"],
    ["count", "--chain-cover", "b2.poset", "--r", "2", "--min", "0", "--max", "2", "--verify"],
    ["index", "--space", "pawlak123.gos", "--convention", "maximal"],
    ["poset", "--width", "--cover", "--hasse", "--grading", "b2.poset"],
    ["poset", "--sdr", "hall_fail.family"],
    ["gos", "--validate", "--classify", "bad.gos"],
]


@pytest.mark.parametrize("argv", JSON_COMMANDS, ids=lambda a: "-".join(a[:2]))
def test_json_round_trips(argv, fixture_path):
    argv = [fixture_path(a) if "." in a and "/" not in a else a for a in argv]
    _, text = run(*argv, "--json")
    assert json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n" == text
