"""CSV data behind the feasibility plots, printed to the terminal.

The same tables come from ``roughdist figures --fig N --out FILE``.
"""

from fractions import Fraction

from roughdist import figures

print(figures.render_csv(*figures.fig1_rows(60)))
print(figures.render_csv(*figures.fig3_rows(10**8)))
print(figures.render_csv(*figures.fig4_rows([10**4, 10**6], [Fraction(1, 4), Fraction(1, 2), Fraction(1)])))
print(figures.render_csv(*figures.fig5_rows([10**4, 10**6], [Fraction(1, 4), Fraction(1, 2), Fraction(1)])))
