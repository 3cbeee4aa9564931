"""Fractional derivatives of tanh(x) for alpha between 0 and 1.

Writes fig1.csv and fig1.gp next to this script (run ``gnuplot -p fig1.gp``
to look at the curves), then prints a few rows. The alpha = 0 column is tanh,
the alpha = 1 column sech^2; the ones in between interpolate.
"""
import csv
import pathlib
import sys

from caputo.cli import main

here = pathlib.Path(__file__).resolve().parent
out = here / "fig1.csv"
code = main(["fig1", "--output", str(out), "--plot-script", str(here / "fig1.gp")])
if code:
    sys.exit(code)

with open(out) as fh:
    rows = list(csv.reader(fh))
print("  ".join(f"{h:>10}" for h in rows[0][:6]))
for row in rows[1::25]:
    print("  ".join(f"{float(v):10.6f}" for v in row[:6]))
