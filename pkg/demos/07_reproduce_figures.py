"""Regenerate every figure as CSV through the command-line entry point.

Files land in ./figures_csv as <figure>_<curve>.csv with columns T,value.
A short summary of each curve's endpoint is printed so the orderings can be
read off without plotting.
"""

import csv
from pathlib import Path

from qspeedlab.cli import main
from qspeedlab.figures import FIGURES

out = Path("figures_csv")
main(["reproduce", "all", "--out", str(out)])
for fig_id, fig in FIGURES.items():
    ends = []
    for curve in fig.curves:
        with open(out / f"{fig_id}_{curve.name}.csv") as fh:
            last = list(csv.reader(fh))[-1]
        ends.append(f"{curve.name}={float(last[1]):.4f}")
    print(f"{fig_id:15s} T={fig.t_max:<5} " + "  ".join(ends))
