"""Plot a curve CSV written by `vcb bounds sweep`.

    vcb bounds sweep --d 0.25 --grid 0:0.5:0.005 --out d_quarter.csv
    python docs/plot_curves.py d_quarter.csv --xlabel delta -o d_quarter.png
"""

import argparse
import csv
from collections import defaultdict

import matplotlib.pyplot as plt

STYLE = {
    "mrrw": ("tab:gray", "--"),
    "sauer": ("tab:gray", ":"),
    "haussler": ("tab:blue", "-"),
    "shortening": ("tab:red", "-"),
    "cwc": ("tab:green", "-"),
    "markov": ("tab:olive", "-."),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv")
    ap.add_argument("--xlabel", default="grid value")
    ap.add_argument("-o", "--output", help="image path; shows a window if omitted")
    args = ap.parse_args()

    series = defaultdict(list)
    with open(args.csv, newline="") as f:
        for row in csv.DictReader(f):
            series[row["method"]].append((float(row["grid_value"]), float(row["rate"])))

    fig, ax = plt.subplots(figsize=(6, 4))
    for method, points in series.items():
        xs, ys = zip(*sorted(points))
        color, ls = STYLE.get(method, (None, "-"))
        ax.plot(xs, ys, label=method, color=color, linestyle=ls)
    ax.set_xlabel(args.xlabel)
    ax.set_ylabel("rate")
    ax.set_ylim(0, 1.02)
    ax.legend()
    fig.tight_layout()
    if args.output:
        fig.savefig(args.output, dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
