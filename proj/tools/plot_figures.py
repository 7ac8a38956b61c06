"""Render the impurity and entanglement plots from `biatom figures` output."""

import argparse
import csv
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    with open(path) as fh:
        fh.readline()
        rows = list(csv.DictReader(fh))
    return {k: [float(r[k]) for r in rows] for k in rows[0]}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dir", default="figures", help="directory holding large_cavity.csv and small_cavity.csv")
    args = parser.parse_args()
    root = pathlib.Path(args.dir)
    large = load(root / "large_cavity.csv")
    small = load(root / "small_cavity.csv")

    fig, ax = plt.subplots()
    ax.plot(large["t"], large["impurity"], "--", label="large cavity")
    ax.plot(small["t"], small["impurity"], "-", label="small cavity")
    ax.set_xlabel("t")
    ax.set_ylabel("D(t)")
    ax.legend()
    fig.savefig(root / "impurity.png", dpi=150)

    for name, data in (("large", large), ("small", small)):
        fig, ax = plt.subplots()
        ax.plot(data["t"], data["concurrence"], "-", label="C(t)")
        ax.plot(data["t"], data["negativity"], "--", label="N(t)")
        ax.set_xlabel("t")
        ax.set_ylim(0.0, 1.05)
        ax.legend()
        fig.savefig(root / f"entanglement_{name}.png", dpi=150)


if __name__ == "__main__":
    main()
