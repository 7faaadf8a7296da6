#!/usr/bin/env python3
"""Render qfisher sweep CSVs with matplotlib.

Usage: plot_sweep.py SWEEP.csv [OUT.png]

Plots F_I against r, one line per curve; for population sweeps (fig3-style
files) the P1..P4 columns are plotted instead. Untested convenience asset.
"""
import csv
import sys


def main() -> int:
    if len(sys.argv) < 2:
        print(__doc__)
        return 2

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else path.rsplit(".", 1)[0] + ".png"

    with open(path, newline="") as handle:
        rows = list(csv.DictReader(handle))
    if not rows:
        print("empty sweep file")
        return 1

    label = rows[0]["label"]
    curves = sorted({int(row["curve"]) for row in rows})

    fig, ax = plt.subplots(figsize=(7, 4.5))
    if "P1" in rows[0]:
        for key, style in zip(["P1", "P2", "P3", "P4"], [":", "-", "--", "-."]):
            ax.plot([float(r["r"]) for r in rows], [float(r[key]) for r in rows],
                    style, label=key)
        ax.set_ylabel("population")
    else:
        for curve in curves:
            sel = [r for r in rows if int(r["curve"]) == curve]
            name = f"x={sel[0]['x']}" if sel[0]["kind"] == "werner" else \
                f"({sel[0]['x']}, {sel[0]['y']}, {sel[0]['z']})"
            ax.plot([float(r["r"]) for r in sel], [float(r["F_I"]) for r in sel],
                    label=name)
        ax.set_ylabel(f"F_I ({rows[0]['estimand']})")
    ax.set_xlabel("r")
    ax.set_title(label)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
