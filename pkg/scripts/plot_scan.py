"""Plot a noise scan written by ``gmebloch scan --json`` or ``--csv``.

Usage:
    gmebloch scan --state w --json > w.json
    python3 scripts/plot_scan.py w.json -o w.png

Requires matplotlib (``pip install .[plot]``).
"""
import argparse
import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def load_rows(path):
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return json.loads(text)["rows"]
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(lines)]


def main(argv=None):
    p = argparse.ArgumentParser(description="plot a gmebloch scan")
    p.add_argument("scan", help="scan output, JSON or CSV")
    p.add_argument("-o", "--output", default="scan.png")
    args = p.parse_args(argv)

    rows = load_rows(args.scan)
    x = [r["x"] for r in rows]
    cols = [k for k in rows[0] if k == "t_minus_M" or k.startswith("f")]
    fig, ax = plt.subplots(figsize=(6, 4))
    for k in cols:
        ax.plot(x, [r[k] for r in rows], label=k)
    ax.axhline(0, color="grey", lw=0.8)
    ax.set_xlabel("x")
    ax.set_ylabel("statistic minus threshold")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
