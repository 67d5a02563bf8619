"""Minimum, bound, level and theta membership for a corpus of Gram matrices.

    python scripts/lattice_corpus.py scripts/data/corpus.jsonl --precision 30
"""

import argparse
from pathlib import Path

from qminima.errors import ResourceLimit

from qminima.quadforms import (
    level, membership_report, parse_gram_jsonl, parse_gram_text, theta_series,
    verify_minima_theorem,
)


def load(path: Path):
    text = path.read_text()
    return parse_gram_jsonl(text) if path.suffix == ".jsonl" else parse_gram_text(text)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("path", type=Path)
    ap.add_argument("--precision", type=int, default=30)
    args = ap.parse_args()

    for A in load(args.path):
        cert = verify_minima_theorem(A)
        th = theta_series(A, 6)
        try:
            rep = membership_report(A, args.precision)
            member = f"coords={list(rep.coordinates)} residual_zero={rep.ok}"
        except ResourceLimit:
            member = "membership skipped (node budget)"
        print(f"{A.name or '?':10s} v={A.v:2d} level={level(A)} min={cert.minimum} "
              f"bound={cert.bound} {member} theta={list(th.counts)} nodes={th.nodes}")


if __name__ == "__main__":
    main()
