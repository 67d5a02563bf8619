"""Sweep even weights, report gap indices and how often the bound is attained.

    python scripts/gap_sweep.py --max-weight 202
"""

import argparse
import time
from collections import Counter

from qminima.forms import WeightRecord
from qminima.gaps import constant_term_report, verify_gap_theorem


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-weight", type=int, default=202)
    args = ap.parse_args()

    start = time.perf_counter()
    slack = Counter()
    for h in range(2, args.max_weight + 1, 2):
        w = WeightRecord(h)
        cert = verify_gap_theorem(w)
        slack[cert.bound - cert.gap_index] += 1
        extra = ""
        if w.residue == 2:
            rep = constant_term_report(w)
            extra = f" signed_sum_matches={rep.signed_sum == rep.constant_term}"
        lead = cert.leading_gap_coefficient
        print(f"h={h:3d} r={w.r:2d} gap={cert.gap_index:2d} "
              f"A_r digits={len(str(abs(lead)))}{extra}")
    print(f"slack histogram (bound - gap): {dict(sorted(slack.items()))}")
    print(f"elapsed {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
