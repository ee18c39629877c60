#!/usr/bin/env python3
"""Enumerate every analytic gate family and print its worst deviations.

Sweeps (n, p) over a configurable grid at both coupling signs and reports,
per family, the largest |F - 1| and the largest mismatch between the
recovered global phase and the family's phase formula.
"""

import argparse
import json

from xxz_gatesmith.catalog import GateKind, GateTarget, verify_family


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-span", type=int, default=3)
    parser.add_argument("--p-span", type=int, default=3)
    parser.add_argument("--json", action="store_true", help="dump raw records")
    args = parser.parse_args()

    n_range = range(-args.n_span, args.n_span + 1)
    p_range = range(-args.p_span, args.p_span + 1)
    kinds = [GateKind.SWAP, GateKind.ISWAP, GateKind.SQRT_SWAP, GateKind.ENTANGLER]

    all_records = {}
    for kind in kinds:
        for j_ref in (1.0, -1.0):
            records = verify_family(GateTarget(kind), n_range, p_range, j_ref=j_ref)
            all_records[f"{kind.value} @ J={j_ref:+g}"] = records

    if args.json:
        print(json.dumps(
            {key: [r.to_dict() for r in records] for key, records in all_records.items()},
            indent=2,
        ))
        return

    print(f"{'family':<24} {'members':>8} {'max |F-1|':>12} {'max chi dev':>12}")
    for key, records in all_records.items():
        admissible = [r for r in records if r.admissible]
        if not admissible:
            print(f"{key:<24} {0:>8} {'-':>12} {'-':>12}")
            continue
        worst_f = max(r.fidelity_deviation for r in admissible)
        worst_chi = max(r.chi_mismatch for r in admissible)
        print(f"{key:<24} {len(admissible):>8} {worst_f:>12.3e} {worst_chi:>12.3e}")


if __name__ == "__main__":
    main()
