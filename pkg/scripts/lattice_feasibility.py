#!/usr/bin/env python3
"""Feasibility walkthrough for a rubidium-style bosonic lattice pair.

Builds a symmetric bosonic configuration, reports the effective couplings,
checks every gate family against a 10 ms coherence time, and then asks the
inverse solver for depths that would hit the swap-feasibility threshold.
"""

import argparse
from dataclasses import replace

from xxz_gatesmith.catalog import GateKind
from xxz_gatesmith.lattice import (
    Infeasible,
    LatticeConfig,
    MIN_GATE_PHASE,
    effective_couplings,
    gate_feasibility,
    solve_depths_for_couplings,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--depth", type=float, default=12.0, help="V/E_r, both spins")
    parser.add_argument("--ka", type=float, default=0.05, help="k*a, all channels")
    parser.add_argument(
        "--recoil", type=float, default=2 * 3.141592653589793 * 3770.0,
        help="recoil energy in rad/s (default: ~3.77 kHz lattice)",
    )
    parser.add_argument("--coherence-ms", type=float, default=10.0)
    args = parser.parse_args()

    config = LatticeConfig(
        v_up=args.depth,
        v_down=args.depth,
        k_a_updown=args.ka,
        k_a_upup=args.ka,
        k_a_downdown=args.ka,
        recoil_energy=args.recoil,
        coherence_time=args.coherence_ms / 1000.0,
    )
    couplings = effective_couplings(config)
    print(f"depths V/E_r = ({config.v_up:g}, {config.v_down:g}), k*a = {args.ka:g}")
    print(f"t/E_r = {couplings.t_up:.4e}, U_updown/E_r = {couplings.u_updown:.4e}")
    print(f"J = {couplings.j:.4f} rad/s, gamma = {couplings.gamma:.6f}, "
          f"perturbative: {couplings.perturbative_ok}")
    print()

    print(f"{'gate':<16} {'J_min (rad/s)':>14} {'t_gate (s)':>12} {'feasible':>9}")
    for kind in MIN_GATE_PHASE:
        rep = gate_feasibility(couplings, kind, config.coherence_time)
        print(f"{rep.gate:<16} {rep.j_min:>14.3f} {rep.min_gate_time:>12.4g} "
              f"{str(rep.feasible):>9}")
    print()

    swap_rep = gate_feasibility(couplings, GateKind.SWAP, config.coherence_time)
    target_j = -1.05 * swap_rep.j_min  # 5% margin over the swap threshold
    print(f"solving depths for J = {target_j:.2f} rad/s at gamma = 1 ...")
    solution = solve_depths_for_couplings(target_j, 1.0, config)
    if isinstance(solution, Infeasible):
        print(f"  infeasible: {solution.reason}")
        print(f"  closest: V = ({solution.closest.v_up:.3f}, "
              f"{solution.closest.v_down:.3f}) with J = {solution.achieved_j:.3f}")
    else:
        achieved = effective_couplings(solution)
        print(f"  depths V/E_r = ({solution.v_up:.4f}, {solution.v_down:.4f}) "
              f"-> J = {achieved.j:.3f} rad/s, gamma = {achieved.gamma:.6f}, "
              f"perturbative: {achieved.perturbative_ok}")


if __name__ == "__main__":
    main()
