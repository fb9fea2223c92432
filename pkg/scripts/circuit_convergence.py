#!/usr/bin/env python3
"""Depth sweep of the approximate-2-design quality of random circuits.

For each depth t an ensemble of independent circuits is drawn and the
diamond-norm deviation of its 2-fold moment map from the Haar twirl is upper
bounded through the Choi 1-norm. The bound falls from its shallow-depth
plateau to the finite-sample floor as the circuits converge.
"""

import argparse

from declab.suites import run_circuit_study


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qubits", type=int, default=2, choices=(2, 3))
    ap.add_argument("--depths", default="0,1,2,4,8,16,32,64")
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    depths = [int(x) for x in args.depths.split(",")]
    print(f"# {args.trials} circuits per depth on {args.qubits} qubits, seed {args.seed}")
    print(f"{'depth':>6s} {'epsilon bound':>15s}")
    for t, eps in run_circuit_study(args.qubits, depths, args.trials, seed=args.seed):
        print(f"{t:6d} {eps:15.6f}")


if __name__ == "__main__":
    main()
