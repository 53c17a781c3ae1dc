"""How often the non-smooth witness split A1 + A2 == T holds bit-for-bit.

A1 = T x1 x1^T is computed in floating point and A2 = T - A1. An entry can
only split exactly when T_ij is a multiple of the spacing of the larger of
|A1_ij|, |A2_ij|; the script reports the fraction of exact matrices and the
largest ratio |A1_ij| / |T_ij| seen in the inexact ones.
"""

import argparse

import numpy as np

from bjortho.harness import degenerate_matrix, trial_rng
from bjortho.smoothness import nonsmooth_witness, split_is_exact


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()
    exact, worst, ulps = 0, [], []
    for t in range(args.trials):
        rng = trial_rng(args.seed, t)
        n = int(rng.integers(2, 9))
        T = degenerate_matrix(rng, n, 2, top=rng.uniform(0.5, 2.0))
        A1, A2 = nonsmooth_witness(T, 1e-9)
        if split_is_exact(T, (A1, A2)):
            exact += 1
            continue
        bad = (A1 + A2) != T
        worst.append(float(np.max(np.abs(A1[bad]) / np.abs(T[bad]))))
        ulps.append(float(np.max(np.abs((A1 + A2 - T)[bad]) / np.spacing(np.abs(T[bad])))))
    print(f"exact splits: {exact}/{args.trials}")
    if worst:
        print(f"median max |A1_ij|/|T_ij| over mismatched entries: {np.median(worst):.3g}")
        print(f"largest mismatch |A1 + A2 - T| in units of spacing(T_ij): {max(ulps):.3g}")


if __name__ == "__main__":
    main()
