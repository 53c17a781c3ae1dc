"""Gap of min ||T_n + lam I|| below ||T_n|| for the truncated diagonal family.

The oracle gap is printed next to the closed form 1/(2n); it shrinks to 0
but never reaches it, so no truncation is orthogonal to the identity.
"""

import argparse

from bjortho.harness import diagonal_family


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", default="2,3,5,10,20,50,100,200")
    args = ap.parse_args()
    print(f"{'n':>5} {'gap':>14} {'1/(2n)':>14} {'lambda*':>14} orthogonal")
    for n in (int(v) for v in args.ns.split(",")):
        ex = diagonal_family(n)
        print(f"{n:5d} {ex.gap:14.10f} {1 / (2 * n):14.10f} {ex.lambda_star:14.10f} {ex.orthogonal}")


if __name__ == "__main__":
    main()
