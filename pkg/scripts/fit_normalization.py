"""Refit the V^{i,j} normalization table and compare it with constants.py.

For each composition mu of n <= 3 the raw operators are evaluated on the
normalized principal series over Q(sqrt ell) and the q-power relating
their characteristic polynomial to prod (X - e_i(chi_{S_j})) is searched.
The table entry is minus that exponent.

    python3 scripts/fit_normalization.py [--ell 3] [--nmax 3]
"""
import argparse
import json

from parahecke import weyl
from parahecke.algebra.rings import QuadField
from parahecke.constants import VIJ_TWICE_EXPONENT
from parahecke.pseries import PSeriesChar, steinberg_eigencheck

SAMPLE = {1: (2,), 2: (2, 5), 3: (2, 5, 11)}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ell", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=3)
    args = ap.parse_args()
    K = QuadField(args.ell)
    fitted, disagreements = {}, []
    for n in range(1, args.nmax + 1):
        chi = PSeriesChar(tuple(K(v) for v in SAMPLE[n]), K, args.ell, True, K.sqrt)
        for mu in weyl.compositions(n):
            rep = steinberg_eigencheck(chi, mu)
            for (i, j), t in sorted(rep.exponents.items()):
                key = (tuple(mu), i, j)
                fitted[str(key)] = None if t is None else -t
                if t is None or VIJ_TWICE_EXPONENT.get(key) != -t:
                    disagreements.append(str(key))
    print(json.dumps({"fitted": fitted, "disagreements": disagreements}, indent=1, sort_keys=True))
    return 1 if disagreements else 0


if __name__ == "__main__":
    raise SystemExit(main())
