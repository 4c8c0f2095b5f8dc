"""Census of single cosets K m K / K against the index formula.

Sweeps compositions mu of n, primes ell and dominant exponent vectors m
with entries in {0..mmax}; every row records the enumerated count, the
closed-form index and the runtime.  Exit status 1 flags a disagreement.

    python3 scripts/coset_census.py --nmax 3 --ells 2,3,5 --mmax 1
"""
import argparse
import itertools
import json
import time
from dataclasses import asdict, dataclass

from parahecke import localmodel, weyl


@dataclass
class CensusConfig:
    nmax: int = 3
    ells: tuple = (2, 3)
    mmax: int = 1


def run(cfg: CensusConfig):
    rows = []
    for n in range(1, cfg.nmax + 1):
        for mu in weyl.compositions(n):
            for ell in cfg.ells:
                spec = localmodel.ParahoricSpec(mu, ell)
                for m in itertools.product(range(cfg.mmax, -1, -1), repeat=n):
                    if list(m) != sorted(m, reverse=True):
                        continue
                    t0 = time.perf_counter()
                    count = len(localmodel.enumerate_cosets(m, spec))
                    rows.append({"mu": list(weyl.Composition.parse(mu).parts), "ell": ell, "m": list(m),
                                 "count": count, "index": localmodel.index_formula(m, spec),
                                 "seconds": round(time.perf_counter() - t0, 4)})
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=3)
    ap.add_argument("--ells", default="2,3")
    ap.add_argument("--mmax", type=int, default=1)
    a = ap.parse_args()
    cfg = CensusConfig(a.nmax, tuple(int(x) for x in a.ells.split(",")), a.mmax)
    rows = run(cfg)
    bad = [r for r in rows if r["count"] != r["index"]]
    print(json.dumps({"config": asdict(cfg), "rows": rows, "disagreements": bad}, indent=1))
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
