"""Joint V^{i,j} spectra versus e_i(S_j) over many characters.

Draws random unramified characters with values in Q(sqrt ell) and checks
every composition of n with the tabulated normalization.  Prints one JSON
row per (chi, mu) plus a summary.

    python3 scripts/steinberg_sweep.py --n 3 --ell 3 --trials 5 --seed 0
"""
import argparse
import json
import random
from dataclasses import asdict, dataclass

from parahecke import weyl
from parahecke.algebra.rings import QuadField
from parahecke.pseries import PSeriesChar, steinberg_eigencheck


@dataclass
class SweepConfig:
    n: int = 2
    ell: int = 3
    trials: int = 5
    seed: int = 0


def run(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    K = QuadField(cfg.ell)
    rows = []
    for _ in range(cfg.trials):
        vals = tuple(rng.choice([-1, 1]) * rng.randint(1, 30) for _ in range(cfg.n))
        chi = PSeriesChar(tuple(K(v) for v in vals), K, cfg.ell, True, K.sqrt)
        for mu in weyl.compositions(cfg.n):
            rep = steinberg_eigencheck(chi, mu, normalization="table")
            rows.append({"chi": list(vals), "mu": list(weyl.Composition.parse(mu).parts),
                         "ok": rep.ok, "mismatches": [str(x) for x in rep.mismatches]})
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--ell", type=int, default=3)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    cfg = SweepConfig(**vars(ap.parse_args()))
    rows = run(cfg)
    failed = sum(not r["ok"] for r in rows)
    print(json.dumps({"config": asdict(cfg), "rows": rows, "failed": failed}, indent=1))
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
