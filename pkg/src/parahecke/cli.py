"""Command-line entry point.

Every command prints one canonical JSON document (sorted keys, exact
values as strings) carrying a ``schema`` field.  Exit codes: 0 ok,
2 validation, 3 mathematical-contract violation, 4 I/O.
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import bernstein, blocklift, localmodel, pseries, specproj, transfer, weyl
from .algebra import linalg
from .algebra.rings import GF, QQ, QuadField, ring_from_spec
from .algebra.unipoly import UniPoly
from .errors import ParaheckeError, ShapeError

SCHEMA_VERSION = 1
EXIT_OK, EXIT_VALIDATION, EXIT_CONTRACT, EXIT_IO = 0, 2, 3, 4


@dataclass
class JobSpec:
    command: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    out: str | None = None


def schema(cmd: str) -> str:
    return f"parahecke.{cmd}/v{SCHEMA_VERSION}"


def canonical(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


# ---------------------------------------------------------------------------
# parsing helpers


def _ints(s) -> tuple:
    if isinstance(s, (list, tuple)):
        return tuple(int(x) for x in s)
    return tuple(int(x) for x in str(s).split(",") if x.strip())


def _ring(params, default="QQ"):
    spec = params.get("ring")
    if spec:
        return ring_from_spec(spec)
    p = params.get("p")
    return GF(int(p)) if p else ring_from_spec(default)


def _scalar(ring, s):
    if ring is QQ:
        return Fraction(str(s))
    if isinstance(s, int):
        return ring(s)
    s = str(s)
    return ring(int(s)) if re.fullmatch(r"-?\d+", s) else ring.parse(s)


def _scalars(ring, s):
    if isinstance(s, (list, tuple)):
        return [_scalar(ring, x) for x in s]
    # GF(p^k) elements are written "a,b" so the list separator is ';' there
    sep = ";" if ";" in str(s) else ","
    return [_scalar(ring, x) for x in str(s).split(sep) if x.strip()]


def _matrix(ring, s):
    rows = json.loads(s) if isinstance(s, str) else s
    return [[_scalar(ring, x) for x in r] for r in rows]


def _to_str(x) -> str:
    if isinstance(x, Fraction):
        return QQ.to_str(x)
    if isinstance(x, int):
        return str(x)
    return x.ring.to_str(x)


def _mat_json(M):
    return [[_to_str(x) for x in r] for r in M]


def _poly_json(f: UniPoly):
    return [_to_str(c) for c in f.coeffs]


def parse_m(s: str) -> tuple:
    """``"w,1"`` -> (1, 0); tokens are ``1``, ``w`` or ``w^k``."""
    out = []
    for tok in str(s).split(","):
        tok = tok.strip()
        if tok == "1":
            out.append(0)
        elif tok == "w":
            out.append(1)
        elif tok.startswith("w^"):
            out.append(int(tok[2:]))
        else:
            raise ShapeError(f"cannot read diagonal entry {tok!r}")
    return tuple(out)


_TOKEN = re.compile(r"\s*(?:(T)(\d+)(\^-1)?|(T)\[([\d,\s]+)\]|(theta)\(([-\d,\s]+)\))\s*")


def parse_hecke(alg: bernstein.HeckeAlgebra, s: str):
    """Product of tokens ``T<i>``, ``T<i>^-1``, ``T[w]`` and ``theta(lam)`` joined by ``*``."""
    out = alg.unit()
    for part in str(s).split("*"):
        m = _TOKEN.fullmatch(part)
        if not m:
            raise ShapeError(f"cannot read Hecke factor {part!r}")
        if m.group(1):
            i = int(m.group(2))
            if not 1 <= i < alg.n:
                raise ShapeError(f"T{i} out of range")
            out = out * (alg.Ts_inv(i) if m.group(3) else alg.Ts(i))
        elif m.group(4):
            w = _ints(m.group(5))
            if not weyl.is_permutation(w) or len(w) != alg.n:
                raise ShapeError(f"{w} is not a permutation of size {alg.n}")
            out = out * alg.T(w)
        else:
            lam = _ints(m.group(7))
            if len(lam) != alg.n:
                raise ShapeError("theta exponent has the wrong size")
            out = out * alg.theta(lam)
    return out


def _q(params, ring):
    if params.get("q") is not None:
        return _scalar(ring, params["q"])
    if params.get("l") is not None:
        return _scalar(ring, int(params["l"]))
    raise ShapeError("--q or --l is required")


def _require(params, *names):
    for n in names:
        if params.get(n) is None:
            raise ShapeError(f"--{n.replace('_', '-')} is required")


# ---------------------------------------------------------------------------
# commands


def cmd_weyl_cosets(p):
    _require(p, "mu", "nu")
    Q, P = weyl.Composition.parse(p["nu"]), weyl.Composition.parse(p["mu"])
    reps = weyl.double_coset_reps(Q, P)
    mats = weyl.partition_matrices(Q, P)
    return {
        "Q": list(Q.parts), "P": list(P.parts),
        "representatives": [list(w) for w in reps],
        "partition_matrices": [[list(r) for r in weyl.rep_to_matrix(w, Q, P)] for w in reps],
        "count": len(reps), "matrix_count": len(mats),
    }


def cmd_hecke_mul(p):
    _require(p, "n", "a", "b")
    ring = _ring(p)
    alg = bernstein.HeckeAlgebra(int(p["n"]), _q(p, ring))
    a, b = parse_hecke(alg, p["a"]), parse_hecke(alg, p["b"])
    prod = a * b
    return {"n": alg.n, "q": _to_str(alg.q), "product": prod.to_json(_to_str),
            "im_basis": [{"x": [list(x[0]), list(x[1])], "coeff": _to_str(c)}
                         for x, c in sorted(alg.to_im(prod).items())]}


def cmd_parahoric_idem(p):
    _require(p, "mu")
    ring = _ring(p)
    comp = weyl.Composition.parse(p["mu"])
    alg = bernstein.HeckeAlgebra(comp.n, _q(p, ring))
    idem = bernstein.parahoric_idem(alg, comp)
    e = idem.e
    lam = _ints(p["lam"]) if p.get("lam") else tuple(range(comp.n, 0, -1))
    z = alg.orbit_sum(lam, comp)
    return {"mu": list(comp.parts), "index": _to_str(idem.index), "idempotent": e.to_json(_to_str),
            "is_idempotent": e * e == e, "commutes_with_orbit_sum": e * z == z * e, "lambda": list(lam)}


def cmd_enumerate_cosets(p):
    _require(p, "n", "l", "m")
    n, ell = int(p["n"]), int(p["l"])
    m = parse_m(p["m"])
    if len(m) != n:
        raise ShapeError(f"--m has {len(m)} entries, expected {n}")
    mu = p.get("mu") or ",".join(["1"] * n)
    level = p.get("level") or "parahoric"
    spec = localmodel.ParahoricSpec(mu, ell, level, int(p["p"]) if p.get("p") else None)
    reps = localmodel.enumerate_cosets(m, spec, require_dominant=not p.get("allow_nondominant"))
    return {"n": n, "l": ell, "m": list(m), "mu": list(spec.mu.parts), "level": level,
            "count": len(reps), "index_formula": localmodel.index_formula(m, spec),
            "representatives": [localmodel.to_json_matrix(g) for g in reps]}


def _chi(p, default="QQ"):
    _require(p, "n", "l", "chi")
    ring = _ring(p, default)
    vals = _scalars(ring, p["chi"])
    if len(vals) != int(p["n"]):
        raise ShapeError(f"--chi needs {p['n']} values")
    ell = int(p["l"])
    if isinstance(ring, QuadField) and ring.d == ell:
        return pseries.PSeriesChar(tuple(vals), ring, ell, True, ring.sqrt)
    return pseries.PSeriesChar(tuple(vals), ring, ell)


def cmd_pseries_spectrum(p):
    # Q(sqrt l) by default so that half-integral powers of q are available
    chi = _chi(p, default=f"QQ(sqrt{int(p['l'])})" if p.get("l") else "QQ")
    n = chi.n
    comp = weyl.Composition.parse(p.get("mu") or ",".join(["1"] * n))
    model = pseries.PSeriesModel(chi)
    ops = {}
    for j in range(1, comp.k + 1):
        for i in range(1, comp.parts[j - 1] + 1):
            V = pseries.vij_matrix(model, comp, i, j)
            ops[f"V^{i},{j}"] = {"matrix": _mat_json(V), "charpoly": _poly_json(UniPoly(linalg.charpoly(V)))}
    rep = pseries.steinberg_eigencheck(chi, comp)
    return {"n": n, "l": chi.ell, "ring": chi.ring.name, "mu": list(comp.parts), "operators": ops,
            "steinberg": {"ok": rep.ok, "twice_exponents": {f"{i},{j}": t for (i, j), t in sorted(rep.exponents.items())},
                          "mismatches": [str(m) for m in rep.mismatches]}}


def cmd_e_alpha(p):
    chi = _chi(p)
    _require(p, "alpha")
    alpha = _scalar(chi.ring, p["alpha"])
    mu = p.get("mu") or None
    level = p.get("level") or "iwahori"
    res = pseries.build_e_alpha(chi, alpha, mu, level=level, p=int(p["p"]) if p.get("p") else None)
    coords = sorted(pseries.PSeriesModel(chi).index[w] for w in res.W_prime) if level == "iwahori" else None
    return {"n": chi.n, "l": chi.ell, "ring": chi.ring.name, "alpha": _to_str(alpha), "level": level,
            "matrix": _mat_json(res.matrix), "rank": res.rank, "idempotent": linalg.mat_mul(res.matrix, res.matrix) == res.matrix,
            "W_prime": [list(w) for w in res.W_prime],
            "image_is_coordinate_span": pseries.image_is_coordinate_span(res.matrix, coords) if coords is not None else None}


def cmd_projectors(p):
    _require(p, "matrix", "factors")
    ring = _ring(p)
    A = _matrix(ring, p["matrix"])
    raw = json.loads(p["factors"]) if isinstance(p["factors"], str) else p["factors"]
    factors = [UniPoly([_scalar(ring, c) for c in f]) for f in raw]
    pis = specproj.projectors(A, factors)
    return {"ring": getattr(ring, "name", "QQ"), "projectors": [_mat_json(P) for P in pis],
            "ranks": [linalg.rank(P) for P in pis]}


def cmd_block_lift(p):
    _require(p, "ring", "gens", "sizes")
    ring = ring_from_spec(p["ring"])
    raw = json.loads(p["gens"]) if isinstance(p["gens"], str) else p["gens"]
    prob = blocklift.BlockLiftProblem(ring, [[[_scalar(ring, x) for x in r] for r in g] for g in raw], _ints(p["sizes"]))
    res = blocklift.split_lift(prob)
    return {"ring": ring.name, "sizes": list(prob.sizes), "X": _mat_json(res.X),
            "generators": [_mat_json(g) for g in res.generators], "audit": res.audit}


def _s3_c2_example(ell):
    F = GF(ell)
    M = lambda rows: [[F(x) for x in r] for r in rows]
    s, c = M([[0, 1], [1, 0]]), M([[0, -1], [1, -1]])
    one, neg = M([[1, 0], [0, 1]]), M([[-1, 0], [0, -1]])
    return [(s, s), (c, c), (one, neg)]


def cmd_burnside(p):
    ell = int(p.get("l") or 7)
    if p.get("gens1"):
        _require(p, "gens2")
        F = GF(ell)
        g1 = [_matrix(F, g) for g in (json.loads(p["gens1"]) if isinstance(p["gens1"], str) else p["gens1"])]
        g2 = [_matrix(F, g) for g in (json.loads(p["gens2"]) if isinstance(p["gens2"], str) else p["gens2"])]
        if len(g1) != len(g2):
            raise ShapeError("generator lists differ in length")
        pairs = list(zip(g1, g2))
    else:
        pairs = _s3_c2_example(ell)
    G = blocklift.group_closure(pairs)
    dim = blocklift.burnside_span_dim([a for a, _ in G], [b for _, b in G])
    n1, n2 = len(pairs[0][0]), len(pairs[0][1])
    return {"l": ell, "group_order": len(G), "span_dim": dim, "full_dim": n1 * n1 + n2 * n2}


def cmd_transfer(p):
    _require(p, "n", "v_poly", "vc_poly")
    ring = _ring(p)
    n = int(p["n"])
    q = _q(p, ring)
    fv = UniPoly(_scalars(ring, p["v_poly"]))
    fc = UniPoly(_scalars(ring, p["vc_poly"]))
    T = transfer.transfer_poly(fv, fc, q, n)
    return {"n": n, "q": _to_str(q), "transfer_poly": _poly_json(T),
            "factors": {"v": _poly_json(fv), "tail": _poly_json(transfer.transfer_tail(fc, q, n))},
            "perp_identity": transfer.perp_identity_check(
                [transfer.PerpPair("cli", fv, fc, transfer.claimed_d0(fv, fc, q, n))], q, n)}


def cmd_selftest(p, seed=0):
    from . import selftest

    level = p.get("level") or "quick"
    results = selftest.run(level, seed)
    return {"level": level, "results": results, "passed": all(r["ok"] for r in results)}


COMMANDS = {
    "weyl-cosets": cmd_weyl_cosets,
    "hecke-mul": cmd_hecke_mul,
    "parahoric-idem": cmd_parahoric_idem,
    "enumerate-cosets": cmd_enumerate_cosets,
    "pseries-spectrum": cmd_pseries_spectrum,
    "e-alpha": cmd_e_alpha,
    "projectors": cmd_projectors,
    "block-lift": cmd_block_lift,
    "burnside": cmd_burnside,
    "transfer": cmd_transfer,
    "selftest": cmd_selftest,
}

_FLAGS = ["n", "l", "p", "q", "mu", "nu", "chi", "ring", "m", "level", "alpha", "a", "b", "lam",
          "matrix", "factors", "gens", "gens1", "gens2", "sizes", "v-poly", "vc-poly"]


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="parahecke", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        for f in _FLAGS:
            sp.add_argument(f"--{f}", default=None)
        sp.add_argument("--allow-nondominant", action="store_true", default=None)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--config", default=None, help="JSON file mirroring the flags; flags win")
    return ap


def _job_from_args(argv) -> JobSpec:
    ns = vars(build_parser().parse_args(argv))
    cmd = ns.pop("command")
    config = {}
    if ns.get("config"):
        try:
            with open(ns["config"]) as fh:
                config = json.load(fh)
        except OSError as exc:
            raise OSError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise _ArgError(f"config is not valid JSON: {exc}") from exc
    params = {k.replace("-", "_"): v for k, v in config.items()}
    params.update({k: v for k, v in ns.items() if v is not None and k != "config"})
    seed = int(params.pop("seed", 0) or 0)
    out = params.pop("out", None)
    return JobSpec(cmd, params, seed, out)


def run(job: JobSpec) -> tuple[int, str]:
    """Execute a job; returns (exit code, canonical JSON)."""
    random.seed(job.seed)
    try:
        fn = COMMANDS[job.command]
        body = fn(job.params, job.seed) if job.command == "selftest" else fn(job.params)
        code = EXIT_OK
        if job.command == "selftest" and not body["passed"]:
            code = EXIT_CONTRACT
        doc = {"schema": schema(job.command), "ok": code == EXIT_OK, "result": body}
    except ParaheckeError as exc:
        code = exc.exit_code
        doc = {"schema": schema("error"), "ok": False, "command": job.command,
               "error": {"type": type(exc).__name__, "message": str(exc)}}
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        code = EXIT_VALIDATION
        doc = {"schema": schema("error"), "ok": False, "command": job.command,
               "error": {"type": type(exc).__name__, "message": str(exc)}}
    return code, canonical(doc)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        job = _job_from_args(argv)
    except _ArgError as exc:
        print(canonical({"schema": schema("error"), "ok": False,
                         "error": {"type": "UsageError", "message": str(exc)}}))
        return EXIT_VALIDATION
    except OSError as exc:
        print(canonical({"schema": schema("error"), "ok": False, "error": {"type": "IOError", "message": str(exc)}}))
        return EXIT_IO
    code, text = run(job)
    if job.out:
        try:
            with open(job.out, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(canonical({"schema": schema("error"), "ok": False,
                             "error": {"type": "IOError", "message": str(exc)}}))
            return EXIT_IO
    else:
        print(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
