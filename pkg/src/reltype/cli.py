"""Command-line interface.

    reltype rt     --ring "QQ[x,y]" --ideal "x^2, x*y, y^2"
    reltype rees   --ring "QQ[x,y]" --ideal "x^2, x*y, y^2" --json
    reltype sym | gr | jdual | oracle ...
    reltype corpus [MANIFEST] --jobs 4

Exit codes: 0 exact result, 1 corpus mismatch or runtime error, 2 usage or
parse error, 3 result capped by degree or time limits (a lower bound).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass

from .blowup import (
    PolyMatrix,
    gr_presentation,
    jacobian_dual,
    rees_ideal,
    relation_type,
    sym_ideal,
    syzygy_matrix,
)
from .corpus import ManifestError, default_manifest_path, load_manifest, run_corpus
from .field import Field, is_prime, parse_field
from .geometry import (
    monomial_algebra_gens,
    nodal_curve_instance,
    six_points_instance,
    unbounded_family_gens,
)
from .groebner import DEFAULT_MAX_DEGREE, DEFAULT_TIMEOUT, GroebnerIncomplete
from .oracle import OracleError, minimal_generator_bidegrees
from .parse import ParseError, parse_ideal, parse_ring

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAPPED = 3

FAMILIES = ("unbounded", "veronese", "six-points", "nodal")


@dataclass(frozen=True)
class RunConfig:
    field: Field | None = None
    max_degree: int = DEFAULT_MAX_DEGREE
    timeout: float = DEFAULT_TIMEOUT
    json: bool = False
    jobs: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.field is not None and self.field.characteristic and not is_prime(self.field.characteristic):
            raise ValueError("field characteristic must be prime")
        if self.max_degree < 1:
            raise ValueError("--max-degree must be at least 1")
        if self.timeout < 1:
            raise ValueError("--timeout must be at least 1")
        if self.jobs < 1:
            raise ValueError("--jobs must be at least 1")

    @property
    def caps(self) -> dict:
        return {"max_degree": self.max_degree, "timeout": self.timeout}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input assembly


def _field_from_ring_spec(spec: str | None) -> Field | None:
    if not spec:
        return None
    return parse_ring(spec).field


def _load_input(args, cfg: RunConfig):
    """Returns (ring, generators, extra) from --ring/--ideal or --family."""
    if args.family:
        fld = cfg.field or _field_from_ring_spec(args.ring) or parse_field("QQ")
        if args.family == "unbounded":
            if args.d is None:
                raise UsageError("--family unbounded needs --d")
            inst = unbounded_family_gens(args.d, fld)
        elif args.family == "veronese":
            if args.d is None or args.n is None:
                raise UsageError("--family veronese needs --n and --d")
            inst = monomial_algebra_gens(args.n, args.d, fld)
        elif args.family == "six-points":
            a = args.params or [2, 3, 5]
            if len(a) != 3:
                raise UsageError("six-points takes three --params")
            inst = six_points_instance(*a, field=fld)
        else:
            if args.g is None:
                raise UsageError("--family nodal needs --g")
            inst = nodal_curve_instance(args.g, field=fld)
        if args.ring:
            want = parse_ring(args.ring)
            if want.variables != inst.ring.variables:
                raise UsageError(
                    f"--ring variables {list(want.variables)} do not match the family's {list(inst.ring.variables)}"
                )
        return inst.ring, list(inst.generators), inst
    if not args.ring or args.ideal is None:
        raise UsageError("give --ring and --ideal, or --family")
    ring = parse_ring(args.ring)
    if cfg.field is not None:
        ring = ring.with_field(cfg.field)
    if getattr(args, "base", None):
        ring = ring.with_base_ideal(parse_ideal(args.base, ring))
    return ring, parse_ideal(args.ideal, ring), None


def _gen_record(g, bideg=None) -> dict:
    return {"poly": str(g), "tdeg": g.t_degree(), "xdeg": bideg}


def _xdeg(g, homogeneous: bool):
    return g.x_degree() if homogeneous else None


def _emit(cfg: RunConfig, payload: dict, text_lines: list[str]):
    if cfg.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print("\n".join(text_lines))


# ---------------------------------------------------------------------------
# commands


def cmd_rt(args, cfg: RunConfig) -> int:
    ring, gens, _ = _load_input(args, cfg)
    pres = rees_ideal(ring, gens, **cfg.caps)
    rep = relation_type(pres, **cfg.caps)
    homog = rep.bidegrees is not None
    members = sum(1 for c in rep.certificates if c.member)
    survivors = len(rep.certificates) - members
    payload = {
        "rt": rep.rt,
        "exact": rep.exact,
        "generators": [_gen_record(g, _xdeg(g, homog)) for g in rep.generators],
        "timings_ms": rep.timings_ms,
        "t_degrees": list(rep.t_degrees),
    }
    lines = [
        f"rt: {rep.rt}" + ("" if rep.exact else f"  (lower bound; {rep.reason})"),
        f"minimal generator T-degrees: {list(rep.t_degrees)}",
    ]
    if homog:
        lines.append(f"bidegrees (x, T): {[tuple(b) for b in rep.bidegrees]}")
    lines.append(
        f"certificates: {survivors} survivors with nonzero normal form, {members} generators reduced to zero"
    )
    lines.append("timings: " + ", ".join(f"{k} {v:.1f} ms" for k, v in rep.timings_ms.items()))
    _emit(cfg, payload, lines)
    return EXIT_OK if rep.exact else EXIT_CAPPED


def cmd_rees(args, cfg: RunConfig) -> int:
    ring, gens, _ = _load_input(args, cfg)
    pres = rees_ideal(ring, gens, **cfg.caps)
    rep = relation_type(pres, **cfg.caps)
    homog = rep.bidegrees is not None
    gens_out = list(rep.generators)
    payload = {
        "rt": rep.rt,
        "exact": rep.exact,
        "generators": [_gen_record(g, _xdeg(g, homog)) for g in gens_out],
        "timings_ms": rep.timings_ms,
    }
    lines = [f"Rees ideal: {len(gens_out)} minimal generators, T-degrees {sorted(g.t_degree() for g in gens_out)}"]
    lines += [f"  [T-degree {g.t_degree()}] {g}" for g in gens_out]
    lines.append(f"rt: {rep.rt}")
    _emit(cfg, payload, lines)
    return EXIT_OK if rep.exact else EXIT_CAPPED


def cmd_sym(args, cfg: RunConfig) -> int:
    ring, gens, _ = _load_input(args, cfg)
    t0 = time.perf_counter()
    pres = rees_ideal(ring, gens, **cfg.caps)
    lin = sym_ideal(pres)
    rep = relation_type(pres, **cfg.caps)
    homog = rep.bidegrees is not None
    payload = {
        "rt": rep.rt,
        "exact": rep.exact and pres.exact,
        "generators": [_gen_record(g, _xdeg(g, homog)) for g in lin],
        "timings_ms": {"sym": (time.perf_counter() - t0) * 1000.0},
    }
    lines = [f"symmetric algebra ideal: {len(lin)} T-linear generators"] + [f"  {g}" for g in lin]
    lines.append(f"linear type: {'yes' if rep.rt == 1 else 'no'} (rt = {rep.rt})")
    _emit(cfg, payload, lines)
    return EXIT_OK if payload["exact"] else EXIT_CAPPED


def cmd_gr(args, cfg: RunConfig) -> int:
    ring, gens, _ = _load_input(args, cfg)
    t0 = time.perf_counter()
    pres = rees_ideal(ring, gens, **cfg.caps)
    gr = gr_presentation(pres, **cfg.caps)
    payload = {
        "rt": gr.rt_gr,
        "exact": gr.exact,
        "generators": [_gen_record(g, None) for g in gr.generators],
        "timings_ms": {"gr": (time.perf_counter() - t0) * 1000.0},
        "rt_gr": gr.rt_gr,
    }
    lines = [f"rt_gr: {gr.rt_gr}", f"generator T-degrees over R/I: {list(gr.t_degrees)}"]
    lines += [f"  {g}" for g in gr.generators]
    _emit(cfg, payload, lines)
    return EXIT_OK if gr.exact else EXIT_CAPPED


def cmd_jdual(args, cfg: RunConfig) -> int:
    ring, gens, inst = _load_input(args, cfg)
    t0 = time.perf_counter()
    pres = rees_ideal(ring, gens, **cfg.caps)
    S = pres.ring
    if inst is not None and "M" in inst.matrices:
        M0 = inst.matrices["M"]
        M = PolyMatrix.from_rows([[e.in_ring(S) for e in r] for r in M0.entries], S)
    else:
        M = syzygy_matrix(pres)
    xs = [S.variables[i] for i in S.x_block]
    ts = [S.variables[i] for i in S.T_block]
    B = jacobian_dual(M, xs, ts)
    det = B.det() if B.rows == B.cols else None
    rep = relation_type(pres, **cfg.caps)
    payload = {
        "rt": rep.rt,
        "exact": rep.exact,
        "generators": [_gen_record(det, None)] if det is not None else [],
        "timings_ms": {"jdual": (time.perf_counter() - t0) * 1000.0},
        "M": M.to_lists(),
        "B": B.to_lists(),
        "det": None if det is None else str(det),
    }
    lines = ["M =", str(M), "B(M) =", str(B)]
    if det is not None:
        lines.append(f"det B(M) = {det}  (T-degree {det.t_degree()})")
    _emit(cfg, payload, lines)
    return EXIT_OK if rep.exact else EXIT_CAPPED


def cmd_oracle(args, cfg: RunConfig) -> int:
    ring, gens, _ = _load_input(args, cfg)
    p = cfg.field.characteristic if cfg.field is not None else None
    tab = minimal_generator_bidegrees(gens, args.D, args.N, characteristic=p)
    bideg = tab.generator_bidegrees()
    payload = {
        "rt": tab.rt_lower_bound(),
        "exact": tab.saturated(),
        "generators": [{"poly": None, "tdeg": n, "xdeg": d} for d, n in bideg],
        "timings_ms": tab.timings_ms,
        "dims": {f"{d},{n}": v for (d, n), v in sorted(tab.dims.items())},
    }
    lines = [
        f"minimal generator bidegrees within (D, N) = ({args.D}, {args.N}): {bideg}",
        f"rt >= {tab.rt_lower_bound()}" + (" (saturated)" if tab.saturated() else ""),
    ]
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_corpus(args, cfg: RunConfig) -> int:
    path = args.manifest or default_manifest_path()
    entries, mfield = load_manifest(path)
    fld = cfg.field or mfield
    results = run_corpus(entries, fld, jobs=cfg.jobs, **cfg.caps)
    failed = [r for r in results if r.failed]
    capped = [r for r in results if r.status == "CAPPED"]
    if cfg.json:
        print(json.dumps({
            "instances": [
                {"name": r.name, "expected_rt": r.expected_rt, "rt": r.rt, "rt_gr": r.rt_gr,
                 "exact": r.exact, "status": r.status, "conjecture": r.conjecture,
                 "t_degrees": r.t_degrees, "error": r.error, "timings_ms": {"total": r.seconds * 1000.0}}
                for r in results
            ],
            "passed": len(results) - len(failed) - len(capped),
            "failed": len(failed),
            "capped": len(capped),
        }, indent=2))
    else:
        w = max([len(r.name) for r in results] + [8])
        print(f"{'instance':<{w}}  expected  rt  rt_gr  status   time")
        for r in results:
            exp = "-" if r.expected_rt is None else str(r.expected_rt)
            print(f"{r.name:<{w}}  {exp:>8}  {r.rt if r.rt is not None else '-':>2}  "
                  f"{r.rt_gr if r.rt_gr is not None else '-':>5}  {r.status:<7}  {r.seconds:.2f}s"
                  + (f"  {r.error}" if r.error else ""))
        print(f"{len(results)} instances: {len(results) - len(failed) - len(capped)} ok, "
              f"{len(failed)} failed, {len(capped)} capped")
    if failed:
        return EXIT_FAIL
    return EXIT_CAPPED if capped else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser, inputs: bool = True):
    if inputs:
        p.add_argument("--ring", help='ring, e.g. "QQ[x,y]" or "GF(32003)[x1,x2]"')
        p.add_argument("--ideal", help='comma-separated generators, e.g. "x^2, x*y"')
        p.add_argument("--base", default="", help="generators of a base ideal (quotient ring)")
        p.add_argument("--family", choices=FAMILIES, help="built-in example family instead of --ideal")
        p.add_argument("--d", type=int, help="family parameter d")
        p.add_argument("--n", type=int, help="family parameter n (veronese)")
        p.add_argument("--g", type=int, help="genus (nodal)")
        p.add_argument("--params", type=int, nargs="*", help="six-points parameters a1 a2 a3")
    p.add_argument("--field", help="coefficient field override: QQ or GF(p)")
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT, help="seconds per Groebner basis")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (corpus)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reltype", description="Relation type of Rees algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, help_ in [
        ("rt", cmd_rt, "relation type with minimal-generator degrees"),
        ("rees", cmd_rees, "minimal generators of the Rees ideal"),
        ("sym", cmd_sym, "T-linear relations (symmetric algebra)"),
        ("gr", cmd_gr, "associated graded ring presentation and its relation type"),
        ("jdual", cmd_jdual, "syzygy matrix and Jacobian dual"),
    ]:
        p = sub.add_parser(name, help=help_)
        _add_common(p)
        p.set_defaults(func=fn)
    p = sub.add_parser("oracle", help="bidegree table by linear algebra")
    _add_common(p)
    p.add_argument("--D", type=int, default=8, help="x-degree bound")
    p.add_argument("--N", type=int, default=6, help="T-degree bound")
    p.set_defaults(func=cmd_oracle)
    p = sub.add_parser("corpus", help="run a corpus manifest")
    p.add_argument("manifest", nargs="?", help="YAML manifest (default: the bundled corpus)")
    _add_common(p, inputs=False)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            field=parse_field(args.field) if args.field else None,
            max_degree=args.max_degree,
            timeout=args.timeout,
            json=args.json,
            jobs=args.jobs,
            seed=args.seed,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    random.seed(cfg.seed)
    try:
        return args.func(args, cfg)
    except (ParseError, UsageError, ManifestError, OracleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GroebnerIncomplete as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_CAPPED
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
