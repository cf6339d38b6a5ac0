"""Command-line front end.

One session file fixes the prime, the ambient ring, the optional subring,
and the named inputs; each subcommand runs one computation against it and
emits either readable text or one JSON object with the fixed key set
{command, inputs, result, certificates, timings}.  Exit codes: 0 success,
1 property violation, 2 parse or validation error, 3 resource bound
exceeded, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import selftest as selftest_mod
from .bspoly import BPolynomial, bs_jump_check, bs_threshold_check, load_catalog
from .cartier import cartier_image
from .errors import (
    CoefficientReductionError,
    FsingError,
    NotInSemigroupError,
    ParseError,
    PurityError,
    RadicalHypothesisError,
    ResourceLimitError,
    RingMismatchError,
)
from .frobenius import eth_root
from .groebner import Ideal
from .invariants import (
    cyclic_witness,
    fpt_truncation,
    jump_spectrum,
    nu,
    summand_filter,
    test_ideal,
)
from .oracle import cartier_piece_solver, eth_root_dense, nu_dense, transport, transport_iso
from .session import Session, parse_session

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3
EXIT_INCONCLUSIVE = 4

_VALIDATION_ERRORS = (
    ParseError,
    PurityError,
    RingMismatchError,
    NotInSemigroupError,
    RadicalHypothesisError,
    CoefficientReductionError,
    ValueError,
)


def _frac(x: Fraction) -> str:
    return str(x)


def _polys(gens) -> List[str]:
    return [str(g) for g in gens]


def _parse_range(text: str) -> List[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _where(session: Session, args) -> object:
    if session.embedding is not None and not args.ambient:
        return session.embedding
    return "S"


def _mode_tag(where) -> str:
    return "S" if where == "S" else "R"


def _require_embedding(session: Session):
    if session.embedding is None:
        raise ValueError("this command needs a session with a `subring` line")
    return session.embedding


def _embedding_certificate(session: Session) -> Dict:
    emb = session.embedding
    if emb is None:
        return {}
    return {
        "purity_box": emb.box,
        "purity_points": emb.points_checked,
        "purity_verified": emb.verified,
    }


def _cmd_nu(session: Session, args) -> Tuple[Dict, Dict, int]:
    where = _where(session, args)
    j = session.lookup_ideal(args.ideal)
    a = session.lookup_ideal(args.wrt)
    res = nu(j, a, args.e, where, session.limits)
    result = {"value": res.value, "ratio": _frac(res.ratio)}
    certs = {"bounds_rechecked": True, "mode": res.where}
    certs.update(_embedding_certificate(session))
    return result, certs, EXIT_OK


def _cmd_fpt(session: Session, args) -> Tuple[Dict, Dict, int]:
    where = _where(session, args)
    f = session.lookup_poly(args.f)
    m = session.lookup_ideal(args.wrt)
    est = fpt_truncation(f, m, args.e, where, session.limits)
    result = {
        "value": _frac(est.value),
        "chain": [[e, v, _frac(r)] for e, v, r in est.chain],
        "monotone": est.monotone,
    }
    certs = {"mode": est.where, "monotone_chain": est.monotone}
    certs.update(_embedding_certificate(session))
    return result, certs, EXIT_OK


def _cmd_tau(session: Session, args) -> Tuple[Dict, Dict, int]:
    where = _where(session, args)
    gens = session.lookup_ideal(args.ideal)
    e_max = args.emax if args.emax is not None else session.e_max
    res = test_ideal(gens, Fraction(args.lam), e_max, where, session.limits)
    result = {
        "tau": _polys(res.tau),
        "lambda": _frac(res.lam),
        "status": res.status,
        "e_star": res.e_star,
        "chain": [[e, _polys(g)] for e, g in res.chain],
    }
    certs = {"mode": res.where, "ascending_chain": res.ascending,
             "stabilization_level": res.e_star}
    certs.update(_embedding_certificate(session))
    code = EXIT_OK if res.status == "stabilized" else EXIT_INCONCLUSIVE
    return result, certs, code


def _cmd_jumps(session: Session, args) -> Tuple[Dict, Dict, int]:
    where = _where(session, args)
    if args.f is not None:
        source = (session.lookup_poly(args.f),)
    elif args.ideal is not None:
        source = session.lookup_ideal(args.ideal)
    else:
        raise ValueError("jumps needs --f or --ideal")
    spec = jump_spectrum(source, args.e, Fraction(args.range), where,
                         session.limits, refine=args.refine)
    result = {
        "candidates": [_frac(lam) for lam in spec.values()],
        "witnesses": [
            {"lambda": _frac(lam), "before": _polys(b), "after": _polys(a)}
            for lam, b, a in spec.candidates
        ],
    }
    if spec.refinement is not None:
        result["refinement"] = {
            "level": spec.refinement.e,
            "candidates": [_frac(v) for v in spec.refinement.values()],
            "windows": [
                {"lambda": _frac(lam), "refined": [_frac(v) for v in vals]}
                for lam, vals in spec.windows
            ],
        }
    certs = {"mode": spec.where, "level_semantics": f"candidates are a/p^{args.e} truncations"}
    certs.update(_embedding_certificate(session))
    return result, certs, EXIT_OK


def _cmd_summand(session: Session, args) -> Tuple[Dict, Dict, int]:
    emb = _require_embedding(session)
    if args.f is not None:
        source = (session.lookup_poly(args.f),)
    elif args.ideal is not None:
        source = session.lookup_ideal(args.ideal)
    else:
        raise ValueError("summand needs --f or --ideal")
    s_spec = jump_spectrum(source, args.e, Fraction(args.range), "S", session.limits)
    report = summand_filter(source, emb, args.e, s_spec, session.limits)
    result = {
        "s_candidates": [_frac(v) for v in s_spec.values()],
        "entries": [{"lambda": _frac(lam), "survives": flag} for lam, flag in report.entries],
        "survivors": [_frac(v) for v in report.survivors],
    }
    certs = {"images_stable": report.stable}
    certs.update(_embedding_certificate(session))
    return result, certs, EXIT_OK


def _cmd_cyclic(session: Session, args) -> Tuple[Dict, Dict, int]:
    where = _where(session, args)
    f = session.lookup_poly(args.f)
    e_max = args.emax if args.emax is not None else session.e_max
    e_prime, verified = cyclic_witness(f, args.e, e_max, where, session.limits)
    result = {"e_prime": e_prime, "verified": verified}
    certs = {"mode": _mode_tag(where), "search_range": [args.e, e_max]}
    certs.update(_embedding_certificate(session))
    return result, certs, EXIT_OK if verified else EXIT_INCONCLUSIVE


def _cmd_cartier(session: Session, args) -> Tuple[Dict, Dict, int]:
    emb = _require_embedding(session)
    gens = session.lookup_ideal(args.ideal)
    img = cartier_image(gens, emb, args.e, session.limits)
    result = {"generators": _polys(img.generators), "level": args.e}
    certs = {"box": img.box, "stable": img.stable, "exact_slab": img.exact_slab}
    certs.update(_embedding_certificate(session))
    return result, certs, EXIT_OK


def _cmd_bs_check(session: Session, args) -> Tuple[Dict, Dict, int]:
    where = _where(session, args)
    catalog = load_catalog(args.catalog)
    if args.b in catalog:
        b = catalog[args.b]
    else:
        b = BPolynomial.parse(args.b)
    f = session.lookup_poly(args.f)
    if args.mode == "threshold":
        if args.wrt is None:
            raise ValueError("threshold mode needs --wrt")
        a = session.lookup_ideal(args.wrt)
        report = bs_threshold_check(b, f, a, session.prime, _parse_range(args.e),
                                    where, session.limits)
    else:
        levels = _parse_range(args.e)
        if len(levels) != 1:
            raise ValueError("jump mode needs a single --e level")
        if args.nu_range is None:
            raise ValueError("jump mode needs --nu-range")
        report = bs_jump_check(b, f, session.prime, levels[0],
                               _parse_range(args.nu_range), where, session.limits)
    result = {
        "b": str(b),
        "mode": report.mode,
        "verdict": report.verdict,
        "rows": [
            {"e": r.e, "exponent": r.exponent, "residue": r.residue, "verdict": r.verdict}
            for r in report.rows
        ],
    }
    certs = {"mode": report.where, "m_floor": session.limits.m_floor}
    certs.update(_embedding_certificate(session))
    if report.verdict == "pass":
        code = EXIT_OK
    elif report.verdict == "fail":
        code = EXIT_VIOLATION
    else:
        code = EXIT_INCONCLUSIVE
    return result, certs, code


def _cmd_oracle(session: Session, args) -> Tuple[Dict, Dict, int]:
    certs: Dict = {}
    if args.op == "nu-dense":
        f = session.lookup_poly(args.f)
        a = session.lookup_ideal(args.wrt if args.wrt else "m")
        value = nu_dense(f, a, session.prime, args.e, session.limits)
        result = {"value": value}
    elif args.op == "eth-root-dense":
        gens = session.lookup_ideal(args.ideal)
        root = eth_root_dense(gens, session.prime, args.e, session.limits)
        result = {"generators": _polys(root.gens)}
    elif args.op == "solver":
        emb = _require_embedding(session)
        if args.w is None:
            raise ValueError("solver needs --w, a comma-separated shift vector")
        w = tuple(int(part) for part in args.w.split(","))
        box = args.box if args.box is not None else emb.box
        sol = cartier_piece_solver(emb, args.e, w, box, session.limits)
        result = {
            "dimension": sol.dimension,
            "box": sol.box,
            "basis_supports": [sorted(map(list, sup)) for sup in sol.supports()],
        }
        certs["growth_checked"] = True
    elif args.op == "transport":
        emb = _require_embedding(session)
        iso = transport_iso(emb, session.limits)
        if args.f is not None:
            obj = session.lookup_poly(args.f)
            if args.back:
                obj = transport(transport(obj, iso), iso, back=True)
                result = {"roundtrip": str(obj)}
            else:
                result = {"image": str(transport(obj, iso)),
                          "target_variables": list(iso.names)}
        elif args.ideal is not None:
            gens = session.lookup_ideal(args.ideal)
            result = {"image": _polys(transport(gens, iso)),
                      "target_variables": list(iso.names)}
        else:
            raise ValueError("transport needs --f or --ideal")
    else:
        raise ValueError(f"unknown oracle op {args.op!r}")
    certs.update(_embedding_certificate(session))
    return result, certs, EXIT_OK


def _cmd_selftest(session: Optional[Session], args) -> Tuple[Dict, Dict, int]:
    selected = None
    if args.criteria:
        selected = [int(part) for part in args.criteria.split(",")]
    results = selftest_mod.run_criteria(selected, seed=args.seed, quiet=args.format == "json")
    result = {
        "criteria": [
            {"number": r.number, "name": r.name, "passed": r.passed,
             "seconds": round(r.seconds, 1), "detail": r.detail}
            for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    code = EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION
    return result, {}, code


def _add_globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--session", help="path to a session file", **kw)
    parser.add_argument("--format", choices=("json", "text"),
                        **(kw if suppress else {"default": "json"}))
    parser.add_argument("--seed", type=int, help="seed for randomized sweeps (selftest)",
                        **(kw if suppress else {"default": 20250819}))
    parser.add_argument("--timings", action="store_true",
                        help="include wall-clock timings in the report", **kw)
    parser.add_argument("--ambient", action="store_true",
                        help="compute in the ambient ring S even when a subring is declared",
                        **kw)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsing",
        description="Frobenius singularity invariants in polynomial rings and "
                    "their monomial direct summands.",
    )
    _add_globals(parser, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    _add_globals(shared, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=argparse.ArgumentParser)

    p = sub.add_parser("nu", parents=[shared], help="largest t with J^t outside a^[p^e]")
    p.add_argument("--ideal", required=True)
    p.add_argument("--wrt", required=True)
    p.add_argument("--e", type=int, required=True)

    p = sub.add_parser("fpt", parents=[shared], help="F-threshold truncation chain")
    p.add_argument("--f", required=True)
    p.add_argument("--wrt", required=True)
    p.add_argument("--e", type=int, required=True)

    p = sub.add_parser("tau", parents=[shared], help="test ideal of a pair (I, lambda)")
    p.add_argument("--ideal", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--emax", type=int)

    p = sub.add_parser("jumps", parents=[shared], help="level-e jumping candidates")
    p.add_argument("--f")
    p.add_argument("--ideal")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--range", default="1")
    p.add_argument("--refine", action="store_true")

    p = sub.add_parser("summand", parents=[shared], help="filter S-candidates through R")
    p.add_argument("--f")
    p.add_argument("--ideal")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--range", default="1")

    p = sub.add_parser("cyclic", parents=[shared], help="Frobenius cyclicity witness")
    p.add_argument("--f", required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--emax", type=int)

    p = sub.add_parser("cartier", parents=[shared], help="level-e Cartier image in R")
    p.add_argument("--ideal", required=True)
    p.add_argument("--e", type=int, required=True)

    p = sub.add_parser("bs-check", parents=[shared], help="b-polynomial root checks mod p")
    p.add_argument("--b", required=True, help="catalog key or expression in s")
    p.add_argument("--f", required=True)
    p.add_argument("--wrt")
    p.add_argument("--e", required=True, help="level or range like 1..3")
    p.add_argument("--mode", choices=("threshold", "jump"), default="threshold")
    p.add_argument("--nu-range", dest="nu_range", help="exponent range for jump mode")
    p.add_argument("--catalog", help="path to an alternative catalog file")

    p = sub.add_parser("oracle", parents=[shared], help="independent brute-force validators")
    p.add_argument("--op", required=True,
                   choices=("nu-dense", "eth-root-dense", "solver", "transport"))
    p.add_argument("--f")
    p.add_argument("--ideal")
    p.add_argument("--wrt")
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--w", help="comma-separated shift vector for the solver")
    p.add_argument("--box", type=int)
    p.add_argument("--back", action="store_true", help="transport round-trip check")

    p = sub.add_parser("selftest", parents=[shared], help="run the acceptance criteria")
    p.add_argument("--criteria", help="comma-separated subset, e.g. 1,2,5")

    return parser


_HANDLERS = {
    "nu": _cmd_nu,
    "fpt": _cmd_fpt,
    "tau": _cmd_tau,
    "jumps": _cmd_jumps,
    "summand": _cmd_summand,
    "cyclic": _cmd_cyclic,
    "cartier": _cmd_cartier,
    "bs-check": _cmd_bs_check,
    "oracle": _cmd_oracle,
}


def _inputs_dict(args, session: Optional[Session]) -> Dict:
    skip = {"command", "format", "timings", "seed"}
    inputs = {
        k: v for k, v in sorted(vars(args).items())
        if k not in skip and v is not None and v is not False
    }
    if session is not None:
        inputs["prime"] = session.prime
        inputs["ring"] = list(session.ring.variables)
        if session.embedding is not None:
            inputs["subring"] = [list(g) for g in session.embedding.semigroup.gens]
    return inputs


def _print_text(command: str, result: Dict, certs: Dict, out) -> None:
    print(f"command: {command}", file=out)
    for key in sorted(result):
        print(f"{key}: {result[key]}", file=out)
    if certs:
        print("certificates:", file=out)
        for key in sorted(certs):
            print(f"  {key}: {certs[key]}", file=out)


def run(command: str, session: Optional[Session], args) -> int:
    """Execute one subcommand against a parsed session; returns the exit code."""
    start = time.monotonic()
    if command == "selftest":
        result, certs, code = _cmd_selftest(session, args)
    else:
        if session is None:
            raise ValueError("this command needs --session")
        result, certs, code = _HANDLERS[command](session, args)
    elapsed = time.monotonic() - start
    if args.format == "json":
        envelope = {
            "command": command,
            "inputs": _inputs_dict(args, session),
            "result": result,
            "certificates": certs,
            "timings": {"total_s": round(elapsed, 3)} if args.timings else None,
        }
        print(json.dumps(envelope, sort_keys=True, indent=2))
    else:
        if command == "selftest":
            print(f"passed: {result['passed']}")
        else:
            _print_text(command, result, certs, sys.stdout)
        if args.timings:
            print(f"timings: {elapsed:.3f}s")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        session = parse_session(args.session) if args.session else None
        return run(args.command, session, args)
    except ResourceLimitError as ex:
        print(f"resource bound exceeded: {ex}", file=sys.stderr)
        return EXIT_RESOURCE
    except _VALIDATION_ERRORS as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_VALIDATION
    except FsingError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
