"""Command-line front end: character computations, set enumeration and the
verification suites, with plain, JSON and LaTeX output."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import cache as cache_io
from .graded import GradedChar, ext_dim, gch_N
from .poset import (
    GammaSet,
    LambdaPoint,
    PsiSet,
    check_polytope_condition,
    check_psi_extra,
    checked_psi,
    gamma_psi,
    i_lambda,
    psi_i,
    psi_of_mu,
)
from .repchar import IsoChar, ModuleSpec, active_tensor_cache, adjoint_char, tensor_decompose
from .rootsys import LieType, RootSystem, build_root_system, parse_lie_type
from .verify import run_suite

FORMATS = ("plain", "json", "latex")
ENV_CACHE = "KRCHAR_CACHE"


class InputError(ValueError):
    """Raised for malformed job input; mapped to exit code 2."""


@dataclass
class JobSpec:
    command: str
    algebra: LieType | None = None
    weights: list[tuple[int, ...]] = field(default_factory=list)
    ell: int = 1
    points: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    j: int | None = None
    node: int | None = None
    degree: tuple[int, ...] | None = None
    format: str = "plain"
    mode: str = "fixed-psi"
    suite: str = "all"
    cache_path: str | None = None


# -- input parsing ---------------------------------------------------------------

def parse_coords(text: str, kind: str = "weight") -> tuple[int, ...]:
    """Parse a comma-separated integer vector, naming bad tokens by position."""
    out = []
    for pos, token in enumerate(text.split(","), 1):
        stripped = token.strip()
        try:
            out.append(int(stripped))
        except ValueError:
            raise InputError(
                f"invalid {kind} coordinate {token!r} at position {pos} in {text!r}"
            ) from None
    return tuple(out)


def parse_point(text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Parse the 'coords@degree' syntax into a (weight, multidegree) pair."""
    left, sep, right = text.partition("@")
    if not sep:
        raise InputError(f"expected 'coords@degree' but found no '@' in {text!r}")
    return parse_coords(left, "weight"), parse_coords(right, "degree")


def _require_rank(rs: RootSystem, w, what: str = "weight"):
    if len(w) != rs.rank:
        raise InputError(
            f"{what} {list(w)} has {len(w)} coordinates but {rs.lie_type} has rank {rs.rank}"
        )
    return w


# -- serialisation ------------------------------------------------------------------

def graded_to_json(algebra: LieType, ell: int, g: GradedChar) -> dict:
    return {
        "algebra": str(algebra),
        "ell": ell,
        "entries": [
            {"weight": list(w), "degree": list(r), "mult": m}
            for (w, r), m in g.canonical_items()
        ],
    }


def graded_from_json(doc: dict) -> tuple[LieType, int, GradedChar]:
    algebra = parse_lie_type(doc["algebra"])
    entries = {
        (tuple(e["weight"]), tuple(e["degree"])): e["mult"] for e in doc["entries"]
    }
    return algebra, doc["ell"], GradedChar(entries)


def iso_to_json(algebra: LieType, iso: IsoChar) -> dict:
    return {
        "algebra": str(algebra),
        "entries": [
            {"weight": list(w), "mult": m} for w, m in sorted(iso.entries.items())
        ],
    }


def iso_from_json(doc: dict) -> tuple[LieType, IsoChar]:
    return (
        parse_lie_type(doc["algebra"]),
        IsoChar({tuple(e["weight"]): e["mult"] for e in doc["entries"]}),
    )


def gamma_to_json(algebra: LieType, gamma: GammaSet) -> dict:
    return {
        "algebra": str(algebra),
        "ell": gamma.ell,
        "base": {"weight": list(gamma.base.weight), "degree": list(gamma.base.degree)},
        "psi": [list(w) for w in sorted(gamma.psi.elements)],
        "points": [
            {
                "weight": list(p.weight),
                "degree": list(p.degree),
                "d": gamma.d_of[p.weight],
            }
            for p in gamma.points
        ],
    }


def gamma_from_json(doc: dict) -> tuple[LieType, GammaSet]:
    base = LambdaPoint(tuple(doc["base"]["weight"]), tuple(doc["base"]["degree"]))
    psi = PsiSet(frozenset(tuple(w) for w in doc["psi"]))
    points = tuple(
        LambdaPoint(tuple(p["weight"]), tuple(p["degree"])) for p in doc["points"]
    )
    d_of = {tuple(p["weight"]): p["d"] for p in doc["points"]}
    return parse_lie_type(doc["algebra"]), GammaSet(base, psi, points, d_of)


def weight_latex(w) -> str:
    terms = []
    for i, c in enumerate(w, 1):
        if not c:
            continue
        coeff = "" if c == 1 else str(c)
        terms.append(f"{coeff}\\omega_{{{i}}}")
    return "+".join(terms) if terms else "0"


def degree_latex(r) -> str:
    factors = []
    for j, c in enumerate(r, 1):
        if not c:
            continue
        factors.append(f"t_{{{j}}}" if c == 1 else f"t_{{{j}}}^{{{c}}}")
    return " ".join(factors)


def graded_latex(g: GradedChar) -> str:
    terms = []
    for (w, r), m in g.canonical_items():
        coeff = "" if m == 1 else f"{m}\\,"
        monomial = degree_latex(r)
        tail = f"\\, {monomial}" if monomial else ""
        terms.append(f"{coeff}\\ch V({weight_latex(w)}){tail}")
    return " + ".join(terms) if terms else "0"


def iso_latex(iso: IsoChar) -> str:
    terms = []
    for w, m in sorted(iso.entries.items()):
        coeff = "" if m == 1 else f"{m}\\,"
        terms.append(f"{coeff}\\ch V({weight_latex(w)})")
    return " + ".join(terms) if terms else "0"


def graded_plain(g: GradedChar) -> str:
    lines = [
        f"V({','.join(map(str, w))}) t^({','.join(map(str, r))})  x{m}"
        for (w, r), m in g.canonical_items()
    ]
    return "\n".join(lines) if lines else "(zero character)"


def iso_plain(iso: IsoChar) -> str:
    lines = [
        f"V({','.join(map(str, w))})  x{m}" for w, m in sorted(iso.entries.items())
    ]
    return "\n".join(lines) if lines else "(zero character)"


def gamma_plain(gamma: GammaSet) -> str:
    lines = []
    for p in gamma.points:
        lines.append(
            f"({','.join(map(str, p.weight))}) @ ({','.join(map(str, p.degree))})"
            f"  d={gamma.d_of[p.weight]}"
        )
    return "\n".join(lines)


# -- command handlers ----------------------------------------------------------------

def _run_gch(job: JobSpec) -> tuple[int, str]:
    rs = build_root_system(job.algebra)
    (lam,) = job.weights
    _require_rank(rs, lam)
    if not rs.is_dominant(lam):
        raise InputError(f"weight {list(lam)} is not dominant")
    g = gch_N(rs, lam, job.ell, mode=job.mode)
    if job.format == "json":
        return 0, json.dumps(graded_to_json(rs.lie_type, job.ell, g), indent=2)
    if job.format == "latex":
        return 0, graded_latex(g)
    return 0, graded_plain(g)


def _run_ext(job: JobSpec) -> tuple[int, str]:
    rs = build_root_system(job.algebra)
    (a_w, a_d), (b_w, b_d) = job.points
    _require_rank(rs, a_w, "source weight")
    _require_rank(rs, b_w, "target weight")
    if len(a_d) != len(b_d):
        raise InputError(
            f"degree vectors {list(a_d)} and {list(b_d)} have different lengths"
        )
    ms = ModuleSpec.adjoint(rs, len(a_d))
    value = ext_dim(rs, ms, LambdaPoint(a_w, a_d), LambdaPoint(b_w, b_d), job.j)
    if job.format == "json":
        return 0, json.dumps({"algebra": str(rs.lie_type), "j": job.j, "value": value})
    return 0, str(value)


def _run_gamma(job: JobSpec) -> tuple[int, str]:
    rs = build_root_system(job.algebra)
    (lam,) = job.weights
    _require_rank(rs, lam)
    if not rs.is_dominant(lam):
        raise InputError(f"weight {list(lam)} is not dominant")
    degree = job.degree if job.degree is not None else (0,) * job.ell
    if len(degree) != job.ell:
        raise InputError(f"degree {list(degree)} does not have length ell={job.ell}")
    node = job.node if job.node is not None else i_lambda(rs, lam)
    if not 1 <= node <= rs.rank:
        raise InputError(f"node {node} out of range 1..{rs.rank}")
    psi = checked_psi(rs, psi_i(rs, node))
    gamma = gamma_psi(rs, psi, LambdaPoint(lam, degree), job.ell)
    if job.format == "json":
        return 0, json.dumps(gamma_to_json(rs.lie_type, gamma), indent=2)
    return 0, gamma_plain(gamma)


def _run_tensor(job: JobSpec) -> tuple[int, str]:
    rs = build_root_system(job.algebra)
    if len(job.weights) != 2:
        raise InputError("tensor needs exactly two --weight arguments")
    lam, nu = job.weights
    _require_rank(rs, lam)
    _require_rank(rs, nu)
    if not (rs.is_dominant(lam) and rs.is_dominant(nu)):
        raise InputError("tensor factors must be dominant weights")
    iso = tensor_decompose(rs, lam, nu)
    if job.format == "json":
        return 0, json.dumps(iso_to_json(rs.lie_type, iso), indent=2)
    if job.format == "latex":
        return 0, iso_latex(iso)
    return 0, iso_plain(iso)


def _run_psi(job: JobSpec) -> tuple[int, str]:
    rs = build_root_system(job.algebra)
    if (job.node is None) == (not job.weights):
        raise InputError("psi needs exactly one of --node or --weight")
    if job.node is not None:
        if not 1 <= job.node <= rs.rank:
            raise InputError(f"node {job.node} out of range 1..{rs.rank}")
        psi = psi_i(rs, job.node)
        header = f"psi_{job.node} for {rs.lie_type}"
    else:
        (mu,) = job.weights
        _require_rank(rs, mu)
        psi = psi_of_mu(rs, adjoint_char(rs), mu)
        header = f"psi({list(mu)}) for {rs.lie_type}"
    adj = adjoint_char(rs)
    polytope = check_polytope_condition(psi, adj)
    extra = check_psi_extra(rs, psi, adj)
    if job.format == "json":
        return 0, json.dumps({
            "algebra": str(rs.lie_type),
            "elements": [list(w) for w in sorted(psi.elements)],
            "polytope_condition": polytope,
            "support_conditions": extra,
        }, indent=2)
    lines = [header]
    if psi.elements:
        lines.extend(f"  ({','.join(map(str, w))})" for w in sorted(psi.elements))
    else:
        lines.append("  (empty)")
    lines.append(f"polytope condition: {'satisfied' if polytope else 'violated'}")
    lines.append(f"support conditions: {'satisfied' if extra else 'violated'}")
    return 0, "\n".join(lines)


def _run_verify(job: JobSpec) -> tuple[int, str]:
    results = run_suite(job.suite)
    lines = []
    failed = 0
    for res in results:
        tag = "PASS" if res.ok else "FAIL"
        suffix = f"  ({res.detail})" if res.detail else ""
        lines.append(f"{tag} {res.name}{suffix}")
        failed += not res.ok
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return (1 if failed else 0), "\n".join(lines)


_HANDLERS = {
    "gch": _run_gch,
    "ext": _run_ext,
    "gamma": _run_gamma,
    "tensor": _run_tensor,
    "psi": _run_psi,
    "verify": _run_verify,
}


def run(job: JobSpec) -> tuple[int, str]:
    """Dispatch a validated job; returns (exit code, output text)."""
    cache_path = os.environ.get(ENV_CACHE) or job.cache_path
    if cache_path:
        cache_io.cache_load(cache_path, active_tensor_cache())
    code, text = _HANDLERS[job.command](job)
    if cache_path:
        cache_io.cache_store(cache_path, active_tensor_cache())
    return code, text


# -- argument parsing -----------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krchar",
        description="Exact multigraded characters of generalized "
                    "Kirillov-Reshetikhin modules for classical Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=True):
        p.add_argument("--algebra", required=True, help="algebra label, e.g. D5")
        if formats:
            p.add_argument("--format", choices=FORMATS, default="plain")
        p.add_argument("--cache", dest="cache_path", default=None,
                       help=f"persistent multiplicity cache (or ${ENV_CACHE})")

    p = sub.add_parser("gch", help="graded character of a generalized KR module")
    common(p)
    p.add_argument("--weight", required=True, help="fundamental coordinates, e.g. 0,0,2,0,0")
    p.add_argument("--ell", type=int, default=1, help="number of grading variables")
    p.add_argument("--mode", choices=("fixed-psi", "per-weight-psi"), default="fixed-psi")

    p = sub.add_parser("ext", help="Ext dimension between two graded simples")
    common(p)
    p.add_argument("--from", dest="source", required=True, metavar="W@D",
                   help="source point, e.g. 0,0,2,0,0@0,0")
    p.add_argument("--to", dest="target", required=True, metavar="W@D")
    p.add_argument("--j", type=int, required=True, help="cohomological degree")

    p = sub.add_parser("gamma", help="enumerate the convex up-set above a point")
    common(p)
    p.add_argument("--weight", required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--degree", default=None, help="base multidegree (default all zero)")
    p.add_argument("--node", type=int, default=None,
                   help="psi node override (default: largest non-spin support node)")

    p = sub.add_parser("tensor", help="tensor product decomposition")
    common(p)
    p.add_argument("--weight", action="append", required=True,
                   help="give twice: the two dominant factors")

    p = sub.add_parser("psi", help="psi set of a node or of a dominant weight")
    common(p)
    p.add_argument("--node", type=int, default=None)
    p.add_argument("--weight", default=None)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=("paper", "identities", "all"), default="all")
    p.add_argument("--cache", dest="cache_path", default=None)

    return parser


def _job_from_args(args: argparse.Namespace) -> JobSpec:
    job = JobSpec(command=args.command, cache_path=getattr(args, "cache_path", None))
    if args.command != "verify":
        job.algebra = parse_lie_type(args.algebra)
        job.format = getattr(args, "format", "plain")
    if args.command in ("gch", "gamma"):
        job.weights = [parse_coords(args.weight)]
        job.ell = args.ell
        if job.ell < 1:
            raise InputError(f"ell must be positive, got {job.ell}")
    if args.command == "gch":
        job.mode = args.mode
    if args.command == "gamma":
        job.node = args.node
        if args.degree is not None:
            job.degree = parse_coords(args.degree, "degree")
    if args.command == "ext":
        job.points = [parse_point(args.source), parse_point(args.target)]
        job.j = args.j
        if job.j < 0:
            raise InputError(f"cohomological degree must be nonnegative, got {job.j}")
    if args.command == "tensor":
        if len(args.weight) != 2:
            raise InputError("tensor needs exactly two --weight arguments")
        job.weights = [parse_coords(w) for w in args.weight]
    if args.command == "psi":
        job.node = args.node
        if args.weight is not None:
            job.weights = [parse_coords(args.weight)]
    if args.command == "verify":
        job.suite = args.suite
    return job


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        job = _job_from_args(args)
        code, text = run(job)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
