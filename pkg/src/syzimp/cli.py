"""Command-line front end.

Each invocation runs one job and prints a result document, either as
versioned ``key: value`` lines or as JSON (``--format structured``).
Exit codes: 0 success, 1 parse error, 2 precondition failure, 3 hypothesis
failure, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import basepoints as bp
from . import implicit, syzygy
from .errors import (
    ContextMismatchError,
    HypothesisFailure,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
    DegreeMismatchError,
    StabilizationError,
)
from .forms import BIHOM, BINARY, TERNARY, Form, dim, parse_form, parse_terms
from .syzygy import SyzygyVector

FORMAT_VERSION = "syzimp-result/1"

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_HYPOTHESIS, EXIT_INTERNAL = 0, 1, 2, 3, 4

COMMANDS = ("curve", "surface-tp", "surface-tri", "surface-tp-1bp", "mu-basis", "koszul",
            "saturation-check", "strong-mu", "numerology", "degree-formula", "dandrea")

_RINGS = {"binary": BINARY, "ternary": TERNARY, "bihom": BIHOM}

_ARITY = {"curve": 3, "mu-basis": 3, "koszul": 3, "surface-tp": 4, "surface-tri": 4,
          "surface-tp-1bp": 4, "strong-mu": 4, "dandrea": 4}

_FIXED_RING = {"curve": BINARY, "mu-basis": BINARY, "surface-tp": BIHOM, "surface-tp-1bp": BIHOM,
               "dandrea": BIHOM, "surface-tri": TERNARY, "strong-mu": TERNARY,
               "saturation-check": TERNARY}


@dataclass
class Job:
    command: str
    generators: list = field(default_factory=list)
    options: dict = field(default_factory=dict)


class UsageError(ParseError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would collide with precondition failures
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _split_list(text: str) -> list[str]:
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(not p for p in parts):
        raise ParseError(f"empty entry in list {text!r}")
    return parts


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in _split_list(text)]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _fmt(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return _fmt(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def render(doc: dict, fmt: str = "text") -> str:
    if fmt == "structured":
        return json.dumps(_jsonable(doc), indent=2)
    return "\n".join(f"{k}: {_fmt(v)}" for k, v in doc.items())


# -- job execution ----------------------------------------------------------------------

def _infer_ring(texts: list[str]) -> object:
    joined = " ".join(texts)
    if "v" in joined:
        return BIHOM
    if "u" in joined:
        return TERNARY
    return BINARY


def _parse_gens(job: Job) -> list[Form]:
    texts = job.generators
    want = _ARITY.get(job.command)
    if want is not None and len(texts) != want:
        raise ParseError(f"{job.command} takes {want} generators, got {len(texts)}")
    ring = job.options.get("ring") or "auto"
    ctx = _FIXED_RING.get(job.command)
    if ring != "auto":
        if ctx is not None and _RINGS[ring] != ctx:
            raise ParseError(f"{job.command} works over the {ctx.kind} ring")
        ctx = _RINGS[ring]
    if ctx is None:
        ctx = _infer_ring(texts)
    deg = job.options.get("degree")
    gens = [parse_form(t, ctx, deg) for t in texts]
    degs = {g.degree for g in gens}
    if len(degs) != 1:
        raise DegreeMismatchError(f"generators have different degrees: {', '.join(_fmt(d) for d in sorted(degs))}")
    return gens


def _matrix_doc(r: implicit.ImplicitResult) -> dict:
    M = r.matrix
    doc = {"F": r.F.render(), "d": r.d, "lambda": r.lam, "det_degree": r.det_poly.degree(),
           "matrix_size": M.size, "linear_rows": M.row_kinds.count("linear"),
           "quadratic_rows": M.row_kinds.count("quadratic")}
    for k in ("mp_kernel_dim", "mq_kernel_dim", "syzygy_dim"):
        if k in r.diagnostics:
            doc[k] = r.diagnostics[k]
    doc["matrix"] = [[e for e in row] for row in M.render()]
    return doc


def _cmd_curve(job, gens):
    r = implicit.implicitize_curve(*gens)
    doc = {"n": gens[0].degree}
    doc.update(_matrix_doc(r))
    doc["checks"] = ["gcd=1", "det=lambda*F^d", "F(a,b,c)=0"]
    return doc


def _cmd_surface(kind):
    def run(job, gens):
        r = implicit.implicitize_surface(kind, *gens, seed=job.options.get("seed", 0))
        doc = {"degree": gens[0].degree,
               "generically_one_to_one": "asserted" if job.options.get("one_to_one") else "not asserted"}
        doc.update(_matrix_doc(r))
        return doc
    return run


def _cmd_mu_basis(job, gens):
    mb = syzygy.mu_basis(*gens)
    return {"n": mb.n, "mu": mb.mu, "p": [c.render() for c in mb.p.components],
            "q": [c.render() for c in mb.q.components]}


def _cmd_koszul(job, gens):
    text = job.options.get("syzygy")
    if not text:
        raise ParseError("koszul needs --syzygy")
    parts = _split_list(text)
    if len(parts) != 3:
        raise ParseError(f"--syzygy needs 3 components, got {len(parts)}")
    ctx = gens[0].ctx
    # a bare "0" component takes its degree from the others
    nonzero = [parse_form(p, ctx) for p in parts if parse_terms(p, ctx.variables)]
    degs = {c.degree for c in nonzero}
    if len(degs) > 1:
        raise DegreeMismatchError("syzygy components have different degrees")
    if not degs:
        raise ParseError("cannot infer the syzygy degree: every component is zero")
    deg = degs.pop()
    comps = [parse_form(p, ctx, deg) for p in parts]
    total = comps[0] * gens[0] + comps[1] * gens[1] + comps[2] * gens[2]
    if not total.is_zero():
        raise PreconditionError("syzygy identity A*a + B*b + C*c = 0 fails")
    syz = SyzygyVector(tuple(comps), tuple(gens))
    w = syzygy.koszul_witness(gens, syz)
    doc = {"syzygy_identity": True, "koszul": w is not None}
    if w is not None:
        doc["witness"] = [w.h1.render(), w.h2.render(), w.h3.render()]
    if ctx == TERNARY:
        cap = job.options.get("cap")
        doc["vanishes_at_basepoints"] = all(syzygy.vanishes_at_basepoints(gens, c, cap) for c in comps)
    else:
        doc["vanishes_at_basepoints"] = "not computed"
    return doc


def _cmd_saturation(job, gens):
    dmax = job.options.get("max_degree")
    if dmax is None:
        dmax = 2 * gens[0].degree
    cap = job.options.get("cap")
    hil, sat = [], []
    for d in range(dmax + 1):
        h = syzygy.hilbert_dim(gens, d)
        hil.append(h)
        i_dim = dim(TERNARY, d) - h
        sat.append(i_dim if i_dim == dim(TERNARY, d) else len(syzygy.saturation_piece(gens, d, cap)))
    ideal = [dim(TERNARY, d) - h for d, h in enumerate(hil)]
    return {"max_degree": dmax, "hilbert": hil, "ideal_dims": ideal, "saturation_dims": sat,
            "saturated": ideal == sat}


def _cmd_strong_mu(job, gens):
    smb = bp.strong_mu_basis(*gens, seed=job.options.get("seed", 0))
    if smb is None:
        return {"strong_mu_basis": False}
    num = bp.strong_mu_numerology(smb.mu) if min(smb.mu) >= 1 else None
    doc = {"strong_mu_basis": True, "mu": list(smb.mu),
           "hilbert_burch": bp.hilbert_burch_check(smb, *gens),
           "generators": [[c.render() for c in v.components] for v in smb.generators]}
    if num is not None:
        doc.update(surface_degree=num.degree, basepoint_multiplicity_sum=num.basepoints)
    return doc


def _cmd_numerology(job, gens):
    text = job.options.get("mu")
    if not text:
        raise ParseError("numerology needs --mu")
    mu = _int_list(text)
    if len(mu) != 3:
        raise ParseError("--mu takes three integers")
    try:
        num = bp.strong_mu_numerology(mu)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    return {"mu": mu, "n": num.n, "degree": num.degree, "basepoints": num.basepoints,
            "lots_of_basepoints": num.bound_holds}


def _cmd_degree_formula(job, gens):
    n = job.options.get("degree")
    if not isinstance(n, int):
        raise ParseError("degree-formula needs an integer --degree")
    mults = _int_list(job.options["multiplicities"]) if job.options.get("multiplicities") else []
    try:
        data = bp.BasepointData(mults, n, job.options.get("deg_phi") or 1)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    return {"n": n, "deg_phi": data.deg_phi, "multiplicities": list(data.multiplicities),
            "surface_degree": bp.degree_formula(data)}


def _cmd_dandrea(job, gens):
    r = implicit.dandrea_ratio(*gens, seed=job.options.get("seed", 0))
    return {"det_mp": r.det_mp, "det_mq_prime": r.det_mq_prime, "ratio": r.ratio,
            "resultant_vanishes": r.ratio == 0, "attempts": r.attempts}


_HANDLERS = {
    "curve": _cmd_curve,
    "surface-tp": _cmd_surface("tp"),
    "surface-tri": _cmd_surface("tri"),
    "surface-tp-1bp": _cmd_surface("tp1bp"),
    "mu-basis": _cmd_mu_basis,
    "koszul": _cmd_koszul,
    "saturation-check": _cmd_saturation,
    "strong-mu": _cmd_strong_mu,
    "numerology": _cmd_numerology,
    "degree-formula": _cmd_degree_formula,
    "dandrea": _cmd_dandrea,
}

_NO_GENS = ("numerology", "degree-formula")


def run(job: Job) -> tuple[dict, int]:
    """Execute ``job``; returns the result document and its exit code."""
    head = {"format": FORMAT_VERSION, "command": job.command}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            if job.command not in _HANDLERS:
                raise ParseError(f"unknown command {job.command!r}")
            gens = [] if job.command in _NO_GENS else _parse_gens(job)
            doc, code = {**head, "status": "ok", **_HANDLERS[job.command](job, gens)}, EXIT_OK
        except (ParseError, ContextMismatchError) as exc:
            doc, code = _failure(head, "parse-error", exc), EXIT_PARSE
        except PreconditionError as exc:
            doc, code = _failure(head, "precondition-failed", exc), EXIT_PRECONDITION
        except (HypothesisFailure, StabilizationError) as exc:
            doc, code = _failure(head, "hypothesis-failed", exc), EXIT_HYPOTHESIS
        except InternalConsistencyError as exc:
            doc, code = _failure(head, "internal-error", exc), EXIT_INTERNAL
    msgs = sorted({str(w.message) for w in caught})
    if msgs:
        doc["warnings"] = msgs
    return doc, code


def _failure(head: dict, status: str, exc: Exception) -> dict:
    return {**head, "status": status, "error": str(exc)}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="syzimp", description="Implicitization of rational curves and surfaces via syzygies.")
    parser.add_argument("--jobs", metavar="FILE", help="batch mode: one job command line per line of FILE")
    parser.add_argument("--workers", type=int, default=1, help="parallel workers in batch mode")
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)
        p.add_argument("--seed", type=int, default=0, help="seed for probabilistic checks")
        if name not in _NO_GENS:
            p.add_argument("--gens", required=True, help="comma-separated generator polynomials")
        if name in ("surface-tp", "surface-tp-1bp", "dandrea"):
            p.add_argument("--bidegree", help="expected bidegree m,n")
        elif name != "numerology":
            p.add_argument("--degree", type=int, help="expected degree")
        if name.startswith("surface"):
            p.add_argument("--assert-generically-one-to-one", action="store_true", dest="one_to_one")
        if name == "koszul":
            p.add_argument("--syzygy", required=True, help="comma-separated components A,B,C")
            p.add_argument("--ring", choices=("auto", "binary", "ternary", "bihom"), default="auto")
        if name in ("koszul", "saturation-check"):
            p.add_argument("--cap", type=int, help="largest power of the irrelevant ideal tried")
        if name == "saturation-check":
            p.add_argument("--max-degree", type=int, dest="max_degree")
        if name == "numerology":
            p.add_argument("--mu", required=True, help="mu1,mu2,mu3")
        if name == "degree-formula":
            p.add_argument("--multiplicities", default="", help="comma-separated basepoint multiplicities")
            p.add_argument("--deg-phi", type=int, default=1, dest="deg_phi")
    return parser


def job_from_args(ns: argparse.Namespace) -> Job:
    opts = {k: v for k, v in vars(ns).items()
            if k not in ("command", "gens", "jobs", "workers", "format", "bidegree") and v is not None}
    if getattr(ns, "bidegree", None):
        bideg = _int_list(ns.bidegree)
        if len(bideg) != 2:
            raise ParseError("--bidegree takes m,n")
        opts["degree"] = tuple(bideg)
    gens = _split_list(ns.gens) if getattr(ns, "gens", None) else []
    return Job(ns.command, gens, opts)


def run_argv(argv: list[str]) -> tuple[dict, int, str]:
    """Parse one job command line and run it; returns (document, exit code, format)."""
    fmt = "text"
    try:
        ns = build_parser().parse_args(argv)
        fmt = ns.format
        if ns.command is None:
            raise UsageError("syzimp: a command is required")
        job = job_from_args(ns)
    except ParseError as exc:
        return {"format": FORMAT_VERSION, "command": argv[0] if argv else "", "status": "parse-error",
                "error": str(exc)}, EXIT_PARSE, fmt
    doc, code = run(job)
    return doc, code, fmt


def _run_line(line: str) -> tuple[dict, int, str]:
    return run_argv(shlex.split(line))


def run_batch(path: str, workers: int = 1) -> list[tuple[dict, int, str]]:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_line, lines))
    return [_run_line(ln) for ln in lines]


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        ns, _ = build_parser().parse_known_args(argv)
    except ParseError:
        ns = None
    if ns is not None and ns.jobs and ns.command is None:
        results = run_batch(ns.jobs, ns.workers)
        if ns.format == "structured":
            print(json.dumps([_jsonable(doc) for doc, _, _ in results], indent=2))
        else:
            print("\n\n".join(render(doc) for doc, _, _ in results))
        return max((code for _, code, _ in results), default=EXIT_OK)
    doc, code, fmt = run_argv(argv)
    print(render(doc, fmt))
    if code:
        print(f"syzimp: {doc['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
