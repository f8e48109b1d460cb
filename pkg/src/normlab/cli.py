"""
``norm-lab`` command line front end.

    norm-lab estimate    --operator toeplitz:e-1 --p 4 --degree 32
    norm-lab constants   --p 1.5,2,3
    norm-lab sweep       --operator riesz --p 1.5,3,4 --degree 8,16,32 --format csv
    norm-lab fejer-table --p 1.2,4 --degree 16
    norm-lab witness     --p 4 --epsilon 0.01 --candidates cands.json

Exit status: 0 on success, 1 on usage or I/O errors, 2 when a computed lower
bound exceeds its registered upper bound (or a witness fails its checks).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable

import numpy as np

from . import __version__
from .constants import reference_constants
from .estimate import check_p, degree_sweep, estimate_norm
from .operators import (
    OperatorSpec,
    domain_range,
    fejer,
    fejer_kernel,
    id_minus_fejer,
    identity,
    make_symbol,
    restrict,
    riesz,
    toeplitz,
)
from .trig import GridConfig, TrigPoly
from .witness import build_witness

__all__ = ["RunConfig", "UsageError", "parse_config", "parse_operator", "run", "main"]

COMMANDS = ("estimate", "constants", "witness", "sweep", "fejer-table")
GATE_ATOL = 1e-6


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    operator: str = "toeplitz:e-1"
    p: list = field(default_factory=lambda: [4.0])
    degree: list = field(default_factory=lambda: [32])
    restarts: int = 16
    seed: int = 42
    tol: float = 1e-10
    out_format: str = "json"
    out_path: str | None = None
    restrict: int = 0
    epsilon: float = 0.01
    candidates: str | None = None
    n_list: list = field(default_factory=lambda: [0, 1, 2, 3, 4])
    workers: int = 1
    make_operator: Callable | None = field(default=None, repr=False, compare=False)


_E_RE = re.compile(r"^e(-?\d+)$")


def parse_operator(spec: str) -> Callable[[float, int], OperatorSpec]:
    """Map an operator string to a factory ``(p, degree) -> OperatorSpec``.

    Accepted forms: ``identity``, ``riesz``, ``fejer:N``, ``id-minus-fejer:N``,
    ``toeplitz:eM`` (e.g. ``toeplitz:e-1``), ``toeplitz:gk:+`` / ``toeplitz:gk:-``
    and ``toeplitz:cph:N:c0,c1,...`` (coefficients of the analytic factor h,
    Python complex literals allowed).
    """
    parts = spec.strip().split(":")
    head = parts[0]
    try:
        if head == "identity" and len(parts) == 1:
            return lambda p, d: identity(d)
        if head == "riesz" and len(parts) == 1:
            return lambda p, d: riesz(d)
        if head in ("fejer", "id-minus-fejer") and len(parts) == 2:
            n = int(parts[1])
            if n < 0:
                raise UsageError(f"negative Fejer index in {spec!r}")
            make = fejer if head == "fejer" else id_minus_fejer
            return lambda p, d: make(n, d)
        if head == "toeplitz" and len(parts) >= 2:
            m = _E_RE.match(parts[1])
            if m and len(parts) == 2:
                sym = make_symbol("e", int(m.group(1)))
                return lambda p, d: toeplitz(sym, d)
            if parts[1] == "gk" and len(parts) == 3 and parts[2] in ("+", "-"):
                sign = parts[2]
                return lambda p, d: toeplitz(make_symbol("gk", p, sign), d)
            if parts[1] == "cph" and len(parts) == 4:
                n = int(parts[2])
                h = TrigPoly([complex(c.replace(" ", "")) for c in parts[3].split(",")])
                sym = make_symbol("cph", n, h)
                return lambda p, d: toeplitz(sym, d)
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(f"bad operator spec {spec!r}: {exc}") from None
    raise UsageError(f"unknown operator spec {spec!r}")


def _floats(s: str) -> list:
    try:
        return [float(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"not a list of numbers: {s!r}") from None


def _ints(s: str) -> list:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"not a list of integers: {s!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="norm-lab", description="Operator norm bounds on Hardy spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--operator", default="toeplitz:e-1")
        sp.add_argument("--p", default=None, help="exponent or comma-separated list")
        sp.add_argument("--degree", default="32", help="degree or comma-separated list (sweep)")
        sp.add_argument("--restarts", type=int, default=16)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--tol", type=float, default=1e-10)
        sp.add_argument("--format", dest="out_format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", dest="out_path", default=None)
        sp.add_argument("--restrict", type=int, default=0, help="zero the first N coefficients")
        sp.add_argument("--workers", type=int, default=1)
        if name == "witness":
            sp.add_argument("--epsilon", type=float, default=0.01)
            sp.add_argument("--candidates", default=None)
        if name == "fejer-table":
            sp.add_argument("--n", dest="n_list", default="0,1,2,3,4")
    return parser


def parse_config(argv) -> RunConfig:
    """Parse and validate command-line arguments; raises UsageError."""
    ns = _build_parser().parse_args(list(argv))
    default_p = "1.5,2,3" if ns.command == "constants" else "4"
    ps = _floats(ns.p if ns.p is not None else default_p)
    if not ps:
        raise UsageError("--p is empty")
    for p in ps:
        try:
            check_p(p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    degrees = _ints(ns.degree)
    if not degrees or min(degrees) < 1:
        raise UsageError("degree must be at least 1")
    if ns.restarts < 1:
        raise UsageError("restarts must be at least 1")
    if ns.tol <= 0:
        raise UsageError("tol must be positive")
    if ns.workers < 1:
        raise UsageError("workers must be at least 1")
    if ns.restrict < 0 or ns.restrict > min(degrees):
        raise UsageError("--restrict must lie in [0, degree]")
    cfg = RunConfig(
        command=ns.command,
        operator=ns.operator,
        p=ps,
        degree=degrees,
        restarts=ns.restarts,
        seed=ns.seed,
        tol=ns.tol,
        out_format=ns.out_format,
        out_path=ns.out_path,
        restrict=ns.restrict,
        workers=ns.workers,
    )
    if ns.command == "witness":
        if ns.epsilon is None or ns.epsilon < 0:
            raise UsageError("--epsilon must be nonnegative")
        if len(ps) != 1:
            raise UsageError("witness takes a single --p")
        if ns.operator not in ("toeplitz:e-1",):
            raise UsageError("witness is defined for toeplitz:e-1 only")
        cfg.epsilon, cfg.candidates = ns.epsilon, ns.candidates
    if ns.command == "fejer-table":
        cfg.n_list = _ints(ns.n_list)
        if not cfg.n_list or min(cfg.n_list) < 0:
            raise UsageError("--n must list nonnegative integers")
    if ns.command in ("estimate", "sweep", "witness"):
        cfg.make_operator = parse_operator(ns.operator)
        if cfg.restrict and ns.operator == "riesz":
            raise UsageError("--restrict applies to analytic domains only")
    return cfg


# ---------------------------------------------------------------------------


def _coeff_pairs(f: TrigPoly, lo: int, hi: int) -> list:
    return [[float(c.real), float(c.imag)] for c in f.dense(lo, hi)]


def _provenance(cfg: RunConfig) -> dict:
    return {
        "command": cfg.command,
        "version": __version__,
        "restarts": cfg.restarts,
        "seed": cfg.seed,
        "tol": cfg.tol,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _operator(cfg: RunConfig, p: float, d: int) -> OperatorSpec:
    A = cfg.make_operator(p, d)
    return restrict(A, cfg.restrict) if cfg.restrict else A


def _estimate_record(cfg: RunConfig, A: OperatorSpec, est) -> dict:
    lo, hi = domain_range(A)
    rec = _provenance(cfg)
    rec.update(
        operator=cfg.operator,
        p=est.p,
        degree=est.degree,
        restrict=cfg.restrict,
        value=est.value,
        upper_bound=est.upper_bound,
        bound_source=est.bound_source,
        maximizer=_coeff_pairs(est.maximizer, lo, hi),
        maximizer_offset=lo,
        converged=est.converged,
        iterations=est.iterations,
    )
    return rec


def _gate(value: float, upper: float) -> bool:
    return value <= upper + GATE_ATOL


def _run_estimate(cfg):
    d = cfg.degree[0]
    records, ok = [], True
    for p in cfg.p:
        A = _operator(cfg, p, d)
        est = estimate_norm(A, p, restarts=cfg.restarts, seed=cfg.seed, tol=cfg.tol, workers=cfg.workers)
        records.append(_estimate_record(cfg, A, est))
        ok &= _gate(est.value, est.upper_bound)
    if cfg.out_format == "csv":
        rows = [
            {k: r[k] for k in ("p", "degree", "value", "upper_bound", "bound_source")} for r in records
        ]
        for r in rows:
            r["lower_bound"] = r.pop("value")
        return _csv(rows, ["p", "degree", "lower_bound", "upper_bound", "bound_source"]), ok
    payload = records[0] if len(records) == 1 else {**_provenance(cfg), "results": records}
    return _json(payload), ok


def _run_constants(cfg):
    rows = [reference_constants(p).as_dict() for p in cfg.p]
    if cfg.out_format == "csv":
        return _csv(rows, ["p", "p_conj", "riesz", "two_power", "c_p"]), True
    return _json({**_provenance(cfg), "rows": rows}), True


def _run_sweep(cfg):
    def cell(p):
        A = _operator(cfg, p, min(cfg.degree))
        ests = degree_sweep(A, p, cfg.degree, restarts=cfg.restarts, seed=cfg.seed, tol=cfg.tol)
        return [(p, e) for e in ests]

    with ThreadPoolExecutor(cfg.workers) as ex:
        cells = [row for rows in ex.map(cell, cfg.p) for row in rows]
    cells.sort(key=lambda pe: (pe[0], pe[1].degree))
    rows = [
        {
            "p": p,
            "degree": e.degree,
            "lower_bound": e.value,
            "upper_bound": e.upper_bound,
            "bound_source": e.bound_source,
        }
        for p, e in cells
    ]
    ok = all(_gate(r["lower_bound"], r["upper_bound"]) for r in rows)
    if cfg.out_format == "csv":
        return _csv(rows, ["p", "degree", "lower_bound", "upper_bound", "bound_source"]), ok
    return _json({**_provenance(cfg), "operator": cfg.operator, "rows": rows}), ok


def _run_fejer_table(cfg):
    d = cfg.degree[0]
    rows = []
    for p in cfg.p:
        for n in cfg.n_list:
            est = estimate_norm(id_minus_fejer(n, d), p, restarts=cfg.restarts, seed=cfg.seed, tol=cfg.tol)
            kern = fejer_kernel(n, GridConfig(max(64, 8 * (n + 1))))
            rows.append(
                {
                    "p": p,
                    "n": n,
                    "degree": d,
                    "lower_bound": est.value,
                    "upper_bound": est.upper_bound,
                    "bound_source": est.bound_source,
                    "kernel_mass": float(2 * math.pi * kern.mean()),
                    "kernel_min": float(kern.min()),
                }
            )
    rows.sort(key=lambda r: (r["p"], r["n"]))
    ok = all(_gate(r["lower_bound"], r["upper_bound"]) for r in rows)
    cols = ["p", "n", "degree", "lower_bound", "upper_bound", "bound_source", "kernel_mass", "kernel_min"]
    if cfg.out_format == "csv":
        return _csv(rows, cols), ok
    return _json({**_provenance(cfg), "rows": rows}), ok


def load_candidates(path: str) -> list:
    """JSON array of polynomials, each an array of [re, im] pairs for indices 0..n."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise UsageError("candidate file must hold a JSON array")
    out = []
    for poly in data:
        try:
            c = np.array([complex(float(re), float(im)) for re, im in poly])
        except (TypeError, ValueError):
            raise UsageError("each candidate must be an array of [re, im] pairs") from None
        out.append(TrigPoly(c, 0))
    return out


def _run_witness(cfg):
    p, d = cfg.p[0], cfg.degree[0]
    cands = load_candidates(cfg.candidates) if cfg.candidates else []
    A = _operator(cfg, p, d)
    est = estimate_norm(A, p, restarts=cfg.restarts, seed=cfg.seed, tol=cfg.tol, workers=cfg.workers)
    rep = build_witness(p, cfg.epsilon, cands, est)
    ok = rep.certificate_ok and rep.distances_ok() and _gate(est.value, est.upper_bound)
    rec = _provenance(cfg)
    rec.update(
        operator=cfg.operator,
        p=p,
        degree=d,
        epsilon=cfg.epsilon,
        value=est.value,
        upper_bound=est.upper_bound,
        bound_source=est.bound_source,
        N=rep.N,
        floor=rep.floor,
        distances=[float(x) for x in rep.distances],
        certificate_ok=rep.certificate_ok,
        q=_coeff_pairs(rep.q, 0, d),
    )
    if cfg.out_format == "csv":
        rows = [{"candidate": j, "distance": x, "floor": rep.floor} for j, x in enumerate(rep.distances)]
        return _csv(rows, ["candidate", "distance", "floor"]), ok
    return _json(rec), ok


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(rows, cols) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


_RUNNERS = {
    "estimate": _run_estimate,
    "constants": _run_constants,
    "sweep": _run_sweep,
    "fejer-table": _run_fejer_table,
    "witness": _run_witness,
}


def run(cfg: RunConfig) -> int:
    """Execute ``cfg`` and write its report; returns the exit status."""
    try:
        text, ok = _RUNNERS[cfg.command](cfg)
    except (UsageError, OSError) as exc:
        print(f"norm-lab: {exc}", file=sys.stderr)
        return 1
    try:
        if cfg.out_path:
            with open(cfg.out_path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"norm-lab: cannot write report: {exc}", file=sys.stderr)
        return 1
    if not ok:
        print("norm-lab: consistency gate violated", file=sys.stderr)
        return 2
    return 0


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"norm-lab: usage error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
