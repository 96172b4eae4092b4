"""``relfd`` command line: ``eval``, ``sweep`` and ``table``.

Exit codes: 0 success, 2 usage or domain error, 3 convergence failure, 4 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .config import Config, load_config, using_config
from .core import FdParams, Method, QClass
from .errors import ConvergenceError, RelFDError, UsageError
from .oracle import quad_fd_rel
from .relativistic import fd_rel_eval
from .tables import TABLES, relative_error, reproduce

SWEEP_HEADER = ["q", "eta", "beta", "method", "value", "reference", "rel_error", "terms_used", "err_est"]
NO_EXP_SMALL = ":no-exp-small"


def _fmt(x: float | None) -> str:
    return "degenerate" if x is None else repr(float(x))


@dataclass(frozen=True)
class MethodChoice:
    """A method tag plus the exponentially-small toggle, as written on the command line."""

    label: str
    method: Method
    family: str | None
    exp_small: bool

    @classmethod
    def parse(cls, text: str) -> "MethodChoice":
        label = text.strip()
        base = label
        exp_small = True
        if base.endswith(NO_EXP_SMALL):
            base, exp_small = base[: -len(NO_EXP_SMALL)], False
        family = base if base in ("large-eta", "large-beta") else None
        try:
            method = Method.parse(base)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
        return cls(label, method, family, exp_small)

    def resolve(self, q: float) -> Method:
        if self.family is None:
            return self.method
        half = FdParams(q, 0.0, 0.0).qclass is QClass.HALF_INTEGER
        if self.family == "large-eta":
            return Method.LARGE_ETA_HALFINT if half else Method.LARGE_ETA_GENERIC
        return Method.LARGE_BETA_HALFINT if half else Method.LARGE_BETA_GENERIC


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    start: float
    stop: float
    count: int
    fixed: dict[str, float]
    methods: tuple[MethodChoice, ...]
    oracle_tol: float

    def __post_init__(self) -> None:
        if self.axis not in ("eta", "beta"):
            raise UsageError(f"axis must be eta or beta, got {self.axis!r}")
        if self.count < 2:
            raise UsageError(f"count must be >= 2, got {self.count}")
        if not self.start < self.stop:
            raise UsageError(f"need start < stop, got {self.start} >= {self.stop}")
        if not self.methods:
            raise UsageError("at least one method is required")

    def grid(self) -> list[float]:
        step = (self.stop - self.start) / (self.count - 1)
        pts = [self.start + i * step for i in range(self.count - 1)]
        return pts + [self.stop]

    def points(self) -> list[FdParams]:
        out = []
        for v in self.grid():
            vals = dict(self.fixed, **{self.axis: v})
            out.append(FdParams(vals["q"], vals["eta"], vals["beta"]))
        return out


def _eval_kwargs(args, choice: MethodChoice) -> dict:
    return {"n_terms": args.nterms, "k_max": args.kmax, "tol": args.tol,
            "include_exp_small": choice.exp_small and not args.no_exp_small}


def cmd_eval(args, cfg: Config, out) -> int:
    p = FdParams(args.q, args.eta, args.beta)
    choice = args.method
    r = fd_rel_eval(p, choice.resolve(p.q), cfg, **_eval_kwargs(args, choice))
    rec = {"q": repr(p.q), "eta": repr(p.eta), "beta": repr(p.beta), "method": r.method.value,
           "value": repr(r.value), "err_est": repr(r.err_est), "terms_used": str(r.terms_used)}
    if not args.no_reference:
        ref = quad_fd_rel(p, cfg.oracle_tol).value
        rec["reference"] = repr(ref)
        rec["rel_error"] = _fmt(relative_error(r.value, ref))
    if args.record:
        out.write(" ".join(f"{k}={v}" for k, v in rec.items()) + "\n")
    else:
        width = max(len(k) for k in rec)
        for k, v in rec.items():
            out.write(f"{k:<{width}}  {v}\n")
    return 0


def _sweep_row(args, cfg: Config, oracle_tol: float, p: FdParams) -> list[list[str]]:
    with using_config(cfg):
        ref = quad_fd_rel(p, oracle_tol).value
        rows = []
        for choice in args.methods:
            r = fd_rel_eval(p, choice.resolve(p.q), cfg, **_eval_kwargs(args, choice))
            rows.append([repr(p.q), repr(p.eta), repr(p.beta), choice.label, repr(r.value), repr(ref),
                         _fmt(relative_error(r.value, ref)), str(r.terms_used), repr(r.err_est)])
        return rows


def cmd_sweep(args, cfg: Config, out) -> int:
    fixed = {"q": args.q}
    other = "beta" if args.axis == "eta" else "eta"
    value = getattr(args, other)
    if value is None:
        raise UsageError(f"--{other} is required when sweeping {args.axis}")
    fixed[other] = value
    oracle_tol = args.oracle_tol if args.oracle_tol is not None else cfg.oracle_tol
    spec = SweepSpec(args.axis, args.start, args.stop, args.count, fixed,
                     tuple(args.methods), oracle_tol)
    points = spec.points()
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(lambda p: _sweep_row(args, cfg, oracle_tol, p), points))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for rows in results:
        w.writerows(rows)
    out.write(buf.getvalue())
    return 0


def cmd_table(args, cfg: Config, out) -> int:
    spec = TABLES[args.name]
    oracle_tol = args.oracle_tol if args.oracle_tol is not None else 1e-14
    entries = reproduce(args.name, oracle_tol)
    by_key = {(e.k, e.beta): e for e in entries}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["k"]
    for b in spec.betas:
        tag = f"beta={b:g}"
        header += [f"measured {tag}", f"published {tag}"]
    w.writerow(header)
    for k in sorted({e.k for e in entries}):
        row = [str(k)]
        for b in spec.betas:
            e = by_key[(k, b)]
            row += ["degenerate" if e.degenerate else f"{e.measured:.2e}", e.published]
        w.writerow(row)
    out.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="config file path or bundled preset name (e.g. benchmark-grid)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--oracle-tol", type=float, help="tolerance of the quadrature reference")

    method_opts = argparse.ArgumentParser(add_help=False)
    method_opts.add_argument("--tol", type=float, help="series tolerance (negative-eta series, quadrature)")
    method_opts.add_argument("--nterms", type=int, help="highest index kept by large-eta / small-beta sums")
    method_opts.add_argument("--kmax", type=int, help="highest index kept by large-beta sums")
    method_opts.add_argument("--no-exp-small", action="store_true",
                             help="drop the exponentially small large-eta terms")

    parser = argparse.ArgumentParser(prog="relfd", description="Relativistic Fermi-Dirac integrals.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common, method_opts], help="evaluate one point")
    ev.add_argument("--q", type=float, required=True)
    ev.add_argument("--eta", type=float, required=True)
    ev.add_argument("--beta", type=float, required=True)
    ev.add_argument("--method", type=MethodChoice.parse, default=MethodChoice.parse("auto"))
    ev.add_argument("--record", action="store_true", help="print a single key=value line")
    ev.add_argument("--no-reference", action="store_true", help="skip the quadrature reference")

    sw = sub.add_parser("sweep", parents=[common, method_opts], help="sweep eta or beta, write CSV")
    sw.add_argument("--axis", choices=("eta", "beta"), required=True)
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--count", type=int, required=True)
    sw.add_argument("--q", type=float, required=True)
    sw.add_argument("--eta", type=float)
    sw.add_argument("--beta", type=float)
    sw.add_argument("--method", dest="methods", type=MethodChoice.parse, action="append",
                    help="method tag, repeatable; append ':no-exp-small' for the truncated large-eta variant")
    sw.add_argument("--jobs", type=int, default=1, help="worker threads")

    tb = sub.add_parser("table", parents=[common], help="reproduce a large-beta error table")
    tb.add_argument("name", choices=sorted(TABLES))
    return parser


_COMMANDS = {"eval": cmd_eval, "sweep": cmd_sweep, "table": cmd_table}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep" and not args.methods:
        args.methods = [MethodChoice.parse("auto")]
    try:
        cfg = load_config(args.config) if args.config else Config()
    except OSError as exc:
        print(f"relfd: cannot read config: {exc}", file=sys.stderr)
        return 4
    except RelFDError as exc:
        print(f"relfd: {exc}", file=sys.stderr)
        return 2
    buf = io.StringIO()
    try:
        with using_config(cfg):
            code = _COMMANDS[args.command](args, cfg, buf)
    except ConvergenceError as exc:
        print(f"relfd: convergence failure: {exc}", file=sys.stderr)
        return 3
    except (RelFDError, ValueError) as exc:
        print(f"relfd: {exc}", file=sys.stderr)
        return 2
    try:
        if args.out:
            with open(args.out, "w", newline="") as fh:
                fh.write(buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
    except OSError as exc:
        print(f"relfd: cannot write output: {exc}", file=sys.stderr)
        return 4
    return code
