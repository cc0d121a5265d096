"""Command-line front end: grid evaluation, cross-method reports, Laplace-domain
checks, the identity suite and the planar transform.

Exit codes: 0 success, 1 usage or domain error, 2 tolerance breach.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import KernelError
from .kernel_core import DeformParams, PairGeometry, series_grid
from .laplace_domain import laplace_kernel_general, laplace_kernel_m2
from .methods import KernelMethod, kernel_grid
from .oracles import numeric_laplace_forward_with_error, run_identities
from .quadrature import QuadratureSpec
from .specfun import SeriesPolicy
from .transform_op import apply_transform_2d

EXIT_OK, EXIT_USAGE, EXIT_BREACH = 0, 1, 2
COMMANDS = ("eval", "compare", "laplace", "identities", "transform")
CSV_COLUMNS = ("z", "w", "scalar_re", "scalar_im", "bivector_re", "bivector_im")
_CHUNK = 32


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class GridRange:
    """Inclusive range ``start:stop:step``."""

    start: float
    stop: float
    step: float

    @classmethod
    def parse(cls, text: str) -> "GridRange":
        parts = text.split(":")
        try:
            if len(parts) == 1:
                v = float(parts[0])
                return cls(v, v, 1.0)
            start, stop, step = (float(p) for p in parts)
        except ValueError as exc:
            raise UsageError(f"bad range {text!r}; expected start:stop:step") from exc
        if step <= 0 or stop < start:
            raise UsageError(f"bad range {text!r}; need step > 0 and stop >= start")
        return cls(start, stop, step)

    def values(self) -> np.ndarray:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return np.round(self.start + self.step * np.arange(count), 12)

    def __str__(self) -> str:
        return f"{self.start:g}:{self.stop:g}:{self.step:g}"


@dataclass(frozen=True)
class NumericPolicy:
    tol: float = 1e-6
    quad_nodes: int = 24
    quad_tol: float = 1e-10
    max_terms: int = 2000
    tail_tol: float = 1e-16

    def quadrature(self) -> QuadratureSpec:
        return QuadratureSpec(base_nodes=self.quad_nodes, tol=self.quad_tol)

    def series(self) -> SeriesPolicy:
        return SeriesPolicy(max_terms=self.max_terms, tail_tol=self.tail_tol)


@dataclass(frozen=True)
class RunConfig:
    command: str
    m: int = 2
    n: int = 3
    z_grid: GridRange = GridRange(0.5, 8.0, 0.5)
    w_grid: GridRange = GridRange(-0.95, 0.95, 0.1)
    t: float = 1.0
    methods: tuple[str, ...] = ("series",)
    tolerances: NumericPolicy = field(default_factory=NumericPolicy)
    output_path: str | None = None
    format: str = "csv"
    classical: bool = False
    seed: int = 0
    random_points: int = 0
    s_offsets: tuple[float, ...] = (1.0, 2.0, 3.0, 5.0, 8.0)
    gaussian_scale: float = 0.5
    y_points: tuple[tuple[float, float], ...] = ((0.0, 0.0), (1.0, 0.0), (0.5, 1.0))
    timings: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise UsageError("format must be csv or json")
        if self.n < 3 and not self.classical:
            raise UsageError("n must be odd and >= 3 unless --classical is given")
        for name in self.methods:
            try:
                KernelMethod(name)
            except ValueError as exc:
                raise UsageError(f"unknown method {name!r}; choose from "
                                 f"{', '.join(m.value for m in KernelMethod)}") from exc
        if self.z_grid.values().size == 0 or self.w_grid.values().size == 0:
            raise UsageError("grids must be non-empty")
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError("seed must be a 64-bit unsigned integer")

    def params(self) -> DeformParams:
        return DeformParams(self.m, self.n)

    def to_json(self) -> dict:
        d = asdict(self)
        d["z_grid"], d["w_grid"] = str(self.z_grid), str(self.w_grid)
        d.pop("timings")
        return d


# ------------------------------------------------------------------ helpers

def _threads() -> int:
    try:
        return max(1, int(os.environ.get("KERNEL_THREADS", "1")))
    except ValueError as exc:
        raise UsageError("KERNEL_THREADS must be an integer") from exc


def _points(config: RunConfig) -> tuple[np.ndarray, np.ndarray]:
    z, w = np.meshgrid(config.z_grid.values(), config.w_grid.values(), indexing="ij")
    z, w = z.ravel(), w.ravel()
    if config.random_points:
        rng = np.random.default_rng(config.seed)
        zr = rng.uniform(config.z_grid.start, config.z_grid.stop, config.random_points)
        wr = rng.uniform(max(config.w_grid.start, -1), min(config.w_grid.stop, 1), config.random_points)
        z, w = np.concatenate([z, zr]), np.concatenate([w, wr])
    return z, w


def _evaluate(params, method, z, w, t, policy: NumericPolicy):
    """Kernel on a flat list of points, split across KERNEL_THREADS workers in point order."""
    quad = policy.quadrature()

    def work(chunk):
        zc, wc = z[chunk], w[chunk]
        if method == "series" or t != 1.0:
            if method != "series":
                raise UsageError("t != 1 is supported by the series method only")
            s, b, e, _ = series_grid(params, zc, wc, t, policy.series())
            return s, b, e
        return kernel_grid(params, method, zc, wc, quad)

    threads = _threads()
    # chunking is independent of the thread count: truncation depth is chosen per chunk
    chunks = [np.arange(i, min(i + _CHUNK, z.size)) for i in range(0, z.size, _CHUNK)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(work, chunks))
    return tuple(np.concatenate([p[i] for p in parts]) for i in range(3))


def _write(config: RunConfig, text: str):
    if config.output_path:
        with open(config.output_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ------------------------------------------------------------------ commands

def _cmd_eval(config: RunConfig) -> int:
    z, w = _points(config)
    s, b, e = _evaluate(config.params(), config.methods[0], z, w, config.t, config.tolerances)
    if config.format == "csv":
        rows = zip(z, w, s.real, s.imag, b.real, b.imag)
        _write(config, _csv(CSV_COLUMNS, rows))
    else:
        points = [dict(zip(CSV_COLUMNS + ("error",), map(float, row)))
                  for row in zip(z, w, s.real, s.imag, b.real, b.imag, e)]
        _write(config, _json({"config": config.to_json(), "points": points}))
    return EXIT_OK


def _cmd_compare(config: RunConfig) -> int:
    if len(config.methods) < 2:
        raise UsageError("compare needs at least two methods")
    params = config.params()
    z, w = _points(config)
    values, per_method = {}, {}
    for method in config.methods:
        start = time.perf_counter()
        values[method] = _evaluate(params, method, z, w, 1.0, config.tolerances)
        entry = {"points": int(z.size), "max_error_estimate": float(np.max(values[method][2]))}
        if config.timings:
            entry["seconds"] = time.perf_counter() - start
        per_method[method] = entry
    comparisons, status = [], EXIT_OK
    for a, b in itertools.combinations(config.methods, 2):
        diff = np.maximum(np.abs(values[a][0] - values[b][0]), np.abs(values[a][1] - values[b][1]))
        i = int(np.argmax(diff))
        ok = bool(diff[i] <= config.tolerances.tol)
        comparisons.append({"methods": [a, b], "max_err": float(diff[i]),
                            "argmax_point": {"z": float(z[i]), "w": float(w[i])}, "pass": ok})
        if not ok:
            status = EXIT_BREACH
            print(f"tolerance breach [cross-method agreement]: {a} vs {b} differ by {diff[i]:.3e} "
                  f"> {config.tolerances.tol:g} at z={z[i]:g}, w={w[i]:g}", file=sys.stderr)
    report = {"config": config.to_json(), "per_method": per_method, "comparisons": comparisons,
              "identities": []}
    _write(config, _json(report))
    return status


def _cmd_laplace(config: RunConfig) -> int:
    """Rational Laplace-domain kernel against the forward transform of the series."""
    params = config.params()
    z, w = _points(config)
    quad = config.tolerances.quadrature()
    rows, worst, worst_at = [], 0.0, None
    for zi, wi in zip(z, w):
        g = PairGeometry(float(zi), float(wi))
        for off in config.s_offsets:
            s = zi + off
            exact = laplace_kernel_m2(params, g, s) if params.m == 2 else laplace_kernel_general(params, g, s)
            num = [numeric_laplace_forward_with_error(
                lambda tt, c=c: series_grid(params, zi, wi, tt, config.tolerances.series())[c], s, quad).value
                for c in (0, 1)]
            diff = max(abs(num[0] - exact.scalar), abs(num[1] - exact.bivector))
            if diff > worst:
                worst, worst_at = diff, (float(zi), float(wi), float(s))
            rows.append((zi, wi, s, exact.scalar.real, exact.scalar.imag, exact.bivector.real,
                         exact.bivector.imag, diff))
    header = ("z", "w", "s", "scalar_re", "scalar_im", "bivector_re", "bivector_im", "forward_residual")
    if config.format == "csv":
        _write(config, _csv(header, rows))
    else:
        _write(config, _json({"config": config.to_json(), "max_err": worst, "argmax_point": worst_at,
                              "points": [dict(zip(header, map(float, r))) for r in rows]}))
    if worst > config.tolerances.tol:
        print(f"tolerance breach [forward Laplace consistency]: residual {worst:.3e} at (z, w, s) = {worst_at}",
              file=sys.stderr)
        return EXIT_BREACH
    return EXIT_OK


def _cmd_identities(config: RunConfig) -> int:
    results = run_identities()
    for r in results:
        print(f"{'PASS' if r['pass'] else 'FAIL'}  {r['anchor']:<34} residual={r['residual']:.3e}")
    if config.output_path:
        _write(config, _json({"config": config.to_json(), "per_method": {}, "comparisons": [],
                              "identities": results}))
    failed = [r["anchor"] for r in results if not r["pass"]]
    if failed:
        print(f"identity residuals above tolerance: {', '.join(failed)}", file=sys.stderr)
        return EXIT_BREACH
    return EXIT_OK


def _cmd_transform(config: RunConfig) -> int:
    a = config.gaussian_scale

    def f(x):
        return np.exp(-a * np.sum(x * x, axis=-1))

    def envelope(r):
        return math.exp(-a * r * r)

    quad = QuadratureSpec(base_nodes=config.tolerances.quad_nodes, tol=max(config.tolerances.quad_tol, 1e-12))
    rows = []
    for y in config.y_points:
        res = apply_transform_2d(f, y, config.params(), config.methods[0], quad, envelope)
        rows.append((y[0], y[1], res.scalar.real, res.scalar.imag, res.bivector.real, res.bivector.imag,
                     res.error))
    header = ("y1", "y2", "scalar_re", "scalar_im", "bivector_re", "bivector_im", "error")
    if config.format == "csv":
        _write(config, _csv(header, rows))
    else:
        _write(config, _json({"config": config.to_json(), "points": [dict(zip(header, map(float, r)))
                                                                    for r in rows]}))
    return EXIT_OK


_DISPATCH = {"eval": _cmd_eval, "compare": _cmd_compare, "laplace": _cmd_laplace,
             "identities": _cmd_identities, "transform": _cmd_transform}


def run(config: RunConfig) -> int:
    try:
        return _DISPATCH[config.command](config)
    except (UsageError, KernelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


# ------------------------------------------------------------------ parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _y_points(text: str):
    try:
        return tuple(tuple(float(v) for v in p.split(",")) for p in text.split(";") if p)
    except ValueError as exc:
        raise UsageError(f"bad point list {text!r}; expected 'y1,y2;y1,y2'") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rdfourier", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--m", type=int, default=2)
    common.add_argument("--n", type=int, default=3)
    common.add_argument("--classical", action="store_true", help="allow n = 1 (c = 0)")
    common.add_argument("--z", default="0.5:8:0.5", help="z range start:stop:step")
    common.add_argument("--w", default="-0.95:0.95:0.1", help="w range start:stop:step")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--output", default=None, help="output file (default stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--random-points", type=int, default=0, help="extra seeded random (z, w) points")
    common.add_argument("--tol", type=float, default=1e-6, help="agreement tolerance")
    common.add_argument("--quad-nodes", type=int, default=24)
    common.add_argument("--quad-tol", type=float, default=1e-10)
    common.add_argument("--max-terms", type=int, default=2000)
    common.add_argument("--tail-tol", type=float, default=1e-16)

    p = sub.add_parser("eval", parents=[common], help="kernel values over a (z, w) grid")
    p.add_argument("--method", default="closed_form")
    p.add_argument("--t", type=float, default=1.0)
    p = sub.add_parser("compare", parents=[common], help="pairwise cross-method report")
    p.add_argument("--methods", default="series,closed_form,ml_integral,residues")
    p.add_argument("--timings", action="store_true", help="add wall-clock timings (breaks determinism)")
    p = sub.add_parser("laplace", parents=[common], help="rational forms against the forward transform")
    p.add_argument("--s-offsets", default="1,2,3,5,8", help="Re s - z values")
    sub.add_parser("identities", parents=[common], help="identity residual suite")
    p = sub.add_parser("transform", parents=[common], help="transform of exp(-a|x|^2) at points y")
    p.add_argument("--method", default="series")
    p.add_argument("--scale", type=float, default=0.5, help="Gaussian exponent a")
    p.add_argument("--y", default="0,0;1,0;0.5,1", help="points 'y1,y2;y1,y2'")
    return parser


_RANGE_OPTIONS = ("--z", "--w", "--y")


def _join_negative_values(argv):
    """Attach values such as ``-0.9:0.9:0.1`` to their option, which argparse would read as flags."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in _RANGE_OPTIONS:
            value = next(it, None)
            out.append(tok if value is None else f"{tok}={value}")
        else:
            out.append(tok)
    return out


def config_from_args(argv=None) -> RunConfig:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    default_format = "json" if args.command in ("compare", "identities") else "csv"
    methods = getattr(args, "methods", None) or getattr(args, "method", "series")
    return RunConfig(
        command=args.command, m=args.m, n=args.n, classical=args.classical,
        z_grid=GridRange.parse(args.z), w_grid=GridRange.parse(args.w), t=getattr(args, "t", 1.0),
        methods=tuple(x.strip() for x in methods.split(",") if x.strip()),
        tolerances=NumericPolicy(args.tol, args.quad_nodes, args.quad_tol, args.max_terms, args.tail_tol),
        output_path=args.output, format=args.format or default_format, seed=args.seed,
        random_points=args.random_points,
        s_offsets=tuple(float(v) for v in getattr(args, "s_offsets", "1,2,3,5,8").split(",")),
        gaussian_scale=getattr(args, "scale", 0.5), y_points=_y_points(getattr(args, "y", "0,0;1,0;0.5,1")),
        timings=getattr(args, "timings", False))


def main(argv=None) -> int:
    try:
        config = config_from_args(argv)
    except (UsageError, KernelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
