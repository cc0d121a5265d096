"""Max pairwise deviation and timing of the four m = 2 kernel routes on a (z, w) grid."""
from __future__ import annotations

import argparse
import itertools
import time
from dataclasses import dataclass

import numpy as np

from rdfourier import DeformParams, KernelMethod, QuadratureSpec, kernel_grid


@dataclass(frozen=True)
class ReportConfig:
    ns: tuple[int, ...] = (3, 5, 7)
    z_max: float = 8.0
    z_step: float = 0.5
    w_max: float = 0.95
    w_step: float = 0.1
    quad_tol: float = 1e-10


def grid(cfg: ReportConfig):
    z = np.arange(1, round(cfg.z_max / cfg.z_step) + 1) * cfg.z_step
    w = np.round(np.arange(-cfg.w_max, cfg.w_max + 1e-9, cfg.w_step), 12)
    return np.meshgrid(z, w, indexing="ij")


def main(cfg: ReportConfig) -> None:
    z, w = grid(cfg)
    quad = QuadratureSpec(tol=cfg.quad_tol)
    print(f"{z.size} points per n")
    for n in cfg.ns:
        params = DeformParams(2, n)
        values, seconds = {}, {}
        for method in KernelMethod:
            start = time.perf_counter()
            values[method.value] = kernel_grid(params, method, z, w, quad)
            seconds[method.value] = time.perf_counter() - start
        print(f"\nn = {n}")
        for name, sec in seconds.items():
            print(f"  {name:<12} {sec:7.2f} s  max error estimate {np.max(values[name][2]):.2e}")
        for a, b in itertools.combinations(values, 2):
            d = np.maximum(np.abs(values[a][0] - values[b][0]), np.abs(values[a][1] - values[b][1]))
            i = np.unravel_index(np.argmax(d), d.shape)
            print(f"  {a:>12} vs {b:<12} {d[i]:.2e} at z={z[i]:g}, w={w[i]:g}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--quad-tol", type=float, default=1e-10)
    args = ap.parse_args()
    main(ReportConfig(ns=tuple(args.n), quad_tol=args.quad_tol))
