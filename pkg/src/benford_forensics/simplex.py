"""Nelder-Mead downhill simplex minimiser."""

from dataclasses import dataclass

import numpy as np


@dataclass
class SimplexResult:
    x: np.ndarray
    fun: float
    iterations: int
    converged: bool


def nelder_mead(func, x0, step, ftol=1e-14, max_iter=2000,
                alpha=1.0, gamma=2.0, rho=0.5, sigma=0.5):
    """Minimise ``func`` from ``x0``.

    The initial simplex is ``x0`` plus one vertex per axis displaced by
    ``step[i]``. Iteration stops when the spread of function values over the
    simplex is at most ``ftol``. ``func`` may return ``inf`` for infeasible
    points; such vertices are simply never accepted as improvements.
    """
    x0 = np.asarray(x0, dtype=np.float64)
    n = x0.size
    step = np.broadcast_to(np.asarray(step, dtype=np.float64), (n,))

    pts = np.empty((n + 1, n))
    pts[0] = x0
    for i in range(n):
        pts[i + 1] = x0
        pts[i + 1, i] += step[i]
    vals = np.array([func(p) for p in pts], dtype=np.float64)

    it = 0
    converged = False
    while True:
        order = np.argsort(vals, kind="stable")
        pts, vals = pts[order], vals[order]
        if np.isfinite(vals[-1]) and vals[-1] - vals[0] <= ftol:
            converged = True
            break
        if it >= max_iter:
            break
        it += 1

        centroid = pts[:-1].mean(axis=0)
        xr = centroid + alpha * (centroid - pts[-1])
        fr = func(xr)
        if fr < vals[0]:
            xe = centroid + gamma * (xr - centroid)
            fe = func(xe)
            if fe < fr:
                pts[-1], vals[-1] = xe, fe
            else:
                pts[-1], vals[-1] = xr, fr
            continue
        if fr < vals[-2]:
            pts[-1], vals[-1] = xr, fr
            continue

        if fr < vals[-1]:
            xc = centroid + rho * (xr - centroid)
            fc = func(xc)
            accept = fc <= fr
        else:
            xc = centroid + rho * (pts[-1] - centroid)
            fc = func(xc)
            accept = fc < vals[-1]
        if accept:
            pts[-1], vals[-1] = xc, fc
            continue

        # shrink toward the best vertex
        pts[1:] = pts[0] + sigma * (pts[1:] - pts[0])
        vals[1:] = [func(p) for p in pts[1:]]

    return SimplexResult(pts[0].copy(), float(vals[0]), it, converged)
