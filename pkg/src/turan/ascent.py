"""Batched exponentiated-gradient ascent on the probability simplex.

Each row of the start matrix is an independent run.  The multiplicative
update ``x_i <- x_i * exp(eta * g_i) / Z`` keeps iterates on the simplex and
never revives a zero coordinate, so a start supported on a face explores
only that face.  A step is accepted when the gain is at least ``ARMIJO``
times the first-order prediction ``<g, y - x>``; step sizes are per run,
doubled after an accepted step and halved after a rejected one.  Values are
strictly increasing per run.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonFiniteError

ValueGrad = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]

ETA_MIN = 1e-14
ETA_MAX = 1e12
SUPPORT_EPS = 1e-300
ARMIJO = 0.1


@dataclass
class AscentResult:
    points: np.ndarray
    values: np.ndarray
    residuals: np.ndarray
    iterations: int


def kkt_residual(X: np.ndarray, G: np.ndarray) -> np.ndarray:
    """Max deviation of the gradient from its x-weighted mean over the support."""
    mean = np.einsum("ij,ij->i", X, G)
    dev = np.abs(G - mean[:, None])
    dev[X <= SUPPORT_EPS] = 0.0
    return dev.max(axis=1) if X.shape[1] else np.zeros(len(X))


def _check_finite(*arrays):
    for a in arrays:
        if not np.all(np.isfinite(a)):
            raise NonFiniteError("non-finite value during ascent; check the objective and start points")


def simplex_ascent(
    fun: ValueGrad,
    starts: np.ndarray,
    max_iters: int = 4000,
    tol: float = 1e-12,
    gtol: float = 1e-10,
    eta0: float = 1.0,
) -> AscentResult:
    """Run one ascent per row of ``starts`` until every run has converged.

    A run stops when its gradient residual drops below ``gtol``, when an
    accepted step improves the value by less than ``tol`` relative, when its
    step size underflows, or after ``max_iters`` batch iterations.
    """
    X = np.array(starts, dtype=float)
    S = X.shape[0]
    f, g = fun(X)
    _check_finite(f, g)
    eta = np.full(S, float(eta0))
    active = np.ones(S, dtype=bool)
    active[kkt_residual(X, g) < gtol] = False
    it = 0
    while it < max_iters and active.any():
        it += 1
        A = np.flatnonzero(active)
        Xa, ga, fa = X[A], g[A], f[A]
        on = Xa > 0
        gmax = np.where(on, ga, -np.inf).max(axis=1, keepdims=True)
        z = np.where(on, eta[A, None] * (ga - gmax), 0.0)
        Y = Xa * np.exp(z)
        Y /= Y.sum(axis=1, keepdims=True)
        fy, gy = fun(Y)
        _check_finite(fy, gy)

        predicted = np.einsum("ij,ij->i", ga, Y - Xa)
        better = (fy > fa) & (fy - fa >= ARMIJO * predicted)
        acc = A[better]
        X[acc], f[acc], g[acc] = Y[better], fy[better], gy[better]
        eta[acc] = np.minimum(eta[acc] * 2.0, ETA_MAX)
        eta[A[~better]] *= 0.5

        small_gain = better & ((fy - fa) <= tol * np.maximum(np.abs(fa), 1e-300))
        resid = kkt_residual(X[A], g[A])
        done = small_gain | (resid < gtol) | (eta[A] < ETA_MIN)
        active[A[done]] = False

    return AscentResult(X, f, kkt_residual(X, g), it)
