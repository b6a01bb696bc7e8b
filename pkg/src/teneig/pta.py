"""Power-type baseline solver for the dominant eigenpair.

Iterates x -> normalized (tvp(T, x))^{[1/(m-1)]} on the positive tensor
T = (A + eps) + alpha*I and brackets the eigenvalue by the componentwise
ratios.  Linearly convergent; serves as an independent cross-check for the
path-following solver and as the slow baseline on badly scaled instances.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .homotopy import SolveReport
from .tensor import (
    EigenPair,
    add_identity,
    diagonal,
    perturb,
    require_essentially_nonnegative,
    tvp,
)


@dataclass
class PtaConfig:
    tol: float = 1e-10
    max_iter: int = 50000
    eps_perturb: float = 1e-9

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.eps_perturb <= 0:
            raise ValueError("eps_perturb must be positive")


def pta_solve(A, config=None, x0=None):
    """Power-type iteration for the dominant eigenpair of A.

    Always iterates on T = (A + eps) + alpha*I, which is positive, so the
    iterates stay strictly positive and the ratio bracket
    [min_i y_i/x_i^{m-1}, max_i y_i/x_i^{m-1}] encloses the Perron value of
    T.  The reported eigenvalue estimate is the bracket midpoint, shifted
    back by alpha.  Stops when the stacked eigen-residual on T drops to
    ``tol`` or after ``max_iter`` sweeps (status "step_limit").
    """
    t_start = time.perf_counter()
    config = PtaConfig() if config is None else config
    require_essentially_nonnegative(A)
    m, n = A.order, A.dim
    alpha = float(np.abs(diagonal(A)).max()) + 1.0
    T = add_identity(perturb(A, config.eps_perturb), alpha)
    if x0 is None:
        x = np.ones(n) / np.sqrt(n)
    else:
        x = np.asarray(x0, dtype=float)
        if x.shape != (n,):
            raise ValueError("x0 must have length %d" % n)
        if (x <= 0).any():
            raise ValueError("x0 must be strictly positive")
        x = x / np.linalg.norm(x)
    ex = 1.0 / (m - 1)
    iters = 0
    min_x = float(x.min())
    while True:
        y = tvp(T, x)
        xp = x ** (m - 1)
        ratios = y / xp
        lam = 0.5 * (ratios.max() + ratios.min())
        r = y - lam * xp
        residual = float(np.sqrt(r @ r + (x @ x - 1.0) ** 2))
        if residual <= config.tol:
            status = "converged"
            break
        if iters >= config.max_iter:
            status = "step_limit"
            break
        x = y**ex
        x /= np.linalg.norm(x)
        assert x.min() > 0.0, "iterate left the positive cone"
        min_x = min(min_x, float(x.min()))
        iters += 1
    return SolveReport(
        eigen=EigenPair(lam - alpha, x),
        residual_norm=residual,
        iter=iters,
        nwtiter=0,
        wall_time_s=time.perf_counter() - t_start,
        perturbed=True,
        alpha=alpha,
        status=status,
        lambda_shifted=float(lam),
        path_min_x=min_x,
    )


def convergence_rate_estimate(T):
    """Linear-rate bound for the power iteration on a nonnegative tensor:
    1 - min_{i,j} t[i,j,...,j] / max_i (full row sum of T).

    Invariant under positive scaling of T.  Values near 1 predict slow
    convergence.
    """
    data = T.data
    if (data < 0).any():
        raise ValueError("tensor must be nonnegative")
    n = T.dim
    row_sums = data.reshape(n, -1).sum(axis=1)
    denom = float(row_sums.max())
    if denom <= 0.0:
        raise ValueError("all-zero tensor has no convergence rate")
    idx = np.arange(n)
    trailing_equal = data[(slice(None),) + (idx,) * (T.order - 1)]
    return 1.0 - float(trailing_equal.min()) / denom
