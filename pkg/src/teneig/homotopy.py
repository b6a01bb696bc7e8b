"""Euler-Newton path following from a rank-one start system to the shifted
eigenproblem, and the top-level dominant-eigenpair driver.

The homotopy blends the start system P (rank-one tensor S with a closed-form
Perron pair) into the target system Q (shifted tensor T) as tau goes 0 -> 1:

    H_tau(lam, x) = ((tau*T + (1-tau)*S) x^{m-1} - lam x^{[m-1]}; x.x - 1)

For every tau in [0,1) the positive blend has a unique positive Perron pair
and a nonsingular Jacobian there, so the solution curve can be followed by
an Euler predictor and a Newton corrector with adaptive step control, with a
final jump ("endgame") from tau = beta to tau = 1.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .linalg import SingularMatrixError, lu_apply, lu_factor
from .tensor import (
    EigenPair,
    add_identity,
    diagonal,
    eigen_residual,
    perturb,
    rank_one_start,
    require_essentially_nonnegative,
    start_pair,
    tvp,
    tvp_jacobian,
    weak_irreducibility_check,
)

POSITIVITY_WARN_FLOOR = 1e-12


class NewtonStalled(RuntimeError):
    """Newton failed to reach the target residual within the iteration cap."""

    def __init__(self, iterations):
        self.iterations = iterations
        super().__init__("Newton did not reach tolerance within %d iterations" % iterations)


class PositivityLost(RuntimeError):
    """A correction converged outside the positive cone.

    The solution curve is the Perron pair of a positive blend and stays
    strictly positive, so a corrected point with a nonpositive component
    means Newton jumped to a different, sign-mixed eigenpair.
    """

    def __init__(self, iterations=0):
        self.iterations = iterations
        super().__init__("corrected point left the positive cone")


@dataclass
class HomotopyConfig:
    """Knobs of the path follower; defaults follow the standard recipe."""

    dtau0: float = 0.1
    eps1: float = 1e-5  # path Newton tolerance
    eps2: float = 1e-10  # endgame tolerance
    beta: float = 0.9999  # endgame threshold
    eps_perturb: float = 1e-9  # constant added for reducible inputs
    max_steps: int = 50000  # prediction-correction cap
    newton_cap_path: int = 10
    newton_cap_endgame: int = 100
    dtau_min: float = 1e-6
    dtau_max: float = 0.4

    def __post_init__(self):
        if not 0.0 < self.dtau0 <= self.dtau_max:
            raise ValueError("dtau0 must lie in (0, dtau_max]")
        if not 0.0 < self.eps2 <= self.eps1:
            raise ValueError("need 0 < eps2 <= eps1")
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        if self.eps_perturb <= 0:
            raise ValueError("eps_perturb must be positive")
        if self.dtau_min > self.dtau_max:
            raise ValueError("dtau_min must not exceed dtau_max")
        if self.max_steps < 1 or self.newton_cap_path < 1 or self.newton_cap_endgame < 1:
            raise ValueError("iteration caps must be at least 1")


@dataclass
class PathState:
    """Current point on the solution curve plus step-control history."""

    tau: float
    lam: float
    x: np.ndarray = field(repr=False)
    dtau: float
    last_two_uncut: tuple = (False, False)
    step_count: int = 0
    newton_total: int = 0


@dataclass
class SolveReport:
    """Outcome of one dominant-eigenpair solve.

    ``eigen`` is the pair for the original tensor A (eigenvalue already
    shifted back by alpha); ``lambda_shifted`` is the eigenvalue of the
    nonnegative tensor the solver actually iterated on.
    """

    eigen: EigenPair
    residual_norm: float
    iter: int
    nwtiter: int
    wall_time_s: float
    perturbed: bool
    alpha: float
    status: str  # converged | step_limit | endgame_failure
    lambda_shifted: float
    path_min_x: float = np.nan
    path: list | None = None


def _check_pair(T, S):
    if T.order != S.order or T.dim != S.dim:
        raise ValueError(
            "tensors must share order and dimension, got (%d,%d) and (%d,%d)"
            % (T.order, T.dim, S.order, S.dim)
        )


def homotopy_residual(T, S, tau, lam, x):
    """Residual of the blended system at (lam, x), a vector of length n+1."""
    _check_pair(T, S)
    if not 0.0 <= tau <= 1.0:
        raise ValueError("tau must lie in [0, 1]")
    x = np.asarray(x, dtype=float)
    r = tau * tvp(T, x) + (1.0 - tau) * tvp(S, x) - lam * x ** (T.order - 1)
    return np.concatenate([r, [x @ x - 1.0]])


def homotopy_jacobian(T, S, tau, lam, x):
    """Jacobian of the blended system in (lam, x), an (n+1)x(n+1) matrix.

    First column is -x^{[m-1]} stacked over 0, the trailing n-by-n block is
    the x-Jacobian of the blended contraction minus lam*(m-1)*diag(x^{m-2}),
    and the bottom row is (0, 2x^T) from the normalization constraint.
    """
    _check_pair(T, S)
    x = np.asarray(x, dtype=float)
    m, n = T.order, T.dim
    J = np.empty((n + 1, n + 1))
    J[:n, 0] = -(x ** (m - 1))
    J[n, 0] = 0.0
    B = tau * tvp_jacobian(T, x) + (1.0 - tau) * tvp_jacobian(S, x)
    idx = np.arange(n)
    B[idx, idx] -= lam * (m - 1) * x ** (m - 2)
    J[:n, 1:] = B
    J[n, 1:] = 2.0 * x
    return J


def tau_derivative(T, S, x):
    """Derivative of the homotopy residual in tau at fixed (lam, x):
    ((T - S) x^{m-1}; 0)."""
    _check_pair(T, S)
    return np.concatenate([tvp(T, x) - tvp(S, x), [0.0]])


def _tangent(T, S, tau, lam, x):
    fact = lu_factor(homotopy_jacobian(T, S, tau, lam, x))
    if fact.singular:
        raise SingularMatrixError(fact.pivot_index)
    return lu_apply(fact, -tau_derivative(T, S, x))


def predict(T, S, state, dtau=None):
    """Euler predictor: move along the path tangent at the current state.

    Solves JH * g = -dH/dtau for the tangent and returns u + dtau * g with
    u = (lam, x).  Raises SingularMatrixError when the Jacobian degenerates.
    """
    if dtau is None:
        dtau = state.dtau
    g = _tangent(T, S, state.tau, state.lam, state.x)
    u = np.concatenate([[state.lam], state.x])
    return u + dtau * g


def newton_correct(T, S, tau, u0, tol, cap):
    """Newton iteration on the homotopy at fixed tau from u0 = (lam, x...).

    Returns (u, iterations) once the residual 2-norm drops to tol.  Raises
    NewtonStalled after cap updates, or SingularMatrixError on a degenerate
    Jacobian; both carry the Newton iterations already spent.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    u = np.array(u0, dtype=float)
    for i in range(cap + 1):
        r = homotopy_residual(T, S, tau, u[0], u[1:])
        if np.linalg.norm(r) <= tol:
            return u, i
        if i == cap:
            raise NewtonStalled(cap)
        fact = lu_factor(homotopy_jacobian(T, S, tau, u[0], u[1:]))
        if fact.singular:
            err = SingularMatrixError(fact.pivot_index)
            err.iterations = i
            raise err
        u = u - lu_apply(fact, r)
    raise AssertionError("unreachable")


def update_step_size(state, newton_iters_used, config):
    """Next step length after an accepted correction.

    More than three Newton iterations halve the step (floor dtau_min); two
    consecutive steps without such a cut double it (cap dtau_max); otherwise
    it is kept.  Records the step's cut/uncut flag in state.last_two_uncut.
    """
    cut = newton_iters_used > 3
    state.last_two_uncut = (state.last_two_uncut[1], not cut)
    if cut:
        return max(0.5 * state.dtau, config.dtau_min)
    if all(state.last_two_uncut):
        return min(2.0 * state.dtau, config.dtau_max)
    return state.dtau


def endgame(T, S, u_at_beta, config, beta=None):
    """Final jump from tau = beta to tau = 1 with Newton polish.

    One Euler prediction over 1 - beta, then Newton on the target system to
    the tight tolerance eps2.  Returns (EigenPair, newton_iterations).
    """
    if beta is None:
        beta = config.beta
    u = np.asarray(u_at_beta, dtype=float)
    g = _tangent(T, S, beta, u[0], u[1:])
    ubar = u + (1.0 - beta) * g
    v, iters = newton_correct(T, S, 1.0, ubar, config.eps2, config.newton_cap_endgame)
    if v[1:].min() <= 0.0:
        raise PositivityLost(iters)
    return EigenPair(v[0], v[1:]), iters


def _snapshot(state):
    return PathState(
        tau=state.tau,
        lam=state.lam,
        x=state.x.copy(),
        dtau=state.dtau,
        last_two_uncut=state.last_two_uncut,
        step_count=state.step_count,
        newton_total=state.newton_total,
    )


def _solve_shifted(A, config, a, b, use_perturbation, record_path):
    """Run the full pipeline on T = (A_eps or A) + alpha*I; wall time unset."""
    m = A.order
    alpha = float(np.abs(diagonal(A)).max()) + 1.0
    base = perturb(A, config.eps_perturb) if use_perturbation else A
    T = add_identity(base, alpha)
    S = rank_one_start(a, b, m)
    start = start_pair(a, b, m)
    state = PathState(tau=0.0, lam=start.lam, x=np.array(start.x), dtau=config.dtau0)
    trace = [_snapshot(state)] if record_path else None
    min_x = float(state.x.min())

    def reject_step(newton_spent):
        """Halve the step after a failed attempt; True when already at the floor."""
        state.step_count += 1
        state.newton_total += newton_spent
        if state.dtau <= config.dtau_min:
            return True
        state.dtau = max(0.5 * state.dtau, config.dtau_min)
        return False

    def follow(target):
        """Advance until a correction at tau = target is accepted."""
        nonlocal min_x
        while state.tau < target:
            if state.step_count >= config.max_steps:
                return "step_limit"
            dtau = state.dtau
            tau_next = state.tau + dtau
            if tau_next >= target:
                tau_next = target
                dtau = target - state.tau
            try:
                ubar = predict(T, S, state, dtau)
                u_new, iters = newton_correct(
                    T, S, tau_next, ubar, config.eps1, config.newton_cap_path
                )
            except (SingularMatrixError, NewtonStalled) as exc:
                if reject_step(getattr(exc, "iterations", 0)):
                    return "step_limit"
                continue
            if u_new[1:].min() <= 0.0:
                # Newton landed on a sign-mixed eigenpair of the blend; the
                # true curve is strictly positive, so shorten the step.
                if reject_step(iters):
                    return "step_limit"
                continue
            state.tau = tau_next
            state.lam = float(u_new[0])
            state.x = u_new[1:]
            state.step_count += 1
            state.newton_total += iters
            lo = float(state.x.min())
            min_x = min(min_x, lo)
            if lo < POSITIVITY_WARN_FLOOR:
                warnings.warn(
                    "path point has component %.3e below the positivity floor" % lo,
                    RuntimeWarning,
                )
            state.dtau = update_step_size(state, iters, config)
            if trace is not None:
                trace.append(_snapshot(state))
            if state.tau >= target:
                return "ok"
        return "ok"

    status = follow(config.beta)
    endgame_attempts = 0
    pair = None
    if status == "ok":
        beta_used = config.beta
        for attempt in range(2):
            endgame_attempts += 1
            u_beta = np.concatenate([[state.lam], state.x])
            try:
                pair, iters = endgame(T, S, u_beta, config, beta=beta_used)
                state.newton_total += iters
                status = "converged"
                break
            except (SingularMatrixError, NewtonStalled, PositivityLost) as exc:
                state.newton_total += getattr(exc, "iterations", 0)
                if attempt == 0:
                    # Push the jump-off point closer to 1 and try once more.
                    beta_used = 0.5 * (1.0 + beta_used)
                    if follow(beta_used) != "ok":
                        status = "step_limit"
                        break
                else:
                    status = "endgame_failure"

    if pair is not None:
        lam_shift, x = pair.lam, np.array(pair.x)
        min_x = min(min_x, float(x.min()))
    else:
        x = state.x / np.linalg.norm(state.x)
        lam_shift = state.lam
    residual = float(np.linalg.norm(eigen_residual(T, lam_shift, x)))
    return SolveReport(
        eigen=EigenPair(lam_shift - alpha, x),
        residual_norm=residual,
        iter=state.step_count + endgame_attempts,
        nwtiter=state.newton_total,
        wall_time_s=0.0,
        perturbed=use_perturbation,
        alpha=alpha,
        status=status,
        lambda_shifted=lam_shift,
        path_min_x=min_x,
        path=trace,
    )


def solve_dominant(A, config=None, a=None, b=None, assume="auto", record_path=False):
    """Dominant eigenpair of an essentially nonnegative tensor A.

    The returned pair has the largest real eigenvalue of A and, for
    irreducible input, a strictly positive unit eigenvector.  Pipeline:
    diagonal alpha-shift to a nonnegative tensor, constant eps-perturbation
    when the input is (assumed) reducible, rank-one start system from the
    positive vectors a and b (default all ones), Euler-Newton path
    following to beta, endgame jump to 1.

    ``assume`` gates the perturbation: "auto" perturbs iff the weak
    irreducibility check fails, "irreducible"/"reducible" force it off/on.
    A failed endgame first retries with beta closer to 1, then once more
    with the perturbation switched on.
    """
    t_start = time.perf_counter()
    config = HomotopyConfig() if config is None else config
    require_essentially_nonnegative(A)
    n = A.dim
    a = np.ones(n) if a is None else np.asarray(a, dtype=float)
    b = np.ones(n) if b is None else np.asarray(b, dtype=float)
    if a.shape != (n,) or b.shape != (n,):
        raise ValueError("a and b must have length %d" % n)
    if assume == "auto":
        perturbed = not weak_irreducibility_check(A)
    elif assume == "irreducible":
        perturbed = False
    elif assume == "reducible":
        perturbed = True
    else:
        raise ValueError("assume must be one of auto, irreducible, reducible")
    report = _solve_shifted(A, config, a, b, perturbed, record_path)
    if report.status == "endgame_failure" and not perturbed:
        retry = _solve_shifted(A, config, a, b, True, record_path)
        retry.iter += report.iter
        retry.nwtiter += report.nwtiter
        report = retry
    report.wall_time_s = time.perf_counter() - t_start
    return report
