"""
Fixed-point solver with Schatten-norm error certificates
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
Solves ``X = Q + A.T @ inv(X) @ A`` by plain iteration from ``X0 = Q`` and
stops on the Thompson distance between consecutive iterates. The distance
to the unknown solution is estimated from the observed contraction ratio
(a heuristic tail bound) and then turned into rigorous Schatten-norm error
bounds through the Thompson-to-norm inequality.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .bounds import frobenius_bound
from .errors import ContractionNotObserved, MaxIterationsExceeded
from .linalg import check_same_shape, cholesky, sym_matrix
from .metrics import ThompsonDistance, root_two, schatten_norm, schatten_order, thompson_distance

HEURISTIC_LABEL = "heuristic (observed-ratio tail bound)"
RATIO_WINDOW = 5
MONOTONE_AFTER = 3
# Step sizes below this are at the rounding level of the distance itself.
STEP_NOISE = 1e-13


@dataclass(frozen=True)
class SolverProblem:
    """Data of ``X = Q + A.T @ inv(X) @ A`` with ``Q`` positive definite."""

    q: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        q = sym_matrix(self.q)
        a = np.atleast_2d(np.asarray(self.a, dtype=float))
        check_same_shape(q, a)
        cholesky(q)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "a", a)

    def step(self, x):
        """One application of the map ``X -> Q + A.T inv(X) A``."""
        z = solve_triangular(cholesky(x), self.a, lower=True)
        return sym_matrix(self.q + z.T @ z)

    def residual(self, x):
        """Frobenius norm of ``X - Q - A.T inv(X) A``."""
        return float(np.linalg.norm(x - self.step(x)))


@dataclass(frozen=True)
class Certificate:
    """Error certificate for an approximate fixed point.

    ``bounds`` holds ``(p, bound)`` pairs on ``||X_approx - X*||_p``, valid
    whenever ``d_T(X_approx, X*) <= d_gap``. ``d_gap`` itself comes from
    the observed contraction ratio and is labelled as heuristic.
    """

    d_gap: float
    bounds: tuple
    frobenius_refined: float
    iterations: int | None = None
    rho_hat: float | None = None
    label: str = HEURISTIC_LABEL

    def bound(self, p):
        p = schatten_order(p)
        for q, b in self.bounds:
            if q == p:
                return b
        raise KeyError(p)


def error_certificate(x_approx, d_gap, p_list, iterations=None, rho_hat=None):
    """Schatten-norm error bounds for ``x_approx`` given ``d_T(x_approx, X*) <= d_gap``.

    The unknown norm is eliminated with ``||X*||_p <= e**d_gap ||x_approx||_p``,
    which gives ``2**(1/p) * (e**d_gap - 1) * ||x_approx||_p``. The Frobenius
    refinement reduces to ``(e**d_gap - 1) * ||x_approx||_2``.
    """
    d = ThompsonDistance(d_gap)
    grow = math.expm1(d)
    bounds = []
    for p in p_list:
        p = schatten_order(p)
        bounds.append((p, root_two(p) * grow * schatten_norm(x_approx, p)))
    norm2 = schatten_norm(x_approx, 2)
    refined = frobenius_bound(d.alpha * norm2, norm2, d)
    return Certificate(float(d), tuple(bounds), refined, iterations, rho_hat)


def contraction_ratio(steps, window=RATIO_WINDOW):
    """Largest ratio of consecutive step sizes over the last ``window`` steps."""
    pairs = list(zip(steps[:-1], steps[1:]))[-window:]
    ratios = [cur / prev if prev > 0 else 0.0 for prev, cur in pairs]
    return max(ratios) if ratios else math.nan


def solve_fixed_point(problem, tol_d=1e-10, max_iter=500, p_list=(1.0, 2.0, math.inf)):
    """Iterate ``X <- Q + A.T inv(X) A`` until consecutive iterates are close.

    Parameters
    ----------
    problem : SolverProblem
    tol_d : float
        Stop once the Thompson distance between the last two iterates drops
        below ``tol_d``.
    max_iter : int
        Iteration cap.
    p_list : sequence of Schatten orders
        Orders to certify.

    Returns
    -------
    x : ndarray
        Last iterate ``X_k``.
    cert : Certificate
        ``d_gap = rho/(1 - rho) * d_T(X_{k-1}, X_k)`` with ``rho`` the
        largest of the last five observed step ratios.

    Raises
    ------
    MaxIterationsExceeded
    ContractionNotObserved
        If step sizes grow after the first iterations or ``rho >= 1``; the
        iterate is attached to the exception.
    """
    if not tol_d > 0:
        raise ValueError("tol_d must be positive")
    x = problem.q
    steps = []
    for k in range(1, max_iter + 1):
        x_next = problem.step(x)
        if np.array_equal(x, x_next):
            step = 0.0
        else:
            step = float(thompson_distance(x, x_next, snap=False))
        steps.append(step)
        x = x_next
        if k > MONOTONE_AFTER and step > steps[-2] * (1.0 + 1e-9) + STEP_NOISE:
            raise ContractionNotObserved(
                f"step size grew from {steps[-2]:.3e} to {step:.3e} at iteration {k}",
                solution=x, rho_hat=step / steps[-2], iterations=k,
            )
        if step == 0.0 or (step < tol_d and k >= 2):
            break
    else:
        raise MaxIterationsExceeded(
            f"no convergence to tol_d={tol_d:g} in {max_iter} iterations "
            f"(last step {steps[-1]:.3e})",
            solution=x, iterations=max_iter,
        )

    if steps[-1] == 0.0:
        rho = 0.0 if len(steps) == 1 else contraction_ratio(steps)
        return x, error_certificate(x, 0.0, p_list, len(steps), rho)
    rho = contraction_ratio(steps)
    if not rho < 1.0:
        raise ContractionNotObserved(
            f"observed contraction ratio {rho:.6f} >= 1; certificate refused",
            solution=x, rho_hat=rho, iterations=len(steps),
        )
    d_gap = rho / (1.0 - rho) * steps[-1]
    return x, error_certificate(x, d_gap, p_list, len(steps), rho)
