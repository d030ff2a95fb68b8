"""
Dense real-symmetric linear algebra
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
Validation, eigendecomposition, Cholesky factorisation, matrix square roots
and Löwner-order scaling factors for small dense symmetric matrices.

Matrices are plain ``numpy.ndarray`` objects of shape ``(n, n)``. The
function :func:`sym_matrix` is the single entry point that turns arbitrary
array-likes into validated symmetric matrices; the remaining functions call
it on their inputs.
"""
import numpy as np
from scipy.linalg import solve_triangular

from .errors import (
    AsymmetricMatrix,
    ConvergenceError,
    DimensionMismatch,
    NotPositiveDefinite,
    NotPSD,
)

ASYMMETRY_TOL = 1e-8
PD_RTOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def sym_matrix(a, tol=ASYMMETRY_TOL):
    """Validate ``a`` as a real symmetric matrix and return ``(a + a.T) / 2``.

    Parameters
    ----------
    a : array_like, shape (n, n)
        Candidate matrix. Must be square, finite and real.
    tol : float
        Maximum admissible asymmetry, relative to ``max|a_ij|``.

    Returns
    -------
    ndarray, shape (n, n)
        Exactly symmetric float64 copy.

    Raises
    ------
    AsymmetricMatrix
        If ``max|a - a.T| > tol * max|a|``.
    ValueError
        For non-square, empty, complex or non-finite input.
    """
    a = np.asarray(a)
    if np.iscomplexobj(a):
        raise ValueError("complex entries are not supported")
    a = np.array(a, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    asym = np.max(np.abs(a - a.T))
    if asym > tol * np.max(np.abs(a)):
        raise AsymmetricMatrix(f"matrix is not symmetric (max asymmetry {asym:.3g})")
    return 0.5 * (a + a.T)


def check_same_shape(a, b):
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimension mismatch: {a.shape} vs {b.shape}")


def spectral_norm(a):
    """Largest absolute eigenvalue of a symmetric matrix."""
    w = np.linalg.eigvalsh(a)
    return float(max(abs(w[0]), abs(w[-1])))


def pd_tolerance(a):
    """Scale-relative positivity threshold ``1e-12 * max(1, ||a||_2)``."""
    return PD_RTOL * max(1.0, spectral_norm(a))


def jacobi_eigh(a, max_sweeps=JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigenvalue algorithm.

    Returns eigenvalues in the order they sit on the diagonal of the
    converged matrix together with the accumulated rotation ``V`` so that
    ``a = V diag(w) V.T``.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    eps = np.finfo(float).eps
    for _ in range(max_sweeps + 1):
        if np.linalg.norm(a - np.diag(a.diagonal())) <= eps * scale:
            return a.diagonal().copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                # Rutishauser's stable form of the rotation angle.
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(1.0, theta))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :]
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def eig_sym(a, vectors=False, method="lapack"):
    """Eigenvalues of a symmetric matrix, sorted in descending order.

    Parameters
    ----------
    a : array_like, shape (n, n)
        Symmetric matrix.
    vectors : bool
        If True also return an orthogonal eigenbasis, one eigenvector per
        column, in the same order as the eigenvalues.
    method : {"lapack", "jacobi"}
        ``"lapack"`` delegates to ``numpy.linalg.eigh``; ``"jacobi"`` uses
        the self-contained cyclic Jacobi sweep in :func:`jacobi_eigh`.

    Returns
    -------
    w : ndarray, shape (n,)
        Eigenvalues, ``w[0] >= w[1] >= ...``.
    q : ndarray, shape (n, n)
        Only when ``vectors`` is True.
    """
    a = sym_matrix(a)
    if method == "lapack":
        try:
            w, q = np.linalg.eigh(a)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(str(exc)) from exc
    elif method == "jacobi":
        w, q = jacobi_eigh(a)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    order = np.argsort(w, kind="stable")[::-1]
    w = w[order]
    if vectors:
        return w, q[:, order]
    return w


def is_psd(a, tol=PD_RTOL):
    """Löwner test ``a >= 0``.

    Returns ``(ok, margin)`` where ``margin`` is the smallest eigenvalue and
    ``ok`` is ``margin >= -tol * max(1, ||a||_2)``.
    """
    w = eig_sym(a)
    margin = float(w[-1])
    scale = max(1.0, abs(w[0]), abs(w[-1]))
    return margin >= -tol * scale, margin


def cholesky(a):
    """Lower-triangular Cholesky factor ``L`` with ``L @ L.T == a``.

    Raises :class:`NotPositiveDefinite` when some pivot ``L[k, k]**2`` does
    not exceed ``1e-12 * max(1, ||a||_2)``.
    """
    a = sym_matrix(a)
    tol = pd_tolerance(a)
    try:
        lower = np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite(
            "matrix is not positive definite", margin=float(eig_sym(a)[-1])
        ) from None
    pivots = lower.diagonal() ** 2
    if np.min(pivots) <= tol:
        raise NotPositiveDefinite(
            f"Cholesky pivot {np.min(pivots):.3g} below tolerance {tol:.3g}",
            margin=float(eig_sym(a)[-1]),
        )
    return lower


def sqrt_psd(a):
    """Principal square root of a positive semidefinite matrix."""
    w, q = eig_sym(a, vectors=True)
    scale = max(1.0, abs(w[0]), abs(w[-1]))
    if w[-1] < -PD_RTOL * scale:
        raise NotPSD(f"matrix has negative eigenvalue {w[-1]:.6g}", margin=float(w[-1]))
    s = (q * np.sqrt(np.clip(w, 0.0, None))) @ q.T
    return 0.5 * (s + s.T)


def whiten(x, lower):
    """Congruence ``L^{-1} x L^{-T}`` for a lower-triangular ``L``."""
    z = solve_triangular(lower, x, lower=True)
    z = solve_triangular(lower, z.T, lower=True)
    return 0.5 * (z + z.T)


def loewner_scale(x, y):
    """Smallest ``t`` with ``x <= t * y`` in the Löwner order.

    Computed as the largest eigenvalue of ``L^{-1} x L^{-T}`` where ``L`` is
    the Cholesky factor of ``y``. The result is non-positive when ``x`` is
    negative semidefinite.
    """
    x = sym_matrix(x)
    y = sym_matrix(y)
    check_same_shape(x, y)
    lower = cholesky(y)
    return float(eig_sym(whiten(x, lower))[0])


def inv_pd(a):
    """Inverse of a positive definite matrix through Cholesky solves."""
    lower = cholesky(a)
    z = solve_triangular(lower, np.eye(a.shape[0]), lower=True)
    inv = z.T @ z
    return 0.5 * (inv + inv.T)
