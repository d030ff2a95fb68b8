"""
Metrics and norms on symmetric matrices
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
Schatten p-norms, the trace inner product with its induced angle, and the
Thompson part metric on the interior of the positive-definite cone.
"""
import math

import numpy as np

from .errors import InvalidOrder, ZeroMatrix
from .linalg import check_same_shape, eig_sym, loewner_scale, spectral_norm, sym_matrix

EQUALITY_RTOL = 1e-12


def schatten_order(p):
    """Validate a Schatten order.

    Accepts any real ``p >= 1``, ``math.inf`` or the literal string
    ``"inf"`` and returns a float.
    """
    if isinstance(p, str):
        token = p.strip()
        if token == "inf":
            return math.inf
        try:
            p = float(token)
        except ValueError:
            raise InvalidOrder(f"invalid Schatten order {p!r}") from None
        if math.isinf(p):
            raise InvalidOrder("spell the infinite order as 'inf'")
    p = float(p)
    if math.isnan(p) or p < 1:
        raise InvalidOrder(f"Schatten order must be >= 1 or inf, got {p}")
    return p


def format_order(p):
    p = schatten_order(p)
    if math.isinf(p):
        return "inf"
    return f"{p:g}"


def root_two(p):
    """``2**(1/p)`` with the convention ``2**(1/inf) = 1``."""
    p = schatten_order(p)
    return 1.0 if math.isinf(p) else 2.0 ** (1.0 / p)


def spectrum_norm(values, p):
    """``(sum |v_i|**p)**(1/p)``; the max of ``|v_i|`` for ``p = inf``."""
    p = schatten_order(p)
    v = np.abs(np.asarray(values, dtype=float))
    if v.size == 0:
        return 0.0
    top = float(v.max())
    if math.isinf(p) or top == 0.0:
        return top
    # Rescale before powering to avoid overflow for large p.
    return top * float(np.sum((v / top) ** p)) ** (1.0 / p)


def schatten_norm(a, p):
    """Schatten p-norm of a symmetric matrix via its eigenvalues."""
    p = schatten_order(p)
    return spectrum_norm(eig_sym(a), p)


def matrices_equal(x, y):
    """``||x - y||_2 <= 1e-12 * max(1, ||x||_2 + ||y||_2)`` (spectral norms)."""
    x = sym_matrix(x)
    y = sym_matrix(y)
    check_same_shape(x, y)
    scale = max(1.0, spectral_norm(x) + spectral_norm(y))
    return spectral_norm(x - y) <= EQUALITY_RTOL * scale


class ThompsonDistance(float):
    """A Thompson distance ``d`` (natural-log units).

    Behaves as a plain float and adds the Löwner scaling factors
    ``alpha = e**d`` and ``beta = e**-d``.
    """

    def __new__(cls, d):
        d = float(d)
        if math.isnan(d) or d < 0:
            raise ValueError(f"Thompson distance must be nonnegative, got {d}")
        return super().__new__(cls, d)

    @property
    def alpha(self):
        return math.exp(self)

    @property
    def beta(self):
        return math.exp(-self)

    @property
    def contraction(self):
        """``(e**d - 1) / e**d = 1 - e**-d``."""
        return -math.expm1(-self)

    def __repr__(self):
        return f"ThompsonDistance({float(self)!r})"


def thompson_distance(x, y, snap=True):
    """Thompson part metric ``max(log M(x/y), log M(y/x))``.

    Both arguments must be positive definite. With ``snap`` set, pairs that
    are equal to working precision (see :func:`matrices_equal`) get
    distance exactly 0; iterative callers that need the raw value of tiny
    distances pass ``snap=False``.

    Raises
    ------
    NotPositiveDefinite
        If either argument is outside the open cone.
    """
    x = sym_matrix(x)
    y = sym_matrix(y)
    check_same_shape(x, y)
    mxy = loewner_scale(x, y)
    myx = loewner_scale(y, x)
    if snap and matrices_equal(x, y):
        return ThompsonDistance(0.0)
    d = max(math.log(mxy), math.log(myx))
    return ThompsonDistance(max(d, 0.0))


def trace_inner(a, b):
    """Frobenius inner product ``tr(a.T @ b)``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    check_same_shape(a, b)
    return float(np.sum(a * b))


def cone_angle(x, y):
    """Angle in degrees between ``x`` and ``y`` under the trace inner product."""
    x = sym_matrix(x)
    y = sym_matrix(y)
    check_same_shape(x, y)
    nx = np.linalg.norm(x)
    ny = np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise ZeroMatrix("angle undefined for a zero matrix")
    cos = np.clip(trace_inner(x, y) / (nx * ny), -1.0, 1.0)
    return float(np.degrees(np.arccos(cos)))
