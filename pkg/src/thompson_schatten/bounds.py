"""
Norm bounds in terms of the Thompson metric
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
Each bound on ``||X - Y||_p`` is a pure formula of Löwner scaling factors,
spectra and norms. :func:`audit_pair` evaluates all of them for one pair and
checks them against the true difference norm.

The per-index eigenvalue envelopes come in two kinds. The *claimed*
envelopes (:func:`lemma1_claimed_envelope`, :func:`lemma2_claimed_envelope`,
:func:`theorem2_claimed_envelope`) are evaluated verbatim and are only ever
flagged, never trusted: the diagonal pair ``diag(10, 1)``,
``diag(10/1.1, 1.1)`` already breaks the Theorem-2 envelope at index 1.
:func:`corrected_eig_envelope` follows from Löwner monotonicity of
eigenvalues applied to ``X - Y <= (1 - e**-d) X`` and
``Y - X <= (1 - e**-d) Y`` and is validated by the test-suite.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NonPositiveSpectrum
from .linalg import eig_sym, loewner_scale, sym_matrix, check_same_shape
from .metrics import (
    ThompsonDistance,
    format_order,
    root_two,
    schatten_order,
    spectrum_norm,
    thompson_distance,
)

VIOLATION_RTOL = 1e-9
DEFAULT_ORDERS = (1.0, 1.5, 2.0, 3.0, math.inf)

CSV_COLUMNS = (
    "n", "seed", "family", "p", "d", "alpha", "actual", "t1", "t2_env_norm",
    "t3", "frob", "corrected_env_norm", "ratio_t3", "ratio_frob", "flag_t1",
    "flag_t2_all_indices", "flag_t3", "flag_frob", "flag_corrected",
)


@dataclass(frozen=True)
class ScalePair:
    """Löwner scaling bounds with ``beta * Y <= X <= alpha * Y``."""

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha < self.beta:
            raise ValueError(f"alpha ({self.alpha}) must be >= beta ({self.beta})")

    @classmethod
    def from_distance(cls, d):
        d = ThompsonDistance(d)
        return cls(d.alpha, d.beta)


def within(value, bound, rtol=VIOLATION_RTOL):
    """``value <= bound`` up to relative slack ``rtol * max(1, bound)``."""
    return bool(value <= bound + rtol * max(1.0, bound))


def tightness_ratio(actual, bound):
    """``actual / bound`` with ``0 / 0 = 1``."""
    if bound == 0.0:
        return 1.0 if actual == 0.0 else math.inf
    return actual / bound


def _spectrum(values):
    return np.asarray(values, dtype=float)


def _check_lengths(*spectra):
    if len({s.shape for s in spectra}) != 1:
        raise DimensionMismatch("spectra must have equal length")


def tight_scale_pair(x, y):
    """Tightest ``(alpha, beta)`` with ``beta * y <= x <= alpha * y``."""
    x = sym_matrix(x)
    y = sym_matrix(y)
    check_same_shape(x, y)
    alpha = loewner_scale(x, y)
    beta = 1.0 / loewner_scale(y, x)
    # Rounding can put beta a hair above alpha when x is a multiple of y.
    return ScalePair(max(alpha, beta), min(alpha, beta))


def lemma1_claimed_envelope(nu, scale):
    """``max(|beta - 1|, |alpha - 1|) * nu_i`` (claimed, audit only)."""
    factor = max(abs(scale.beta - 1.0), abs(scale.alpha - 1.0))
    return factor * _spectrum(nu)


def lemma2_claimed_envelope(chi, scale):
    """``max(|1/alpha - 1|, |1/beta - 1|) * chi_i`` (claimed, audit only)."""
    factor = max(abs(1.0 / scale.alpha - 1.0), abs(1.0 / scale.beta - 1.0))
    return factor * _spectrum(chi)


def theorem1_bound(x, y, scale, p):
    """Minimum of the two Theorem-1 candidates.

    ``min(max(|a-1|, |b-1|) ||y||_p, max(|1/a-1|, |1/b-1|) ||x||_p)``.
    """
    p = schatten_order(p)
    norm_x = spectrum_norm(eig_sym(x), p)
    norm_y = spectrum_norm(eig_sym(y), p)
    return _theorem1_from_norms(norm_x, norm_y, scale)


def _theorem1_from_norms(norm_x, norm_y, scale):
    a, b = scale.alpha, scale.beta
    via_y = max(abs(a - 1.0), abs(b - 1.0)) * norm_y
    via_x = max(abs(1.0 / a - 1.0), abs(1.0 / b - 1.0)) * norm_x
    return min(via_y, via_x)


def theorem2_claimed_envelope(chi, nu, d):
    """Per-index Theorem-2 numbers ``|lambda_i|`` (claimed, audit only).

    ``max(min(|chi_i|, |nu_i|), min(|chi_r|, |nu_r|)) * (1 - e**-d)`` with
    ``r = n - i + 1``.
    """
    chi = np.abs(_spectrum(chi))
    nu = np.abs(_spectrum(nu))
    _check_lengths(chi, nu)
    lo = np.minimum(chi, nu)
    return np.maximum(lo, lo[::-1]) * ThompsonDistance(d).contraction


def corrected_eig_envelope(chi, nu, d):
    """Validated per-index bound ``(1 - e**-d) * max(chi_i, nu_{n-i+1})``.

    Requires strictly positive spectra (both matrices positive definite).
    """
    chi = _spectrum(chi)
    nu = _spectrum(nu)
    _check_lengths(chi, nu)
    if np.any(chi <= 0) or np.any(nu <= 0):
        raise NonPositiveSpectrum("corrected envelope needs positive spectra")
    return ThompsonDistance(d).contraction * np.maximum(chi, nu[::-1])


def theorem3_bound(norm_x, norm_y, d, p):
    """``2**(1/p) * (1 - e**-d) * max(norm_x, norm_y)``."""
    return root_two(p) * ThompsonDistance(d).contraction * max(norm_x, norm_y)


def frobenius_bound(norm2_x, norm2_y, d):
    """``(alpha - 1) / sqrt(1 + alpha**2) * sqrt(norm2_x**2 + norm2_y**2)``."""
    alpha = ThompsonDistance(d).alpha
    if math.isinf(alpha):
        return math.inf if (norm2_x or norm2_y) else 0.0
    return math.expm1(d) / math.hypot(1.0, alpha) * math.hypot(norm2_x, norm2_y)


@dataclass
class BoundReport:
    """Every bound for one pair and one Schatten order, with audit flags.

    ``flags`` maps a bound name to True when the bound holds (bound >=
    actual up to slack). ``per_index_flags`` maps an envelope name to one
    boolean per eigenvalue index of ``delta_spectrum``.
    """

    d: ThompsonDistance
    scale: ScalePair
    p: float
    actual: float
    t1: float
    t2: float
    t3: float
    frob: float | None
    corrected_env_norm: float
    delta_spectrum: np.ndarray
    envelopes: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    per_index_flags: dict = field(default_factory=dict)

    @property
    def n(self):
        return len(self.delta_spectrum)

    @property
    def ratio_t3(self):
        return tightness_ratio(self.actual, self.t3)

    @property
    def ratio_frob(self):
        if self.frob is None:
            return None
        return tightness_ratio(self.actual, self.frob)

    def csv_row(self, seed="", family=""):
        """Values in :data:`CSV_COLUMNS` order, already rendered as strings."""

        def num(v):
            return "" if v is None else f"{float(v):.17g}"

        def flag(v):
            return "" if v is None else str(int(bool(v)))

        return [
            str(self.n), str(seed), str(family), format_order(self.p),
            num(self.d), num(self.scale.alpha), num(self.actual), num(self.t1),
            num(self.t2), num(self.t3), num(self.frob),
            num(self.corrected_env_norm), num(self.ratio_t3), num(self.ratio_frob),
            flag(self.flags["t1"]), flag(all(self.per_index_flags["t2"])),
            flag(self.flags["t3"]), flag(self.flags.get("frob")),
            flag(all(self.per_index_flags["corrected"])),
        ]


def audit_pair(x, y, orders=DEFAULT_ORDERS, scale=None):
    """Evaluate every bound for the positive definite pair ``(x, y)``.

    Parameters
    ----------
    x, y : array_like, shape (n, n)
        Positive definite matrices.
    orders : sequence of Schatten orders
        One :class:`BoundReport` is produced per order.
    scale : ScalePair, optional
        Scaling pair for Theorem 1 and the Lemma envelopes. Defaults to
        :func:`tight_scale_pair`.

    Returns
    -------
    list of BoundReport
    """
    x = sym_matrix(x)
    y = sym_matrix(y)
    check_same_shape(x, y)
    d = thompson_distance(x, y)
    if scale is None:
        scale = tight_scale_pair(x, y)
    chi = eig_sym(x)
    nu = eig_sym(y)
    delta = eig_sym(x - y)
    abs_delta = np.abs(delta)

    envelopes = {
        "lemma1": lemma1_claimed_envelope(nu, scale),
        "lemma2": lemma2_claimed_envelope(chi, scale),
        "t2": theorem2_claimed_envelope(chi, nu, d),
        "corrected": corrected_eig_envelope(chi, nu, d),
    }
    per_index = {
        name: [within(a, b) for a, b in zip(abs_delta, env)]
        for name, env in envelopes.items()
    }

    reports = []
    for p in orders:
        p = schatten_order(p)
        actual = spectrum_norm(delta, p)
        norm_x = spectrum_norm(chi, p)
        norm_y = spectrum_norm(nu, p)
        t1 = _theorem1_from_norms(norm_x, norm_y, scale)
        t2 = spectrum_norm(envelopes["t2"], p)
        t3 = theorem3_bound(norm_x, norm_y, d, p)
        corrected = spectrum_norm(envelopes["corrected"], p)
        frob = frobenius_bound(norm_x, norm_y, d) if p == 2 else None
        flags = {
            "t1": within(actual, t1),
            "t2_norm": within(actual, t2),
            "t3": within(actual, t3),
            "corrected_norm": within(actual, corrected),
        }
        if frob is not None:
            flags["frob"] = within(actual, frob)
        reports.append(
            BoundReport(
                d=d, scale=scale, p=p, actual=actual, t1=t1, t2=t2, t3=t3,
                frob=frob, corrected_env_norm=corrected, delta_spectrum=delta,
                envelopes=envelopes, flags=flags, per_index_flags=per_index,
            )
        )
    return reports
