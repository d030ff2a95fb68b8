"""
Random and structured test families, and the CSV sweep driver
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
Every trial owns an independent random stream derived from
``(base_seed, trial_index)`` through :class:`numpy.random.SeedSequence`, so
a sweep is reproducible regardless of how trials are scheduled.
"""
import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bounds import CSV_COLUMNS, audit_pair
from .errors import ConfigError, NotPositiveDefinite
from .linalg import eig_sym, sqrt_psd, sym_matrix
from .metrics import format_order, schatten_order

FAMILIES = ("random_pd", "fixed_distance", "tight_diag", "commuting_diag")


def trial_seed(base_seed, trial_index):
    """64-bit seed for one trial, a hash of ``(base_seed, trial_index)``."""
    ss = np.random.SeedSequence([int(base_seed), int(trial_index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _rng(seed):
    return np.random.default_rng(np.random.SeedSequence(int(seed)))


def random_rotation(n, rng):
    """Product of the ``n(n-1)/2`` plane rotations with uniform angles."""
    q = np.eye(n)
    for i in range(n - 1):
        for j in range(i + 1, n):
            theta = rng.uniform(0.0, 2.0 * np.pi)
            c, s = np.cos(theta), np.sin(theta)
            qi = q[:, i].copy()
            q[:, i] = c * qi - s * q[:, j]
            q[:, j] = s * qi + c * q[:, j]
    return q


def log_uniform_spectrum(n, cond, rng, scale=1.0):
    """``n`` values in ``[scale, scale * cond]``, log-uniform, both ends attained."""
    if n == 1:
        return np.array([scale * cond ** rng.uniform()])
    logs = rng.uniform(0.0, math.log(cond), size=n)
    logs[0], logs[1] = 0.0, math.log(cond)
    return scale * np.exp(rng.permutation(logs))


def _rotate(spectrum, rng):
    q = random_rotation(len(spectrum), rng)
    return sym_matrix((q * spectrum) @ q.T)


def gen_random_pd(n, seed, cond_target=10.0, rng=None):
    """Random positive definite matrix with condition number ``cond_target``.

    The spectrum is log-uniform on ``[s, s * cond_target]`` for a random
    overall scale ``s`` and is rotated by :func:`random_rotation`.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if cond_target < 1:
        raise ValueError("cond_target must be >= 1")
    rng = _rng(seed) if rng is None else rng
    scale = 10.0 ** rng.uniform(-1.0, 1.0)
    return _rotate(log_uniform_spectrum(n, cond_target, rng, scale), rng)


def gen_pair_at_distance(x, d_target, seed, rng=None):
    """Return ``y = S M S`` with ``S = sqrt(x)`` and ``d_T(x, y) = d_target``.

    ``M`` is a rotated diagonal with spectrum in ``[e**-d, e**d]`` and at
    least one extreme attained, so ``d_T(I, M) = d_target``; congruence by
    ``S`` preserves the distance.
    """
    if d_target < 0:
        raise ValueError("d_target must be nonnegative")
    x = sym_matrix(x)
    if eig_sym(x)[-1] <= 0:
        raise NotPositiveDefinite("x must be positive definite")
    rng = _rng(seed) if rng is None else rng
    n = x.shape[0]
    if n == 1:
        logs = np.array([d_target * rng.choice([-1.0, 1.0])])
    else:
        logs = rng.uniform(-d_target, d_target, size=n)
        logs[0], logs[1] = d_target, -d_target
        logs = rng.permutation(logs)
    m = _rotate(np.exp(logs), rng)
    s = sqrt_psd(x)
    return sym_matrix(s @ m @ s)


def tight_family(a, b, alpha):
    """Diagonal pair ``diag(a, b)``, ``diag(a / alpha, alpha * b)``.

    For ``a / b > alpha**2`` the Thompson distance is ``log(alpha)`` and the
    Frobenius bound is attained exactly.
    """
    if not (a > 0 and b > 0):
        raise ValueError("a and b must be positive")
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    if not a / b > alpha ** 2:
        raise ValueError(f"need a/b > alpha**2, got a/b = {a / b}, alpha**2 = {alpha ** 2}")
    return np.diag([float(a), float(b)]), np.diag([a / alpha, alpha * b])


@dataclass(frozen=True)
class TrialSpec:
    n: int
    seed: int
    family: str
    d_target: float = 0.0
    cond_target: float = 1.0

    def generate(self):
        """Build the ``(X, Y)`` pair for this trial."""
        rng = _rng(self.seed)
        if self.family == "random_pd":
            x = gen_random_pd(self.n, None, self.cond_target, rng=rng)
            y = gen_random_pd(self.n, None, self.cond_target, rng=rng)
        elif self.family == "fixed_distance":
            x = gen_random_pd(self.n, None, self.cond_target, rng=rng)
            y = gen_pair_at_distance(x, self.d_target, None, rng=rng)
        elif self.family == "tight_diag":
            alpha = math.exp(self.d_target) if self.d_target > 0 else 1.0 + rng.uniform(1e-3, 1.0)
            b = 10.0 ** rng.uniform(-1.0, 1.0)
            a = b * alpha ** 2 * (1.0 + rng.uniform(0.05, self.cond_target + 0.05))
            x, y = tight_family(a, b, alpha)
        elif self.family == "commuting_diag":
            q = random_rotation(self.n, rng)
            sx = log_uniform_spectrum(self.n, self.cond_target, rng)
            sy = log_uniform_spectrum(self.n, self.cond_target, rng)
            x = sym_matrix((q * sx) @ q.T)
            y = sym_matrix((q * sy) @ q.T)
        else:
            raise ValueError(f"unknown family {self.family!r}")
        return x, y


@dataclass
class SweepConfig:
    """Parameters of a sweep.

    Trial ``i`` uses family ``families[i % len(families)]``, dimension
    ``n_list[(i // len(families)) % len(n_list)]``, target distance
    ``d_grid[i % len(d_grid)]`` and a log-uniform condition number in
    ``[1, cond_max]`` drawn from its own stream.
    """

    trials: int = 100
    n_list: list = field(default_factory=lambda: [2, 3, 4])
    p_list: list = field(default_factory=lambda: [1.0, 2.0, math.inf])
    families: list = field(default_factory=lambda: ["random_pd"])
    d_grid: list = field(default_factory=lambda: [0.5])
    cond_max: float = 1e4
    seed: int = 0
    output: str | None = None
    workers: int = 1

    def validate(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError("trials must be a positive integer")
        for name in ("n_list", "p_list", "families", "d_grid"):
            if not getattr(self, name):
                raise ConfigError(f"{name} must be non-empty")
        if any(int(n) != n or n < 1 for n in self.n_list):
            raise ConfigError("n_list entries must be positive integers")
        try:
            self.p_list = [schatten_order(p) for p in self.p_list]
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        bad = [f for f in self.families if f not in FAMILIES]
        if bad:
            raise ConfigError(f"unknown families {bad}; choose from {FAMILIES}")
        if any(d < 0 for d in self.d_grid):
            raise ConfigError("d_grid entries must be nonnegative")
        if self.cond_max < 1:
            raise ConfigError("cond_max must be >= 1")
        if self.seed < 0 or self.workers < 1:
            raise ConfigError("seed must be >= 0 and workers >= 1")
        return self

    def trial(self, i):
        family = self.families[i % len(self.families)]
        n = int(self.n_list[(i // len(self.families)) % len(self.n_list)])
        seed = trial_seed(self.seed, i)
        cond = math.exp(np.random.default_rng([seed, 1]).uniform(0.0, math.log(self.cond_max)))
        if family == "tight_diag":
            n = 2
        return TrialSpec(n, seed, family, float(self.d_grid[i % len(self.d_grid)]), cond)

    def describe(self):
        return (
            f"trials={self.trials} n_list={list(self.n_list)} "
            f"p_list={[format_order(p) for p in self.p_list]} "
            f"families={list(self.families)} d_grid={list(self.d_grid)} "
            f"cond_max={self.cond_max} seed={self.seed}"
        )


_LIST_KEYS = {"n_list": int, "p_list": str, "families": str, "d_grid": float}
_SCALAR_KEYS = {"trials": int, "cond_max": float, "seed": int, "output": str, "workers": int}


def parse_config(text):
    """Parse line-oriented ``key = value`` text into a validated SweepConfig.

    List values are comma separated. Unknown keys are errors.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = (s.strip() for s in line.partition("="))
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        try:
            if key in _LIST_KEYS:
                items = [v.strip() for v in value.split(",") if v.strip()]
                values[key] = [_LIST_KEYS[key](v) for v in items]
            elif key in _SCALAR_KEYS:
                values[key] = _SCALAR_KEYS[key](value)
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
    return SweepConfig(**values).validate()


def run_trial(spec, orders):
    """Audit one trial; returns its list of :class:`BoundReport`."""
    x, y = spec.generate()
    try:
        return audit_pair(x, y, orders)
    except NotPositiveDefinite as exc:
        # Generators only emit PD matrices; reaching this is a bug.
        raise RuntimeError(f"generator produced a non-PD matrix for {spec}: {exc}") from exc


def _run_chunk(args):
    specs, orders = args
    return [(spec, run_trial(spec, orders)) for spec in specs]


@dataclass
class SweepResult:
    header: list
    rows: list
    summary: dict

    def csv_text(self):
        buf = io.StringIO()
        for line in self.header:
            buf.write(f"# {line}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(self.rows)
        return buf.getvalue()


def run_sweep(config):
    """Run every trial of ``config`` and collect rows and a summary.

    When ``config.output`` is set the CSV is written there. Rows are in
    ``(trial index, p)`` order whatever the number of workers.
    """
    config.validate()
    specs = [config.trial(i) for i in range(config.trials)]
    orders = config.p_list
    if config.workers > 1:
        size = -(-len(specs) // config.workers)
        chunks = [specs[k:k + size] for k in range(0, len(specs), size)]
        with ProcessPoolExecutor(config.workers) as pool:
            results = [r for chunk in pool.map(_run_chunk, [(c, orders) for c in chunks]) for r in chunk]
    else:
        results = [(spec, run_trial(spec, orders)) for spec in specs]

    rows = []
    counters = {k: 0 for k in ("t1", "t2", "t3", "frob", "corrected", "lemma1", "lemma2")}
    ratios = {"ratio_t3": [], "ratio_frob": []}
    trials_with = {"t2": 0, "lemma1": 0, "lemma2": 0, "corrected": 0}
    d_errors = []
    for spec, reports in results:
        for name in trials_with:
            if not all(reports[0].per_index_flags[name]):
                trials_with[name] += 1
        if spec.family == "fixed_distance":
            d_errors.append(abs(reports[0].d - spec.d_target))
        for rep in reports:
            rows.append(rep.csv_row(spec.seed, spec.family))
            for name in ("t1", "t3", "frob"):
                if name in rep.flags and not rep.flags[name]:
                    counters[name] += 1
            for name in ("t2", "corrected", "lemma1", "lemma2"):
                if not all(rep.per_index_flags[name]):
                    counters[name] += 1
            ratios["ratio_t3"].append(rep.ratio_t3)
            if rep.frob is not None:
                ratios["ratio_frob"].append(rep.ratio_frob)

    summary = {
        "trials": config.trials,
        "rows": len(rows),
        "violations": counters,
        "trials_with_index_violation": trials_with,
        "quantiles": {k: _quantiles(v) for k, v in ratios.items() if v},
        "max_d_error": max(d_errors) if d_errors else None,
    }
    header = [
        f"thompson-schatten {__version__}",
        f"config: {config.describe()}",
        f"generated: {time.strftime('%Y-%m-%dT%H:%M:%S')}",
    ]
    result = SweepResult(header, rows, summary)
    if config.output:
        with open(config.output, "w", newline="") as fh:
            fh.write(result.csv_text())
    return result


def _quantiles(values):
    v = sorted(values)
    k = len(v)
    median = v[k // 2] if k % 2 else 0.5 * (v[k // 2 - 1] + v[k // 2])
    return {"min": v[0], "median": median, "max": v[-1]}


def format_summary(summary):
    """Aligned text block for the sweep summary."""
    lines = [f"{'trials:':<28}{summary['trials']}", f"{'rows:':<28}{summary['rows']}"]
    lines.append("violations (rows):")
    for name, count in summary["violations"].items():
        lines.append(f"  {name + ':':<26}{count}")
    lines.append("trials with per-index envelope violations:")
    for name, count in summary["trials_with_index_violation"].items():
        lines.append(f"  {name + ':':<26}{count}")
    for name, q in summary["quantiles"].items():
        lines.append(f"{name}: min {q['min']:.9f} max {q['max']:.9f} median {q['median']:.9f}")
    if summary["max_d_error"] is not None:
        lines.append(f"{'max |d - d_target|:':<28}{summary['max_d_error']:.3e}")
    return "\n".join(lines)
