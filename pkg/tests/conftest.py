import numpy as np
import pytest
import scipy.linalg

E2 = (np.diag([2.0, 1.0]), np.diag([1.0, 2.0]))
E3 = (np.diag([10.0, 1.0]), np.diag([10.0 / 1.1, 1.1]))


def random_spd(rng, n, cond=100.0):
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    w = np.exp(rng.uniform(0.0, np.log(cond), size=n))
    a = (q * w) @ q.T
    return 0.5 * (a + a.T)


def random_sym(rng, n):
    a = rng.normal(size=(n, n))
    return 0.5 * (a + a.T)


def thompson_oracle(x, y):
    """Distance from the generalized eigenproblem ``x v = lambda y v``."""
    lam = scipy.linalg.eigh(x, y, eigvals_only=True)
    return float(np.max(np.abs(np.log(lam))))


def schatten_oracle(a, p):
    """Schatten norm from singular values."""
    s = np.linalg.svd(a, compute_uv=False)
    return float(np.linalg.norm(s, ord=p))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
