"""Plain-text matrix format.

The first non-comment line holds the dimension ``n``; the next ``n`` lines
hold ``n`` decimal numbers each, separated by single spaces. Lines starting
with ``#`` are comments. Writers emit 17 significant digits so that every
float64 round-trips exactly.
"""
import numpy as np

from .errors import ParseError
from .linalg import sym_matrix


def parse_matrix(text, symmetric=True):
    """Parse the text format into an ``(n, n)`` float array.

    Symmetric matrices are passed through :func:`sym_matrix`; set
    ``symmetric=False`` for general square matrices such as the coefficient
    of the fixed-point equation.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty matrix file")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"first line must be the dimension, got {lines[0]!r}") from None
    if n < 1:
        raise ParseError(f"dimension must be positive, got {n}")
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}")
    data = np.empty((n, n))
    for i, row in enumerate(rows):
        fields = row.split()
        if len(fields) != n:
            raise ParseError(f"row {i + 1}: expected {n} entries, found {len(fields)}")
        try:
            data[i] = [float(f) for f in fields]
        except ValueError as exc:
            raise ParseError(f"row {i + 1}: {exc}") from None
    if not np.all(np.isfinite(data)):
        raise ParseError("matrix has non-finite entries")
    if symmetric:
        try:
            return sym_matrix(data)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    return data


def format_matrix(a, comments=()):
    a = np.atleast_2d(np.asarray(a, dtype=float))
    out = [f"# {c}" for c in comments]
    out.append(str(a.shape[0]))
    out.extend(" ".join(f"{v:.17g}" for v in row) for row in a)
    return "\n".join(out) + "\n"


def read_matrix(path, symmetric=True):
    with open(path) as fh:
        return parse_matrix(fh.read(), symmetric=symmetric)


def write_matrix(path, a, comments=()):
    with open(path, "w") as fh:
        fh.write(format_matrix(a, comments))
