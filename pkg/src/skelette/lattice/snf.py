"""Smith normal form with a compiled fast path.

The compiled kernel is used when it was built and the matrix fits in int64;
on overflow the computation is redone with Python integers. Set
``SKELETTE_PURE_PYTHON=1`` to force the Python kernel.
"""

import os
from dataclasses import dataclass

from . import _snf_py
from .matrix import IntMatrix

try:
    if os.environ.get("SKELETTE_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _snf_kernel as _fast
    BACKEND = "compiled"
except ImportError:
    _fast = None
    BACKEND = "python"

_INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self):
        return self.S.diagonal()

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)

    def invariant_factors(self):
        return [d for d in self.diagonal if d]


def _fits(a):
    return all(-_INT64_MAX <= x <= _INT64_MAX for row in a for x in row)


def snf_raw(a, m, n, transforms=True, backend=None):
    """Run a kernel on a list-of-lists matrix; returns (S, U, V) lists."""
    backend = backend or BACKEND
    if backend == "compiled" and _fast is not None and _fits(a):
        try:
            return _fast.snf_lists(a, m, n, transforms)
        except OverflowError:
            pass
    return _snf_py.snf_lists(a, m, n, transforms)


def smith_normal_form(A, backend=None):
    """Return U, S, V with U*A*V = S, S diagonal with d_1 | d_2 | ... >= 0."""
    if not isinstance(A, IntMatrix):
        A = IntMatrix.from_rows(A)
    m, n = A.rows, A.cols
    s, u, v = snf_raw([list(r) for r in A.entries], m, n, True, backend)
    return SmithDecomposition(IntMatrix.from_rows(u, m), IntMatrix.from_rows(s, n),
                              IntMatrix.from_rows(v, n))


def invariant_factors(rows, ncols, backend=None):
    """Nonzero diagonal of the Smith form, without tracking transforms."""
    m = len(rows)
    if m == 0 or ncols == 0:
        return []
    s, _, _ = snf_raw([list(r) for r in rows], m, ncols, False, backend)
    return [s[i][i] for i in range(min(m, ncols)) if s[i][i]]
