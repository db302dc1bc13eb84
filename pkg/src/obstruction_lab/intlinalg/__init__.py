"""Exact integer linear algebra: Smith normal form, solving, kernels.

Matrices are lists of lists of Python ints; vectors are lists.  The
convention here is column form: ``solve(M, b)`` finds integer x with
``M @ x = b``.

A compiled kernel (``_speedups``, built from Cython) is used when it
imported successfully and the input fits comfortably in 64 bits; it
raises OverflowError if an intermediate value could leave the guarded
range, in which case the call transparently reruns on the pure-Python
big-int kernel.  Set ``OBSTRUCTION_LAB_PURE=1`` to force the pure kernel.
Both kernels implement the same elementary-operation schedule and return
bit-identical results.
"""

from __future__ import annotations

import os

from . import _pure

try:  # pragma: no cover - depends on the build environment
    from . import _speedups
except ImportError:  # pragma: no cover
    _speedups = None

if os.environ.get("OBSTRUCTION_LAB_PURE"):
    _speedups = None

BACKEND = "compiled" if _speedups is not None else "pure"
_active = BACKEND

# Inputs beyond this magnitude go straight to the pure kernel.
_COMPILED_INPUT_LIMIT = 1 << 48


def set_backend(name):
    """Select 'compiled', 'pure', or 'auto' (= compiled when available).

    Intended for benchmarks and tests; 'compiled' still falls back to the
    pure kernel on inputs or intermediates outside the 64-bit guard range.
    """
    global _active
    if name == "auto":
        _active = BACKEND
    elif name == "pure":
        _active = "pure"
    elif name == "compiled":
        if _speedups is None:
            raise RuntimeError("compiled kernel is not available")
        _active = "compiled"
    else:
        raise ValueError(name)


def active_backend():
    return _active


def _copy(M):
    return [list(row) for row in M]


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _fits_compiled(M, B):
    for row in M:
        for v in row:
            if abs(v) > _COMPILED_INPUT_LIMIT:
                return False
    if B is not None:
        for row in B:
            for v in row:
                if abs(v) > _COMPILED_INPUT_LIMIT:
                    return False
    return True


def _run_core(M, V, B):
    """Dispatch one in-place reduction; falls back to pure on overflow."""
    if (
        _active == "compiled"
        and _speedups is not None
        and M
        and M[0]
        and _fits_compiled(M, B)
    ):
        saved = (_copy(M), _copy(V) if V is not None else None,
                 _copy(B) if B is not None else None)
        try:
            return _speedups.snf_core(M, V, B)
        except OverflowError:
            M2, V2, B2 = saved
            for dst, src in ((M, M2), (V, V2), (B, B2)):
                if dst is not None:
                    for i in range(len(dst)):
                        dst[i][:] = src[i]
    return _pure.snf_core(M, V, B)


def smith_normal_form(M):
    """Return ``(diag, U, V)`` with ``U @ M @ V`` diagonal.

    ``diag`` has length ``min(rows, cols)``, is nonnegative and satisfies
    the divisibility chain; U and V are unimodular.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    W = _copy(M)
    V = _identity(n)
    U = _identity(m)
    diag = _run_core(W, V, U) if m and n else []
    return diag, U, V


def snf_diagonal(M):
    """Just the invariant factors (no transforms tracked)."""
    m = len(M)
    n = len(M[0]) if m else 0
    if not (m and n):
        return []
    W = _copy(M)
    return _run_core(W, None, None)


def rank(M):
    return sum(1 for d in snf_diagonal(M) if d)


def solve(M, b):
    """One integer solution x of M x = b, or None if none exists."""
    m = len(M)
    n = len(M[0]) if m else 0
    if len(b) != m:
        raise ValueError("rhs length mismatch")
    if n == 0:
        return [] if all(v == 0 for v in b) else None
    if m == 0:
        return [0] * n
    W = _copy(M)
    V = _identity(n)
    B = [[v] for v in b]
    diag = _run_core(W, V, B)
    y = [0] * n
    for i in range(m):
        bi = B[i][0]
        d = diag[i] if i < len(diag) else 0
        if d:
            if bi % d:
                return None
            y[i] = bi // d
        elif bi:
            return None
    return [sum(V[i][j] * y[j] for j in range(n)) for i in range(n)]


def right_kernel(M):
    """Basis (list of column vectors) of the lattice {x : M x = 0}."""
    m = len(M)
    n = len(M[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    W = _copy(M)
    V = _identity(n)
    diag = _run_core(W, V, None)
    basis = []
    for j in range(n):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            basis.append([V[i][j] for i in range(n)])
    return basis


def transpose(M):
    m = len(M)
    n = len(M[0]) if m else 0
    return [[M[i][j] for i in range(m)] for j in range(n)]


def left_kernel(M):
    """Basis (list of row vectors) of {x : x M = 0}."""
    return right_kernel(transpose(M))


def vecmat(x, M):
    n = len(M[0]) if M else 0
    return [sum(x[i] * M[i][j] for i in range(len(x))) for j in range(n)]


def matmul(A, B):
    n = len(B[0]) if B else 0
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(n)]
        for i in range(len(A))
    ]


def solve_left(K, v):
    """Integer u with u K = v (rows K spanning a lattice), or None."""
    return solve(transpose(K), v)


class RowLattice:
    """A sublattice of Z^n held as an integer row-echelon basis.

    Rows are added one at a time; the basis stays in echelon form with
    pivot columns strictly increasing, which makes membership and basis
    extraction cheap.
    """

    def __init__(self, n):
        self.n = n
        self.rows = []  # echelon rows, pivot columns increasing

    def _pivot(self, row):
        for j, v in enumerate(row):
            if v:
                return j
        return None

    def add(self, row0):
        row = list(row0)
        if len(row) != self.n:
            raise ValueError("row length mismatch")
        i = 0
        while True:
            p = self._pivot(row)
            if p is None:
                return
            while i < len(self.rows) and self._pivot(self.rows[i]) < p:
                i += 1
            if i == len(self.rows) or self._pivot(self.rows[i]) > p:
                self.rows.insert(i, row)
                return
            a = self.rows[i][p]
            b = row[p]
            if b % a == 0:
                q = b // a
                row = [x - q * y for x, y in zip(row, self.rows[i])]
            else:
                x, y, g = _pure._xgcd(a, b)
                new_basis = [x * u + y * v for u, v in zip(self.rows[i], row)]
                row = [
                    -(b // g) * u + (a // g) * v
                    for u, v in zip(self.rows[i], row)
                ]
                self.rows[i] = new_basis

    def contains(self, row0):
        row = list(row0)
        for basis_row in self.rows:
            p = self._pivot(basis_row)
            if row[p] == 0:
                continue
            if row[p] % basis_row[p]:
                return False
            q = row[p] // basis_row[p]
            row = [x - q * y for x, y in zip(row, basis_row)]
        return all(v == 0 for v in row)

    def basis(self):
        return [list(r) for r in self.rows]

    @property
    def rank(self):
        return len(self.rows)
