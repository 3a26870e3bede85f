"""Exact dense linear algebra over Z/q for prime q.

Matrices are numpy int64 arrays with entries reduced to 0..q-1; all
elimination uses modular inverses (q prime), so ranks and kernels are
exact.  Kernel bases are returned in reduced row-echelon form, which
makes them canonical: recomputing from any generating set of the same
subspace yields the same matrix.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeMismatch


class MatQ:
    """A matrix over Z/q."""

    __slots__ = ("q", "arr")

    def __init__(self, q: int, data):
        self.q = q
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        elif arr.ndim == 0 or (arr.ndim == 2 and arr.size == 0):
            arr = arr.reshape(0, arr.shape[1] if arr.ndim == 2 else 0)
        self.arr = np.mod(arr, q)

    @staticmethod
    def identity(q: int, n: int) -> "MatQ":
        return MatQ(q, np.eye(n, dtype=np.int64))

    @staticmethod
    def zeros(q: int, r: int, c: int) -> "MatQ":
        return MatQ(q, np.zeros((r, c), dtype=np.int64))

    @property
    def nrows(self) -> int:
        return self.arr.shape[0]

    @property
    def ncols(self) -> int:
        return self.arr.shape[1]

    def __matmul__(self, other: "MatQ") -> "MatQ":
        self._same_q(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(
                f"cannot multiply {self.arr.shape} by {other.arr.shape}"
            )
        return MatQ(self.q, (self.arr @ other.arr) % self.q)

    def __add__(self, other: "MatQ") -> "MatQ":
        self._same_q(other)
        if self.arr.shape != other.arr.shape:
            raise ShapeMismatch("shape mismatch in addition")
        return MatQ(self.q, self.arr + other.arr)

    def __sub__(self, other: "MatQ") -> "MatQ":
        self._same_q(other)
        if self.arr.shape != other.arr.shape:
            raise ShapeMismatch("shape mismatch in subtraction")
        return MatQ(self.q, self.arr - other.arr)

    def __eq__(self, other):
        return (
            isinstance(other, MatQ)
            and self.q == other.q
            and self.arr.shape == other.arr.shape
            and bool(np.array_equal(self.arr, other.arr))
        )

    def __hash__(self):
        return hash((self.q, self.arr.shape, self.arr.tobytes()))

    def _same_q(self, other):
        if self.q != other.q:
            raise ShapeMismatch(f"moduli differ: {self.q} vs {other.q}")

    def transpose(self) -> "MatQ":
        return MatQ(self.q, self.arr.T)

    def is_zero(self) -> bool:
        return bool(np.all(self.arr == 0))

    def to_lists(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.arr]

    def __repr__(self):
        return f"MatQ(q={self.q}, {self.arr.shape[0]}x{self.arr.shape[1]})"


def _inv(a: int, q: int) -> int:
    return pow(int(a), q - 2, q)


def rref(m: MatQ) -> tuple[MatQ, tuple[int, ...]]:
    """Reduced row-echelon form and its pivot columns."""
    q = m.q
    a = m.arr.copy()
    nr, nc = a.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = (a[r] * _inv(a[r, c], q)) % q
        rest = np.nonzero(a[:, c])[0]
        rest = rest[rest != r]
        if rest.size:
            a[rest] = (a[rest] - np.outer(a[rest, c], a[r])) % q
        pivots.append(c)
        r += 1
    return MatQ(q, a[:r]), tuple(pivots)


def rank(m: MatQ) -> int:
    return len(rref(m)[1])


def kernel_basis(m: MatQ) -> MatQ:
    """Canonical basis (RREF rows) of the right kernel {v : m v = 0}."""
    q = m.q
    red, pivots = rref(m)
    nc = m.ncols
    free = [c for c in range(nc) if c not in set(pivots)]
    if not free:
        return MatQ(q, np.zeros((0, nc), dtype=np.int64))
    rows = np.zeros((len(free), nc), dtype=np.int64)
    for i, fc in enumerate(free):
        rows[i, fc] = 1
        for r, pc in enumerate(pivots):
            rows[i, pc] = (-red.arr[r, fc]) % q
    return rref(MatQ(q, rows))[0]


def left_kernel(m: MatQ) -> MatQ:
    """Canonical basis of the left kernel {v : v m = 0} (as rows)."""
    return kernel_basis(m.transpose())


def fixed_space(op: MatQ) -> MatQ:
    """Canonical basis of the fixed space ker(op - 1) of a square matrix."""
    if op.nrows != op.ncols:
        raise ShapeMismatch(f"fixed_space needs a square matrix, got {op!r}")
    return kernel_basis(op - MatQ.identity(op.q, op.nrows))


def matpow(m: MatQ, k: int) -> MatQ:
    if m.nrows != m.ncols:
        raise ShapeMismatch("matrix power needs a square matrix")
    out = MatQ.identity(m.q, m.nrows)
    base = m
    while k:
        if k & 1:
            out = out @ base
        base = base @ base
        k >>= 1
    return out


def coordinates_in_rowspace(basis: MatQ, v) -> np.ndarray | None:
    """Coordinates of the row vector v in an RREF basis, or None.

    Reads coefficients off the pivot columns; returns None when v is
    not in the row space.
    """
    q = basis.q
    vv = np.mod(np.asarray(v, dtype=np.int64), q)
    red, pivots = rref(basis)
    if red.nrows != basis.nrows or not (red == basis):
        raise ValueError("basis must be in reduced row-echelon form")
    coords = vv[list(pivots)] if pivots else np.zeros(0, dtype=np.int64)
    recon = coords @ basis.arr % q if basis.nrows else np.zeros_like(vv)
    if not np.array_equal(recon % q, vv):
        return None
    return coords
