"""Exact integer linear algebra.

Everything here works on Python ints, so entries can grow without bound.
The matrices that show up in practice are tiny (a handful of rows), which
is why nothing is vectorised.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Sequence, Union

from .errors import InputError

__all__ = [
    "INFINITE",
    "Infinite",
    "ExtendedCount",
    "IntMatrix",
    "SmithForm",
    "smith_normal_form",
    "hermite_normal_form",
    "cokernel_order",
    "lattice_member",
    "integer_kernel",
    "determinant",
    "rank",
    "is_finite",
]


@total_ordering
class Infinite:
    """The count of an infinite set.  Singleton; compares above every int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    __str__ = __repr__

    def __eq__(self, other):
        return isinstance(other, Infinite)

    def __hash__(self):
        return hash("Infinite")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return not isinstance(other, Infinite)

    def __reduce__(self):
        return (Infinite, ())


INFINITE = Infinite()

ExtendedCount = Union[int, Infinite]


def is_finite(value) -> bool:
    return not isinstance(value, Infinite)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise InputError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for e in self.entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise InputError(f"non-integer entry {e!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise InputError("ragged matrix rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> IntMatrix:
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def tolist(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], cols=self.rows
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self.tolist(), other.tolist()
        out = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, cols=other.cols)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise InputError("shape mismatch in addition")
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise InputError("shape mismatch in subtraction")
        return IntMatrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def apply(self, vector: Sequence[int]) -> list:
        if len(vector) != self.cols:
            raise InputError(f"vector of length {len(vector)} for matrix with {self.cols} columns")
        return [
            sum(self.entries[i * self.cols + k] * vector[k] for k in range(self.cols))
            for i in range(self.rows)
        ]

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise InputError("row count mismatch in hstack")
        return IntMatrix.from_rows(
            [self.row(i) + other.row(i) for i in range(self.rows)],
            cols=self.cols + other.cols,
        )

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols


@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` in Smith form.

    ``U_inv`` is the inverse of ``U``; it is accumulated alongside ``U`` so
    coset representatives can be pulled back without a separate inversion.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    invariant_factors: tuple

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _as_matrix(M) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_rows(M)


def smith_normal_form(M) -> SmithForm:
    """Smith normal form with accumulated unimodular transforms.

    Pivoting always picks the nonzero entry of least absolute value in the
    active submatrix, ties going to the lowest row and then lowest column,
    so the output is fully deterministic.
    """
    M = _as_matrix(M)
    m, n = M.rows, M.cols
    A = M.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(i, j, c):
        # row_i += c * row_j
        if c == 0:
            return
        Ai, Aj = A[i], A[j]
        for k in range(n):
            Ai[k] += c * Aj[k]
        Ui_, Uj = U[i], U[j]
        for k in range(m):
            Ui_[k] += c * Uj[k]
        for row in Ui:
            row[j] -= c * row[i]

    def row_swap(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def row_negate(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def col_add(j, k, c):
        # col_j += c * col_k
        if c == 0:
            return
        for row in A:
            row[j] += c * row[k]
        for row in V:
            row[j] += c * row[k]

    def col_swap(j, k):
        if j == k:
            return
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def min_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        return best

    t = 0
    while t < min(m, n):
        found = min_pivot(t)
        if found is None:
            break
        while True:
            _, i, j = found
            row_swap(t, i)
            col_swap(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                found = min_pivot(t)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
            found = min_pivot(t)
        if A[t][t] < 0:
            row_negate(t)
        t += 1

    factors = tuple(A[i][i] for i in range(min(m, n)) if A[i][i] != 0)
    return SmithForm(
        U=IntMatrix.from_rows(U, cols=m),
        S=IntMatrix.from_rows(A, cols=n),
        V=IntMatrix.from_rows(V, cols=n),
        U_inv=IntMatrix.from_rows(Ui, cols=m),
        invariant_factors=factors,
    )


def _echelon_basis(generators: list, dim: int) -> list:
    """Row-echelon basis (positive pivots, reduced above) of the Z-span of ``generators``."""
    rows = [list(g) for g in generators if any(g)]
    basis = []
    col = 0
    while rows and col < dim:
        active = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not active:
            col += 1
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for b in basis:
            q = b[col] // piv[col]
            if q:
                b[:] = [x - q * y for x, y in zip(b, piv)]
        basis.append(piv)
        rows = rest
        col += 1
    return basis


def hermite_normal_form(M) -> IntMatrix:
    """Column-style Hermite form: the columns of the result are an echelon
    basis of the lattice spanned by the columns of ``M``.

    Each basis column has a positive leading entry and every entry in that
    row to its left is reduced into ``[0, pivot)``.
    """
    M = _as_matrix(M)
    basis = _echelon_basis([M.column(j) for j in range(M.cols)], M.rows)
    if not basis:
        return IntMatrix.zeros(M.rows, 0)
    return IntMatrix.from_rows(basis, cols=M.rows).transpose()


def lattice_member(M, b: Sequence[int]) -> bool:
    """True iff ``b`` is an integer combination of the columns of ``M``."""
    M = _as_matrix(M)
    if len(b) != M.rows:
        raise InputError(f"vector has length {len(b)}, matrix has {M.rows} rows")
    H = hermite_normal_form(M)
    r = [int(x) for x in b]
    for j in range(H.cols):
        v = H.column(j)
        c = next(i for i, x in enumerate(v) if x)
        if r[c] % v[c]:
            return False
        q = r[c] // v[c]
        r = [x - q * y for x, y in zip(r, v)]
    return not any(r)


def _relation_block(rows: int, relations: Sequence[int]) -> IntMatrix:
    s = len(relations)
    if s > rows:
        raise InputError(f"{s} relations for a matrix with {rows} rows")
    out = [[0] * s for _ in range(rows)]
    for j, d in enumerate(relations):
        if d <= 0:
            raise InputError(f"relation modulus must be positive, got {d}")
        out[rows - s + j][j] = d
    return IntMatrix.from_rows(out, cols=s)


def stack_relations(M, relations: Sequence[int] = ()) -> IntMatrix:
    """``[M | D]`` where ``D`` puts ``relations[j]`` on the j-th of the last
    ``len(relations)`` rows (the torsion rows)."""
    M = _as_matrix(M)
    if not relations:
        return M
    return M.hstack(_relation_block(M.rows, relations))


def cokernel_order(M, relations: Sequence[int] = ()) -> ExtendedCount:
    """Order of ``Z^rows / (col(M) + relation lattice)``; ``INFINITE`` if the
    quotient has positive free rank."""
    N = stack_relations(M, relations)
    snf = smith_normal_form(N)
    if snf.rank < N.rows:
        return INFINITE
    out = 1
    for d in snf.invariant_factors:
        out *= d
    return out


def integer_kernel(M) -> list:
    """A Z-basis of ``{x in Z^cols : M x = 0}``."""
    M = _as_matrix(M)
    snf = smith_normal_form(M)
    return [snf.V.column(j) for j in range(snf.rank, M.cols)]


def rank(M) -> int:
    return smith_normal_form(_as_matrix(M)).rank


def determinant(M) -> int:
    """Fraction-free Bareiss elimination."""
    M = _as_matrix(M)
    if not M.is_square:
        raise InputError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    A = M.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def matrix_power(M: IntMatrix, k: int) -> IntMatrix:
    if not M.is_square:
        raise InputError("power of a non-square matrix")
    result = IntMatrix.identity(M.rows)
    base = M
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


def vector_is_zero(v: Iterable[int]) -> bool:
    return not any(v)
