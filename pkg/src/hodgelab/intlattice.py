"""Exact integer linear algebra on small dense matrices.

Everything is done with Python ints.  Matrices here are at most about a
hundred rows and columns, so the algorithms are the textbook ones.

Conventions
-----------
* ``hnf`` is the *column* Hermite normal form: ``H = M @ U`` with ``U``
  unimodular, ``H`` lower echelon (column ``k`` has its pivot in row
  ``p_k`` with ``p_0 < p_1 < ...``, zeros above it), pivots positive, every
  entry to the left of a pivot in its row reduced into ``[0, pivot)``, and
  all zero columns moved to the right.
* Vectors are tuples of ints.  A list of vectors is read as the *columns*
  of a matrix when it describes a lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]


class NoIntegerSolution(ValueError):
    pass


class NotUnimodular(ValueError):
    pass


class IntMatrix:
    """Dense row-major integer matrix (immutable)."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = rows

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], nrows: int) -> IntMatrix:
        cols = [tuple(c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise ValueError("column length mismatch")
        return cls([[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def diag(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self._rows

    def columns(self) -> list[Vector]:
        return [tuple(r[j] for r in self._rows) for j in range(self.ncols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_columns(self._rows, self.ncols)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return IntMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows],
                ncols=other.ncols,
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._rows)

    def __mul__(self, k: int) -> IntMatrix:
        return IntMatrix([[k * x for x in r] for r in self._rows], ncols=self.ncols)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("det of a non-square matrix")
        if n == 0:
            return 1
        a = [list(r) for r in self._rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self._rows]

    @classmethod
    def from_json(cls, data: list[list], ncols: int | None = None) -> IntMatrix:
        return cls([[int(x) for x in r] for r in data], ncols=ncols)


def as_matrix(vectors: Sequence[Sequence[int]], dim: int) -> IntMatrix:
    """Matrix whose columns are ``vectors`` (each of length ``dim``)."""
    return IntMatrix.from_columns(vectors, dim)


# -- Hermite normal form ----------------------------------------------------------


def _row_hnf(rows: list[list[int]], ncols: int):
    """Row-style HNF: returns (H, U, pivot columns) with U @ A = H.

    H is upper echelon with positive pivots and entries above each pivot
    reduced into [0, pivot).
    """
    a = [list(r) for r in rows]
    m = len(a)
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            clean = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if not a[r][c]:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        piv = a[r][c]
        for i in range(r):
            q = a[i][c] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        pivots.append(c)
        r += 1
    return a, u, pivots


def hnf_with_transform(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column HNF ``H`` and unimodular ``U`` with ``M @ U == H``."""
    h, u, _ = _row_hnf([list(c) for c in M.columns()], M.nrows)
    H = IntMatrix.from_columns(h, M.nrows) if h else IntMatrix.zeros(M.nrows, 0)
    U = IntMatrix(u, ncols=M.ncols).T if u else IntMatrix.zeros(0, 0)
    return H, U


def hnf(M: IntMatrix) -> IntMatrix:
    return hnf_with_transform(M)[0]


def row_hnf(vectors: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Canonical basis (nonzero rows of the row HNF) of the span of ``vectors``."""
    h, _, pivots = _row_hnf([list(v) for v in vectors], dim)
    return [tuple(r) for r in h[: len(pivots)]]


def rank(M: IntMatrix) -> int:
    return len(_row_hnf([list(r) for r in M.rows], M.ncols)[2])


# -- Smith normal form ------------------------------------------------------------


@dataclass(frozen=True)
class SnfResult:
    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    factors: tuple[int, ...]


def snf(M: IntMatrix) -> SnfResult:
    """Smith normal form ``U @ M @ V == S`` with ``U``, ``V`` unimodular.

    ``factors`` are the ``min(rows, cols)`` diagonal entries of ``S``; they
    are non-negative, each divides the next, and zeros come last.
    """
    m, n = M.shape
    a = [list(r) for r in M.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        piv = a[t][t]
        for i in range(t + 1, m):
            if a[i][t]:
                add_row(i, t, -(a[i][t] // piv))
        for j in range(t + 1, n):
            if a[t][j]:
                add_col(j, t, -(a[t][j] // piv))
        if any(a[i][t] for i in range(t + 1, m)) or any(a[t][j] for j in range(t + 1, n)):
            continue
        bad = next(
            (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % piv),
            None,
        )
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if piv < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    S = IntMatrix(a, ncols=n)
    factors = tuple(a[k][k] for k in range(min(m, n)))
    return SnfResult(S, IntMatrix(U, ncols=m), IntMatrix(V, ncols=n), factors)


# -- solving, kernels, lattices ---------------------------------------------------


def solve_exact(M: IntMatrix, b: Sequence[int]) -> Vector:
    """Integer solution of ``M @ x == b``.

    When ``M`` has full column rank the solution is unique.  Otherwise the
    returned solution is the one with zero coordinates on the free
    directions of the HNF basis ``U`` (``M @ U = H``).
    """
    b = tuple(int(x) for x in b)
    if len(b) != M.nrows:
        raise ValueError("right-hand side length mismatch")
    H, U = hnf_with_transform(M)
    y = [0] * M.ncols
    residual = list(b)
    row = 0
    for k in range(H.ncols):
        while row < H.nrows and H[row, k] == 0:
            if residual[row]:
                raise NoIntegerSolution(f"inconsistent at row {row}")
            row += 1
        if row == H.nrows:
            break
        q, r = divmod(residual[row], H[row, k])
        if r:
            raise NoIntegerSolution(f"non-integral at row {row}")
        y[k] = q
        if q:
            for i in range(row, H.nrows):
                residual[i] -= q * H[i, k]
        row += 1
    if any(residual):
        raise NoIntegerSolution("right-hand side outside the column lattice")
    return U @ y if M.ncols else ()


def kernel_basis(M: IntMatrix) -> list[Vector]:
    """Canonical basis of the saturated lattice ``{x : M @ x == 0}``."""
    H, U = hnf_with_transform(M)
    r = sum(1 for c in H.columns() if any(c))
    vecs = U.columns()[r:]
    return row_hnf(vecs, M.ncols)


def lattice_equal(G1: IntMatrix, G2: IntMatrix) -> bool:
    """Do the column lattices of ``G1`` and ``G2`` coincide?"""
    if G1.nrows != G2.nrows:
        raise ValueError("row counts differ")
    c1 = [c for c in hnf(G1).columns() if any(c)]
    c2 = [c for c in hnf(G2).columns() if any(c)]
    return c1 == c2


def span_equal(vs1: Sequence[Sequence[int]], vs2: Sequence[Sequence[int]], dim: int) -> bool:
    return lattice_equal(as_matrix(vs1, dim), as_matrix(vs2, dim))


def inverse_unimodular(M: IntMatrix) -> IntMatrix:
    """Integer inverse of a square matrix with determinant +-1."""
    if M.nrows != M.ncols:
        raise NotUnimodular("not square")
    H, U = hnf_with_transform(M)
    if H != IntMatrix.identity(M.nrows):
        raise NotUnimodular(f"HNF is not the identity: {H.tolist()}")
    return U


def saturate(vectors: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Canonical basis of ``(span_Q vectors) ∩ Z^dim``."""
    if not vectors:
        return []
    annihilator = kernel_basis(as_matrix(vectors, dim).T)
    if not annihilator:
        return [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    return kernel_basis(IntMatrix(annihilator, ncols=dim))


def mod_span(vectors: Sequence[Sequence[int]], m: int, dim: int) -> list[Vector]:
    """Canonical generators of the span of ``vectors`` in ``(Z/m)^dim``.

    Computed as the row HNF of ``vectors + m*Z^dim``; rows equal to
    ``m * e_i`` are dropped, the rest already have entries in ``[0, m)``.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    rows = [list(v) for v in vectors] + [[m * int(i == j) for j in range(dim)] for i in range(dim)]
    basis = row_hnf(rows, dim)
    return [v for v in basis if any(x % m for x in v)]


def span_equal_mod(vs1, vs2, m: int, dim: int) -> bool:
    return mod_span(vs1, m, dim) == mod_span(vs2, m, dim)


def in_span_mod(v: Sequence[int], vectors, m: int, dim: int) -> bool:
    return mod_span(list(vectors) + [v], m, dim) == mod_span(vectors, m, dim)


def kernel_mod(M: IntMatrix, m: int) -> list[Vector]:
    """Generators of ``{x mod m : M @ x == 0 (mod m)}``, from the SNF of ``M``.

    With ``U M V = S`` the condition becomes ``d_i y_i == 0 (mod m)`` for
    ``y = V^{-1} x``, so ``x = V e_i * (m / gcd(d_i, m))`` generate.
    The result is returned in the canonical form of :func:`mod_span`.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    res = snf(M)
    Vcols = res.V.columns()
    gens = []
    for i, col in enumerate(Vcols):
        d = res.factors[i] if i < len(res.factors) else 0
        step = m // gcd(d, m)
        if step % m:
            gens.append(tuple(step * x for x in col))
    return mod_span(gens, m, M.ncols)
