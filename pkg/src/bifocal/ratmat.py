"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` (always reduced, positive denominator).
Matrices are immutable row-major tuples of Fractions.  Pivoting is deterministic:
within each column the first nonzero entry (scanning rows top to bottom) is used,
so every result is reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import RankError, ShapeError

Rat = Fraction


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if hasattr(x, "__index__"):
        return Fraction(int(x))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational exactly")


def format_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class RatMat:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(rat(x) for x in row) for row in data)
        if cols is None:
            if not data:
                raise ShapeError("cannot infer the column count of an empty matrix")
            cols = len(data[0])
        for row in data:
            if len(row) != cols:
                raise ShapeError("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("RatMat is immutable")

    @classmethod
    def _raw(cls, data: tuple, rows: int, cols: int) -> RatMat:
        # trusted constructor: data is already a tuple of tuples of Fractions
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "_data", data)
        return m

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMat:
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> RatMat:
        one, z = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> RatMat:
        if not columns:
            if rows is None:
                raise ShapeError("need the row count for a matrix without columns")
            return cls._raw(tuple(() for _ in range(rows)), rows, 0)
        if not len(columns[0]):
            return cls._raw((), 0, len(columns))
        return cls(zip(*columns), cols=len(columns))

    @classmethod
    def column(cls, vec: Sequence) -> RatMat:
        return cls([[x] for x in vec], cols=1)

    @classmethod
    def block_diag(cls, *blocks: RatMat) -> RatMat:
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[Fraction(0)] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[r0 + i][c0:c0 + b.cols] = b._data[i]
            r0 += b.rows
            c0 += b.cols
        return cls._raw(tuple(map(tuple, out)), rows, cols)

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def entries(self) -> tuple[Fraction, ...]:
        """Row-major flat tuple of entries."""
        return tuple(x for r in self._data for x in r)

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> RatMat:
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        d = self._data
        return RatMat._raw(tuple(tuple(d[i][j] for j in cols) for i in rows), len(rows), len(cols))

    # -- algebra ----------------------------------------------------------

    @property
    def T(self) -> RatMat:
        if self.rows == 0:
            return RatMat._raw(tuple(() for _ in range(self.cols)), self.cols, 0)
        return RatMat._raw(tuple(zip(*self._data)), self.cols, self.rows)

    def __matmul__(self, other: RatMat) -> RatMat:
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.T._data
        data = tuple(
            tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ocols)
            for r in self._data
        )
        return RatMat._raw(data, self.rows, other.cols)

    def __add__(self, other: RatMat) -> RatMat:
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return RatMat._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows, self.cols)

    def __neg__(self) -> RatMat:
        return self.scale(-1)

    def __sub__(self, other: RatMat) -> RatMat:
        return self + (-other)

    def scale(self, c) -> RatMat:
        c = rat(c)
        return RatMat._raw(tuple(tuple(c * x for x in r) for r in self._data), self.rows, self.cols)

    def hstack(self, *others: RatMat) -> RatMat:
        out = self
        for o in others:
            if o.rows != out.rows:
                raise ShapeError("hstack needs equal row counts")
            out = RatMat._raw(tuple(a + b for a, b in zip(out._data, o._data)), out.rows, out.cols + o.cols)
        return out

    def vstack(self, *others: RatMat) -> RatMat:
        out = self
        for o in others:
            if o.cols != out.cols:
                raise ShapeError("vstack needs equal column counts")
            out = RatMat._raw(out._data + o._data, out.rows + o.rows, out.cols)
        return out

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMat):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rat(x) for x in r) for r in self._data)
        return f"RatMat({self.rows}x{self.cols}: [{body}])"


def as_ratmat(m) -> RatMat:
    return m if isinstance(m, RatMat) else RatMat(m)


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------

def _bareiss_det(a: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (destroys ``a``)."""
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def det(m: RatMat) -> Fraction:
    """Exact determinant.

    Each row is scaled to integers by the lcm of its denominators, the integer
    determinant is taken by Bareiss elimination and the scale divided back out.
    """
    if m.rows != m.cols:
        raise ShapeError(f"determinant of a non-square {m.shape} matrix")
    if m.rows == 0:
        return Fraction(1)
    scale = 1
    rows = []
    for r in m._data:
        d = lcm(*(x.denominator for x in r))
        scale *= d
        rows.append([x.numerator * (d // x.denominator) for x in r])
    return Fraction(_bareiss_det(rows), scale)


def rref(m: RatMat) -> tuple[RatMat, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns."""
    a = [list(r) for r in m._data]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        pr = a[r]
        for i in range(nrows):
            f = a[i][c]
            if i != r and f:
                a[i] = [x - f * y for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
    return RatMat._raw(tuple(map(tuple, a)), nrows, ncols), tuple(pivots)


def rank_of(m: RatMat) -> int:
    return len(rref(m)[1])


def inverse(m: RatMat) -> RatMat:
    if m.rows != m.cols:
        raise ShapeError(f"inverse of a non-square {m.shape} matrix")
    n = m.rows
    red, piv = rref(m.hstack(RatMat.identity(n)))
    if piv[:n] != tuple(range(n)):
        raise RankError("matrix is singular")
    return red.submatrix(range(n), range(n, 2 * n))


def right_inverse(m: RatMat) -> RatMat:
    """A matrix ``R`` with ``m @ R == I``.

    Built from the pivot columns of the row echelon form: those columns of ``m``
    form an invertible square block whose inverse is scattered into the pivot rows.
    """
    _, piv = rref(m)
    if len(piv) != m.rows:
        raise RankError(f"right inverse needs full row rank {m.rows}, got {len(piv)}")
    block_inv = inverse(m.submatrix(None, piv))
    out = [[Fraction(0)] * m.rows for _ in range(m.cols)]
    for k, c in enumerate(piv):
        out[c] = list(block_inv.row(k))
    return RatMat(out, cols=m.rows)


def left_inverse(m: RatMat) -> RatMat:
    """A matrix ``L`` with ``L @ m == I`` (needs full column rank)."""
    return right_inverse(m.T).T


def solve_left(x: RatMat, a: RatMat) -> RatMat:
    """Return ``N`` with ``N @ a == x``; raises if the system is inconsistent."""
    if x.cols != a.cols:
        raise ShapeError(f"cannot solve N @ {a.shape} = {x.shape}")
    # a^T N^T = x^T; free variables are set to zero
    red, piv = rref(a.T.hstack(x.T))
    if piv and piv[-1] >= a.rows:
        raise RankError("rows of x are not in the row space of a")
    out = [[Fraction(0)] * x.rows for _ in range(a.rows)]
    for k, c in enumerate(piv):
        out[c] = list(red.row(k)[a.rows:])
    return RatMat(out, cols=x.rows).T


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n held in canonical form.

    The basis columns are in column-reduced echelon form with unit pivots, so two
    subspaces are equal exactly when their values compare equal.
    """

    ambient_dim: int
    basis: RatMat

    @property
    def dim(self) -> int:
        return self.basis.cols

    def contains(self, vec: Sequence) -> bool:
        v = RatMat.column(vec)
        return rank_of(self.basis.hstack(v)) == self.dim

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.basis!r})"


def span(generators: RatMat) -> Subspace:
    """Canonical subspace spanned by the columns of ``generators``."""
    red, piv = rref(generators.T)
    basis = red.submatrix(range(len(piv)), None).T
    if not piv:
        basis = RatMat._raw(tuple(() for _ in range(generators.rows)), generators.rows, 0)
    return Subspace(generators.rows, basis)


def span_of(vectors: Sequence[Sequence], ambient_dim: int) -> Subspace:
    return span(RatMat.from_columns(list(vectors), rows=ambient_dim))


def kernel_basis(m: RatMat) -> Subspace:
    red, piv = rref(m)
    free = [c for c in range(m.cols) if c not in piv]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(piv):
            v[p] = -red[r, f]
        vecs.append(v)
    return span_of(vecs, m.cols)


def columnspace_intersection(m1: RatMat, m2: RatMat) -> Subspace:
    """colspan(m1) ∩ colspan(m2), read off the kernel of ``[m1 | -m2]``."""
    if m1.rows != m2.rows:
        raise ShapeError("column-space intersection needs equal row counts")
    ker = kernel_basis(m1.hstack(-m2))
    vecs = m1 @ ker.basis.submatrix(range(m1.cols), None) if ker.dim else RatMat.zeros(m1.rows, 0)
    return span(vecs)


def subspace_sum(*spaces: Subspace) -> Subspace:
    out = spaces[0].basis
    for s in spaces[1:]:
        out = out.hstack(s.basis)
    return span(out)


def annihilator(s: Subspace) -> Subspace:
    """Vectors orthogonal (for the standard pairing) to every vector of ``s``."""
    if s.dim == 0:
        return span(RatMat.identity(s.ambient_dim))
    return kernel_basis(s.basis.T)
