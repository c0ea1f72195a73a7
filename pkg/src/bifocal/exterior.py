"""Multi-indices, permutation signs, compound matrices, Hodge star, Plücker coordinates.

Every sign in the package comes from :func:`perm_sign` (parity of the inversion
count).  Multi-indices are 1-based and enumerated in strict lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .errors import DomainError
from .ratmat import RatMat, Subspace, det


@dataclass(frozen=True, order=True)
class MultiIndex:
    indices: tuple[int, ...]
    n: int

    def __post_init__(self):
        idx = self.indices
        if any(a >= b for a, b in zip(idx, idx[1:])) or (idx and (idx[0] < 1 or idx[-1] > self.n)):
            raise DomainError(f"{idx} is not a strictly increasing subset of 1..{self.n}")

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def zero_based(self) -> tuple[int, ...]:
        return tuple(i - 1 for i in self.indices)

    def complement(self) -> MultiIndex:
        return complement(self)


@lru_cache(maxsize=None)
def _lex(n: int, r: int) -> tuple[MultiIndex, ...]:
    return tuple(MultiIndex(c, n) for c in combinations(range(1, n + 1), r))


def multiindices(n: int, r: int) -> tuple[MultiIndex, ...]:
    """All r-subsets of 1..n in lexicographic order."""
    if r < 0 or r > n:
        raise DomainError(f"no {r}-subsets of 1..{n}")
    return _lex(n, r)


@lru_cache(maxsize=None)
def _lex_position(n: int, r: int) -> dict[tuple[int, ...], int]:
    return {m.indices: k for k, m in enumerate(_lex(n, r))}


def lex_position(idx: MultiIndex) -> int:
    return _lex_position(idx.n, len(idx))[idx.indices]


def complement(idx: MultiIndex) -> MultiIndex:
    s = set(idx.indices)
    return MultiIndex(tuple(i for i in range(1, idx.n + 1) if i not in s), idx.n)


def _inversion_parity(seq: Sequence[int]) -> int:
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


def perm_sign(prefix: MultiIndex | Sequence[int], suffix: MultiIndex | Sequence[int]) -> int:
    """Sign of the permutation listing ``prefix`` then ``suffix``.

    The two parts must partition 1..n.
    """
    seq = tuple(prefix) + tuple(suffix)
    if sorted(seq) != list(range(1, len(seq) + 1)):
        raise DomainError(f"{tuple(prefix)} and {tuple(suffix)} do not partition 1..{len(seq)}")
    return _inversion_parity(seq)


@lru_cache(maxsize=None)
def hodge_star_matrix(n: int, r: int) -> RatMat:
    """Matrix of ``*(b_I) = sign(I, I^c) b_{I^c}`` from degree r to degree n-r."""
    src = multiindices(n, r)
    out = [[Fraction(0)] * len(src) for _ in range(comb(n, n - r))]
    pos = _lex_position(n, n - r)
    for col, idx in enumerate(src):
        c = complement(idx)
        out[pos[c.indices]][col] = Fraction(perm_sign(idx, c))
    return RatMat(out, cols=len(src))


@lru_cache(maxsize=None)
def hodge_tensor(i: int, r: int) -> RatMat:
    """Coefficient matrix of ``sum_I E_I ⊗ F_{I^c}`` with ``F_{I^c} = *(E_I)``.

    Rows are the r-subsets of 1..i, columns the (i-r)-subsets, both lex ordered.
    """
    if r < 0 or r > i:
        raise DomainError(f"no degree {r} in an exterior algebra of rank {i}")
    return hodge_star_matrix(i, r).T


def compound(m: RatMat, r: int) -> RatMat:
    """r-th compound matrix: all r×r minors, lex ordered rows and columns."""
    if r < 0 or r > min(m.rows, m.cols):
        raise DomainError(f"compound of order {r} undefined for a {m.shape} matrix")
    rows = list(combinations(range(m.rows), r))
    cols = list(combinations(range(m.cols), r))
    if r == 1:
        return m
    return RatMat._raw(
        tuple(tuple(det(m.submatrix(ri, ci)) for ci in cols) for ri in rows),
        len(rows), len(cols))


@dataclass(frozen=True)
class PluckerVector:
    r: int
    n: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != comb(self.n, self.r):
            raise DomainError("Plücker vector length must be binom(n, r)")

    def as_column(self) -> RatMat:
        return RatMat.column(self.coords)


def plucker_of_matrix(m: RatMat) -> PluckerVector:
    """Maximal minors of an n×r generator matrix, rows chosen in lex order."""
    r = m.cols
    if r == 0:
        raise DomainError("Plücker coordinates of the zero subspace are undefined")
    coords = tuple(det(m.submatrix(rows, None)) for rows in combinations(range(m.rows), r))
    return PluckerVector(r, m.rows, coords)


def plucker(s: Subspace | RatMat) -> PluckerVector:
    basis = s.basis if isinstance(s, Subspace) else s
    return plucker_of_matrix(basis)
