"""Pairs of linear projections P^k -> P^h1, P^h2 and their elementary geometry."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (DegenerateRayError, DimensionError, GenerationError,
                     IntersectingCentersError, RankError, ShapeError,
                     ValidationError)
from .ratmat import (RatMat, Subspace, annihilator, as_ratmat, kernel_basis,
                     rank_of, right_inverse, span, subspace_sum)


@dataclass(frozen=True)
class ProjectionPair:
    k: int
    h1: int
    h2: int
    A: RatMat
    B: RatMat
    C1: Subspace
    C2: Subspace
    i: int

    @property
    def M1(self) -> RatMat:
        return self.A.T

    @property
    def M2(self) -> RatMat:
        return self.B.T

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.k, self.h1, self.h2


def make_pair(A, B) -> ProjectionPair:
    """Validate two projection matrices sharing the source space Q^{k+1}."""
    A, B = as_ratmat(A), as_ratmat(B)
    if A.cols != B.cols:
        raise ShapeError(f"A has {A.cols} columns but B has {B.cols}")
    k, h1, h2 = A.cols - 1, A.rows - 1, B.rows - 1
    if min(h1, h2) < 0 or k <= max(h1, h2):
        raise DimensionError(f"need k > max(h1, h2); got k={k}, h1={h1}, h2={h2}")
    i = h1 + h2 - k + 1
    if i < 1:
        raise DimensionError(f"i = h1 + h2 - k + 1 = {i} must be positive")
    if rank_of(A) != h1 + 1:
        raise RankError("A does not have maximal rank")
    if rank_of(B) != h2 + 1:
        raise RankError("B does not have maximal rank")
    if rank_of(A.T.hstack(B.T)) != k + 1:
        raise IntersectingCentersError("the centers of A and B intersect")
    return ProjectionPair(k, h1, h2, A, B, kernel_basis(A), kernel_basis(B), i)


def check_dims(k: int, h1: int, h2: int) -> int:
    """Validate (k, h1, h2) and return i."""
    if min(h1, h2) < 0 or k <= max(h1, h2) or k > h1 + h2 + 1:
        raise DimensionError(f"need max(h1, h2) < k <= h1 + h2 + 1; got ({k}, {h1}, {h2})")
    return h1 + h2 - k + 1


def canonical_pair(k: int, h1: int, h2: int) -> ProjectionPair:
    """The pair (A_c, B_c) whose stacked transpose is the canonical block form."""
    i = check_dims(k, h1, h2)
    A = RatMat.identity(h1 + 1).hstack(RatMat.zeros(h1 + 1, k - h1))
    rows = [[int(r == c) for c in range(k + 1)] for r in range(i)]
    rows += [[int(c == h1 + 1 + r) for c in range(k + 1)] for r in range(h2 + 1 - i)]
    return make_pair(A, RatMat(rows, cols=k + 1))


def epipole(pair: ProjectionPair, j: int) -> Subspace:
    """Image of the other camera's center in view j."""
    if j == 1:
        return span(pair.A @ pair.C2.basis)
    if j == 2:
        return span(pair.B @ pair.C1.basis)
    raise ValidationError("view index must be 1 or 2")


def centers_sum(pair: ProjectionPair) -> Subspace:
    return subspace_sum(pair.C1, pair.C2)


def quotient_maps(pair: ProjectionPair) -> tuple[RatMat, RatMat, RatMat]:
    """(P, N1, N2) with P = N1 A = N2 B, the projection from C1 + C2.

    Rows of P are the canonical basis of (C1 + C2)^⊥; each N_j is solved through
    a right inverse, which is exact because ker(A_j) lies in ker(P).
    """
    P = annihilator(centers_sum(pair)).basis.T
    N1 = P @ right_inverse(pair.A)
    N2 = P @ right_inverse(pair.B)
    return P, N1, N2


def polar_hyperplane(A, X: Sequence) -> tuple[Fraction, ...]:
    """Dual coordinates A^T A X of the polar hyperplane of the ray through X."""
    A = as_ratmat(A)
    out = (A.T @ (A @ RatMat.column(X))).col(0)
    if not any(out):
        raise DegenerateRayError("X lies in the center; its polar hyperplane is undefined")
    return out


def grass_system(pair: ProjectionPair, S1: RatMat, S2: RatMat) -> RatMat:
    """The block matrix [[A, S1, 0], [B, 0, S2]] acting on (X, v1, v2)."""
    if S1.rows != pair.h1 + 1 or S2.rows != pair.h2 + 1:
        raise ShapeError("subspace generators do not live in the view spaces")
    top = pair.A.hstack(S1, RatMat.zeros(pair.h1 + 1, S2.cols))
    bottom = pair.B.hstack(RatMat.zeros(pair.h2 + 1, S1.cols), S2)
    return top.vstack(bottom)


def _basis(s) -> RatMat:
    return s.basis if isinstance(s, Subspace) else as_ratmat(s)


def corresponding_subspaces(pair: ProjectionPair, S1, S2) -> bool:
    """True iff some X != 0 has A X in S1 and B X in S2.

    Subspaces meeting the epipoles are accepted; the kernel test stays meaningful
    there even though the correspondence is degenerate.
    """
    S1, S2 = _basis(S1), _basis(S2)
    m = grass_system(pair, S1, S2)
    return rank_of(m) < m.cols


# ---------------------------------------------------------------------------
# Seeded generation
# ---------------------------------------------------------------------------

MAX_TRIES = 200


def rng_for(seed: int) -> np.random.Generator:
    """Fresh PCG64 stream for ``seed``; no global state is touched."""
    return np.random.Generator(np.random.PCG64(seed))


def random_int_matrix(rng: np.random.Generator, rows: int, cols: int, bound: int) -> RatMat:
    vals = rng.integers(-bound, bound + 1, size=(rows, cols))
    return RatMat([[int(x) for x in r] for r in vals], cols=cols)


def random_rational(rng: np.random.Generator, bound: int = 9, nonzero: bool = True) -> Fraction:
    while True:
        p = int(rng.integers(-bound, bound + 1))
        q = int(rng.integers(1, bound + 1))
        if p or not nonzero:
            return Fraction(p, q)


def random_pair(k: int, h1: int, h2: int, seed: int, bound: int = 9) -> ProjectionPair:
    """Seeded integer pair, resampled until every pair invariant holds."""
    check_dims(k, h1, h2)
    rng = rng_for(seed)
    for _ in range(MAX_TRIES):
        A = random_int_matrix(rng, h1 + 1, k + 1, bound)
        B = random_int_matrix(rng, h2 + 1, k + 1, bound)
        try:
            return make_pair(A, B)
        except (RankError, IntersectingCentersError):
            continue
    raise GenerationError(f"no valid pair after {MAX_TRIES} draws")


def random_full_rank(rng: np.random.Generator, rows: int, cols: int, bound: int = 9) -> RatMat:
    for _ in range(MAX_TRIES):
        m = random_int_matrix(rng, rows, cols, bound)
        if rank_of(m) == min(rows, cols):
            return m
    raise GenerationError("could not draw a full-rank matrix")
