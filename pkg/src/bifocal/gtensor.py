"""Bifocal Grassmann tensors (generalized fundamental matrices).

For a profile (alpha1, alpha2) with s_j = h_j - alpha_j the tensor is the
binom(h2+1, s2+1) × binom(h1+1, s1+1) matrix ``F`` whose entry at row J, column I
is ``eps(I, J) * det[A_I | B_J]``.  Here A_I is A^T with the columns in I deleted
(likewise B_J) and ``eps`` is the sign of the permutation (I, J', I^c, J'^c) of
1..h1+h2+2, where J' is J shifted past the h1+1 labels of the first view.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .camera import (ProjectionPair, grass_system, random_full_rank,
                     random_int_matrix)
from .errors import GenerationError, ProfileError, ShapeError
from .exterior import MultiIndex, complement, multiindices, perm_sign, plucker
from .ratmat import RatMat, Subspace, as_ratmat, det, rank_of


@dataclass(frozen=True)
class Profile:
    alpha1: int
    alpha2: int
    s1: int
    s2: int

    @classmethod
    def for_dims(cls, k: int, h1: int, h2: int, alpha1: int, alpha2: int) -> Profile:
        if alpha1 + alpha2 != k + 1:
            raise ProfileError(f"alpha1 + alpha2 = {alpha1 + alpha2}, expected k + 1 = {k + 1}")
        if not (1 <= alpha1 <= h1 and 1 <= alpha2 <= h2):
            raise ProfileError(f"need 1 <= alpha_j <= h_j; got ({alpha1}, {alpha2}) for h = ({h1}, {h2})")
        return cls(alpha1, alpha2, h1 - alpha1, h2 - alpha2)

    @property
    def i(self) -> int:
        return self.s1 + self.s2 + 2


def admissible_profiles(k: int, h1: int, h2: int) -> list[Profile]:
    return [Profile.for_dims(k, h1, h2, a1, k + 1 - a1)
            for a1 in range(1, h1 + 1) if 1 <= k + 1 - a1 <= h2]


def expected_rank(profile: Profile) -> int:
    return comb(profile.s1 + profile.s2 + 2, profile.s1 + 1)


@dataclass(frozen=True)
class GrassmannTensor:
    k: int
    h1: int
    h2: int
    profile: Profile
    row_labels: tuple[MultiIndex, ...]
    col_labels: tuple[MultiIndex, ...]
    F: RatMat

    def with_matrix(self, F: RatMat) -> GrassmannTensor:
        if F.shape != self.F.shape:
            raise ShapeError("replacement matrix has the wrong shape")
        return GrassmannTensor(self.k, self.h1, self.h2, self.profile,
                               self.row_labels, self.col_labels, F)


def tensor_entry_sign(I: MultiIndex, J: MultiIndex) -> int:
    n1 = I.n
    shift = tuple(j + n1 for j in J)
    shift_c = tuple(j + n1 for j in complement(J))
    return perm_sign(I.indices + shift, complement(I).indices + shift_c)


def build_tensor(pair: ProjectionPair, profile: Profile) -> GrassmannTensor:
    k, h1, h2 = pair.dims
    profile = Profile.for_dims(k, h1, h2, profile.alpha1, profile.alpha2)
    rows = multiindices(h2 + 1, profile.s2 + 1)
    cols = multiindices(h1 + 1, profile.s1 + 1)
    M1, M2 = pair.M1, pair.M2
    data = []
    for J in rows:
        b_cols = M2.submatrix(None, complement(J).zero_based())
        row = []
        for I in cols:
            block = M1.submatrix(None, complement(I).zero_based()).hstack(b_cols)
            row.append(tensor_entry_sign(I, J) * det(block))
        data.append(tuple(row))
    F = RatMat._raw(tuple(data), len(rows), len(cols))
    return GrassmannTensor(k, h1, h2, profile, rows, cols, F)


def _generators(S, rows: int) -> RatMat:
    m = S.basis if isinstance(S, Subspace) else as_ratmat(S)
    if m.rows != rows:
        raise ShapeError(f"generator matrix has {m.rows} rows, expected {rows}")
    return m


def evaluate(T: GrassmannTensor, S1, S2) -> Fraction:
    """The bilinear form sum F[J, I] p1[I] p2[J] on Plücker coordinates."""
    S1 = _generators(S1, T.h1 + 1)
    S2 = _generators(S2, T.h2 + 1)
    if S1.cols != T.profile.s1 + 1 or S2.cols != T.profile.s2 + 1:
        raise ShapeError("subspace dimensions do not match the profile")
    p1 = plucker(S1).coords
    p2 = plucker(S2).coords
    F = T.F
    return sum((p2[r] * sum((F[r, c] * p1[c] for c in range(F.cols) if p1[c]), Fraction(0))
                for r in range(F.rows) if p2[r]), Fraction(0))


def system_determinant(pair: ProjectionPair, S1, S2) -> Fraction:
    """det [[A, S1, 0], [B, 0, S2]] with columns ordered (X, v1, v2)."""
    S1 = _generators(S1, pair.h1 + 1)
    S2 = _generators(S2, pair.h2 + 1)
    m = grass_system(pair, S1, S2)
    if m.rows != m.cols:
        raise ShapeError(f"system matrix is {m.shape}; dimensions must satisfy s1 + s2 + 2 = i")
    return det(m)


def oracle_sign(k: int, h1: int, h2: int) -> int:
    """The constant c with system_determinant = c * evaluate.

    Laplace expansion of the system matrix along its last i columns gives
    (-1)^(i (h1 + h2 + 3)) once the tensor signs are factored out.
    """
    i = h1 + h2 - k + 1
    return -1 if (i * (h1 + h2 + 3)) % 2 else 1


def proportionality(a: RatMat, b: RatMat) -> Fraction | None:
    """The scalar c with a = c * b, or None when no such nonzero scalar exists.

    The candidate is the ratio of the first nonzero entries of the two matrices.
    """
    if a.shape != b.shape:
        return None
    ea, eb = a.entries(), b.entries()
    pos = next((n for n, x in enumerate(eb) if x), None)
    if pos is None or not ea[pos]:
        return None
    c = ea[pos] / eb[pos]
    return c if all(x == c * y for x, y in zip(ea, eb)) else None


def random_generators(rng, rows: int, cols: int, bound: int = 9) -> RatMat:
    """Full-column-rank integer generator matrix for a random subspace."""
    return random_full_rank(rng, rows, cols, bound)


def corresponding_generators(pair: ProjectionPair, profile: Profile, rng,
                             bound: int = 9) -> tuple[RatMat, RatMat]:
    """Generators of S1, S2 that both contain the image of a random point X."""
    for _ in range(200):
        X = random_int_matrix(rng, pair.k + 1, 1, bound)
        x1, x2 = pair.A @ X, pair.B @ X
        if x1.is_zero() or x2.is_zero():
            continue
        S1 = x1.hstack(random_int_matrix(rng, pair.h1 + 1, profile.s1, bound))
        S2 = x2.hstack(random_int_matrix(rng, pair.h2 + 1, profile.s2, bound))
        if rank_of(S1) == S1.cols and rank_of(S2) == S2.cols:
            return S1, S2
    raise GenerationError("could not build corresponding subspaces")
