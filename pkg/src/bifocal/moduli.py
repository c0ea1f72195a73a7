"""The tau representative of a pair, the map Psi to G(i, U^dual) and the group action on it.

Sign convention: ``TauPoint`` spans {(f1, f2) : A^T f1 = B^T f2}, the unsigned
pairing.  The kernel of eta-dual for eta = p1 ⊕ (-p2) is then the opposite-sign
space {A^T f1 = -B^T f2}; its intersection with the tau span measures how far a
point sits inside the exceptional locus of Psi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .camera import (ProjectionPair, centers_sum, check_dims, make_pair,
                     random_full_rank, rng_for)
from .errors import (ExceptionalLocusError, GenerationError,
                     IntersectingCentersError, InvertibilityError, RankError,
                     ShapeError)
from .exterior import complement, multiindices
from .gtensor import Profile, build_tensor, proportionality, tensor_entry_sign
from .ratmat import (RatMat, Subspace, annihilator, columnspace_intersection,
                     det, inverse, kernel_basis, span)


@dataclass(frozen=True)
class TauPoint:
    i: int
    tau1: RatMat
    tau2: RatMat

    @property
    def stacked(self) -> RatMat:
        return self.tau1.vstack(self.tau2)


@dataclass(frozen=True)
class CalGElement:
    H: RatMat
    V1: RatMat
    V2: RatMat

    def __post_init__(self):
        for m in (self.H, self.V1, self.V2):
            if m.rows != m.cols:
                raise ShapeError("group element blocks must be square")

    @property
    def delta1(self) -> RatMat:
        return RatMat.block_diag(self.H, self.V1)

    @property
    def delta2(self) -> RatMat:
        return RatMat.block_diag(self.H, self.V2)

    def is_invertible(self) -> bool:
        return all(det(m) != 0 for m in (self.H, self.V1, self.V2))


def identity_element(pair: ProjectionPair) -> CalGElement:
    i = pair.i
    return CalGElement(RatMat.identity(i), RatMat.identity(pair.h1 + 1 - i),
                       RatMat.identity(pair.h2 + 1 - i))


def tau_from_pair(pair: ProjectionPair) -> TauPoint:
    """Canonical basis of {(f1, f2) : A^T f1 = B^T f2}, split into its two blocks."""
    ker = kernel_basis(pair.M1.hstack(-pair.M2)).basis
    n1 = pair.h1 + 1
    return TauPoint(ker.cols, ker.submatrix(range(n1), None),
                    ker.submatrix(range(n1, ker.rows), None))


def _check_tau(pair: ProjectionPair, tau: TauPoint) -> None:
    if tau.tau1.rows != pair.h1 + 1 or tau.tau2.rows != pair.h2 + 1:
        raise ShapeError("tau blocks do not match the pair dimensions")


def excess_dimension(pair: ProjectionPair, tau: TauPoint) -> int:
    """dim(colspan[tau1; tau2] ∩ ker eta-dual), with ker eta-dual = {A^T f1 = -B^T f2}."""
    _check_tau(pair, tau)
    opposite = kernel_basis(pair.M1.hstack(pair.M2)).basis
    return columnspace_intersection(tau.stacked, opposite).dim


def psi(pair: ProjectionPair, tau: TauPoint | None = None) -> Subspace:
    """Psi(pair): the image of the tau span under eta-dual, an i-plane in Q^{k+1}."""
    tau = tau_from_pair(pair) if tau is None else tau
    if excess_dimension(pair, tau):
        raise ExceptionalLocusError("tau meets ker(eta-dual); Psi is undefined here")
    image = span(pair.M1 @ tau.tau1)
    if image.dim != tau.i:
        raise ExceptionalLocusError("Psi image is not i-dimensional")
    return image


def psi_oracle(pair: ProjectionPair) -> Subspace:
    """(C1 + C2)^⊥ computed directly from the centers."""
    return annihilator(centers_sum(pair))


def act_calG(pair: ProjectionPair, g: CalGElement) -> ProjectionPair:
    """Realize g on camera matrices: M_j -> M_j Delta_j^{-1}.

    This sends tau_j to Delta_j tau_j and leaves both centers unchanged.
    """
    if g.H.rows != pair.i or g.V1.rows != pair.h1 + 1 - pair.i or g.V2.rows != pair.h2 + 1 - pair.i:
        raise ShapeError("group element blocks do not match the pair dimensions")
    if not g.is_invertible():
        raise InvertibilityError("group element has a singular block")
    return make_pair(inverse(g.delta1).T @ pair.A, inverse(g.delta2).T @ pair.B)


def check_equivariance(pair: ProjectionPair, g: CalGElement) -> bool:
    return psi(act_calG(pair, g)) == psi(pair)


def stabilizer_member(g: CalGElement) -> bool:
    """True iff H is a nonzero multiple of the identity."""
    H = g.H
    c = H[0, 0]
    return c != 0 and H == RatMat.identity(H.rows).scale(c)


def acted_tensor_ratio(pair: ProjectionPair, g: CalGElement, profile: Profile) -> Fraction | None:
    """Scalar relating the tensor after acting by g to the tensor before, if any."""
    before = build_tensor(pair, profile).F
    after = build_tensor(act_calG(pair, g), profile).F
    return proportionality(after, before)


def random_calG(rng: np.random.Generator, i: int, h1: int, h2: int, bound: int = 9,
                scalar_H: bool = False) -> CalGElement:
    if scalar_H:
        delta = 0
        while not delta:
            delta = int(rng.integers(-bound, bound + 1))
        H = RatMat.identity(i).scale(delta)
    else:
        H = random_full_rank(rng, i, i, bound)
    return CalGElement(H, random_full_rank(rng, h1 + 1 - i, h1 + 1 - i, bound),
                       random_full_rank(rng, h2 + 1 - i, h2 + 1 - i, bound))


def preimage_of_plane(W: Subspace, h1: int, h2: int, seed: int, bound: int = 9) -> ProjectionPair:
    """Build a pair with Psi(pair) = W.

    W^⊥ has dimension k + 1 - i = (k - h1) + (k - h2); a seeded random basis change
    inside W^⊥ splits it into candidate centers C1 and C2, and each camera is a
    seeded random matrix whose rows span C_j^⊥.
    """
    k = W.ambient_dim - 1
    i = check_dims(k, h1, h2)
    if W.dim != i:
        raise ShapeError(f"plane has dimension {W.dim}, expected i = {i}")
    perp = annihilator(W).basis
    rng = rng_for(seed)
    for _ in range(200):
        mix = random_full_rank(rng, perp.cols, perp.cols, bound)
        gens = perp @ mix
        C1 = gens.submatrix(None, range(k - h1))
        C2 = gens.submatrix(None, range(k - h1, gens.cols))
        rows1 = annihilator(span(C1)).basis
        rows2 = annihilator(span(C2)).basis
        A = random_full_rank(rng, h1 + 1, h1 + 1, bound) @ rows1.T
        B = random_full_rank(rng, h2 + 1, h2 + 1, bound) @ rows2.T
        try:
            return make_pair(A, B)
        except (RankError, IntersectingCentersError):
            continue
    raise GenerationError("could not split the plane's annihilator into centers")


def random_plane(k: int, i: int, rng: np.random.Generator, bound: int = 9) -> Subspace:
    return span(random_full_rank(rng, k + 1, i, bound))


def opposite_tau(pair: ProjectionPair) -> TauPoint:
    """A tau chosen inside ker eta-dual; every direction is exceptional."""
    ker = kernel_basis(pair.M1.hstack(pair.M2)).basis
    n1 = pair.h1 + 1
    return TauPoint(ker.cols, ker.submatrix(range(n1), None), ker.submatrix(range(n1, ker.rows), None))


def tau_matches(tau: TauPoint, tau1: RatMat, tau2: RatMat) -> bool:
    """Whether [tau1; tau2] spans the same subspace as ``tau``."""
    return span(tau.stacked) == span(tau1.vstack(tau2))



# ---------------------------------------------------------------------------
# Dimension of the variety of tensors
# ---------------------------------------------------------------------------

def variety_dimension(k: int, h1: int, h2: int) -> int:
    """Projective dimension (k + 1) i - 1 of the variety of tensors of one profile."""
    return (k + 1) * check_dims(k, h1, h2) - 1


def _cofactors(m: RatMat) -> list[list[Fraction]]:
    n = m.rows
    out = []
    for r in range(n):
        rows = [a for a in range(n) if a != r]
        out.append([(-1) ** (r + c) * det(m.submatrix(rows, [b for b in range(n) if b != c]))
                    for c in range(n)])
    return out


def entry_jacobian(pair: ProjectionPair, profile: Profile) -> RatMat:
    """Exact Jacobian of (A, B) -> F at ``pair``.

    Rows follow the tensor entries (row-major over (J, I)); columns follow the
    entries of A then B, row-major.  Each entry is a signed maximal minor, so its
    partial derivative in a matrix entry is the matching signed cofactor.
    """
    k, h1, h2 = pair.dims
    n = k + 1
    M1, M2 = pair.M1, pair.M2
    rows = []
    for J in multiindices(h2 + 1, profile.s2 + 1):
        keep2 = complement(J).zero_based()
        for I in multiindices(h1 + 1, profile.s1 + 1):
            keep1 = complement(I).zero_based()
            block = M1.submatrix(None, keep1).hstack(M2.submatrix(None, keep2))
            eps = tensor_entry_sign(I, J)
            cof = _cofactors(block)
            dA = [[Fraction(0)] * n for _ in range(h1 + 1)]
            dB = [[Fraction(0)] * n for _ in range(h2 + 1)]
            # block column p holds column keep1[p] of A^T, i.e. row keep1[p] of A
            for p, a in enumerate(keep1):
                for x in range(n):
                    dA[a][x] = eps * cof[x][p]
            for q, b in enumerate(keep2):
                for x in range(n):
                    dB[b][x] = eps * cof[x][len(keep1) + q]
            rows.append([v for r in dA for v in r] + [v for r in dB for v in r])
    return RatMat(rows, cols=n * (h1 + h2 + 2))
