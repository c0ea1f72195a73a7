"""Canonical form of [M1 | M2], the big group action and the rank-one decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .camera import ProjectionPair, canonical_pair, make_pair
from .errors import ConsistencyError, InvertibilityError
from .exterior import complement, compound, hodge_tensor, multiindices, perm_sign
from .gtensor import GrassmannTensor, Profile, build_tensor
from .ratmat import RatMat, columnspace_intersection, det, inverse, left_inverse, rank_of


@dataclass(frozen=True)
class CanonicalReduction:
    G: RatMat
    K1: RatMat
    K2: RatMat
    detG: Fraction
    canonical: RatMat


def canonical_block(k: int, h1: int, h2: int) -> RatMat:
    """[[I_i, 0, I_i, 0], [0, I_{h1+1-i}, 0, 0], [0, 0, 0, I_{h2+1-i}]]."""
    c = canonical_pair(k, h1, h2)
    return c.M1.hstack(c.M2)


def _extend(base: RatMat, candidates: RatMat, target: int) -> RatMat:
    # greedy: keep each candidate column that raises the rank
    out = base
    for j in range(candidates.cols):
        if out.cols == target:
            break
        trial = out.hstack(candidates.submatrix(None, [j]))
        if rank_of(trial) == trial.cols:
            out = trial
    return out


def _unimodular(frame: RatMat, M: RatMat) -> tuple[RatMat, RatMat]:
    """Solve M K = frame, then rescale the last frame column so det K = 1."""
    K = left_inverse(M) @ frame
    d = det(K)
    last = frame.cols - 1
    scale = [Fraction(1)] * frame.cols
    scale[last] = 1 / d
    S = RatMat([[scale[a] if a == b else 0 for b in range(frame.cols)] for a in range(frame.cols)])
    return frame @ S, K @ S


def reduce_to_canonical(pair: ProjectionPair) -> CanonicalReduction:
    """Find (G, K1, K2) with G [M1 | M2] blockdiag(K1, K2) in canonical form.

    The intersection basis v comes first, each column space is completed greedily
    from the columns of M_j, and G inverts the resulting basis of Q^{k+1}.  The
    last completing column in each view is rescaled so that det K_j = 1.
    """
    k, h1, h2 = pair.dims
    M1, M2 = pair.M1, pair.M2
    v = columnspace_intersection(M1, M2).basis
    frame1, K1 = _unimodular(_extend(v, M1, h1 + 1), M1)
    frame2, K2 = _unimodular(_extend(v, M2, h2 + 1), M2)
    frame = frame1.hstack(frame2.submatrix(None, range(pair.i, h2 + 1)))
    G = inverse(frame)
    canonical = canonical_block(k, h1, h2)
    red = CanonicalReduction(G, K1, K2, det(G), canonical)
    if not reduction_holds(pair, red):
        raise ConsistencyError("canonical reduction identity failed")
    return red


def reduction_holds(pair: ProjectionPair, red: CanonicalReduction) -> bool:
    lhs = red.G @ pair.M1.hstack(pair.M2) @ RatMat.block_diag(red.K1, red.K2)
    return lhs == canonical_block(*pair.dims)


def _require_invertible(*mats: RatMat) -> None:
    for m in mats:
        if m.rows != m.cols or det(m) == 0:
            raise InvertibilityError("group element is not invertible")


def act_big_group(pair: ProjectionPair, G: RatMat, H1: RatMat, H2: RatMat) -> ProjectionPair:
    """[M1 | M2] -> [G M1 H1 | G M2 H2], i.e. A -> H1^T A G^T and B -> H2^T B G^T."""
    _require_invertible(G, H1, H2)
    return make_pair(H1.T @ pair.A @ G.T, H2.T @ pair.B @ G.T)


def transform_tensor(T: GrassmannTensor, K1: RatMat, K2: RatMat, detG,
                     inverse_direction: bool = False) -> GrassmannTensor:
    """Move a tensor along a change of frame (G, K1, K2).

    Forward: F = (det G det K1 det K2)^{-1} Λ^{s2+1}K2 · F_c · (Λ^{s1+1}K1)^T.
    Inverse: F_c = det G det K1 det K2 · Λ^{s2+1}K2^{-1} · F · (Λ^{s1+1}K1^{-1})^T.
    """
    _require_invertible(K1, K2)
    detG = Fraction(detG)
    if detG == 0:
        raise InvertibilityError("det G must be nonzero")
    r1, r2 = T.profile.s1 + 1, T.profile.s2 + 1
    factor = detG * det(K1) * det(K2)
    if inverse_direction:
        F = compound(inverse(K2), r2) @ T.F @ compound(inverse(K1), r1).T
        return T.with_matrix(F.scale(factor))
    F = compound(K2, r2) @ T.F @ compound(K1, r1).T
    return T.with_matrix(F.scale(1 / factor))


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    scalar: Fraction
    terms: tuple[tuple[tuple[Fraction, ...], tuple[Fraction, ...]], ...]
    sign: int = 1

    def reassemble(self) -> RatMat:
        """scalar * sum_t Q_t P_t^T, laid out like the tensor (rows J, cols I)."""
        P0, Q0 = self.terms[0]
        acc = [[Fraction(0)] * len(P0) for _ in Q0]
        for P, Q in self.terms:
            for r, q in enumerate(Q):
                if q:
                    row = acc[r]
                    for c, p in enumerate(P):
                        if p:
                            row[c] += q * p
        return RatMat(acc, cols=len(P0)).scale(self.scalar)


@lru_cache(maxsize=None)
def decomposition_sign(k: int, h1: int, h2: int, profile: Profile) -> int:
    """Sign between F_c and the Hodge tensor pushed forward by (tau_1c, tau_2c).

    Calibrated once per configuration on the canonical pair.
    """
    Fc = build_tensor(canonical_pair(k, h1, h2), profile).F
    i = h1 + h2 - k + 1
    I = multiindices(i, profile.s1 + 1)[0]
    J = complement(I)
    row = multiindices(h2 + 1, profile.s2 + 1).index(type(J)(J.indices, h2 + 1))
    col = multiindices(h1 + 1, profile.s1 + 1).index(type(I)(I.indices, h1 + 1))
    entry = Fc[row, col]
    if entry not in (1, -1):
        raise ConsistencyError("canonical tensor entry is not ±1")
    return int(entry) * perm_sign(I, J)


def decompose_from_reduction(dims: tuple[int, int, int], red: CanonicalReduction,
                             profile: Profile) -> Decomposition:
    """Rank-one terms P_I ⊗ Q_{I^c} from any valid reduction witness.

    P_I is column I of Λ^{s1+1}(K1 τ_1c) and Q_{I^c} is the Hodge-signed column I^c
    of Λ^{s2+1}(K2 τ_2c), where K_j τ_jc keeps the first i columns of K_j.
    """
    k, h1, h2 = dims
    i = h1 + h2 - k + 1
    r1, r2 = profile.s1 + 1, profile.s2 + 1
    sign = decomposition_sign(k, h1, h2, profile)
    P_all = compound(red.K1.submatrix(None, range(i)), r1)
    Q_all = compound(red.K2.submatrix(None, range(i)), r2)
    hodge = hodge_tensor(i, r1)
    terms = []
    for a in range(hodge.rows):
        b = next(c for c in range(hodge.cols) if hodge[a, c])
        s = sign * hodge[a, b]
        terms.append((P_all.col(a), tuple(s * x for x in Q_all.col(b))))
    scalar = 1 / (red.detG * det(red.K1) * det(red.K2))
    return Decomposition(scalar, tuple(terms), sign)


def decompose_tensor(pair: ProjectionPair, profile: Profile) -> Decomposition:
    return decompose_from_reduction(pair.dims, reduce_to_canonical(pair), profile)
