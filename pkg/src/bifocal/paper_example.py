"""The worked example P^5 -> P^4, P^3 with profile (3, 3), as a regression fixture.

All matrices are transcribed verbatim.  ``G_DISPLAYED`` is the printed change of
frame; it carries a sign slip in entry (4, 1), so ``G_CORRECTED`` (the inverse
of the frame built from ``K1`` and ``K2``) is the witness actually used for the
identities.  Both have determinant -1/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .camera import ProjectionPair, canonical_pair, make_pair
from .canon import (CanonicalReduction, canonical_block, decompose_from_reduction,
                    decompose_tensor, decomposition_sign, reduce_to_canonical,
                    reduction_holds, transform_tensor)
from .exterior import compound
from .gtensor import Profile, build_tensor
from .moduli import tau_from_pair, tau_matches
from .ratmat import RatMat, det, inverse

h = Fraction(1, 2)

DIMS = (5, 4, 3)
ALPHAS = (3, 3)

# [A^T | B^T], 6 x 9
AT_BT = RatMat([
    [1, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 1, 0],
    [1, 1, 1, 1, 1, 0, 1, 0, 1],
])

K1 = RatMat([
    [1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0],
    [0, -1, 0, 1, 0],
    [0, 0, 0, 0, 1],
])

K2 = RatMat([
    [0, -1, 0, 1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [1, 0, 0, 0],
])

# [A^T | B^T] blockdiag(K1, K2)
PRECANONICAL = RatMat([
    [1, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 1, 0],
    [0, -1, 0, 1, 0, 0, -1, 0, 1],
    [0, 0, 0, 0, 1, 0, 0, 0, 1],
    [1, 0, 1, 1, 1, 1, 0, 1, 0],
])

G_DISPLAYED = RatMat([
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [h, h, -h, h, -h, h],
    [-h, -h, -h, -h, h, h],
    [h, h, h, h, h, -h],
])

G_CORRECTED = RatMat([
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [-h, h, -h, h, -h, h],
    [-h, -h, -h, -h, h, h],
    [h, h, h, h, h, -h],
])

DET_G = Fraction(-1, 2)

CANONICAL = RatMat([
    [1, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
])

TAU1_T = RatMat([[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, -1, 0], [0, 0, 0]])
TAU2_T = RatMat([[0, -1, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]])

FC_T = RatMat([
    [0, 0, -1, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [-1, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
])

F_T = RatMat([
    [0, 2, 0, 0],
    [2, 0, -2, 0],
    [0, -2, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 2],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [0, 0, 0, 2],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
])


def _e(n: int, *pos: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(a in pos)) for a in range(n))


# (sign, P in Λ^2 of the first view, Q in the second view)
FC_TERMS = (
    (-1, _e(10, 0), _e(4, 2)),
    (1, _e(10, 1), _e(4, 1)),
    (-1, _e(10, 4), _e(4, 0)),
)

# scaled by det(G)^{-1} as a whole
F_TERMS = (
    (-1, (1, 0, -1, 0, 0, 0, 0, 0, 0, 0), (0, 1, 0, 0)),
    (1, _e(10, 1), (-1, 0, 1, 0)),
    (-1, (0, 0, 0, 0, 1, 0, 0, 1, 0, 0), (0, 0, 0, 1)),
)


def paper_pair() -> ProjectionPair:
    return make_pair(AT_BT.submatrix(None, range(5)).T, AT_BT.submatrix(None, range(5, 9)).T)


def paper_profile() -> Profile:
    return Profile.for_dims(*DIMS, *ALPHAS)


def paper_witness() -> CanonicalReduction:
    return CanonicalReduction(G_CORRECTED, K1, K2, det(G_CORRECTED), CANONICAL)


def _terms_match(dec, expected) -> bool:
    """Each computed term P ⊗ Q equals the printed signed term, in order."""
    if len(dec.terms) != len(expected):
        return False
    for (P, Q), (s, P0, Q0) in zip(dec.terms, expected):
        if tuple(P) != tuple(map(Fraction, P0)) or tuple(Q) != tuple(s * Fraction(q) for q in Q0):
            return False
    return True


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ExampleReport:
    checks: list[Check] = field(default_factory=list)
    tensor_sign: int = 1
    decomposition_sign: int = 1
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))


def reproduce() -> ExampleReport:
    """Recompute every displayed matrix of the example and compare exactly."""
    rep = ExampleReport()
    pair = paper_pair()
    profile = paper_profile()
    M = pair.M1.hstack(pair.M2)

    rep.add("pair is valid with i = 3", pair.i == 3)
    rep.add("canonical block form matches the display", canonical_block(*DIMS) == CANONICAL)
    rep.add("[A^T|B^T] blockdiag(K1,K2) matches the display",
            M @ RatMat.block_diag(K1, K2) == PRECANONICAL)
    red = reduce_to_canonical(pair)
    rep.add("computed reduction G [A^T|B^T] K = canonical form", reduction_holds(pair, red),
            f"det G = {red.detG}")
    rep.add("printed witness (K1, K2, corrected G) gives the canonical form",
            reduction_holds(pair, paper_witness()))
    displayed_ok = G_DISPLAYED @ M @ RatMat.block_diag(K1, K2) == CANONICAL
    rep.notes.append("printed G reaches the canonical form: %s (entry (4,1) should be -1/2)"
                     % ("yes" if displayed_ok else "no"))
    rep.add("det(G) = -1/2 (printed G)", det(G_DISPLAYED) == DET_G)
    rep.add("det(G) = -1/2 (corrected G)", det(G_CORRECTED) == DET_G)
    rep.add("corrected G inverts the frame [v, w, w']",
            G_CORRECTED == inverse(PRECANONICAL.submatrix(None, [0, 1, 2, 3, 4, 8])))

    Fc = build_tensor(canonical_pair(*DIMS), profile)
    rep.tensor_sign = 1
    rep.add("F_c^T matches the display", Fc.F.T == FC_T)
    nz = {(Fc.row_labels[r].indices, Fc.col_labels[c].indices, Fc.F[r, c])
          for r in range(Fc.F.rows) for c in range(Fc.F.cols) if Fc.F[r, c]}
    rep.add("F_c has exactly the entries -1,+1,-1 at (3,(1,2)),(2,(1,3)),(1,(2,3))",
            nz == {((3,), (1, 2), -1), ((2,), (1, 3), 1), ((1,), (2, 3), -1)})
    F = build_tensor(pair, profile)
    rep.add("F^T matches the display", F.F.T == F_T)
    rep.add("det(G)^{-1} F_c^T = Λ^2 K1^{-1} F^T (K2^{-1})^T",
            FC_T.scale(1 / DET_G) == compound(inverse(K1), 2) @ F_T @ inverse(K2).T)
    rep.add("transform_tensor(F_c; K1, K2, det G) = F",
            transform_tensor(Fc, K1, K2, DET_G).F == F.F)
    rep.add("transform_tensor with the computed reduction = F",
            transform_tensor(Fc, red.K1, red.K2, red.detG).F == F.F)

    tau = tau_from_pair(pair)
    rep.add("tau blocks span the displayed tau_1^T, tau_2^T", tau_matches(tau, TAU1_T, TAU2_T))
    rep.add("displayed tau blocks are the first i columns of K1, K2",
            K1.submatrix(None, range(3)) == TAU1_T and K2.submatrix(None, range(3)) == TAU2_T)

    rep.decomposition_sign = decomposition_sign(*DIMS, profile)
    cpair = canonical_pair(*DIMS)
    dec_c = decompose_tensor(cpair, profile)
    rep.add("F_c decomposition reproduces the three displayed terms",
            dec_c.scalar == 1 and _terms_match(dec_c, FC_TERMS))
    rep.add("F_c decomposition reassembles F_c", dec_c.reassemble() == Fc.F)
    dec = decompose_from_reduction(DIMS, paper_witness(), profile)
    rep.add("F decomposition (printed witness) reproduces the displayed terms with scalar det(G)^{-1}",
            dec.scalar == 1 / DET_G and _terms_match(dec, F_TERMS))
    rep.add("F decomposition (printed witness) reassembles F", dec.reassemble() == F.F)
    dec_own = decompose_tensor(pair, profile)
    rep.add("F decomposition (computed reduction) reassembles F with 3 terms",
            dec_own.reassemble() == F.F and len(dec_own.terms) == 3)
    return rep
