import pytest
from hypothesis import given
from hypothesis import strategies as st

from bifocal.camera import ProjectionPair, canonical_pair, random_pair, rng_for
from bifocal.errors import ExceptionalLocusError, InvertibilityError, ShapeError
from bifocal.gtensor import admissible_profiles, build_tensor
from bifocal.moduli import (CalGElement, TauPoint, act_calG, acted_tensor_ratio,
                            check_equivariance, entry_jacobian, excess_dimension,
                            identity_element, opposite_tau, preimage_of_plane, psi, psi_oracle,
                            random_calG, random_plane, stabilizer_member, tau_from_pair,
                            variety_dimension)
from bifocal.ratmat import RatMat, det, rank_of, span

configs = st.sampled_from([(3, 2, 2), (4, 3, 2), (5, 4, 3), (6, 4, 4)])


@given(configs, st.integers(0, 2**32))
def test_tau_solves_pairing(dims, seed):
    pair = random_pair(*dims, seed=seed)
    tau = tau_from_pair(pair)
    assert tau.i == pair.i
    assert pair.M1 @ tau.tau1 == pair.M2 @ tau.tau2
    assert rank_of(tau.stacked) == pair.i
    assert excess_dimension(pair, tau) == 0


@given(configs, st.integers(0, 2**32))
def test_psi_matches_annihilator_oracle(dims, seed):
    pair = random_pair(*dims, seed=seed)
    W = psi(pair)
    assert W.dim == pair.i
    assert W == psi_oracle(pair)
    # every vector of Psi kills both centers
    assert (W.basis.T @ pair.C1.basis).is_zero() and (W.basis.T @ pair.C2.basis).is_zero()


@given(configs, st.integers(0, 2**32))
def test_equivariance(dims, seed):
    pair = random_pair(*dims, seed=seed)
    g = random_calG(rng_for(seed), pair.i, pair.h1, pair.h2)
    moved = act_calG(pair, g)
    tau, tau_m = tau_from_pair(pair), tau_from_pair(moved)
    assert span(tau_m.stacked) == span(g.delta1.hstack(RatMat.zeros(g.delta1.rows, g.delta2.cols))
                                      .vstack(RatMat.zeros(g.delta2.rows, g.delta1.cols).hstack(g.delta2))
                                      @ tau.stacked)
    assert check_equivariance(pair, g)
    assert moved.C1 == pair.C1 and moved.C2 == pair.C2


@given(configs, st.integers(0, 2**32))
def test_preimage_roundtrip(dims, seed):
    k, h1, h2 = dims
    W = random_plane(k, h1 + h2 - k + 1, rng_for(seed))
    pair = preimage_of_plane(W, h1, h2, seed=seed)
    assert pair.dims == dims and psi(pair) == W


def test_preimage_rejects_wrong_dimension():
    with pytest.raises(ShapeError):
        preimage_of_plane(span(RatMat.identity(6).submatrix(None, [0])), 4, 3, seed=0)


def test_exceptional_tau():
    pair = random_pair(5, 4, 3, seed=4)
    bad = opposite_tau(pair)
    assert excess_dimension(pair, bad) == bad.i > 0
    with pytest.raises(ExceptionalLocusError):
        psi(pair, bad)
    with pytest.raises(ShapeError):
        excess_dimension(pair, TauPoint(1, RatMat.zeros(2, 1), RatMat.zeros(4, 1)))


def test_group_element_validation():
    pair = random_pair(5, 4, 3, seed=4)
    assert act_calG(pair, identity_element(pair)).A == pair.A
    with pytest.raises(ShapeError):
        CalGElement(RatMat([[1, 2]]), RatMat.identity(2), RatMat.identity(1))
    with pytest.raises(InvertibilityError):
        act_calG(pair, CalGElement(RatMat.zeros(3, 3), RatMat.identity(2), RatMat.identity(1)))
    with pytest.raises(ShapeError):
        act_calG(pair, CalGElement(RatMat.identity(2), RatMat.identity(2), RatMat.identity(1)))


def test_stabilizer_membership():
    assert stabilizer_member(CalGElement(RatMat.identity(3).scale(-2), RatMat.identity(2),
                                         RatMat.identity(1)))
    assert not stabilizer_member(CalGElement(RatMat([[1, 1], [0, 1]]), RatMat.identity(1),
                                             RatMat.identity(1)))


@pytest.mark.parametrize("dims", [(3, 2, 2), (5, 4, 3), (6, 4, 4)])
def test_acted_canonical_tensor_ratio_is_det_H(dims):
    """For M_j -> M_j Δ_j^{-1} the canonical tensor is multiplied by det H / (det Δ1 det Δ2).

    This holds for scalar and non-scalar H alike: Λ(Δ2) F_c Λ(Δ1)^T only sees the
    H blocks, where it acts on the Hodge tensor by det H.
    """
    canon = canonical_pair(*dims)
    rng = rng_for(1)
    for scalar in (True, False):
        g = random_calG(rng, canon.i, canon.h1, canon.h2, scalar_H=scalar)
        for profile in admissible_profiles(*dims):
            ratio = acted_tensor_ratio(canon, g, profile)
            assert ratio == det(g.H) / (det(g.delta1) * det(g.delta2))


def test_variety_dimension():
    assert variety_dimension(5, 4, 3) == 17
    assert variety_dimension(3, 2, 2) == 7  # fundamental matrices: 8 - 1


def _difference_jacobian(pair, profile):
    """Exact Jacobian by finite differences of a multilinear map.

    Each entry of F is affine in every single matrix entry, so the forward
    difference with step 1 is the exact partial derivative.
    """
    base = build_tensor(pair, profile).F.entries()
    cols = []
    for which in ("A", "B"):
        M = getattr(pair, which)
        for r in range(M.rows):
            for c in range(M.cols):
                data = M.tolist()
                data[r][c] += 1
                bumped = RatMat(data, cols=M.cols)
                A, B = (bumped, pair.B) if which == "A" else (pair.A, bumped)
                # build_tensor only reads the matrices, so validity of the bumped pair is moot
                moved = ProjectionPair(pair.k, pair.h1, pair.h2, A, B, pair.C1, pair.C2, pair.i)
                cols.append([x - y for x, y in zip(build_tensor(moved, profile).F.entries(), base)])
    return RatMat.from_columns(cols, rows=len(base))


@pytest.mark.parametrize("dims", [(3, 2, 2), (4, 3, 2), (5, 4, 3)])
def test_jacobian_matches_difference_oracle(dims):
    pair = random_pair(*dims, seed=17)
    for profile in admissible_profiles(*dims):
        J = entry_jacobian(pair, profile)
        assert J == _difference_jacobian(pair, profile)
        assert rank_of(J) == variety_dimension(*dims) + 1


@pytest.mark.parametrize("dims", [(3, 2, 2), (5, 4, 3), (6, 4, 4)])
def test_canonical_pair_examples(dims):
    canon = canonical_pair(*dims)
    i = canon.i
    tau = tau_from_pair(canon)
    lead = RatMat.identity(i)
    assert tau.tau1 == lead.vstack(RatMat.zeros(canon.h1 + 1 - i, i))
    assert tau.tau2 == lead.vstack(RatMat.zeros(canon.h2 + 1 - i, i))
    assert excess_dimension(canon, tau) == 0
    assert psi(canon) == span(RatMat.identity(canon.k + 1).submatrix(None, range(i)))
    g = CalGElement(RatMat.identity(i).scale(3), RatMat([[0, 1], [1, 0]]) if canon.h1 + 1 - i == 2
                    else RatMat.identity(canon.h1 + 1 - i).scale(2),
                    RatMat.identity(canon.h2 + 1 - i).scale(-1))
    assert stabilizer_member(g)
    assert span(tau_from_pair(act_calG(canon, g)).stacked) == span(tau.stacked)
    for profile in admissible_profiles(*dims):
        assert acted_tensor_ratio(canon, g, profile) is not None


def test_preimage_of_coordinate_plane_and_fibers():
    canon = canonical_pair(5, 4, 3)
    W = psi(canon)
    other = preimage_of_plane(W, 4, 3, seed=5)
    assert psi(other) == W
    assert span(other.A.T) != span(canon.A.T) or span(other.B.T) != span(canon.B.T)
