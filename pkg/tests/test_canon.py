from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bifocal.camera import canonical_pair, random_full_rank, random_pair, rng_for
from bifocal.canon import (CanonicalReduction, act_big_group, canonical_block, decompose_tensor,
                           decomposition_sign, reduce_to_canonical, reduction_holds,
                           transform_tensor)
from bifocal.errors import InvertibilityError
from bifocal.gtensor import admissible_profiles, build_tensor, expected_rank
from bifocal.ratmat import RatMat, det, inverse, rank_of

configs = st.sampled_from([(3, 2, 2), (4, 3, 2), (5, 4, 3), (6, 4, 4), (4, 2, 3), (5, 3, 4)])


def test_canonical_block_shape():
    c = canonical_block(5, 4, 3)
    assert c.shape == (6, 9)
    assert rank_of(c) == 6
    assert c.submatrix(range(3), range(3)) == RatMat.identity(3)
    assert c.submatrix(range(3), range(5, 8)) == RatMat.identity(3)


@given(configs, st.integers(0, 2**32))
def test_reduction_identity(dims, seed):
    pair = random_pair(*dims, seed=seed)
    red = reduce_to_canonical(pair)
    assert red.G @ pair.M1.hstack(pair.M2) @ RatMat.block_diag(red.K1, red.K2) == red.canonical
    assert det(red.K1) == 1 and det(red.K2) == 1
    assert red.detG == det(red.G)


@given(configs, st.integers(0, 2**32))
def test_transformation_law_both_directions(dims, seed):
    pair = random_pair(*dims, seed=seed)
    red = reduce_to_canonical(pair)
    for profile in admissible_profiles(*dims):
        F = build_tensor(pair, profile)
        Fc = build_tensor(canonical_pair(*dims), profile)
        assert transform_tensor(Fc, red.K1, red.K2, red.detG).F == F.F
        assert transform_tensor(F, red.K1, red.K2, red.detG, inverse_direction=True).F == Fc.F


@given(configs, st.integers(0, 2**32))
def test_law_holds_for_non_unimodular_frames(dims, seed):
    """The determinant factors of K1 and K2 are required, not just det G."""
    pair = random_pair(*dims, seed=seed)
    k, h1, h2 = dims
    rng = rng_for(seed)
    G = random_full_rank(rng, k + 1, k + 1)
    H1 = random_full_rank(rng, h1 + 1, h1 + 1)
    H2 = random_full_rank(rng, h2 + 1, h2 + 1)
    moved = act_big_group(pair, G, H1, H2)
    assert moved.M1 == G @ pair.M1 @ H1
    for profile in admissible_profiles(*dims):
        expected = transform_tensor(build_tensor(pair, profile), inverse(H1), inverse(H2), 1 / det(G))
        assert build_tensor(moved, profile).F == expected.F


@given(configs, st.integers(0, 2**32))
def test_decomposition(dims, seed):
    pair = random_pair(*dims, seed=seed)
    for profile in admissible_profiles(*dims):
        dec = decompose_tensor(pair, profile)
        assert len(dec.terms) == expected_rank(profile)
        assert dec.reassemble() == build_tensor(pair, profile).F
        assert dec.sign in (1, -1)


def test_decomposition_terms_are_independent():
    pair = random_pair(6, 4, 4, seed=9)
    for profile in admissible_profiles(6, 4, 4):
        dec = decompose_tensor(pair, profile)
        P = RatMat.from_columns([t[0] for t in dec.terms])
        Q = RatMat.from_columns([t[1] for t in dec.terms])
        assert rank_of(P) == rank_of(Q) == len(dec.terms)


def test_decomposition_sign_is_stable():
    profile = admissible_profiles(5, 4, 3)[0]
    assert decomposition_sign(5, 4, 3, profile) == -1


def test_reduction_holds_detects_bad_witness():
    pair = random_pair(5, 4, 3, seed=2)
    red = reduce_to_canonical(pair)
    bad = CanonicalReduction(red.G.scale(2), red.K1, red.K2, red.detG * 64, red.canonical)
    assert not reduction_holds(pair, bad)


def test_singular_group_elements_rejected():
    pair = random_pair(3, 2, 2, seed=0)
    T = build_tensor(pair, admissible_profiles(3, 2, 2)[0])
    with pytest.raises(InvertibilityError):
        act_big_group(pair, RatMat.zeros(4, 4), RatMat.identity(3), RatMat.identity(3))
    with pytest.raises(InvertibilityError):
        transform_tensor(T, RatMat.identity(3), RatMat.identity(3), Fraction(0))
    with pytest.raises(InvertibilityError):
        transform_tensor(T, RatMat.zeros(3, 3), RatMat.identity(3), 1)
