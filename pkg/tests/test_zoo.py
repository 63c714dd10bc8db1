import numpy as np
import pytest

from luinv.classes import check_gamma0, check_gamma_mixed3, check_gamma_pure3
from luinv.errors import BadDimensionParity, BadSpec, BadWeightCount
from luinv.states import MixedState, PureState, partial_trace, reduced_family_bipartite
from luinv.zoo import (FAMILIES, FamilySpec, build, gamma0_permutations, householder_rows,
                       permutation_state)

GAMMA0_CASES = [("gamma0-even", m, w) for m in (4, 6) for w in ((0.25, 0.75), (0.2, 0.3, 0.5))] + \
               [("gamma0-odd", m, w) for m in (5, 7) for w in ((0.5, 0.5), (0.4, 0.35, 0.25))]


def assert_valid(state):
    if isinstance(state, PureState):
        assert abs(np.linalg.norm(state.amplitudes) - 1) <= 1e-12
    else:
        m = state.matrix
        assert abs(np.trace(m) - 1) <= 1e-12
        assert np.linalg.norm(m - m.conj().T) <= 1e-12
        assert np.linalg.eigvalsh(m)[0] >= -1e-12


@pytest.mark.parametrize("family,m,w", GAMMA0_CASES)
def test_gamma0_outputs(family, m, w):
    z = build(FamilySpec(family, m, w))
    assert_valid(z)
    assert z.dims == (m, m)
    rep = check_gamma0(z)
    assert rep.verdict and rep.max_commutator <= 1e-12 and rep.min_rank_margin >= 1
    for left in reduced_family_bipartite(z).left:
        assert np.max(np.abs(left - np.eye(m) / m)) <= 1e-12
    assert np.linalg.matrix_rank(z.matrix, tol=1e-10) == len(w)


def test_even_first_branch_pattern():
    # |00> + |12> + |21> + |33> for M = 4
    b = permutation_state(gamma0_permutations(4, 1)[0]) * 2
    assert {tuple(x) for x in np.argwhere(np.abs(b) > 0)} == {(0, 0), (1, 2), (2, 1), (3, 3)}


def test_odd_branch_patterns():
    p1, p2, p3 = gamma0_permutations(5, 3)
    assert p1 == [0, 2, 1, 4, 3]
    assert p2 == [1, 0, 3, 2, 4]
    assert p3 == [4, 3, 2, 1, 0]


def test_even_third_branch_is_orthogonal():
    vecs = [permutation_state(p).reshape(-1) for p in gamma0_permutations(4, 3)]
    g = np.array([[np.vdot(a, b) for b in vecs] for a in vecs])
    assert np.allclose(g, np.eye(3), atol=1e-15)
    # the alternative pattern |11> + |02> + |20> + |33> overlaps the first branch
    alt = np.zeros((4, 4))
    alt[1, 1] = alt[0, 2] = alt[2, 0] = alt[3, 3] = 0.5
    assert abs(np.vdot(vecs[0], alt.reshape(-1))) == pytest.approx(0.25)


@pytest.mark.parametrize("weights", [(0.1, 0.9), (0.3, 0.7), (0.5, 0.5)])
def test_tri_p_pair(weights):
    pair = build(FamilySpec("tri-p-pair", weights=weights))
    for s in pair:
        assert_valid(s)
        assert s.dims == (2, 3, 3)
        rep = check_gamma_pure3(s, 1)
        assert rep.verdict and rep.max_commutator <= 1e-12


def test_tri_p_pair_amplitudes():
    s1, s2 = build(FamilySpec("tri-p-pair", weights=(0.3, 0.7)))
    t = s1.tensor
    assert t[0, 0, 0] == pytest.approx(np.sqrt(0.1))
    assert t[1, 0, 1] == pytest.approx(np.sqrt(0.7 / 3))
    assert np.count_nonzero(np.abs(t) > 0) == 6
    assert s2.tensor[0, 1, 1] == pytest.approx(np.sqrt(0.1))


def test_tri_abc_pair_uniform():
    s1, s2 = build(FamilySpec("tri-abc-pair", weights=(1 / 3, 1 / 3, 1 / 3)))
    for s in (s1, s2):
        assert check_gamma_pure3(s, 1).verdict
        w = np.linalg.eigvalsh(partial_trace(s, (2, 3)))
        assert np.allclose(np.sort(w)[-3:], 1 / 3, atol=1e-12)
        assert np.allclose(np.sort(w)[:-3], 0, atol=1e-12)


@pytest.mark.parametrize("weights", [(0.6, 0.4), (0.5, 0.3, 0.2), (1.0,)])
def test_tri_mixed(weights):
    z = build(FamilySpec("tri-mixed", weights=weights))
    assert_valid(z)
    rep = check_gamma_mixed3(z)
    assert rep.verdict and rep.max_commutator <= 1e-12
    w = np.sort(np.linalg.eigvalsh(z.matrix))[::-1][: len(weights)]
    assert np.allclose(w, sorted(weights, reverse=True), atol=1e-12)


def test_tri_mixed_custom_base():
    z = build(FamilySpec("tri-mixed", weights=(0.6, 0.4), base=(0.5, 0.25, 0.25)))
    assert z.dims == (3, 3, 3) and check_gamma_mixed3(z).verdict


def test_householder_rows():
    first = np.sqrt([0.6, 0.3, 0.1])
    h = householder_rows(first)
    assert np.allclose(h @ h.T, np.eye(3))
    assert np.allclose(h[0], first)
    assert np.allclose(householder_rows(np.array([1.0, 0.0])), np.eye(2))


def test_spec_errors():
    with pytest.raises(BadDimensionParity):
        build(FamilySpec("gamma0-odd", 4, (0.5, 0.5)))
    with pytest.raises(BadDimensionParity):
        build(FamilySpec("gamma0-even", 5, (0.5, 0.5)))
    with pytest.raises(BadDimensionParity):
        build(FamilySpec("gamma0-even", 2, (0.5, 0.5)))
    with pytest.raises(BadWeightCount):
        build(FamilySpec("gamma0-even", 4, (0.25,) * 4))
    with pytest.raises(BadWeightCount):
        build(FamilySpec("tri-p-pair", weights=(0.2, 0.3, 0.5)))
    with pytest.raises(BadSpec):
        FamilySpec("tri-p-pair", weights=(0.3, 0.6))
    with pytest.raises(BadSpec):
        FamilySpec("gamma0-even", 4, (1.0,))
    with pytest.raises(BadSpec):
        FamilySpec("nope")
    assert len(FAMILIES) == 5
