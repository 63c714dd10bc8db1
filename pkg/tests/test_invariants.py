import numpy as np
import pytest
from conftest import bell, ghz, random_mixed, random_pure

from luinv.errors import BadLabel, FamilyMismatch, WrongArity
from luinv.invariants import (ALL_TAGS, compute_invariants, families_for, invariants_bipartite,
                              invariants_mixed3, invariants_pure3, spectrum_powers)
from luinv.linalg import eig_hermitian
from luinv.states import MixedState, PureState
from luinv.zoo import FamilySpec, build


def test_bell_projector_variant_a():
    inv = invariants_bipartite(bell().density(), "a")
    assert np.allclose(inv.global_powers, [1, 1, 1, 1])
    assert np.allclose(inv.branch_powers[0], [1, 0.5])
    assert inv.family == "a" and inv.weights == pytest.approx([1.0])


def test_maximally_mixed_global():
    inv = invariants_bipartite(MixedState((2, 2), np.eye(4) / 4), "a")
    assert np.allclose(inv.global_powers, [4.0 ** (1 - g) for g in range(1, 5)])


def test_gamma0_zoo_branch_rows():
    z = build(FamilySpec("gamma0-even", 4, (0.3, 0.7)))
    for variant in ("a", "b"):
        inv = invariants_bipartite(z, variant)
        assert np.allclose(inv.weights, [0.7, 0.3], atol=1e-12)
        for row in inv.branch_powers:
            assert np.allclose(row, [1, 1 / 4, 1 / 16, 1 / 64], atol=1e-12)
        assert np.allclose(inv.global_powers, spectrum_powers([0.7, 0.3], 16), atol=1e-12)


def test_pure3_p_family_rows_and_global():
    for p in (0.1, 0.3, 0.5):
        s1, _ = build(FamilySpec("tri-p-pair", weights=(p, 1 - p)))
        inv = invariants_pure3(s1, 1, "left")
        assert inv.family == "c" and inv.pivot == 1
        for row in inv.branch_powers:
            assert np.allclose(row, [1, 1 / 3, 1 / 9], atol=1e-12)
        expect = [p ** g + (1 - p) ** g for g in range(1, 10)]
        assert np.allclose(inv.global_powers, expect, atol=1e-12)


def test_pure3_product_state_global_ones():
    a = np.kron(np.kron([1, 0], [0, 1, 0]), [0.6, 0.8j])
    inv = invariants_pure3(PureState((2, 3, 2), a), 1)
    assert np.allclose(inv.global_powers, 1)


def test_pure3_power_ranges_per_pivot():
    s = random_pure((2, 3, 4), 1)
    expect = {"c": (3, 12), "d": (4, 12), "e": (2, 8), "f": (4, 8), "i": (2, 6), "j": (3, 6)}
    for tag, (alpha, gamma) in expect.items():
        inv = compute_invariants(s, tag)
        assert len(inv.global_powers) == gamma
        assert all(len(r) == alpha for r in inv.branch_powers)
    assert invariants_pure3(s, 2, "right").family == "f"
    with pytest.raises(BadLabel):
        invariants_pure3(s, 5, "left")
    with pytest.raises(FamilyMismatch):
        invariants_pure3(s, 1, "middle")


def test_mixed3_rank_one():
    s1, _ = build(FamilySpec("tri-p-pair", weights=(0.3, 0.7)))
    inv = invariants_mixed3(s1.density(), "g")
    assert np.allclose(inv.global_powers, 1)
    assert len(inv.weights) == 1
    # the inner layer of the single branch is the pivot-1 pure family
    pure = invariants_pure3(s1, 1, "left")
    assert np.allclose(sorted(inv.inner_weights[0]), sorted(pure.weights), atol=1e-12)


def test_mixed3_zoo_values():
    z = build(FamilySpec("tri-mixed", weights=(0.6, 0.4)))
    for variant in ("g", "h"):
        inv = invariants_mixed3(z, variant)
        assert len(inv.global_powers) == 18 and inv.minimal_global == 9
        assert np.allclose(inv.global_powers, spectrum_powers([0.6, 0.4], 18), atol=1e-12)
        for rows in inv.inner_powers:
            for row in rows:
                assert np.allclose(row, [1, 1 / 3, 1 / 9], atol=1e-12)
    assert all(len(r) == 2 for r in invariants_mixed3(z, "h").branch_powers)


def test_dispatch_and_errors():
    assert families_for(bell()) == ("a", "b")
    assert families_for(ghz()) == ("c", "d", "e", "f", "i", "j")
    assert families_for(ghz().density()) == ("g", "h")
    with pytest.raises(FamilyMismatch):
        compute_invariants(bell(), "z")
    with pytest.raises(WrongArity):
        compute_invariants(ghz().density(), "c")
    with pytest.raises(WrongArity):
        invariants_bipartite(ghz(), "a")
    with pytest.raises(WrongArity):
        invariants_mixed3(bell(), "g")
    assert set(ALL_TAGS) == set("abcdefghij")


@pytest.mark.parametrize("seed", range(4))
def test_structural_properties(seed):
    states = [random_mixed((3, 3), 3, seed), random_pure((2, 3, 3), seed),
              random_mixed((2, 2, 3), 2, seed)]
    for s in states:
        for tag in families_for(s):
            inv = compute_invariants(s, tag)
            rows = list(inv.branch_powers)
            for nested in inv.inner_powers or []:
                rows.extend(nested)
            for row in rows:
                assert abs(row[0] - 1) <= 1e-10
                assert all(b <= a + 1e-12 for a, b in zip(row, row[1:]))


def test_global_depends_only_on_spectrum():
    rho = random_mixed((2, 3), 4, 9)
    inv = invariants_bipartite(rho, "a")
    w = eig_hermitian(rho.matrix).eigenvalues
    assert np.allclose(inv.global_powers, spectrum_powers(w, 6), atol=1e-10)
