"""Explicit state families.

``gamma0-even`` / ``gamma0-odd``
    Mixtures of maximally entangled permutation states ``sum_i |i, pi(i)>/sqrt(M)``
    on ``C^M (x) C^M``. Even M: ``pi_1`` fixes 0 and M-1 and swaps (1,2), (3,4), ...;
    ``pi_2`` swaps (0,1), (2,3), ...; ``pi_3`` is the cyclic shift by two.
    Odd M: ``pi_1`` fixes 0 and swaps (1,2), (3,4), ...; ``pi_2`` swaps (0,1),
    (2,3), ... and fixes M-1; ``pi_3`` is the reversal ``i -> M-1-i``.
``tri-p-pair`` / ``tri-abc-pair``
    Two-member families on ``C^K (x) C^3 (x) C^3`` (K = 2 or 3) of the form
    ``sum_i sqrt(w_i) |i> (x) |T_i>`` with ``T_i`` maximally entangled
    permutation states of the 2-3 system.
``tri-mixed``
    Mixtures of mutually orthogonal states ``sum_i c_i |i> (x) |T_i>`` whose
    coefficient vectors are the rows of a Householder reflection built from
    ``sqrt(base)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BadDimensionParity, BadSpec, BadWeightCount, NonOrthogonalBranches
from .states import MixedState, PureState

FAMILIES = ("gamma0-even", "gamma0-odd", "tri-p-pair", "tri-abc-pair", "tri-mixed")

# (j, k) supports of the 2-3 branch states, indexed by the subsystem-1 label.
TRI_TERMS = (
    ((0, 0), (1, 2), (2, 1)),
    ((0, 1), (1, 0), (2, 2)),
    ((0, 2), (1, 1), (2, 0)),
)
TRI_TERMS_PARTNER = (
    ((0, 0), (1, 1), (2, 2)),
    ((0, 1), (1, 2), (2, 0)),
    ((0, 2), (1, 0), (2, 1)),
)

ORTHO_TOL = 1e-12


@dataclass(frozen=True)
class FamilySpec:
    family: str
    dim: int = 3
    weights: tuple[float, ...] = (0.5, 0.5)
    base: Optional[tuple[float, ...]] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadSpec(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        _check_weights(w, allow_single=self.family == "tri-mixed")
        if self.base is not None:
            b = tuple(float(x) for x in self.base)
            object.__setattr__(self, "base", b)
            _check_weights(b, allow_single=False)


def _check_weights(w, allow_single: bool) -> None:
    if not w:
        raise BadWeightCount("no weights given")
    if len(w) == 1 and allow_single:
        if abs(w[0] - 1.0) > ORTHO_TOL:
            raise BadSpec("a single weight must equal 1")
        return
    if any(not 0.0 < x < 1.0 for x in w):
        raise BadSpec(f"weights must lie strictly between 0 and 1: {w}")
    if abs(sum(w) - 1.0) > ORTHO_TOL:
        raise BadSpec(f"weights must sum to 1, got {sum(w)!r}")


def permutation_state(perm) -> np.ndarray:
    """Amplitudes of ``sum_i |i, perm[i]> / sqrt(M)`` as an ``M x M`` matrix."""
    m = len(perm)
    b = np.zeros((m, m), dtype=np.complex128)
    b[np.arange(m), perm] = 1.0 / np.sqrt(m)
    return b


def gamma0_permutations(dim: int, count: int) -> list[list[int]]:
    if dim % 2 == 0:
        if dim < 4:
            raise BadDimensionParity("even family needs M >= 4")
        p1 = list(range(dim))
        for a in range(1, dim - 2, 2):
            p1[a], p1[a + 1] = a + 1, a
        p3 = [(i + 2) % dim for i in range(dim)]
    else:
        if dim < 5:
            raise BadDimensionParity("odd family needs M >= 5")
        p1 = list(range(dim))
        for a in range(1, dim - 1, 2):
            p1[a], p1[a + 1] = a + 1, a
        p3 = [dim - 1 - i for i in range(dim)]
    p2 = list(range(dim))
    for a in range(0, dim - 1, 2):
        p2[a], p2[a + 1] = a + 1, a
    return [p1, p2, p3][:count]


def _assert_orthonormal(vectors) -> None:
    g = np.array([[np.vdot(a, b) for b in vectors] for a in vectors])
    if np.max(np.abs(g - np.eye(len(vectors)))) > ORTHO_TOL:
        raise NonOrthogonalBranches("branch states are not orthonormal")


def _mixture(dims, weights, vectors) -> MixedState:
    rho = sum(w * np.outer(v, v.conj()) for w, v in zip(weights, vectors))
    return MixedState(dims, rho)


def build_gamma0(spec: FamilySpec) -> MixedState:
    """Rank-2 or rank-3 mixture of the parity-matched permutation states."""
    m = spec.dim
    if spec.family == "gamma0-even" and m % 2:
        raise BadDimensionParity(f"gamma0-even needs an even dimension, got {m}")
    if spec.family == "gamma0-odd" and not m % 2:
        raise BadDimensionParity(f"gamma0-odd needs an odd dimension, got {m}")
    if spec.family not in ("gamma0-even", "gamma0-odd"):
        raise BadSpec(f"{spec.family} is not a gamma0 family")
    if len(spec.weights) not in (2, 3):
        raise BadWeightCount("gamma0 families take 2 or 3 weights")
    mats = [permutation_state(p) for p in gamma0_permutations(m, len(spec.weights))]
    vecs = [b.reshape(-1) for b in mats]
    _assert_orthonormal(vecs)
    # Branch marginals are I/M, so they commute trivially; checked anyway.
    for b in mats:
        if np.max(np.abs(b @ b.conj().T - np.eye(m) / m)) > ORTHO_TOL:
            raise BadSpec("branch is not maximally entangled")
    return _mixture((m, m), spec.weights, vecs)


def _tri_state(coeffs, terms) -> np.ndarray:
    k = len(coeffs)
    t = np.zeros((k, 3, 3), dtype=np.complex128)
    for i, c in enumerate(coeffs):
        for j, l in terms[i]:
            t[i, j, l] = c / np.sqrt(3)
    return t.reshape(-1)


def build_tripartite_pair(spec: FamilySpec) -> tuple[PureState, PureState]:
    """Both members of a two-state family, dims ``(len(weights), 3, 3)``."""
    if spec.family == "tri-p-pair":
        if len(spec.weights) != 2:
            raise BadWeightCount("tri-p-pair takes weights (p, 1-p)")
    elif spec.family == "tri-abc-pair":
        if len(spec.weights) != 3:
            raise BadWeightCount("tri-abc-pair takes weights (alpha, beta, gamma)")
    else:
        raise BadSpec(f"{spec.family} is not a tripartite pair family")
    c = np.sqrt(spec.weights)
    dims = (len(c), 3, 3)
    return (PureState(dims, _tri_state(c, TRI_TERMS)),
            PureState(dims, _tri_state(c, TRI_TERMS_PARTNER)))


def householder_rows(first: np.ndarray) -> np.ndarray:
    """Real orthogonal matrix whose first row (and column) is the unit vector ``first``."""
    k = len(first)
    e = np.zeros(k)
    e[0] = 1.0
    v = e - first
    nv = np.linalg.norm(v)
    if nv < 1e-15:
        return np.eye(k)
    v = v / nv
    return np.eye(k) - 2.0 * np.outer(v, v)


def build_tripartite_mixed(spec: FamilySpec) -> MixedState:
    """Mixture of orthogonal branches ``sum_i O[r, i] |i> (x) |T_i>``.

    ``spec.base`` holds the squared coefficients of the first branch; it
    defaults to (0.3, 0.7) for up to two branches and (0.6, 0.3, 0.1) for three.
    """
    if spec.family != "tri-mixed":
        raise BadSpec(f"{spec.family} is not tri-mixed")
    r = len(spec.weights)
    if r > 3:
        raise BadWeightCount("tri-mixed takes 1 to 3 weights")
    base = spec.base or ((0.3, 0.7) if r <= 2 else (0.6, 0.3, 0.1))
    if len(base) < r or len(base) > 3:
        raise BadWeightCount(f"need 2 or 3 base coefficients and at least {r}")
    rows = householder_rows(np.sqrt(base))[:r]
    vecs = [_tri_state(row, TRI_TERMS) for row in rows]
    _assert_orthonormal(vecs)
    return _mixture((len(base), 3, 3), spec.weights, vecs)


def build(spec: FamilySpec):
    """Build whatever the family produces: a MixedState or a pair of PureStates."""
    if spec.family.startswith("gamma0"):
        return build_gamma0(spec)
    if spec.family == "tri-mixed":
        return build_tripartite_mixed(spec)
    return build_tripartite_pair(spec)
