"""Membership tests for the commutation-defined state classes.

``gamma0``: bipartite mixed states whose eigenbranch marginals pairwise commute
on both sides, with every left marginal of full rank.
``gamma1/2/3``: tripartite pure states whose marginal after tracing out the
pivot subsystem (1, 2 or 3) satisfies the ``gamma0``-type conditions.
``gamma``: tripartite mixed states satisfying the two-level conditions on the
outer branches and on the eigenbranches of every ``Tr_1`` branch marginal.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Optional, Sequence

import numpy as np

from .errors import DimensionOrder, WrongArity
from .linalg import eig_hermitian
from .states import (MixedState, PureState, ReducedFamily, as_mixed, mixed3_hierarchy,
                     reduced_family_bipartite, reduced_family_pure3)

COMMUTATOR_TOL = 1e-10
RANK_CUTOFF = 1e-10
DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class MembershipReport:
    """Outcome of a class test.

    ``max_commutator`` is the largest relative commutator norm
    ``||[A, B]||_F / max(1, ||A||_F ||B||_F)`` seen; ``min_rank_margin`` is the
    smallest ``lambda_min / (RANK_CUTOFF * lambda_max)`` over the matrices
    that must be of full rank, so a margin of at least 1 means full rank.
    ``failing_pair`` names the worst commuting pair when that test fails, or
    ``(i, i)`` for the first rank-deficient member. ``degenerate`` is set when
    two branch weights coincide within ``DEGENERACY_TOL``; the eigenbasis, and
    so the verdict, is then not unique.
    """

    verdict: bool
    max_commutator: float
    min_rank_margin: float
    failing_pair: Optional[tuple] = None
    tol: float = COMMUTATOR_TOL
    degenerate: bool = False


def relative_commutator(a: np.ndarray, b: np.ndarray) -> float:
    c = a @ b - b @ a
    return float(np.linalg.norm(c) / max(1.0, np.linalg.norm(a) * np.linalg.norm(b)))


def rank_margin(a: np.ndarray) -> float:
    w = eig_hermitian(a).eigenvalues
    if w[0] <= 0:
        return 0.0
    return float(w[-1] / (RANK_CUTOFF * w[0]))


def has_degenerate_weights(weights, tol: float = DEGENERACY_TOL) -> bool:
    w = np.sort(np.asarray(weights, dtype=float))
    return bool(np.any(np.diff(w) <= tol))


def _report(groups: Sequence[Sequence[tuple[Hashable, np.ndarray]]],
            full_rank: Sequence[tuple[Hashable, np.ndarray]], tol: float,
            degenerate: bool = False) -> MembershipReport:
    worst, worst_pair = 0.0, None
    for group in groups:
        for (la, a), (lb, b) in combinations(group, 2):
            c = relative_commutator(a, b)
            if c > worst:
                worst, worst_pair = c, (la, lb)
    margin, rank_fail = np.inf, None
    for lab, a in full_rank:
        m = rank_margin(a)
        if m < margin:
            margin = m
        if m < 1 and rank_fail is None:
            rank_fail = (lab, lab)
    verdict = worst <= tol and margin >= 1
    failing = None
    if worst > tol:
        failing = worst_pair
    elif rank_fail is not None:
        failing = rank_fail
    return MembershipReport(bool(verdict), float(worst), float(margin), failing, tol, degenerate)


def family_report(family: ReducedFamily, tol: float = COMMUTATOR_TOL) -> MembershipReport:
    """Commutation on both sides plus full rank of every left member."""
    left = list(enumerate(family.left))
    right = list(enumerate(family.right))
    return _report([left, right], left, tol, has_degenerate_weights(family.weights))


def check_gamma0(state, tol: float = COMMUTATOR_TOL) -> MembershipReport:
    rho = as_mixed(state)
    if len(rho.dims) != 2:
        raise WrongArity("check_gamma0 needs a bipartite state")
    return family_report(reduced_family_bipartite(rho), tol)


def check_gamma_pure3(state: PureState, pivot, tol: float = COMMUTATOR_TOL) -> MembershipReport:
    if not isinstance(state, PureState) or len(state.dims) != 3:
        raise WrongArity("check_gamma_pure3 needs a tripartite pure state")
    _, family = reduced_family_pure3(state, pivot)
    return family_report(family, tol)


def check_gamma_mixed3(state, tol: float = COMMUTATOR_TOL) -> MembershipReport:
    """Outer conditions on ``{rho_i}`` and ``{theta_i^23}`` (the latter of full
    rank K), and cross-branch conditions on every ``xi_t^i`` and ``eta_t^i``
    (all pairs, same outer branch included) with each ``xi`` of full rank M.
    """
    rho = as_mixed(state)
    if len(rho.dims) != 3:
        raise WrongArity("check_gamma_mixed3 needs a tripartite state")
    k, m, n = rho.dims
    if k > m or k > n:
        raise DimensionOrder(f"dims {rho.dims}: first subsystem must not exceed the others")
    outer, inner = mixed3_hierarchy(rho)
    theta = list(enumerate(outer.left))
    rhos = list(enumerate(outer.right))
    xi = [((i, t), x) for i, fam in enumerate(inner) for t, x in enumerate(fam.left)]
    eta = [((i, t), x) for i, fam in enumerate(inner) for t, x in enumerate(fam.right)]
    degenerate = has_degenerate_weights(outer.weights) or any(
        has_degenerate_weights(fam.weights) for fam in inner)
    return _report([rhos, theta, xi, eta], theta + xi, tol, degenerate)


def check_class(state, klass: str, tol: float = COMMUTATOR_TOL) -> MembershipReport:
    """Dispatch on a class tag: ``gamma0``, ``gamma1``, ``gamma2``, ``gamma3`` or ``gamma``."""
    klass = normalize_class(klass)
    if klass == "gamma0":
        return check_gamma0(state, tol)
    if klass == "gamma":
        return check_gamma_mixed3(state, tol)
    if not isinstance(state, PureState):
        raise WrongArity(f"class {klass} is defined for pure tripartite states")
    return check_gamma_pure3(state, int(klass[-1]), tol)


_ALIASES = {
    "gamma0": "gamma0", "g0": "gamma0", "Γ0": "gamma0", "Γ₀": "gamma0",
    "gamma1": "gamma1", "g1": "gamma1", "Γ1": "gamma1", "Γ₁": "gamma1",
    "gamma2": "gamma2", "g2": "gamma2", "Γ2": "gamma2", "Γ₂": "gamma2",
    "gamma3": "gamma3", "g3": "gamma3", "Γ3": "gamma3", "Γ₃": "gamma3",
    "gamma": "gamma", "g": "gamma", "Γ": "gamma",
}


def normalize_class(klass: str) -> str:
    try:
        return _ALIASES[str(klass).strip()]
    except KeyError:
        raise ValueError(f"unknown class {klass!r}") from None
