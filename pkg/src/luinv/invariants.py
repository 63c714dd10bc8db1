"""Trace-power invariant sets.

Family tags:

==== ================== =========================== ==========================
tag  input              per-branch values           global values
==== ================== =========================== ==========================
a    bipartite mixed    Tr(rho_i^k), k = 1..M        Tr(rho^k), k = 1..MN
b    bipartite mixed    Tr(theta_i^k), k = 1..N      Tr(rho^k), k = 1..MN
c/d  tripartite pure    pivot 1, left/right side     Tr(tau_1^k), k = 1..MN
e/f  tripartite pure    pivot 2, left/right side     Tr(tau_2^k), k = 1..KN
i/j  tripartite pure    pivot 3, left/right side     Tr(tau_3^k), k = 1..KM
g    tripartite mixed   Tr(rho_i^k), k = 1..M;       Tr(rho^k), k = 1..KMN
                        inner Tr(xi^k), k = 1..M
h    tripartite mixed   Tr(theta23_i^k), k = 1..K;   Tr(rho^k), k = 1..KMN
                        inner Tr(eta^k), k = 1..N
==== ================== =========================== ==========================

Values are stored in eigenbranch order (heaviest first); pairing across
states is done by :mod:`luinv.judge`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import BadLabel, FamilyMismatch, WrongArity
from .linalg import trace_powers
from .states import (PureState, as_mixed, mixed3_hierarchy, reduced_family_bipartite,
                     reduced_family_pure3)

PURE3_TAGS = {1: ("c", "d"), 2: ("e", "f"), 3: ("i", "j")}
TAG_PIVOT = {t: p for p, pair in PURE3_TAGS.items() for t in pair}
ALL_TAGS = ("a", "b", "c", "d", "e", "f", "g", "h", "i", "j")


@dataclass
class InvariantSet:
    """Invariant values of one family for one state.

    ``minimal_global`` is how many leading ``global_powers`` entries the
    completeness argument needs; for tag g/h this is ``M*N`` while the list
    runs to ``K*M*N`` so that spectra are compared unconditionally.
    """

    family: str
    dims: tuple[int, ...]
    global_powers: list[float]
    weights: list[float]
    branch_powers: list[list[float]]
    inner_weights: Optional[list[list[float]]] = None
    inner_powers: Optional[list[list[list[float]]]] = None
    pivot: Optional[int] = None
    minimal_global: int = field(default=0)

    def __post_init__(self):
        if not self.minimal_global:
            self.minimal_global = len(self.global_powers)


def invariants_bipartite(state, variant: str = "a") -> InvariantSet:
    rho = as_mixed(state)
    if len(rho.dims) != 2:
        raise WrongArity("invariants_bipartite needs a bipartite state")
    if variant not in ("a", "b"):
        raise FamilyMismatch(f"bipartite variant must be 'a' or 'b', got {variant!r}")
    m, n = rho.dims
    fam = reduced_family_bipartite(rho)
    mats, kmax = (fam.left, m) if variant == "a" else (fam.right, n)
    return InvariantSet(
        family=variant,
        dims=rho.dims,
        global_powers=trace_powers(rho.matrix, m * n),
        weights=list(fam.weights),
        branch_powers=[trace_powers(x, kmax) for x in mats],
    )


def invariants_pure3(state: PureState, pivot=1, variant: str = "left") -> InvariantSet:
    """Invariants of a tripartite pure state about one pivot subsystem.

    ``variant`` is ``"left"`` / ``"right"`` or directly one of the tags
    c, d (pivot 1), e, f (pivot 2), i, j (pivot 3).
    """
    if not isinstance(state, PureState) or len(state.dims) != 3:
        raise WrongArity("invariants_pure3 needs a tripartite pure state")
    if variant in TAG_PIVOT:
        pivot, side = TAG_PIVOT[variant], PURE3_TAGS[TAG_PIVOT[variant]].index(variant)
    elif variant in ("left", "right"):
        side = 0 if variant == "left" else 1
    else:
        raise FamilyMismatch(f"unknown tripartite pure variant {variant!r}")
    if pivot not in PURE3_TAGS:
        raise BadLabel(f"pivot must be 1, 2 or 3, got {pivot!r}")
    tau, fam = reduced_family_pure3(state, pivot)
    d_left, d_right = tau.dims
    mats, kmax = (fam.left, d_left) if side == 0 else (fam.right, d_right)
    return InvariantSet(
        family=PURE3_TAGS[pivot][side],
        dims=state.dims,
        global_powers=trace_powers(tau.matrix, d_left * d_right),
        weights=list(fam.weights),
        branch_powers=[trace_powers(x, kmax) for x in mats],
        pivot=pivot,
    )


def invariants_mixed3(state, variant: str = "g") -> InvariantSet:
    rho = as_mixed(state)
    if len(rho.dims) != 3:
        raise WrongArity("invariants_mixed3 needs a tripartite state")
    if variant not in ("g", "h"):
        raise FamilyMismatch(f"tripartite mixed variant must be 'g' or 'h', got {variant!r}")
    k, m, n = rho.dims
    outer, inner = mixed3_hierarchy(rho)
    if variant == "g":
        branch = [trace_powers(x, m) for x in outer.right]
        nested = [[trace_powers(x, m) for x in fam.left] for fam in inner]
    else:
        # theta23 is K x K: powers past K add nothing.
        branch = [trace_powers(x, k) for x in outer.left]
        nested = [[trace_powers(x, n) for x in fam.right] for fam in inner]
    return InvariantSet(
        family=variant,
        dims=rho.dims,
        global_powers=trace_powers(rho.matrix, k * m * n),
        weights=list(outer.weights),
        branch_powers=branch,
        inner_weights=[list(fam.weights) for fam in inner],
        inner_powers=nested,
        minimal_global=m * n,
    )


def compute_invariants(state, family: str) -> InvariantSet:
    """Dispatch on a family tag (see the module table)."""
    if family in ("a", "b"):
        return invariants_bipartite(state, family)
    if family in ("g", "h"):
        return invariants_mixed3(state, family)
    if family in TAG_PIVOT:
        if not isinstance(state, PureState):
            raise WrongArity(f"family {family} needs a pure tripartite state")
        return invariants_pure3(state, variant=family)
    raise FamilyMismatch(f"unknown invariant family {family!r}")


def families_for(state) -> tuple[str, ...]:
    """Invariant families applicable to a state of this kind and arity."""
    if len(state.dims) == 2:
        return ("a", "b")
    if isinstance(state, PureState):
        return ("c", "d", "e", "f", "i", "j")
    return ("g", "h")


def spectrum_powers(eigenvalues, kmax: int) -> list[float]:
    """Power sums of a spectrum; an independent route to the global values."""
    w = np.asarray(eigenvalues, dtype=float)
    return [float(np.sum(w ** k)) for k in range(1, kmax + 1)]
