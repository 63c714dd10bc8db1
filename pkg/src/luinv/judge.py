"""Equivalence verdicts from invariant sets, plus two independent checks:
a numerical search for local unitaries mapping one state onto another, and
the negativity of the partial transpose.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from .classes import COMMUTATOR_TOL, MembershipReport, check_class, normalize_class
from .errors import BadCut, DimensionMismatch, FamilyMismatch, ShapeMismatch, WrongArity
from .invariants import InvariantSet, compute_invariants
from .linalg import derive_seed, eig_hermitian, random_unitary
from .states import MixedState, PureState, as_mixed

COMPARE_TOL = 1e-9
WITNESS_TOL = 1e-6
WITNESS_RESTARTS = 64
WITNESS_SWEEPS = 500
WITNESS_STALL = 1e-12
# Once a restart is above threshold, keep refining so the factors map the
# states onto each other closely, not just within the overlap tolerance.
WITNESS_POLISH_STALL = 1e-15

CLASS_FAMILIES = {
    "gamma0": ("a", "b"),
    "gamma1": ("c", "d"),
    "gamma2": ("e", "f"),
    "gamma3": ("i", "j"),
    "gamma": ("g", "h"),
}


class Comparison(NamedTuple):
    equal: bool
    mismatch: float
    pairing: list[tuple[int, int]]
    inner_pairing: dict[tuple[int, int], list[tuple[int, int]]]


def _max_abs_diff(x, y) -> float:
    if len(x) != len(y):
        raise ShapeMismatch(f"power lists of length {len(x)} and {len(y)}")
    if not x:
        return 0.0
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y))))


def _clusters(wx, wy, tol) -> list[list[int]]:
    n = min(len(wx), len(wy))
    out: list[list[int]] = []
    for i in range(n):
        if out and (wx[i - 1] - wx[i] <= tol or wy[i - 1] - wy[i] <= tol):
            out[-1].append(i)
        else:
            out.append([i])
    return out


def _match_layer(wx, vx, wy, vy, tol, inner_cost=None):
    """Pair branches by weight, resolving near-equal weights by optimal assignment.

    Returns the worst mismatch and the list of (x index, y index) pairs.
    """
    worst = 0.0
    n = min(len(wx), len(wy))
    for extra in list(vx[n:]) + list(vy[n:]):
        # An unmatched branch; its first power (the trace) alone is ~1.
        worst = max(worst, float(np.max(np.abs(extra))))
    pairs = []
    for cluster in _clusters(wx, wy, tol):
        if len(cluster) == 1:
            chosen = [(cluster[0], cluster[0])]
        else:
            cost = np.zeros((len(cluster), len(cluster)))
            for a, i in enumerate(cluster):
                for b, j in enumerate(cluster):
                    cost[a, b] = np.linalg.norm(np.subtract(vx[i], vy[j]))
                    if inner_cost is not None:
                        cost[a, b] += inner_cost(i, j)[0]
            rows, cols = linear_sum_assignment(cost)
            chosen = [(cluster[a], cluster[b]) for a, b in zip(rows, cols)]
        for i, j in chosen:
            worst = max(worst, abs(wx[i] - wy[j]), _max_abs_diff(vx[i], vy[j]))
            if inner_cost is not None:
                worst = max(worst, inner_cost(i, j)[0])
        pairs.extend(chosen)
    return worst, pairs


def compare_invariants(x: InvariantSet, y: InvariantSet, tol: float = COMPARE_TOL) -> Comparison:
    """Compare two invariant sets of the same family.

    Global values are compared elementwise. Branches are paired by
    descending weight; inside a run of weights closer than ``tol`` they are
    matched by minimum-cost assignment on the distance between their power
    vectors (and, for tags g/h, their inner layers). ``equal`` holds when
    every paired difference is at most ``tol``.
    """
    if x.family != y.family:
        raise FamilyMismatch(f"cannot compare family {x.family} with {y.family}")
    if tuple(x.dims) != tuple(y.dims):
        raise ShapeMismatch(f"dims {x.dims} vs {y.dims}")
    worst = _max_abs_diff(x.global_powers, y.global_powers)

    inner_pairs: dict[tuple[int, int], list[tuple[int, int]]] = {}
    inner_cost = None
    if x.inner_powers is not None and y.inner_powers is not None:
        cache: dict = {}

        def inner_cost(i, j):
            if (i, j) not in cache:
                cache[(i, j)] = _match_layer(x.inner_weights[i], x.inner_powers[i],
                                             y.inner_weights[j], y.inner_powers[j], tol)
            return cache[(i, j)]

    layer, pairs = _match_layer(x.weights, x.branch_powers, y.weights, y.branch_powers,
                                tol, inner_cost)
    if inner_cost is not None:
        inner_pairs = {(i, j): inner_cost(i, j)[1] for i, j in pairs}
    worst = max(worst, layer)
    return Comparison(worst <= tol, worst, pairs, inner_pairs)


@dataclass
class Verdict:
    decision: str
    evidence: float
    pairing: list[tuple[int, int]]
    class_checked: str
    reports: tuple[MembershipReport, ...] = ()
    comparisons: dict[str, Comparison] = field(default_factory=dict)


def _coerce_pair(s1, s2, klass):
    if tuple(s1.dims) != tuple(s2.dims):
        raise DimensionMismatch(f"dims {s1.dims} vs {s2.dims}")
    if klass == "gamma0":
        if len(s1.dims) != 2:
            raise WrongArity("gamma0 is a bipartite class")
        return as_mixed(s1), as_mixed(s2)
    if len(s1.dims) != 3:
        raise WrongArity(f"{klass} is a tripartite class")
    if klass == "gamma":
        return as_mixed(s1), as_mixed(s2)
    if not (isinstance(s1, PureState) and isinstance(s2, PureState)):
        raise WrongArity(f"{klass} is a class of pure states")
    return s1, s2


def decide_equivalence(s1, s2, klass: str, tol: float = COMPARE_TOL,
                       gate_tol: float = COMMUTATOR_TOL) -> Verdict:
    """LU-equivalence verdict for two states of one class.

    Both states must pass the class gate, otherwise the decision is
    ``not-in-class``. Both invariant variants of the class are compared; they
    must agree with each other, and a split yields ``indeterminate``.
    """
    klass = normalize_class(klass)
    s1, s2 = _coerce_pair(s1, s2, klass)
    reports = (check_class(s1, klass, gate_tol), check_class(s2, klass, gate_tol))
    if not all(r.verdict for r in reports):
        return Verdict("not-in-class", float("nan"), [], klass, reports)
    comps = {}
    for fam in CLASS_FAMILIES[klass]:
        comps[fam] = compare_invariants(compute_invariants(s1, fam),
                                        compute_invariants(s2, fam), tol)
    results = {c.equal for c in comps.values()}
    evidence = max(c.mismatch for c in comps.values())
    first = comps[CLASS_FAMILIES[klass][0]]
    if len(results) > 1:
        decision = "indeterminate"
    else:
        decision = "equivalent" if first.equal else "inequivalent"
    return Verdict(decision, evidence, first.pairing, klass, reports, comps)


@dataclass
class WitnessResult:
    found: bool
    factors: Optional[list[np.ndarray]]
    overlap: float
    restarts: int
    sweeps: int = 0


def _polar(m: np.ndarray) -> np.ndarray:
    # Unitary V maximizing Re Tr(V m): for m = U S W^H it is W U^H.
    u, _, wh = np.linalg.svd(m)
    return wh.conj().T @ u.conj().T


def _apply_factor(t: np.ndarray, u: np.ndarray, ax: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(u, t, axes=(1, ax)), 0, ax)


class _PureProblem:
    """Maximize ``|<s2| V_1 (x) ... (x) V_p |s1>|^2`` one factor at a time."""

    def __init__(self, s1: PureState, s2: PureState):
        self.t1 = s1.tensor
        self.t2c = s2.tensor.conj()
        self.p = len(s1.dims)

    def overlap(self, vs) -> float:
        x = self.t1
        for ax, v in enumerate(vs):
            x = _apply_factor(x, v, ax)
        return float(abs(np.vdot(self.t2c.conj(), x)) ** 2)

    def update(self, vs, k) -> np.ndarray:
        x = self.t1
        for ax, v in enumerate(vs):
            if ax != k:
                x = _apply_factor(x, v, ax)
        rest = [a for a in range(self.p) if a != k]
        env = np.tensordot(self.t2c, x, axes=(rest, rest))
        # f(V) = sum_ab V[a, b] env[a, b] = Tr(V env^T); exact block maximum of |f|.
        return _polar(env.T)


class _MixedProblem:
    """Maximize ``1 - ||U rho U^H - sigma||_F^2 / 2`` over ``U = V_1 (x) ... (x) V_p``.

    ``Re Tr(U rho U^H sigma)`` is a convex quadratic in each factor, so the
    factor maximizing its linearization never decreases the objective.
    """

    def __init__(self, s1: MixedState, s2: MixedState):
        self.rho = s1.matrix
        self.sigma = s2.matrix
        self.dims = s1.dims
        self.p = len(s1.dims)
        self.base = 1.0 - (np.vdot(self.rho, self.rho).real + np.vdot(self.sigma, self.sigma).real) / 2

    def _big(self, vs) -> np.ndarray:
        big = vs[0]
        for v in vs[1:]:
            big = np.kron(big, v)
        return big

    def overlap(self, vs) -> float:
        u = self._big(vs)
        return float(self.base + np.vdot(self.sigma, u @ self.rho @ u.conj().T).real)

    def update(self, vs, k) -> np.ndarray:
        u = self._big(vs)
        g = (self.rho @ u.conj().T @ self.sigma).reshape(self.dims + self.dims)
        p = self.p
        rows = "abc"[:p]
        cols = "xyz"[:p]
        # Contract V_j[a_j, b_j] G[b.., a..] over every j != k.
        operands, specs = [], []
        for j in range(p):
            if j != k:
                operands.append(vs[j])
                specs.append(cols[j] + rows[j])
        spec = ",".join(specs + [rows + cols]) + "->" + rows[k] + cols[k]
        m = np.einsum(spec, *operands, g)
        return _polar(m)


def find_lu_witness(s1, s2, budget: int = WITNESS_RESTARTS, seed: int = 0,
                    max_sweeps: int = WITNESS_SWEEPS, tol: float = WITNESS_TOL) -> WitnessResult:
    """Search for local unitaries taking ``s1`` to ``s2``.

    Alternating maximization: each factor update is the polar factor of its
    environment matrix. Restart 0 starts from identities, later restarts from
    seeded Haar-random factors. The search stops at the first restart whose
    converged overlap reaches ``1 - tol``; otherwise the best of ``budget``
    restarts (lowest index on ties) is reported with ``found=False``.
    """
    if tuple(s1.dims) != tuple(s2.dims):
        raise DimensionMismatch(f"dims {s1.dims} vs {s2.dims}")
    if isinstance(s1, PureState) and isinstance(s2, PureState):
        prob = _PureProblem(s1, s2)
    else:
        prob = _MixedProblem(as_mixed(s1), as_mixed(s2))
    dims = s1.dims
    best = WitnessResult(False, None, -np.inf, 0)
    for r in range(max(1, budget)):
        if r == 0:
            vs = [np.eye(d, dtype=np.complex128) for d in dims]
        else:
            vs = [random_unitary(d, derive_seed(seed, r, k)) for k, d in enumerate(dims)]
        val = prob.overlap(vs)
        sweeps = 0
        for sweeps in range(1, max_sweeps + 1):
            for k in range(len(dims)):
                vs[k] = prob.update(vs, k)
            new = prob.overlap(vs)
            gain, val = new - val, new
            if gain < (WITNESS_POLISH_STALL if val >= 1 - tol else WITNESS_STALL):
                break
        if val > best.overlap:
            best = WitnessResult(False, [v.copy() for v in vs], val, r + 1, sweeps)
        if best.overlap >= 1 - tol:
            break
    best.restarts = min(r + 1, max(1, budget))
    best.overlap = float(min(max(best.overlap, 0.0), 1.0))
    best.found = best.overlap >= 1 - tol
    return best


def partial_transpose(state, side) -> np.ndarray:
    rho = as_mixed(state)
    n = len(rho.dims)
    try:
        labels = sorted({int(s) for s in (side if np.iterable(side) else [side])})
    except (TypeError, ValueError):
        raise BadCut(f"bad cut {side!r}") from None
    if not labels or len(labels) >= n or labels[0] < 1 or labels[-1] > n:
        raise BadCut(f"cut side {side!r} must be a nonempty proper subset of 1..{n}")
    t = rho.matrix.reshape(rho.dims + rho.dims)
    axes = list(range(2 * n))
    for lab in labels:
        axes[lab - 1], axes[n + lab - 1] = axes[n + lab - 1], axes[lab - 1]
    d = rho.matrix.shape[0]
    return np.transpose(t, axes).reshape(d, d)


def negativity(state, side=(1,)) -> float:
    """Sum of the magnitudes of the negative eigenvalues of the partial
    transpose taken on the subsystems in ``side``.
    """
    w = eig_hermitian(partial_transpose(state, side)).eigenvalues
    return float(-np.sum(w[w < 0]))
