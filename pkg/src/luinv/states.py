"""Pure and mixed states on two or three subsystems.

Subsystems carry 1-based labels. Composite indices are row-major: the
multi-index ``(i, j, k)`` of dims ``(K, M, N)`` sits at ``i*M*N + j*N + k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (BadLabel, BadSubset, DimensionMismatch, InvalidState, NotUnitary,
                     WrongArity)
from .linalg import EIG_ZERO_CUTOFF, HERMITIAN_TOL, eig_hermitian, hermitian_defect, svd

NORM_TOL = 1e-10

CUTS = {"1-23": 1, "2-13": 2, "3-12": 3}


def _check_dims(dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if len(dims) not in (2, 3):
        raise WrongArity(f"states have 2 or 3 subsystems, got {len(dims)}")
    if any(d < 1 for d in dims):
        raise DimensionMismatch(f"subsystem dimensions must be positive: {dims}")
    return dims


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector of amplitudes over ``prod(dims)`` basis states."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = _check_dims(self.dims)
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != int(np.prod(dims)):
            raise DimensionMismatch(f"{amps.size} amplitudes for dims {dims}")
        if not np.all(np.isfinite(amps)):
            raise InvalidState("non-finite amplitude")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidState(f"state norm is {norm!r}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, dims, amplitudes) -> "PureState":
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        return cls(dims, amps / np.linalg.norm(amps))

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def density(self) -> "MixedState":
        return MixedState(self.dims, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class MixedState:
    """Unit-trace positive semidefinite density matrix."""

    dims: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        dims = _check_dims(self.dims)
        m = np.asarray(self.matrix, dtype=np.complex128)
        d = int(np.prod(dims))
        if m.shape != (d, d):
            raise DimensionMismatch(f"matrix shape {m.shape} does not match dims {dims}")
        if not np.all(np.isfinite(m)):
            raise InvalidState("non-finite matrix entry")
        if hermitian_defect(m) > HERMITIAN_TOL:
            raise InvalidState("density matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > NORM_TOL:
            raise InvalidState(f"trace is {tr!r}, expected 1")
        # Cholesky of rho + tol*I succeeds iff every eigenvalue exceeds -tol.
        try:
            np.linalg.cholesky((m + m.conj().T) / 2 + NORM_TOL * np.eye(d))
        except np.linalg.LinAlgError:
            raise InvalidState("density matrix has a negative eigenvalue") from None
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", m)


State = Union[PureState, MixedState]


def as_mixed(state: State) -> MixedState:
    return state.density() if isinstance(state, PureState) else state


@dataclass(frozen=True, eq=False)
class ReducedFamily:
    """Branch weights with the left (``rho_i``-type) and right (``theta_i``-type)
    reduced matrices of each branch.

    ``branches`` keeps the spectral branch states the matrices came from.
    """

    weights: tuple[float, ...]
    left: tuple[np.ndarray, ...]
    right: tuple[np.ndarray, ...]
    branches: tuple[PureState, ...] = ()


def _check_label(label, arity: int) -> int:
    if isinstance(label, str) and label in CUTS:
        label = CUTS[label]
    try:
        lab = int(label)
    except (TypeError, ValueError):
        raise BadLabel(f"bad subsystem label {label!r}") from None
    if not 1 <= lab <= arity:
        raise BadLabel(f"label {label!r} outside 1..{arity}")
    return lab


def unfold(state: PureState, cut) -> np.ndarray:
    """Matricize a tripartite state along one of the cuts ``1-23``, ``2-13``, ``3-12``.

    The row index is the singled-out subsystem; the two remaining indices form
    the column in row-major order, e.g. ``A1[i, j*N + k] = a_ijk`` and
    ``A2[j, i*N + k] = a_ijk``. ``cut`` may also be given as the label 1, 2 or 3.
    """
    if len(state.dims) != 3:
        raise WrongArity("unfold needs a tripartite state")
    lab = _check_label(cut, 3)
    t = state.tensor
    order = [lab - 1] + [ax for ax in range(3) if ax != lab - 1]
    return np.transpose(t, order).reshape(state.dims[lab - 1], -1)


def unfold_bipartite(state: PureState) -> np.ndarray:
    if len(state.dims) != 2:
        raise WrongArity("unfold_bipartite needs a bipartite state")
    return state.tensor.copy()


def partial_trace(state: State, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix on the subsystems listed in ``keep``.

    Kept subsystems stay in label order, so the composite row-major ordering
    of the input is preserved.
    """
    rho = as_mixed(state)
    n = len(rho.dims)
    try:
        kept = sorted({int(k) for k in keep})
    except (TypeError, ValueError):
        raise BadSubset(f"bad subsystem subset {keep!r}") from None
    if not kept or len(kept) >= n or kept[0] < 1 or kept[-1] > n:
        raise BadSubset(f"keep={keep!r} must be a nonempty proper subset of 1..{n}")
    letters = "abcdefgh"
    ket = list(letters[:n])
    bra = [letters[n + a] if a + 1 in kept else letters[a] for a in range(n)]
    out = [ket[a - 1] for a in kept] + [bra[a - 1] for a in kept]
    spec = "".join(ket) + "".join(bra) + "->" + "".join(out)
    t = rho.matrix.reshape(rho.dims + rho.dims)
    d = int(np.prod([rho.dims[a - 1] for a in kept]))
    return np.einsum(spec, t).reshape(d, d)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    big = np.flatnonzero(np.abs(v) > 1e-8 * np.max(np.abs(v)))
    a = v[big[0]]
    return v * (abs(a) / a)


def spectral_branches(state: MixedState) -> list[tuple[float, PureState]]:
    """Nonzero-weight eigenbranches of ``state``, heaviest first.

    Each eigenvector is rotated so its first significant amplitude is real
    and positive.
    """
    rho = as_mixed(state)
    spec = eig_hermitian(rho.matrix)
    top = spec.eigenvalues[0]
    out = []
    for w, v in zip(spec.eigenvalues, spec.eigenvectors.T):
        if w <= EIG_ZERO_CUTOFF * top:
            break
        out.append((float(w), PureState.normalized(rho.dims, _fix_phase(v))))
    return out


def _family_from_branches(branches) -> ReducedFamily:
    weights, left, right, states = [], [], [], []
    for w, b in branches:
        mat = unfold_bipartite(b)
        weights.append(w)
        left.append(mat @ mat.conj().T)
        right.append(mat.conj().T @ mat)
        states.append(b)
    return ReducedFamily(tuple(weights), tuple(left), tuple(right), tuple(states))


def reduced_family_bipartite(state: State) -> ReducedFamily:
    """For each eigenbranch ``|v_i>`` of a bipartite state return
    ``left[i] = Tr_2 |v_i><v_i|`` (M x M) and ``right[i] = (Tr_1 |v_i><v_i|)^*``
    (N x N). The unfolding gives these as ``B B^H`` and ``B^H B``.
    """
    rho = as_mixed(state)
    if len(rho.dims) != 2:
        raise WrongArity("reduced_family_bipartite needs a bipartite state")
    return _family_from_branches(spectral_branches(rho))


def others(pivot: int, arity: int = 3) -> tuple[int, ...]:
    return tuple(a for a in range(1, arity + 1) if a != pivot)


def reduced_family_pure3(state: PureState, pivot) -> tuple[MixedState, ReducedFamily]:
    """Trace out ``pivot`` and decompose the two-party remainder.

    Returns ``tau`` (the marginal on the remaining subsystems, as a bipartite
    state) and the reduced family built from its eigenbranches.
    """
    if not isinstance(state, PureState) or len(state.dims) != 3:
        raise WrongArity("reduced_family_pure3 needs a tripartite pure state")
    lab = _check_label(pivot, 3)
    a = unfold(state, lab)
    rest = others(lab)
    tau = MixedState(tuple(state.dims[r - 1] for r in rest), a.T @ a.conj())
    return tau, reduced_family_bipartite(tau)


def mixed3_hierarchy(state: State) -> tuple[ReducedFamily, list[ReducedFamily]]:
    """Two-level decomposition of a tripartite mixed state.

    For each eigenbranch ``|v_i>`` with 1-23 unfolding ``A``:
    ``outer.left[i] = A A^H`` (the K x K marginal on subsystem 1) and
    ``outer.right[i] = (A^H A)^* = Tr_1 |v_i><v_i|`` (MN x MN).
    ``inner[i]`` decomposes ``outer.right[i]`` again as a bipartite state on
    subsystems 2 and 3.
    """
    rho = as_mixed(state)
    if len(rho.dims) != 3:
        raise WrongArity("mixed3_hierarchy needs a tripartite state")
    _, m, n = rho.dims
    weights, left, right, states, inner = [], [], [], [], []
    for w, b in spectral_branches(rho):
        a = unfold(b, 1)
        r = a.T @ a.conj()
        weights.append(w)
        left.append(a @ a.conj().T)
        right.append(r)
        states.append(b)
        inner.append(reduced_family_bipartite(MixedState((m, n), r)))
    outer = ReducedFamily(tuple(weights), tuple(left), tuple(right), tuple(states))
    return outer, inner


def apply_local_unitary(state: State, factors: Sequence) -> State:
    """Act with ``U_1 (x) ... (x) U_p`` on a pure state or by conjugation on a mixed one."""
    if len(factors) != len(state.dims):
        raise DimensionMismatch(f"{len(factors)} factors for {len(state.dims)} subsystems")
    us = []
    for d, u in zip(state.dims, factors):
        u = np.asarray(u, dtype=np.complex128)
        if u.shape != (d, d):
            raise DimensionMismatch(f"factor of shape {u.shape} for subsystem of dim {d}")
        if np.linalg.norm(u.conj().T @ u - np.eye(d)) > HERMITIAN_TOL:
            raise NotUnitary("local factor is not unitary")
        us.append(u)
    if isinstance(state, PureState):
        t = state.tensor
        for ax, u in enumerate(us):
            t = np.moveaxis(np.tensordot(u, t, axes=(1, ax)), 0, ax)
        return PureState(state.dims, t.reshape(-1))
    big = us[0]
    for u in us[1:]:
        big = np.kron(big, u)
    m = big @ state.matrix @ big.conj().T
    return MixedState(state.dims, (m + m.conj().T) / 2)


def schmidt_coefficients(state: PureState) -> np.ndarray:
    """Singular values of the bipartite unfolding, largest first."""
    if len(state.dims) != 2:
        raise WrongArity("schmidt_coefficients needs a bipartite pure state")
    return svd(unfold_bipartite(state))[1]



def permute_subsystems(state: State, order: Sequence[int]) -> State:
    """Relabel subsystems: new subsystem ``t`` is old subsystem ``order[t]`` (1-based)."""
    n = len(state.dims)
    axes = [int(o) - 1 for o in order]
    if sorted(axes) != list(range(n)):
        raise BadLabel(f"order {order!r} is not a permutation of 1..{n}")
    dims = tuple(state.dims[a] for a in axes)
    if isinstance(state, PureState):
        return PureState(dims, np.transpose(state.tensor, axes).reshape(-1))
    t = state.matrix.reshape(state.dims + state.dims)
    d = state.matrix.shape[0]
    return MixedState(dims, np.transpose(t, axes + [a + n for a in axes]).reshape(d, d))
