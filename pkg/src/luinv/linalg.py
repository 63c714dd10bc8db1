"""Dense complex linear algebra kernels.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The Hermitian
eigensolver is a cyclic Jacobi method (parallel round-robin ordering), and the
SVD is assembled from the eigendecomposition of the smaller Gram matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, NonRealTrace, NotHermitian, NotSquare

HERMITIAN_TOL = 1e-10
EIG_ZERO_CUTOFF = 1e-12
SVD_ZERO_CUTOFF = 1e-10
JACOBI_OFF_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Eigenvalues in non-increasing order with matching eigenvector columns.

    ``rank`` counts eigenvalues above ``EIG_ZERO_CUTOFF`` times the largest
    eigenvalue magnitude.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rank: int


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or 0 in m.shape:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _require_square(m: np.ndarray) -> None:
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"matrix of shape {m.shape} is not square")


def hermitian_defect(m: np.ndarray) -> float:
    """Relative Frobenius distance of ``m`` from its adjoint."""
    return float(np.linalg.norm(m - m.conj().T) / max(1.0, np.linalg.norm(m)))


def _require_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    _require_square(m)
    defect = hermitian_defect(m)
    if defect > tol:
        raise NotHermitian(f"matrix is not Hermitian (relative defect {defect:.3e})")


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    # Circle-method tournament: every index pair meets exactly once per sweep,
    # and the pairs within one round are disjoint so their rotations commute.
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _jacobi(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = h.shape[0]
    a = (h + h.conj().T) / 2
    v = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(a)
    if n == 1 or scale == 0.0:
        return a.diagonal().real.copy(), v
    skip = 1e-17 * scale
    rounds = _round_robin(n)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off < JACOBI_OFF_TOL * scale:
            break
        for p, q in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            live = mag > skip
            if not live.any():
                continue
            p, q, apq, mag = p[live], q[live], apq[live], mag[live]
            app = a[p, p].real
            aqq = a[q, q].real
            zeta = (aqq - app) / (2.0 * mag)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.hypot(1.0, zeta))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            phase = apq / mag
            g = np.eye(n, dtype=np.complex128)
            g[p, p] = phase * c
            g[p, q] = phase * s
            g[q, p] = -s
            g[q, q] = c
            a = g.conj().T @ a @ g
            v = v @ g
        a = (a + a.conj().T) / 2
    return a.diagonal().real.copy(), v


def eig_hermitian(a) -> SpectralData:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like
        Square matrix with ``||a - a^H||_F <= 1e-10 * max(1, ||a||_F)``.

    Returns
    -------
    SpectralData
        Real eigenvalues sorted in non-increasing order; eigenvectors are the
        columns of a unitary matrix. Inside a degenerate cluster the basis is
        whatever the rotations produced.

    Raises
    ------
    NotSquare, NotHermitian
    """
    m = as_matrix(a)
    _require_hermitian(m)
    w, v = _jacobi(m)
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    top = np.max(np.abs(w)) if w.size else 0.0
    rank = int(np.count_nonzero(w > EIG_ZERO_CUTOFF * top)) if top > 0 else 0
    return SpectralData(w, v, rank)


def _orthonormal_completion(cols: np.ndarray, dim: int) -> np.ndarray:
    # Gram-Schmidt with one re-orthogonalization pass, then extend with
    # standard basis vectors until the basis is complete.
    basis: list[np.ndarray] = []

    def push(x: np.ndarray) -> bool:
        for _ in range(2):
            for b in basis:
                x = x - b * np.vdot(b, x)
        nrm = np.linalg.norm(x)
        if nrm < 1e-8:
            return False
        basis.append(x / nrm)
        return True

    for j in range(cols.shape[1]):
        push(cols[:, j].copy())
    k = 0
    while len(basis) < dim:
        e = np.zeros(dim, dtype=np.complex128)
        e[k] = 1.0
        push(e)
        k += 1
    return np.stack(basis, axis=1)


def svd(a) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full singular value decomposition ``a = U diag(s) V^H``.

    The right factor comes from the eigendecomposition of the smaller Gram
    matrix; left singular vectors are ``a v / sigma`` and the rest of ``U``
    is filled by orthonormal completion. Singular values at or below
    ``1e-10 * sigma_max`` are reported as exact zeros.

    Returns
    -------
    U : (m, m) unitary
    s : (min(m, n),) non-negative, non-increasing
    V : (n, n) unitary
    """
    m = as_matrix(a)
    rows, cols = m.shape
    if rows < cols:
        u2, s, v2 = svd(m.conj().T)
        return v2, s, u2
    spec = eig_hermitian(m.conj().T @ m)
    v = spec.eigenvectors
    av = m @ v
    # Column norms of a @ v are accurate in the absolute sense even where the
    # square root of a tiny Gram eigenvalue is not.
    s = np.linalg.norm(av, axis=0)
    order = np.argsort(-s, kind="stable")
    s, v, av = s[order], v[:, order], av[:, order]
    smax = s[0] if s.size else 0.0
    live = s > SVD_ZERO_CUTOFF * smax if smax > 0 else np.zeros_like(s, dtype=bool)
    r = int(np.count_nonzero(live))
    u = _orthonormal_completion(av[:, :r] / s[:r], rows)
    s = np.where(live, s, 0.0)
    return u, s, v


def commutator(a, b) -> np.ndarray:
    """Return ``a b - b a``."""
    x, y = as_matrix(a), as_matrix(b)
    _require_square(x)
    _require_square(y)
    if x.shape != y.shape:
        raise DimensionMismatch(f"cannot commute {x.shape} with {y.shape}")
    return x @ y - y @ x


def trace_powers(a, kmax: int) -> list[float]:
    """``[Tr(a), Tr(a^2), ..., Tr(a^kmax)]`` for Hermitian ``a``.

    Powers are formed by repeated multiplication, never through the spectrum.
    """
    m = as_matrix(a)
    _require_hermitian(m)
    out = []
    p = m
    for k in range(1, kmax + 1):
        if k > 1:
            p = p @ m
        t = complex(np.trace(p))
        if abs(t.imag) > HERMITIAN_TOL * max(1.0, abs(t)):
            raise NonRealTrace(f"Tr(A^{k}) has imaginary part {t.imag:.3e}")
        out.append(t.real)
    return out


def trace_power(a, k: int) -> float:
    """Real trace of the ``k``-th power of a Hermitian matrix, ``1 <= k <= dim^2``."""
    m = as_matrix(a)
    _require_square(m)
    if not 1 <= k <= m.shape[0] ** 2:
        raise ValueError(f"power {k} outside 1..{m.shape[0] ** 2}")
    return trace_powers(m, k)[-1]


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-random unitary from a seeded complex Ginibre matrix.

    QR factorization with the phases of ``diag(R)`` folded back into ``Q``.
    Identical ``(dim, seed)`` gives bitwise-identical output.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    rng = np.random.default_rng(int(seed) % (1 << 64))
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = r.diagonal()
    return q * (d / np.abs(d))


def derive_seed(seed: int, *keys: int) -> int:
    """Deterministic 64-bit child seed for ``(seed, *keys)``."""
    ss = np.random.SeedSequence([int(seed) % (1 << 63), *[int(k) for k in keys]])
    return int(ss.generate_state(1, np.uint64)[0])


def is_unitary(u, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(u, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0])) <= tol)
