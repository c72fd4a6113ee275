"""Deterministic random sampling and dense linear-algebra primitives.

All routines work on plain float64 numpy arrays. Reproducibility contract:
the same seed yields the same draw sequence within one build; cross-platform
runs agree on every decision (comparisons, ranks) but not necessarily on the
last bits of each float.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg
from scipy.spatial.distance import cdist

from .errors import ResampleRequiredError

_ORTHO_TOL = 1e-8


def make_rng(seed: int) -> np.random.Generator:
    """Create the root generator for a seeded run."""
    return np.random.default_rng(np.random.SeedSequence(seed))


def fork_rng(seed: int, *key: int) -> np.random.Generator:
    """Derive an independent child generator from a seed and a task key.

    Children with distinct keys have statistically independent streams, so
    parallel tasks seeded this way reproduce serial execution exactly.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def child_seed(seed: int, *key: int) -> int:
    """A 63-bit integer seed derived from (seed, key), for handing to
    subprocesses or file names."""
    state = np.random.SeedSequence(seed, spawn_key=key).generate_state(1, np.uint64)
    return int(state[0] >> np.uint64(1))


# Below these sizes the direct (exact) distance kernel is used; the BLAS
# expansion only kicks in where the O(N^2 D) cost dominates a run.
_BLAS_MIN_ROWS = 256
_BLAS_MIN_COLS = 16


def pairwise_distances(x: np.ndarray) -> np.ndarray:
    """Euclidean distance matrix.

    Small inputs take scipy's direct kernel, which is exact to the last bit
    (the silhouette oracle contract compares at 1e-12 on N <= 50). Large
    high-dimensional inputs expand ||a-b||^2 = ||a||^2 + ||b||^2 - 2ab via
    a BLAS matmul; the cancellation error (~1e-12 relative) is irrelevant
    at the tolerances those sizes are evaluated under.
    """
    x = np.ascontiguousarray(x, dtype=float)
    n, d = x.shape
    if n < _BLAS_MIN_ROWS or d < _BLAS_MIN_COLS:
        return cdist(x, x)
    sq = np.einsum("ij,ij->i", x, x)
    d2 = sq[:, None] + sq[None, :]
    d2 -= 2.0 * (x @ x.T)
    np.maximum(d2, 0.0, out=d2)
    np.fill_diagonal(d2, 0.0)
    return np.sqrt(d2, out=d2)


def haar_rotation(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Rotation matrix drawn uniformly (Haar measure) from SO(dim).

    QR decomposition of a standard-normal matrix with the R-diagonal sign
    correction yields Haar measure on O(dim); a reflection is mapped into
    SO(dim) by negating one column, which preserves the measure.
    """
    if dim < 1:
        raise ValueError(f"rotation dimension must be >= 1, got {dim}")
    a = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(a)
    q = q * np.where(np.diag(r) < 0.0, -1.0, 1.0)
    if np.linalg.det(q) < 0.0:
        q[:, 0] = -q[:, 0]
    return q


def _check_special_orthogonal(q: np.ndarray) -> None:
    d = q.shape[0]
    if q.ndim != 2 or q.shape[1] != d:
        raise ValueError("rotation must be square")
    if np.max(np.abs(q.T @ q - np.eye(d))) > _ORTHO_TOL:
        raise ValueError("matrix is not orthogonal")
    if np.linalg.det(q) < 0.0:
        raise ValueError("matrix is a reflection, not a rotation")


def rotation_fractional_power(q: np.ndarray, t: float) -> np.ndarray:
    """exp(t * log(q)) for special-orthogonal q, i.e. the rotation scaled to
    a fraction t of its angle in every invariant plane.

    Fast path: the symmetric part (q + q.T)/2 has the invariant planes as
    eigenspaces with eigenvalue cos(theta), and on each plane the skew part
    acts as sin(theta) times a complex structure J (J^2 = -I), so
    q^t = cos(t*theta) I + sin(t*theta) J plane by plane. Near theta = pi
    the division by sin(theta) loses precision, so those draws take the
    real-Schur route instead. An eigenvalue of exactly -1 makes the
    principal log ambiguous and raises ResampleRequiredError.
    """
    q = np.asarray(q, dtype=float)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"fractional power must lie in [0, 1], got {t}")
    _check_special_orthogonal(q)
    d = q.shape[0]
    if t == 0.0:
        return np.eye(d)
    if t == 1.0:
        return q.copy()
    cos_theta, basis = np.linalg.eigh((q + q.T) / 2.0)
    cos_theta = np.clip(cos_theta, -1.0, 1.0)
    if cos_theta[0] < -1.0 + 1e-8:
        return _fractional_power_schur(q, t)
    theta = np.arccos(cos_theta)
    sin_theta = np.sin(theta)
    # sin(t*theta)/sin(theta) -> t as theta -> 0, where the skew block is 0
    # anyway, so the substituted value never matters numerically.
    scale = np.where(sin_theta > 1e-12, np.sin(t * theta) / np.maximum(sin_theta, 1e-300), t)
    skew_in_basis = basis.T @ ((q - q.T) / 2.0) @ basis
    powered = skew_in_basis * scale[:, None]
    powered[np.arange(d), np.arange(d)] = np.cos(t * theta)
    return basis @ powered @ basis.T


def _fractional_power_schur(q: np.ndarray, t: float) -> np.ndarray:
    d = q.shape[0]
    block_form, basis = scipy.linalg.schur(q, output="real")
    powered = np.zeros_like(block_form)
    i = 0
    while i < d:
        if i + 1 < d and block_form[i + 1, i] != 0.0:
            theta = math.atan2(block_form[i + 1, i], block_form[i, i])
            c, s = math.cos(t * theta), math.sin(t * theta)
            powered[i, i] = c
            powered[i + 1, i + 1] = c
            powered[i, i + 1] = -s
            powered[i + 1, i] = s
            i += 2
        else:
            if block_form[i, i] < 0.0:
                raise ResampleRequiredError(
                    "rotation has an eigenvalue of -1; fractional power undefined"
                )
            powered[i, i] = 1.0
            i += 1
    return basis @ powered @ basis.T


def cholesky_lower(s: np.ndarray) -> np.ndarray:
    """Lower-triangular L with L @ L.T == s for symmetric positive-definite s.

    Raises numpy.linalg.LinAlgError if s is not positive definite.
    """
    s = np.asarray(s, dtype=float)
    if np.max(np.abs(s - s.T)) > _ORTHO_TOL * max(1.0, np.max(np.abs(s))):
        raise ValueError("matrix is not symmetric")
    return np.linalg.cholesky(s)


def sym_eigenvalues(s: np.ndarray) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, sorted descending."""
    s = np.asarray(s, dtype=float)
    if np.max(np.abs(s - s.T)) > _ORTHO_TOL * max(1.0, np.max(np.abs(s))):
        raise ValueError("matrix is not symmetric")
    return np.linalg.eigvalsh(s)[::-1]


def singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values of a matrix, descending (all nonnegative)."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] < 1:
        raise ValueError("input must be a matrix with at least one row")
    return np.linalg.svd(a, compute_uv=False)


def pca_fit(x: np.ndarray, n_components: int) -> tuple[np.ndarray, np.ndarray]:
    """Principal components of column-centered data.

    Returns (components, explained_variance_ratio) where components has
    orthonormal rows (n_components x n_features) and the ratios are the
    fraction of total variance carried by each component, descending.
    Component signs are fixed so each row's largest-magnitude entry is
    positive, making the output deterministic.
    """
    x = np.asarray(x, dtype=float)
    n, d = x.shape
    if n_components > d:
        raise ValueError(f"cannot extract {n_components} components from {d} columns")
    if n <= n_components:
        raise ValueError("need more rows than components")
    _, svals, vt = np.linalg.svd(x, full_matrices=False)
    components = vt[:n_components].copy()
    for row in components:
        if row[np.argmax(np.abs(row))] < 0.0:
            row *= -1.0
    power = svals**2
    total = power.sum()
    if total <= 0.0:
        ratios = np.zeros(n_components)
    else:
        ratios = power[:n_components] / total
    return components, ratios
