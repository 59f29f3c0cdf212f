"""Tolerance-aware dense complex linear algebra.

Everything in the package reduces to a handful of decisions made here: the
numerical rank of a matrix (singular values above ``rank_tol`` times the
largest one), orthonormal bases of kernels, ranges, sums and intersections,
and eigenvalues compared at ``value_tol``.

All functions are pure. Arrays returned to callers are fresh and read-only.
"""

from __future__ import annotations

import logging
import math
import os
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import linalg

from quasisolvable_spectra.exceptions import (
    DimensionMismatch,
    InvalidMatrix,
    NotSquare,
    NotSubspace,
)
from quasisolvable_spectra.types import ComplexArray

logger = logging.getLogger(__name__)

DEFAULT_RANK_TOL = 1e-9
"""Relative singular-value threshold used for every rank decision."""

DEFAULT_VALUE_TOL = 1e-6
"""Absolute threshold for equality of eigenvalues and character values."""

RANK_TOL_ENV = "QSSPECTRA_RANK_TOL"
VALUE_TOL_ENV = "QSSPECTRA_VALUE_TOL"


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds shared by every operation.

    Attributes:
        rank_tol: Relative singular-value threshold. A singular value counts
            towards the rank when it exceeds `rank_tol` times the largest one.
        value_tol: Absolute threshold for scalar equality (eigenvalues,
            character values, the character invariant).

    Example:
        ```python
        from quasisolvable_spectra import ToleranceConfig

        strict = ToleranceConfig(rank_tol=1e-11, value_tol=1e-8)
        ```
    """

    rank_tol: float = DEFAULT_RANK_TOL
    value_tol: float = DEFAULT_VALUE_TOL

    def __post_init__(self) -> None:
        """Validate both thresholds lie strictly between 0 and 1."""
        for name in ("rank_tol", "value_tol"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite number, got {value!r}.")
            if not 0 < value < 1:
                raise ValueError(f"{name} must be between 0 and 1, got {value}.")

    @classmethod
    def from_env(cls) -> ToleranceConfig:
        """Build a config from `QSSPECTRA_RANK_TOL` / `QSSPECTRA_VALUE_TOL`.

        Unset variables fall back to the defaults.

        Raises:
            ValueError: If a variable is set but is not a valid threshold.
        """
        return cls(
            rank_tol=_env_float(RANK_TOL_ENV, DEFAULT_RANK_TOL),
            value_tol=_env_float(VALUE_TOL_ENV, DEFAULT_VALUE_TOL),
        )

    def as_dict(self) -> dict[str, float]:
        return {"rank_tol": self.rank_tol, "value_tol": self.value_tol}


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"Environment variable {name} must be a number, got {raw!r}.") from None


def create_tolerance_config(
    rank_tol: float | None = None,
    value_tol: float | None = None,
) -> ToleranceConfig:
    """Create a tolerance config: explicit values over environment over defaults.

    Args:
        rank_tol: Explicit relative rank threshold, or None to defer.
        value_tol: Explicit value threshold, or None to defer.

    Returns:
        Validated `ToleranceConfig`.
    """
    base = ToleranceConfig.from_env()
    return ToleranceConfig(
        rank_tol=base.rank_tol if rank_tol is None else rank_tol,
        value_tol=base.value_tol if value_tol is None else value_tol,
    )


def _frozen(array: np.ndarray[Any, Any]) -> ComplexArray:
    out = np.array(array, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


def as_matrix(data: Any, *, square: bool = False) -> ComplexArray:
    """Validate and freeze a matrix.

    Args:
        data: Anything `numpy.asarray` accepts as a 2-D array.
        square: Require a square matrix.

    Returns:
        Read-only `complex128` copy.

    Raises:
        InvalidMatrix: If the input is not 2-D, is empty, or has non-finite entries.
        NotSquare: If `square` is set and the matrix is not square.
    """
    try:
        array = np.asarray(data, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidMatrix(f"Cannot interpret input as a complex matrix: {exc}") from exc
    if array.ndim != 2:
        raise InvalidMatrix(f"Expected a 2-D matrix, got {array.ndim} dimension(s).")
    if array.shape[0] < 1 or array.shape[1] < 1:
        raise InvalidMatrix(f"Matrix dimensions must be positive, got {array.shape}.")
    if not np.all(np.isfinite(array)):
        raise InvalidMatrix("Matrix has NaN or infinite entries.")
    if square and array.shape[0] != array.shape[1]:
        raise NotSquare(f"Expected a square matrix, got shape {array.shape}.")
    return _frozen(array)


def _check_finite(m: np.ndarray[Any, Any]) -> None:
    if not np.all(np.isfinite(m)):
        raise InvalidMatrix("Matrix has NaN or infinite entries.")


def singular_values(m: np.ndarray[Any, Any]) -> np.ndarray[Any, Any]:
    """Singular values in decreasing order (empty for an empty matrix)."""
    if m.size == 0:
        return np.zeros(0)
    _check_finite(m)
    return linalg.svdvals(m)


def _threshold(s: np.ndarray[Any, Any], cfg: ToleranceConfig, scale: float | None) -> float:
    reference = float(s[0]) if s.size else 0.0
    if scale is not None:
        reference = max(reference, scale)
    return cfg.rank_tol * reference


def rank(m: np.ndarray[Any, Any], cfg: ToleranceConfig, *, scale: float | None = None) -> int:
    """Numerical rank: singular values above `rank_tol` times the largest.

    When `scale` is given the threshold is `rank_tol * max(largest, scale)`,
    so a matrix that is numerically zero relative to `scale` has rank 0.
    The zero matrix (and any empty matrix) has rank 0.

    Raises:
        InvalidMatrix: If `m` has non-finite entries.
    """
    s = singular_values(m)
    if s.size == 0 or s[0] == 0.0:
        return 0
    threshold = _threshold(s, cfg, scale)
    result = int(np.count_nonzero(s > threshold))
    # Singular values within a factor of 100 of the threshold are fragile decisions.
    fragile = np.count_nonzero((s > threshold / 100) & (s < threshold * 100))
    if fragile:
        logger.warning(
            "Rank decision near threshold: %d singular value(s) within 2 decades of %.3g.",
            fragile,
            threshold,
        )
    return result


def nullspace_basis(
    m: np.ndarray[Any, Any],
    cfg: ToleranceConfig,
    *,
    scale: float | None = None,
) -> ComplexArray:
    """Orthonormal basis of the numerical kernel, one vector per column.

    The number of columns equals ``m.shape[1] - rank(m, cfg, scale=scale)``.

    Raises:
        InvalidMatrix: If `m` has non-finite entries.
    """
    cols = m.shape[1]
    if m.shape[0] == 0 or cols == 0:
        return _frozen(np.eye(cols, dtype=np.complex128))
    _check_finite(m)
    _, s, vh = linalg.svd(m, full_matrices=True)
    if s.size == 0 or s[0] == 0.0:
        return _frozen(np.eye(cols, dtype=np.complex128))
    r = int(np.count_nonzero(s > _threshold(s, cfg, scale)))
    return _frozen(vh[r:].conj().T)


def orthonormal_basis(
    vectors: np.ndarray[Any, Any],
    cfg: ToleranceConfig,
    *,
    scale: float | None = None,
) -> ComplexArray:
    """Orthonormal basis (columns) of the span of the columns of `vectors`."""
    dim = vectors.shape[0]
    if vectors.shape[1] == 0:
        return _frozen(np.zeros((dim, 0), dtype=np.complex128))
    _check_finite(vectors)
    u, s, _ = linalg.svd(vectors, full_matrices=False)
    if s[0] == 0.0:
        return _frozen(np.zeros((dim, 0), dtype=np.complex128))
    r = int(np.count_nonzero(s > _threshold(s, cfg, scale)))
    return _frozen(u[:, :r])


def eigenvalues(
    m: np.ndarray[Any, Any],
    cfg: ToleranceConfig,
    *,
    dedup: bool = False,
) -> ComplexArray:
    """Eigenvalues with multiplicity, sorted by (real, imaginary) part.

    Args:
        m: Square matrix.
        cfg: Tolerances; `value_tol` is used only when `dedup` is set.
        dedup: Collapse eigenvalues closer than `value_tol`.

    Raises:
        NotSquare: If `m` is not square.
        InvalidMatrix: If `m` has non-finite entries.
    """
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSquare(f"Eigenvalues need a square matrix, got shape {m.shape}.")
    _check_finite(m)
    values = sort_values(linalg.eigvals(m))
    if dedup:
        values = dedup_values(values, cfg.value_tol)
    return _frozen(values)


def sort_values(values: Iterable[complex]) -> ComplexArray:
    """Sort complex scalars lexicographically by (real, imaginary)."""
    ordered = sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag))
    return _frozen(np.array(ordered, dtype=np.complex128))


def dedup_values(values: Sequence[complex] | np.ndarray[Any, Any], tol: float) -> ComplexArray:
    """Drop values within `tol` of an earlier kept value (order preserved)."""
    kept: list[complex] = []
    for v in values:
        z = complex(v)
        if all(abs(z - k) > tol for k in kept):
            kept.append(z)
    return _frozen(np.array(kept, dtype=np.complex128))


def subspace_membership(
    v: np.ndarray[Any, Any],
    basis: np.ndarray[Any, Any],
    cfg: ToleranceConfig,
    *,
    scale: float | None = None,
) -> bool:
    """Whether `v` lies in the span of the columns of `basis`.

    True iff the distance from `v` to the span is at most `rank_tol * ||v||`
    (`rank_tol * max(||v||, scale)` when `scale` is given). The zero vector is
    a member of every span.

    Raises:
        DimensionMismatch: If `v` and `basis` have different ambient dimensions.
    """
    vec = np.asarray(v, dtype=np.complex128).reshape(-1)
    b = np.asarray(basis, dtype=np.complex128)
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if b.shape[0] != vec.shape[0]:
        raise DimensionMismatch(
            f"Vector of length {vec.shape[0]} against basis of dimension {b.shape[0]}."
        )
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        return True
    q = orthonormal_basis(b, cfg)
    residual = vec - q @ (q.conj().T @ vec)
    reference = norm if scale is None else max(norm, scale)
    return float(np.linalg.norm(residual)) <= cfg.rank_tol * reference


def sum_subspaces(*bases: np.ndarray[Any, Any], cfg: ToleranceConfig) -> ComplexArray:
    """Orthonormal basis of the sum of the given column spans.

    Each basis is orthonormalized first, so the rank decision is made on
    unit-scale vectors.
    """
    if not bases:
        raise DimensionMismatch("sum_subspaces needs at least one basis.")
    dims = {b.shape[0] for b in bases}
    if len(dims) != 1:
        raise DimensionMismatch(f"Subspaces live in different dimensions: {sorted(dims)}.")
    parts = [orthonormal_basis(b, cfg) for b in bases]
    return orthonormal_basis(np.hstack(parts), cfg, scale=1.0)


def intersect_subspaces(
    a: np.ndarray[Any, Any],
    b: np.ndarray[Any, Any],
    cfg: ToleranceConfig,
) -> ComplexArray:
    """Orthonormal basis of the intersection of two column spans.

    Computed as the common kernel of the complementary projectors
    ``I - Q_a Q_a^H`` and ``I - Q_b Q_b^H``.
    """
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(
            f"Subspaces live in different dimensions: {a.shape[0]} and {b.shape[0]}."
        )
    dim = a.shape[0]
    qa = orthonormal_basis(a, cfg)
    qb = orthonormal_basis(b, cfg)
    if qa.shape[1] == 0 or qb.shape[1] == 0:
        return _frozen(np.zeros((dim, 0), dtype=np.complex128))
    eye = np.eye(dim, dtype=np.complex128)
    stacked = np.vstack([eye - qa @ qa.conj().T, eye - qb @ qb.conj().T])
    return nullspace_basis(stacked, cfg, scale=1.0)


def express_in_basis(
    vectors: np.ndarray[Any, Any],
    basis: np.ndarray[Any, Any],
    cfg: ToleranceConfig,
) -> ComplexArray:
    """Coordinates of each column of `vectors` in the columns of `basis`.

    Returns a matrix `X` with ``basis @ X == vectors``.

    Raises:
        DimensionMismatch: If the ambient dimensions differ.
        NotSubspace: If some vector lies outside the span of `basis`.
    """
    vec = np.asarray(vectors, dtype=np.complex128)
    if vec.ndim == 1:
        vec = vec.reshape(-1, 1)
    b = np.asarray(basis, dtype=np.complex128)
    if b.shape[0] != vec.shape[0]:
        raise DimensionMismatch(
            f"Vectors of dimension {vec.shape[0]} against basis of dimension {b.shape[0]}."
        )
    if vec.shape[1] == 0:
        return _frozen(np.zeros((b.shape[1], 0), dtype=np.complex128))
    if b.shape[1] == 0:
        if np.allclose(vec, 0.0):
            return _frozen(np.zeros((0, vec.shape[1]), dtype=np.complex128))
        raise NotSubspace("Nonzero vectors cannot be expressed in an empty basis.")
    coords, *_ = linalg.lstsq(b, vec)
    residual = np.linalg.norm(b @ coords - vec, axis=0)
    scale = np.maximum(np.linalg.norm(vec, axis=0), 1.0)
    if np.any(residual > cfg.rank_tol * scale * max(1.0, float(np.linalg.norm(b, 2)))):
        raise NotSubspace(
            f"Vector(s) outside the span: largest residual {float(residual.max()):.3g}."
        )
    return _frozen(coords)


def random_well_conditioned(
    rng: np.random.Generator,
    size: int,
    *,
    max_condition: float = 1e3,
    complex_entries: bool = True,
) -> ComplexArray:
    """Random invertible matrix with condition number below `max_condition`.

    Draws Gaussian matrices until one qualifies; the identity plus a small
    random perturbation is the fallback after 50 draws.
    """
    for _ in range(50):
        m = rng.standard_normal((size, size))
        if complex_entries:
            m = m + 1j * rng.standard_normal((size, size))
        if np.linalg.cond(m) < max_condition:
            return _frozen(m)
    m = np.eye(size) + 0.1 * rng.standard_normal((size, size))
    return _frozen(m)


__all__ = [
    "DEFAULT_RANK_TOL",
    "DEFAULT_VALUE_TOL",
    "ToleranceConfig",
    "create_tolerance_config",
    "as_matrix",
    "singular_values",
    "rank",
    "nullspace_basis",
    "orthonormal_basis",
    "eigenvalues",
    "sort_values",
    "dedup_values",
    "subspace_membership",
    "sum_subspaces",
    "intersect_subspaces",
    "express_in_basis",
    "random_well_conditioned",
]
