"""Characters, restriction, and weights of solvable matrix algebras.

A character of a Lie algebra L is a linear functional vanishing on the
derived subalgebra [L, L]. Characters are stored by their values on the
basis of the (sub)algebra they live on.

Weights come from simultaneous triangularization: for a solvable algebra of
matrices there is a unitary T with ``T^H B T`` upper triangular for every
basis matrix B, and each diagonal position gives a character.

Example:
    ```python
    from quasisolvable_spectra import simultaneous_triangularize

    weights = simultaneous_triangularize(algebra, cfg)
    for w in weights.weights:
        print(w.values)
    ```
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from quasisolvable_spectra._matching import contains_point
from quasisolvable_spectra.exceptions import (
    DimensionMismatch,
    InvalidMatrix,
    NotSolvable,
    NotSubspace,
    NumericalBreakdown,
)
from quasisolvable_spectra.lie import (
    MatrixLieAlgebra,
    Subalgebra,
    adjoint_representation,
    derived_series,
    derived_subalgebra,
    is_solvable,
)
from quasisolvable_spectra.numeric import (
    ToleranceConfig,
    eigenvalues,
    express_in_basis,
    nullspace_basis,
)
from quasisolvable_spectra.types import ComplexArray

logger = logging.getLogger(__name__)


def _frozen(array: Any) -> ComplexArray:
    out = np.array(array, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


def _domain(algebra: MatrixLieAlgebra | Subalgebra) -> Subalgebra:
    return algebra.whole() if isinstance(algebra, MatrixLieAlgebra) else algebra


@dataclass(frozen=True, eq=False)
class Character:
    """A functional on a (sub)algebra given by its values on the basis.

    Attributes:
        domain: The subalgebra the functional is defined on.
        values: ``f(b_j)`` for each basis vector ``b_j`` of `domain`.
    """

    domain: Subalgebra
    values: ComplexArray

    def __post_init__(self) -> None:
        if self.values.shape != (self.domain.dim,):
            raise DimensionMismatch(
                f"A character of a {self.domain.dim}-dim algebra needs "
                f"{self.domain.dim} values, got shape {self.values.shape}."
            )
        if not np.all(np.isfinite(self.values)):
            raise InvalidMatrix("Character values must be finite.")

    @classmethod
    def on(
        cls,
        algebra: MatrixLieAlgebra | Subalgebra,
        values: Sequence[complex] | np.ndarray[Any, Any],
    ) -> Character:
        """Build a character from values on the basis of `algebra`."""
        return cls(_domain(algebra), _frozen(np.asarray(values, dtype=np.complex128).reshape(-1)))

    @property
    def label(self) -> str:
        return self.domain.name or "L"

    def __call__(self, coeffs: np.ndarray[Any, Any], cfg: ToleranceConfig) -> complex:
        """Evaluate on an element given by coefficients over the parent basis.

        Raises:
            NotSubspace: If the element lies outside the domain.
        """
        coords = express_in_basis(coeffs, self.domain.coeff_basis, cfg)
        return complex((self.values @ coords).reshape(-1)[0])

    def __repr__(self) -> str:
        vals = ", ".join(f"{v.real:.6g}{v.imag:+.6g}j" for v in self.values)
        return f"Character({self.label}: [{vals}])"


def character_sort_key(values: np.ndarray[Any, Any], tol: float) -> tuple[int, ...]:
    """Lexicographic key on ``(re, im)`` of each value, snapped to a `tol` grid."""
    key: list[int] = []
    for v in values:
        key.extend((round(v.real / tol), round(v.imag / tol)))
    return tuple(key)


def sort_characters(chars: Iterable[Character], tol: float) -> list[Character]:
    return sorted(chars, key=lambda c: character_sort_key(c.values, tol))


def dedup_characters(chars: Iterable[Character], tol: float) -> list[Character]:
    """Keep the first of any characters agreeing within `tol`, then sort."""
    kept: list[Character] = []
    for c in chars:
        if contains_point([k.values for k in kept], c.values, tol) is None:
            kept.append(c)
    return sort_characters(kept, tol)


def _derived_coordinates(sub: Subalgebra, cfg: ToleranceConfig) -> ComplexArray:
    """Derived subalgebra of `sub` in the coordinates of `sub`'s own basis."""
    derived = derived_subalgebra(sub, cfg)
    return express_in_basis(derived.coeff_basis, sub.coeff_basis, cfg)


def character_space(
    algebra: MatrixLieAlgebra | Subalgebra, cfg: ToleranceConfig
) -> ComplexArray:
    """Basis (columns) of the functionals vanishing on the derived subalgebra.

    Has ``dim L - dim [L, L]`` orthonormal columns, each a value vector on
    the basis of `algebra`.
    """
    sub = _domain(algebra)
    if sub.dim == 0:
        return _frozen(np.zeros((0, 0)))
    derived = _derived_coordinates(sub, cfg)
    if derived.shape[1] == 0:
        return _frozen(np.eye(sub.dim))
    return nullspace_basis(derived.T, cfg, scale=1.0)


def is_character(
    algebra: MatrixLieAlgebra | Subalgebra,
    values: np.ndarray[Any, Any],
    cfg: ToleranceConfig,
) -> bool:
    """Whether ``f([b_i, b_j])`` is within `value_tol` of zero for all basis pairs."""
    sub = _domain(algebra)
    vals = np.asarray(values, dtype=np.complex128).reshape(-1)
    if vals.shape[0] != sub.dim:
        raise DimensionMismatch(f"Expected {sub.dim} values, got {vals.shape[0]}.")
    parent = sub.parent
    for i, j in itertools.combinations(range(sub.dim), 2):
        br = parent.bracket_coeffs(sub.coeff_basis[:, i], sub.coeff_basis[:, j])
        coords = express_in_basis(br, sub.coeff_basis, cfg).reshape(-1)
        if abs(complex(vals @ coords)) > cfg.value_tol:
            return False
    return True


def restriction_matrix(
    domain: MatrixLieAlgebra | Subalgebra,
    target: Subalgebra,
    cfg: ToleranceConfig,
) -> ComplexArray:
    """Matrix R with ``R @ f.values`` the values of ``f|target``.

    Raises:
        NotSubspace: If `target` is not a subspace of `domain`.
    """
    source = _domain(domain)
    if not source.parent.same_as(target.parent):
        raise NotSubspace("Cannot restrict across different parent algebras.")
    coords = express_in_basis(target.coeff_basis, source.coeff_basis, cfg)
    return _frozen(coords.T)


def restrict_character(f: Character, target: Subalgebra, cfg: ToleranceConfig) -> Character:
    """Restriction of `f` to a subspace of its domain.

    Raises:
        NotSubspace: If `target` is not a subspace of ``f.domain``.
    """
    matrix = restriction_matrix(f.domain, target, cfg)
    return Character(target, _frozen(matrix @ f.values))


@dataclass(frozen=True, eq=False)
class WeightList:
    """Weights of a solvable matrix algebra.

    Attributes:
        weights: Distinct weights, deduplicated at `value_tol` and sorted.
        all_weights: One weight per diagonal position (length = space dim),
            in the order of the triangular basis.
        transform: Unitary T with ``T^H B T`` upper triangular for each basis B.
        residual: Largest relative norm of a strictly lower triangular part.
    """

    weights: tuple[Character, ...]
    all_weights: tuple[Character, ...]
    transform: ComplexArray
    residual: float


def _pick_eigenvalue(r: np.ndarray[Any, Any], cfg: ToleranceConfig, scale: float) -> ComplexArray:
    """Kernel of ``r - μI`` for the first eigenvalue μ of `r` (columns).

    Eigenvalues of a defective block scatter around the true value, so the
    first eigenvalue is replaced by the mean of its cluster; the cluster
    radius shrinks until the shifted matrix has a kernel.
    """
    size = r.shape[0]
    norm = float(np.linalg.norm(r, 2))
    if norm <= cfg.rank_tol * scale:
        return _frozen(np.eye(size))
    values = eigenvalues(r, cfg)
    first = values[0]
    radius = 10 * np.finfo(float).eps ** (1 / size) * norm
    while True:
        cluster = values[np.abs(values - first) <= radius]
        mu = complex(np.mean(cluster))
        kernel = nullspace_basis(r - mu * np.eye(size), cfg, scale=scale)
        if kernel.shape[1] > 0:
            return kernel
        if cluster.shape[0] == 1:
            break
        radius /= 10
    raise NumericalBreakdown(
        f"No eigenvector found for eigenvalue {first:.6g} of a {size}x{size} block."
    )


def _triangularize(
    algebra: MatrixLieAlgebra,
    rep: np.ndarray[Any, Any],
    cfg: ToleranceConfig,
) -> tuple[ComplexArray, ComplexArray, float]:
    """Unitary flag basis for a representation of a solvable abstract algebra.

    Args:
        algebra: Algebra whose structure constants drive the derived series.
        rep: Array (n, m, m) with the representing matrix of each basis element.
        cfg: Tolerances.

    Returns:
        ``(T, diagonals, residual)`` with ``diagonals[i]`` the diagonal of
        ``T^H rep[i] T``.
    """
    n, m = rep.shape[0], rep.shape[1]
    scale = max([1.0, *(float(np.linalg.norm(x, 2)) for x in rep)])
    series = derived_series(algebra, cfg)
    # Deepest term first: its weight spaces are invariant under the whole algebra.
    term_coeffs = [term.coeff_basis for term in reversed(series) if term.dim > 0]

    current = np.array(rep, dtype=np.complex128)
    frame = np.eye(m, dtype=np.complex128)
    columns: list[np.ndarray[Any, Any]] = []
    while current.shape[1] > 0:
        size = current.shape[1]
        space = np.eye(size, dtype=np.complex128)
        for coeffs in term_coeffs:
            for j in range(coeffs.shape[1]):
                op = np.tensordot(coeffs[:, j], current, axes=1)
                restricted = space.conj().T @ op @ space
                space = space @ _pick_eigenvalue(restricted, cfg, scale)
        v = space[:, 0]
        columns.append(frame @ v)
        complement = nullspace_basis(v.conj().reshape(1, -1), cfg, scale=1.0)
        frame = frame @ complement
        current = np.einsum("ab,nbc,cd->nad", complement.conj().T, current, complement)

    transform = np.stack(columns, axis=1) if columns else np.eye(m, dtype=np.complex128)
    conjugated = np.einsum("ab,nbc,cd->nad", transform.conj().T, rep, transform)
    residual = 0.0
    for i in range(n):
        lower = float(np.linalg.norm(np.tril(conjugated[i], -1)))
        residual = max(residual, lower / max(float(np.linalg.norm(rep[i])), 1e-300))
    diagonals = np.stack([np.diag(conjugated[i]) for i in range(n)]) if n else np.zeros((0, m))
    return _frozen(transform), _frozen(diagonals), residual


def _snap(values: np.ndarray[Any, Any], cfg: ToleranceConfig) -> ComplexArray:
    out = np.array(values, dtype=np.complex128)
    re, im = out.real.copy(), out.imag.copy()
    re[np.abs(re) < cfg.rank_tol] = 0.0
    im[np.abs(im) < cfg.rank_tol] = 0.0
    return _frozen(re + 1j * im)


def _weights_from_diagonals(
    sub: Subalgebra,
    diagonals: np.ndarray[Any, Any],
    cfg: ToleranceConfig,
) -> list[Character]:
    space = character_space(sub, cfg)
    weights: list[Character] = []
    for t in range(diagonals.shape[1]):
        raw = diagonals[:, t]
        projected = space @ (space.conj().T @ raw) if sub.dim else raw
        drift = float(np.max(np.abs(projected - raw))) if sub.dim else 0.0
        if drift > cfg.value_tol * max(1.0, float(np.max(np.abs(raw), initial=0.0))):
            logger.warning("Weight %d is %.3g away from the character space.", t, drift)
        weights.append(Character(sub, _snap(projected, cfg)))
    return weights


def _weight_list(
    sub: Subalgebra,
    algebra: MatrixLieAlgebra,
    rep: np.ndarray[Any, Any],
    cfg: ToleranceConfig,
) -> WeightList:
    transform, diagonals, residual = _triangularize(algebra, rep, cfg)
    if residual > cfg.value_tol:
        raise NumericalBreakdown(
            f"Triangularization left a lower-triangular residual of {residual:.3g}."
        )
    all_weights = _weights_from_diagonals(sub, diagonals, cfg)
    weights = dedup_characters(all_weights, cfg.value_tol)
    logger.debug(
        "Triangularized %d operator(s) of size %d: %d distinct weight(s).",
        rep.shape[0],
        rep.shape[1],
        len(weights),
    )
    return WeightList(
        weights=tuple(weights),
        all_weights=tuple(all_weights),
        transform=transform,
        residual=residual,
    )


def simultaneous_triangularize(
    algebra: MatrixLieAlgebra | Subalgebra, cfg: ToleranceConfig
) -> WeightList:
    """Weights of a solvable algebra acting on ℂ^d.

    Common eigenvectors are found term by term along the derived series,
    deepest term first, taking the first eigenvalue in (re, im) order and
    the first vector of its eigenspace; the search then recurses on the
    orthogonal complement.

    Raises:
        NotSolvable: If the algebra is not solvable.
        NumericalBreakdown: If no common eigenvector is found within tolerance.
    """
    sub = _domain(algebra)
    if not is_solvable(sub, cfg):
        raise NotSolvable(f"{sub.name or 'The algebra'} is not solvable.")
    d = sub.parent.space_dim
    if sub.dim == 0:
        zero = Character(sub, _frozen(np.zeros(0)))
        return WeightList((zero,), (zero,) * d, _frozen(np.eye(d)), 0.0)
    abstract = sub.as_algebra(cfg)
    return _weight_list(sub, abstract, np.stack(sub.matrices), cfg)


def adjoint_weights(
    algebra: MatrixLieAlgebra | Subalgebra, cfg: ToleranceConfig
) -> WeightList:
    """Weights of the adjoint action of a solvable algebra on itself.

    `all_weights` has one entry per basis element (the roots, with
    multiplicity, zero included).

    Raises:
        NotSolvable: If the algebra is not solvable.
    """
    sub = _domain(algebra)
    if not is_solvable(sub, cfg):
        raise NotSolvable(f"{sub.name or 'The algebra'} is not solvable.")
    if sub.dim == 0:
        zero = Character(sub, _frozen(np.zeros(0)))
        return WeightList((zero,), (), _frozen(np.zeros((0, 0))), 0.0)
    abstract = sub.as_algebra(cfg)
    rep = np.stack(adjoint_representation(abstract))
    return _weight_list(sub, abstract, rep, cfg)


__all__ = [
    "Character",
    "WeightList",
    "character_sort_key",
    "sort_characters",
    "dedup_characters",
    "character_space",
    "is_character",
    "restriction_matrix",
    "restrict_character",
    "simultaneous_triangularize",
    "adjoint_weights",
]
