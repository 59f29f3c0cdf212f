"""Matrix Lie algebras, subalgebras, ideals and directed families of ideals.

A `MatrixLieAlgebra` is a basis of d×d matrices closed under the commutator,
together with its structure constants. Subspaces of an algebra are stored as
`Subalgebra` objects holding coefficient vectors relative to the parent basis,
so every ideal, intersection and restriction computation is plain linear
algebra in ℂⁿ.

A `DirectedIdealFamily` is a finite presentation of an algebra as a sum of
solvable ideals, ordered by inclusion. Directedness is checked, never assumed.

Example:
    ```python
    import numpy as np
    from quasisolvable_spectra import ToleranceConfig, verify_algebra, is_solvable

    cfg = ToleranceConfig()
    a = np.diag([1.0, 0.0])
    b = np.array([[0.0, 1.0], [0.0, 0.0]])
    algebra = verify_algebra([a, b], cfg, names=["A", "B"])
    assert is_solvable(algebra, cfg)
    ```
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from quasisolvable_spectra.exceptions import (
    DimensionMismatch,
    InvalidMatrix,
    JacobiViolation,
    NotClosed,
    NotIndependent,
    NotSubspace,
    SpanFailure,
    UnknownLabel,
)
from quasisolvable_spectra.numeric import (
    ToleranceConfig,
    as_matrix,
    express_in_basis,
    intersect_subspaces,
    orthonormal_basis,
    rank,
    subspace_membership,
    sum_subspaces,
)
from quasisolvable_spectra.types import ComplexArray

logger = logging.getLogger(__name__)


def _frozen(array: Any) -> ComplexArray:
    out = np.array(array, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


def bracket(a: np.ndarray[Any, Any], b: np.ndarray[Any, Any]) -> ComplexArray:
    """Commutator ``ab - ba``.

    Raises:
        DimensionMismatch: If the operands are not square matrices of equal size.
    """
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise DimensionMismatch(f"Cannot bracket shapes {a.shape} and {b.shape}.")
    return _frozen(a @ b - b @ a)


@dataclass(frozen=True, eq=False)
class MatrixLieAlgebra:
    """A Lie algebra of d×d complex matrices with a fixed basis.

    Construct through `verify_algebra` (or `MatrixLieAlgebra.zero`); the
    constructor itself does not check closure.

    Attributes:
        space_dim: Dimension d of the space the matrices act on.
        basis: Basis matrices B_1..B_n.
        names: One name per basis matrix.
        structure_constants: Array ``c`` of shape (n, n, n) with
            ``[B_i, B_j] = sum_k c[i, j, k] B_k``.
    """

    space_dim: int
    basis: tuple[ComplexArray, ...]
    names: tuple[str, ...]
    structure_constants: ComplexArray

    @classmethod
    def zero(cls, space_dim: int) -> MatrixLieAlgebra:
        """The zero algebra acting on ℂ^space_dim."""
        if space_dim < 1:
            raise InvalidMatrix(f"space_dim must be positive, got {space_dim}.")
        return cls(
            space_dim=space_dim,
            basis=(),
            names=(),
            structure_constants=_frozen(np.zeros((0, 0, 0))),
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def stacked(self) -> ComplexArray:
        """Basis as an array of shape (n, d, d)."""
        if not self.basis:
            return _frozen(np.zeros((0, self.space_dim, self.space_dim)))
        return _frozen(np.stack(self.basis))

    @cached_property
    def vectorized(self) -> ComplexArray:
        """Basis matrices flattened into the columns of a d²×n matrix."""
        return _frozen(self.stacked.reshape(self.dim, -1).T)

    @cached_property
    def scale(self) -> float:
        """Largest spectral norm among the basis matrices (1.0 for the zero algebra)."""
        if not self.basis:
            return 1.0
        return max(1.0, max(float(np.linalg.norm(b, 2)) for b in self.basis))

    def element(self, coeffs: np.ndarray[Any, Any]) -> ComplexArray:
        """The matrix ``sum_i coeffs[i] B_i``."""
        c = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
        if c.shape[0] != self.dim:
            raise DimensionMismatch(f"Expected {self.dim} coefficients, got {c.shape[0]}.")
        if self.dim == 0:
            return _frozen(np.zeros((self.space_dim, self.space_dim)))
        return _frozen(np.tensordot(c, self.stacked, axes=1))

    def bracket_coeffs(
        self, u: np.ndarray[Any, Any], v: np.ndarray[Any, Any]
    ) -> ComplexArray:
        """Coefficients of ``[u, v]`` for coefficient vectors `u` and `v`."""
        return _frozen(np.einsum("i,j,ijk->k", u, v, self.structure_constants))

    def same_as(self, other: MatrixLieAlgebra) -> bool:
        """Identity, or equal space, basis and names."""
        if other is self:
            return True
        return (
            self.space_dim == other.space_dim
            and self.names == other.names
            and self.dim == other.dim
            and bool(np.array_equal(self.stacked, other.stacked))
        )

    def whole(self) -> Subalgebra:
        """The algebra as a subalgebra of itself (identity coefficients)."""
        return Subalgebra(self, _frozen(np.eye(self.dim)))

    def zero_subalgebra(self) -> Subalgebra:
        return Subalgebra(self, _frozen(np.zeros((self.dim, 0))))

    def span(
        self,
        vectors: Sequence[Sequence[complex]] | np.ndarray[Any, Any],
        cfg: ToleranceConfig | None = None,
    ) -> Subalgebra:
        """Subspace spanned by coefficient vectors (kept as given).

        Independence is decided at `cfg.rank_tol` (defaults when `cfg` is None).

        Raises:
            DimensionMismatch: If a vector does not have `dim` entries.
            NotIndependent: If the vectors are linearly dependent.
        """
        arr = np.asarray(vectors, dtype=np.complex128)
        if arr.size == 0:
            return self.zero_subalgebra()
        if arr.ndim != 2 or arr.shape[1] != self.dim:
            raise DimensionMismatch(
                f"Coefficient vectors must have {self.dim} entries, got shape {arr.shape}."
            )
        if not np.all(np.isfinite(arr)):
            raise InvalidMatrix("Coefficient vectors have NaN or infinite entries.")
        if rank(arr, cfg if cfg is not None else ToleranceConfig(), scale=1.0) != arr.shape[0]:
            raise NotIndependent(f"The {arr.shape[0]} coefficient vectors are dependent.")
        return Subalgebra(self, _frozen(arr.T))


def canonical_basis(
    vectors: np.ndarray[Any, Any],
    cfg: ToleranceConfig,
    *,
    scale: float | None = None,
) -> ComplexArray:
    """Reduced column-echelon basis of the span of the columns of `vectors`.

    The pivot rows are the lexicographically first independent rows of an
    orthonormal basis and carry an identity block, so the result depends only
    on the subspace.
    """
    q = orthonormal_basis(np.asarray(vectors, dtype=np.complex128), cfg, scale=scale)
    k = q.shape[1]
    if k == 0:
        return q
    pivots: list[int] = []
    for row in range(q.shape[0]):
        trial = [*pivots, row]
        if rank(q[trial, :], cfg, scale=1.0) == len(trial):
            pivots.append(row)
            if len(pivots) == k:
                break
    basis = q @ np.linalg.inv(q[pivots, :])
    basis[pivots, :] = np.eye(k)
    basis[np.abs(basis) < cfg.rank_tol] = 0.0
    return _frozen(basis)


@dataclass(frozen=True, eq=False)
class Subalgebra:
    """A subspace of a `MatrixLieAlgebra`, stored by coefficient vectors.

    Attributes:
        parent: The ambient algebra.
        coeff_basis: n×k matrix whose columns are the coefficient vectors of
            the subspace basis relative to `parent.basis`.
        name: Optional label used in reports.
    """

    parent: MatrixLieAlgebra
    coeff_basis: ComplexArray
    name: str | None = None

    def __post_init__(self) -> None:
        if self.coeff_basis.ndim != 2 or self.coeff_basis.shape[0] != self.parent.dim:
            raise DimensionMismatch(
                f"Coefficient basis of shape {self.coeff_basis.shape} does not fit "
                f"a parent of dimension {self.parent.dim}."
            )

    @property
    def dim(self) -> int:
        return int(self.coeff_basis.shape[1])

    @cached_property
    def matrices(self) -> tuple[ComplexArray, ...]:
        """Basis of the subspace as matrices acting on ℂ^d."""
        return tuple(self.parent.element(self.coeff_basis[:, j]) for j in range(self.dim))

    def named(self, name: str) -> Subalgebra:
        return Subalgebra(self.parent, self.coeff_basis, name)

    def as_algebra(self, cfg: ToleranceConfig) -> MatrixLieAlgebra:
        """The subspace as a matrix Lie algebra in its own right.

        Raises:
            NotClosed: If the subspace is not closed under the bracket.
        """
        if self.dim == 0:
            return MatrixLieAlgebra.zero(self.parent.space_dim)
        prefix = self.name or "h"
        return verify_algebra(
            list(self.matrices), cfg, names=[f"{prefix}[{j}]" for j in range(self.dim)]
        )

    def contains(self, other: Subalgebra, cfg: ToleranceConfig) -> bool:
        """Whether `other` is a subspace of this one."""
        _check_same_parent(self, other)
        return all(
            subspace_membership(other.coeff_basis[:, j], self.coeff_basis, cfg)
            for j in range(other.dim)
        )

    def equals(self, other: Subalgebra, cfg: ToleranceConfig) -> bool:
        return self.dim == other.dim and self.contains(other, cfg)

    def intersect(self, other: Subalgebra, cfg: ToleranceConfig) -> Subalgebra:
        _check_same_parent(self, other)
        basis = intersect_subspaces(self.coeff_basis, other.coeff_basis, cfg)
        return Subalgebra(self.parent, canonical_basis(basis, cfg))

    def plus(self, other: Subalgebra, cfg: ToleranceConfig) -> Subalgebra:
        _check_same_parent(self, other)
        basis = sum_subspaces(self.coeff_basis, other.coeff_basis, cfg=cfg)
        return Subalgebra(self.parent, canonical_basis(basis, cfg))

    def coordinates_of(self, vectors: np.ndarray[Any, Any], cfg: ToleranceConfig) -> ComplexArray:
        """Coordinates of parent coefficient vectors in this subspace's basis.

        Raises:
            NotSubspace: If a vector lies outside the subspace.
        """
        return express_in_basis(vectors, self.coeff_basis, cfg)


def _check_same_parent(a: Subalgebra, b: Subalgebra) -> None:
    if not a.parent.same_as(b.parent):
        raise NotSubspace("Subspaces belong to different parent algebras.")


def verify_algebra(
    basis: Sequence[Any],
    cfg: ToleranceConfig,
    *,
    names: Sequence[str] | None = None,
) -> MatrixLieAlgebra:
    """Check that `basis` spans a Lie algebra and compute its structure constants.

    Args:
        basis: Nonempty list of equal-size square matrices.
        cfg: Tolerances for the independence and closure decisions.
        names: Optional basis names (default ``B1..Bn``).

    Returns:
        The verified `MatrixLieAlgebra`.

    Raises:
        InvalidMatrix: If the list is empty or a matrix is malformed.
        DimensionMismatch: If the matrices differ in size.
        NotIndependent: If the matrices are linearly dependent.
        NotClosed: If some bracket falls outside the span.
        JacobiViolation: If the basis brackets break the Jacobi identity.
    """
    if len(basis) == 0:
        raise InvalidMatrix("An algebra basis needs at least one matrix.")
    mats = [as_matrix(m, square=True) for m in basis]
    d = mats[0].shape[0]
    if any(m.shape != (d, d) for m in mats):
        raise DimensionMismatch("Basis matrices must all have the same size.")
    if names is None:
        names = [f"B{i + 1}" for i in range(len(mats))]
    if len(names) != len(mats):
        raise DimensionMismatch(f"Got {len(names)} names for {len(mats)} basis matrices.")

    n = len(mats)
    vec = np.stack(mats).reshape(n, -1).T
    if rank(vec, cfg) != n:
        raise NotIndependent(f"The {n} basis matrices are linearly dependent.")

    consts = np.zeros((n, n, n), dtype=np.complex128)
    for i, j in itertools.combinations(range(n), 2):
        br = bracket(mats[i], mats[j]).reshape(-1)
        coeffs, *_ = np.linalg.lstsq(vec, br, rcond=None)
        residual = float(np.linalg.norm(vec @ coeffs - br))
        scale = max(float(np.linalg.norm(mats[i])) * float(np.linalg.norm(mats[j])), 1e-300)
        if residual > cfg.rank_tol * scale:
            raise NotClosed(
                f"[{names[i]}, {names[j]}] is not in the span of the basis "
                f"(residual {residual:.3g})."
            )
        consts[i, j] = coeffs
        consts[j, i] = -coeffs
    consts[np.abs(consts) < cfg.rank_tol] = 0.0

    algebra = MatrixLieAlgebra(
        space_dim=d,
        basis=tuple(mats),
        names=tuple(names),
        structure_constants=_frozen(consts),
    )
    jac = jacobi_residual(algebra)
    jac_scale = max(1.0, max(float(np.linalg.norm(m)) for m in mats) ** 3)
    if jac > cfg.value_tol * jac_scale:
        raise JacobiViolation(
            f"Jacobi residual {jac:.3g} exceeds value_tol {cfg.value_tol:.3g} "
            f"at scale {jac_scale:.3g}."
        )
    logger.debug("Verified algebra of dimension %d on C^%d.", n, d)
    return algebra


def jacobi_residual(algebra: MatrixLieAlgebra) -> float:
    """Largest ``||[[x,y],z] + [[y,z],x] + [[z,x],y]||`` over basis triples."""
    worst = 0.0
    mats = algebra.basis
    for i, j, k in itertools.combinations(range(algebra.dim), 3):
        x, y, z = mats[i], mats[j], mats[k]
        total = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y)
        worst = max(worst, float(np.linalg.norm(total)))
    return worst


def adjoint_representation(algebra: MatrixLieAlgebra) -> tuple[ComplexArray, ...]:
    """Matrices of ``ad(B_i)`` in the basis of the algebra.

    Column j of ``ad(B_i)`` holds the coefficients of ``[B_i, B_j]``.
    """
    c = algebra.structure_constants
    return tuple(_frozen(c[i].T) for i in range(algebra.dim))


def _as_subalgebra(algebra: MatrixLieAlgebra | Subalgebra) -> Subalgebra:
    return algebra.whole() if isinstance(algebra, MatrixLieAlgebra) else algebra


def _bracket_scale(a: Subalgebra, b: Subalgebra) -> float:
    """Size of a bracket of basis vectors of `a` and `b`, for rank floors."""
    consts = a.parent.structure_constants
    c = float(np.abs(consts).max()) if consts.size else 0.0
    na = float(np.linalg.norm(a.coeff_basis, axis=0).max()) if a.dim else 0.0
    nb = float(np.linalg.norm(b.coeff_basis, axis=0).max()) if b.dim else 0.0
    return max(1.0, c) * max(1.0, na) * max(1.0, nb)


def derived_subalgebra(
    algebra: MatrixLieAlgebra | Subalgebra, cfg: ToleranceConfig
) -> Subalgebra:
    """Span of the pairwise brackets of the basis, as a subspace of the parent."""
    sub = _as_subalgebra(algebra)
    parent = sub.parent
    cols = [
        parent.bracket_coeffs(sub.coeff_basis[:, i], sub.coeff_basis[:, j])
        for i, j in itertools.combinations(range(sub.dim), 2)
    ]
    if not cols:
        return parent.zero_subalgebra()
    scale = _bracket_scale(sub, sub)
    return Subalgebra(parent, canonical_basis(np.stack(cols, axis=1), cfg, scale=scale))


def derived_series(
    algebra: MatrixLieAlgebra | Subalgebra, cfg: ToleranceConfig
) -> list[Subalgebra]:
    """Derived series ``L ⊇ [L,L] ⊇ ...`` until it stabilizes.

    The first term is the input itself. The series stops at the zero
    subspace, or at the first term whose derived subalgebra has the same
    dimension (which is then not repeated).
    """
    series = [_as_subalgebra(algebra)]
    while series[-1].dim > 0:
        nxt = derived_subalgebra(series[-1], cfg)
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
    return series


def is_solvable(algebra: MatrixLieAlgebra | Subalgebra, cfg: ToleranceConfig) -> bool:
    """Whether the derived series reaches the zero subspace."""
    return derived_series(algebra, cfg)[-1].dim == 0


def is_subalgebra(sub: Subalgebra, cfg: ToleranceConfig) -> bool:
    """Whether a subspace is closed under the bracket."""
    parent = sub.parent
    scale = _bracket_scale(sub, sub)
    return all(
        subspace_membership(
            parent.bracket_coeffs(sub.coeff_basis[:, i], sub.coeff_basis[:, j]),
            sub.coeff_basis,
            cfg,
            scale=scale,
        )
        for i, j in itertools.combinations(range(sub.dim), 2)
    )


def is_ideal(
    sub: Subalgebra,
    algebra: MatrixLieAlgebra | Subalgebra,
    cfg: ToleranceConfig,
) -> bool:
    """Whether ``[algebra, sub] ⊆ sub``.

    Raises:
        NotSubspace: If `sub` is not a subspace of `algebra`.
    """
    outer = _as_subalgebra(algebra)
    if not outer.contains(sub, cfg):
        raise NotSubspace("The candidate ideal is not a subspace of the algebra.")
    parent = outer.parent
    scale = _bracket_scale(outer, sub)
    for i in range(outer.dim):
        for j in range(sub.dim):
            br = parent.bracket_coeffs(outer.coeff_basis[:, i], sub.coeff_basis[:, j])
            if not subspace_membership(br, sub.coeff_basis, cfg, scale=scale):
                return False
    return True


# -- Directed families of solvable ideals --


@dataclass(frozen=True, eq=False)
class DirectedIdealFamily:
    """A finite presentation ``total = sum_α I_α`` by solvable ideals.

    Attributes:
        parent: Ambient algebra; every ideal is stored relative to its basis.
        labels: Index set, in declaration order.
        ideals: Map from label to the ideal I_α.
        total: The algebra being presented (the whole parent for an ordinary
            presentation, a subalgebra for an induced family).
        inclusions: Pairs ``(α, β)``, α ≠ β, with ``I_α ⊆ I_β``.
        declared_order: Pairs ``(α, β)`` asserted to satisfy ``I_α ⊆ I_β``.
        name: Presentation label used in reports.

    Example:
        ```python
        fam = DirectedIdealFamily.from_ideals(
            algebra, {"I1": algebra.span([[0, 1]]), "I2": algebra.whole()}, cfg
        )
        assert verify_directed_family(fam, cfg).passed
        ```
    """

    parent: MatrixLieAlgebra
    labels: tuple[str, ...]
    ideals: Mapping[str, Subalgebra]
    total: Subalgebra
    inclusions: frozenset[tuple[str, str]]
    declared_order: tuple[tuple[str, str], ...] = ()
    name: str = "presentation"

    @classmethod
    def from_ideals(
        cls,
        parent: MatrixLieAlgebra,
        ideals: Mapping[str, Subalgebra],
        cfg: ToleranceConfig,
        *,
        total: Subalgebra | None = None,
        declared_order: Sequence[tuple[str, str]] = (),
        name: str = "presentation",
    ) -> DirectedIdealFamily:
        """Build a family and tabulate inclusions between its ideals.

        Raises:
            UnknownLabel: If a declared order pair names an unknown label.
            NotSubspace: If an ideal belongs to another parent.
        """
        if not ideals:
            raise UnknownLabel("A directed family needs at least one ideal.")
        labels = tuple(ideals)
        named = {label: sub.named(label) for label, sub in ideals.items()}
        for sub in named.values():
            if not sub.parent.same_as(parent):
                raise NotSubspace(f"Ideal {sub.name!r} belongs to another parent algebra.")
        for a, b in declared_order:
            for label in (a, b):
                if label not in named:
                    raise UnknownLabel(f"Order pair ({a!r}, {b!r}) names unknown label {label!r}.")
        inclusions = frozenset(
            (a, b)
            for a in labels
            for b in labels
            if a != b and named[b].contains(named[a], cfg)
        )
        return cls(
            parent=parent,
            labels=labels,
            ideals=named,
            total=total if total is not None else parent.whole(),
            inclusions=inclusions,
            declared_order=tuple(declared_order),
            name=name,
        )

    def leq(self, a: str, b: str) -> bool:
        """Whether ``I_a ⊆ I_b``."""
        return a == b or (a, b) in self.inclusions

    def below(self, b: str) -> list[str]:
        """Labels α ≠ b with ``I_α ⊆ I_b``, in label order."""
        return [a for a in self.labels if (a, b) in self.inclusions]

    def upper_bound(self, a: str, b: str) -> str | None:
        """Smallest ideal of the family containing ``I_a`` and ``I_b``.

        Ties in dimension are broken by declaration order.
        """
        bounds = [g for g in self.labels if self.leq(a, g) and self.leq(b, g)]
        if not bounds:
            return None
        return min(bounds, key=lambda g: (self.ideals[g].dim, self.labels.index(g)))

    def search_order(self) -> list[str]:
        """Labels by decreasing ideal dimension, ties by label."""
        return sorted(self.labels, key=lambda a: (-self.ideals[a].dim, a))

    def __getitem__(self, label: str) -> Subalgebra:
        try:
            return self.ideals[label]
        except KeyError:
            raise UnknownLabel(f"Family {self.name!r} has no ideal {label!r}.") from None


@dataclass
class FamilyReport:
    """Outcome of `verify_directed_family`.

    Attributes:
        passed: Whether every check succeeded.
        failures: Human-readable failure descriptions, one per offending item.
        upper_bounds: For each unordered pair of labels, the upper bound found.
        spans_total: Whether the ideals sum to the presented algebra.
    """

    passed: bool
    failures: list[str] = field(default_factory=list)
    upper_bounds: dict[tuple[str, str], str] = field(default_factory=dict)
    spans_total: bool = True


def verify_directed_family(fam: DirectedIdealFamily, cfg: ToleranceConfig) -> FamilyReport:
    """Check that a family is a directed presentation by solvable ideals.

    Checks (a) each I_α is solvable, (b) each I_α is an ideal of the presented
    algebra, (c) every pair has an upper bound in the family, (d) the ideals
    sum to the presented algebra, and that every declared order pair is an
    inclusion. Mathematical failures go into the report; nothing is raised.
    """
    report = FamilyReport(passed=True)
    for label in fam.labels:
        ideal = fam.ideals[label]
        if not fam.total.contains(ideal, cfg):
            report.failures.append(f"{label}: not contained in the presented algebra")
            continue
        if not is_subalgebra(ideal, cfg) or not is_solvable(ideal, cfg):
            report.failures.append(f"{label}: not a solvable subalgebra")
        if not is_ideal(ideal, fam.total, cfg):
            report.failures.append(f"{label}: not an ideal of the presented algebra")

    for a, b in itertools.combinations(fam.labels, 2):
        bound = fam.upper_bound(a, b)
        if bound is None:
            report.failures.append(f"({a}, {b}): no upper bound in the family")
        else:
            report.upper_bounds[(a, b)] = bound

    for a, b in fam.declared_order:
        if not fam.leq(a, b):
            report.failures.append(f"declared order ({a}, {b}): {a} is not contained in {b}")

    spanned = sum_subspaces(*(fam.ideals[a].coeff_basis for a in fam.labels), cfg=cfg)
    if spanned.shape[1] != fam.total.dim:
        report.spans_total = False
        report.failures.append(
            f"ideals span a space of dimension {spanned.shape[1]}, "
            f"expected {fam.total.dim}"
        )

    report.passed = not report.failures
    logger.debug("Family %r verified: %s.", fam.name, report.passed)
    return report


def intersect_with_ideal(
    sub: Subalgebra,
    fam: DirectedIdealFamily,
    cfg: ToleranceConfig,
    *,
    name: str | None = None,
) -> DirectedIdealFamily:
    """Induced family ``(M ∩ I_α)_α`` presenting the subalgebra `sub`.

    Ideals already inside `sub` are kept as they are; ideals containing `sub`
    become `sub` itself.

    Raises:
        SpanFailure: If the intersections do not sum to `sub`.
    """
    induced: dict[str, Subalgebra] = {}
    for label in fam.labels:
        ideal = fam.ideals[label]
        if sub.contains(ideal, cfg):
            induced[label] = ideal
        elif ideal.contains(sub, cfg):
            induced[label] = sub
        else:
            induced[label] = ideal.intersect(sub, cfg)
    if sub.dim > 0:
        spanned = sum_subspaces(*(s.coeff_basis for s in induced.values()), cfg=cfg)
        if spanned.shape[1] != sub.dim:
            raise SpanFailure(
                f"Intersections span dimension {spanned.shape[1]}, expected {sub.dim}."
            )
    return DirectedIdealFamily.from_ideals(
        fam.parent,
        induced,
        cfg,
        total=sub,
        name=name or f"{fam.name}∩{sub.name or 'M'}",
    )


def join_families(
    first: DirectedIdealFamily,
    second: DirectedIdealFamily,
    cfg: ToleranceConfig,
) -> DirectedIdealFamily:
    """Merge two presentations of the same algebra into one family.

    Labels are prefixed with the presentation names to stay unique.

    Raises:
        NotSubspace: If the families present different algebras.
    """
    if not first.total.equals(second.total, cfg):
        raise NotSubspace("Families present different algebras.")
    merged = {f"{first.name}:{a}": first.ideals[a] for a in first.labels}
    merged.update({f"{second.name}:{a}": second.ideals[a] for a in second.labels})
    return DirectedIdealFamily.from_ideals(
        first.parent,
        merged,
        cfg,
        total=first.total,
        name=f"{first.name}+{second.name}",
    )


__all__ = [
    "bracket",
    "MatrixLieAlgebra",
    "Subalgebra",
    "canonical_basis",
    "verify_algebra",
    "jacobi_residual",
    "adjoint_representation",
    "derived_subalgebra",
    "derived_series",
    "is_solvable",
    "is_subalgebra",
    "is_ideal",
    "DirectedIdealFamily",
    "FamilyReport",
    "verify_directed_family",
    "intersect_with_ideal",
    "join_families",
]
