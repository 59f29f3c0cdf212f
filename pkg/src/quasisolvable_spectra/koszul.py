"""Chevalley-Eilenberg complexes and the Taylor / Słodkowski joint spectra.

For a character f of a solvable algebra L acting on X = ℂ^d, the chain
complex ``Λ^p L ⊗ X`` with boundary

    d(x_S ⊗ v) = Σ_t (-1)^t x_{S∖s_t} ⊗ (ρ(x_{s_t}) - f(x_{s_t})) v
               + Σ_{t<u} (-1)^{t+u+1} [x_{s_t}, x_{s_u}] ∧ x_{S∖{s_t,s_u}} ⊗ v

(positions t, u counted from 0) decides spectral membership: f is in the
Taylor spectrum when the complex fails to be exact in some degree, in the
delta spectrum of level k when it fails in a degree ``p <= k``, and in the
pi spectrum of level k when it fails in a degree ``p >= n - k``.

Characters form a continuum, so membership is tested on a finite candidate
set: weights of the representation shifted by sums of roots (weights of the
adjoint action). A nonzero homology class in degree p needs the zero weight
in ``Λ^p L ⊗ X ⊗ ℂ_{-f}``, which puts f in that set.

Example:
    ```python
    from quasisolvable_spectra import SpectrumKind, spectrum

    result = spectrum(algebra, SpectrumKind.taylor(), cfg)
    for point in result.points:
        print(point.values)
    ```
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from quasisolvable_spectra._exterior import (
    exterior_dim,
    monomial_index,
    monomials,
    omit,
    wedge_front,
)
from quasisolvable_spectra._matching import match_points
from quasisolvable_spectra.characters import (
    Character,
    adjoint_weights,
    dedup_characters,
    is_character,
    restrict_character,
    simultaneous_triangularize,
)
from quasisolvable_spectra.exceptions import (
    ComplexInconsistent,
    DegreeOutOfRange,
    EmptySpectrum,
    NotCharacter,
    NotSolvable,
    NotSubspace,
)
from quasisolvable_spectra.lie import MatrixLieAlgebra, Subalgebra, is_ideal, is_solvable
from quasisolvable_spectra.numeric import ToleranceConfig, express_in_basis, rank
from quasisolvable_spectra.types import ComplexArray, SpectrumKindName

logger = logging.getLogger(__name__)

COMPLEX_TOL = 1e-10
"""Relative tolerance on the ``d ∘ d`` residual of a built complex."""


def _frozen(array: Any) -> ComplexArray:
    out = np.array(array, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


def _domain(algebra: MatrixLieAlgebra | Subalgebra) -> Subalgebra:
    return algebra.whole() if isinstance(algebra, MatrixLieAlgebra) else algebra


@dataclass(frozen=True)
class SpectrumKind:
    """Which joint spectrum to compute.

    Attributes:
        name: `"taylor"`, `"delta"` or `"pi"`.
        k: Level of a Słodkowski spectrum; None for Taylor. Levels above the
            algebra dimension are clamped to it.
    """

    name: SpectrumKindName
    k: int | None = None

    def __post_init__(self) -> None:
        """Validate the name/level combination."""
        if self.name not in ("taylor", "delta", "pi"):
            raise ValueError(f"Unknown spectrum kind {self.name!r}.")
        if self.name == "taylor":
            if self.k is not None:
                raise ValueError("The Taylor spectrum takes no level k.")
        elif self.k is None or isinstance(self.k, bool) or not isinstance(self.k, int):
            raise ValueError(f"The {self.name} spectrum needs an integer level k, got {self.k!r}.")
        elif self.k < 0:
            raise ValueError(f"Level k must be nonnegative, got {self.k}.")

    @classmethod
    def taylor(cls) -> SpectrumKind:
        return cls("taylor")

    @classmethod
    def delta(cls, k: int) -> SpectrumKind:
        return cls("delta", k)

    @classmethod
    def pi(cls, k: int) -> SpectrumKind:
        return cls("pi", k)

    @property
    def label(self) -> str:
        return self.name if self.k is None else f"{self.name}({self.k})"

    def degrees(self, n: int) -> range:
        """Degrees in which non-exactness puts a character in the spectrum."""
        if self.name == "taylor":
            return range(0, n + 1)
        level = min(self.k or 0, n)
        if self.name == "delta":
            return range(0, level + 1)
        return range(n - level, n + 1)


@dataclass(frozen=True, eq=False)
class ChevalleyEilenbergComplex:
    """The chain complex of ``ρ - f`` over an algebra of dimension n.

    Attributes:
        algebra: The (sub)algebra whose basis indexes the exterior powers.
        character: The character f the representation is shifted by.
        space_dim: Dimension d of X.
        boundaries: ``boundaries[p - 1]`` is ``d_p : Λ^p ⊗ X → Λ^{p-1} ⊗ X``
            for ``p = 1..n``, of shape ``(C(n, p-1)·d, C(n, p)·d)``.
        scale: Magnitude of the data (operator norms, character values,
            structure constants), used as the floor of rank decisions.
        residual: Largest relative ``d ∘ d`` residual found when building.
    """

    algebra: Subalgebra
    character: Character
    space_dim: int
    boundaries: tuple[ComplexArray, ...]
    scale: float
    residual: float = 0.0

    @property
    def n(self) -> int:
        return self.algebra.dim

    def chain_dim(self, p: int) -> int:
        return exterior_dim(self.n, p) * self.space_dim

    def boundary(self, p: int) -> ComplexArray:
        """``d_p``, including the zero maps ``d_0`` and ``d_{n+1}``."""
        if 1 <= p <= self.n:
            return self.boundaries[p - 1]
        return _frozen(np.zeros((self.chain_dim(p - 1), self.chain_dim(p))))


def structure_in_basis(sub: Subalgebra, cfg: ToleranceConfig) -> ComplexArray:
    """Structure constants of a subalgebra relative to its own basis."""
    n = sub.dim
    consts = np.zeros((n, n, n), dtype=np.complex128)
    for i, j in itertools.combinations(range(n), 2):
        br = sub.parent.bracket_coeffs(sub.coeff_basis[:, i], sub.coeff_basis[:, j])
        coords = express_in_basis(br, sub.coeff_basis, cfg).reshape(-1)
        consts[i, j] = coords
        consts[j, i] = -coords
    consts[np.abs(consts) < cfg.rank_tol] = 0.0
    return _frozen(consts)


def _boundary_matrix(
    p: int,
    shifted: Sequence[np.ndarray[Any, Any]],
    consts: np.ndarray[Any, Any],
    d: int,
) -> ComplexArray:
    n = len(shifted)
    rows = monomial_index(n, p - 1)
    out = np.zeros((exterior_dim(n, p - 1) * d, exterior_dim(n, p) * d), dtype=np.complex128)
    eye = np.eye(d, dtype=np.complex128)
    for col, mono in enumerate(monomials(n, p)):
        cs = slice(col * d, (col + 1) * d)
        for t in range(p):
            row = rows[omit(mono, t)]
            out[row * d : (row + 1) * d, cs] += (-1) ** t * shifted[mono[t]]
        for t, u in itertools.combinations(range(p), 2):
            rest = omit(mono, t, u)
            sign = (-1) ** (t + u + 1)
            for k in np.flatnonzero(consts[mono[t], mono[u]]):
                placed = wedge_front(int(k), rest)
                if placed is None:
                    continue
                wedge_sign, target = placed
                row = rows[target]
                coeff = sign * wedge_sign * consts[mono[t], mono[u], k]
                out[row * d : (row + 1) * d, cs] += coeff * eye
    return _frozen(out)


def build_complex(
    algebra: MatrixLieAlgebra | Subalgebra,
    f: Character,
    cfg: ToleranceConfig,
    *,
    complex_tol: float = COMPLEX_TOL,
) -> ChevalleyEilenbergComplex:
    """Assemble the Chevalley-Eilenberg complex of ``ρ - f``.

    Args:
        algebra: Algebra (or subalgebra) acting on X.
        f: Character of `algebra`.
        cfg: Tolerances for the character check.
        complex_tol: Relative bound on ``||d_p d_{p+1}||``.

    Returns:
        The complex, with ``d ∘ d = 0`` verified.

    Raises:
        NotSubspace: If `f` lives on a different algebra.
        NotCharacter: If `f` does not vanish on the derived subalgebra.
        ComplexInconsistent: If a ``d ∘ d`` residual exceeds tolerance.
    """
    sub = _domain(algebra)
    if sub.dim != f.domain.dim or not sub.equals(f.domain, cfg):
        raise NotSubspace("The character is defined on a different algebra.")
    if not is_character(sub, f.values, cfg):
        raise NotCharacter(f"{f!r} does not vanish on the derived subalgebra.")

    d = sub.parent.space_dim
    n = sub.dim
    consts = structure_in_basis(sub, cfg)
    shifted = [m - f.values[i] * np.eye(d) for i, m in enumerate(sub.matrices)]
    scale = max(
        [
            1.0,
            *(float(np.linalg.norm(m, 2)) for m in sub.matrices),
            float(np.max(np.abs(f.values), initial=0.0)),
            float(np.max(np.abs(consts), initial=0.0)),
        ]
    )
    boundaries = tuple(_boundary_matrix(p, shifted, consts, d) for p in range(1, n + 1))

    worst = 0.0
    for p in range(1, n):
        lower, upper = boundaries[p - 1], boundaries[p]
        norm = max(float(np.linalg.norm(lower)) * float(np.linalg.norm(upper)), 1.0)
        residual = float(np.linalg.norm(lower @ upper)) / norm
        worst = max(worst, residual)
        if residual > complex_tol:
            raise ComplexInconsistent(
                f"d_{p} ∘ d_{p + 1} has relative residual {residual:.3g} (limit {complex_tol:.1g})."
            )
    logger.debug("Built complex n=%d d=%d, d∘d residual %.3g.", n, d, worst)
    return ChevalleyEilenbergComplex(
        algebra=sub,
        character=f,
        space_dim=d,
        boundaries=boundaries,
        scale=scale,
        residual=worst,
    )


def _check_degree(c: ChevalleyEilenbergComplex, p: int) -> None:
    if not 0 <= p <= c.n:
        raise DegreeOutOfRange(f"Degree {p} is outside 0..{c.n}.")


def is_exact_at(c: ChevalleyEilenbergComplex, p: int, cfg: ToleranceConfig) -> bool:
    """Whether ``rank d_p + rank d_{p+1} = dim Λ^p ⊗ X``.

    Raises:
        DegreeOutOfRange: If `p` is outside ``0..n``.
    """
    _check_degree(c, p)
    image = rank(c.boundary(p + 1), cfg, scale=c.scale)
    return rank(c.boundary(p), cfg, scale=c.scale) + image == c.chain_dim(p)


def homology_dimensions(c: ChevalleyEilenbergComplex, cfg: ToleranceConfig) -> list[int]:
    """Dimension of the homology in each degree ``0..n``."""
    ranks = [rank(c.boundary(p), cfg, scale=c.scale) for p in range(c.n + 2)]
    return [c.chain_dim(p) - ranks[p] - ranks[p + 1] for p in range(c.n + 1)]


def spectral_candidates(
    algebra: MatrixLieAlgebra | Subalgebra, cfg: ToleranceConfig
) -> list[Character]:
    """Finite set of characters that contains every joint spectrum of `algebra`.

    Each weight of the representation, shifted by plus or minus every sum
    of distinct roots, deduplicated at `value_tol` and sorted.

    Raises:
        NotSolvable: If the algebra is not solvable.
    """
    sub = _domain(algebra)
    weights = simultaneous_triangularize(sub, cfg).weights
    roots = adjoint_weights(sub, cfg).all_weights
    sums: list[np.ndarray[Any, Any]] = [np.zeros(sub.dim, dtype=np.complex128)]
    for root in roots:
        extended = [*sums, *(s + root.values for s in sums)]
        kept = dedup_characters((Character(sub, _frozen(s)) for s in extended), cfg.value_tol)
        sums = [c.values for c in kept]
    shifted = (
        Character(sub, _frozen(w.values + sign * s))
        for w in weights
        for s in sums
        for sign in (1, -1)
    )
    candidates = dedup_characters(shifted, cfg.value_tol)
    logger.debug(
        "%d weight(s) and %d root sum(s) give %d candidate(s).",
        len(weights),
        len(sums),
        len(candidates),
    )
    return candidates


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    """A computed joint spectrum.

    Attributes:
        algebra: The algebra the spectrum belongs to.
        kind: The spectrum computed (with the level as requested).
        points: Members, deduplicated and sorted.
        tolerances: Tolerances used.
        candidates_tested: Size of the candidate set.
    """

    algebra: Subalgebra
    kind: SpectrumKind
    points: tuple[Character, ...]
    tolerances: ToleranceConfig
    candidates_tested: int = 0


def _is_member(
    sub: Subalgebra,
    f: Character,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
    complex_tol: float,
) -> bool:
    c = build_complex(sub, f, cfg, complex_tol=complex_tol)
    return any(not is_exact_at(c, p, cfg) for p in kind.degrees(c.n))


def spectrum(
    algebra: MatrixLieAlgebra | Subalgebra,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
    *,
    max_workers: int | None = None,
    complex_tol: float = COMPLEX_TOL,
) -> SpectrumResult:
    """Joint spectrum of a solvable algebra acting on ℂ^d.

    Tests every character from `spectral_candidates` against the membership
    rule of `kind`. The zero algebra has the single empty character.

    Args:
        algebra: Solvable algebra or subalgebra.
        kind: Taylor, delta(k) or pi(k).
        cfg: Tolerances.
        max_workers: Test candidates on a thread pool of this size.
        complex_tol: Passed to `build_complex`.

    Raises:
        NotSolvable: If the algebra is not solvable.
        EmptySpectrum: If no candidate is a member.
    """
    sub = _domain(algebra)
    if not is_solvable(sub, cfg):
        raise NotSolvable(f"{sub.name or 'The algebra'} is not solvable.")
    candidates = spectral_candidates(sub, cfg)

    def test(f: Character) -> bool:
        return _is_member(sub, f, kind, cfg, complex_tol)

    if max_workers is not None and max_workers > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            verdicts = list(pool.map(test, candidates))
    else:
        verdicts = [test(f) for f in candidates]
    points = tuple(f for f, member in zip(candidates, verdicts) if member)
    if not points:
        raise EmptySpectrum(
            f"The {kind.label} spectrum of {sub.name or 'the algebra'} came out empty "
            f"after {len(candidates)} candidate(s)."
        )
    logger.debug("%s spectrum: %d of %d candidate(s).", kind.label, len(points), len(candidates))
    return SpectrumResult(
        algebra=sub,
        kind=kind,
        points=points,
        tolerances=cfg,
        candidates_tested=len(candidates),
    )


@dataclass
class ContractReport:
    """Outcome of `verify_spectrum_contract`.

    Attributes:
        passed: Whether the restricted spectrum equals the ideal's spectrum
            (and the claimed points, when given, equal the computed ones).
        kind: Spectrum label.
        restricted: ``{f|H : f in σ(L)}``, deduplicated.
        target: ``σ(H)``.
        unmatched_restricted: Restrictions with no partner in `target`.
        unmatched_target: Points of `target` not hit by a restriction.
        unmatched_claimed: Claimed points of ``σ(L)`` that were not computed,
            followed by computed points that were not claimed.
        failures: Human-readable failure descriptions.
    """

    passed: bool
    kind: str
    restricted: list[Character] = field(default_factory=list)
    target: list[Character] = field(default_factory=list)
    unmatched_restricted: list[Character] = field(default_factory=list)
    unmatched_target: list[Character] = field(default_factory=list)
    unmatched_claimed: list[Character] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)


def verify_spectrum_contract(
    algebra: MatrixLieAlgebra | Subalgebra,
    ideal: Subalgebra,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
    *,
    claimed: Sequence[Character] | None = None,
) -> ContractReport:
    """Check the projection property ``σ(L)|H = σ(H)`` for an ideal H.

    Args:
        algebra: Solvable algebra L.
        ideal: Ideal H of L.
        kind: Spectrum to compare.
        cfg: Tolerances; sets are compared by matching at `value_tol`.
        claimed: Optional externally supplied points of ``σ(L)`` to compare
            with the computed spectrum.

    Returns:
        Report listing the unmatched points on each side.
    """
    sub = _domain(algebra)
    report = ContractReport(passed=True, kind=kind.label)
    try:
        if not is_ideal(ideal, sub, cfg):
            report.failures.append(f"{ideal.name or 'H'} is not an ideal")
    except NotSubspace:
        report.failures.append(f"{ideal.name or 'H'} is not a subspace of the algebra")
    if report.failures:
        report.passed = False
        return report

    whole = spectrum(sub, kind, cfg)
    report.target = list(spectrum(ideal, kind, cfg).points)
    report.restricted = dedup_characters(
        (restrict_character(f, ideal, cfg) for f in whole.points), cfg.value_tol
    )
    match = match_points(
        [c.values for c in report.restricted], [c.values for c in report.target], cfg.value_tol
    )
    report.unmatched_restricted = [report.restricted[i] for i in match.unmatched_left]
    report.unmatched_target = [report.target[j] for j in match.unmatched_right]
    if not match.equal:
        report.failures.append(
            f"restriction to {ideal.name or 'H'}: {len(match.unmatched_left)} restricted "
            f"and {len(match.unmatched_right)} ideal point(s) unmatched"
        )

    if claimed is not None:
        claim = match_points(
            [c.values for c in claimed], [c.values for c in whole.points], cfg.value_tol
        )
        report.unmatched_claimed = [claimed[i] for i in claim.unmatched_left]
        report.unmatched_claimed += [whole.points[j] for j in claim.unmatched_right]
        if not claim.equal:
            report.failures.append(
                f"claimed spectrum differs from the computed one in "
                f"{len(report.unmatched_claimed)} point(s)"
            )

    report.passed = not report.failures
    return report


__all__ = [
    "COMPLEX_TOL",
    "SpectrumKind",
    "ChevalleyEilenbergComplex",
    "SpectrumResult",
    "ContractReport",
    "structure_in_basis",
    "build_complex",
    "is_exact_at",
    "homology_dimensions",
    "spectral_candidates",
    "spectrum",
    "verify_spectrum_contract",
]
