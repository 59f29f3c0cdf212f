"""Inverse systems of spectra over directed ideal families, and their limits.

Given a presentation ``L = Σ_α I_α`` by a directed family of solvable
ideals, the spectra ``σ(I_α)`` together with the restriction maps
``π_α^β : σ(I_β) → σ(I_α)`` (for ``I_α ⊆ I_β``) form an inverse system of
finite sets. Its inverse limit, the set of compatible tuples ``(f_α)``, is
the joint spectrum of the presented algebra; each tuple glues to a single
character of L.

Every map is tabulated as an index table between the sorted point lists,
so compatibility and composition checks are exact integer comparisons once
the points themselves have been matched at `value_tol`.

Example:
    ```python
    from quasisolvable_spectra import (
        SpectrumKind,
        build_inverse_system,
        inverse_limit,
    )

    system = build_inverse_system(algebra, family, SpectrumKind.taylor(), cfg)
    limit = inverse_limit(system, cfg)
    for character in limit.glued:
        print(character.values)
    ```
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from quasisolvable_spectra._matching import match_points, nearest_point
from quasisolvable_spectra.characters import (
    Character,
    character_sort_key,
    dedup_characters,
    is_character,
    restrict_character,
    restriction_matrix,
    sort_characters,
)
from quasisolvable_spectra.exceptions import (
    ContractViolation,
    DimensionMismatch,
    EmptyLimit,
    GluingInconsistent,
    InputError,
    NotSubspace,
    SpanFailure,
    SystemAxiomViolation,
    UnknownLabel,
)
from quasisolvable_spectra.koszul import SpectrumKind, SpectrumResult, spectral_candidates, spectrum
from quasisolvable_spectra.lie import (
    DirectedIdealFamily,
    MatrixLieAlgebra,
    Subalgebra,
    intersect_with_ideal,
    is_ideal,
    is_subalgebra,
    join_families,
    verify_directed_family,
)
from quasisolvable_spectra.numeric import ToleranceConfig, nullspace_basis

logger = logging.getLogger(__name__)

IndexTable = tuple[int, ...]
"""Map between finite point lists: entry i is the image index of point i."""


def _domain(algebra: MatrixLieAlgebra | Subalgebra) -> Subalgebra:
    return algebra.whole() if isinstance(algebra, MatrixLieAlgebra) else algebra


def _restriction_table(
    source: SpectrumResult,
    target: SpectrumResult,
    cfg: ToleranceConfig,
) -> list[int | None]:
    """Index of ``f|target`` in the target spectrum for each source point."""
    matrix = restriction_matrix(source.algebra, target.algebra, cfg)
    target_values = [p.values for p in target.points]
    return [
        nearest_point(target_values, matrix @ f.values, cfg.value_tol) for f in source.points
    ]


@dataclass(frozen=True, eq=False)
class SpectrumInverseSystem:
    """The spectra of a family's ideals with the restriction maps between them.

    Attributes:
        family: The presentation.
        kind: Spectrum computed on every ideal.
        spaces: ``σ(I_α)`` per label.
        maps: ``π_α^β`` as an index table for every pair with ``I_α ⊆ I_β``,
            ``(α, α)`` included.
        tolerances: Tolerances used.
    """

    family: DirectedIdealFamily
    kind: SpectrumKind
    spaces: Mapping[str, SpectrumResult]
    maps: Mapping[tuple[str, str], IndexTable]
    tolerances: ToleranceConfig

    def points(self, label: str) -> tuple[Character, ...]:
        return self.spaces[label].points

    def bond(self, alpha: str, beta: str) -> IndexTable:
        """``π_α^β``.

        Raises:
            UnknownLabel: If ``I_α`` is not contained in ``I_β``.
        """
        try:
            return self.maps[(alpha, beta)]
        except KeyError:
            raise UnknownLabel(f"No bonding map from {beta!r} to {alpha!r}.") from None


def _family_spectra(
    fam: DirectedIdealFamily,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
    max_workers: int | None,
) -> dict[str, SpectrumResult]:
    def compute(label: str) -> SpectrumResult:
        return spectrum(fam.ideals[label], kind, cfg)

    if max_workers is not None and max_workers > 1 and len(fam.labels) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(compute, fam.labels))
    else:
        results = [compute(label) for label in fam.labels]
    return dict(zip(fam.labels, results))


def _check_axioms(
    fam: DirectedIdealFamily,
    spaces: Mapping[str, SpectrumResult],
    maps: Mapping[tuple[str, str], IndexTable],
) -> None:
    for label in fam.labels:
        if maps[(label, label)] != tuple(range(len(spaces[label].points))):
            raise SystemAxiomViolation(f"The map from {label!r} to itself is not the identity.")
    for a, b, c in itertools.product(fam.labels, repeat=3):
        if not (fam.leq(a, b) and fam.leq(b, c)):
            continue
        if (a, c) not in maps:
            raise SystemAxiomViolation(f"{a!r} ⊆ {b!r} ⊆ {c!r} but no map from {c!r} to {a!r}.")
        composed = tuple(maps[(a, b)][j] for j in maps[(b, c)])
        if composed != maps[(a, c)]:
            raise SystemAxiomViolation(
                f"Restricting {c!r} → {b!r} → {a!r} differs from {c!r} → {a!r}."
            )


def build_inverse_system(
    algebra: MatrixLieAlgebra | Subalgebra,
    fam: DirectedIdealFamily,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
    *,
    max_workers: int | None = None,
) -> SpectrumInverseSystem:
    """Compute every ``σ(I_α)`` and tabulate the restriction maps.

    Args:
        algebra: The presented algebra.
        fam: A verified presentation of `algebra`.
        kind: Spectrum to compute on each ideal.
        cfg: Tolerances.
        max_workers: Compute the per-ideal spectra on a thread pool.

    Raises:
        NotSubspace: If `fam` presents a different algebra.
        SystemAxiomViolation: If a restriction lands outside the target
            spectrum, or the identity or composition law fails.
    """
    if not fam.total.equals(_domain(algebra), cfg):
        raise NotSubspace(f"Family {fam.name!r} presents a different algebra.")
    spaces = _family_spectra(fam, kind, cfg, max_workers)
    maps: dict[tuple[str, str], IndexTable] = {}
    for beta in fam.labels:
        for alpha in [beta, *fam.below(beta)]:
            table = _restriction_table(spaces[beta], spaces[alpha], cfg)
            missing = [i for i, j in enumerate(table) if j is None]
            if missing:
                raise SystemAxiomViolation(
                    f"Restricting point(s) {missing} of σ({beta}) to {alpha!r} "
                    f"lands outside σ({alpha})."
                )
            maps[(alpha, beta)] = tuple(j for j in table if j is not None)
    _check_axioms(fam, spaces, maps)
    logger.debug(
        "Inverse system over %r: %d space(s), %d map(s).", fam.name, len(spaces), len(maps)
    )
    return SpectrumInverseSystem(
        family=fam, kind=kind, spaces=spaces, maps=maps, tolerances=cfg
    )


def glue_character(
    points: Mapping[str, Character],
    fam: DirectedIdealFamily,
    cfg: ToleranceConfig,
    *,
    rng: np.random.Generator | None = None,
) -> Character:
    """Glue compatible characters of the ideals into one character of the total.

    Each basis element x of the presented algebra is decomposed as
    ``x = Σ x_α`` with ``x_α ∈ I_α`` (minimum-norm solution), and
    ``f(x) = Σ f_α(x_α)``. A second decomposition, shifted by a random
    element of the kernel of the decomposition map, must give the same values.

    Args:
        points: A character of each ``I_α``, by label.
        fam: The presentation.
        cfg: Tolerances.
        rng: Source of the random second decomposition (seed 0 if omitted).

    Raises:
        UnknownLabel: If a label of the family has no character.
        SpanFailure: If the ideals do not span the presented algebra.
        GluingInconsistent: If the two decompositions disagree, or the glued
            functional is not a character.
    """
    for label in fam.labels:
        if label not in points:
            raise UnknownLabel(f"No character given for ideal {label!r}.")
        if points[label].values.shape[0] != fam.ideals[label].dim:
            raise DimensionMismatch(f"Character for {label!r} has the wrong length.")
    total = fam.total
    if total.dim == 0:
        return Character(total, np.zeros(0, dtype=np.complex128))

    stacked = np.hstack([fam.ideals[a].coeff_basis for a in fam.labels])
    values = np.concatenate([points[a].values for a in fam.labels])
    targets = np.asarray(total.coeff_basis)
    coords, *_ = np.linalg.lstsq(stacked, targets, rcond=None)
    residual = float(np.max(np.linalg.norm(stacked @ coords - targets, axis=0)))
    if residual > cfg.rank_tol * max(1.0, float(np.linalg.norm(targets))):
        raise SpanFailure(f"The ideals of {fam.name!r} do not span the presented algebra.")
    glued = values @ coords

    kernel = nullspace_basis(stacked, cfg, scale=1.0)
    if kernel.shape[1] > 0:
        rng = rng if rng is not None else np.random.default_rng(0)
        shift = rng.standard_normal((kernel.shape[1], total.dim))
        other = values @ (coords + kernel @ shift)
        gap = float(np.max(np.abs(other - glued)))
        if gap > cfg.value_tol * max(1.0, float(np.max(np.abs(glued)))):
            raise GluingInconsistent(
                f"Two decompositions over {fam.name!r} give values {gap:.3g} apart."
            )
    result = Character.on(total, glued)
    if not is_character(total, result.values, cfg):
        raise GluingInconsistent("The glued functional does not vanish on the derived algebra.")
    return result


@dataclass(frozen=True, eq=False)
class InverseLimitSpectrum:
    """Compatible tuples of an inverse system and their glued characters.

    Attributes:
        system: The inverse system.
        tuples: Each tuple lists one point index per label, in the order of
            ``system.family.labels``.
        glued: The character of the presented algebra for each tuple.
    """

    system: SpectrumInverseSystem
    tuples: tuple[IndexTable, ...]
    glued: tuple[Character, ...]

    def components(self, index: int) -> dict[str, Character]:
        """The characters ``f_α`` making up tuple `index`."""
        labels = self.system.family.labels
        return {
            a: self.system.points(a)[j] for a, j in zip(labels, self.tuples[index])
        }

    def project(self, label: str) -> list[Character]:
        """``π_α(𝒳_∞)``: the points of ``σ(I_α)`` reached by some tuple."""
        if label not in self.system.family.labels:
            raise UnknownLabel(f"Family {self.system.family.name!r} has no ideal {label!r}.")
        position = self.system.family.labels.index(label)
        hit = sorted({t[position] for t in self.tuples})
        return [self.system.points(label)[j] for j in hit]


def _compatible_tuples(system: SpectrumInverseSystem) -> list[IndexTable]:
    fam = system.family
    order = fam.search_order()
    assignment: dict[str, int] = {}
    found: list[IndexTable] = []

    def options(label: str) -> list[int]:
        forced: int | None = None
        for other, idx in assignment.items():
            if fam.leq(label, other):
                image = system.maps[(label, other)][idx]
                if forced is not None and forced != image:
                    return []
                forced = image
        pool = range(len(system.points(label))) if forced is None else [forced]
        return [
            j
            for j in pool
            if all(
                system.maps[(other, label)][j] == idx
                for other, idx in assignment.items()
                if fam.leq(other, label)
            )
        ]

    def search(depth: int) -> None:
        if depth == len(order):
            found.append(tuple(assignment[a] for a in fam.labels))
            return
        label = order[depth]
        for j in options(label):
            assignment[label] = j
            search(depth + 1)
            del assignment[label]

    search(0)
    return found


def inverse_limit(
    system: SpectrumInverseSystem,
    cfg: ToleranceConfig,
    *,
    seed: int = 0,
) -> InverseLimitSpectrum:
    """Enumerate the compatible tuples and glue each one.

    Labels are fixed in decreasing ideal dimension (ties by label); a label
    below an already fixed one has its point forced by restriction, so the
    search only branches on maximal ideals.

    Args:
        system: A built inverse system.
        cfg: Tolerances.
        seed: Seed of the random cross-check decompositions in gluing.

    Raises:
        EmptyLimit: If no compatible tuple exists.
        GluingInconsistent: If gluing fails or two tuples glue to the same
            character.
    """
    tuples = _compatible_tuples(system)
    if not tuples:
        raise EmptyLimit(f"The inverse limit over {system.family.name!r} is empty.")
    rng = np.random.default_rng(seed)
    labels = system.family.labels
    glued = [
        glue_character(
            {a: system.points(a)[j] for a, j in zip(labels, t)},
            system.family,
            cfg,
            rng=rng,
        )
        for t in tuples
    ]
    for (i, f), (j, g) in itertools.combinations(enumerate(glued), 2):
        if float(np.max(np.abs(f.values - g.values), initial=0.0)) <= cfg.value_tol:
            raise GluingInconsistent(f"Tuples {tuples[i]} and {tuples[j]} glue to one character.")
    order = sorted(
        range(len(tuples)), key=lambda i: character_sort_key(glued[i].values, cfg.value_tol)
    )
    logger.debug("Inverse limit over %r: %d tuple(s).", system.family.name, len(tuples))
    return InverseLimitSpectrum(
        system=system,
        tuples=tuple(tuples[i] for i in order),
        glued=tuple(glued[i] for i in order),
    )


def limit_by_characterization(
    algebra: MatrixLieAlgebra | Subalgebra,
    fam: DirectedIdealFamily,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
) -> list[Character]:
    """Characters of the presented algebra whose restriction to every ideal is in its spectrum.

    Independent of the tuple search: candidates are the spectral candidates
    of the (solvable) presented algebra, each ``σ(I_α)`` is computed afresh.

    Raises:
        NotSubspace: If `fam` presents a different algebra.
        NotSolvable: If the presented algebra is not solvable.
    """
    total = fam.total
    if not total.equals(_domain(algebra), cfg):
        raise NotSubspace(f"Family {fam.name!r} presents a different algebra.")
    candidates = spectral_candidates(total, cfg)
    spaces = {a: spectrum(fam.ideals[a], kind, cfg) for a in fam.labels}
    kept = [
        f
        for f in candidates
        if all(
            nearest_point(
                [p.values for p in spaces[a].points],
                restrict_character(f, fam.ideals[a], cfg).values,
                cfg.value_tol,
            )
            is not None
            for a in fam.labels
        )
    ]
    logger.debug("Characterization kept %d of %d candidate(s).", len(kept), len(candidates))
    return sort_characters(kept, cfg.value_tol)


@dataclass
class SetComparison:
    """Two character sets matched at `value_tol`.

    Attributes:
        equal: Whether every point on each side found a partner.
        left_only: Points of the left set without a partner.
        right_only: Points of the right set without a partner.
    """

    equal: bool
    left_only: list[Character] = field(default_factory=list)
    right_only: list[Character] = field(default_factory=list)


def compare_character_sets(
    left: Sequence[Character], right: Sequence[Character], cfg: ToleranceConfig
) -> SetComparison:
    match = match_points([c.values for c in left], [c.values for c in right], cfg.value_tol)
    return SetComparison(
        equal=match.equal,
        left_only=[left[i] for i in match.unmatched_left],
        right_only=[right[j] for j in match.unmatched_right],
    )


def limit_spectrum(
    algebra: MatrixLieAlgebra | Subalgebra,
    fam: DirectedIdealFamily,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
    *,
    max_workers: int | None = None,
    seed: int = 0,
) -> InverseLimitSpectrum:
    """`build_inverse_system` followed by `inverse_limit`."""
    system = build_inverse_system(algebra, fam, kind, cfg, max_workers=max_workers)
    return inverse_limit(system, cfg, seed=seed)


@dataclass
class SurjectivityReport:
    """Outcome of `check_projections_surjective`.

    Attributes:
        passed: Whether every coordinate projection is onto.
        missed: For each label, the indices of ``σ(I_α)`` reached by no tuple.
    """

    passed: bool
    missed: dict[str, list[int]] = field(default_factory=dict)


def check_projections_surjective(limit: InverseLimitSpectrum) -> SurjectivityReport:
    """Whether each ``π_α : 𝒳_∞ → σ(I_α)`` is onto."""
    report = SurjectivityReport(passed=True)
    for position, label in enumerate(limit.system.family.labels):
        hit = {t[position] for t in limit.tuples}
        missed = [j for j in range(len(limit.system.points(label))) if j not in hit]
        if missed:
            report.missed[label] = missed
    report.passed = not report.missed
    return report


@dataclass
class LimitReport:
    """Everything computed for one presentation.

    Attributes:
        presentation: Family label.
        kind: Spectrum label.
        limit: The inverse limit.
        characterization: Output of `limit_by_characterization`.
        direct: The spectrum of the presented algebra computed directly.
        checks: Named pass/fail verdicts.
        failures: Human-readable descriptions of failed checks.
    """

    presentation: str
    kind: str
    limit: InverseLimitSpectrum
    characterization: list[Character]
    direct: list[Character]
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def limit_report(
    algebra: MatrixLieAlgebra | Subalgebra,
    fam: DirectedIdealFamily,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
    *,
    max_workers: int | None = None,
    seed: int = 0,
) -> LimitReport:
    """Limit spectrum of a presentation with its cross-checks.

    Checks that the glued set equals the characterization set and the
    direct spectrum of the presented algebra, and that the coordinate
    projections are onto. Contract failures (axioms, gluing, emptiness)
    propagate as exceptions.
    """
    limit = limit_spectrum(algebra, fam, kind, cfg, max_workers=max_workers, seed=seed)
    characterization = limit_by_characterization(algebra, fam, kind, cfg)
    direct = list(spectrum(fam.total, kind, cfg).points)
    report = LimitReport(
        presentation=fam.name,
        kind=kind.label,
        limit=limit,
        characterization=characterization,
        direct=direct,
    )
    report.checks["system_axioms"] = True
    report.checks["nonempty"] = bool(limit.glued)
    report.checks["gluing_injective"] = True

    by_characterization = compare_character_sets(list(limit.glued), characterization, cfg)
    report.checks["characterization_equivalence"] = by_characterization.equal
    if not by_characterization.equal:
        report.failures.append(
            f"glued set and characterization differ: {len(by_characterization.left_only)} "
            f"glued and {len(by_characterization.right_only)} characterized point(s) unmatched"
        )
    against_direct = compare_character_sets(list(limit.glued), direct, cfg)
    report.checks["matches_direct_spectrum"] = against_direct.equal
    if not against_direct.equal:
        report.failures.append("glued set differs from the direct spectrum")
    surjective = check_projections_surjective(limit)
    report.checks["projections_surjective"] = surjective.passed
    for label, missed in surjective.missed.items():
        report.failures.append(f"π_{label} misses point(s) {missed}")
    return report


@dataclass
class PresentationReport:
    """Outcome of `check_presentation_independence`.

    Attributes:
        passed: Whether all compared limit spectra are equal.
        first: Glued set of the first presentation.
        second: Glued set of the second presentation.
        joint: Glued set of the merged presentation.
        first_only: Points of `first` unmatched in `second`.
        second_only: Points of `second` unmatched in `first`.
        failures: Human-readable descriptions.
    """

    passed: bool
    first: list[Character] = field(default_factory=list)
    second: list[Character] = field(default_factory=list)
    joint: list[Character] = field(default_factory=list)
    first_only: list[Character] = field(default_factory=list)
    second_only: list[Character] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)


def check_presentation_independence(
    algebra: MatrixLieAlgebra | Subalgebra,
    first: DirectedIdealFamily,
    second: DirectedIdealFamily,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
) -> PresentationReport:
    """Compare the limit spectra of two presentations of the same algebra.

    Both are also compared with the presentation obtained by merging the
    two families.
    """
    report = PresentationReport(passed=True)
    for fam in (first, second):
        family = verify_directed_family(fam, cfg)
        report.failures.extend(f"{fam.name}: {msg}" for msg in family.failures)
    if report.failures:
        report.passed = False
        return report

    try:
        report.first = list(limit_spectrum(algebra, first, kind, cfg).glued)
        report.second = list(limit_spectrum(algebra, second, kind, cfg).glued)
        joint = join_families(first, second, cfg)
        report.joint = list(limit_spectrum(algebra, joint, kind, cfg).glued)
    except (ContractViolation, InputError) as exc:
        report.failures.append(f"{type(exc).__name__}: {exc}")
        report.passed = False
        return report

    pair = compare_character_sets(report.first, report.second, cfg)
    report.first_only, report.second_only = pair.left_only, pair.right_only
    if not pair.equal:
        report.failures.append(f"{first.name} and {second.name} give different spectra")
    if not compare_character_sets(report.first, report.joint, cfg).equal:
        report.failures.append(f"{first.name} differs from the merged presentation")
    report.passed = not report.failures
    return report


@dataclass(frozen=True, eq=False)
class SystemMap:
    """Component maps ``P_α : σ(I_α) → σ(J_α)`` between two inverse systems.

    Attributes:
        source: System over the ideals ``I_α``.
        target: System over subspaces ``J_α ⊆ I_α`` with the same labels.
        components: ``P_α`` as index tables.
    """

    source: SpectrumInverseSystem
    target: SpectrumInverseSystem
    components: Mapping[str, IndexTable]

    def on_tuple(self, t: IndexTable) -> IndexTable:
        """``P∞`` applied to a compatible tuple of the source."""
        return tuple(self.components[a][j] for a, j in zip(self.source.family.labels, t))


def restrict_system(
    source: SpectrumInverseSystem,
    target: SpectrumInverseSystem,
    cfg: ToleranceConfig,
) -> SystemMap:
    """Restriction from each ``σ(I_α)`` to ``σ(J_α)``, checked against the bonding maps.

    Verifies ``P_α ∘ π_α^β = π'_α^β ∘ P_β`` for every bonding map of the source.

    Raises:
        UnknownLabel: If the two systems are indexed differently.
        NotSubspace: If some ``J_α`` is not inside ``I_α``.
        SystemAxiomViolation: If a restriction leaves ``σ(J_α)`` or a square
            fails to commute.
    """
    if source.family.labels != target.family.labels:
        raise UnknownLabel("The two systems are indexed by different labels.")
    components: dict[str, IndexTable] = {}
    for label in source.family.labels:
        table = _restriction_table(source.spaces[label], target.spaces[label], cfg)
        missing = [i for i, j in enumerate(table) if j is None]
        if missing:
            raise SystemAxiomViolation(
                f"Restricting point(s) {missing} of σ({label}) lands outside the target spectrum."
            )
        components[label] = tuple(j for j in table if j is not None)
    for (alpha, beta), bond in source.maps.items():
        if (alpha, beta) not in target.maps:
            raise SystemAxiomViolation(f"The target system has no map from {beta!r} to {alpha!r}.")
        target_bond = target.maps[(alpha, beta)]
        for i, j in enumerate(bond):
            if components[alpha][j] != target_bond[components[beta][i]]:
                raise SystemAxiomViolation(
                    f"Restriction does not commute with the map from {beta!r} to {alpha!r}."
                )
    return SystemMap(source=source, target=target, components=components)


@dataclass
class ProjectionReport:
    """Outcome of `verify_projection_property`.

    Attributes:
        passed: Whether ``σ(L)|H = σ(H)`` and the induced map checks hold.
        restricted: Glued characters of L restricted to H, deduplicated.
        target: Limit spectrum of H under the induced family.
        restricted_only: Restrictions with no partner in `target`.
        target_only: Points of `target` not reached.
        induced_map: ``P∞`` as an index table from tuples of L to tuples of H.
        squares_commute: Whether ``π'_α ∘ P∞ = P_α ∘ π_α`` and each image
            tuple glues to the restriction of the source character.
        failures: Human-readable descriptions.
    """

    passed: bool
    restricted: list[Character] = field(default_factory=list)
    target: list[Character] = field(default_factory=list)
    restricted_only: list[Character] = field(default_factory=list)
    target_only: list[Character] = field(default_factory=list)
    induced_map: list[int] = field(default_factory=list)
    squares_commute: bool = False
    failures: list[str] = field(default_factory=list)


def _induced_map(
    limit: InverseLimitSpectrum,
    sub_limit: InverseLimitSpectrum,
    system_map: SystemMap,
    ideal: Subalgebra,
    cfg: ToleranceConfig,
    report: ProjectionReport,
) -> None:
    positions = {t: i for i, t in enumerate(sub_limit.tuples)}
    labels = limit.system.family.labels
    commute = True
    for index, t in enumerate(limit.tuples):
        image = system_map.on_tuple(t)
        target_index = positions.get(image)
        if target_index is None:
            report.failures.append(f"P∞ sends tuple {t} outside the limit of the ideal")
            commute = False
            continue
        report.induced_map.append(target_index)
        for position, label in enumerate(labels):
            expected = system_map.components[label][t[position]]
            if sub_limit.tuples[target_index][position] != expected:
                commute = False
        restricted = restrict_character(limit.glued[index], ideal, cfg)
        difference = restricted.values - sub_limit.glued[target_index].values
        gap = float(np.max(np.abs(difference), initial=0.0))
        if gap > cfg.value_tol:
            report.failures.append(f"tuple {t}: glued restriction and image differ by {gap:.3g}")
            commute = False
    missed = sorted(set(range(len(sub_limit.tuples))) - set(report.induced_map))
    if missed:
        report.failures.append(f"P∞ misses tuple(s) {missed} of the ideal's limit")
    report.squares_commute = commute


def verify_projection_property(
    algebra: MatrixLieAlgebra | Subalgebra,
    fam: DirectedIdealFamily,
    ideal: Subalgebra,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
) -> ProjectionReport:
    """Check ``σ(L, (I_α))|H = σ(H, (H ∩ I_α))`` for an ideal H of L.

    Builds the induced family, both limits, the component restrictions
    ``P_α`` and the induced tuple map ``P∞``, and compares the restricted
    glued characters with the limit spectrum of H.
    """
    report = ProjectionReport(passed=True)
    name = ideal.name or "H"
    try:
        if not is_ideal(ideal, fam.total, cfg):
            report.failures.append(f"{name} is not an ideal of the presented algebra")
    except NotSubspace:
        report.failures.append(f"{name} is not a subspace of the presented algebra")
    if report.failures:
        report.passed = False
        return report

    try:
        induced = intersect_with_ideal(ideal, fam, cfg, name=f"{fam.name}∩{name}")
        system = build_inverse_system(algebra, fam, kind, cfg)
        limit = inverse_limit(system, cfg)
        sub_system = build_inverse_system(ideal, induced, kind, cfg)
        sub_limit = inverse_limit(sub_system, cfg)
        system_map = restrict_system(system, sub_system, cfg)
    except (ContractViolation, InputError) as exc:
        report.failures.append(f"{type(exc).__name__}: {exc}")
        report.passed = False
        return report

    report.restricted = dedup_characters(
        (restrict_character(f, ideal, cfg) for f in limit.glued), cfg.value_tol
    )
    report.target = list(sub_limit.glued)
    comparison = compare_character_sets(report.restricted, report.target, cfg)
    report.restricted_only, report.target_only = comparison.left_only, comparison.right_only
    if not comparison.equal:
        report.failures.append(f"σ(L)|{name} differs from σ({name})")
    _induced_map(limit, sub_limit, system_map, ideal, cfg, report)
    report.passed = not report.failures
    return report


@dataclass
class UniquenessReport:
    """Outcome of `uniqueness_audit`.

    Attributes:
        passed: Whether all three conditions hold.
        characters: Condition (i): the limit is a nonempty finite set of characters.
        finite_case: Condition (ii): per audited ideal, whether its limit
            spectrum under the induced family equals its direct spectrum.
        projection: Condition (iii): per ``(M, H)`` pair, whether the
            spectrum of M restricts onto the spectrum of H.
        failures: Human-readable descriptions.
    """

    passed: bool
    characters: bool = False
    finite_case: dict[str, bool] = field(default_factory=dict)
    projection: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)


def _induced_limit(
    sub: Subalgebra, fam: DirectedIdealFamily, kind: SpectrumKind, cfg: ToleranceConfig
) -> list[Character]:
    induced = intersect_with_ideal(sub, fam, cfg)
    return list(limit_spectrum(sub, induced, kind, cfg).glued)


def uniqueness_audit(
    algebra: MatrixLieAlgebra | Subalgebra,
    fam: DirectedIdealFamily,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
    *,
    ideals: Sequence[Subalgebra] = (),
    pairs: Sequence[tuple[Subalgebra, Subalgebra]] = (),
) -> UniquenessReport:
    """Audit the three defining conditions of the extended spectrum.

    (i) the limit spectrum is a nonempty finite set of characters; (ii) for
    each solvable ideal H in `ideals`, the limit spectrum of H under the
    induced family equals ``σ(H)`` computed directly; (iii) for each pair
    ``(M, H)`` of a subalgebra M and an ideal H of M, the spectrum of M
    (under ``(M ∩ I_α)``) restricts onto the spectrum of H.

    Without explicit lists the family's own ideals are audited for (ii) and
    the pairs ``(L, I_α)`` for (iii).
    """
    report = UniquenessReport(passed=True)
    total = fam.total
    try:
        limit = limit_spectrum(algebra, fam, kind, cfg)
        report.characters = bool(limit.glued) and all(
            is_character(total, f.values, cfg) for f in limit.glued
        )
    except (ContractViolation, InputError) as exc:
        report.failures.append(f"(i) {type(exc).__name__}: {exc}")
    if not report.characters and not report.failures:
        report.failures.append("(i) the limit is not a nonempty set of characters")

    audited = list(ideals) or [fam.ideals[a] for a in fam.labels]
    for index, ideal in enumerate(audited):
        name = ideal.name or f"H{index}"
        try:
            if not is_ideal(ideal, total, cfg):
                raise NotSubspace(f"{name} is not an ideal of the presented algebra.")
            direct = list(spectrum(ideal, kind, cfg).points)
            via_limit = _induced_limit(ideal, fam, kind, cfg)
            ok = compare_character_sets(via_limit, direct, cfg).equal
        except (ContractViolation, InputError) as exc:
            report.failures.append(f"(ii) {name}: {type(exc).__name__}: {exc}")
            ok = False
        else:
            if not ok:
                report.failures.append(f"(ii) {name}: limit spectrum differs from σ({name})")
        report.finite_case[name] = ok

    audited_pairs = list(pairs) or [(total, fam.ideals[a]) for a in fam.labels]
    for index, (outer, inner) in enumerate(audited_pairs):
        label = f"{outer.name or f'M{index}'}|{inner.name or f'H{index}'}"
        try:
            if not is_subalgebra(outer, cfg) or not total.contains(outer, cfg):
                raise NotSubspace(f"{label}: M is not a subalgebra of the presented algebra.")
            if not is_ideal(inner, outer, cfg):
                raise NotSubspace(f"{label}: H is not an ideal of M.")
            outer_spectrum = _induced_limit(outer, fam, kind, cfg)
            inner_spectrum = _induced_limit(inner, fam, kind, cfg)
            restricted = dedup_characters(
                (restrict_character(f, inner, cfg) for f in outer_spectrum), cfg.value_tol
            )
            ok = compare_character_sets(restricted, inner_spectrum, cfg).equal
        except (ContractViolation, InputError) as exc:
            report.failures.append(f"(iii) {label}: {type(exc).__name__}: {exc}")
            ok = False
        else:
            if not ok:
                report.failures.append(f"(iii) {label}: restriction differs")
        report.projection[label] = ok

    report.passed = not report.failures
    return report


__all__ = [
    "IndexTable",
    "SpectrumInverseSystem",
    "InverseLimitSpectrum",
    "SystemMap",
    "SetComparison",
    "SurjectivityReport",
    "LimitReport",
    "PresentationReport",
    "ProjectionReport",
    "UniquenessReport",
    "build_inverse_system",
    "glue_character",
    "inverse_limit",
    "limit_spectrum",
    "limit_by_characterization",
    "compare_character_sets",
    "check_projections_surjective",
    "limit_report",
    "check_presentation_independence",
    "restrict_system",
    "verify_projection_property",
    "uniqueness_audit",
]
