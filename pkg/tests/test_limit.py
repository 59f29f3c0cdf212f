"""Tests for inverse systems of spectra and their limits."""

import dataclasses

import numpy as np
import pytest

from quasisolvable_spectra import (
    CorpusSpec,
    DirectedIdealFamily,
    EmptyLimit,
    GluingInconsistent,
    InverseLimitSpectrum,
    NotSubspace,
    SpanFailure,
    SpectrumKind,
    UnknownLabel,
    build_inverse_system,
    check_presentation_independence,
    check_projections_surjective,
    generate_corpus,
    glue_character,
    inverse_limit,
    limit_by_characterization,
    limit_report,
    limit_spectrum,
    load_problem,
    restrict_system,
    uniqueness_audit,
    verify_projection_property,
    verify_spectrum_contract,
)
from quasisolvable_spectra.characters import Character
from quasisolvable_spectra.lie import intersect_with_ideal

TAYLOR = SpectrumKind.taylor()


def _values(chars):
    return [np.round(c.values.real, 6).tolist() for c in chars]


@pytest.fixture
def chain_2d(solvable_2d, cfg):
    """{I1 = span{B}, L} presenting the 2-dim algebra."""
    return DirectedIdealFamily.from_ideals(
        solvable_2d,
        {"I1": solvable_2d.span([[0, 1]]), "L": solvable_2d.whole()},
        cfg,
        declared_order=[("I1", "L")],
        name="P1",
    )


@pytest.fixture
def whole_2d(solvable_2d, cfg):
    return DirectedIdealFamily.from_ideals(
        solvable_2d, {"L": solvable_2d.whole()}, cfg, name="P2"
    )


@pytest.fixture
def diagonal_family(diagonal_pair, cfg):
    """{D1, D2, L}: two lines and their sum."""
    return DirectedIdealFamily.from_ideals(
        diagonal_pair,
        {
            "D1": diagonal_pair.span([[1, 0]]),
            "D2": diagonal_pair.span([[0, 1]]),
            "L": diagonal_pair.whole(),
        },
        cfg,
        name="P1",
    )


@pytest.fixture
def heisenberg_chain(heisenberg, cfg):
    """{Z, XZ, L}."""
    return DirectedIdealFamily.from_ideals(
        heisenberg,
        {
            "Z": heisenberg.span([[0, 0, 1]]),
            "XZ": heisenberg.span([[1, 0, 0], [0, 0, 1]]),
            "L": heisenberg.whole(),
        },
        cfg,
        declared_order=[("Z", "XZ"), ("XZ", "L")],
        name="P1",
    )


class TestBuildInverseSystem:
    """Tests for build_inverse_system."""

    def test_spaces_and_maps(self, solvable_2d, chain_2d, cfg):
        """Test the spectra and bonding maps of the 2-dim chain."""
        system = build_inverse_system(solvable_2d, chain_2d, TAYLOR, cfg)
        assert _values(system.points("I1")) == [[0.0]]
        assert _values(system.points("L")) == [[0.0, 0.0], [2.0, 0.0]]
        assert system.bond("I1", "L") == (0, 0)
        assert system.bond("L", "L") == (0, 1)
        assert system.bond("I1", "I1") == (0,)

    def test_missing_bond(self, solvable_2d, chain_2d, cfg):
        """Test asking for a map against the inclusion order."""
        system = build_inverse_system(solvable_2d, chain_2d, TAYLOR, cfg)
        with pytest.raises(UnknownLabel):
            system.bond("L", "I1")

    def test_thread_pool(self, diagonal_pair, diagonal_family, cfg):
        """Test that a worker pool gives the same spaces."""
        serial = build_inverse_system(diagonal_pair, diagonal_family, TAYLOR, cfg)
        pooled = build_inverse_system(
            diagonal_pair, diagonal_family, TAYLOR, cfg, max_workers=3
        )
        for label in diagonal_family.labels:
            assert _values(serial.points(label)) == _values(pooled.points(label))
        assert serial.maps == pooled.maps

    def test_family_of_other_algebra(self, solvable_2d, cfg):
        """Test a family whose ideals do not present the given algebra."""
        ideal = solvable_2d.span([[0, 1]])
        fam = DirectedIdealFamily.from_ideals(solvable_2d, {"I1": ideal}, cfg)
        with pytest.raises(NotSubspace):
            build_inverse_system(ideal, fam, TAYLOR, cfg)


class TestInverseLimit:
    """Tests for inverse_limit and gluing."""

    def test_2d_chain(self, solvable_2d, chain_2d, cfg):
        """Test the glued set {(0, 0), (2, 0)}."""
        limit = limit_spectrum(solvable_2d, chain_2d, TAYLOR, cfg)
        assert _values(limit.glued) == [[0.0, 0.0], [2.0, 0.0]]
        assert limit.tuples == ((0, 0), (0, 1))
        assert _values(limit.components(1).values()) == [[0.0], [2.0, 0.0]]

    def test_singleton_family(self, solvable_2d, whole_2d, cfg):
        """Test that the family {L} gives the spectrum of L."""
        limit = limit_spectrum(solvable_2d, whole_2d, TAYLOR, cfg)
        assert _values(limit.glued) == [[0.0, 0.0], [2.0, 0.0]]

    def test_diagonal_family(self, diagonal_pair, diagonal_family, cfg):
        """Test the joint spectrum recovered from two lines and their sum."""
        limit = limit_spectrum(diagonal_pair, diagonal_family, TAYLOR, cfg)
        assert _values(limit.glued) == [[0.0, 1.0], [1.0, 0.0], [2.0, -1.0]]
        assert _values(limit.project("D1")) == [[0.0], [1.0], [2.0]]
        assert _values(limit.project("D2")) == [[-1.0], [0.0], [1.0]]

    def test_project_unknown_label(self, solvable_2d, chain_2d, cfg):
        """Test projecting to a label outside the family."""
        limit = limit_spectrum(solvable_2d, chain_2d, TAYLOR, cfg)
        with pytest.raises(UnknownLabel):
            limit.project("I9")

    def test_slodkowski_kinds(self, solvable_2d, chain_2d, cfg):
        """Test the delta(0) and pi(0) limits of the 2-dim chain."""
        delta = limit_spectrum(solvable_2d, chain_2d, SpectrumKind.delta(0), cfg)
        pi = limit_spectrum(solvable_2d, chain_2d, SpectrumKind.pi(0), cfg)
        assert _values(delta.glued) == [[0.0, 0.0]]
        assert _values(pi.glued) == [[2.0, 0.0]]

    def test_empty_limit(self, solvable_2d, chain_2d, cfg):
        """Test that a system with an empty top space raises EmptyLimit."""
        system = build_inverse_system(solvable_2d, chain_2d, TAYLOR, cfg)
        broken = dataclasses.replace(
            system,
            spaces={**system.spaces, "L": dataclasses.replace(system.spaces["L"], points=())},
            maps={**system.maps, ("I1", "L"): (), ("L", "L"): ()},
        )
        with pytest.raises(EmptyLimit):
            inverse_limit(broken, cfg)

    def test_heisenberg_chain(self, heisenberg, heisenberg_chain, cfg):
        """Test the nilpotent case: every space is the zero character."""
        limit = limit_spectrum(heisenberg, heisenberg_chain, TAYLOR, cfg)
        assert _values(limit.glued) == [[0.0, 0.0, 0.0]]


class TestGlueCharacter:
    """Tests for glue_character."""

    def test_overlapping_ideals(self, solvable_2d, chain_2d, cfg):
        """Test gluing over a family whose ideals overlap."""
        points = {
            "I1": Character.on(chain_2d.ideals["I1"], [0.0]),
            "L": Character.on(chain_2d.ideals["L"], [2.0, 0.0]),
        }
        glued = glue_character(points, chain_2d, cfg)
        assert np.allclose(glued.values, [2.0, 0.0])

    def test_inconsistent_values(self, diagonal_family, cfg):
        """Test characters that disagree on the overlap."""
        points = {
            "D1": Character.on(diagonal_family.ideals["D1"], [1.0]),
            "D2": Character.on(diagonal_family.ideals["D2"], [0.0]),
            "L": Character.on(diagonal_family.ideals["L"], [2.0, -1.0]),
        }
        with pytest.raises(GluingInconsistent):
            glue_character(points, diagonal_family, cfg)

    def test_missing_label(self, chain_2d, cfg):
        """Test a tuple missing one ideal."""
        with pytest.raises(UnknownLabel):
            glue_character({"I1": Character.on(chain_2d.ideals["I1"], [0.0])}, chain_2d, cfg)

    def test_ideals_do_not_span(self, solvable_2d, cfg):
        """Test a family presenting the algebra without spanning it."""
        ideal = solvable_2d.span([[0, 1]])
        fam = DirectedIdealFamily.from_ideals(solvable_2d, {"I1": ideal}, cfg)
        with pytest.raises(SpanFailure):
            glue_character({"I1": Character.on(fam.ideals["I1"], [0.0])}, fam, cfg)


class TestCharacterization:
    """Tests for limit_by_characterization and limit_report."""

    def test_equals_glued_set(self, solvable_2d, chain_2d, cfg):
        """Test that the characterization finds the glued set."""
        kept = limit_by_characterization(solvable_2d, chain_2d, TAYLOR, cfg)
        assert _values(kept) == [[0.0, 0.0], [2.0, 0.0]]

    def test_report_checks(self, diagonal_pair, diagonal_family, cfg):
        """Test that every named check passes."""
        report = limit_report(diagonal_pair, diagonal_family, TAYLOR, cfg)
        assert set(report.checks) == {
            "system_axioms",
            "nonempty",
            "gluing_injective",
            "characterization_equivalence",
            "matches_direct_spectrum",
            "projections_surjective",
        }
        assert report.passed, report.failures
        assert report.kind == "taylor"
        assert report.presentation == "P1"


class TestSurjectivity:
    """Tests for check_projections_surjective."""

    def test_limit_is_onto(self, diagonal_pair, diagonal_family, cfg):
        """Test that every coordinate projection of a limit is onto."""
        limit = limit_spectrum(diagonal_pair, diagonal_family, TAYLOR, cfg)
        assert check_projections_surjective(limit).passed

    def test_truncated_limit_misses_points(self, diagonal_pair, diagonal_family, cfg):
        """Test a tuple set that does not reach every point."""
        limit = limit_spectrum(diagonal_pair, diagonal_family, TAYLOR, cfg)
        truncated = InverseLimitSpectrum(
            system=limit.system, tuples=limit.tuples[:1], glued=limit.glued[:1]
        )
        report = check_projections_surjective(truncated)
        assert not report.passed
        assert len(report.missed["D1"]) == 2
        assert len(report.missed["L"]) == 2


class TestPresentationIndependence:
    """Tests for check_presentation_independence."""

    def test_2d(self, solvable_2d, chain_2d, whole_2d, cfg):
        """Test {I1, L} against {L}."""
        report = check_presentation_independence(solvable_2d, chain_2d, whole_2d, TAYLOR, cfg)
        assert report.passed, report.failures
        assert _values(report.joint) == [[0.0, 0.0], [2.0, 0.0]]

    def test_heisenberg(self, heisenberg, heisenberg_chain, cfg):
        """Test two presentations of the Heisenberg algebra."""
        other = DirectedIdealFamily.from_ideals(
            heisenberg,
            {
                "XZ": heisenberg.span([[1, 0, 0], [0, 0, 1]]),
                "YZ": heisenberg.span([[0, 1, 0], [0, 0, 1]]),
                "L": heisenberg.whole(),
            },
            cfg,
            name="P2",
        )
        report = check_presentation_independence(
            heisenberg, heisenberg_chain, other, SpectrumKind.pi(1), cfg
        )
        assert report.passed, report.failures

    def test_invalid_family_reported(self, heisenberg, heisenberg_chain, cfg):
        """Test that a family without upper bounds is reported, not raised."""
        undirected = DirectedIdealFamily.from_ideals(
            heisenberg,
            {
                "XZ": heisenberg.span([[1, 0, 0], [0, 0, 1]]),
                "YZ": heisenberg.span([[0, 1, 0], [0, 0, 1]]),
            },
            cfg,
            name="P3",
        )
        report = check_presentation_independence(
            heisenberg, heisenberg_chain, undirected, TAYLOR, cfg
        )
        assert not report.passed
        assert any("upper bound" in msg for msg in report.failures)


class TestProjectionProperty:
    """Tests for restrict_system and verify_projection_property."""

    def test_2d_ideal(self, solvable_2d, chain_2d, cfg):
        """Test σ(L)|span{B} = σ(span{B}) through the induced family."""
        report = verify_projection_property(
            solvable_2d, chain_2d, solvable_2d.span([[0, 1]]).named("H"), TAYLOR, cfg
        )
        assert report.passed, report.failures
        assert report.squares_commute
        assert report.induced_map == [0, 0]
        assert _values(report.restricted) == [[0.0]]

    def test_diagonal_line(self, diagonal_pair, diagonal_family, cfg):
        """Test restricting to span{D1 + D2} across two lines."""
        line = diagonal_pair.span([[1, 1]]).named("H")
        report = verify_projection_property(diagonal_pair, diagonal_family, line, TAYLOR, cfg)
        assert report.passed, report.failures
        assert _values(report.target) == [[1.0]]

    def test_not_an_ideal(self, solvable_2d, chain_2d, cfg):
        """Test that a non-ideal is reported."""
        report = verify_projection_property(
            solvable_2d, chain_2d, solvable_2d.span([[1, 0]]), TAYLOR, cfg
        )
        assert not report.passed
        assert "not an ideal" in report.failures[0]

    def test_restrict_system(self, solvable_2d, chain_2d, cfg):
        """Test the component maps onto the induced system."""
        ideal = solvable_2d.span([[0, 1]]).named("H")
        source = build_inverse_system(solvable_2d, chain_2d, TAYLOR, cfg)
        induced = intersect_with_ideal(ideal, chain_2d, cfg)
        target = build_inverse_system(ideal, induced, TAYLOR, cfg)
        system_map = restrict_system(source, target, cfg)
        assert system_map.components["L"] == (0, 0)
        assert system_map.components["I1"] == (0,)
        assert system_map.on_tuple((0, 1)) == (0, 0)

    def test_restrict_system_labels_differ(self, solvable_2d, chain_2d, whole_2d, cfg):
        """Test systems indexed by different labels."""
        first = build_inverse_system(solvable_2d, chain_2d, TAYLOR, cfg)
        second = build_inverse_system(solvable_2d, whole_2d, TAYLOR, cfg)
        with pytest.raises(UnknownLabel):
            restrict_system(first, second, cfg)


class TestUniquenessAudit:
    """Tests for uniqueness_audit."""

    def test_default_lists(self, heisenberg, heisenberg_chain, cfg):
        """Test the family's own ideals and the pairs (L, I)."""
        report = uniqueness_audit(heisenberg, heisenberg_chain, TAYLOR, cfg)
        assert report.passed, report.failures
        assert report.characters
        assert set(report.finite_case) == {"Z", "XZ", "L"}
        assert len(report.projection) == 3

    def test_explicit_pairs(self, heisenberg, heisenberg_chain, cfg):
        """Test a pair (M, H) with M a proper subalgebra."""
        xz = heisenberg.span([[1, 0, 0], [0, 0, 1]]).named("XZ")
        z = heisenberg.span([[0, 0, 1]]).named("Z")
        report = uniqueness_audit(
            heisenberg, heisenberg_chain, TAYLOR, cfg, ideals=[z], pairs=[(xz, z)]
        )
        assert report.passed, report.failures
        assert report.projection == {"XZ|Z": True}

    def test_pair_not_an_ideal(self, solvable_2d, chain_2d, cfg):
        """Test that a pair whose inner part is not an ideal fails condition (iii)."""
        whole = solvable_2d.whole().named("L")
        line = solvable_2d.span([[1, 0]]).named("A")
        report = uniqueness_audit(solvable_2d, chain_2d, TAYLOR, cfg, pairs=[(whole, line)])
        assert not report.passed
        assert report.projection == {"L|A": False}
        assert report.failures[0].startswith("(iii)")


def _corpus_problems(cfg, *, seed, count):
    spec = CorpusSpec(seed=seed, count=count, max_space_dim=3, max_algebra_dim=3)
    for instance in generate_corpus(spec, cfg):
        yield load_problem(instance.to_json(), cfg)


def _kinds(kind_name, n):
    if kind_name == "taylor":
        return [TAYLOR]
    make = SpectrumKind.delta if kind_name == "delta" else SpectrumKind.pi
    return [make(k) for k in range(n + 1)]


def _same_ideals(first, second, cfg):
    if len(first.labels) != len(second.labels):
        return False
    return all(any(first[a].equals(second[b], cfg) for b in second.labels) for a in first.labels)


@pytest.mark.slow
class TestRandomCorpus:
    """Tests of the limit constructions over seeded random corpora."""

    @pytest.mark.parametrize("kind_name", ["taylor", "delta", "pi"])
    def test_spectrum_contract(self, cfg, kind_name):
        """Test σ(L)|H = σ(H) at every level on at least 50 (L, H) pairs."""
        checked = 0
        for problem in _corpus_problems(cfg, seed=11, count=200):
            for label in problem.tasks.ideals:
                ideal = problem.subalgebra(label)
                for kind in _kinds(kind_name, problem.algebra.dim):
                    report = verify_spectrum_contract(problem.algebra, ideal, kind, cfg)
                    assert report.passed, (kind.label, report.failures)
                checked += 1
            if checked >= 50:
                break
        assert checked >= 50

    def test_characterization_equivalence(self, cfg):
        """Test glued set = characterization = direct spectrum on 30 instances."""
        for problem in _corpus_problems(cfg, seed=12, count=30):
            report = limit_report(problem.algebra, problem.family("P1"), TAYLOR, cfg)
            assert report.passed, report.failures

    def test_presentation_independence(self, cfg):
        """Test two distinct presentations agree on at least 20 algebras."""
        checked = 0
        for problem in _corpus_problems(cfg, seed=13, count=100):
            if problem.algebra.dim < 2:
                continue
            first, second = problem.family("P1"), problem.family("P2")
            assert not _same_ideals(first, second, cfg)
            report = check_presentation_independence(problem.algebra, first, second, TAYLOR, cfg)
            assert report.passed, report.failures
            checked += 1
            if checked >= 20:
                break
        assert checked >= 20

    @pytest.mark.parametrize("kind_name", ["taylor", "delta", "pi"])
    def test_projection_property(self, cfg, kind_name):
        """Test the projection property at every level on at least 30 triples."""
        checked = 0
        for problem in _corpus_problems(cfg, seed=14, count=200):
            for label in problem.tasks.ideals:
                for kind in _kinds(kind_name, problem.algebra.dim):
                    report = verify_projection_property(
                        problem.algebra,
                        problem.family("P1"),
                        problem.subalgebra(label),
                        kind,
                        cfg,
                    )
                    assert report.passed, (kind.label, report.failures)
                checked += 1
            if checked >= 30:
                break
        assert checked >= 30
