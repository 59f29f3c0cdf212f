"""Tests for characters, restriction and weights."""

import numpy as np
import pytest

from quasisolvable_spectra import (
    Character,
    DimensionMismatch,
    NotSolvable,
    NotSubspace,
    adjoint_weights,
    character_space,
    is_character,
    restrict_character,
    restriction_matrix,
    simultaneous_triangularize,
    verify_algebra,
)
from quasisolvable_spectra.characters import dedup_characters, sort_characters
from quasisolvable_spectra.numeric import random_well_conditioned

from .conftest import unit


def _values(chars):
    return [np.round(c.values.real, 6).tolist() for c in chars]


class TestCharacter:
    """Tests for the Character type."""

    def test_wrong_length(self, solvable_2d):
        """Test that the value count must match the domain."""
        with pytest.raises(DimensionMismatch):
            Character.on(solvable_2d, [1.0])

    def test_evaluate(self, solvable_2d, cfg):
        """Test evaluation on parent coefficients."""
        f = Character.on(solvable_2d, [2.0, 0.0])
        assert f(np.array([3.0, 5.0]), cfg) == pytest.approx(6.0)

    def test_evaluate_outside_domain(self, solvable_2d, cfg):
        """Test evaluation outside the domain."""
        f = Character.on(solvable_2d.span([[0, 1]]), [0.0])
        with pytest.raises(NotSubspace):
            f(np.array([1.0, 0.0]), cfg)

    def test_label(self, solvable_2d):
        """Test the default and named labels."""
        assert Character.on(solvable_2d, [0, 0]).label == "L"
        assert Character.on(solvable_2d.span([[0, 1]]).named("I1"), [0]).label == "I1"

    def test_sort_and_dedup(self, diagonal_pair):
        """Test ordering and deduplication at tolerance."""
        chars = [
            Character.on(diagonal_pair, [2.0, -1.0]),
            Character.on(diagonal_pair, [0.0, 1.0]),
            Character.on(diagonal_pair, [2.0 + 1e-9, -1.0]),
        ]
        kept = dedup_characters(chars, 1e-6)
        assert _values(kept) == [[0.0, 1.0], [2.0, -1.0]]
        assert _values(sort_characters(chars[:2], 1e-6)) == [[0.0, 1.0], [2.0, -1.0]]


class TestCharacterSpace:
    """Tests for character_space and is_character."""

    def test_2d(self, solvable_2d, cfg):
        """Test that characters of the 2-dim algebra vanish on B."""
        space = character_space(solvable_2d, cfg)
        assert space.shape == (2, 1)
        assert abs(space[1, 0]) < 1e-12
        assert is_character(solvable_2d, [3.0, 0.0], cfg)
        assert not is_character(solvable_2d, [0.0, 1.0], cfg)

    def test_heisenberg(self, heisenberg, cfg):
        """Test that characters of the Heisenberg algebra vanish on Z."""
        assert character_space(heisenberg, cfg).shape == (3, 2)
        assert is_character(heisenberg, [1.0, 2.0, 0.0], cfg)
        assert not is_character(heisenberg, [0.0, 0.0, 1.0], cfg)

    def test_abelian(self, diagonal_pair, cfg):
        """Test that every functional of an abelian algebra is a character."""
        assert character_space(diagonal_pair, cfg).shape == (2, 2)

    def test_wrong_length(self, solvable_2d, cfg):
        """Test a value vector of the wrong length."""
        with pytest.raises(DimensionMismatch):
            is_character(solvable_2d, [1.0], cfg)


class TestRestriction:
    """Tests for restriction_matrix and restrict_character."""

    def test_restrict_to_ideal(self, solvable_2d, cfg):
        """Test restricting to span{B}."""
        ideal = solvable_2d.span([[0, 1]])
        restricted = restrict_character(Character.on(solvable_2d, [2.0, 0.0]), ideal, cfg)
        assert restricted.domain is ideal
        assert np.allclose(restricted.values, [0.0])

    def test_restrict_to_combination(self, diagonal_pair, cfg):
        """Test restricting to span{D1 + D2}."""
        line = diagonal_pair.span([[1, 1]])
        matrix = restriction_matrix(diagonal_pair, line, cfg)
        assert np.allclose(matrix, [[1.0, 1.0]])
        f = Character.on(diagonal_pair, [2.0, -1.0])
        assert np.allclose(restrict_character(f, line, cfg).values, [1.0])

    def test_restriction_composes(self, heisenberg, cfg):
        """Test that restricting in two steps equals restricting once."""
        xz = heisenberg.span([[1, 0, 0], [0, 0, 1]])
        z = heisenberg.span([[0, 0, 1]])
        f = Character.on(heisenberg, [1.5, -2.0, 0.0])
        direct = restrict_character(f, z, cfg)
        stepwise = restrict_character(restrict_character(f, xz, cfg), z, cfg)
        assert np.allclose(direct.values, stepwise.values)

    def test_restrict_outside(self, solvable_2d, cfg):
        """Test restricting to a subspace outside the domain."""
        f = Character.on(solvable_2d.span([[0, 1]]), [0.0])
        with pytest.raises(NotSubspace):
            restrict_character(f, solvable_2d.span([[1, 0]]), cfg)


class TestWeights:
    """Tests for simultaneous_triangularize and adjoint_weights."""

    def test_2d_weights(self, solvable_2d, cfg):
        """Test the weights (1, 0) and (0, 0)."""
        result = simultaneous_triangularize(solvable_2d, cfg)
        assert _values(result.weights) == [[0.0, 0.0], [1.0, 0.0]]
        assert len(result.all_weights) == 2
        assert result.residual < 1e-9

    def test_heisenberg_weights(self, heisenberg, cfg):
        """Test that a nilpotent algebra has the zero weight only."""
        result = simultaneous_triangularize(heisenberg, cfg)
        assert _values(result.weights) == [[0.0, 0.0, 0.0]]
        assert len(result.all_weights) == 3

    def test_diagonal_weights(self, diagonal_pair, cfg):
        """Test that diagonal algebras have the joint diagonal entries as weights."""
        result = simultaneous_triangularize(diagonal_pair, cfg)
        assert _values(result.weights) == [[0.0, 1.0], [1.0, 0.0], [2.0, -1.0]]

    def test_transform_triangularizes(self, solvable_2d, cfg):
        """Test that T^H B T is upper triangular for every basis matrix."""
        result = simultaneous_triangularize(solvable_2d, cfg)
        t = result.transform
        assert np.allclose(t.conj().T @ t, np.eye(2))
        for m in solvable_2d.basis:
            assert np.allclose(np.tril(t.conj().T @ m @ t, -1), 0.0, atol=1e-9)

    def test_conjugated_weights(self, rng, cfg):
        """Test that weights survive a change of basis of C^d."""
        p = random_well_conditioned(rng, 3, max_condition=50.0)
        p_inv = np.linalg.inv(p)
        base = [np.diag([1.0, 2.0, 2.0]) + unit(3, 0, 2), unit(3, 0, 1) + unit(3, 0, 2)]
        algebra = verify_algebra([p @ m @ p_inv for m in base], cfg)
        result = simultaneous_triangularize(algebra, cfg)
        direct = simultaneous_triangularize(verify_algebra(base, cfg), cfg)
        assert len(result.weights) == len(direct.weights)
        for got, want in zip(result.weights, direct.weights):
            assert np.allclose(got.values, want.values, atol=1e-6)

    def test_single_operator_weights(self, rng, cfg):
        """Test that the weights of one matrix are its eigenvalues."""
        for _ in range(10):
            d = int(rng.integers(1, 5))
            m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            result = simultaneous_triangularize(verify_algebra([m], cfg), cfg)
            eig = np.linalg.eigvals(m)
            assert len(result.all_weights) == d
            for w in result.all_weights:
                assert np.min(np.abs(eig - w.values[0])) < 1e-6

    def test_adjoint_weights_2d(self, solvable_2d, cfg):
        """Test the roots 1 and 0 of the 2-dim algebra."""
        result = adjoint_weights(solvable_2d, cfg)
        assert sorted(_values(result.all_weights)) == [[0.0, 0.0], [1.0, 0.0]]

    def test_adjoint_weights_zero_algebra(self, solvable_2d, cfg):
        """Test the zero subalgebra has no roots."""
        result = adjoint_weights(solvable_2d.zero_subalgebra(), cfg)
        assert result.all_weights == ()

    def test_not_solvable(self, cfg):
        """Test that sl(2) has no weight list."""
        sl2 = verify_algebra([unit(2, 0, 1), unit(2, 1, 0), np.diag([1.0, -1.0])], cfg)
        with pytest.raises(NotSolvable):
            simultaneous_triangularize(sl2, cfg)
