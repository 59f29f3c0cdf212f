"""Tests for the command-line front end."""

import json

import numpy as np
import pytest

from quasisolvable_spectra import CorpusSpec, generate_corpus, named_instances, verify_algebra
from quasisolvable_spectra.cli import EXIT_CHECK, EXIT_CONTRACT, EXIT_INPUT, EXIT_OK, main
from quasisolvable_spectra.serialization import problem_to_json


def _catalog_doc(cfg, name):
    instance = next(i for i in named_instances(cfg) if i.name == name)
    return instance.to_json()


def _write(tmp_path, doc, filename="problem.json"):
    path = tmp_path / filename
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def _stderr_error(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


class TestSpectrumCommand:
    """Tests for `spectrum`."""

    def test_heisenberg(self, tmp_path, capsys, cfg):
        """Test the Heisenberg algebra has the zero point."""
        path = _write(tmp_path, _catalog_doc(cfg, "heisenberg"))
        assert main(["spectrum", "--input", path]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["kind"] == "taylor"
        assert [p["values"] for p in payload["points"]] == [[[0.0, 0.0]] * 3]

    def test_single_operator(self, tmp_path, capsys, cfg):
        """Test diag(1, 2) gives the two eigenvalues."""
        doc = problem_to_json(verify_algebra([np.diag([1.0, 2.0])], cfg))
        path = _write(tmp_path, doc)
        assert main(["spectrum", "--input", path, "--kind", "pi", "--k", "0"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["k"] == 0
        assert [p["values"] for p in payload["points"]] == [[[1.0, 0.0]], [[2.0, 0.0]]]

    def test_out_file(self, tmp_path, capsys, cfg):
        """Test writing the report to --out."""
        path = _write(tmp_path, _catalog_doc(cfg, "solvable-2d"))
        out = tmp_path / "report.json"
        assert main(["spectrum", "--input", path, "--out", str(out)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert len(json.loads(out.read_text(encoding="utf-8"))["points"]) == 2

    def test_malformed_json(self, tmp_path, capsys):
        """Test that unparsable input exits with the input code."""
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        assert main(["spectrum", "--input", str(path)]) == EXIT_INPUT
        assert _stderr_error(capsys)["error"] == "JSONDecodeError"

    def test_missing_file(self, tmp_path, capsys):
        """Test an unreadable input path."""
        assert main(["spectrum", "--input", str(tmp_path / "absent.json")]) == EXIT_INPUT
        assert _stderr_error(capsys)["error"] == "FileNotFoundError"

    def test_unknown_label(self, tmp_path, capsys, cfg):
        """Test a task referring to an undeclared subalgebra."""
        doc = _catalog_doc(cfg, "solvable-2d")
        doc["tasks"]["ideals"] = ["I9"]
        assert main(["spectrum", "--input", _write(tmp_path, doc)]) == EXIT_INPUT
        assert _stderr_error(capsys)["error"] == "UnknownLabel"

    @pytest.mark.parametrize(
        "extra", [["--kind", "taylor", "--k", "1"], ["--kind", "delta"]]
    )
    def test_level_mismatch(self, tmp_path, capsys, cfg, extra):
        """Test --k given to taylor or missing for delta."""
        path = _write(tmp_path, _catalog_doc(cfg, "solvable-2d"))
        assert main(["spectrum", "--input", path, *extra]) == EXIT_INPUT
        assert _stderr_error(capsys)["error"] == "InputError"


class TestLimitCommand:
    """Tests for `limit`."""

    def test_heisenberg_chain(self, tmp_path, capsys, cfg):
        """Test the limit over a chain presentation."""
        path = _write(tmp_path, _catalog_doc(cfg, "heisenberg"))
        assert main(["limit", "--input", path, "--family", "P1"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["presentation"] == "P1"
        assert all(payload["checks"].values())
        assert set(payload["checks"]) == {
            "system_axioms",
            "nonempty",
            "gluing_injective",
            "characterization_equivalence",
            "matches_direct_spectrum",
            "projections_surjective",
        }
        assert payload["tuples"] == [{"Z": 0, "XZ": 0, "L": 0}]

    def test_2d_delta(self, tmp_path, capsys, cfg):
        """Test the delta(0) limit of the 2-dim algebra."""
        path = _write(tmp_path, _catalog_doc(cfg, "solvable-2d"))
        assert main(["limit", "--input", path, "--kind", "delta", "--k", "0"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert [g["values"] for g in payload["glued"]] == [[[0.0, 0.0], [0.0, 0.0]]]

    def test_family_without_upper_bounds(self, tmp_path, capsys, cfg):
        """Test that a family that is not directed exits with the contract code."""
        doc = _catalog_doc(cfg, "heisenberg")
        doc["families"]["P3"] = {"ideals": ["XZ", "YZ"], "order": []}
        path = _write(tmp_path, doc)
        assert main(["limit", "--input", path, "--family", "P3"]) == EXIT_CONTRACT
        error = _stderr_error(capsys)
        assert error["error"] == "FamilyVerificationFailed"
        assert "upper bound" in error["message"]

    def test_unknown_family(self, tmp_path, capsys, cfg):
        """Test a family label that is not declared."""
        path = _write(tmp_path, _catalog_doc(cfg, "heisenberg"))
        assert main(["limit", "--input", path, "--family", "P9"]) == EXIT_INPUT


class TestVerifyCommand:
    """Tests for `verify`."""

    @pytest.mark.parametrize("check", ["projection", "presentation", "uniqueness", "contract"])
    def test_heisenberg_checks_pass(self, tmp_path, capsys, cfg, check):
        """Test every check on the Heisenberg problem."""
        path = _write(tmp_path, _catalog_doc(cfg, "heisenberg"))
        assert main(["verify", "--input", path, "--check", check]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["check"] == check
        assert payload["passed"]

    def test_presentation_2d(self, tmp_path, capsys, cfg):
        """Test {I1, L} against {L} for the 2-dim algebra."""
        path = _write(tmp_path, _catalog_doc(cfg, "solvable-2d"))
        assert main(["verify", "--input", path, "--check", "presentation"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert list(payload["reports"]) == ["P1|P2"]

    def test_claimed_spectrum(self, tmp_path, capsys, cfg):
        """Test a correct and a corrupted claimed spectrum."""
        path = _write(tmp_path, _catalog_doc(cfg, "solvable-2d"))
        good = {
            "kind": "taylor",
            "points": [
                {"algebra": "L", "values": [[0.0, 0.0], [0.0, 0.0]]},
                {"algebra": "L", "values": [[2.0, 0.0], [0.0, 0.0]]},
            ],
        }
        claimed = _write(tmp_path, good, "claimed.json")
        args = ["verify", "--input", path, "--check", "contract", "--claimed", claimed]
        assert main(args) == EXIT_OK
        capsys.readouterr()

        good["points"][0]["values"] = [[1.0, 0.0], [0.0, 0.0]]
        _write(tmp_path, good, "claimed.json")
        assert main(args) == EXIT_CHECK
        payload = json.loads(capsys.readouterr().out)
        assert not payload["passed"]
        assert payload["reports"]["I1"]["unmatched_claimed"]

    def test_presentation_needs_two_families(self, tmp_path, capsys, cfg):
        """Test a problem declaring a single family."""
        doc = _catalog_doc(cfg, "solvable-2d")
        del doc["families"]["P2"]
        doc["tasks"]["presentations"] = []
        path = _write(tmp_path, doc)
        assert main(["verify", "--input", path, "--check", "presentation"]) == EXIT_INPUT


class TestCorpusCommand:
    """Tests for `corpus`."""

    def test_writes_files(self, tmp_path, capsys):
        """Test five files plus a manifest."""
        out = tmp_path / "corpus"
        assert main(["corpus", "--seed", "42", "--count", "5", "--out", str(out)]) == EXIT_OK
        manifest = json.loads(capsys.readouterr().out)
        assert len(manifest["instances"]) == 5
        assert len(list(out.glob("instance-*.json"))) == 5

    def test_needs_out(self, capsys):
        """Test that the output directory is required."""
        assert main(["corpus", "--count", "2"]) == EXIT_INPUT
        assert _stderr_error(capsys)["error"] == "InputError"

    def test_invalid_spec(self, tmp_path, capsys):
        """Test an out-of-range parameter."""
        assert main(["corpus", "--max-space-dim", "9", "--out", str(tmp_path)]) == EXIT_INPUT


class TestReproducibleReports:
    """Tests that reruns of every reporting command give identical bytes."""

    COMMANDS = [
        ["spectrum"],
        ["spectrum", "--kind", "delta", "--k", "1"],
        ["limit", "--family", "P1"],
        ["limit", "--family", "P2", "--kind", "pi", "--k", "1"],
        ["verify", "--check", "contract"],
        ["verify", "--check", "projection"],
        ["verify", "--check", "presentation"],
        ["verify", "--check", "uniqueness"],
    ]

    def _run_twice(self, capsys, args):
        outputs = []
        for _ in range(2):
            code = main(args)
            captured = capsys.readouterr()
            outputs.append((code, captured.out))
        return outputs

    @pytest.mark.parametrize("name", ["heisenberg", "solvable-2d"])
    def test_catalog(self, tmp_path, capsys, cfg, name):
        """Test byte-identical reports for the named problems."""
        path = _write(tmp_path, _catalog_doc(cfg, name))
        for command in self.COMMANDS:
            first, second = self._run_twice(capsys, [*command, "--input", path])
            assert first == second, command
            assert first[1]

    def test_random_corpus(self, tmp_path, capsys, cfg):
        """Test byte-identical reports over a seeded random corpus."""
        spec = CorpusSpec(seed=51, count=6, max_space_dim=3, max_algebra_dim=3)
        for instance in generate_corpus(spec, cfg):
            path = _write(tmp_path, instance.to_json(), filename=f"{instance.name}.json")
            for command in self.COMMANDS:
                first, second = self._run_twice(capsys, [*command, "--input", path])
                assert first == second, (instance.name, command)
