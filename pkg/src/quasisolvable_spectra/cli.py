"""Command-line front end: ``quasisolvable-spectra spectrum | limit | verify | corpus``.

Reports go to standard output as JSON (or to ``--out``); diagnostics go to
standard error as ``{"error": <type>, "message": <text>}``.

Exit codes:
- ``0`` - success, every check passed
- ``1`` - input error (unreadable file, malformed JSON, schema or label error)
- ``2`` - mathematical-contract failure, or a family that does not verify
- ``3`` - a verification check failed

Example:
    ```bash
    quasisolvable-spectra spectrum --input heisenberg.json --kind taylor
    quasisolvable-spectra limit --input problem.json --family P1 --kind delta --k 1
    quasisolvable-spectra verify --input problem.json --check presentation
    quasisolvable-spectra corpus --seed 42 --count 5 --out corpus/
    ```
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from quasisolvable_spectra.corpus import MAX_ALGEBRA_DIM, CorpusSpec, write_corpus
from quasisolvable_spectra.exceptions import ContractViolation, InputError, UnknownLabel
from quasisolvable_spectra.koszul import SpectrumKind, spectrum, verify_spectrum_contract
from quasisolvable_spectra.lie import verify_directed_family
from quasisolvable_spectra.limit import (
    check_presentation_independence,
    limit_report,
    uniqueness_audit,
    verify_projection_property,
)
from quasisolvable_spectra.numeric import ToleranceConfig, create_tolerance_config
from quasisolvable_spectra.serialization import (
    Problem,
    SpectrumModel,
    characters_from_json,
    dumps,
    limit_report_to_json,
    load_problem,
    spectrum_to_json,
    to_jsonable,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONTRACT = 2
EXIT_CHECK = 3


class FamilyVerificationFailed(ContractViolation):
    """The requested presentation is not a directed family of solvable ideals."""


def _parse_args(argv: Sequence[str] | None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank-tol", type=float, default=None, help="Rank threshold.")
    common.add_argument("--value-tol", type=float, default=None, help="Value equality tolerance.")
    common.add_argument("--seed", type=int, default=0, help="Seed for randomized steps.")
    common.add_argument("--out", default=None, help="Write the report here instead of stdout.")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG."
    )

    problem = argparse.ArgumentParser(add_help=False)
    problem.add_argument("--input", required=True, help="Problem file, or - for stdin.")
    problem.add_argument("--kind", choices=["taylor", "delta", "pi"], default="taylor")
    problem.add_argument("--k", type=int, default=None, help="Level of a delta/pi spectrum.")
    problem.add_argument("--family", default=None, help="Presentation label.")

    parser = argparse.ArgumentParser(
        prog="quasisolvable-spectra",
        description="Joint spectra of solvable matrix Lie algebras and their inverse limits.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser(
        "spectrum", parents=[common, problem], help="Spectrum of the target algebra."
    )
    commands.add_parser(
        "limit", parents=[common, problem], help="Limit spectrum of a presentation."
    )
    verify = commands.add_parser(
        "verify", parents=[common, problem], help="Run a verification check."
    )
    verify.add_argument(
        "--check",
        choices=["projection", "presentation", "uniqueness", "contract"],
        required=True,
    )
    verify.add_argument(
        "--claimed", default=None, help="Claimed spectrum file for the contract check, or -."
    )
    corpus = commands.add_parser("corpus", parents=[common], help="Generate a problem corpus.")
    corpus.add_argument("--count", type=int, default=10)
    corpus.add_argument(
        "--profile", choices=["upper-triangular", "conjugated", "named"], default="upper-triangular"
    )
    corpus.add_argument("--max-space-dim", type=int, default=4)
    corpus.add_argument("--max-algebra-dim", type=int, default=min(4, MAX_ALGEBRA_DIM))
    return parser.parse_args(argv)


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("quasisolvable_spectra").setLevel(level)


def _read_json(source: str) -> Any:
    text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    return json.loads(text)


def _kind(args: argparse.Namespace) -> SpectrumKind:
    if args.kind == "taylor":
        if args.k is not None:
            raise InputError("--k applies to delta and pi spectra only.")
        return SpectrumKind.taylor()
    if args.k is None:
        raise InputError(f"The {args.kind} spectrum needs --k.")
    return SpectrumKind(args.kind, args.k)


def cmd_spectrum(problem: Problem, kind: SpectrumKind, cfg: ToleranceConfig) -> dict[str, Any]:
    target = problem.subalgebra(problem.tasks.target)
    result = spectrum(target, kind, cfg)
    logger.info("%s spectrum: %d point(s).", kind.label, len(result.points))
    return spectrum_to_json(result)


def cmd_limit(
    problem: Problem,
    family: str | None,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
    *,
    seed: int = 0,
) -> tuple[dict[str, Any], bool]:
    """Limit report of one presentation and whether all its checks passed.

    Raises:
        FamilyVerificationFailed: If the family is not a directed family of
            solvable ideals.
    """
    fam = problem.family(family)
    verdict = verify_directed_family(fam, cfg)
    if not verdict.passed:
        raise FamilyVerificationFailed(f"{fam.name}: " + "; ".join(verdict.failures))
    report = limit_report(problem.algebra, fam, kind, cfg, seed=seed)
    logger.info(
        "%s limit over %s: %d point(s), checks %s.",
        kind.label,
        fam.name,
        len(report.limit.glued),
        "passed" if report.passed else "FAILED",
    )
    return limit_report_to_json(report), report.passed


def _claimed(problem: Problem, source: str | None) -> SpectrumModel | None:
    if source is not None:
        return SpectrumModel.model_validate(_read_json(source))
    return problem.tasks.claimed


def _task_ideals(problem: Problem, family: str | None) -> list[str]:
    if problem.tasks.ideals:
        return list(problem.tasks.ideals)
    return list(problem.family(family).labels)


def cmd_verify(
    problem: Problem,
    check: str,
    kind: SpectrumKind,
    cfg: ToleranceConfig,
    *,
    family: str | None = None,
    claimed: SpectrumModel | None = None,
) -> tuple[dict[str, Any], bool]:
    """Run one verification check; returns the report and its verdict."""
    reports: dict[str, Any] = {}
    if check == "contract":
        target = problem.subalgebra(problem.tasks.target)
        points = characters_from_json(claimed.points, target) if claimed is not None else None
        for label in _task_ideals(problem, family):
            reports[label] = verify_spectrum_contract(
                target, problem.subalgebra(label), kind, cfg, claimed=points
            )
    elif check == "projection":
        fam = problem.family(family)
        for label in _task_ideals(problem, family):
            reports[label] = verify_projection_property(
                problem.algebra, fam, problem.subalgebra(label), kind, cfg
            )
    elif check == "presentation":
        labels = list(problem.tasks.presentations) or list(problem.families)
        if len(labels) != 2:
            raise UnknownLabel(f"The presentation check needs two families, got {len(labels)}.")
        first, second = (problem.family(label) for label in labels)
        reports[f"{first.name}|{second.name}"] = check_presentation_independence(
            problem.algebra, first, second, kind, cfg
        )
    else:
        fam = problem.family(family)
        reports[fam.name] = uniqueness_audit(
            problem.algebra,
            fam,
            kind,
            cfg,
            ideals=[problem.subalgebra(label) for label in problem.tasks.ideals],
            pairs=[
                (problem.subalgebra(outer), problem.subalgebra(inner))
                for outer, inner in problem.tasks.pairs
            ],
        )
    passed = all(report.passed for report in reports.values())
    for label, report in reports.items():
        logger.info("%s check on %s: %s.", check, label, "pass" if report.passed else "FAIL")
    payload = {
        "check": check,
        "kind": kind.label,
        "passed": passed,
        "reports": to_jsonable(reports),
        "tolerances": cfg.as_dict(),
    }
    return payload, passed


def cmd_corpus(args: argparse.Namespace, cfg: ToleranceConfig) -> dict[str, Any]:
    try:
        spec = CorpusSpec(
            seed=args.seed,
            count=args.count,
            max_space_dim=args.max_space_dim,
            max_algebra_dim=args.max_algebra_dim,
            profile=args.profile,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.out is None:
        raise InputError("corpus needs --out DIRECTORY.")
    return write_corpus(spec, args.out, cfg)


def _emit(payload: Any, out: str | None) -> None:
    text = dumps(payload)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _fail(exc: BaseException, code: int, verbosity: int) -> int:
    if verbosity >= 2:
        logger.exception("Command failed.")
    sys.stderr.write(
        json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True) + "\n"
    )
    return code


def _run(args: argparse.Namespace) -> int:
    cfg = create_tolerance_config(rank_tol=args.rank_tol, value_tol=args.value_tol)
    if args.command == "corpus":
        manifest = cmd_corpus(args, cfg)
        sys.stdout.write(dumps(manifest))
        return EXIT_OK

    kind = _kind(args)
    problem = load_problem(_read_json(args.input), cfg)
    if args.command == "spectrum":
        _emit(cmd_spectrum(problem, kind, cfg), args.out)
        return EXIT_OK
    if args.command == "limit":
        payload, passed = cmd_limit(problem, args.family, kind, cfg, seed=args.seed)
    else:
        payload, passed = cmd_verify(
            problem,
            args.check,
            kind,
            cfg,
            family=args.family,
            claimed=_claimed(problem, args.claimed),
        )
    _emit(payload, args.out)
    return EXIT_OK if passed else EXIT_CHECK


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the ``quasisolvable-spectra`` console script."""
    args = _parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return _run(args)
    except (ValueError, OSError) as exc:
        # InputError, json.JSONDecodeError and pydantic.ValidationError are ValueErrors
        return _fail(exc, EXIT_INPUT, args.verbose)
    except ContractViolation as exc:
        return _fail(exc, EXIT_CONTRACT, args.verbose)


__all__ = [
    "EXIT_OK",
    "EXIT_INPUT",
    "EXIT_CONTRACT",
    "EXIT_CHECK",
    "FamilyVerificationFailed",
    "cmd_spectrum",
    "cmd_limit",
    "cmd_verify",
    "cmd_corpus",
    "main",
]


if __name__ == "__main__":
    raise SystemExit(main())
