"""Reproducible corpus of solvable matrix Lie algebras with ideals and presentations.

Random instances are built inside the upper-triangular matrices:

- a set ``S`` of strictly upper matrix units closed upwards (if ``E_ij`` is
  in ``S`` then so is every ``E_i'j'`` with ``i' <= i``, ``j' >= j``) spans an
  ideal of the upper-triangular algebra
- ``a`` further elements ``A_i = D_i + N_i`` with integer diagonals ``D_i``
  and ``N_i`` in the span of ``S`` close the algebra; with ``a = 1`` the
  strictly upper part of ``A_1`` is unrestricted
- units of ``S`` come in the order they were added, so every trailing run
  of the basis spans an ideal (the chain family ``P1``)
- ``P2`` is a second presentation: the ideals ``span(S) + ℂA_i`` when
  ``a >= 2``, otherwise a proper sub-chain of ``P1`` (the two
  coincide only for ``n = 1``, where both are ``{L}``)

The ``conjugated`` profile conjugates the basis by a random well-conditioned
matrix; the ``named`` profile cycles through a fixed catalog.
"""

from __future__ import annotations

import hashlib
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from quasisolvable_spectra.exceptions import GenerationExhausted, InputError
from quasisolvable_spectra.lie import (
    DirectedIdealFamily,
    MatrixLieAlgebra,
    is_solvable,
    verify_algebra,
    verify_directed_family,
)
from quasisolvable_spectra.numeric import ToleranceConfig, random_well_conditioned
from quasisolvable_spectra.serialization import WHOLE_LABEL, dumps, problem_to_json
from quasisolvable_spectra.types import CorpusProfile

logger = logging.getLogger(__name__)

MAX_SPACE_DIM = 6
MAX_ALGEBRA_DIM = 5
MAX_ATTEMPTS = 200
"""Draws per instance before `GenerationExhausted`."""

_ENTRY_RANGE = 2
MANIFEST_NAME = "manifest.json"


@dataclass
class CorpusSpec:
    """Parameters of a corpus run.

    Attributes:
        seed: Master seed, a 64-bit unsigned integer.
        count: Number of instances.
        max_space_dim: Largest matrix size d (at most 6).
        max_algebra_dim: Largest algebra dimension n (at most 5).
        profile: Generation profile.
    """

    seed: int = 0
    count: int = 10
    max_space_dim: int = 4
    max_algebra_dim: int = 4
    profile: CorpusProfile = "upper-triangular"

    def __post_init__(self) -> None:
        """Validate ranges."""
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}.")
        if self.count < 1:
            raise ValueError(f"count must be positive, got {self.count}.")
        if not 1 <= self.max_space_dim <= MAX_SPACE_DIM:
            raise ValueError(
                f"max_space_dim must be between 1 and {MAX_SPACE_DIM}, got {self.max_space_dim}."
            )
        if not 1 <= self.max_algebra_dim <= MAX_ALGEBRA_DIM:
            raise ValueError(
                f"max_algebra_dim must be between 1 and {MAX_ALGEBRA_DIM}, "
                f"got {self.max_algebra_dim}."
            )
        if self.profile not in ("upper-triangular", "conjugated", "named"):
            raise ValueError(f"Unknown corpus profile {self.profile!r}.")

    def as_dict(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "count": self.count,
            "max_space_dim": self.max_space_dim,
            "max_algebra_dim": self.max_algebra_dim,
            "profile": self.profile,
        }


@dataclass
class CorpusInstance:
    """One generated problem.

    Attributes:
        name: Instance name (catalog name or ``random-<index>``).
        seed: Seed of the instance generator.
        algebra: The verified algebra.
        subalgebras: Coefficient rows per label.
        families: ``(ideal labels, order pairs)`` per family label.
        tasks: The problem file's `tasks` section.
    """

    name: str
    seed: int
    algebra: MatrixLieAlgebra
    subalgebras: dict[str, list[list[float]]] = field(default_factory=dict)
    families: dict[str, tuple[list[str], list[tuple[str, str]]]] = field(default_factory=dict)
    tasks: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return problem_to_json(
            self.algebra,
            subalgebras={k: np.asarray(v, dtype=float) for k, v in self.subalgebras.items()},
            families=self.families,
            tasks=self.tasks,
        )


def _unit(d: int, i: int, j: int) -> np.ndarray[Any, Any]:
    m = np.zeros((d, d))
    m[i, j] = 1.0
    return m


def _rows(n: int, indices: Sequence[int]) -> list[list[float]]:
    return [[1.0 if k == i else 0.0 for k in range(n)] for i in indices]


def _upper_set(rng: np.random.Generator, d: int, size: int) -> list[tuple[int, int]]:
    """Strictly upper positions closed upwards, in the order they were added."""
    chosen: list[tuple[int, int]] = []
    members: set[tuple[int, int]] = set()
    for _ in range(size):
        addable = [
            (i, j)
            for i in range(d)
            for j in range(i + 1, d)
            if (i, j) not in members
            and (i == 0 or (i - 1, j) in members)
            and (j == d - 1 or (i, j + 1) in members)
        ]
        pick = addable[int(rng.integers(len(addable)))]
        chosen.append(pick)
        members.add(pick)
    return chosen


def _draw_basis(
    rng: np.random.Generator, spec: CorpusSpec
) -> tuple[list[np.ndarray[Any, Any]], int]:
    """Random basis ``A_1..A_a, E_s..`` and the number ``a`` of leading elements.

    Raises:
        InputError: If the draw is unusable (retried by the caller).
    """
    n = int(rng.integers(1, spec.max_algebra_dim + 1))
    d = int(rng.integers(1, spec.max_space_dim + 1))
    a = int(rng.integers(1, min(n, d) + 1))
    if n - a > d * (d - 1) // 2:
        raise InputError(f"No room for {n - a} matrix units in dimension {d}.")
    units = _upper_set(rng, d, n - a)
    leading = []
    for _ in range(a):
        m = np.diag(rng.integers(-_ENTRY_RANGE, _ENTRY_RANGE + 1, size=d).astype(float))
        if a == 1:
            upper = np.triu(rng.integers(-_ENTRY_RANGE, _ENTRY_RANGE + 1, size=(d, d)), k=1)
            m = m + upper * (rng.random((d, d)) < 0.5)
        else:
            for i, j in units:
                m[i, j] = float(rng.integers(-_ENTRY_RANGE, _ENTRY_RANGE + 1))
        leading.append(m)
    # trailing runs of the basis are upper sets
    tail = [_unit(d, i, j) for i, j in reversed(units)]
    return leading + tail, a


def _random_instance(
    rng: np.random.Generator,
    spec: CorpusSpec,
    cfg: ToleranceConfig,
    *,
    name: str,
    seed: int,
) -> CorpusInstance:
    for attempt in range(MAX_ATTEMPTS):
        try:
            basis, a = _draw_basis(rng, spec)
            if spec.profile == "conjugated":
                p = random_well_conditioned(rng, basis[0].shape[0], max_condition=50.0)
                p_inv = np.linalg.inv(p)
                basis = [p @ m @ p_inv for m in basis]
            algebra = verify_algebra(basis, cfg)
        except InputError as exc:
            logger.debug("Draw %d for %s rejected: %s", attempt, name, exc)
            continue
        instance = _random_families(rng, algebra, a, name=name, seed=seed)
        if _instance_ok(instance, cfg):
            return instance
        logger.warning("Draw %d for %s failed verification; retrying.", attempt, name)
    raise GenerationExhausted(f"No valid instance for {name} after {MAX_ATTEMPTS} draws.")


def _random_families(
    rng: np.random.Generator,
    algebra: MatrixLieAlgebra,
    a: int,
    *,
    name: str,
    seed: int,
) -> CorpusInstance:
    n = algebra.dim
    instance = CorpusInstance(name=name, seed=seed, algebra=algebra)
    chain = [f"T{m}" for m in range(1, n)]
    for m, label in enumerate(chain, start=1):
        instance.subalgebras[label] = _rows(n, range(n - m, n))
    p1 = [*chain, WHOLE_LABEL]
    instance.families["P1"] = (p1, list(zip(p1, p1[1:])))

    if a >= 2:
        tail = list(range(a, n))
        second = []
        for i in range(a):
            label = f"K{i + 1}"
            instance.subalgebras[label] = _rows(n, [i, *tail])
            second.append(label)
        instance.families["P2"] = (
            [*second, WHOLE_LABEL],
            [(label, WHOLE_LABEL) for label in second],
        )
    else:
        kept = [label for label in chain if rng.random() < 0.5]
        if chain and len(kept) == len(chain):
            kept.pop(int(rng.integers(len(kept))))
        p2 = [*kept, WHOLE_LABEL]
        instance.families["P2"] = (p2, list(zip(p2, p2[1:])))

    picked = rng.choice(len(chain), size=min(2, len(chain)), replace=False) if chain else []
    ideals = [chain[int(i)] for i in sorted(picked)]
    pairs = [(WHOLE_LABEL, label) for label in ideals]
    if len(ideals) == 2:
        pairs.append((ideals[1], ideals[0]))
    instance.tasks = {
        "target": WHOLE_LABEL,
        "ideals": ideals,
        "pairs": [list(p) for p in pairs],
        "presentations": ["P1", "P2"],
    }
    return instance


def _instance_ok(instance: CorpusInstance, cfg: ToleranceConfig) -> bool:
    algebra = instance.algebra
    if not is_solvable(algebra, cfg):
        return False
    subs = {
        label: algebra.span(rows, cfg).named(label) for label, rows in instance.subalgebras.items()
    }
    subs[WHOLE_LABEL] = algebra.whole().named(WHOLE_LABEL)
    for label, (ideals, order) in instance.families.items():
        fam = DirectedIdealFamily.from_ideals(
            algebra, {i: subs[i] for i in ideals}, cfg, declared_order=order, name=label
        )
        report = verify_directed_family(fam, cfg)
        if not report.passed:
            logger.debug("Family %s of %s failed: %s", label, instance.name, report.failures)
            return False
    return True


def named_instances(cfg: ToleranceConfig) -> list[CorpusInstance]:
    """The fixed catalog: Heisenberg, the 2-dim solvable algebra, a diagonal abelian pair."""
    heisenberg = CorpusInstance(
        name="heisenberg",
        seed=0,
        algebra=verify_algebra(
            [_unit(3, 0, 1), _unit(3, 1, 2), _unit(3, 0, 2)], cfg, names=["X", "Y", "Z"]
        ),
        subalgebras={
            "Z": _rows(3, [2]),
            "XZ": _rows(3, [0, 2]),
            "YZ": _rows(3, [1, 2]),
        },
        families={
            "P1": (["Z", "XZ", WHOLE_LABEL], [("Z", "XZ"), ("XZ", WHOLE_LABEL)]),
            "P2": (["XZ", "YZ", WHOLE_LABEL], [("XZ", WHOLE_LABEL), ("YZ", WHOLE_LABEL)]),
        },
        tasks={
            "ideals": ["Z", "XZ"],
            "pairs": [["XZ", "Z"], [WHOLE_LABEL, "YZ"]],
            "presentations": ["P1", "P2"],
        },
    )
    solvable_2d = CorpusInstance(
        name="solvable-2d",
        seed=0,
        algebra=verify_algebra([np.diag([1.0, 0.0]), _unit(2, 0, 1)], cfg, names=["A", "B"]),
        subalgebras={"I1": _rows(2, [1])},
        families={
            "P1": (["I1", WHOLE_LABEL], [("I1", WHOLE_LABEL)]),
            "P2": ([WHOLE_LABEL], []),
        },
        tasks={"ideals": ["I1"], "presentations": ["P1", "P2"]},
    )
    diagonal = CorpusInstance(
        name="diagonal-abelian",
        seed=0,
        algebra=verify_algebra(
            [np.diag([1.0, 0.0, 2.0]), np.diag([0.0, 1.0, -1.0])], cfg, names=["D1", "D2"]
        ),
        subalgebras={"D1": _rows(2, [0]), "D2": _rows(2, [1])},
        families={
            "P1": (["D1", "D2", WHOLE_LABEL], [("D1", WHOLE_LABEL), ("D2", WHOLE_LABEL)]),
            "P2": ([WHOLE_LABEL], []),
        },
        tasks={"ideals": ["D1", "D2"], "presentations": ["P1", "P2"]},
    )
    return [heisenberg, solvable_2d, diagonal]


def instance_seeds(spec: CorpusSpec) -> list[int]:
    """Per-instance seeds derived from the master seed."""
    state = np.random.SeedSequence(spec.seed).generate_state(spec.count, dtype=np.uint64)
    return [int(s) for s in state]


def generate_corpus(spec: CorpusSpec, cfg: ToleranceConfig) -> list[CorpusInstance]:
    """Build `spec.count` instances.

    Raises:
        GenerationExhausted: If an instance needs more than `MAX_ATTEMPTS` draws.
    """
    seeds = instance_seeds(spec)
    if spec.profile == "named":
        catalog = named_instances(cfg)
        instances = []
        for index, seed in enumerate(seeds):
            instance = catalog[index % len(catalog)]
            instances.append(
                CorpusInstance(
                    name=instance.name,
                    seed=seed,
                    algebra=instance.algebra,
                    subalgebras=instance.subalgebras,
                    families=instance.families,
                    tasks=instance.tasks,
                )
            )
        return instances
    return [
        _random_instance(
            np.random.default_rng(seed), spec, cfg, name=f"random-{index:04d}", seed=seed
        )
        for index, seed in enumerate(seeds)
    ]


def write_corpus(
    spec: CorpusSpec, out_dir: str | Path, cfg: ToleranceConfig | None = None
) -> dict[str, Any]:
    """Write one problem file per instance plus ``manifest.json``.

    The manifest records the corpus settings, per-instance seeds and the sha256 of each
    file. Identical specs give byte-identical output.

    Returns:
        The manifest.
    """
    cfg = cfg or ToleranceConfig()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for index, instance in enumerate(generate_corpus(spec, cfg)):
        filename = f"instance-{index:04d}.json"
        payload = dumps(instance.to_json()).encode("utf-8")
        (out / filename).write_bytes(payload)
        entries.append(
            {
                "file": filename,
                "name": instance.name,
                "seed": instance.seed,
                "dim": instance.algebra.dim,
                "space_dim": instance.algebra.space_dim,
                "sha256": hashlib.sha256(payload).hexdigest(),
            }
        )
    manifest = {"spec": spec.as_dict(), "tolerances": cfg.as_dict(), "instances": entries}
    (out / MANIFEST_NAME).write_bytes(dumps(manifest).encode("utf-8"))
    logger.info("Wrote %d instance(s) to %s.", len(entries), out)
    return manifest


__all__ = [
    "MAX_SPACE_DIM",
    "MAX_ALGEBRA_DIM",
    "MAX_ATTEMPTS",
    "MANIFEST_NAME",
    "CorpusSpec",
    "CorpusInstance",
    "named_instances",
    "instance_seeds",
    "generate_corpus",
    "write_corpus",
]
