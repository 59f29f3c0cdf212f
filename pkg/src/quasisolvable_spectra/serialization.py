"""JSON wire formats: matrices, problem files, characters and reports.

Input documents are validated with pydantic models; outputs are plain
dictionaries rendered by `dumps` with sorted keys, so identical results give
byte-identical files.

Matrix encoding::

    {"rows": 2, "cols": 2, "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]}

Problem file::

    {
      "space_dim": 2,
      "basis": [{"name": "A", "matrix": <Matrix>}, {"name": "B", "matrix": <Matrix>}],
      "subalgebras": {"I1": [[0, 1]]},
      "families": {"P1": {"ideals": ["I1", "L"], "order": [["I1", "L"]]}},
      "tasks": {"ideals": ["I1"], "presentations": ["P1", "P2"]}
    }

The label ``"L"`` always resolves to the whole algebra unless a subalgebra
of that name is declared.
"""

from __future__ import annotations

import dataclasses
import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, FiniteFloat, PositiveInt, model_validator

from quasisolvable_spectra.characters import Character
from quasisolvable_spectra.exceptions import (
    DimensionMismatch,
    InvalidMatrix,
    NotClosed,
    UnknownLabel,
)
from quasisolvable_spectra.koszul import SpectrumKind, SpectrumResult
from quasisolvable_spectra.lie import (
    DirectedIdealFamily,
    MatrixLieAlgebra,
    Subalgebra,
    is_subalgebra,
    verify_algebra,
)
from quasisolvable_spectra.limit import InverseLimitSpectrum, LimitReport
from quasisolvable_spectra.numeric import ToleranceConfig, as_matrix
from quasisolvable_spectra.types import ComplexArray, SpectrumKindName

WHOLE_LABEL = "L"
"""Label that resolves to the whole algebra."""

OUTPUT_DECIMALS = 12
"""Character values are rounded to this many decimals on output."""

ComplexPair = tuple[FiniteFloat, FiniteFloat]
ComplexEntry = Union[FiniteFloat, ComplexPair]


class MatrixModel(BaseModel):
    """Row-major complex matrix with ``[re, im]`` entries."""

    model_config = ConfigDict(extra="forbid")

    rows: PositiveInt
    cols: PositiveInt
    entries: list[ComplexPair]

    @model_validator(mode="after")
    def _check_size(self) -> MatrixModel:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries has {len(self.entries)} items, expected rows × cols = "
                f"{self.rows * self.cols}"
            )
        return self

    def to_array(self) -> ComplexArray:
        flat = np.array([complex(re, im) for re, im in self.entries], dtype=np.complex128)
        return as_matrix(flat.reshape(self.rows, self.cols))


class BasisElementModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    matrix: MatrixModel


class FamilyModel(BaseModel):
    """A presentation: ideal labels and asserted inclusions ``[a, b]`` (a ⊆ b)."""

    model_config = ConfigDict(extra="forbid")

    ideals: list[str] = Field(min_length=1)
    order: list[tuple[str, str]] = Field(default_factory=list)


class CharacterModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    algebra: str
    values: list[ComplexPair]


class SpectrumModel(BaseModel):
    """A spectrum as written by `spectrum_to_json` (used for claimed spectra)."""

    model_config = ConfigDict(extra="ignore")

    kind: SpectrumKindName
    k: int | None = None
    points: list[CharacterModel]


class TasksModel(BaseModel):
    """Objects the `verify` checks run on.

    Attributes:
        target: Label of the algebra whose spectrum `spectrum` computes.
        ideals: Ideals for the contract, projection and uniqueness checks.
        pairs: ``[M, H]`` pairs (H an ideal of M) for the uniqueness audit.
        presentations: Two family labels for the presentation check.
        claimed: A claimed spectrum of `target` for the contract check.
    """

    model_config = ConfigDict(extra="forbid")

    target: str = WHOLE_LABEL
    ideals: list[str] = Field(default_factory=list)
    pairs: list[tuple[str, str]] = Field(default_factory=list)
    presentations: list[str] = Field(default_factory=list)
    claimed: SpectrumModel | None = None


class ProblemFile(BaseModel):
    """Top-level input document."""

    model_config = ConfigDict(extra="forbid")

    space_dim: PositiveInt
    basis: list[BasisElementModel] = Field(min_length=1)
    subalgebras: dict[str, list[list[ComplexEntry]]] = Field(default_factory=dict)
    families: dict[str, FamilyModel] = Field(default_factory=dict)
    tasks: TasksModel = Field(default_factory=TasksModel)


def _entry(z: complex) -> list[float]:
    return [float(z.real) + 0.0, float(z.imag) + 0.0]


def _rounded(z: complex) -> list[float]:
    # + 0.0 turns -0.0 into 0.0
    return [
        round(float(z.real), OUTPUT_DECIMALS) + 0.0,
        round(float(z.imag), OUTPUT_DECIMALS) + 0.0,
    ]


def _to_complex(entry: Any) -> complex:
    if isinstance(entry, (tuple, list)):
        return complex(entry[0], entry[1])
    return complex(entry)


def matrix_from_json(data: Mapping[str, Any] | str) -> ComplexArray:
    """Decode a matrix document.

    Raises:
        pydantic.ValidationError: If the document does not follow the schema.
        InvalidMatrix: If the decoded matrix is unusable.
    """
    model = (
        MatrixModel.model_validate_json(data)
        if isinstance(data, str)
        else MatrixModel.model_validate(data)
    )
    return model.to_array()


def matrix_to_json(m: np.ndarray[Any, Any]) -> dict[str, Any]:
    """Encode a matrix as ``{"rows", "cols", "entries"}``."""
    arr = as_matrix(m)
    return {
        "rows": int(arr.shape[0]),
        "cols": int(arr.shape[1]),
        "entries": [_entry(z) for z in arr.reshape(-1)],
    }


@dataclass
class Problem:
    """A decoded problem file.

    Attributes:
        algebra: The verified algebra.
        subalgebras: Declared subalgebras by label (the whole algebra under
            ``"L"`` unless redeclared).
        families: Presentations by label.
        tasks: The `tasks` section as validated.
    """

    algebra: MatrixLieAlgebra
    subalgebras: dict[str, Subalgebra]
    families: dict[str, DirectedIdealFamily]
    tasks: TasksModel

    def subalgebra(self, label: str) -> Subalgebra:
        try:
            return self.subalgebras[label]
        except KeyError:
            raise UnknownLabel(f"Unknown subalgebra label {label!r}.") from None

    def family(self, label: str | None) -> DirectedIdealFamily:
        """Family by label.

        With None, the first declared family, or the whole algebra alone when
        the problem declares none.
        """
        if label is None:
            if self.families:
                return next(iter(self.families.values()))
            whole = self.subalgebra(WHOLE_LABEL)
            return DirectedIdealFamily.from_ideals(
                self.algebra, {WHOLE_LABEL: whole}, ToleranceConfig(), name="whole"
            )
        try:
            return self.families[label]
        except KeyError:
            raise UnknownLabel(f"Unknown family label {label!r}.") from None


def load_problem(data: Mapping[str, Any] | ProblemFile, cfg: ToleranceConfig) -> Problem:
    """Validate a problem document and build its algebra, subalgebras and families.

    Raises:
        pydantic.ValidationError: If the document does not follow the schema.
        DimensionMismatch: If a matrix does not match `space_dim`.
        NotClosed: If the basis or a declared subalgebra is not closed.
        NotIndependent: If a basis or span is dependent.
        UnknownLabel: If a family names an undeclared subalgebra.
    """
    model = data if isinstance(data, ProblemFile) else ProblemFile.model_validate(data)
    d = model.space_dim
    matrices = []
    for element in model.basis:
        m = element.matrix.to_array()
        if m.shape != (d, d):
            raise DimensionMismatch(
                f"Basis matrix {element.name!r} has shape {m.shape}, expected ({d}, {d})."
            )
        matrices.append(m)
    names = [element.name for element in model.basis]
    if len(set(names)) != len(names):
        raise InvalidMatrix("Basis names must be unique.")
    algebra = verify_algebra(matrices, cfg, names=names)

    subalgebras: dict[str, Subalgebra] = {WHOLE_LABEL: algebra.whole().named(WHOLE_LABEL)}
    for label, vectors in model.subalgebras.items():
        coeffs = [[_to_complex(e) for e in vec] for vec in vectors]
        sub = algebra.span(coeffs, cfg).named(label)
        if not is_subalgebra(sub, cfg):
            raise NotClosed(f"Subalgebra {label!r} is not closed under the bracket.")
        subalgebras[label] = sub

    families: dict[str, DirectedIdealFamily] = {}
    for label, fam in model.families.items():
        ideals: dict[str, Subalgebra] = {}
        for ideal in fam.ideals:
            if ideal not in subalgebras:
                raise UnknownLabel(f"Family {label!r} names unknown subalgebra {ideal!r}.")
            ideals[ideal] = subalgebras[ideal]
        families[label] = DirectedIdealFamily.from_ideals(
            algebra, ideals, cfg, declared_order=fam.order, name=label
        )

    tasks = model.tasks
    for ref in [tasks.target, *tasks.ideals, *(x for pair in tasks.pairs for x in pair)]:
        if ref not in subalgebras:
            raise UnknownLabel(f"Task refers to unknown subalgebra {ref!r}.")
    for ref in model.tasks.presentations:
        if ref not in families:
            raise UnknownLabel(f"Task refers to unknown family {ref!r}.")
    return Problem(algebra=algebra, subalgebras=subalgebras, families=families, tasks=model.tasks)


def problem_to_json(
    algebra: MatrixLieAlgebra,
    *,
    subalgebras: Mapping[str, np.ndarray[Any, Any]] | None = None,
    families: Mapping[str, tuple[Sequence[str], Sequence[tuple[str, str]]]] | None = None,
    tasks: Mapping[str, Any] | None = None,
) -> dict[str, Any]:
    """Encode an algebra and its declared objects as a problem document.

    Args:
        algebra: The algebra.
        subalgebras: Coefficient vectors (rows) per label.
        families: ``(ideal labels, order pairs)`` per label.
        tasks: The `tasks` section, passed through.
    """
    doc: dict[str, Any] = {
        "space_dim": algebra.space_dim,
        "basis": [
            {"name": name, "matrix": matrix_to_json(m)}
            for name, m in zip(algebra.names, algebra.basis)
        ],
        "subalgebras": {
            label: [[_entry(z) for z in row] for row in np.asarray(vectors, dtype=np.complex128)]
            for label, vectors in (subalgebras or {}).items()
        },
        "families": {
            label: {"ideals": list(ideals), "order": [list(pair) for pair in order]}
            for label, (ideals, order) in (families or {}).items()
        },
    }
    if tasks:
        doc["tasks"] = dict(tasks)
    ProblemFile.model_validate(doc)
    return doc


def character_to_json(c: Character) -> dict[str, Any]:
    return {"algebra": c.label, "values": [_rounded(z) for z in c.values]}


def characters_from_json(
    models: Sequence[CharacterModel], domain: Subalgebra
) -> list[Character]:
    """Decode characters onto `domain`.

    Raises:
        DimensionMismatch: If a value list does not match the domain dimension.
    """
    out = []
    for model in models:
        values = np.array([complex(re, im) for re, im in model.values], dtype=np.complex128)
        if values.shape[0] != domain.dim:
            raise DimensionMismatch(
                f"Character has {values.shape[0]} values, {domain.name or 'the algebra'} "
                f"has dimension {domain.dim}."
            )
        out.append(Character.on(domain, values))
    return out


def kind_to_json(kind: SpectrumKind) -> dict[str, Any]:
    return {"kind": kind.name} if kind.k is None else {"kind": kind.name, "k": kind.k}


def spectrum_to_json(result: SpectrumResult) -> dict[str, Any]:
    return {
        **kind_to_json(result.kind),
        "points": [character_to_json(p) for p in result.points],
        "tolerances": result.tolerances.as_dict(),
    }


def _tuples_to_json(limit: InverseLimitSpectrum) -> list[dict[str, int]]:
    labels = limit.system.family.labels
    return [dict(zip(labels, t)) for t in limit.tuples]


def limit_report_to_json(report: LimitReport) -> dict[str, Any]:
    limit = report.limit
    system = limit.system
    return {
        "presentation": report.presentation,
        **kind_to_json(system.kind),
        "spaces": {
            label: [character_to_json(p) for p in system.points(label)]
            for label in system.family.labels
        },
        "tuples": _tuples_to_json(limit),
        "glued": [character_to_json(c) for c in limit.glued],
        "characterization": [character_to_json(c) for c in report.characterization],
        "checks": dict(report.checks),
        "failures": list(report.failures),
        "tolerances": system.tolerances.as_dict(),
    }


def to_jsonable(value: Any) -> Any:
    """Convert report dataclasses (and what they hold) to JSON-ready values."""
    if isinstance(value, Character):
        return character_to_json(value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, Mapping):
        return {
            (",".join(map(str, k)) if isinstance(k, tuple) else str(k)): to_jsonable(v)
            for k, v in value.items()
        }
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return _rounded(complex(value))
    return value


def dumps(payload: Any) -> str:
    """Deterministic JSON text with a trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


__all__ = [
    "WHOLE_LABEL",
    "MatrixModel",
    "BasisElementModel",
    "FamilyModel",
    "CharacterModel",
    "SpectrumModel",
    "TasksModel",
    "ProblemFile",
    "Problem",
    "matrix_from_json",
    "matrix_to_json",
    "load_problem",
    "problem_to_json",
    "character_to_json",
    "characters_from_json",
    "kind_to_json",
    "spectrum_to_json",
    "limit_report_to_json",
    "to_jsonable",
    "dumps",
]
