"""quasisolvable-spectra: joint spectra of solvable matrix Lie algebras.

Taylor and Słodkowski joint spectra of complex solvable Lie algebras of
matrices, and their extension to quasi-solvable algebras presented as
directed families of solvable ideals, computed as inverse limits.

Example:
    ```python
    import numpy as np
    from quasisolvable_spectra import (
        SpectrumKind,
        ToleranceConfig,
        spectrum,
        verify_algebra,
    )

    cfg = ToleranceConfig()
    algebra = verify_algebra([np.diag([1.0, 0.0]), np.array([[0, 1], [0, 0]])], cfg)
    result = spectrum(algebra, SpectrumKind.taylor(), cfg)
    print([p.values for p in result.points])
    ```
"""

from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version

from quasisolvable_spectra.characters import (
    Character,
    WeightList,
    adjoint_weights,
    character_space,
    is_character,
    restrict_character,
    restriction_matrix,
    simultaneous_triangularize,
)
from quasisolvable_spectra.corpus import (
    CorpusInstance,
    CorpusSpec,
    generate_corpus,
    named_instances,
    write_corpus,
)
from quasisolvable_spectra.exceptions import (
    ComplexInconsistent,
    ContractViolation,
    DegreeOutOfRange,
    DimensionMismatch,
    EmptyLimit,
    EmptySpectrum,
    GenerationExhausted,
    GluingInconsistent,
    InputError,
    InvalidMatrix,
    JacobiViolation,
    NotCharacter,
    NotClosed,
    NotIndependent,
    NotSolvable,
    NotSquare,
    NotSubspace,
    NumericalBreakdown,
    SpanFailure,
    SpectraError,
    SystemAxiomViolation,
    UnknownLabel,
)
from quasisolvable_spectra.koszul import (
    ChevalleyEilenbergComplex,
    ContractReport,
    SpectrumKind,
    SpectrumResult,
    build_complex,
    homology_dimensions,
    is_exact_at,
    spectral_candidates,
    spectrum,
    verify_spectrum_contract,
)
from quasisolvable_spectra.lie import (
    DirectedIdealFamily,
    FamilyReport,
    MatrixLieAlgebra,
    Subalgebra,
    adjoint_representation,
    bracket,
    derived_series,
    derived_subalgebra,
    intersect_with_ideal,
    is_ideal,
    is_solvable,
    is_subalgebra,
    join_families,
    verify_algebra,
    verify_directed_family,
)
from quasisolvable_spectra.limit import (
    InverseLimitSpectrum,
    LimitReport,
    PresentationReport,
    ProjectionReport,
    SpectrumInverseSystem,
    SurjectivityReport,
    SystemMap,
    UniquenessReport,
    build_inverse_system,
    check_presentation_independence,
    check_projections_surjective,
    glue_character,
    inverse_limit,
    limit_by_characterization,
    limit_report,
    limit_spectrum,
    restrict_system,
    uniqueness_audit,
    verify_projection_property,
)
from quasisolvable_spectra.numeric import (
    ToleranceConfig,
    create_tolerance_config,
    eigenvalues,
    nullspace_basis,
    rank,
)
from quasisolvable_spectra.serialization import (
    ProblemFile,
    load_problem,
    matrix_from_json,
    matrix_to_json,
)
from quasisolvable_spectra.types import CheckName, CorpusProfile, SpectrumKindName

try:
    __version__ = version("quasisolvable-spectra")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.0.0"

__all__ = [
    # Configuration
    "ToleranceConfig",
    "create_tolerance_config",
    # Numerics
    "rank",
    "nullspace_basis",
    "eigenvalues",
    # Lie algebras
    "bracket",
    "MatrixLieAlgebra",
    "Subalgebra",
    "verify_algebra",
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
    # Characters
    "Character",
    "WeightList",
    "character_space",
    "is_character",
    "restriction_matrix",
    "restrict_character",
    "simultaneous_triangularize",
    "adjoint_weights",
    # Spectra
    "SpectrumKind",
    "ChevalleyEilenbergComplex",
    "SpectrumResult",
    "ContractReport",
    "build_complex",
    "is_exact_at",
    "homology_dimensions",
    "spectral_candidates",
    "spectrum",
    "verify_spectrum_contract",
    # Inverse limits
    "SpectrumInverseSystem",
    "InverseLimitSpectrum",
    "SystemMap",
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
    "check_projections_surjective",
    "limit_report",
    "check_presentation_independence",
    "restrict_system",
    "verify_projection_property",
    "uniqueness_audit",
    # Serialization and corpus
    "ProblemFile",
    "load_problem",
    "matrix_from_json",
    "matrix_to_json",
    "CorpusSpec",
    "CorpusInstance",
    "named_instances",
    "generate_corpus",
    "write_corpus",
    # Errors
    "SpectraError",
    "InputError",
    "InvalidMatrix",
    "NotSquare",
    "DimensionMismatch",
    "NotClosed",
    "NotIndependent",
    "NotSubspace",
    "NotCharacter",
    "NotSolvable",
    "DegreeOutOfRange",
    "UnknownLabel",
    "ContractViolation",
    "ComplexInconsistent",
    "JacobiViolation",
    "NumericalBreakdown",
    "EmptySpectrum",
    "SpanFailure",
    "SystemAxiomViolation",
    "EmptyLimit",
    "GluingInconsistent",
    "GenerationExhausted",
    # Types
    "SpectrumKindName",
    "CheckName",
    "CorpusProfile",
]
