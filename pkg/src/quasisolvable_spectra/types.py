"""Type definitions for quasisolvable-spectra."""

from __future__ import annotations

from typing import Literal

import numpy as np
import numpy.typing as npt

ComplexArray = npt.NDArray[np.complex128]
"""Dense complex array (vector or matrix) in double precision.

Every matrix, coefficient vector and character value list in the package is
stored as a `complex128` array. Arrays handed out by the package are marked
read-only.
"""

SpectrumKindName = Literal["taylor", "delta", "pi"]
"""Name of a joint spectrum family.

Can be:
- `"taylor"` - the complex fails to be exact in some degree
- `"delta"` - Slodkowski delta spectrum: failure in some degree `p <= k`
- `"pi"` - Slodkowski pi spectrum: failure in some degree `p >= n - k`
"""

CheckName = Literal["projection", "presentation", "uniqueness", "contract"]
"""Verification checks exposed by `quasisolvable-spectra verify --check`.

Example:
    ```bash
    quasisolvable-spectra verify --input problem.json --check projection
    ```
"""

CorpusProfile = Literal["upper-triangular", "conjugated", "named"]
"""Generation profile of the random corpus.

Can be:
- `"upper-triangular"` - random upper-triangular bases (solvable by construction)
- `"conjugated"` - the same, conjugated by a random well-conditioned matrix
- `"named"` - the fixed catalog (Heisenberg, 2-dim solvable, diagonal abelian)
"""

__all__ = [
    "ComplexArray",
    "SpectrumKindName",
    "CheckName",
    "CorpusProfile",
]
