"""Exterior-algebra bookkeeping for the Chevalley-Eilenberg complex.

This internal module contains standalone functions for:
- Enumerating basis monomials of Λ^p ℂⁿ as sorted index subsets
- Looking up the position of a monomial
- Inserting an index into a sorted monomial with its sign
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

Monomial = tuple[int, ...]
"""Strictly increasing tuple of basis indices, standing for ``x_i1 ∧ ... ∧ x_ip``."""


@lru_cache(maxsize=128)
def monomials(n: int, p: int) -> tuple[Monomial, ...]:
    """Basis monomials of degree `p` over `n` generators, in lexicographic order.

    Degrees outside ``0..n`` have no monomials.
    """
    if p < 0 or p > n:
        return ()
    return tuple(itertools.combinations(range(n), p))


@lru_cache(maxsize=128)
def monomial_index(n: int, p: int) -> dict[Monomial, int]:
    """Position of each degree-`p` monomial in `monomials(n, p)`."""
    return {m: i for i, m in enumerate(monomials(n, p))}


def exterior_dim(n: int, p: int) -> int:
    """Dimension of Λ^p ℂⁿ (zero outside ``0..n``)."""
    if p < 0 or p > n:
        return 0
    return comb(n, p)


def omit(monomial: Monomial, *positions: int) -> Monomial:
    """The monomial with the factors at the given positions removed."""
    drop = set(positions)
    return tuple(x for i, x in enumerate(monomial) if i not in drop)


def wedge_front(k: int, monomial: Monomial) -> tuple[int, Monomial] | None:
    """Sort ``x_k ∧ monomial`` into a basis monomial.

    Returns:
        ``(sign, sorted_monomial)``, or None when `k` already occurs and the
        wedge vanishes. The sign is ``(-1)`` to the number of factors smaller
        than `k`.
    """
    if k in monomial:
        return None
    smaller = sum(1 for x in monomial if x < k)
    merged = tuple(sorted((*monomial, k)))
    return (-1 if smaller % 2 else 1), merged
