"""Divergence metrics between the mail-filter and recipient token views."""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Optional, Sequence

try:
    from conceal_scan._editdist import levenshtein, levenshtein_within

    KERNEL = "compiled"
except ImportError:  # extension not built; pure-Python fallback
    from conceal_scan._editdist_py import levenshtein, levenshtein_within

    KERNEL = "python"

__all__ = [
    "KERNEL",
    "ViewDistance",
    "jaccard_distance",
    "levenshtein",
    "levenshtein_within",
    "tolerant_overlap_coefficient",
]


@dataclass(frozen=True)
class ViewDistance:
    jaccard: float
    toc: Optional[float] = None
    toc_threshold: int = 1


def jaccard_distance(a: AbstractSet[str], b: AbstractSet[str]) -> float:
    """1 - |a n b| / |a u b|; defined as 0.0 when both sets are empty."""
    if not a and not b:
        return 0.0
    union = len(a | b)
    return 1.0 - len(a & b) / union


def tolerant_overlap_coefficient(
    a: Sequence[str], b: Sequence[str], t: int = 1
) -> float:
    """Fraction of tokens in the smaller list with a partner within
    edit distance t in the other list.

    Matching is greedy in document order with one-to-one consumption,
    so the result is deterministic. Both lists empty -> 1.0 (nothing
    to mismatch).
    """
    if t < 0:
        raise ValueError("edit-distance threshold must be >= 0")
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    if not small:
        return 1.0
    consumed = [False] * len(large)
    matched = 0
    for tok in small:
        for i, other in enumerate(large):
            if consumed[i]:
                continue
            if levenshtein_within(tok, other, t):
                consumed[i] = True
                matched += 1
                break
    return matched / len(small)
