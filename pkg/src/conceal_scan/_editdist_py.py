"""Pure-Python Levenshtein kernels.

Used when the compiled extension (conceal_scan._editdist) is not built.
Both implementations must agree exactly; tests cross-check them.
"""

from __future__ import annotations


def levenshtein(a: str, b: str) -> int:
    """Classic two-row dynamic-programming edit distance."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    cur = [0] * (len(b) + 1)
    for i, ca in enumerate(a, start=1):
        cur[0] = i
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev, cur = cur, prev
    return prev[len(b)]


def levenshtein_within(a: str, b: str, t: int) -> bool:
    """True iff edit distance between a and b is <= t.

    Early-exits on the length difference and abandons a row as soon as
    every cell in it exceeds the threshold.
    """
    if t < 0:
        return False
    if abs(len(a) - len(b)) > t:
        return False
    if a == b:
        return True
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    cur = [0] * (len(b) + 1)
    for i, ca in enumerate(a, start=1):
        cur[0] = i
        row_min = i
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            if cur[j] < row_min:
                row_min = cur[j]
        if row_min > t:
            return False
        prev, cur = cur, prev
    return prev[len(b)] <= t
