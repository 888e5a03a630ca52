"""Finite-window evidence for the Arnoux–Rauzy property.

Everything here looks at a finite prefix, so a ``Refuted`` verdict is sound
while ``Consistent`` is only evidence.  Counts are trusted only when they do
not change between the first half of the prefix and the whole prefix.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field

from .subst import Substitution, fixed_point_prefix

__all__ = [
    "PrefixTooShort",
    "Verdict",
    "FactorIndex",
    "factor_index",
    "factor_complexity",
    "left_special_count",
    "ARReport",
    "is_arnoux_rauzy_evidence",
]

SATURATION = 50


class PrefixTooShort(ValueError):
    pass


class Verdict(enum.Enum):
    REFUTED = "Refuted"
    CONSISTENT = "Consistent"

    def __str__(self):
        return self.value


@dataclass
class FactorIndex:
    n: int
    factors: set
    left_extensions: dict

    def left_special(self) -> list[str]:
        return sorted(f for f, ext in self.left_extensions.items() if len(ext) >= 2)


def factor_index(word: str, n: int) -> FactorIndex:
    factors = {word[j:j + n] for j in range(len(word) - n + 1)}
    left = defaultdict(set)
    for j in range(1, len(word) - n + 1):
        left[word[j:j + n]].add(word[j - 1])
    return FactorIndex(n, factors, dict(left))


def _require(word: str, n_max: int) -> None:
    if len(word) < SATURATION * n_max:
        raise PrefixTooShort(f"prefix of length {len(word)} is below {SATURATION}*{n_max}")


def _saturated(word: str, n: int, value) -> None:
    half = word[:len(word) // 2]
    if value(half) != value(word):
        raise PrefixTooShort(f"length-{n} statistics still change past {len(half)} letters; "
                             "use a longer prefix")


def factor_complexity(prefix: str, n_max: int, *, check_saturation: bool = True) -> list[int]:
    """Number of distinct factors of each length 1..n_max."""
    _require(prefix, n_max)
    counts = []
    for n in range(1, n_max + 1):
        count = lambda w, n=n: len(factor_index(w, n).factors)
        if check_saturation:
            _saturated(prefix, n, count)
        counts.append(count(prefix))
    return counts


def left_special_count(prefix: str, n: int, *, check_saturation: bool = True) -> int:
    """Factors of length n with at least two distinct left extensions."""
    _require(prefix, n)
    count = lambda w: len(factor_index(w, n).left_special())
    if check_saturation:
        _saturated(prefix, n, count)
    return count(prefix)


@dataclass
class ARReport:
    verdict: Verdict
    d: int
    complexity: list = field(default_factory=list)
    left_special: list = field(default_factory=list)
    reasons: list = field(default_factory=list)
    prefix_len: int = 0

    def render(self) -> str:
        lines = [f"verdict: {self.verdict}", f"letters: {self.d}", f"prefix: {self.prefix_len}",
                 "n  p(n)  expected  left-special"]
        for n, (c, ls) in enumerate(zip(self.complexity, self.left_special), 1):
            lines.append(f"{n:<2} {c:<5} {(self.d - 1) * n + 1:<9} {ls}")
        lines += [f"reason: {r}" for r in self.reasons]
        return "\n".join(lines) + "\n"


def is_arnoux_rauzy_evidence(s: Substitution, a: str, n_max: int,
                             prefix_len: int | None = None) -> ARReport:
    """Check complexity (d−1)n+1, one left-special factor per length, and reversal closure.

    d is the number of letters occurring in the fixed point.
    """
    if prefix_len is None:
        prefix_len = max(2000, SATURATION * n_max)
    long_prefix = fixed_point_prefix(s, a, 10 * prefix_len)
    prefix = long_prefix[:prefix_len]
    d = len(set(prefix))
    report = ARReport(Verdict.CONSISTENT, d, prefix_len=prefix_len)
    # counts below are lower bounds, so exceeding the target already refutes
    report.complexity = factor_complexity(prefix, n_max, check_saturation=False)
    report.left_special = [left_special_count(prefix, n, check_saturation=False)
                           for n in range(1, n_max + 1)]
    for n, (c, ls) in enumerate(zip(report.complexity, report.left_special), 1):
        if c > (d - 1) * n + 1:
            report.reasons.append(f"p({n}) = {c} > {(d - 1) * n + 1}")
        if ls > 1:
            report.reasons.append(f"{ls} left-special factors of length {n}")
    long_factors = set()
    for n in range(1, n_max + 1):
        long_factors |= factor_index(long_prefix, n).factors
        for f in sorted(factor_index(prefix, n).factors):
            if f[::-1] not in long_factors:
                report.reasons.append(f"reversal of {f!r} not found")
                break
    if report.reasons:
        report.verdict = Verdict.REFUTED
        return report
    # no refutation: the remaining discrepancies must come from an unsaturated window
    for n, (c, ls) in enumerate(zip(report.complexity, report.left_special), 1):
        if c != (d - 1) * n + 1 or ls != 1:
            _saturated(prefix, n, lambda w, n=n: (len(factor_index(w, n).factors),
                                                  len(factor_index(w, n).left_special())))
            report.reasons.append(f"length {n}: p = {c}, left-special = {ls}")
    if report.reasons:
        report.verdict = Verdict.REFUTED
    return report
