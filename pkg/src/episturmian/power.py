"""Normal forms of powers of an episturmian substitution.

Given a normal form ``w θ`` of length k, the directive word of the n-th power
before any normalization is::

    Z = w | θ(w) | θ²(w) | … | θⁿ⁻¹(w)      (permutation θⁿ at the end)

Z consists of n normal blocks, so every bad factor straddles a block
boundary.  Normalization happens in at most two levels:

1. every boundary carries one maximal factor ``(ā Ā'*)⁺ (a Ā'*)* a`` (Ā' the
   barred letters other than ā); these windows are disjoint and are
   normalized in closed form, giving Z′;
2. when Z′ is still not normal (type II) the remaining ``ā b̄… a`` errors
   sit between consecutive windows; they are rewritten once and the
   neighbouring runs of ã are sorted.

Positions are 1-based everywhere.  Every result is checked against the
brute-force normalizer of :mod:`episturmian.words`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .subst import NormalForm, Permutation
from .words import (
    BadFactor,
    SLetter,
    apply_block_transform,
    find_bad_factors,
    format_word,
    is_normal_form,
    normalize_oracle,
)

__all__ = [
    "ErrorKind",
    "Window",
    "ErrorReport",
    "PowerTrace",
    "PowerNormalizationError",
    "build_Z",
    "locate_errors",
    "first_level",
    "classify",
    "second_level",
    "power_normal_form",
    "render_trace",
    "trace_fields",
]


class ErrorKind(enum.Enum):
    NO_ERROR = "NoError"
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"

    def __str__(self):
        return self.value


class PowerNormalizationError(AssertionError):
    """The structured pipeline disagreed with one of its own invariants."""


@dataclass(frozen=True)
class Window:
    """Support of one first-level propagated error, with its central part."""

    start: int
    end: int
    letter: str
    boundary: int                     # last index of the left period
    central: tuple | None = None      # (t, q): Z[t..boundary] = x̄…, Z[boundary+1..boundary+q] = x…


@dataclass
class ErrorReport:
    kind: ErrorKind
    letter: str | None = None
    i: int | None = None
    p: int | None = None
    k: int = 0
    n: int = 1
    windows: list = field(default_factory=list)
    central: tuple | None = None
    one_letter: bool = False

    @property
    def supports(self) -> list[tuple[int, int]]:
        return [(w.start, w.end) for w in self.windows]


@dataclass
class PowerTrace:
    base: NormalForm
    n: int
    k: int
    Z: tuple
    perm: Permutation
    report: ErrorReport
    Z1: tuple
    final: NormalForm
    oracle: tuple | None = None
    second_level_moves: list = field(default_factory=list)

    @property
    def oracle_agrees(self) -> bool:
        return self.oracle is None or self.oracle == self.final.directive


def build_Z(nf: NormalForm, n: int) -> tuple[tuple, Permutation]:
    if n < 1:
        raise ValueError("exponent must be >= 1")
    theta = nf.perm
    blocks = []
    relabel = Permutation.identity(nf.alphabet)
    for _ in range(n):
        blocks.extend(SLetter(relabel(x.letter), x.spin) for x in nf.directive)
        relabel = relabel.compose(theta)
    return tuple(blocks), theta ** n


def _propagated_window(Z: tuple, boundary: int) -> Window | None:
    """Maximal ``(x̄ X̄'*)⁺ (x X̄'*)* x`` containing the simple error at ``boundary``."""
    simple = [f for f in find_bad_factors(Z[max(0, boundary - len(Z)):])
              if f.start <= boundary < f.end]
    if not simple:
        return None
    f = simple[0]
    x = f.letter
    start, end = f.start, f.end          # 1-based
    pos = start - 1                       # 1-based index of candidate left letter
    while True:
        j = pos
        while j >= 1 and Z[j - 1].spin == 1 and Z[j - 1].letter != x:
            j -= 1
        if j >= 1 and Z[j - 1] == SLetter(x, 1):
            start = j
            pos = j - 1
        else:
            break
    pos = end + 1
    while True:
        j = pos
        while j <= len(Z) and Z[j - 1].spin == 1 and Z[j - 1].letter != x:
            j += 1
        if j <= len(Z) and Z[j - 1] == SLetter(x, 0):
            end = j
            pos = j + 1
        else:
            break
    central = None
    if Z[boundary - 1] == SLetter(x, 1) and Z[boundary] == SLetter(x, 0):
        t = boundary
        while t - 1 >= start and Z[t - 2] == SLetter(x, 1):
            t -= 1
        q = 1
        while boundary + q + 1 <= end and Z[boundary + q] == SLetter(x, 0):
            q += 1
        central = (t, q)
    return Window(start, end, x, boundary, central)


def _one_letter(directive) -> bool:
    return len({x.letter for x in directive}) == 1


def locate_errors(Z, k: int, theta: Permutation, n: int) -> ErrorReport:
    """Find the leftmost propagated error and its k-periodic family.

    The kind is predicted from the structure of Z alone (θ(a) = a, n ≥ 3 and
    all-barred non-a gaps between windows mean type II); :func:`classify`
    confirms it on Z′.
    """
    Z = tuple(Z)
    if len(Z) != k * n:
        raise ValueError("Z length must be k*n")
    report = ErrorReport(ErrorKind.NO_ERROR, k=k, n=n, one_letter=bool(Z) and _one_letter(Z[:k]))
    if n == 1 or k == 0 or is_normal_form(Z):
        return report
    leftmost = find_bad_factors(Z)[0]
    if not (leftmost.start <= k < leftmost.end):
        raise PowerNormalizationError(f"leftmost simple error {tuple(leftmost)} does not straddle index {k}")
    windows = []
    for j in range(n - 1):
        w = _propagated_window(Z, k * (j + 1))
        if w is None:
            raise PowerNormalizationError(f"no simple error at boundary {k * (j + 1)}")
        windows.append(w)
    first = windows[0]
    a, i, p = first.letter, first.start, first.end - k
    for j, w in enumerate(windows):
        if (w.start, w.end) != (i + k * j, p + k * (j + 1)):
            raise PowerNormalizationError(f"supports are not {k}-periodic: {w}")
        if w.letter != (theta ** j)(a):
            raise PowerNormalizationError(f"window {j} has letter {w.letter}, expected θ^{j}({a})")
    if not p < i:
        raise PowerNormalizationError(f"p={p} is not smaller than i={i}")
    report.letter, report.i, report.p = a, i, p
    report.windows = windows
    report.central = first.central
    report.kind = _predict_kind(Z, report, theta)
    return report


def _predict_kind(Z, report: ErrorReport, theta: Permutation) -> ErrorKind:
    a, i, p, k, n = report.letter, report.i, report.p, report.k, report.n
    if report.one_letter or theta(a) != a or n < 3:
        return ErrorKind.TYPE_I
    for j in range(1, n - 1):
        gap = Z[p + k * j: i + k * j - 1]          # indices p+kj+1 .. i+kj-1
        if any(x.spin == 0 or x.letter == a for x in gap):
            return ErrorKind.TYPE_I
    return ErrorKind.TYPE_II


def _normalize_window(segment: tuple, w: Window, offset: int) -> list:
    """Closed-form first-level normalization of one window.

    Non-x letters lose their bar, the first x gains spin 0, the last x
    gains spin 1, other x keep their spin; a central part x̄ʳ|xᵠ becomes
    xᵠ'x̄ʳ' with (r', q') shifted by one toward the side without other
    letters.
    """
    x = w.letter
    out = [SLetter(c.letter, 0) if c.letter != x else c for c in segment]
    xs = [j for j, c in enumerate(segment) if c.letter == x]
    central = set()
    if w.central is not None:
        t, q = w.central
        r = w.boundary - t + 1
        lo, hi = t - offset, w.boundary + q - offset      # 0-based inclusive range
        central = set(range(lo, hi + 1))
        before = any(c.letter != x for c in segment[:lo])
        after = any(c.letter != x for c in segment[hi + 1:])
        if before and not after:
            q_new, r_new = q - 1, r + 1
        elif after and not before:
            q_new, r_new = q + 1, r - 1
        else:
            q_new, r_new = q, r
        block = [SLetter(x, 0)] * q_new + [SLetter(x, 1)] * r_new
        out[lo:hi + 1] = block
    if xs[0] not in central:
        out[xs[0]] = SLetter(x, 0)
    if xs[-1] not in central:
        out[xs[-1]] = SLetter(x, 1)
    return out


def first_level(Z, report: ErrorReport) -> tuple:
    if report.kind is ErrorKind.NO_ERROR:
        raise ValueError("first level needs at least one error")
    Z1 = list(Z)
    for w in report.windows:
        segment = tuple(Z1[w.start - 1:w.end])
        Z1[w.start - 1:w.end] = _normalize_window(segment, w, w.start)
    return tuple(Z1)


def classify(Z1, report: ErrorReport, theta: Permutation | None = None) -> ErrorKind:
    """TypeI iff Z′ is already normal; cross-checked against the prediction."""
    if report.kind is ErrorKind.NO_ERROR:
        raise ValueError("nothing to classify")
    actual = ErrorKind.TYPE_I if is_normal_form(Z1) else ErrorKind.TYPE_II
    if actual is not report.kind:
        raise PowerNormalizationError(f"predicted {report.kind}, Z′ says {actual}")
    if actual is ErrorKind.TYPE_II:
        if report.n < 3 or (theta is not None and theta(report.letter) != report.letter):
            raise PowerNormalizationError("type II requires θ(a) = a and n >= 3")
    return actual


def _sort_run(word: list, pos: int, x: str) -> tuple[int, int]:
    """Sort the maximal run of x/x̄ through 0-based ``pos`` into xᵐx̄ʳ."""
    lo = hi = pos
    while lo - 1 >= 0 and word[lo - 1].letter == x:
        lo -= 1
    while hi + 1 < len(word) and word[hi + 1].letter == x:
        hi += 1
    zeros = sum(1 for c in word[lo:hi + 1] if c.spin == 0)
    word[lo:hi + 1] = [SLetter(x, 0)] * zeros + [SLetter(x, 1)] * (hi - lo + 1 - zeros)
    return lo + 1, hi + 1


def second_level(Z1, report: ErrorReport, moves: list | None = None) -> tuple:
    """Fix the errors between windows, then sort the flanking runs of ã."""
    if report.kind is not ErrorKind.TYPE_II:
        raise ValueError("second level only applies to type II errors")
    a, i, p, k, n = report.letter, report.i, report.p, report.k, report.n
    word = tuple(Z1)
    for j in range(1, n - 1):
        f = BadFactor(p + k * j, i + k * j, a)
        word = apply_block_transform(word, f)
        if moves is not None:
            moves.append(("error", f.start, f.end))
    word = list(word)
    for j in range(1, n - 1):
        for pos in (p + k * j, i + k * j):
            run = _sort_run(word, pos - 1, a)
            if moves is not None and run[1] > run[0]:
                moves.append(("run", run[0], run[1]))
    return tuple(word)


def _one_letter_power(nf: NormalForm, n: int) -> tuple:
    a = nf.directive[0].letter
    s = sum(1 for x in nf.directive if x.spin == 0)
    t = len(nf.directive) - s
    theta = nf.perm
    if theta(a) == a:
        return (SLetter(a, 0),) * (s * n) + (SLetter(a, 1),) * (t * n)
    out = []
    for j in range(n):
        b = (theta ** j)(a)
        out += [SLetter(b, 0)] * s + [SLetter(b, 1)] * t
    return tuple(out)


def power_normal_form(nf: NormalForm, n: int, *, verify: bool = True) -> PowerTrace:
    """Normal form of the n-th power of ``nf`` with the full trace."""
    Z, theta_n = build_Z(nf, n)
    k = len(nf.directive)
    theta = nf.perm
    moves: list = []
    if k and _one_letter(nf.directive):
        report = ErrorReport(ErrorKind.NO_ERROR, k=k, n=n, one_letter=True)
        if n > 1 and not is_normal_form(Z):
            report = locate_errors(Z, k, theta, n)
        Z1 = final = _one_letter_power(nf, n)
    else:
        report = locate_errors(Z, k, theta, n)
        if report.kind is ErrorKind.NO_ERROR:
            Z1 = final = Z
        else:
            Z1 = first_level(Z, report)
            kind = classify(Z1, report, theta)
            final = Z1 if kind is ErrorKind.TYPE_I else second_level(Z1, report, moves)
    if not is_normal_form(final):
        raise PowerNormalizationError(f"pipeline output {format_word(final)} is not normal")
    oracle = None
    if verify:
        oracle = normalize_oracle(Z)
        if oracle != final:
            raise PowerNormalizationError(
                f"pipeline {format_word(final)} != oracle {format_word(oracle)} for {nf} ^ {n}")
    final_nf = NormalForm(final, theta_n, nf.alphabet)
    return PowerTrace(nf, n, k, Z, theta_n, report, Z1, final_nf, oracle, moves)


# -- rendering -----------------------------------------------------------

def _periods(word, k: int) -> str:
    if not word:
        return "_"
    if k <= 0:
        return format_word(word)
    chunks = [format_word(word[j:j + k]) for j in range(0, len(word), k)]
    return " | ".join(chunks)


def trace_fields(trace: PowerTrace) -> list[tuple[str, str]]:
    """Stable key/value pairs describing a trace."""
    r = trace.report
    sup = " ".join(f"[{a},{b}]" for a, b in r.supports) or "none"
    central = f"t={r.central[0]} q={r.central[1]}" if r.central else "none"
    return [
        ("base", str(trace.base)),
        ("n", str(trace.n)),
        ("k", str(trace.k)),
        ("Z", _periods(trace.Z, trace.k) + f" | {trace.perm}"),
        ("letter", r.letter or "none"),
        ("i", str(r.i) if r.i is not None else "none"),
        ("p", str(r.p) if r.p is not None else "none"),
        ("kind", "OneLetter" if r.one_letter and r.kind is ErrorKind.NO_ERROR and trace.n > 1
         and trace.Z != trace.final.directive else str(r.kind)),
        ("supports", sup),
        ("central", central),
        ("Z1", _periods(trace.Z1, trace.k)),
        ("final", str(trace.final)),
        ("oracle", "agrees" if trace.oracle is not None and trace.oracle_agrees else
         "skipped" if trace.oracle is None else "DISAGREES"),
    ]


def render_trace(trace: PowerTrace, machine: bool = False) -> str:
    fields = trace_fields(trace)
    if machine:
        return "\n".join(f"{key}: {val}" for key, val in fields) + "\n"
    width = max(len(key) for key, _ in fields)
    return "\n".join(f"{key.ljust(width)}  {val}" for key, val in fields) + "\n"
