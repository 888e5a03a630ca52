"""Left division, common powers and common roots of episturmian substitutions.

The root extraction follows a simple descent: if ``sⁿ = tᵐ`` with ``n ≥ m``
then ``t = s∘ϱ`` for an episturmian ϱ commuting with s, and
``s^(n−m) = ϱ^m`` — a strictly smaller instance of the same problem.

The module also contains a brute-force probe of the stabilizer of a fixed
point, and :func:`diagnose_pair`, which classifies a pair ``sⁿ = tᵐ`` by the
shape of the errors in both Z-words and checks the division predicted for
each case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .power import ErrorKind, PowerTrace, power_normal_form
from .subst import (
    AmbiguousDecoding,
    NormalForm,
    NotEpisturmian,
    Substitution,
    compose,
    decompose,
    fixed_point_prefix,
    identity,
    left_quotient,
    power,
)

__all__ = [
    "NoCommonRoot",
    "RootWitness",
    "CaseDiagnosis",
    "divide_left",
    "find_common_power",
    "common_root",
    "diagnose_pair",
    "stabilizer_probe",
    "in_monoid",
    "is_permutation",
    "nf_length",
    "monoid_elements",
    "same_power",
]


class NoCommonRoot(ValueError):
    """The descent reached two distinct permutations with no common root."""


def _nf(s: Substitution) -> NormalForm:
    return decompose(s)     # raises NotEpisturmian


def nf_length(s: Substitution) -> int:
    """Number of ψ/ψ̄ letters in the normal form of ``s``."""
    return len(_nf(s).directive)


def same_power(s: Substitution, n: int, t: Substitution, m: int) -> bool:
    """``sⁿ == tᵐ``, decided on normal forms so images are never expanded."""
    if s.alphabet != t.alphabet:
        return False
    if is_permutation(s) or is_permutation(t):
        # a positive-length normal form never powers to a permutation
        return is_permutation(s) == is_permutation(t) and power(s, n) == power(t, m)
    fs = power_normal_form(_nf(s), n, verify=False).final
    ft = power_normal_form(_nf(t), m, verify=False).final
    return fs == ft


def is_permutation(s: Substitution) -> bool:
    return all(len(w) == 1 for w in s.images.values())


def divide_left(s: Substitution, t: Substitution) -> Substitution | None:
    """The episturmian ϱ with ``t == s ∘ ϱ``, or None."""
    _nf(s)
    _nf(t)
    try:
        r = left_quotient(s, t)
    except AmbiguousDecoding as exc:
        # injectivity of episturmian substitutions rules this out
        raise AssertionError(str(exc)) from None
    if r is None:
        return None
    try:
        _nf(r)
    except NotEpisturmian:
        return None
    return r


def find_common_power(s: Substitution, t: Substitution, bound: int,
                      *, verify: bool = False) -> tuple[int, int] | None:
    """Smallest ``(n, m)`` (ordered by n, then m) with ``[sⁿ] = [tᵐ]``, both ≤ bound."""
    ns, nt = _nf(s), _nf(t)
    ks, kt = len(ns.directive), len(nt.directive)
    cache_s: dict[int, NormalForm] = {}
    cache_t: dict[int, NormalForm] = {}
    for n in range(1, bound + 1):
        for m in range(1, bound + 1):
            if n * ks != m * kt:
                continue
            if n not in cache_s:
                cache_s[n] = power_normal_form(ns, n, verify=verify).final
            if m not in cache_t:
                cache_t[m] = power_normal_form(nt, m, verify=verify).final
            if cache_s[n] == cache_t[m]:
                return n, m
    return None


@dataclass(frozen=True)
class RootWitness:
    root: NormalForm
    k: int
    l: int
    depth: int = 0

    def check(self, s: Substitution, t: Substitution) -> bool:
        r = self.root.substitution()
        return power(r, self.k) == s and power(r, self.l) == t

    def comments(self) -> list[str]:
        return ["witness", f"root: {self.root}", f"k: {self.k}", f"l: {self.l}"]


def _descend(s: Substitution, t: Substitution, n: int, m: int, depth: int, limit: int):
    """Return ``(r, a, b)`` with ``s = rᵃ`` and ``t = rᵇ``; requires ``sⁿ = tᵐ``, ``n ≥ m``."""
    if depth > limit:
        raise AssertionError(f"descent deeper than {limit}")
    if s == t:
        return s, 1, 1, depth
    if is_permutation(s) and is_permutation(t):
        # both permutations: only the trivial relations are handled
        for j in range(2, s.total_length() * 2 + 2):
            if power(s, j) == t:
                return s, 1, j, depth
            if power(t, j) == s:
                return t, j, 1, depth
        raise NoCommonRoot(f"permutations {s!r} and {t!r} have no common root")
    rho = divide_left(s, t)
    if rho is None:
        raise AssertionError(f"{t!r} is not left-divisible by {s!r}")
    if compose(rho, s) != compose(s, rho):
        raise AssertionError("quotient does not commute with the divisor")
    if rho.is_identity():
        return s, 1, 1, depth
    if n == m:
        # sⁿ = sⁿϱⁿ forces ϱ to be a permutation of finite order
        raise NoCommonRoot(f"{s!r} and {t!r} differ by the permutation {rho!r}")
    if not same_power(s, n - m, rho, m):
        raise AssertionError("cancellation identity failed")
    if n - m >= m:
        r, a, b, d = _descend(s, rho, n - m, m, depth + 1, limit)
        return r, a, a + b, d
    r, b, a, d = _descend(rho, s, m, n - m, depth + 1, limit)
    return r, a, a + b, d


def common_root(s: Substitution, t: Substitution, n: int, m: int) -> RootWitness:
    """A substitution r with ``s = rᵏ`` and ``t = rˡ``, given ``sⁿ = tᵐ``."""
    if n < 1 or m < 1:
        raise ValueError("exponents must be positive")
    _nf(s)
    _nf(t)
    if not same_power(s, n, t, m):
        raise ValueError("s^n != t^m")
    swapped = n < m
    if swapped:
        s, t, n, m = t, s, m, n
    limit = max(s.total_length(), t.total_length()) + 1
    r, a, b, depth = _descend(s, t, n, m, 0, limit)
    if swapped:
        s, t, a, b = t, s, b, a
    witness = RootWitness(_nf(r), a, b, depth)
    if not witness.check(s, t):
        raise AssertionError("root does not reproduce the inputs")
    return witness


# -- case analysis -------------------------------------------------------

BRANCHES = ("SingleExponent", "OneLetter", "NoErrors", "SameStart", "DifferentLetters",
            "SameLength", "BothTypeI", "BothTypeII", "MixedTypes")


@dataclass
class CaseDiagnosis:
    error_letters: tuple
    starts: tuple
    types: tuple
    lengths: tuple
    branch: str
    quotient: Substitution | None = None
    checks: tuple = ()
    traces: tuple = ()

    def summary(self) -> str:
        letters = ",".join(x or "-" for x in self.error_letters)
        starts = ",".join("-" if i is None else str(i) for i in self.starts)
        types = ",".join(str(x) for x in self.types)
        return (f"branch={self.branch} letters={letters} starts={starts} "
                f"types={types} lengths={self.lengths[0]},{self.lengths[1]}")


def _one_letter(nf: NormalForm) -> bool:
    return len({x.letter for x in nf.directive}) == 1


def _branch(ts: PowerTrace, tt: PowerTrace, n: int, m: int) -> str:
    rs, rt = ts.report, tt.report
    if m == 1:
        return "SingleExponent"
    if _one_letter(ts.base) or _one_letter(tt.base):
        return "OneLetter"
    es, et = rs.kind is not ErrorKind.NO_ERROR, rt.kind is not ErrorKind.NO_ERROR
    if not es and not et:
        return "NoErrors"
    if es != et:
        raise AssertionError("only one of the two Z-words has an error")
    if rs.i == rt.i:
        return "SameStart"
    if rs.letter != rt.letter:
        return "DifferentLetters"
    if ts.k == tt.k:
        return "SameLength"
    if rs.kind is rt.kind:
        return "BothTypeI" if rs.kind is ErrorKind.TYPE_I else "BothTypeII"
    return "MixedTypes"


def diagnose_pair(s: Substitution, t: Substitution, n: int, m: int) -> CaseDiagnosis:
    """Classify ``sⁿ = tᵐ`` (n ≥ m) by the errors of both Z-words and check the division."""
    if n < m or m < 1:
        raise ValueError("need n >= m >= 1")
    if not same_power(s, n, t, m):
        raise ValueError("s^n != t^m")
    ns, nt = _nf(s), _nf(t)
    ts, tt = power_normal_form(ns, n), power_normal_form(nt, m)
    if ts.final != tt.final:
        raise AssertionError("equal substitutions with different normal forms")
    branch = _branch(ts, tt, n, m)
    checks = []
    rho = divide_left(s, t)
    if rho is None:
        raise AssertionError(f"branch {branch}: t is not left-divisible by s")
    checks.append("division")
    if branch == "SameStart":
        if tuple(nt.directive[:len(ns.directive)]) != tuple(ns.directive):
            raise AssertionError("same start but w_s is not a prefix of w_t")
        checks.append("prefix")
    if branch == "SameLength":
        if not is_permutation(rho):
            raise AssertionError("same length but the quotient is not a permutation")
        checks.append("permutation-quotient")
    if branch == "NoErrors":
        if ts.Z != tt.Z:
            raise AssertionError("no errors but the Z-words differ")
        checks.append("equal-Z")
    if m >= 2 and branch != "OneLetter":
        checks.append("errors-on-both-sides")
    rs, rt = ts.report, tt.report
    return CaseDiagnosis(
        error_letters=(rs.letter, rt.letter),
        starts=(rs.i, rt.i),
        types=(rs.kind, rt.kind),
        lengths=(ts.k, tt.k),
        branch=branch,
        quotient=rho,
        checks=tuple(checks),
        traces=(ts, tt),
    )


# -- stabilizer ----------------------------------------------------------

def _tile(u: str, lengths: dict, depth: int) -> dict | None:
    """Images forced by ``φ(u) = u`` given their lengths, or None."""
    images: dict[str, str] = {}
    pos = 0
    j = 0
    while pos < depth:
        if j >= len(u):
            return None
        x = u[j]
        if pos + lengths[x] > len(u):
            break           # the known prefix is exhausted
        img = u[pos:pos + lengths[x]]
        if x in images:
            if images[x] != img:
                return None
        else:
            images[x] = img
        pos += lengths[x]
        j += 1
    return images


def stabilizer_probe(source, max_image_len: int, check_depth: int) -> list[Substitution]:
    """Morphisms of total image length ≤ bound fixing the given infinite word.

    ``source`` is either ``(substitution, letter)`` — the fixed point starting
    with that letter — or an explicit prefix string.  Candidates only need to
    agree with the word up to ``check_depth``.  The identity is always listed.
    """
    if check_depth < 4 * max_image_len:
        raise ValueError("check_depth must be at least 4 * max_image_len")
    if isinstance(source, str):
        u = source
        alphabet = tuple(sorted(set(u)))
        if len(u) < check_depth:
            raise ValueError("explicit prefix is shorter than check_depth")
    else:
        s, a = source
        alphabet = s.alphabet
        u = fixed_point_prefix(s, a, check_depth + max_image_len)
    found = {identity(alphabet)}
    d = len(alphabet)
    for lens in itertools.product(range(1, max_image_len + 1), repeat=d):
        if sum(lens) > max_image_len:
            continue
        images = _tile(u, dict(zip(alphabet, lens)), check_depth)
        if images is None or set(images) != set(alphabet):
            continue
        found.add(Substitution(images, alphabet))
    return sorted(found, key=lambda f: (f.total_length(), tuple(f[x] for x in alphabet)))


def in_monoid(phi: Substitution, generators: Sequence[Substitution]) -> bool:
    """Membership of ``phi`` in the monoid generated by ``generators``.

    Decided by peeling a generator on the left and recursing; each generator
    must strictly increase total image length.
    """
    memo: dict[Substitution, bool] = {}

    def go(f: Substitution) -> bool:
        if f in memo:
            return memo[f]
        memo[f] = False
        ok = f.is_identity()
        for g in generators:
            if ok:
                break
            try:
                r = left_quotient(g, f)
            except AmbiguousDecoding:
                continue
            if r is not None and r.total_length() < f.total_length():
                ok = go(r)
        memo[f] = ok
        return ok

    for g in generators:
        if g.total_length() <= len(g.alphabet):
            raise ValueError("generators must be length-increasing")
    return go(phi)


def monoid_elements(generators: Iterable[Substitution], bound: int) -> set:
    """All products of generators with total image length ≤ bound."""
    generators = list(generators)
    start = identity(generators[0].alphabet)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for f in frontier:
            for g in generators:
                h = compose(g, f)
                if h.total_length() <= bound and h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen
