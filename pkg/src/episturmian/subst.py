"""Substitutions (non-erasing free monoid morphisms) and episturmian generators.

Composition convention throughout: ``compose(s, t)(x) == s(t(x))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Mapping, Sequence

import numpy as np

from .words import (
    SLetter,
    WordSyntaxError,
    as_word,
    format_word,
    is_normal_form,
    normalize_oracle,
    parse_token,
)

__all__ = [
    "Substitution",
    "Permutation",
    "NormalForm",
    "NotEpisturmian",
    "psi",
    "psi_bar",
    "identity",
    "apply",
    "compose",
    "power",
    "mu",
    "parse_generators",
    "format_generators",
    "normal_decomposition",
    "decompose",
    "is_episturmian",
    "is_primitive",
    "incidence_matrix",
    "fixed_point_prefix",
    "is_conjugate",
    "left_quotient",
    "parse_substitution",
    "format_substitution",
    "parse_nf",
]


class NotEpisturmian(ValueError):
    """The substitution is not in the monoid generated by ψ, ψ̄ and permutations."""


class Substitution:
    """A total map letter -> nonempty word over a fixed alphabet."""

    __slots__ = ("_images", "alphabet")

    def __init__(self, images: Mapping[str, str], alphabet: Iterable[str] | None = None):
        images = dict(images)
        if alphabet is None:
            alphabet = images.keys()
        alpha = tuple(sorted(set(alphabet)))
        if set(images) != set(alpha):
            raise ValueError(f"images must be given for exactly the alphabet {''.join(alpha)}")
        for x, w in images.items():
            if not w:
                raise ValueError(f"image of {x!r} is empty")
            stray = set(w.translate(str.maketrans("", "", "".join(alpha))))
            if stray:
                raise ValueError(f"image of {x!r} uses letters outside the alphabet: {sorted(stray)}")
        self._images = {x: images[x] for x in alpha}
        self.alphabet = alpha

    @classmethod
    def _trusted(cls, images: dict, alphabet: tuple) -> "Substitution":
        # images already known to be valid over ``alphabet``
        s = cls.__new__(cls)
        s._images = images
        s.alphabet = alphabet
        return s

    def __getitem__(self, x: str) -> str:
        return self._images[x]

    def __call__(self, word: str) -> str:
        return apply(self, word)

    def items(self):
        return self._images.items()

    @property
    def images(self) -> dict:
        return dict(self._images)

    def lengths(self) -> tuple:
        return tuple(len(self._images[x]) for x in self.alphabet)

    def total_length(self) -> int:
        return sum(self.lengths())

    def is_identity(self) -> bool:
        return all(self._images[x] == x for x in self.alphabet)

    def __eq__(self, other):
        if not isinstance(other, Substitution):
            return NotImplemented
        return self._images == other._images

    def __hash__(self):
        return hash(tuple(self._images.items()))

    def __repr__(self):
        body = ", ".join(f"{x}->{w}" for x, w in self._images.items())
        return f"Substitution({body})"


def identity(alphabet: Iterable[str]) -> Substitution:
    return Substitution({x: x for x in alphabet})


def psi(a: str, alphabet: Iterable[str]) -> Substitution:
    """ψ_a: a -> a, b -> ab."""
    return Substitution({b: a if b == a else a + b for b in alphabet})


def psi_bar(a: str, alphabet: Iterable[str]) -> Substitution:
    """ψ̄_a: a -> a, b -> ba."""
    return Substitution({b: a if b == a else b + a for b in alphabet})


def apply(s: Substitution, word: str) -> str:
    try:
        return "".join(s[x] for x in word)
    except KeyError as exc:
        raise ValueError(f"letter {exc.args[0]!r} is outside the alphabet {''.join(s.alphabet)}") from None


def compose(s: Substitution, t: Substitution) -> Substitution:
    """``s ∘ t``, i.e. apply ``t`` first."""
    if s.alphabet != t.alphabet:
        raise ValueError("alphabet mismatch")
    return Substitution._trusted({x: apply(s, t[x]) for x in t.alphabet}, t.alphabet)


def power(s: Substitution, n: int) -> Substitution:
    if n < 0:
        raise ValueError("negative exponent")
    result = identity(s.alphabet)
    base = s
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


@dataclass(frozen=True)
class Permutation:
    """A bijection of the alphabet, stored as a sorted tuple of pairs."""

    pairs: tuple

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str]) -> "Permutation":
        if sorted(mapping.values()) != sorted(mapping):
            raise ValueError("mapping is not a bijection")
        return cls(tuple(sorted(mapping.items())))

    @classmethod
    def identity(cls, alphabet: Iterable[str]) -> "Permutation":
        return cls.from_mapping({x: x for x in alphabet})

    @classmethod
    def from_cycles(cls, cycles: Sequence[str], alphabet: Iterable[str]) -> "Permutation":
        mapping = {x: x for x in alphabet}
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if x in seen:
                    raise ValueError(f"letter {x!r} repeated in cycles")
                if x not in mapping:
                    raise ValueError(f"letter {x!r} outside the alphabet")
                seen.add(x)
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                mapping[x] = y
        return cls.from_mapping(mapping)

    @property
    def mapping(self) -> dict:
        return dict(self.pairs)

    @property
    def alphabet(self) -> tuple:
        return tuple(x for x, _ in self.pairs)

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``."""
        m, o = self.mapping, other.mapping
        return Permutation.from_mapping({x: m[o[x]] for x in o})

    def inverse(self) -> "Permutation":
        return Permutation.from_mapping({y: x for x, y in self.pairs})

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.alphabet)
        for _ in range(n):
            result = result.compose(self)
        return result

    def is_identity(self) -> bool:
        return all(x == y for x, y in self.pairs)

    def order(self) -> int:
        n, p = 1, self
        while not p.is_identity():
            p = p.compose(self)
            n += 1
        return n

    def cycles(self) -> list[str]:
        m = self.mapping
        seen, out = set(), []
        for x in self.alphabet:
            if x in seen or m[x] == x:
                continue
            cyc = [x]
            seen.add(x)
            y = m[x]
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = m[y]
            out.append("".join(cyc))
        return out

    def as_substitution(self) -> Substitution:
        return Substitution(self.mapping)

    def __str__(self) -> str:
        return "@" + ("".join(f"({c})" for c in self.cycles()) or "()")


_PERM_RE = re.compile(r"^@(\(\w*\))+$")


def parse_permutation(token: str, alphabet: Iterable[str]) -> Permutation:
    if not _PERM_RE.match(token):
        raise WordSyntaxError(f"bad permutation token {token!r}")
    cycles = [c for c in re.findall(r"\((\w*)\)", token) if c]
    return Permutation.from_cycles(cycles, alphabet)


def _token_letters(tokens: Iterable[str]) -> set:
    letters = set()
    for tok in tokens:
        if tok.startswith("@"):
            letters.update(re.findall(r"\w", tok))
        elif tok != "_":
            letters.add(tok[0])
    return letters


def parse_generators(text: str, alphabet: Iterable[str] | None = None) -> tuple[list, tuple]:
    """Parse a generator word such as ``"a b' @(ab) c"``.

    Returns ``(tokens, alphabet)``; the alphabet defaults to the letters used.
    """
    raw = text.split()
    if alphabet is None:
        alphabet = _token_letters(raw)
    alphabet = tuple(sorted(set(alphabet)))
    tokens = []
    for tok in raw:
        if tok == "_":
            continue
        if tok.startswith("@"):
            tokens.append(parse_permutation(tok, alphabet))
        else:
            x = parse_token(tok)
            if x.letter not in alphabet:
                raise WordSyntaxError(f"letter {x.letter!r} outside the alphabet")
            tokens.append(x)
    return tokens, alphabet


def format_generators(tokens: Iterable) -> str:
    parts = [str(t) for t in tokens]
    return " ".join(parts) if parts else "_"


def _generator(token, alphabet) -> Substitution:
    if isinstance(token, Permutation):
        return token.as_substitution()
    letter, spin = token
    return psi_bar(letter, alphabet) if spin else psi(letter, alphabet)


def mu(tokens, alphabet: Iterable[str] | None = None) -> Substitution:
    """Compose the generators of ``tokens`` left to right.

    ``tokens`` may be a generator word string, a spinned word, or a list of
    SLetter/Permutation tokens.
    """
    if isinstance(tokens, str):
        tokens, alphabet = parse_generators(tokens, alphabet)
    if alphabet is None:
        raise ValueError("alphabet required")
    alphabet = tuple(sorted(set(alphabet)))
    return reduce(compose, (_generator(t, alphabet) for t in tokens), identity(alphabet))


@dataclass(frozen=True)
class NormalForm:
    """Normalized directive word plus normal permutation."""

    directive: tuple
    perm: Permutation
    alphabet: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "directive", as_word(self.directive))
        if not self.alphabet:
            object.__setattr__(self, "alphabet", self.perm.alphabet)
        if not is_normal_form(self.directive):
            raise ValueError(f"directive {format_word(self.directive)} is not in normal form")

    def __len__(self) -> int:
        return len(self.directive)

    def tokens(self) -> list:
        return list(self.directive) + [self.perm]

    def substitution(self) -> Substitution:
        return mu(self.tokens(), self.alphabet)

    def letters(self) -> set:
        return {x.letter for x in self.directive}

    def __str__(self) -> str:
        head = format_word(self.directive) if self.directive else ""
        return (head + " " + str(self.perm)).strip()


def parse_nf(text: str, alphabet: Iterable[str] | None = None) -> NormalForm:
    """Parse a normal-form literal; an omitted permutation means identity.

    The directive is normalized if needed, so any generator word is accepted.
    """
    tokens, alpha = parse_generators(text, alphabet)
    return normal_decomposition(tokens, alpha)


def normal_decomposition(tokens, alphabet: Iterable[str] | None = None) -> NormalForm:
    """Shift permutations to the right end, then block-normalize."""
    if isinstance(tokens, str):
        tokens, alphabet = parse_generators(tokens, alphabet)
    alphabet = tuple(sorted(set(alphabet)))
    directive = []
    # tokens to the right of a permutation are relabelled by it
    perm = Permutation.identity(alphabet)
    for tok in tokens:
        if isinstance(tok, Permutation):
            perm = perm.compose(tok)
        else:
            directive.append(SLetter(perm(tok.letter), tok.spin))
    return NormalForm(normalize_oracle(tuple(directive)), perm, alphabet)


# -- recognition ---------------------------------------------------------

def _unpsi(a: str, word: str):
    """Decode ``word`` as ψ_a(w); None if impossible."""
    out = []
    i = 0
    while i < len(word):
        if word[i] != a:
            return None
        if i + 1 < len(word) and word[i + 1] != a:
            out.append(word[i + 1])
            i += 2
        else:
            out.append(a)
            i += 1
    return "".join(out)


def _unpsi_bar(a: str, word: str):
    """Decode ``word`` as ψ̄_a(w); None if impossible."""
    out = []
    i = len(word) - 1
    while i >= 0:
        if word[i] != a:
            return None
        if i >= 1 and word[i - 1] != a:
            out.append(word[i - 1])
            i -= 2
        else:
            out.append(a)
            i -= 1
    return "".join(reversed(out))


def _peel(images: tuple, alphabet: tuple, failed: set):
    if images in failed:
        return None
    if all(len(w) == 1 for w in images):
        if sorted(images) == list(alphabet):
            return [Permutation.from_mapping(dict(zip(alphabet, images)))]
        failed.add(images)
        return None
    total = sum(map(len, images))
    for spin, decode in ((0, _unpsi), (1, _unpsi_bar)):
        for a in alphabet:
            pre = tuple(decode(a, w) for w in images)
            if any(not w for w in pre) or sum(map(len, pre)) >= total:
                continue
            rest = _peel(pre, alphabet, failed)
            if rest is not None:
                return [SLetter(a, spin)] + rest
    failed.add(images)
    return None


def decompose(s: Substitution) -> NormalForm:
    """Normal form of an episturmian substitution; raises NotEpisturmian."""
    if len(s.alphabet) == 1:
        # ψ_a is the identity on a one-letter alphabet
        raise NotEpisturmian("one-letter alphabet has no well-defined directive word")
    images = tuple(s[x] for x in s.alphabet)
    tokens = _peel(images, s.alphabet, set())
    if tokens is None:
        raise NotEpisturmian(f"{s!r} is not episturmian")
    nf = normal_decomposition(tokens, s.alphabet)
    if nf.substitution() != s:
        raise AssertionError("recomposition check failed")
    return nf


def is_episturmian(s: Substitution) -> bool:
    try:
        decompose(s)
    except NotEpisturmian:
        return False
    return True


# -- dynamics ------------------------------------------------------------

def incidence_matrix(s: Substitution) -> np.ndarray:
    """M[i, j] = number of occurrences of letter i in the image of letter j."""
    idx = {x: i for i, x in enumerate(s.alphabet)}
    m = np.zeros((len(idx), len(idx)), dtype=np.int64)
    for x, w in s.items():
        for y in w:
            m[idx[y], idx[x]] += 1
    return m


def is_primitive(s: Substitution) -> bool:
    d = len(s.alphabet)
    m = (incidence_matrix(s) > 0).astype(np.int64)
    p = m.copy()
    for _ in range((d - 1) ** 2 + 1):
        if (p > 0).all():
            return True
        p = ((p @ m) > 0).astype(np.int64)
    return False


def fixed_point_prefix(s: Substitution, a: str, n: int) -> str:
    """Length-``n`` prefix of the fixed point ``s^ω(a)``."""
    if a not in s.alphabet:
        raise ValueError(f"letter {a!r} outside the alphabet")
    # s(a) = a·r with r nonempty makes |s^n(a)| strictly increasing
    if not s[a].startswith(a) or s[a] == a:
        raise ValueError(f"no infinite fixed point starting with {a!r}")
    w = a
    while len(w) < n:
        w = apply(s, w)
    return w[:n]


def is_conjugate(s: Substitution, t: Substitution):
    """A word v with ``v t(x) = s(x) v`` (or ``t(x) v = v s(x)``) for all x, else None."""
    if s.alphabet != t.alphabet or s.lengths() != t.lengths():
        return None
    longest = max(s.lengths())
    candidates = {""}
    for img in list(s._images.values()) + list(t._images.values()):
        for j in range(1, min(len(img), longest) + 1):
            candidates.add(img[:j])
            candidates.add(img[-j:])
    for v in sorted(candidates, key=lambda v: (len(v), v)):
        if all(v + t[x] == s[x] + v for x in s.alphabet):
            return v
        if all(t[x] + v == v + s[x] for x in s.alphabet):
            return v
    return None


def _parse_with(images: Mapping[str, str], word: str, limit: int = 2) -> list[str]:
    """All ways (up to ``limit``) to write ``word`` as a concatenation of images."""
    n = len(word)
    memo: dict[int, list[str]] = {n: [""]}

    def go(pos: int) -> list[str]:
        if pos in memo:
            return memo[pos]
        out = []
        for x, img in images.items():
            if word.startswith(img, pos):
                for rest in go(pos + len(img)):
                    out.append(x + rest)
                    if len(out) >= limit:
                        break
            if len(out) >= limit:
                break
        memo[pos] = out
        return out

    return go(0)


class AmbiguousDecoding(RuntimeError):
    pass


def left_quotient(s: Substitution, t: Substitution):
    """The substitution r with ``t == s ∘ r``, or None.

    Each image ``t(x)`` is decoded as ``s(w)`` by backtracking; two distinct
    decodings raise AmbiguousDecoding.
    """
    if s.alphabet != t.alphabet:
        raise ValueError("alphabet mismatch")
    images = {}
    for x in t.alphabet:
        parses = _parse_with(s._images, t[x])
        if not parses:
            return None
        if len(parses) > 1:
            raise AmbiguousDecoding(f"{t[x]!r} has two decodings: {parses}")
        images[x] = parses[0]
    r = Substitution(images, t.alphabet)
    if compose(s, r) != t:
        raise AssertionError("recomposition check failed")
    return r


# -- file format ---------------------------------------------------------

def parse_substitution(text: str) -> Substitution:
    """Read ``x -> w`` lines; ``#`` starts a comment."""
    images = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"(\S)\s*->\s*(\S+)", line)
        if not m:
            raise WordSyntaxError(f"line {n}: expected 'x -> w', got {line!r}")
        x, w = m.groups()
        if x in images:
            raise WordSyntaxError(f"line {n}: letter {x!r} defined twice")
        images[x] = w
    if not images:
        raise WordSyntaxError("no images given")
    try:
        return Substitution(images)
    except ValueError as exc:
        raise WordSyntaxError(str(exc)) from None


def format_substitution(s: Substitution, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" if c else "#" for c in comments]
    lines += [f"{x} -> {w}" for x, w in s.items()]
    return "\n".join(lines) + "\n"
