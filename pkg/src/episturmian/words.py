"""Spinned words, block-transformations and the brute-force normalizer.

A spinned word is a tuple of :class:`SLetter` pairs ``(letter, spin)``.
Positions in the public API are 1-based, so ``w[i]`` of the math is
``word[i - 1]`` here.

Text encoding: whitespace separated tokens, a token is one letter
optionally followed by ``'`` for spin 1, and ``_`` is the empty word::

    >>> format_word(parse_word("a b' a"))
    "a b' a"
"""

from __future__ import annotations

import random
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "SLetter",
    "BadFactor",
    "WordSyntaxError",
    "NormalizationError",
    "parse_word",
    "format_word",
    "plain",
    "is_normal_form",
    "find_bad_factors",
    "apply_block_transform",
    "normalize_oracle",
    "normalize_random",
    "block_equivalent",
    "opposite",
    "step_bound",
]

EMPTY_TOKEN = "_"


class WordSyntaxError(ValueError):
    pass


class NormalizationError(RuntimeError):
    """Raised when the rewriting loop exceeds its termination bound."""


class SLetter(NamedTuple):
    letter: str
    spin: int = 0

    def flipped(self) -> "SLetter":
        return SLetter(self.letter, 1 - self.spin)

    def __str__(self) -> str:
        return self.letter + ("'" if self.spin else "")


class BadFactor(NamedTuple):
    start: int
    end: int
    letter: str


SpinnedWord = tuple  # tuple[SLetter, ...]


def _check_letter(ch: str) -> str:
    if len(ch) != 1 or ch.isspace() or ch in "'@_()":
        raise WordSyntaxError(f"invalid letter {ch!r}")
    return ch


def parse_token(token: str) -> SLetter:
    if token.endswith("'"):
        if len(token) != 2:
            raise WordSyntaxError(f"bad token {token!r}")
        return SLetter(_check_letter(token[0]), 1)
    if len(token) != 1:
        raise WordSyntaxError(f"bad token {token!r}")
    return SLetter(_check_letter(token), 0)


def parse_word(text: str) -> tuple:
    tokens = text.split()
    if tokens == [EMPTY_TOKEN]:
        return ()
    return tuple(parse_token(t) for t in tokens)


def format_word(word: Iterable[SLetter], sep: str = " ") -> str:
    word = tuple(word)
    if not word:
        return EMPTY_TOKEN
    return sep.join(str(x) for x in word)


def as_word(word) -> tuple:
    """Accept a spinned word or its text encoding."""
    if isinstance(word, str):
        return parse_word(word)
    return tuple(SLetter(*x) for x in word)


def plain(word: Sequence[SLetter]) -> str:
    """The underlying unspinned word."""
    return "".join(x.letter for x in word)


def opposite(word: Sequence[SLetter]) -> tuple:
    return tuple(x.flipped() for x in as_word(word))


def _bad_factor_at(word: Sequence[SLetter], start: int):
    """Minimal bad factor starting at 0-based ``start``, as 0-based end, or None."""
    head = word[start]
    if not head.spin:
        return None
    a = head.letter
    for j in range(start + 1, len(word)):
        x = word[j]
        if x.letter == a:
            return j if x.spin == 0 else None
        if x.spin == 0:
            return None
    return None


def find_bad_factors(word) -> list[BadFactor]:
    """All minimal occurrences of ``ā b̄₁…b̄ₗ a`` (bᵢ ≠ a), left to right."""
    word = as_word(word)
    found = []
    for s in range(len(word)):
        e = _bad_factor_at(word, s)
        if e is not None:
            found.append(BadFactor(s + 1, e + 1, word[s].letter))
    return found


def _first_bad_factor(word: Sequence[SLetter]):
    for s in range(len(word)):
        e = _bad_factor_at(word, s)
        if e is not None:
            return BadFactor(s + 1, e + 1, word[s].letter)
    return None


def is_normal_form(word) -> bool:
    return _first_bad_factor(as_word(word)) is None


def _valid_occurrence(word: Sequence[SLetter], f: BadFactor) -> bool:
    if not (1 <= f.start < f.end <= len(word)):
        return False
    s, e = f.start - 1, f.end - 1
    if word[s] != SLetter(f.letter, 1) or word[e] != SLetter(f.letter, 0):
        return False
    return all(x.spin == 1 and x.letter != f.letter for x in word[s + 1:e])


def apply_block_transform(word, f: BadFactor) -> tuple:
    """Rewrite the occurrence ``ā v̄ a`` at ``f`` into ``a v ā``."""
    word = as_word(word)
    f = BadFactor(*f)
    if not _valid_occurrence(word, f):
        raise ValueError(f"{tuple(f)} is not a bad factor occurrence in {format_word(word)}")
    s, e = f.start - 1, f.end - 1
    middle = tuple(SLetter(x.letter, 0) for x in word[s + 1:e])
    return word[:s] + (SLetter(f.letter, 0),) + middle + (SLetter(f.letter, 1),) + word[e + 1:]


def step_bound(word: Sequence[SLetter]) -> int:
    # each rewrite lowers the barred count, or keeps it and moves a bar right
    barred = sum(x.spin for x in word)
    return len(word) ** 2 * (barred + 1)


def normalize_oracle(word, *, return_steps: bool = False):
    """Leftmost-first block-normalization.

    With ``return_steps`` the number of rewrites is returned alongside.
    """
    word = as_word(word)
    bound = step_bound(word)
    steps = 0
    while True:
        f = _first_bad_factor(word)
        if f is None:
            break
        steps += 1
        if steps > bound:
            raise NormalizationError(f"step bound {bound} exceeded on {format_word(word)}")
        word = apply_block_transform(word, f)
    return (word, steps) if return_steps else word


def normalize_random(word, rng: random.Random | None = None) -> tuple:
    """Normalize choosing a uniformly random bad factor at every step."""
    rng = rng or random.Random()
    word = as_word(word)
    bound = step_bound(word)
    for _ in range(bound + 1):
        bad = find_bad_factors(word)
        if not bad:
            return word
        word = apply_block_transform(word, rng.choice(bad))
    raise NormalizationError(f"step bound {bound} exceeded")


def block_equivalent(w1, w2) -> bool:
    w1, w2 = as_word(w1), as_word(w2)
    if plain(w1) != plain(w2):
        return False
    return normalize_oracle(w1) == normalize_oracle(w2)
