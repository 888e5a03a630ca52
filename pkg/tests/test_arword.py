import random

import pytest

from conftest import random_episturmian
from episturmian.arword import (
    PrefixTooShort,
    Verdict,
    factor_complexity,
    factor_index,
    is_arnoux_rauzy_evidence,
    left_special_count,
)
from episturmian.subst import Substitution, decompose, fixed_point_prefix, is_primitive

FIB = Substitution({"a": "ab", "b": "a"})
TRIB = Substitution({"a": "ab", "b": "ac", "c": "a"})
THUE_MORSE = Substitution({"a": "ab", "b": "ba"})


def brute_factors(word, n):
    # independent count: slide a window, no shared helpers
    seen = []
    for j in range(len(word) - n + 1):
        f = word[j:j + n]
        if f not in seen:
            seen.append(f)
    return len(seen)


class TestComplexity:
    def test_tribonacci(self):
        assert factor_complexity(fixed_point_prefix(TRIB, "a", 10000), 3) == [3, 5, 7]

    def test_fibonacci(self):
        assert factor_complexity(fixed_point_prefix(FIB, "a", 10000), 3) == [2, 3, 4]

    def test_constant(self):
        assert factor_complexity("a" * 200, 3) == [1, 1, 1]

    def test_too_short(self):
        with pytest.raises(PrefixTooShort):
            factor_complexity("ab" * 10, 3)

    def test_not_saturated(self):
        # the first half never sees the letter c
        with pytest.raises(PrefixTooShort):
            factor_complexity("a" * 150 + "c" * 150, 1)

    def test_matches_brute_force(self):
        u = fixed_point_prefix(TRIB, "a", 2000)
        assert factor_complexity(u, 6) == [brute_factors(u, n) for n in range(1, 7)]


class TestLeftSpecial:
    def test_tribonacci(self):
        assert left_special_count(fixed_point_prefix(TRIB, "a", 10000), 2) == 1

    def test_fibonacci(self):
        u = fixed_point_prefix(FIB, "a", 10000)
        assert left_special_count(u, 1) == 1
        assert factor_index(u, 1).left_special() == ["a"]

    def test_constant(self):
        assert left_special_count("a" * 300, 4) == 0


class TestEvidence:
    def test_tribonacci(self):
        rep = is_arnoux_rauzy_evidence(TRIB, "a", 12)
        assert rep.verdict is Verdict.CONSISTENT
        assert rep.complexity == [2 * n + 1 for n in range(1, 13)]

    def test_thue_morse(self):
        assert is_arnoux_rauzy_evidence(THUE_MORSE, "a", 4).verdict is Verdict.REFUTED

    def test_no_fixed_point(self):
        with pytest.raises(ValueError):
            is_arnoux_rauzy_evidence(Substitution({"a": "a", "b": "ab"}), "a", 4)

    def test_refutation_monotone(self):
        for n in range(2, 7):
            assert is_arnoux_rauzy_evidence(THUE_MORSE, "a", n).verdict is Verdict.REFUTED

    def test_render(self):
        text = is_arnoux_rauzy_evidence(FIB, "a", 3).render()
        assert text.startswith("verdict: Consistent")

    def test_primitive_episturmian_samples(self):
        rng = random.Random(11)
        checked = 0
        while checked < 25:
            alphabet = "abc"[:rng.randint(2, 3)]
            s = random_episturmian(rng, alphabet, max_letters=5)
            letters = {x.letter for x in decompose(s).directive}
            a = next((x for x in alphabet if s[x].startswith(x) and s[x] != x), None)
            if a is None or not is_primitive(s) or letters != set(alphabet):
                continue
            rep = is_arnoux_rauzy_evidence(s, a, 10, prefix_len=4000)
            assert rep.verdict is Verdict.CONSISTENT, (s, rep.reasons)
            checked += 1
