import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import episturmian, random_episturmian
from episturmian.rigidity import (
    NoCommonRoot,
    common_root,
    diagnose_pair,
    divide_left,
    find_common_power,
    in_monoid,
    is_permutation,
    monoid_elements,
    same_power,
    stabilizer_probe,
)
from episturmian.subst import (
    NotEpisturmian,
    Substitution,
    compose,
    decompose,
    identity,
    is_primitive,
    mu,
    power,
)

FIB = Substitution({"a": "ab", "b": "a"})
TRIB = Substitution({"a": "ab", "b": "ac", "c": "a"})
PSI_A = mu("a", "ab")
PSI_B = mu("b", "ab")


class TestDivideLeft:
    def test_generators(self):
        assert divide_left(PSI_A, mu("a b'", "ab")) == mu("b'", "ab")

    def test_fibonacci(self):
        assert divide_left(FIB, power(FIB, 2)) == FIB

    def test_none(self):
        assert divide_left(PSI_A, PSI_B) is None

    def test_rejects_non_episturmian(self):
        with pytest.raises(NotEpisturmian):
            divide_left(Substitution({"a": "ab", "b": "ba"}), FIB)

    @settings(max_examples=100)
    @given(st.data())
    def test_round_trip(self, data):
        alphabet = "abcd"[:data.draw(st.integers(2, 4))]
        s = data.draw(episturmian(alphabet, max_letters=6))
        r = data.draw(episturmian(alphabet, max_letters=6))
        assert divide_left(s, compose(s, r)) == r


class TestCommonPower:
    def test_fibonacci_powers(self):
        assert find_common_power(power(FIB, 2), power(FIB, 3), 6) == (3, 2)

    def test_same(self):
        assert find_common_power(FIB, FIB, 6) == (1, 1)

    def test_distinct_generators(self):
        assert find_common_power(PSI_A, PSI_B, 6) is None


class TestCommonRoot:
    def test_fibonacci(self):
        w = common_root(power(FIB, 2), power(FIB, 3), 3, 2)
        assert w.root.substitution() == FIB and (w.k, w.l) == (2, 3)
        assert w.check(power(FIB, 2), power(FIB, 3))

    def test_trivial(self):
        w = common_root(FIB, FIB, 1, 1)
        assert w.root.substitution() == FIB and (w.k, w.l) == (1, 1)

    def test_psi_a(self):
        w = common_root(power(PSI_A, 2), power(PSI_A, 3), 3, 2)
        assert w.root.substitution() == PSI_A and (w.k, w.l) == (2, 3)
        assert power(PSI_A, 6) == power(power(PSI_A, 2), 3)

    def test_swapped_exponents(self):
        w = common_root(power(FIB, 3), power(FIB, 2), 2, 3)
        assert (w.k, w.l) == (3, 2)

    def test_not_a_common_power(self):
        with pytest.raises(ValueError):
            common_root(FIB, PSI_A, 1, 1)

    def test_permutations_without_root(self):
        ab = Substitution({"a": "b", "b": "a", "c": "c", "d": "d"})
        cd = Substitution({"a": "a", "b": "b", "c": "d", "d": "c"})
        with pytest.raises(NoCommonRoot):
            common_root(ab, cd, 2, 2)

    @settings(max_examples=60)
    @given(st.data())
    def test_recovers_root(self, data):
        alphabet = "abcd"[:data.draw(st.integers(2, 4))]
        r = data.draw(episturmian(alphabet, max_letters=4, min_letters=1))
        a, b = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
        s, t = power(r, a), power(r, b)
        n, m = find_common_power(s, t, 6)
        w = common_root(s, t, n, m)
        assert w.check(s, t)
        assert w.depth <= max(s.total_length(), t.total_length())


class TestSamePower:
    def test_values(self):
        assert same_power(power(FIB, 2), 3, power(FIB, 3), 2)
        assert not same_power(FIB, 2, PSI_A, 2)

    @settings(max_examples=40)
    @given(episturmian(max_letters=2), st.integers(1, 2), st.integers(1, 2))
    def test_matches_expansion(self, s, n, m):
        t = power(s, m)
        assert same_power(s, n * m, t, n) == (power(s, n * m) == power(t, n))


class TestDiagnosis:
    def test_single_exponent(self):
        d = diagnose_pair(power(FIB, 2), power(FIB, 4), 2, 1)
        assert d.branch == "SingleExponent" and d.quotient == power(FIB, 2)

    def test_identical(self):
        s = mu("a b' a", "ab")
        d = diagnose_pair(s, s, 2, 2)
        assert d.branch in ("SameStart", "NoErrors")
        assert d.quotient.is_identity()

    def test_one_letter(self):
        s = mu("a a'", "ab")
        d = diagnose_pair(s, power(s, 2), 4, 2)
        assert d.branch == "OneLetter"

    def test_requires_order(self):
        with pytest.raises(ValueError):
            diagnose_pair(FIB, power(FIB, 2), 1, 2)

    def test_branches_over_random_pairs(self):
        rng = random.Random(3)
        seen = set()
        for _ in range(300):
            alphabet = "abc"[:rng.randint(2, 3)]
            r = random_episturmian(rng, alphabet, max_letters=3)
            a, b = sorted((rng.randint(1, 4), rng.randint(1, 4)))
            s, t = power(r, a), power(r, b)
            n, m = b // math.gcd(a, b), a // math.gcd(a, b)
            d = diagnose_pair(s, t, n, m)
            assert "division" in d.checks
            seen.add(d.branch)
        assert {"SingleExponent", "OneLetter"} <= seen


class TestStabilizer:
    def test_fibonacci(self):
        found = stabilizer_probe((FIB, "a"), 10, 200)
        assert found == [identity("ab"), FIB, power(FIB, 2), power(FIB, 3)]

    def test_bound_zero(self):
        assert stabilizer_probe((FIB, "a"), 0, 200) == [identity("ab")]

    def test_binary_example(self):
        sigma = Substitution({"0": "01", "1": "100110"})
        tau = Substitution({"0": "011001", "1": "10"})
        assert stabilizer_probe((sigma, "0"), 8, 200) == [identity("01"), sigma, tau]

    def test_depth_precondition(self):
        with pytest.raises(ValueError):
            stabilizer_probe((FIB, "a"), 10, 20)

    def test_explicit_word(self):
        u = power(FIB, 12)("a")[:200]
        assert FIB in stabilizer_probe(u, 5, 200)

    @pytest.mark.parametrize("s, a", [(FIB, "a"), (TRIB, "a")])
    def test_commute_and_primitive(self, s, a):
        found = stabilizer_probe((s, a), 12, 400)
        for f in found:
            if not f.is_identity():
                assert is_primitive(f)
            for g in found:
                assert compose(f, g) == compose(g, f)


class TestMonoid:
    def test_membership(self):
        assert in_monoid(power(FIB, 3), [FIB])
        assert not in_monoid(PSI_A, [FIB])

    def test_elements(self):
        assert monoid_elements([FIB], 8) == {identity("ab"), FIB, power(FIB, 2), power(FIB, 3)}

    def test_is_permutation(self):
        assert is_permutation(identity("ab")) and not is_permutation(FIB)
        assert decompose(identity("ab")).directive == ()
