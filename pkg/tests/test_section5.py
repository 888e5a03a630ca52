import pytest

from episturmian.rigidity import identity
from episturmian.section5 import (
    SIGMA,
    TAU,
    check_even_indices,
    encode,
    every_long_factor_has_square_pair,
    is_power_of_four_double,
    mu2_prefix,
    psi_decode,
    report,
    same_parity_class,
    square_pair_positions,
    square_prefix_lengths,
    t_word,
    u_prefix,
    verify_composition_identities,
    verify_recodings,
    verify_stabilizer_theorem,
    RHO,
)
from episturmian.subst import apply


def test_prefix():
    assert u_prefix(16) == "0110011010011001"


class TestParity:
    def test_short(self):
        assert check_even_indices(16)

    def test_long(self):
        assert check_even_indices(8192)

    def test_adversarial(self):
        assert not check_even_indices(3, "001")
        assert square_pair_positions("001") == [1]

    def test_one_class(self):
        assert same_parity_class(u_prefix(4096))
        assert not same_parity_class("00100")


class TestSquares:
    def test_contains_known(self):
        found = square_prefix_lengths(64)
        assert 8 in found and 32 in found

    def test_shape(self):
        assert all(is_power_of_four_double(L) for L in square_prefix_lengths(2 ** 15))

    def test_tiny(self):
        assert square_prefix_lengths(4) == []

    @pytest.mark.parametrize("n, ok", [(2, True), (8, True), (32, True), (4, False), (16, False), (6, False)])
    def test_power_of_four_double(self, n, ok):
        assert is_power_of_four_double(n) is ok


class TestRecodings:
    def test_small(self):
        assert encode(RHO, mu2_prefix(4)) == "0110011010011001" == u_prefix(16)
        assert verify_recodings(16)
        assert verify_recodings(4)

    def test_long(self):
        assert verify_recodings(4096)

    def test_divisibility(self):
        with pytest.raises(ValueError):
            verify_recodings(6)

    def test_psi_blocks(self):
        assert psi_decode("0110") == "AB"
        assert psi_decode("0011") is None

    def test_t_recurrence(self):
        for n in range(7):
            assert t_word(n) == mu2_prefix(4 ** n)

    def test_long_factors(self):
        assert every_long_factor_has_square_pair(u_prefix(4096))
        assert not every_long_factor_has_square_pair("01010")


class TestComposition:
    def test_letters(self):
        assert apply(SIGMA, "01") == apply(TAU, "01") == "01100110"
        assert apply(SIGMA, "10") == apply(TAU, "10")

    def test_identities(self):
        c = verify_composition_identities()
        assert c.ok
        assert not c.literal_right_to_left

    def test_on_letters(self):
        assert SIGMA(SIGMA("0")) == TAU(SIGMA("0"))
        assert TAU(TAU("1")) == SIGMA(TAU("1"))


class TestStabilizer:
    def test_bound_8(self):
        check = verify_stabilizer_theorem(8, 200)
        assert check.found == [identity("01"), SIGMA, TAU] and check.ok

    def test_bound_40(self):
        check = verify_stabilizer_theorem(40, 320)
        assert check.ok and len(check.found) == 5

    def test_precondition(self):
        with pytest.raises(ValueError):
            verify_stabilizer_theorem(40, 100)


def test_report():
    ok, text = report(2 ** 12, 16)
    assert ok
    assert all(line.startswith(("PASS", "note")) for line in text.splitlines())
