"""A binary word with a non-cyclic stabilizer.

``u`` is the fixed point starting with 0 of σ: 0→01, 1→100110.  Its
stabilizer is generated by σ and τ: 0→011001, 1→10, which agree on the
blocks 01 and 10.  This module scans long prefixes of u to check the
combinatorial facts behind that statement:

* 00 and 11 occur only at even positions (1-based);
* square prefixes have length 2·4ⁱ;
* u = ρ(v) with ρ: C→0110, D→1001 and v the fixed point of C→CCDD, D→DDCC;
* every morphism fixing u (up to a length bound) is a product of σ and τ.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .rigidity import in_monoid, monoid_elements, stabilizer_probe
from .subst import Substitution, apply, compose, fixed_point_prefix

__all__ = [
    "SIGMA",
    "TAU",
    "PSI",
    "RHO",
    "MU2",
    "u_prefix",
    "encode",
    "mu2_prefix",
    "psi_decode",
    "same_parity_class",
    "every_long_factor_has_square_pair",
    "square_pair_positions",
    "check_even_indices",
    "square_prefix_lengths",
    "is_power_of_four_double",
    "verify_recodings",
    "t_word",
    "CompositionCheck",
    "verify_composition_identities",
    "StabilizerCheck",
    "verify_stabilizer_theorem",
    "report",
]

SIGMA = Substitution({"0": "01", "1": "100110"})
TAU = Substitution({"0": "011001", "1": "10"})
# recodings between different alphabets, kept as plain letter maps
PSI = {"A": "01", "B": "10"}
RHO = {"C": "0110", "D": "1001"}
MU2 = Substitution({"C": "CCDD", "D": "DDCC"})


@functools.lru_cache(maxsize=8)
def u_prefix(n: int) -> str:
    return fixed_point_prefix(SIGMA, "0", n)


def square_pair_positions(word: str) -> list[int]:
    """1-based start positions of the factors 00 and 11."""
    return [j + 1 for j in range(len(word) - 1) if word[j] == word[j + 1]]


def check_even_indices(prefix_len: int, word: str | None = None) -> bool:
    """All 00/11 occurrences start at an even 1-based position."""
    if word is None:
        word = u_prefix(prefix_len)
    return all(j % 2 == 0 for j in square_pair_positions(word[:prefix_len]))


def same_parity_class(word: str) -> bool:
    return len({j % 2 for j in square_pair_positions(word)}) <= 1


def square_prefix_lengths(prefix_len: int, word: str | None = None) -> list[int]:
    """Every even L ≤ prefix_len such that the length-L prefix is a square."""
    if word is None:
        word = u_prefix(prefix_len)
    word = word[:prefix_len]
    return [L for L in range(2, len(word) + 1, 2) if word[:L // 2] == word[L // 2:L]]


def is_power_of_four_double(n: int) -> bool:
    """True iff n = 2·4ⁱ for some i ≥ 0."""
    if n < 2 or n % 2:
        return False
    h = n // 2
    return h & (h - 1) == 0 and int(math.log2(h)) % 2 == 0


def encode(images: dict, word: str) -> str:
    return "".join(images[x] for x in word)


def mu2_prefix(n: int) -> str:
    w = "C"
    while len(w) < n:
        w = apply(MU2, w)
    return w[:n]


def psi_decode(word: str) -> str | None:
    """Read ``word`` as a sequence of 01/10 blocks (A/B), or None."""
    if len(word) % 2:
        return None
    inverse = {v: k for k, v in PSI.items()}
    out = []
    for j in range(0, len(word), 2):
        block = inverse.get(word[j:j + 2])
        if block is None:
            return None
        out.append(block)
    return "".join(out)


def verify_recodings(prefix_len: int) -> bool:
    if prefix_len % 4:
        raise ValueError("prefix_len must be divisible by 4")
    u = u_prefix(prefix_len)
    if encode(RHO, mu2_prefix(prefix_len // 4)) != u:
        return False
    v = psi_decode(u)
    if v is None:
        return False
    return all(v[j:j + 4] in ("ABAB", "BABA") for j in range(0, len(v) - len(v) % 4, 4))


def t_word(n: int) -> str:
    """T₀ = C and Tₙ = Tₙ₋₁ Tₙ₋₁ T̄ₙ₋₁ T̄ₙ₋₁, where the bar swaps C and D."""
    t = "C"
    swap = str.maketrans("CD", "DC")
    for _ in range(n):
        bar = t.translate(swap)
        t = t + t + bar + bar
    return t


def every_long_factor_has_square_pair(word: str, length: int = 5) -> bool:
    # checking length 5 covers all longer factors
    return all(word[j:j + length].find("00") >= 0 or word[j:j + length].find("11") >= 0
               for j in range(len(word) - length + 1))


@dataclass
class CompositionCheck:
    letter_identities: bool        # σ(01)=τ(01), σ(10)=τ(10)
    right_to_left: bool            # σ∘σ = τ∘σ and τ∘τ = σ∘τ with (f∘g)(x) = f(g(x))
    left_to_right: bool            # the same identities read with (f∘g)(x) = g(f(x))
    literal_right_to_left: bool    # σ∘σ = σ∘τ and τ∘σ = τ∘τ with (f∘g)(x) = f(g(x))

    @property
    def ok(self) -> bool:
        return self.letter_identities and self.right_to_left and self.left_to_right


def verify_composition_identities() -> CompositionCheck:
    letters = (apply(SIGMA, "01") == apply(TAU, "01") == "01100110"
               and apply(SIGMA, "10") == apply(TAU, "10"))
    rtl = compose(SIGMA, SIGMA) == compose(TAU, SIGMA) and compose(TAU, TAU) == compose(SIGMA, TAU)

    def then(f, g):                 # apply f first, then g
        return compose(g, f)

    ltr = then(SIGMA, SIGMA) == then(SIGMA, TAU) and then(TAU, SIGMA) == then(TAU, TAU)
    literal = compose(SIGMA, SIGMA) == compose(SIGMA, TAU) and compose(TAU, SIGMA) == compose(TAU, TAU)
    return CompositionCheck(letters, rtl, ltr, literal)


@dataclass
class StabilizerCheck:
    found: list
    members: bool
    complete: bool
    even_lengths: bool
    block_lengths: bool

    @property
    def ok(self) -> bool:
        return self.members and self.complete and self.even_lengths and self.block_lengths


def verify_stabilizer_theorem(max_total_image_len: int, check_depth: int) -> StabilizerCheck:
    if check_depth < 8 * max_total_image_len:
        raise ValueError("check_depth must be at least 8 * bound")
    found = stabilizer_probe((SIGMA, "0"), max_total_image_len, check_depth)
    generators = [SIGMA, TAU]
    members = all(in_monoid(f, generators) for f in found)
    complete = monoid_elements(generators, max_total_image_len) <= set(found)
    even = all(len(f["0"]) % 2 == 0 and len(f["1"]) % 2 == 0
               for f in found if not f.is_identity())
    blocks = all(is_power_of_four_double(len(apply(f, "01"))) for f in found)
    return StabilizerCheck(found, members, complete, even, blocks)


def report(prefix_len: int = 2 ** 14, bound: int = 40, depth: int | None = None) -> tuple[bool, str]:
    """Run every check; return (all passed, one PASS/FAIL line per check)."""
    depth = depth or 8 * bound
    u = u_prefix(prefix_len)
    squares = square_prefix_lengths(prefix_len)
    comp = verify_composition_identities()
    stab = verify_stabilizer_theorem(bound, depth)
    v = psi_decode(u[:prefix_len - prefix_len % 2])
    rows = [
        ("00/11 only at even positions (1-based)", check_even_indices(prefix_len), prefix_len),
        ("00/11 positions in one parity class", same_parity_class(u), prefix_len),
        ("factors of length >= 5 contain 00 or 11", every_long_factor_has_square_pair(u), prefix_len),
        ("square prefixes have length 2*4^i", all(map(is_power_of_four_double, squares))
         and {8, 32} <= set(squares), prefix_len),
        ("u = rho(fixed point of C->CCDD, D->DDCC)", verify_recodings(prefix_len - prefix_len % 4),
         prefix_len),
        ("u splits into 01/10 blocks", v is not None, prefix_len),
        ("T_n = mu2^n(C) for n <= 6", all(t_word(n) == mu2_prefix(4 ** n) for n in range(7)), 4 ** 6),
        ("sigma(01) = tau(01), sigma(10) = tau(10)", comp.letter_identities, 2),
        ("sigma.sigma = tau.sigma, tau.tau = sigma.tau (f.g = f after g)", comp.right_to_left, 1),
        ("same identities, g applied after f", comp.left_to_right, 1),
        ("probe elements are products of sigma, tau", stab.members, depth),
        ("products of sigma, tau within bound are found", stab.complete, depth),
        ("image lengths are even", stab.even_lengths, depth),
        ("|phi(01)| = 2*4^n", stab.block_lengths, depth),
    ]
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}  [depth {d}]" for name, ok, d in rows]
    lines.append(f"note: stabilizer elements up to total length {bound}: "
                 + ", ".join(_fmt(f) for f in stab.found))
    lines.append("note: the identities as literally written hold only when composition "
                 f"applies the left factor first (right-to-left literal reading: "
                 f"{comp.literal_right_to_left})")
    return all(ok for _, ok, _ in rows), "\n".join(lines) + "\n"


def _fmt(f: Substitution) -> str:
    return "(" + ", ".join(f"{x}->{w}" for x, w in f.items()) + ")"
