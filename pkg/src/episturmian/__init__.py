"""Episturmian substitutions: normal forms, powers, roots and stabilizers."""

from .words import (
    SLetter,
    apply_block_transform,
    find_bad_factors,
    format_word,
    is_normal_form,
    normalize_oracle,
    parse_word,
)
from .subst import (
    NormalForm,
    NotEpisturmian,
    Permutation,
    Substitution,
    compose,
    decompose,
    fixed_point_prefix,
    mu,
    parse_nf,
    power,
)
from .power import ErrorKind, power_normal_form
from .rigidity import common_root, divide_left, find_common_power, stabilizer_probe

__version__ = "0.1.0"
