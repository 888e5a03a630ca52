"""Command-line front end.

Exit codes: 0 on success, 1 when the answer is negative ("none", refuted,
not episturmian), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import arword, power, rigidity, section5
from .subst import (
    NormalForm,
    NotEpisturmian,
    Substitution,
    compose,
    decompose,
    fixed_point_prefix,
    format_substitution,
    mu,
    parse_nf,
    parse_substitution,
)
from .words import WordSyntaxError, format_word, normalize_oracle, parse_word

EXIT_OK, EXIT_NONE, EXIT_BAD_INPUT = 0, 1, 2


class DomainFailure(Exception):
    """Negative answer: printed as ``none`` with exit code 1."""


def _read_sub(path: str) -> Substitution:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise WordSyntaxError(f"cannot read {path}: {exc.strerror}") from None
    return parse_substitution(text)


def _alphabet(arg: str | None):
    return tuple(arg) if arg else None


def _kv(pairs, machine: bool) -> str:
    if machine:
        return "".join(f"{k}: {v}\n" for k, v in pairs)
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in pairs)


def _nf_pairs(nf: NormalForm) -> list:
    return [("nf", str(nf)), ("alphabet", "".join(nf.alphabet)), ("length", str(len(nf)))]


# -- verbs ---------------------------------------------------------------

def cmd_normalize(args, out):
    word = parse_word(args.word)
    result, steps = normalize_oracle(word, return_steps=True)
    if args.format == "machine":
        out.write(_kv([("normal", format_word(result)), ("steps", steps)], True))
    else:
        out.write(format_word(result) + "\n")


def cmd_compose(args, out):
    if args.gen is not None:
        s = mu(args.gen, _alphabet(args.alphabet))
    elif args.files:
        subs = [_read_sub(f) for f in args.files]
        s = subs[0]
        for t in subs[1:]:
            if t.alphabet != s.alphabet:
                raise WordSyntaxError("substitutions use different alphabets")
            s = compose(s, t)
    else:
        raise WordSyntaxError("give substitution files or --gen")
    out.write(format_substitution(s))


def cmd_decompose(args, out):
    nf = decompose(_read_sub(args.file))
    if args.format == "machine":
        out.write(_kv(_nf_pairs(nf), True))
    else:
        out.write(str(nf) + "\n")


def cmd_power(args, out):
    if args.nf is not None:
        nf = parse_nf(args.nf, _alphabet(args.alphabet))
    elif args.file is not None:
        nf = decompose(_read_sub(args.file))
    else:
        raise WordSyntaxError("give --nf or a substitution file")
    if args.n < 1:
        raise WordSyntaxError("-n must be >= 1")
    trace = power.power_normal_form(nf, args.n)
    if args.trace:
        out.write(power.render_trace(trace, machine=args.format == "machine"))
    elif args.format == "machine":
        out.write(_kv(_nf_pairs(trace.final), True))
    else:
        out.write(str(trace.final) + "\n")


def cmd_divide(args, out):
    s, t = _read_sub(args.sigma), _read_sub(args.tau)
    rho = rigidity.divide_left(s, t)
    if rho is None:
        raise DomainFailure
    out.write(format_substitution(rho, ["quotient"] if args.format == "machine" else ()))


def cmd_common_power(args, out):
    s, t = _read_sub(args.sigma), _read_sub(args.tau)
    found = rigidity.find_common_power(s, t, args.max_power)
    if found is None:
        raise DomainFailure
    if args.format == "machine":
        out.write(_kv([("n", found[0]), ("m", found[1])], True))
    else:
        out.write(f"{found[0]} {found[1]}\n")


def cmd_root(args, out):
    s, t = _read_sub(args.sigma), _read_sub(args.tau)
    if args.n is None or args.m is None:
        found = rigidity.find_common_power(s, t, args.max_power)
        if found is None:
            raise DomainFailure
        n, m = found
    else:
        n, m = args.n, args.m
    try:
        witness = rigidity.common_root(s, t, n, m)
    except rigidity.NoCommonRoot:
        raise DomainFailure from None
    out.write(format_substitution(witness.root.substitution(), witness.comments()))


def cmd_fixpoint(args, out):
    s = _read_sub(args.file)
    try:
        w = fixed_point_prefix(s, args.letter, args.prefix_len)
    except ValueError:
        raise DomainFailure from None
    out.write(w + "\n")


def cmd_ar_check(args, out):
    s = _read_sub(args.file)
    try:
        rep = arword.is_arnoux_rauzy_evidence(s, args.letter, args.n_max, args.prefix_len)
    except arword.PrefixTooShort as exc:
        raise WordSyntaxError(str(exc)) from None
    except ValueError:
        raise DomainFailure from None
    if args.format == "machine":
        pairs = [("verdict", rep.verdict), ("letters", rep.d), ("prefix", rep.prefix_len),
                 ("complexity", " ".join(map(str, rep.complexity))),
                 ("left_special", " ".join(map(str, rep.left_special)))]
        out.write(_kv(pairs, True))
    else:
        out.write(rep.render())
    return EXIT_OK if rep.verdict is arword.Verdict.CONSISTENT else EXIT_NONE


def cmd_stab_probe(args, out):
    s = _read_sub(args.file)
    depth = args.depth if args.depth is not None else 8 * args.max_len
    try:
        found = rigidity.stabilizer_probe((s, args.letter), args.max_len, depth)
    except ValueError as exc:
        raise WordSyntaxError(str(exc)) from None
    for j, f in enumerate(found):
        if j:
            out.write("\n")
        out.write(format_substitution(f, [f"element {j + 1} of {len(found)}"]))


def cmd_section5(args, out):
    depth = args.depth if args.depth is not None else 8 * args.max_len
    try:
        ok, text = section5.report(args.prefix_len, args.max_len, depth)
    except ValueError as exc:
        raise WordSyntaxError(str(exc)) from None
    out.write(text)
    return EXIT_OK if ok else EXIT_NONE


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="episturmian",
                                description="Normal forms, powers and roots of episturmian substitutions.")
    p.add_argument("--format", choices=("human", "machine"), default="human")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, help):
        q = sub.add_parser(name, help=help)
        q.add_argument("--format", choices=("human", "machine"), default=argparse.SUPPRESS)
        q.set_defaults(func=func)
        return q

    q = verb("normalize", cmd_normalize, "block-normalize a spinned word")
    q.add_argument("word", help="e.g. \"a a' a a'\"")

    q = verb("compose", cmd_compose, "compose substitution files, or evaluate a generator word")
    q.add_argument("files", nargs="*")
    q.add_argument("--gen", help="generator word, e.g. \"a b' @(ab)\"")
    q.add_argument("--alphabet", help="alphabet letters, e.g. abc")

    q = verb("decompose", cmd_decompose, "normal form of an episturmian substitution")
    q.add_argument("file")

    q = verb("power", cmd_power, "normal form of the n-th power")
    q.add_argument("file", nargs="?")
    q.add_argument("--nf", help="normal-form literal, e.g. \"a b' @()\"")
    q.add_argument("--alphabet")
    q.add_argument("-n", type=int, required=True)
    q.add_argument("--trace", action="store_true")

    q = verb("divide", cmd_divide, "left quotient r with tau = sigma . r")
    q.add_argument("sigma")
    q.add_argument("tau")

    q = verb("root", cmd_root, "common root of two substitutions with a common power")
    q.add_argument("sigma")
    q.add_argument("tau")
    q.add_argument("-n", type=int)
    q.add_argument("-m", type=int)
    q.add_argument("--max-power", type=int, default=6)

    q = verb("common-power", cmd_common_power, "smallest n, m with sigma^n = tau^m")
    q.add_argument("sigma")
    q.add_argument("tau")
    q.add_argument("--max-power", type=int, default=6)

    q = verb("fixpoint", cmd_fixpoint, "prefix of the fixed point")
    q.add_argument("file")
    q.add_argument("--letter", default="a")
    q.add_argument("--prefix-len", type=int, default=100)

    q = verb("ar-check", cmd_ar_check, "finite evidence for the Arnoux-Rauzy property")
    q.add_argument("file")
    q.add_argument("--letter", default="a")
    q.add_argument("--n-max", type=int, default=10)
    q.add_argument("--prefix-len", type=int)

    q = verb("stab-probe", cmd_stab_probe, "morphisms fixing the fixed point, up to a length bound")
    q.add_argument("file")
    q.add_argument("--letter", default="a")
    q.add_argument("--max-len", type=int, default=10)
    q.add_argument("--depth", type=int)

    q = verb("section5", cmd_section5, "checks on the binary example with a two-generator stabilizer")
    q.add_argument("--prefix-len", type=int, default=2 ** 14)
    q.add_argument("--max-len", type=int, default=40)
    q.add_argument("--depth", type=int)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code = args.func(args, out)
    except DomainFailure:
        out.write("none\n")
        return EXIT_NONE
    except NotEpisturmian as exc:
        out.write("none\n")
        err.write(f"error: {exc}\n")
        return EXIT_NONE
    except (WordSyntaxError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
