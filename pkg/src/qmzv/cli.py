"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 a check reported a
counterexample.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .duality import tau
from .partitions import (
    MarkedPartition,
    enumerate_marked,
    format_marked_lines,
    parse_marked_lines,
    type_word,
    validate,
)
from .phi import mp_multiplicity, phi, split_lower, split_rest, verify_theorem
from .qseries import psi, sz
from .relations import GRADING_NOTE, compare, discover, known_span
from .stuffle import IMPLEMENTATIONS, MultiplicityQuery, multiplicity, multiplicity_recursive
from .words import DomainError, ParseError, format_combination, format_word, parse_word

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


def _word(text: str):
    try:
        return parse_word(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _read_marked(path: str) -> list[MarkedPartition]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_marked_lines(text)
    except ParseError as exc:
        raise DomainError(str(exc)) from None


def _read_one_marked(path: str) -> MarkedPartition:
    mps = _read_marked(path)
    if not mps:
        raise DomainError(f"{path} contains no marked partition")
    return mps[0]


def _require_valid(mp: MarkedPartition) -> None:
    problem = validate(mp)
    if problem:
        raise DomainError(f"{mp.to_json()} is not a marked partition: {problem}")


def cmd_stuffle(args, out, err):
    out.append(format_combination(IMPLEMENTATIONS[args.impl](args.w1, args.w2)))


def cmd_dual(args, out, err):
    out.append(format_word(tau(args.w)))


def cmd_sz(args, out, err):
    out.append(sz(args.w, args.order).format())


def cmd_psi(args, out, err):
    out.append(str(psi(args.w, args.n)))


def cmd_mp_enumerate(args, out, err):
    mps = enumerate_marked(args.w, args.n)
    if mps:
        out.append(format_marked_lines(mps))


def cmd_mp_validate(args, out, err):
    bad = 0
    for mp in _read_marked(args.file):
        problem = validate(mp)
        out.append("ok" if problem is None else f"violation: {problem}")
        bad += problem is not None
    return EXIT_DOMAIN if bad else EXIT_OK


def cmd_mp_type(args, out, err):
    for mp in _read_marked(args.file):
        out.append(format_word(type_word(mp)))


def cmd_mp_split(args, out, err):
    mp = _read_one_marked(args.file)
    _require_valid(mp)
    out.append(split_rest(mp).to_json())
    out.append(split_lower(mp).to_json())


def cmd_mp_preimages(args, out, err):
    target = _read_one_marked(args.file)
    report = mp_multiplicity(args.w1, args.w2, target)
    out.append(report.format())
    return EXIT_OK if report.agrees else EXIT_VIOLATION


def cmd_phi(args, out, err):
    a, b = _read_one_marked(args.file_a), _read_one_marked(args.file_b)
    _require_valid(a)
    _require_valid(b)
    out.append(phi(a, b).to_json())


def cmd_mult(args, out, err):
    q = MultiplicityQuery(args.w1, args.w2, args.w)
    out.append(str(multiplicity_recursive(q) if args.recursive else multiplicity(q)))


def cmd_verify(args, out, err):
    summary = verify_theorem(args.max_len, args.max_index, args.max_n, jobs=args.jobs)
    out.append(summary.format())
    return EXIT_VIOLATION if summary.mismatches else EXIT_OK


def cmd_relations(args, out, err):
    if args.order < 10 * args.max_len:
        err.append(
            f"warning: order {args.order} < 10*max_len; truncated relations are likely spurious"
        )
    if args.compare:
        result = compare(args.max_len, args.max_index, args.order)
        out.append(result.format())
        return EXIT_OK if result.containment else EXIT_VIOLATION
    lines = [c.format() for c in known_span(args.max_len, args.max_index, args.order)]
    lines += [c.format() for c in discover(args.max_len, args.max_index, args.order)]
    lines.append(f"# relations hold through q^{args.order} only; {GRADING_NOTE}")
    out.append("\n".join(lines))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qmzv", description="Schlesinger-Zudilin q-zeta values and marked partitions")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("stuffle", help="stuffle product of two words")
    s.add_argument("w1", type=_word)
    s.add_argument("w2", type=_word)
    s.add_argument("--impl", choices=sorted(IMPLEMENTATIONS), default="front")
    s.set_defaults(func=cmd_stuffle)

    s = sub.add_parser("dual", help="duality involution")
    s.add_argument("w", type=_word)
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("sz", help="q-expansion coefficients")
    s.add_argument("w", type=_word)
    s.add_argument("--order", type=_nonneg, required=True)
    s.set_defaults(func=cmd_sz)

    s = sub.add_parser("psi", help="single q-expansion coefficient")
    s.add_argument("w", type=_word)
    s.add_argument("n", type=_nonneg)
    s.set_defaults(func=cmd_psi)

    mp = sub.add_parser("mp", help="marked partitions")
    mps = mp.add_subparsers(dest="mp_command", required=True, parser_class=_Parser)
    s = mps.add_parser("enumerate")
    s.add_argument("w", type=_word)
    s.add_argument("n", type=_nonneg)
    s.set_defaults(func=cmd_mp_enumerate)
    for name, func in (("validate", cmd_mp_validate), ("type", cmd_mp_type), ("split", cmd_mp_split)):
        s = mps.add_parser(name)
        s.add_argument("file")
        s.set_defaults(func=func)
    s = mps.add_parser("preimages", help="all phi-preimage pairs of a target")
    s.add_argument("w1", type=_word)
    s.add_argument("w2", type=_word)
    s.add_argument("file")
    s.set_defaults(func=cmd_mp_preimages)

    s = sub.add_parser("phi", help="glue two marked partitions")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("mult", help="multiplicity of W in W1 * W2")
    s.add_argument("w1", type=_word)
    s.add_argument("w2", type=_word)
    s.add_argument("w", type=_word)
    s.add_argument("--recursive", action="store_true")
    s.set_defaults(func=cmd_mult)

    s = sub.add_parser("verify-theorem", help="exhaustive phi-preimage check")
    s.add_argument("--max-len", type=_nonneg, required=True)
    s.add_argument("--max-index", type=_nonneg, required=True)
    s.add_argument("--max-N", dest="max_n", type=_nonneg, required=True)
    s.add_argument("--jobs", type=_positive, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("relations", help="linear relations through q^Q")
    s.add_argument("--max-len", type=_nonneg, required=True)
    s.add_argument("--max-index", type=_nonneg, required=True)
    s.add_argument("--order", type=_nonneg, required=True)
    s.add_argument("--compare", action="store_true")
    s.set_defaults(func=cmd_relations)
    return p


def run(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run one invocation; returns ``(exit_code, stdout_text, stderr_text)``."""
    out: list[str] = []
    err: list[str] = []
    try:
        args = build_parser().parse_args(list(argv))
        code = args.func(args, out, err) or EXIT_OK
    except UsageError as exc:
        return EXIT_USAGE, "", f"{exc}\n"
    except DomainError as exc:
        return EXIT_DOMAIN, "", f"error: {exc}\n"
    stdout = "\n".join(out) + "\n" if out else ""
    stderr = "\n".join(err) + "\n" if err else ""
    return code, stdout, stderr


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, stdout, stderr = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
