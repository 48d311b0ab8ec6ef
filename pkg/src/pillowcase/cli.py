"""Command-line front end.

Every command prints records of ``key: value`` lines (or one JSON object per
record with ``--format json-lines``).  Exit status: 0 when all requested
checks pass, 1 when a check fails, 2 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Iterable

from . import algebra, bar, corpus
from .curves import CurveError, compile_text
from .pairing import build_pairing, mixed_chains
from .structures import (
    FormatError,
    StructureError,
    dualize,
    format_dd,
    format_module,
    iso_dd,
    module_isomorphism,
    reduce_dd,
    validate_ainfty,
    validate_dd,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (FormatError, CurveError, algebra.AlgebraError, StructureError, OSError)


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self._first = True

    def record(self, **fields) -> None:
        if self.fmt == "json-lines":
            print(json.dumps(fields), file=self.stream)
            return
        if not self._first:
            print(file=self.stream)
        self._first = False
        for k, v in fields.items():
            if isinstance(v, bool):
                v = "yes" if v else "no"
            print(f"{k}: {v}", file=self.stream)

    def raw(self, text: str) -> None:
        self.stream.write(text)


def _dd(choice: str):
    return bar.builtin_bar_r() if choice == "bar_r" else bar.build_bar()


def _load_validated(path: str, out: Output, max_arity: int | None = None):
    m = corpus.load_module(path)
    rep = validate_ainfty(m, max_arity)
    if not rep.ok:
        out.record(input=path, check="a-infinity relations", result="FAIL", detail=rep.summary())
        return None
    return m


def cmd_compile(args, out: Output) -> int:
    text = Path(args.curve).read_text()
    m = compile_text(text, name=Path(args.curve).stem)
    body = format_module(m)
    if args.out == "-":
        out.raw(body)
    elif args.out:
        Path(args.out).write_text(body)
    out.record(input=args.curve, generators=len(m.generators), actions=len(m.actions))
    return EXIT_OK


def cmd_pair(args, out: Output) -> int:
    m1 = _load_validated(args.first, out)
    m0 = _load_validated(args.second, out)
    if m1 is None or m0 is None:
        return EXIT_FAIL
    cx = build_pairing(m1, dualize(m0), _dd(args.dd))
    rank = cx.homology_rank()
    if args.dump:
        out.raw("\n".join(cx.dump_lines()) + "\n")
    fields = dict(generators=len(cx), arrows=len(cx.arrows), rank=rank)
    if args.periodic is not None:
        number = rank - 2 if args.periodic else rank
        if number < 0:
            out.record(**fields, check="intersection number", result="FAIL", detail="negative; the periodic flag is wrong")
            return EXIT_FAIL
        fields["intersection_number"] = number
    out.record(**fields)
    return EXIT_OK


def cmd_rank(args, out: Output) -> int:
    m1 = _load_validated(args.first, out)
    m0 = _load_validated(args.second, out)
    if m1 is None or m0 is None:
        return EXIT_FAIL
    out.record(rank=build_pairing(m1, dualize(m0), _dd(args.dd)).homology_rank())
    return EXIT_OK


def cmd_validate(args, out: Output) -> int:
    m = corpus.load_module(args.module)
    rep = validate_ainfty(m, args.max_arity)
    out.record(
        input=args.module,
        generators=len(m.generators),
        actions=len(m.actions),
        checked=rep.checked,
        violations=len(rep.violations),
        result="PASS" if rep.ok else "FAIL",
    )
    if args.verbose:
        for v in rep.violations:
            out.record(violation=v)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_bar_build(args, out: Output) -> int:
    d = bar.build_bar()
    _emit_dd(d, args, out)
    return EXIT_OK


def cmd_bar_reduce(args, out: Output) -> int:
    d = reduce_dd(bar.build_bar(), seed=args.seed)
    _emit_dd(d, args, out)
    iso = iso_dd(d, bar.builtin_bar_r()) is not None
    out.record(isomorphic_to_builtin=iso)
    return EXIT_OK if iso else EXIT_FAIL


def _emit_dd(d, args, out: Output) -> None:
    rename = bar.minus_name if args.minus else None
    if args.out == "-":
        out.raw(format_dd(d, rename))
    elif args.out:
        Path(args.out).write_text(format_dd(d, rename))
    out.record(generators=len(d), arrows=len(d.arrows), dd_relation=validate_dd(d).ok)


def cmd_bar_certify(args, out: Output) -> int:
    cert = bar.certify_bar(bar_path=args.bar, bar_r_path=args.bar_r)
    for name, ok, detail in cert.steps:
        out.record(check=name, result="PASS" if ok else "FAIL", detail=detail)
    return EXIT_OK if cert.ok else EXIT_FAIL


# -- checks shared by ``selftest`` and ``corpus run`` -----------------------

Check = tuple[str, Callable[[], tuple[bool, str]]]


def _run_checks(checks: Iterable[Check], out: Output) -> int:
    failed = total = 0
    for name, fn in checks:
        try:
            ok, detail = fn()
        except Exception as exc:  # report and keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        failed += not ok
        total += 1
        out.record(check=name, result="PASS" if ok else "FAIL", detail=detail)
    out.record(checks=total, failed=failed)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def _rank_check(entry: corpus.CorpusEntry) -> Check:
    def run():
        cx = build_pairing(entry.load(), dualize(corpus.trivial_tangle()))
        r = cx.homology_rank()
        return r == entry.expected_rank, f"{len(cx)} generators, {len(cx.arrows)} arrows, rank {r} (expected {entry.expected_rank})"

    return f"rank {entry.name}", run


def _validation_check(entry: corpus.CorpusEntry) -> Check:
    def run():
        rep = validate_ainfty(entry.load())
        return rep.ok, rep.summary()

    return f"a-infinity {entry.name}", run


def _compiler_check(curve: corpus.CorpusEntry, module: corpus.CorpusEntry) -> Check:
    def run():
        a, b = curve.load(), module.load()
        iso = module_isomorphism(a, b)
        return iso is not None, f"{len(a.generators)} generators, {len(a.actions)} actions vs {len(b.actions)}"

    return f"compiled {curve.name} matches {module.name}", run


def corpus_checks() -> list[Check]:
    checks = [_validation_check(e) for e in corpus.CORPUS]
    modules = {e.filename.rsplit(".", 1)[0]: e for e in corpus.CORPUS if e.kind == "module"}
    for e in corpus.CORPUS:
        stem = e.filename.rsplit(".", 1)[0]
        if e.kind == "curve" and stem in modules:
            checks.append(_compiler_check(e, modules[stem]))
    checks += [_rank_check(e) for e in corpus.rank_checks()]
    return checks


def selftest_checks() -> list[Check]:
    def assoc():
        bad = algebra.associativity_failures()
        return not bad, f"{len(algebra.BASIS) ** 3} triples, {len(bad)} failures"

    def dual():
        bad = algebra.dual_differential_failures()
        return not bad, f"{len(algebra.all_dual_paths())} paths, {len(bad)} failures"

    def certify():
        cert = bar.certify_bar()
        failed = [line for line in cert.lines() if line.startswith("FAIL")]
        return cert.ok, "; ".join(failed) or f"{len(cert.steps)} steps"

    def mixed():
        chains = list(mixed_chains())
        return not bar.both_sided_arrows(bar.builtin_bar_r()), f"no two-sided arrows; {len(chains)} mixed chains up to length 5"

    return [
        ("algebra associativity", assoc),
        ("dual differential", dual),
        ("bar certification", certify),
        ("bar_r has one-sided arrows only", mixed),
    ] + corpus_checks()


def cmd_selftest(args, out: Output) -> int:
    return _run_checks(selftest_checks(), out)


def cmd_corpus_run(args, out: Output) -> int:
    return _run_checks(corpus_checks(), out)


def cmd_corpus_list(args, out: Output) -> int:
    for e in corpus.CORPUS:
        out.record(name=e.name, kind=e.kind, path=str(e.path), expected_rank=e.expected_rank if e.expected_rank is not None else "-", note=e.note or "-")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pillowcase", description="Curve modules, the reduced bar and Floer pairings over the pillowcase algebra.")
    p.add_argument("--format", choices=("text", "json-lines"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile-curve", help="compile a curve word into a module file")
    c.add_argument("curve")
    c.add_argument("-o", "--out", help="output module file ('-' for stdout)")
    c.set_defaults(func=cmd_compile)

    for name, func, help_ in (("pair", cmd_pair, "build the pairing complex"), ("rank", cmd_rank, "homology rank of the pairing")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("first", help="module, curve or direct-sum file (right factor M1)")
        s.add_argument("second", help="module, curve or direct-sum file (dualized factor M0)")
        s.add_argument("--dd", choices=("bar_r", "bar"), default="bar_r", help="DD structure in the middle")
        if name == "pair":
            s.add_argument("--dump", action="store_true", help="print every generator and arrow")
            s.add_argument("--periodic", action=argparse.BooleanOptionalAction, default=None, help="report the intersection number, subtracting 2 if the curves have periodic domains")
        s.set_defaults(func=func)

    v = sub.add_parser("validate-module", help="check the A-infinity relations")
    v.add_argument("module")
    v.add_argument("--max-arity", type=int, default=None)
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_validate)

    b = sub.add_parser("bar", help="the bar resolution")
    bsub = b.add_subparsers(dest="bar_command", required=True)
    bb = bsub.add_parser("build")
    br = bsub.add_parser("reduce")
    br.add_argument("--seed", type=int, default=None, help="randomize the cancellation order")
    for s in (bb, br):
        s.add_argument("-o", "--out", help="write the DD structure ('-' for stdout)")
        s.add_argument("--minus", action="store_true", help="name generators b(-xi1,...) instead of b(xi1',...)")
    bb.set_defaults(func=cmd_bar_build)
    br.set_defaults(func=cmd_bar_reduce)
    bc = bsub.add_parser("certify")
    bc.add_argument("--bar", help="alternative 56-generator listing")
    bc.add_argument("--bar-r", help="alternative reduced listing")
    bc.set_defaults(func=cmd_bar_certify)

    st = sub.add_parser("selftest", help="algebra, bar, corpus and rank checks")
    st.set_defaults(func=cmd_selftest)

    cp = sub.add_parser("corpus", help="the bundled examples")
    csub = cp.add_subparsers(dest="corpus_command", required=True)
    csub.add_parser("run").set_defaults(func=cmd_corpus_run)
    csub.add_parser("list").set_defaults(func=cmd_corpus_list)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.format)
    try:
        return args.func(args, out)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
