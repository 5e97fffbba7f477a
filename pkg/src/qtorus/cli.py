"""Command line entry point: ``qtorus analyze | extend | selftest``."""

from __future__ import annotations

import argparse
import sys

from . import errors, formats, invariants, report, selftest


def _vset(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"--vset expects comma-separated integers, got {text!r}") from None
    if not vals or any(v < 0 for v in vals):
        raise argparse.ArgumentTypeError("--vset expects non-negative integers")
    return vals


def _bound(text: str) -> int:
    try:
        b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--bound expects an integer, got {text!r}") from None
    if b < 1:
        raise argparse.ArgumentTypeError("--bound must be at least 1")
    return b


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors share the validation exit code
        self.print_usage(sys.stderr)
        self.exit(errors.EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qtorus", description="Invariants of quantum tori and GK dimensions of their simple modules.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="invariants of the torus in FILE")
    a.add_argument("file")
    a.add_argument("--json", action="store_true", help="machine-readable report")
    a.add_argument("--bound", type=_bound, default=invariants.DEFAULT_SEARCH_BOUND, help="Krull dimension search bound")

    e = sub.add_parser("extend", help="analyze the skew-Laurent extension by the [sigma] block of FILE")
    e.add_argument("file")
    e.add_argument("--json", action="store_true")
    e.add_argument("--bound", type=_bound, default=invariants.DEFAULT_SEARCH_BOUND)
    e.add_argument("--vset", type=_vset, default=None, help="GK dimensions of simple modules of the base torus, e.g. 1,3")

    s = sub.add_parser("selftest", help="certify this build against brute-force oracles")
    s.add_argument("--quick", action="store_true", help="smaller randomized suites")
    s.add_argument("--jobs", type=int, default=1, help="worker processes for the isotropic enumeration")
    return p


def _emit(rep: report.InvariantReport, as_json: bool) -> None:
    sys.stdout.write(report.render_json(rep) if as_json else report.render_text(rep))


def _selftest(args) -> int:
    ok = True
    for res in selftest.run_all(quick=args.quick, jobs=max(1, args.jobs)):
        print(res.line(), flush=True)
        ok &= res.ok
    print("selftest: " + ("PASS" if ok else "FAIL"))
    return errors.EXIT_OK if ok else errors.EXIT_SELFTEST


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selftest":
        return _selftest(args)
    try:
        pf = formats.read_presentation(args.file)
        if args.command == "analyze":
            rep = report.analyze(pf.torus, args.bound)
            _emit(rep, args.json)
            return errors.EXIT_OK if rep.kdim.exact else errors.EXIT_INEXACT
        if pf.sigma is None:
            raise errors.ParseError(f"{args.file} has no [sigma] block to extend by")
        rep = report.extend(pf.torus, pf.sigma, args.bound, args.vset)
        _emit(rep, args.json)
        return errors.EXIT_OK
    except OSError as exc:
        print(f"qtorus: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return errors.EXIT_INVALID
    except errors.QTorusError as exc:
        print(f"qtorus: {exc}", file=sys.stderr)
        return exc.exit_code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
