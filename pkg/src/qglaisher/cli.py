"""Command line front end: ``verify``, ``oracle`` and ``bench``.

Exit codes: 0 when every claim holds (and every negative control is
rejected), 1 on any counterexample, error record or oracle inconsistency,
2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .claims import ClaimId
from .sweep import ConfigError, SweepConfig, bench_csv, run_bench, run_oracle_mode, run_sweep

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("qglaisher")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _claim_list(text: str) -> tuple:
    if text.strip().lower() == "all":
        return tuple(ClaimId)
    out = []
    for name in text.split(","):
        name = name.strip().upper()
        try:
            out.append(ClaimId(name))
        except ValueError:
            raise argparse.ArgumentTypeError(f"unknown claim {name!r}") from None
    return tuple(out)


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _sizes(text: str) -> list:
    sizes = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            p, m = item.split(":")
            sizes.append((int(p), int(m)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad size {item!r}; expected p:m") from None
    return sizes


def _add_sweep_flags(sp: argparse.ArgumentParser) -> None:
    d = SweepConfig.__dataclass_fields__
    sp.add_argument("--claims", type=_claim_list, default=tuple(ClaimId),
                    help="comma-separated claim ids, or 'all' (default)")
    sp.add_argument("--p-min", type=int, default=d["p_min"].default)
    sp.add_argument("--p-max", type=int, default=d["p_max"].default)
    sp.add_argument("--m-min", type=int, default=d["m_min"].default)
    sp.add_argument("--m-max", type=int, default=d["m_max"].default)
    sp.add_argument("--i-max", type=int, default=d["i_max"].default, help="LEMMA2 only")
    sp.add_argument("--s", type=_int_list, default=d["s_set"].default, dest="s_set",
                    help="LEMMA2 powers, comma-separated (default 1,2,3,4)")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=("json", "csv", "human"), default="json")
    sp.add_argument("--out", type=Path, default=None, help="write report here instead of stdout")
    sp.add_argument("--negative-controls", action="store_true",
                    help="also run perturbed instances that must fail")
    sp.add_argument("--degree-cap", type=int, default=d["degree_cap"].default)
    sp.add_argument("--theorem2-allow-p3", action="store_true",
                    help="admit p=3 for THEOREM2 (experimental)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qglaisher", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add_sweep_flags(sub.add_parser("verify", help="check every claim over a parameter grid"))
    _add_sweep_flags(sub.add_parser("oracle", help="as verify, cross-checked against oracle algorithms"))
    bp = sub.add_parser("bench", help="time the polynomial kernel")
    bp.add_argument("--sizes", type=_sizes, default=[(5, 1), (13, 2), (31, 3)], help='"p:m,p:m,..."')
    bp.add_argument("--degree-cap", type=int, default=SweepConfig.__dataclass_fields__["degree_cap"].default)
    bp.add_argument("--pascal-cap", type=int, default=5000,
                    help="skip the Pascal oracle timing above this lhs degree")
    bp.add_argument("--out", type=Path, default=None)
    return parser


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")

    if args.command == "bench":
        rows = run_bench(args.sizes, degree_cap=args.degree_cap, pascal_cap=args.pascal_cap)
        _emit(bench_csv(rows), args.out)
        return EXIT_OK

    try:
        config = SweepConfig(
            claims=args.claims, p_min=args.p_min, p_max=args.p_max, m_min=args.m_min,
            m_max=args.m_max, i_max=args.i_max, s_set=args.s_set, workers=args.workers,
            format=args.format, negative_controls=args.negative_controls,
            degree_cap=args.degree_cap, theorem2_allow_p3=args.theorem2_allow_p3,
        )
    except ConfigError as exc:
        print(f"qglaisher: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report = run_oracle_mode(config) if args.command == "oracle" else run_sweep(config)
    _emit(report.render(), args.out)
    log.info("%d records in %.2f s", len(report.records), report.wall_time)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
