"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain/dimension error (including
failed verification and search guards), 4 no code exists, 5 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import analysis, flash
from .codec import (
    LevelWord,
    RioCodeSpec,
    bits_per_cell,
    payload_from_hex,
    payload_to_hex,
    rio_encode,
    rio_read_chunk,
)
from .errors import NotFound, RioError
from .wom import (
    bits_to_str,
    load_wom_code,
    save_wom_code,
    synthesize_wom_code,
    toy_code,
    verify_wom_code,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NOT_FOUND, EXIT_IO = 0, 2, 3, 4, 5

PAYLOAD_HELP = (
    "payload as exactly ceil(K/4) hex digits (optional 0x prefix); the value is "
    "a K-bit big-endian number whose most significant bit is the first bit of subset 1"
)


class CommandFailed(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_spec(args) -> RioCodeSpec:
    wom = load_wom_code(args.spec) if args.spec else toy_code()
    return RioCodeSpec(wom)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_encode(args) -> int:
    spec = _load_spec(args)
    data = payload_from_hex(args.payload, spec.K)
    word = rio_encode(spec, data)
    Path(args.out).write_text(word.dumps())
    print(f"bits_per_cell={float(bits_per_cell(spec)):.4f}")
    return EXIT_OK


def _load_wordline(args) -> flash.SimWordline:
    word = LevelWord.loads(Path(args.levels_file).read_text())
    return flash.SimWordline().program(word)


def cmd_decode(args) -> int:
    spec = _load_spec(args)
    line = _load_wordline(args)
    bits: list[int] = []
    for j in range(1, spec.t + 1):
        bits.extend(rio_read_chunk(spec, line.word, j, sense_fn=line.sense))
    print(f"{payload_to_hex(bits)} senses={line.sense_count}")
    return EXIT_OK


def cmd_read_chunk(args) -> int:
    spec = _load_spec(args)
    line = _load_wordline(args)
    chunk = rio_read_chunk(spec, line.word, args.subset, sense_fn=line.sense)
    print(f"{bits_to_str(chunk)} senses={line.sense_count}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.writes < 1:
        raise CommandFailed(f"--writes must be >= 1, got {args.writes}", EXIT_USAGE)
    row = analysis.analyze(args.writes)
    if args.format == "csv":
        text = row.header() + "\n" + row.csv_row() + "\n"
    else:
        names = row.header().split(",")
        values = row.csv_row().split(",")
        width = max(map(len, names))
        text = "".join(f"{name:<{width}}  {value}\n" for name, value in zip(names, values))
    _emit(text, args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    M = args.levels
    rows = []
    for scheme in flash.SchemeKind:
        cost = flash.scheme_sense_cost(scheme, M)
        vs_il = flash.speedup(scheme, M)
        vs_ni = flash.speedup(scheme, M, flash.SchemeKind.NON_INTERLEAVED)
        rows.append((scheme.value, str(M), *(f"{float(x):.4f}" for x in (cost, vs_il, vs_ni))))
    header = ("scheme", "M", "senses_per_chunk", "speedup", "speedup_vs_non_interleaved")
    if args.format == "csv":
        text = "".join(",".join(r) + "\n" for r in [header, *rows])
    else:
        widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
        text = "".join(
            "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() + "\n"
            for r in [header, *rows]
        )
    _emit(text, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    spec = _load_spec(args)
    payload_lines = Path(args.payloads).read_text().split()
    payloads = [payload_from_hex(h, spec.K) for h in payload_lines]
    try:
        reads = flash.load_workload(args.workload)
    except ValueError as exc:
        raise CommandFailed(str(exc), EXIT_DOMAIN) from exc
    report = flash.simulate_workload(spec, payloads, reads)
    _emit(flash.CSV_HEADER + "\n" + report.csv_row() + "\n", args.out)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    code = synthesize_wom_code(args.n, args.k, args.t)
    save_wom_code(code, args.out)
    print(f"found ({code.n}, {code.k}, {code.t}) code, {float(bits_per_cell(RioCodeSpec(code))):.4f} bits per cell")
    return EXIT_OK


def cmd_verify(args) -> int:
    code = load_wom_code(args.spec) if args.spec else toy_code()
    report = verify_wom_code(code)
    if report.is_valid:
        print(f"valid ({code.n}, {code.k}, {code.t}) WOM code")
        return EXIT_OK
    print(f"invalid: {len(report.violations)} violation(s)")
    for v in report.violations:
        print(f"  {v}")
    return EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riocode",
        description="Random-I/O coding for multi-level-cell wordlines.",
        epilog=PAYLOAD_HELP,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    spec_opt = argparse.ArgumentParser(add_help=False)
    spec_opt.add_argument("--spec", metavar="PATH", help="WOM code JSON file (default: built-in toy code)")
    fmt_opt = argparse.ArgumentParser(add_help=False)
    fmt_opt.add_argument("--format", choices=("csv", "plain"), default="csv")
    fmt_opt.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    p = sub.add_parser("encode", parents=[spec_opt], help="encode a payload into a level file",
                       description=PAYLOAD_HELP)
    p.add_argument("payload", help="hex payload")
    p.add_argument("--out", metavar="PATH", required=True, help="level file to write")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[spec_opt], help="recover the whole payload (t senses)")
    p.add_argument("levels_file", metavar="LEVELS")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("read-chunk", parents=[spec_opt], help="recover one subset with one sense")
    p.add_argument("levels_file", metavar="LEVELS")
    p.add_argument("--subset", metavar="J", type=int, required=True, help="subset index 1..t")
    p.set_defaults(func=cmd_read_chunk)

    p = sub.add_parser("analyze", parents=[fmt_opt], help="asymptotic efficiency for t writes")
    p.add_argument("--writes", metavar="T", type=int, required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", parents=[fmt_opt], help="senses per chunk for each layout")
    p.add_argument("--levels", metavar="M", type=int, required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", parents=[spec_opt], help="replay a chunk-read workload")
    p.add_argument("--payloads", metavar="PATH", required=True, help="one hex payload per line")
    p.add_argument("--workload", metavar="PATH", required=True,
                   help="lines of '<wordline-index> <subset-index>'")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("synthesize-wom", help="search for an (n, k, t) WOM code")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--out", metavar="PATH", required=True)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify-wom", parents=[spec_opt], help="exhaustively check a WOM code")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandFailed as exc:
        code, msg = exc.code, str(exc)
    except NotFound as exc:
        code, msg = EXIT_NOT_FOUND, str(exc)
    except RioError as exc:
        code, msg = EXIT_DOMAIN, str(exc)
    except OSError as exc:
        code, msg = EXIT_IO, str(exc)
    print(f"riocode: error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
