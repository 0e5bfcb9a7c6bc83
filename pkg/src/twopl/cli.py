"""Command-line front end.

Exit status: 0 when the schedule is in 2PL, 1 when it is not (the analysis is
still printed), 2 for usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from . import __version__
from .analysis import analyze
from .constraints import Mode
from .render import Format, RenderOptions, render
from .schedule import ParseError, parse_schedule

EXIT_MEMBER = 0
EXIT_NOT_MEMBER = 1
EXIT_ERROR = 2


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    text: Optional[str] = None
    file: Optional[str] = None
    stdin: bool = False
    mode: Mode = Mode.STANDARD
    format: Format = Format.TEXT
    include_inequalities: bool = False
    include_trace: bool = False
    output: Optional[str] = None
    pretty: bool = False
    standalone: bool = False

    def __post_init__(self):
        chosen = sum([self.text is not None, self.file is not None, self.stdin])
        if chosen != 1:
            raise UsageError("give exactly one input: a schedule argument, --file PATH or --stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twopl", description="Two-phase locking membership analysis.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", help="analyze a schedule such as 'r1(x) w2(x)'")
    p.add_argument("schedule", nargs="?", help="schedule text (may be empty)")
    p.add_argument("--file", metavar="PATH", help="read the schedule from a file")
    p.add_argument("--stdin", action="store_true", help="read the schedule from standard input")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.STANDARD.value)
    p.add_argument("--format", choices=[f.value for f in Format], default=Format.TEXT.value)
    p.add_argument("--inequalities", action="store_true", help="list the inequality system")
    p.add_argument("--trace", action="store_true", help="show the minimal cycle and removed arc per repair step")
    p.add_argument("--output", metavar="PATH", help="write to PATH instead of standard output")
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    p.add_argument("--standalone", action="store_true", help="emit a complete LaTeX document")
    return parser


def _config(ns: argparse.Namespace) -> CliConfig:
    return CliConfig(
        text=ns.schedule,
        file=ns.file,
        stdin=ns.stdin,
        mode=Mode(ns.mode),
        format=Format(ns.format),
        include_inequalities=ns.inequalities,
        include_trace=ns.trace,
        output=ns.output,
        pretty=ns.pretty,
        standalone=ns.standalone,
    )


def _read_input(config: CliConfig, stdin: TextIO) -> str:
    if config.file is not None:
        try:
            with open(config.file, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {config.file}: {exc.strerror}") from exc
    if config.stdin:
        return stdin.read()
    return config.text or ""


def run(config: CliConfig, stdout: Optional[TextIO] = None, stdin: Optional[TextIO] = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stdin = sys.stdin if stdin is None else stdin
    schedule = parse_schedule(_read_input(config, stdin))
    result = analyze(schedule, config.mode)
    color = (
        config.format is Format.TEXT
        and config.output is None
        and "NO_COLOR" not in os.environ
        and stdout.isatty()
    )
    opts = RenderOptions(
        format=config.format,
        include_inequalities=config.include_inequalities,
        include_trace=config.include_trace,
        color=color,
        pretty=config.pretty,
        standalone=config.standalone,
    )
    text = render(result, opts)
    if config.output is not None:
        try:
            with open(config.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {config.output}: {exc.strerror}") from exc
    else:
        stdout.write(text)
    return EXIT_MEMBER if result.member else EXIT_NOT_MEMBER


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return run(_config(ns))
    except ParseError as exc:
        print(f"twopl: parse error at {exc}", file=sys.stderr)
    except UsageError as exc:
        print(f"twopl: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
