"""
Command line front end.

    qwparrondo series --sequence AB --alpha 0.005 --beta 0.03 --steps 1000 --out ab.csv
    qwparrondo sweep --sequence ABB --steps 99 --threads 8 --out abb99.csv
    qwparrondo screen --max-len 4 --out screen.csv
    qwparrondo evolve --sequence AB --alpha 0.1 --beta 0.2 --steps 50

Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys
from collections.abc import Iterable, Iterator

from .coin import PhasePair
from .evolution import GameSequence, evolve, expectation_series
from .state import standard_initial_state
from .sweep import DEFAULT_STEP_CAP, SweepGrid, parrondo_screen, sweep

log = logging.getLogger("qwparrondo")

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _add_common(p: argparse.ArgumentParser, steps_default: int) -> None:
    p.add_argument("--sequence", default="AB", help="game schedule over {A,B}, repeated periodically")
    p.add_argument("--alpha", type=float, default=0.005, help="phase of game A (radians)")
    p.add_argument("--beta", type=float, default=0.03, help="phase of game B (radians)")
    p.add_argument("--steps", type=int, default=steps_default, help="number of time steps")
    p.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    p.add_argument("--threads", type=int, default=None, help="sweep worker processes (default: all CPUs)")
    p.add_argument("--precision", type=int, default=12, help="significant digits in the CSV")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha-min", type=float, default=0.0)
    p.add_argument("--alpha-max", type=float, default=0.2)
    p.add_argument("--beta-min", type=float, default=0.0)
    p.add_argument("--beta-max", type=float, default=0.2)
    p.add_argument("--n-alpha", type=int, default=81)
    p.add_argument("--n-beta", type=int, default=81)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwparrondo",
        description="Quantum walks with phase-biased coins played in periodic A/B sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="final position distribution after a run")
    _add_common(p, 100)

    p = sub.add_parser("series", help="<x> after every step")
    _add_common(p, 1000)

    p = sub.add_parser("sweep", help="<x> over an (alpha, beta) grid")
    _add_common(p, 100)
    _add_grid(p)

    p = sub.add_parser("screen", help="sweep every canonical sequence and flag positive ones")
    _add_common(p, DEFAULT_STEP_CAP)
    _add_grid(p)
    p.add_argument("--max-len", type=int, default=4, help="longest sequence period to screen (1-8)")
    return parser


@contextlib.contextmanager
def _open_out(path: str) -> Iterator:
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _write_csv(path: str, header: str, rows: Iterable[Iterable[str]]) -> None:
    lines = [header] + [",".join(r) for r in rows]
    with _open_out(path) as fh:
        fh.write("\n".join(lines) + "\n")


def _summary_stream(args: argparse.Namespace):
    # keep stdout clean when the CSV itself goes there
    return sys.stderr if args.out == "-" else sys.stdout


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    try:
        args.sequence = GameSequence(args.sequence)
    except ValueError as exc:
        parser.error(str(exc))
    if args.steps < 1:
        parser.error(f"--steps must be >= 1, got {args.steps}")
    if args.threads is not None and args.threads < 1:
        parser.error(f"--threads must be >= 1, got {args.threads}")
    if not 1 <= args.precision <= 17:
        parser.error(f"--precision must lie in [1, 17], got {args.precision}")
    if args.command in ("sweep", "screen"):
        try:
            args.grid = SweepGrid(
                sequence=args.sequence,
                steps=args.steps,
                alpha_min=args.alpha_min,
                alpha_max=args.alpha_max,
                beta_min=args.beta_min,
                beta_max=args.beta_max,
                n_alpha=args.n_alpha,
                n_beta=args.n_beta,
            )
        except ValueError as exc:
            parser.error(str(exc))
        phases = [args.alpha_min, args.alpha_max, args.beta_min, args.beta_max]
    else:
        phases = [args.alpha, args.beta]
    if args.command == "screen" and not 1 <= args.max_len <= 8:
        parser.error(f"--max-len must lie in [1, 8], got {args.max_len}")
    if not PhasePair(min(phases), max(phases)).in_canonical_range():
        log.warning("phases outside [-pi/2, pi/2]; the sign convention for losing games may not hold")


def cmd_evolve(args: argparse.Namespace) -> None:
    fmt = f".{args.precision}g"
    state = evolve(standard_initial_state(), args.sequence, (args.alpha, args.beta), args.steps)
    rows = []
    for x, r, l in zip(state.positions, state.right, state.left):
        p = abs(r) ** 2 + abs(l) ** 2
        if p >= 1e-300:
            vals = (r.real, r.imag, l.real, l.imag, p)
            rows.append([str(int(x))] + [format(v, fmt) for v in vals])
    _write_csv(args.out, "x,re_r,im_r,re_l,im_l,prob", rows)
    mean = sum(int(row[0]) * float(row[-1]) for row in rows)
    print(f"t={state.t} exp_x={mean:{fmt}}", file=_summary_stream(args))


def cmd_series(args: argparse.Namespace) -> None:
    fmt = f".{args.precision}g"
    series = expectation_series(args.sequence, (args.alpha, args.beta), args.steps)
    _write_csv(args.out, "t,exp_x", ([str(int(t)), format(x, fmt)] for t, x in series))


def cmd_sweep(args: argparse.Namespace) -> None:
    fmt = f".{args.precision}g"
    result = sweep(args.grid, workers=args.threads)
    _write_csv(
        args.out,
        "alpha,beta,exp_x",
        ([format(a, fmt), format(b, fmt), format(v, fmt)] for a, b, v in result.cells()),
    )


def cmd_screen(args: argparse.Namespace) -> None:
    fmt = f".{args.precision}g"
    report = parrondo_screen(args.max_len, args.grid, step_cap=args.steps, workers=args.threads)
    rows = [
        [e.sequence, str(e.steps), format(e.max_exp_x, fmt), str(e.has_positive).lower()]
        for e in report.values()
    ]
    _write_csv(args.out, "sequence,steps,max_exp_x,has_positive", rows)
    winners = [e.sequence for e in report.values() if e.has_positive]
    print("positive sequences: " + (" ".join(winners) if winners else "none"), file=_summary_stream(args))


COMMANDS = {
    "evolve": cmd_evolve,
    "series": cmd_series,
    "sweep": cmd_sweep,
    "screen": cmd_screen,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        COMMANDS[args.command](args)
    except OSError as exc:
        print(f"qwparrondo: I/O error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (ValueError, ArithmeticError) as exc:
        print(f"qwparrondo: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
