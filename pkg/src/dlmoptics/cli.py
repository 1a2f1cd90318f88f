"""Command line interface: ``dlmoptics malus|wheeler|selftest``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import app
from .dlm import ConfigurationError
from .rng import MODES, parse_seed

BOOL_FLAGS = {"warm-start", "cold-start"}
TRUE_WORDS = {"1", "true", "yes", "on"}


def _seed(text: str) -> int:
    try:
        return parse_seed(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}; use decimal or 0x-hex") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, default=0.99,
                        help="learning parameter of every beam splitter (default 0.99)")
    common.add_argument("--events", type=int, default=10000, help="events per sweep point")
    common.add_argument("--seed", type=_seed, default=0, help="64-bit seed, decimal or 0x-hex")
    common.add_argument("--rng-mode", choices=MODES, default="pseudo")
    start = common.add_mutually_exclusive_group()
    start.add_argument("--warm-start", dest="warm_start", action="store_true", default=True,
                       help="keep learning-machine state across sweep points (default)")
    start.add_argument("--cold-start", dest="warm_start", action="store_false",
                       help="rebuild the network for every sweep point")
    common.add_argument("--warmup", type=int, default=None,
                        help="events dropped from each point's tally "
                             f"(default 0 warm, {app.COLD_START_WARMUP} cold)")
    common.add_argument("--out", type=Path, help="CSV output path (default stdout)")
    common.add_argument("--plot", type=Path, help="SVG plot output path")
    common.add_argument("--config-file", type=Path,
                        help="key=value file; command line flags take precedence")

    parser = argparse.ArgumentParser(
        prog="dlmoptics",
        description="Event-by-event simulation of single-photon PBS experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    malus = sub.add_parser("malus", parents=[common], help="single PBS, sweep polarization")
    malus.add_argument("--theta-start", type=float, default=0.0, help="degrees")
    malus.add_argument("--theta-step", type=float, default=15.0, help="degrees")
    malus.add_argument("--points", type=int, default=24)

    wheeler = sub.add_parser("wheeler", parents=[common],
                             help="delayed-choice Mach-Zehnder, sweep phase shift")
    wheeler.add_argument("--phi-start", type=float, default=0.0, help="degrees")
    wheeler.add_argument("--phi-step", type=float, default=15.0, help="degrees")
    wheeler.add_argument("--points", type=int, default=25)
    wheeler.add_argument("--config", choices=("open", "closed", "random"), default="random",
                         help="EOM voltage off, on, or drawn per event (default random)")

    sub.add_parser("selftest", help="run oracle-equivalence and invariant checks")
    return parser


def read_config_file(path: Path) -> list[str]:
    """Turn ``key=value`` lines into command line tokens."""
    tokens: list[str] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-").replace("_", "-")
        if key in BOOL_FLAGS:
            if value.lower() in TRUE_WORDS:
                tokens.append(f"--{key}")
        else:
            tokens += [f"--{key}", value]
    return tokens


def _config_file_arg(argv: list[str]) -> Path | None:
    for i, tok in enumerate(argv):
        if tok == "--config-file" and i + 1 < len(argv):
            return Path(argv[i + 1])
        if tok.startswith("--config-file="):
            return Path(tok.split("=", 1)[1])
    return None


def _run_selftest() -> int:
    from .selftest import run_all

    failed = 0
    for res in run_all():
        print(f"{'PASS' if res.ok else 'FAIL'}  {res.name}: {res.detail}")
        failed += not res.ok
    return 1 if failed else 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    cfg = _config_file_arg(argv)
    if cfg is not None and argv:
        try:
            argv = argv[:1] + read_config_file(cfg) + argv[1:]
        except (OSError, ConfigurationError) as exc:
            parser.error(str(exc))
    args = parser.parse_args(argv)

    if args.command == "selftest":
        return _run_selftest()

    try:
        if args.command == "malus":
            table = app.malus_sweep(args.alpha, args.events, args.theta_start, args.theta_step,
                                    args.points, args.seed, args.rng_mode, args.warm_start,
                                    args.warmup)
        else:
            grid = app.phi_grid(args.phi_start, args.phi_step, args.points)
            table = app.wheeler_sweep(args.alpha, args.events, grid, args.config, args.seed,
                                      args.rng_mode, args.warm_start, args.warmup)
        if args.out is None:
            sys.stdout.write(app.format_csv(table))
        else:
            app.write_csv(table, args.out)
        if args.plot is not None:
            app.emit_plot(table, args.plot)
    except ConfigurationError as exc:
        parser.error(str(exc))
    except app.OutputError as exc:
        print(f"dlmoptics: error: {exc}", file=sys.stderr)
        return 2

    worst = max((abs(r.f0 - r.oracle_p0) for r in table), default=0.0)
    print(f"{table.experiment}: {len(table)} rows, max |f0 - oracle| = {worst:.4f}",
          file=sys.stderr)
    return 0
