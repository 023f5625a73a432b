"""Command-line entry point: ``python -m src.main <command> ...``.

Commands:

  solve         exact τ, ν, |A|, τ*, the two covers X, and every bound verdict
  verify-proof  packing → uncross → nesting forest → per-region checks
  sweep         generated instances over family × n × g, one summary row per cell
  gen           write a generated corpus (``.pdg`` files plus ``index.txt``)
  oracle        brute-force τ and ν compared against the solvers

Records go to stdout (or ``--out``) as an aligned table or as a JSON record
stream; logs go to stderr. Exit code 0 means every check passed, 1 that an
inequality failed or an instance errored, 2 a usage or parse error.
"""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from src.const import (
    DEFAULT_GUARD_CYCLES,
    DEFAULT_GUARD_N,
    DEFAULT_GUARD_NODES,
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    FAMILIES,
    FORMAT_RECORDS,
    FORMAT_TABLE,
    Guards,
)
from src.errors import Infeasible, PlanarFvsError, RetriesExhausted
from src.instances import CorpusEntry, GeneratorSpec, build_corpus, generate, write_corpus
from src.pdg import serialize_pdg
from src.pipeline import (
    exit_code,
    oracle_path,
    run_batch,
    solve_path,
    solve_spec,
    summarize_sweep,
    sweep_code,
    sweep_specs,
    verify_path,
)
from src.report import Record, format_record, render_table

_LOGGER = logging.getLogger("planar_fvs")


@dataclass(frozen=True)
class RunConfig:
    command: str
    paths: tuple[str, ...] = ()
    guard_n: int = DEFAULT_GUARD_N
    guard_nodes: int = DEFAULT_GUARD_NODES
    guard_cycles: int = DEFAULT_GUARD_CYCLES
    seed: int = 0
    output_format: str = FORMAT_TABLE
    out: str | None = None
    jobs: int = 1
    verbosity: int = 0  # -1 quiet, 0 default, 1 verbose
    # gen
    family: str | None = None
    n: int | None = None
    g: int | None = None
    count: int = 1
    metrics: bool = True
    # sweep
    families: tuple[str, ...] = ()
    n_range: tuple[int, ...] = ()
    g_range: tuple[int, ...] = ()
    per_cell: int = 1

    def guards(self) -> Guards:
        return Guards(self.guard_n, self.guard_nodes, self.guard_cycles)

    @property
    def log_level(self) -> str:
        return {-1: "warning", 0: "info", 1: "debug"}[self.verbosity]


def _configure_logging(level_name: str) -> None:
    level = getattr(logging, level_name.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _int_range(text: str) -> tuple[int, ...]:
    """``"6..20"`` (inclusive), ``"4,6,8"`` or a single integer. ``"9..6"`` is empty."""
    try:
        if ".." in text:
            lo, _, hi = text.partition("..")
            return tuple(range(int(lo), int(hi) + 1))
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer range: {text!r}") from None


def _families(text: str) -> tuple[str, ...]:
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    unknown = [name for name in names if name not in FAMILIES]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown family {unknown[0]!r}; choose from {FAMILIES}")
    return names


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--guard-n", type=int, default=DEFAULT_GUARD_N)
    common.add_argument("--guard-nodes", type=int, default=DEFAULT_GUARD_NODES)
    common.add_argument("--guard-cycles", type=int, default=DEFAULT_GUARD_CYCLES)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=(FORMAT_TABLE, FORMAT_RECORDS), default=FORMAT_TABLE)
    common.add_argument("--out", help="output file (a directory for gen)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    noise = common.add_mutually_exclusive_group()
    noise.add_argument("-v", "--verbose", action="store_true")
    noise.add_argument("-q", "--quiet", action="store_true")

    parser = argparse.ArgumentParser(
        prog="planar-fvs", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("solve", "solve .pdg instances exactly and check every bound"),
        ("verify-proof", "run the region accounting on .pdg instances"),
        ("oracle", "compare the solvers against brute force"),
    ):
        cmd = sub.add_parser(name, parents=[common], help=help_text)
        cmd.add_argument("paths", nargs="+", help=".pdg files or directories of them")

    gen = sub.add_parser("gen", parents=[common], help="write a generated corpus")
    gen.add_argument("--family", choices=FAMILIES, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--g", type=int, required=True)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--no-metrics", dest="metrics", action="store_false")

    sweep = sub.add_parser("sweep", parents=[common], help="summarize generated families")
    sweep.add_argument("--families", type=_families, default=FAMILIES)
    sweep.add_argument("--n-range", type=_int_range, default=tuple(range(6, 13)))
    sweep.add_argument("--g-range", type=_int_range, default=(4, 5, 6))
    sweep.add_argument("--per-cell", type=int, default=1)
    return parser


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        command=args.command,
        paths=tuple(getattr(args, "paths", ())),
        guard_n=args.guard_n,
        guard_nodes=args.guard_nodes,
        guard_cycles=args.guard_cycles,
        seed=args.seed,
        output_format=args.format,
        out=args.out,
        jobs=args.jobs,
        verbosity=1 if args.verbose else -1 if args.quiet else 0,
        family=getattr(args, "family", None),
        n=getattr(args, "n", None),
        g=getattr(args, "g", None),
        count=getattr(args, "count", 1),
        metrics=getattr(args, "metrics", True),
        families=tuple(getattr(args, "families", ())),
        n_range=tuple(getattr(args, "n_range", ())),
        g_range=tuple(getattr(args, "g_range", ())),
        per_cell=getattr(args, "per_cell", 1),
    )
    try:
        config.guards()
    except ValueError as err:
        parser.error(str(err))
    if config.jobs < 1 or config.count < 1 or config.per_cell < 1:
        parser.error("--jobs, --count and --per-cell must be positive")
    if config.command == "gen" and not config.out:
        parser.error("gen needs --out DIR")
    return config


def expand_paths(paths: Sequence[str]) -> list[str]:
    """Directories contribute their ``*.pdg`` files in name order."""
    expanded: list[str] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            expanded.extend(str(p) for p in sorted(path.glob("*.pdg")))
        else:
            expanded.append(raw)
    return expanded


def emit(records: Sequence[Record], config: RunConfig) -> None:
    if config.output_format == FORMAT_RECORDS:
        text = "".join(format_record(r) + "\n" for r in records)
    else:
        text = render_table(records)
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


async def _run_instances(config: RunConfig) -> int:
    worker = {"solve": solve_path, "verify-proof": verify_path, "oracle": oracle_path}[
        config.command
    ]
    guards = config.guards()
    paths = expand_paths(config.paths)
    outcomes = await run_batch(worker, [(p, guards) for p in paths], config.jobs)
    emit([r for o in outcomes for r in o.records], config)
    return exit_code(outcomes)


async def _run_sweep(config: RunConfig) -> int:
    specs = sweep_specs(
        config.families, config.n_range, config.g_range, config.per_cell, config.seed
    )
    guards = config.guards()
    outcomes = await run_batch(solve_spec, [(s, guards) for s in specs], config.jobs)
    rows = summarize_sweep(specs, outcomes)
    emit(rows, config)
    return sweep_code(rows)


def _run_gen(config: RunConfig) -> int:
    assert config.family is not None and config.n is not None and config.g is not None
    assert config.out is not None
    specs = [
        GeneratorSpec(config.family, config.n, config.g, config.seed + i)
        for i in range(config.count)
    ]
    try:
        if config.metrics:
            entries = build_corpus(specs, config.guards())
        else:
            entries = [
                CorpusEntry(s.entry_id, s, serialize_pdg(generate(s), s.entry_id)) for s in specs
            ]
    except (Infeasible, RetriesExhausted) as err:
        _LOGGER.error("Cannot generate %s: %s", config.family, err)
        return EXIT_USAGE
    except PlanarFvsError as err:
        _LOGGER.error("Generation failed: %s", err)
        return EXIT_CHECK_FAILED
    write_corpus(config.out, entries)
    return EXIT_OK


async def run(config: RunConfig) -> int:
    _configure_logging(config.log_level)
    _LOGGER.info(
        "Running %s (guards n=%d nodes=%d cycles=%d, jobs=%d)",
        config.command,
        config.guard_n,
        config.guard_nodes,
        config.guard_cycles,
        config.jobs,
    )
    if config.command == "gen":
        return _run_gen(config)
    if config.command == "sweep":
        return await _run_sweep(config)
    return await _run_instances(config)


def main(argv: Sequence[str] | None = None) -> int:
    return asyncio.run(run(parse_config(argv)))


if __name__ == "__main__":
    sys.exit(main())
