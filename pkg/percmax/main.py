"""Command-line entry point for percmax."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from percmax import __version__
from percmax.bounds import bounds_report, cuboid_construction, format_bounds_csv, slow_set, torus_slow_set
from percmax.config import RunConfig, Settings
from percmax.engine import CellSet, Topology, simulate
from percmax.formats import dumps, format_grid, oracle_document, read_grid, report_document, write_svg
from percmax.oracle import brute_force_max, brute_force_max_fixed_size
from percmax.models import Scheme
from percmax.recurrence import MemoTable, default_table, max_time, set_default_table
from percmax.schemes import find_scheme, perfect_set, realize_scheme, scheme_dims, scheme_time
from percmax.utils.exceptions import ConsistencyError, InvalidInputError, PercolationError

logger = logging.getLogger(__name__)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", "-j", type=int, default=argparse.SUPPRESS, help="worker processes")
    common.add_argument("--cache", type=Path, default=argparse.SUPPRESS, help="memo table CSV cache")
    common.add_argument("--verbose", "-v", action="count", default=argparse.SUPPRESS, help="more logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="percmax",
        description="Maximum percolation times of 2-neighbour bootstrap percolation.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", parents=[common], help="print M(k,l) and a scheme")
    solve.add_argument("k", type=int)
    solve.add_argument("l", type=int)

    construct = commands.add_parser("construct", parents=[common], help="write a slow initial set")
    construct.add_argument("dims", type=int, nargs="*", metavar="N", help="n, or k l for --perfect")
    mode = construct.add_mutually_exclusive_group(required=True)
    for name in ("perfect", "slow", "torus", "d3"):
        mode.add_argument(f"--{name}", dest="mode", action="store_const", const=name)
    mode.add_argument("--scheme", metavar="TEXT", help="realize a scheme given as 's0 t0 : m1 m2 ...'")
    construct.add_argument("--output", "-o", type=Path)

    sim = commands.add_parser("simulate", parents=[common], help="simulate a grid file")
    sim.add_argument("file", type=Path)
    sim.add_argument("--topology", choices=["box", "torus"])
    sim.add_argument("--render", type=Path, metavar="SVG")
    sim.add_argument("--trace", action="store_true")
    sim.add_argument("--output", "-o", type=Path)

    oracle = commands.add_parser("oracle", parents=[common], help="exhaustive maximum on a small box")
    oracle.add_argument("k", type=int)
    oracle.add_argument("l", type=int)
    oracle.add_argument("--size", type=int, help="only initial sets of this size")
    oracle.add_argument("--force", action="store_true", help="ignore the cell cap")
    oracle.add_argument("--output", "-o", type=Path)

    bounds = commands.add_parser("bounds", parents=[common], help="bounds sweep as CSV")
    bounds.add_argument("nmax", type=int)
    bounds.add_argument("--output", "-o", type=Path)

    table = commands.add_parser("table", parents=[common], help="build the memo table cache")
    table.add_argument("limit", type=int)
    table.add_argument("--output", "-o", type=Path)
    return parser


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        output.write_text(text, encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(f"Cannot write {output}: {str(e)}") from e
    logger.info("Wrote %s", output)


def _configure_logging(verbose: int, settings: Settings) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _load_cache(config: RunConfig) -> None:
    if config.cache_path is not None and config.cache_path.is_file():
        set_default_table(MemoTable.load(config.cache_path))


def cmd_solve(config: RunConfig) -> None:
    k, l = config.dims
    value = max_time(k, l)
    scheme = find_scheme(k, l)
    print(f"M({k},{l}) = {value}")
    print(f"scheme {scheme.to_text()}")


def cmd_construct(config: RunConfig, mode: str, scheme_text: Optional[str] = None) -> None:
    dims = config.dims
    if mode == "scheme":
        if dims:
            raise InvalidInputError("--scheme takes no dims")
        scheme = Scheme.from_text(scheme_text or "")
        if scheme.moves and min(scheme.s0, scheme.t0) == 1:
            raise InvalidInputError(f"Base ({scheme.s0},{scheme.t0}) cannot be followed by moves")
        cells = realize_scheme(scheme, check_prefixes=True)
        k, l = scheme_dims(scheme)
        topology, comment = Topology.box(k, l), f"scheme {scheme.to_text()}, time {scheme_time(scheme)}"
    elif mode == "perfect":
        if len(dims) not in (1, 2):
            raise InvalidInputError("--perfect takes n or k l")
        k, l = (dims[0], dims[0]) if len(dims) == 1 else dims
        cells = perfect_set(k, l)
        topology, comment = Topology.box(k, l), f"perfect set, M({k},{l}) = {max_time(k, l)}"
    else:
        if len(dims) != 1:
            raise InvalidInputError(f"--{mode} takes a single n")
        n = dims[0]
        if mode == "slow":
            cells, topology = slow_set(n, verify=True), Topology.box(n, n)
            comment = f"slow set for [{n}]^2"
        elif mode == "torus":
            cells, topology = torus_slow_set(n, verify=True), Topology.torus(n)
            comment = f"torus set, time at least M({n - 2},{n - 2}) = {max_time(n - 2, n - 2)}"
        else:
            construction = cuboid_construction(n)
            cells, topology = CellSet(construction.seeds), Topology.box(n, n, n)
            report = simulate(cells, topology)
            if not report.percolated:
                raise ConsistencyError(f"Cuboid construction for n={n} does not percolate")
            comment = f"cuboid set for [{n}]^3, time {report.total_time}"
    _emit(format_grid(cells, topology, comment), config.output_path)


def cmd_simulate(config: RunConfig) -> None:
    topology, cells = read_grid(config.input_path)
    if config.topology is not None and config.topology != topology.kind:
        if config.topology == "torus":
            if topology.d != 2 or topology.dims[0] != topology.dims[1]:
                raise InvalidInputError(f"A torus must be square, got {topology.dims}")
            topology = Topology.torus(topology.dims[0])
        else:
            topology = Topology.box(*topology.dims)
    report = simulate(cells, topology, trace=config.trace)
    if config.render_path is not None:
        write_svg(report, config.render_path, config.render_scale)
    _emit(dumps(report_document(report)), config.output_path)


def cmd_oracle(config: RunConfig, size: Optional[int], force: bool, cap: int) -> None:
    k, l = config.dims
    if size is None:
        result = brute_force_max(k, l, cap=cap, force=force, jobs=config.jobs)
    else:
        result = brute_force_max_fixed_size(k, l, size, jobs=config.jobs)
    witness = None
    if result.witnesses:
        witness = simulate(CellSet(result.witnesses[0]), Topology.box(k, l))
    _emit(dumps(oracle_document(result, witness)), config.output_path)


def cmd_bounds(config: RunConfig) -> None:
    nmax = config.dims[0]
    _emit(format_bounds_csv(bounds_report(nmax, jobs=config.jobs)), config.output_path)


def cmd_table(config: RunConfig) -> None:
    limit = config.dims[0]
    if limit < 1:
        raise InvalidInputError(f"Table limit must be positive, got {limit}")
    target = config.output_path or config.cache_path
    if target is None:
        raise InvalidInputError("table needs --output or a cache path (--cache or PERCMAX_CACHE)")
    table = default_table()
    table.ensure(limit, limit)
    table.save(target)
    print(f"Wrote M(k,l) for k,l <= {table.cols} to {target}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        Exit code: 0 on success, 2 for bad input, 3 for an internal consistency failure, 1 otherwise
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    settings = Settings.from_env()
    _configure_logging(getattr(args, "verbose", 0), settings)

    try:
        dims: List[int] = list(getattr(args, "dims", None) or [v for v in (
            getattr(args, "k", None), getattr(args, "l", None),
            getattr(args, "nmax", None), getattr(args, "limit", None),
        ) if v is not None])
        config = RunConfig(
            command=args.command,
            dims=dims,
            topology=getattr(args, "topology", None),
            input_path=getattr(args, "file", None),
            output_path=getattr(args, "output", None),
            jobs=getattr(args, "jobs", settings.jobs),
            render_path=getattr(args, "render", None),
            render_scale=settings.render_scale,
            trace=getattr(args, "trace", False),
            cache_path=getattr(args, "cache", settings.cache_path),
        )
    except ValueError as e:
        print(f"Error: Invalid input - {e}", file=sys.stderr)
        return 2

    try:
        config.validate_paths()
        _load_cache(config)
        if config.command == "solve":
            cmd_solve(config)
        elif config.command == "construct":
            cmd_construct(config, args.mode or "scheme", args.scheme)
        elif config.command == "simulate":
            cmd_simulate(config)
        elif config.command == "oracle":
            cmd_oracle(config, args.size, args.force, settings.oracle_cap)
        elif config.command == "bounds":
            cmd_bounds(config)
        else:
            cmd_table(config)
    except InvalidInputError as e:
        print(f"Error: Invalid input - {e}", file=sys.stderr)
        return 2
    except ConsistencyError as e:
        print(f"Error: Consistency check failed - {e}", file=sys.stderr)
        return 3
    except PercolationError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    """Main CLI entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
