"""
Command-line front end for fdsr-secrecy.

Commands:
    solve           Optimise one seeded scenario and print the operating point
    sweep           Run the custom sweep described by the sweep_* config keys
    figures NAME    Run a figure preset (fig3 ... fig8b, reflection)
    oracle          Audit the analytic solver against the brute-force grid

Usage:
    uv run python -m src.cli solve --seed 7
    uv run python -m src.cli figures fig3 --trials 2000 --threads 8 --out output
    uv run python -m src.cli oracle --config run.cfg --scenarios 100

Exit codes:
    0   success (including infeasible scenarios)
    1   unexpected failure
    2   configuration error
    3   model violation (nonpositive SNR denominator)

Environment Variables:
    LOG_LEVEL       Log level (default: INFO)
    LOG_JSON        Enable JSON logging (default: false)
"""
import argparse
import sys
from pathlib import Path

from dotenv import load_dotenv
from loguru import logger
from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn, TimeRemainingColumn

from config.log_config import configure_logging
from config.run_config import RunConfig, load_run_config
from src.channel.sampler import sample_channel_set, trial_rng
from src.cli.reports import create_audit_table, create_solve_table, create_sweep_table, print_outputs
from src.experiments.models import SweepSpec
from src.experiments.presets import PRESET_NAMES, figure_preset
from src.experiments.service import run_sweep
from src.experiments.writers import write_json, write_sweep
from src.optimizer.service import AlternatingSolver
from src.oracle.grid_search import GridSearchSolver
from src.oracle.service import OracleAuditService
from src.snr_terms.errors import ModelViolationError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_MODEL_VIOLATION = 3

DEFAULT_OUT = Path("output")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subcommand per operation."""
    parser = argparse.ArgumentParser(
        prog="fdsr",
        description="Secrecy-throughput optimisation for full-duplex symbiotic radio",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # One scenario with the default link budget
  uv run python -m src.cli solve --seed 1

  # Reproduce the transmit-power sweep with 2000 paired trials on 8 processes
  uv run python -m src.cli figures fig3 --trials 2000 --threads 8 --out output

  # Custom sweep from a config file (sweep_parameter, sweep_values, ...)
  uv run python -m src.cli sweep --config sweep.cfg --out output

  # Spot-audit 50 scenarios against the brute-force grid
  uv run python -m src.cli oracle --scenarios 50 --out output
        """,
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="Flat key=value config file")
    common.add_argument("--seed", type=int, help="Master seed (unsigned 64-bit)")
    common.add_argument("--out", type=Path, help="Output directory")

    batch = argparse.ArgumentParser(add_help=False)
    batch.add_argument("--trials", type=int, help="Channel blocks per sweep point (default: 10000)")
    batch.add_argument("--threads", type=int, help="Worker processes (default: 1)")

    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("solve", parents=[common], help="Optimise one seeded scenario")
    commands.add_parser("sweep", parents=[common, batch], help="Run the configured custom sweep")
    figures = commands.add_parser("figures", parents=[common, batch], help="Run a figure preset")
    figures.add_argument("name", choices=PRESET_NAMES, help="Preset name")
    oracle = commands.add_parser("oracle", parents=[common], help="Audit analytic vs brute-force solves")
    oracle.add_argument("--scenarios", type=int, help="Scenarios to audit (default: 100)")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    return {
        "seed": args.seed,
        "out": args.out,
        "trials": getattr(args, "trials", None),
        "threads": getattr(args, "threads", None),
        "oracle_scenarios": getattr(args, "scenarios", None),
    }


def cmd_solve(cfg: RunConfig, console: Console) -> int:
    """Sample one channel block from the seed and print its optimum."""
    strategy = cfg.strategy()
    ch = sample_channel_set(cfg.channel_params(), trial_rng(cfg.seed, 0))
    solver = AlternatingSolver(delta=cfg.delta, max_iter=cfg.max_iter)
    solution = solver.solve(ch, cfg.system_params(), strategy)

    record = {
        "seed": cfg.seed,
        "strategy": strategy.label,
        "solution": solution.model_dump(mode="json"),
        "channel": ch.model_dump(mode="json"),
        "config": cfg.echo(),
    }
    console.print(create_solve_table(solution, strategy, cfg.seed))
    console.print_json(data=record)
    if cfg.out is not None:
        print_outputs(console, [write_json(cfg.out / f"solve_seed{cfg.seed}.json", record)])
    return EXIT_OK


def _run_specs(specs: list[SweepSpec], cfg: RunConfig, console: Console) -> int:
    out_dir = cfg.out or DEFAULT_OUT
    written: list[Path] = []
    try:
        for spec in specs:
            with Progress(
                SpinnerColumn(),
                TextColumn("[progress.description]{task.description}"),
                BarColumn(),
                TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
                TimeRemainingColumn(),
                console=console,
                transient=True,
            ) as progress:
                task_id = progress.add_task(f"[cyan]{spec.name}: {spec.trials} trials", total=spec.trials)
                rows = run_sweep(
                    spec,
                    workers=cfg.threads,
                    progress=lambda done: progress.update(task_id, completed=done),
                )
            written.extend(write_sweep(spec, rows, out_dir, config_echo=cfg.echo()))
            console.print(create_sweep_table(spec.name, rows))
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise

    print_outputs(console, written)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, console: Console) -> int:
    """Run the sweep described by the sweep_* keys."""
    return _run_specs([cfg.sweep_spec()], cfg, console)


def cmd_figures(name: str, cfg: RunConfig, console: Console) -> int:
    """Run every sweep of a figure preset with the configured link budget."""
    specs = [
        spec.model_copy(update={"delta": cfg.delta, "max_iter": cfg.max_iter})
        for spec in figure_preset(
            name,
            trials=cfg.trials,
            master_seed=cfg.seed,
            base_params=cfg.system_params(),
            channel_params=cfg.channel_params(),
        )
    ]
    return _run_specs(specs, cfg, console)


def cmd_oracle(cfg: RunConfig, console: Console) -> int:
    """Audit the analytic solver against the grid oracle on seeded scenarios."""
    strategy = cfg.strategy()
    service = OracleAuditService(
        analytic=AlternatingSolver(delta=cfg.delta, max_iter=cfg.max_iter),
        reference=GridSearchSolver(cfg.grid_spec()),
    )
    report = service.audit(
        params=cfg.system_params(),
        channel_params=cfg.channel_params(),
        strategy=strategy,
        n_scenarios=cfg.oracle_scenarios,
        master_seed=cfg.seed,
    )
    console.print(create_audit_table(report, strategy))
    if cfg.out is not None:
        document = {"strategy": strategy.label, "report": report.model_dump(mode="json"), "config": cfg.echo()}
        print_outputs(console, [write_json(cfg.out / f"oracle_seed{cfg.seed}.json", document)])
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """
    Main entry point.

    Returns:
        Exit code (0=success, 1=failure, 2=config error, 3=model violation)
    """
    load_dotenv()
    args = build_parser().parse_args(argv)
    configure_logging()
    console = Console()

    try:
        cfg = load_run_config(args.config, _overrides(args))
    except ValueError as e:
        console.print(f"[red]Configuration error:[/red]\n{e}")
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG

    logger.info(f"Running '{args.command}' with seed {cfg.seed}")
    try:
        match args.command:
            case "solve":
                return cmd_solve(cfg, console)
            case "sweep":
                return cmd_sweep(cfg, console)
            case "figures":
                return cmd_figures(args.name, cfg, console)
            case "oracle":
                return cmd_oracle(cfg, console)
    except ModelViolationError as e:
        logger.error(f"Model violation: {e}")
        return EXIT_MODEL_VIOLATION
    except ValueError as e:
        console.print(f"[red]Configuration error:[/red]\n{e}")
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except Exception as e:
        logger.opt(exception=e).error(f"Fatal error: {e}")
        return EXIT_FAILURE
    return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
