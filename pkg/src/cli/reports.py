"""Rich tables printed by the CLI commands."""
import math
from pathlib import Path

from rich import box
from rich.console import Console
from rich.table import Table

from src.experiments.models import SweepRow
from src.optimizer.models import Solution, Strategy
from src.oracle.models import OracleAuditReport


def _fmt(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.6g}"


def create_solve_table(solution: Solution, strategy: Strategy, seed: int) -> Table:
    """
    Create a table with the optimised operating point of one scenario.

    Args:
        solution: Solver output
        strategy: Strategy that was solved
        seed: Master seed of the scenario

    Returns:
        Rich Table
    """
    table = Table(title=f"Scenario seed {seed} ({strategy.label})", box=box.ROUNDED)
    table.add_column("Quantity", style="cyan", no_wrap=True)
    table.add_column("Value", style="magenta")

    status = "[green]yes[/green]" if solution.feasible else "[red]no[/red]"
    table.add_row("Feasible", status)
    table.add_row("Case", solution.case_label.value)
    table.add_row("m*", _fmt(solution.m_star))
    table.add_row("n*", _fmt(solution.n_star))
    table.add_row("φ*_A (rad)", _fmt(solution.phi_a_star))
    table.add_row("cos(φ*_A+φ₁)", f"{math.cos(solution.phi_a_star + solution.phi1):.15f}")
    table.add_row("", "")
    table.add_row("γ_P", _fmt(solution.gamma_p))
    table.add_row("γ_A", _fmt(solution.gamma_a))
    table.add_row("γ_E", _fmt(solution.gamma_e))
    table.add_row("R_S (bits/s/Hz)", f"[green]{solution.r_s:.6f}[/green]")
    table.add_row("", "")
    table.add_row("Iterations", str(solution.iterations))
    table.add_row("Objective trace", ", ".join(f"{x:.6f}" for x in solution.objective_trace) or "-")
    return table


def create_sweep_table(name: str, rows: list[SweepRow]) -> Table:
    """Create a table of averaged sweep points."""
    table = Table(title=f"Sweep {name}", box=box.ROUNDED)
    table.add_column("Value", style="cyan", justify="right")
    table.add_column("Strategy", style="cyan")
    table.add_column("mean R_S", style="magenta", justify="right")
    table.add_column("± SEM", justify="right")
    table.add_column("mean m*²", justify="right")
    table.add_column("ratio", justify="right")
    table.add_column("infeasible", justify="right")

    for row in rows:
        infeasible = f"{row.infeasible_fraction:.1%}"
        if row.infeasible_fraction > 0.0:
            infeasible = f"[yellow]{infeasible}[/yellow]"
        table.add_row(
            f"{row.parameter_value:.4g}",
            row.strategy_label,
            f"{row.mean_r_s:.4f}",
            f"{row.stderr_r_s:.4f}",
            f"{row.mean_signal_power:.4g}",
            f"{row.mean_power_ratio:.4f}",
            infeasible,
        )
    return table


def create_audit_table(report: OracleAuditReport, strategy: Strategy) -> Table:
    """Create a summary table of an analytic vs brute-force audit."""
    table = Table(title=f"Oracle audit ({strategy.label})", box=box.ROUNDED)
    table.add_column("Metric", style="cyan", no_wrap=True)
    table.add_column("Value", style="magenta")

    table.add_row("Scenarios", str(report.scenarios))
    table.add_row("Master seed", str(report.master_seed))
    table.add_row("max |Δr_s|", f"{report.max_abs_diff:.3e}")
    table.add_row("mean |Δr_s|", f"{report.mean_abs_diff:.3e}")
    style = "green" if report.disagreements == 0 else "red"
    table.add_row(f"Disagreements > {report.tolerance:g}", f"[{style}]{report.disagreements}[/{style}]")
    table.add_row("Feasibility disagreements", str(report.feasibility_disagreements))
    if report.offending_seeds:
        table.add_row("Offending seeds", ", ".join(report.offending_seeds))
    return table


def print_outputs(console: Console, paths: list[Path]) -> None:
    """List written files."""
    for path in paths:
        console.print(f"[dim]wrote[/dim] {path}")
