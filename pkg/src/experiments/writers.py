"""CSV and metadata output for sweeps."""
import json
import os
import tempfile
from pathlib import Path
from typing import Any

import pandas as pd
from loguru import logger

from src.experiments.models import SweepParameter, SweepRow, SweepSpec
from src.experiments.service import periodicity_deviation

CSV_COLUMNS: tuple[str, ...] = (
    "param",
    "strategy",
    "mean_rs",
    "mean_signal_power",
    "mean_power_ratio",
    "infeasible_frac",
    "trials",
    "seed",
)

PAIRING_NOTE = (
    "Each trial draws one channel block from (master_seed, trial index) and "
    "reuses it for every parameter value and strategy."
)


def rows_to_frame(rows: list[SweepRow], master_seed: int) -> pd.DataFrame:
    """Sweep rows as a DataFrame with the CSV column names."""
    return pd.DataFrame(
        [
            (
                row.parameter_value,
                row.strategy_label,
                row.mean_r_s,
                row.mean_signal_power,
                row.mean_power_ratio,
                row.infeasible_fraction,
                row.trials,
                master_seed,
            )
            for row in rows
        ],
        columns=list(CSV_COLUMNS),
    )


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def sweep_metadata(
    spec: SweepSpec,
    rows: list[SweepRow],
    config_echo: dict[str, Any] | None = None,
) -> dict[str, Any]:
    """Sidecar document describing how a sweep was produced."""
    metadata: dict[str, Any] = {
        "spec": spec.model_dump(mode="json", by_alias=True),
        "pairing": PAIRING_NOTE,
        "config": config_echo or {},
        "stderr_r_s": [
            {"param": row.parameter_value, "strategy": row.strategy_label, "sem": row.stderr_r_s}
            for row in rows
        ],
    }
    if spec.swept_parameter == SweepParameter.PHI_A_FIXED:
        metadata["periodicity"] = {
            strategy.label: periodicity_deviation(rows, strategy.label) for strategy in spec.strategies
        }
    return metadata


def write_sweep(
    spec: SweepSpec,
    rows: list[SweepRow],
    out_dir: Path,
    config_echo: dict[str, Any] | None = None,
) -> tuple[Path, Path]:
    """
    Write ``<name>.csv`` and ``<name>.meta.json`` under ``out_dir``.

    Both files are written to a temporary file first and renamed into
    place, and the CSV is removed again if the metadata cannot be written,
    so a failed run never leaves a partial CSV behind. Output is a
    pure function of the rows and spec.

    Returns:
        (csv path, metadata path)

    Raises:
        RuntimeError: If either file cannot be written
    """
    csv_path = out_dir / f"{spec.name}.csv"
    meta_path = out_dir / f"{spec.name}.meta.json"
    try:
        csv_text = rows_to_frame(rows, spec.master_seed).to_csv(
            index=False, float_format="%.12g", lineterminator="\n"
        )
        meta_text = json.dumps(sweep_metadata(spec, rows, config_echo), indent=2, sort_keys=True) + "\n"
        _atomic_write(csv_path, csv_text)
        try:
            _atomic_write(meta_path, meta_text)
        except OSError:
            csv_path.unlink(missing_ok=True)
            raise
    except OSError as e:
        logger.error(f"Failed to write sweep {spec.name} to {out_dir}: {e}")
        raise RuntimeError(f"Failed to write sweep {spec.name}: {e}") from e

    logger.info(f"Wrote {len(rows)} rows to {csv_path}")
    return csv_path, meta_path


def write_json(path: Path, document: dict[str, Any]) -> Path:
    """
    Atomically write a JSON document (solve and oracle records).

    Raises:
        RuntimeError: If the file cannot be written
    """
    try:
        _atomic_write(path, json.dumps(document, indent=2, sort_keys=True, default=str) + "\n")
    except OSError as e:
        logger.error(f"Failed to write {path}: {e}")
        raise RuntimeError(f"Failed to write {path}: {e}") from e
    logger.info(f"Wrote {path}")
    return path
