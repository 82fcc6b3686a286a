"""Command-line entry point: spectrum, optimize, sweep, postselect and targets."""
import logging
import os
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import List, Optional

import numpy as np
import pandas as pd
import typer
from rich.console import Console
from rich.table import Table

from scripts.cli.persistence import RunManifest, source_timestamp, write_table, write_yaml
from scripts.config.env_config import DATA_DIR, log_dir
from scripts.config.run_config import RunConfig, load_run_config, parse_run_config
from scripts.errors import ConfigError, PhysicsError
from scripts.metrics import make_target, r_squared, spectrum_summary
from scripts.optimization import SWEEP_PARAMETERS, best_of_restarts, point_seeds, refine_coefficients, sweep
from scripts.optimization.accuracy import coefficient_pairs, mode_template
from scripts.pump_shaping import pump_intensity_profile
from scripts.schmidt import joint_radial_distribution, postselection_analysis, schmidt_spectrum

app = typer.Typer(add_completion=False, help="OAM Schmidt spectrum simulation and pump-shape design for type-I SPDC.")

CONFIG_EXIT = 2
PHYSICS_EXIT = 3
PROFILE_POINTS = 201

ConfigOption = typer.Option(..., "--config", "-c", help="YAML run configuration.")
OutOption = typer.Option(None, "--out", "-o", help="Output directory (default data/results/<command>).")
SeedOption = typer.Option(None, "--seed", help="Master seed, overrides swarm.seed.")
TierOption = typer.Option(None, "--grid-tier", help="Grid tier: coarse or fine.")


def setup_logging(command: str) -> None:
    os.makedirs(log_dir(), exist_ok=True)
    logging.basicConfig(
        filename=os.path.join(log_dir(), f"{command}.log"),
        level=logging.INFO,
        format='%(asctime)s - %(levelname)s - %(message)s',
        force=True,
    )


@contextmanager
def command_errors(command: str):
    """Map library errors to exit codes: 2 for configuration, 3 for physics."""
    try:
        yield
    except ConfigError as e:
        logging.error(f"{command}: configuration error: {e}")
        typer.echo(f"Configuration error: {e}", err=True)
        raise typer.Exit(CONFIG_EXIT)
    except PhysicsError as e:
        logging.error(f"{command}: {type(e).__name__}: {e}")
        typer.echo(f"{type(e).__name__}: {e}", err=True)
        raise typer.Exit(PHYSICS_EXIT)


def _out_dir(out: Optional[str], command: str) -> str:
    path = out or os.path.join(DATA_DIR, "results", command)
    os.makedirs(path, exist_ok=True)
    return path


def _check_tier(tier: Optional[str]) -> Optional[str]:
    if tier is not None and tier not in ("coarse", "fine"):
        raise ConfigError(f"unknown grid tier '{tier}'; choose from ['coarse', 'fine']", key="--grid-tier")
    return tier


def _parse_floats(text: str, key: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got '{text}'", key=key)


def _print_summary(title: str, rows: dict) -> None:
    table = Table(title=title)
    table.add_column("quantity")
    table.add_column("value", justify="right")
    for key, value in rows.items():
        table.add_row(key, f"{value:.6g}" if isinstance(value, float) else str(value))
    Console().print(table)


def _finish(command: str, config: RunConfig, out_dir: str, outputs: List[str], seed: Optional[int] = None,
            source: Optional[str] = None) -> None:
    manifest = RunManifest(command=command, config=config.model_dump(mode="json"), seed=seed,
                           outputs=[os.path.basename(p) for p in outputs], timestamp=source_timestamp(source))
    manifest.write(out_dir)
    finished = datetime.now(timezone.utc).isoformat(timespec="seconds")
    logging.info(f"{command}: wrote {len(outputs)} files and manifest to {out_dir} at {finished}")


@app.command("spectrum")
def cmd_spectrum(config: str = ConfigOption, out: Optional[str] = OutOption, seed: Optional[int] = SeedOption,
                 grid_tier: Optional[str] = TierOption):
    """Compute the Schmidt spectrum of the configured pump and report E_f, K_a and R^2."""
    setup_logging("spectrum")
    with command_errors("spectrum"):
        run = load_run_config(config, {"grids.tier": _check_tier(grid_tier), "swarm.seed": seed})
        out_dir = _out_dir(out, "spectrum")
        crystal = run.crystal_config()
        pump = run.pump_config()
        spectrum = schmidt_spectrum(pump, crystal, run.half_window, run.report_grids())
        summary = spectrum_summary(spectrum)
        target = run.target_spectrum()
        if target is not None:
            summary["r_squared_percent"] = r_squared(target, spectrum)

        radii = np.linspace(0.0, 3.0 * pump.waist * np.sqrt(pump.n_modes), PROFILE_POINTS)
        profile = pd.DataFrame({"r_um": radii * 1e6, "intensity": pump_intensity_profile(pump, radii)})
        outputs = [
            write_table(spectrum.to_frame(), os.path.join(out_dir, "spectrum.csv")),
            write_table(profile, os.path.join(out_dir, "pump_profile.csv")),
            write_yaml({"metrics": summary, "grid": spectrum.grid_meta,
                        "coefficients": coefficient_pairs(pump.coefficients)},
                       os.path.join(out_dir, "summary.yaml")),
        ]
        _finish("spectrum", run, out_dir, outputs, source=config)
    _print_summary("Schmidt spectrum", summary)


@app.command("optimize")
def cmd_optimize(config: str = ConfigOption, out: Optional[str] = OutOption, seed: Optional[int] = SeedOption,
                 grid_tier: Optional[str] = TierOption,
                 skip_refine: bool = typer.Option(False, "--skip-refine", help="Report the swarm result as is.")):
    """Search pump coefficients that reproduce the configured target spectrum."""
    setup_logging("optimize")
    with command_errors("optimize"):
        run = load_run_config(config, {"grids.search_tier": _check_tier(grid_tier), "swarm.seed": seed})
        if run.target is None:
            raise ConfigError("optimize needs a target section", source=config, key="target")
        out_dir = _out_dir(out, "optimize")
        crystal = run.crystal_config()
        pump = run.pump_config()
        target = run.target_spectrum()
        initial = pump.coefficients if (run.pump.coefficients or run.pump.coefficients_table) else None
        swarm = run.swarm_config()
        result = best_of_restarts(target, run.mode_count, pump, crystal, swarm,
                                  point_seeds(swarm.seed, run.swarm.restarts), run.search_grids(),
                                  run.report_grids(), initial=initial)
        report = result.to_dict()
        coefficients = result.coefficients
        if run.refine.enabled and not skip_refine:
            coefficients = refine_coefficients(coefficients, target, pump, crystal, run.refine_schedule(),
                                               run.search_grids())
        final = schmidt_spectrum(mode_template(pump, run.mode_count).with_coefficients(coefficients), crystal,
                                 target.half_window, run.report_grids())
        accuracy = r_squared(target, final)
        report["refined"] = bool(run.refine.enabled and not skip_refine)
        report["final_coefficients"] = coefficient_pairs(coefficients)
        report["final_generation_accuracy_percent"] = accuracy
        report["metrics"] = spectrum_summary(final)

        history = pd.DataFrame({"iteration": np.arange(len(result.history)), "best_R2_percent": result.history})
        outputs = [
            write_yaml(report, os.path.join(out_dir, "result.yaml")),
            write_table(final.to_frame(), os.path.join(out_dir, "spectrum.csv")),
            write_table(target.to_frame(), os.path.join(out_dir, "target.csv")),
            write_table(history, os.path.join(out_dir, "history.csv")),
        ]
        _finish("optimize", run, out_dir, outputs, seed=swarm.seed, source=config)
    _print_summary("Optimization", {"G (%)": float(accuracy), "swarm G (%)": float(result.accuracy),
                                    "seed": result.seed})


@app.command("sweep")
def cmd_sweep(config: str = ConfigOption, out: Optional[str] = OutOption, seed: Optional[int] = SeedOption,
              grid_tier: Optional[str] = TierOption,
              parameter: Optional[str] = typer.Option(None, "--parameter", "-p", help="theta_p, N or L."),
              values: Optional[str] = typer.Option(None, "--values", "-v",
                                                   help="Comma-separated values (deg, modes or mm).")):
    """Generation accuracy as a function of theta_p, N or L."""
    setup_logging("sweep")
    with command_errors("sweep"):
        run = load_run_config(config, {"grids.search_tier": _check_tier(grid_tier), "swarm.seed": seed})
        if run.target is None:
            raise ConfigError("sweep needs a target section", source=config, key="target")
        parameter = parameter or run.sweep.parameter
        if parameter not in SWEEP_PARAMETERS:
            raise ConfigError(f"unknown sweep parameter '{parameter}'; choose from {list(SWEEP_PARAMETERS)}",
                              key="--parameter")
        points = _parse_floats(values, "--values") if values is not None else run.sweep.values
        if not points:
            raise ConfigError("no sweep values given", source=config, key="sweep.values")
        out_dir = _out_dir(out, "sweep")
        curve = sweep(parameter, points, run.target_spectrum(), run.pump_config(), run.crystal_config(),
                      run.mode_count, run.swarm_config(), restarts=run.swarm.restarts,
                      theta_candidates_deg=run.sweep.theta_candidates_deg, search_grids=run.search_grids(),
                      report_grids=run.report_grids())
        outputs = [write_table(curve, os.path.join(out_dir, "curve.csv"))]
        _finish("sweep", run, out_dir, outputs, seed=run.swarm.seed, source=config)
    typer.echo(curve.to_string(index=False))


@app.command("postselect")
def cmd_postselect(config: str = ConfigOption, out: Optional[str] = OutOption, seed: Optional[int] = SeedOption,
                   grid_tier: Optional[str] = TierOption,
                   ratios: Optional[str] = typer.Option(None, "--ratios", "-r", help="Comma-separated w_s/w_p.")):
    """Joint radial distributions and true vs p = 0 postselected spectra."""
    setup_logging("postselect")
    with command_errors("postselect"):
        run = load_run_config(config, {"grids.tier": _check_tier(grid_tier), "swarm.seed": seed})
        out_dir = _out_dir(out, "postselect")
        crystal = run.crystal_config()
        pump = run.pump_config()
        waist_ratios = _parse_floats(ratios, "--ratios") if ratios is not None else run.detection.waist_ratios
        grids = run.report_grids()
        outputs, rows = [], []
        for ratio in waist_ratios:
            joint = joint_radial_distribution(pump, crystal, ratio, run.detection.p_max, grids)
            analysis = postselection_analysis(pump, crystal, ratio * pump.waist, run.half_window, grids)
            outputs.append(write_table(joint.to_frame(), os.path.join(out_dir, f"joint_ws{ratio:g}.csv"), index=True))
            outputs.append(write_table(analysis.to_frame(), os.path.join(out_dir, f"spectra_ws{ratio:g}.csv")))
            rows.append({"waist_ratio": ratio, "postselected_fraction": analysis.fraction,
                         "share_00": float(joint.matrix[0, 0])})
        fractions = pd.DataFrame(rows)
        outputs.append(write_table(fractions, os.path.join(out_dir, "fractions.csv")))
        _finish("postselect", run, out_dir, outputs, source=config)
    typer.echo(fractions.to_string(index=False))


@app.command("targets")
def cmd_targets(shape: str = typer.Option("gaussian", "--shape", help="gaussian, triangular or rectangular."),
                width: int = typer.Option(20, "--width", help="Standard deviation or full width."),
                half_window: int = typer.Option(150, "--half-window", help="Window half-width D."),
                config: Optional[str] = typer.Option(None, "--config", "-c", help="Take the target from a config."),
                out: Optional[str] = typer.Option(None, "--out", "-o", help="Write target.csv here.")):
    """Print (and optionally save) a target spectrum."""
    setup_logging("targets")
    with command_errors("targets"):
        run = load_run_config(config) if config else parse_run_config(
            f"target: {{shape: {shape}, width: {width}, half_window: {half_window}}}", source="--shape/--width")
        if run.target is None:
            raise ConfigError("config has no target section", source=config, key="target")
        target = make_target(run.target.shape, run.target.width, run.target.half_window)
        frame = target.to_frame()
        if out:
            outputs = [write_table(frame, os.path.join(_out_dir(out, "targets"), "target.csv"))]
            _finish("targets", run, out, outputs, source=config)
    summary = spectrum_summary(target)
    _print_summary(f"{target.shape} target, width {target.width}", {
        "E_f (bits)": summary["entanglement_of_formation_bits"],
        "K_a": summary["schmidt_number"],
        "max S_l": float(target.values.max()),
    })
    typer.echo(frame[frame["S_l_target"] > 0].to_string(index=False))
