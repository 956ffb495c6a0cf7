import logging
import sys
from typing import Any, Dict, List, NoReturn, Optional, Tuple

import click
import numpy as np
import yaml

from .core import CHECK_GROUPS, Config, RunConfig, VerificationError, load_config
from .core.suite import SuiteReport, VerificationSuite
from .geometry.invariant_engine import invariants_f
from .geometry.orbit_analysis import (
    SCAN_HEADER,
    OrbitAnalysisError,
    classify_orbit,
    j1_theta,
    little_algebra,
    orbit_vectors,
    scan_orbit_space,
)
from .geometry.projective_state import (
    StateError,
    eigenstate,
    octant_projection_batch,
    octant_projection_j1,
    theta_state,
)
from .geometry.realified_geometry import psd_classify
from .geometry.spin_rep import SpinRepError, build_rep
from .geometry.su2_coherent import CoherentStateError, identity_defect, j1_orbit_family
from .io.export import ExportError, ResultExporter
from .io.state_file import StateFileError, load_fock_state_file, load_state_file
from .weyl.fock import FockError, build_fock, glauber
from .weyl.moments import moment_table, robertson_check

"""
CLI interface for su2orbits.

This module provides a command-line interface for the verification suite, orbit-space scans,
orbit classification of stored states, octant projections, strata grids, Fock-space moment
tables and resolution-of-identity checks.

Usage:
    su2orbits [--config FILE] [--log-level LEVEL] [command] [options]

Commands:
    verify: Run the verification suite.
    scan: Write invariant rows for eigen seeds and random states.
    classify: Classify the orbit through a stored state.
    octant: Write spin-1 octant projections.
    psd: Write the (f0, f1) strata grid.
    moments: Print centered moment tables of a Fock state.
    identity: Check the resolution of identity by quadrature.
    version: Show the version of su2orbits.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
"""

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2

OCTANT_HEADER = ("absZ1", "absZ2", "u", "v")
PSD_HEADER = ("f0", "f1", "stratum", "rank")


def _fail(message: str, code: int = EXIT_USAGE) -> NoReturn:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _version() -> str:
    from su2orbits import __version__

    return __version__


def _run_config(config: Config, subcommand: str, **kwargs: Any) -> RunConfig:
    settings = kwargs.pop("settings", {})
    return RunConfig(
        subcommand=subcommand,
        version=_version(),
        tolerances=config.tolerances(),
        settings=settings,
        **kwargs,
    )


def _write_csv(run_config: RunConfig, out: str, header: Tuple[str, ...], rows: List[Any]) -> None:
    try:
        info = ResultExporter(run_config).write_csv(out, header, rows)
    except ExportError as e:
        _fail(str(e))
    click.echo(f"Wrote {info['rows']} rows to {info['path']} (sha256 {info['checksum']})")


def _emit_json(run_config: RunConfig, payload: Dict[str, Any], out: Optional[str]) -> None:
    exporter = ResultExporter(run_config)
    if out is None:
        click.echo(exporter.render_json(payload), nl=False)
        return
    try:
        info = exporter.write_json(out, payload)
    except ExportError as e:
        _fail(str(e))
    click.echo(f"Wrote {info['path']} (sha256 {info['checksum']})")


def _check_seed(seed: int) -> int:
    if not 0 <= seed < 2**64:
        _fail(f"--seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def _parse_orders(text: Optional[str]) -> Optional[Tuple[int, int, int]]:
    if text is None:
        return None
    try:
        orders = tuple(int(part) for part in text.split(","))
    except ValueError as err:
        raise click.BadParameter(f"expected three integers A,B,C, got {text!r}") from err
    if len(orders) != 3:
        raise click.BadParameter(f"expected three integers A,B,C, got {text!r}")
    return orders  # type: ignore[return-value]


def _print_report(report: SuiteReport) -> None:
    width = max([len(r.name) for r in report.results] + [5])
    click.echo(f"{'check':<{width}}  {'expected':>12}  {'observed':>12}  {'tolerance':>10}  status")
    for r in report.results:
        status = "PASS" if r.passed else "FAIL"
        click.echo(
            f"{r.name:<{width}}  {r.expected:>12}  {r.observed:>12.4g}  {r.tolerance:>10.3g}  "
            f"{status}"
        )
    failed = report.failures()
    click.echo(f"{len(report.results) - len(failed)} passed, {len(failed)} failed")


@click.group()
@click.option("--log-level", default=None, help="Set the logging level")
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="YAML file with tolerances and defaults",
)
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str], config_path: Optional[str]) -> None:
    """SU(2) orbit geometry, coherent states and orbit-space invariants."""
    try:
        config = load_config(config_path)
        if log_level is not None:
            config.log_level = log_level.upper()
            config.validate()
    except (FileNotFoundError, ValueError, yaml.YAMLError) as e:
        _fail(f"Invalid configuration: {e}")
    config.setup_logging()
    ctx.obj = config


@cli.command()
@click.option(
    "--only",
    multiple=True,
    type=click.Choice(CHECK_GROUPS),
    help="Run only this check group (repeatable)",
)
@click.pass_obj
def verify(config: Config, only: Tuple[str, ...]) -> None:
    """Run the verification suite; exit 1 if any check fails."""
    run_config = _run_config(config, "verify", seed=config.seed, settings={"only": list(only)})
    for line in run_config.header_lines():
        click.echo(line)
    try:
        report = VerificationSuite(config, only=only).run()
    except VerificationError as e:
        _fail(str(e))
    _print_report(report)
    if not report.passed:
        names = ", ".join(r.name for r in report.failures())
        click.echo(f"Failed checks: {names}", err=True)
        sys.exit(EXIT_FAILURE)


@cli.command()
@click.option("--j", "spin", required=True, help="Spin label, e.g. 1 or 1.5")
@click.option("--samples", type=int, default=None, help="Number of random states")
@click.option("--seed", type=int, default=None, help="Root seed")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Output CSV")
@click.option("--workers", type=int, default=None, help="Worker threads")
@click.option("--progress/--no-progress", default=False, help="Show a progress bar")
@click.pass_obj
def scan(
    config: Config,
    spin: str,
    samples: Optional[int],
    seed: Optional[int],
    out: str,
    workers: Optional[int],
    progress: bool,
) -> None:
    """Write f1..f8, orbit dimension and seed kind for eigen seeds and random states."""
    samples = config.samples if samples is None else samples
    seed = _check_seed(config.seed if seed is None else seed)
    workers = config.workers if workers is None else workers
    try:
        rep = build_rep(spin)
        rows = scan_orbit_space(
            rep, samples, seed, workers=workers, progress=progress, rank_tol=config.rank_tol
        )
    except (SpinRepError, OrbitAnalysisError) as e:
        _fail(str(e))
    run_config = _run_config(config, "scan", seed=seed, j=rep.j, samples=samples, out=out)
    _write_csv(run_config, out, SCAN_HEADER, [row.as_row() for row in rows])


@cli.command()
@click.option("--state", "state_path", required=True, help="State file (JSON)")
@click.pass_obj
def classify(config: Config, state_path: str) -> None:
    """Classify the orbit through a stored state and print it as JSON."""
    try:
        state = load_state_file(state_path)
    except StateFileError as e:
        _fail(str(e))
    rep = build_rep(state.j)
    report = classify_orbit(rep, state, config.rank_tol, config.f1_tol, config.flip_tol)
    algebra = little_algebra(rep, state, config.rank_tol)
    payload: Dict[str, Any] = {
        "report": report.to_dict(),
        "invariants": invariants_f(rep, state).to_dict(),
        "little_algebra": {
            "axis": None if algebra.axis is None else [float(a) for a in algebra.axis],
            "eigenvalue": algebra.eigenvalue,
            "well_conditioned": algebra.well_conditioned,
        },
    }
    if rep.two_j == 2:
        payload["theta"] = j1_theta(rep, state)
    run_config = _run_config(config, "classify", j=state.j, state_path=state_path)
    _emit_json(run_config, payload, None)


@cli.command()
@click.option(
    "--family", required=True, type=click.Choice(["s2", "rp2", "theta"]), help="Orbit family"
)
@click.option("--theta", type=float, default=float(np.pi / 8), help="Orbit label of |theta>")
@click.option("--grid", type=int, default=None, help="Grid points per family parameter")
@click.option("--samples", type=int, default=None, help="Haar samples for the theta family")
@click.option("--seed", type=int, default=None, help="Root seed for the theta family")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Output CSV")
@click.pass_obj
def octant(
    config: Config,
    family: str,
    theta: float,
    grid: Optional[int],
    samples: Optional[int],
    seed: Optional[int],
    out: str,
) -> None:
    """Write spin-1 octant projections (absZ1, absZ2, u, v) of an orbit family."""
    grid = config.grid if grid is None else grid
    if grid < 2:
        _fail(f"--grid must be at least 2, got {grid}")

    if family == "theta":
        samples = grid * grid if samples is None else samples
        seed = _check_seed(config.seed if seed is None else seed)
        try:
            rng = np.random.default_rng(seed)
            vectors = orbit_vectors(build_rep(1), theta_state(theta), samples, rng)
        except OrbitAnalysisError as e:
            _fail(str(e))
        rows: List[Any] = [tuple(point) for point in octant_projection_batch(vectors)]
        run_config = _run_config(
            config,
            "octant",
            seed=seed,
            j=1.0,
            samples=samples,
            out=out,
            settings={"family": family, "theta": theta},
        )
    else:
        alphas = np.linspace(0.0, np.pi / 2, grid)
        betas = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
        rows = [
            tuple(octant_projection_j1(j1_orbit_family(family, alpha, beta)))
            for alpha in alphas
            for beta in betas
        ]
        run_config = _run_config(
            config, "octant", j=1.0, out=out, settings={"family": family, "grid": grid}
        )
    _write_csv(run_config, out, OCTANT_HEADER, rows)


@cli.command()
@click.option("--grid", type=int, default=None, help="Grid points per axis")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="Output CSV")
@click.option("--f0-max", type=float, default=2.0, help="Upper end of the f0 axis")
@click.option("--f1-min", type=float, default=0.0, help="Lower end of the f1 axis")
@click.option("--f1-max", type=float, default=2.0, help="Upper end of the f1 axis")
@click.pass_obj
def psd(
    config: Config, grid: Optional[int], out: str, f0_max: float, f1_min: float, f1_max: float
) -> None:
    """Write the spin-1 stratum and P-matrix rank over an (f0, f1) grid."""
    grid = config.grid if grid is None else grid
    if grid < 2:
        _fail(f"--grid must be at least 2, got {grid}")
    if f0_max <= 0 or f1_max <= f1_min:
        _fail("Grid ranges must satisfy f0-max > 0 and f1-max > f1-min")
    rows = []
    for f0 in np.linspace(0.0, f0_max, grid):
        for f1 in np.linspace(f1_min, f1_max, grid):
            point = psd_classify(f0, f1)
            rows.append((f0, f1, point.stratum, point.rank))
    run_config = _run_config(
        config,
        "psd",
        out=out,
        settings={"grid": grid, "f0_max": f0_max, "f1_min": f1_min, "f1_max": f1_max},
    )
    _write_csv(run_config, out, PSD_HEADER, rows)


@cli.command()
@click.option("--ntrunc", type=int, default=None, help="Number of Fock levels")
@click.option("--hbar", type=float, default=None, help="Planck constant")
@click.option("--state", "state_path", default=None, help="Fock state file; vacuum by default")
@click.option("--max-order", type=int, default=4, help="Largest m + n")
@click.option("--out", default=None, type=click.Path(dir_okay=False), help="Output JSON")
@click.pass_obj
def moments(
    config: Config,
    ntrunc: Optional[int],
    hbar: Optional[float],
    state_path: Optional[str],
    max_order: int,
    out: Optional[str],
) -> None:
    """Print the centered moments M[m][n] and the Robertson record as JSON."""
    ntrunc = config.n_trunc if ntrunc is None else ntrunc
    hbar = config.hbar if hbar is None else hbar
    try:
        fock = build_fock(ntrunc, hbar)
        state = glauber(fock, 0.0) if state_path is None else load_fock_state_file(state_path, fock)
        table = moment_table(fock, state, max_order)
        record = robertson_check(fock, state)
    except (FockError, StateFileError) as e:
        _fail(str(e))
    payload = {"moments": table.to_dict(), "robertson": record.to_dict()}
    run_config = _run_config(
        config,
        "moments",
        state_path=state_path,
        out=out,
        settings={"n_trunc": ntrunc, "hbar": hbar, "max_order": max_order},
    )
    _emit_json(run_config, payload, out)


@cli.command()
@click.option("--j", "spin", required=True, help="Spin label, e.g. 1 or 1.5")
@click.option("--fiducial", default=None, help="Magnetic number m of the fiducial |j, m>")
@click.option("--orders", default=None, help="Quadrature orders A,B,C")
@click.pass_obj
def identity(config: Config, spin: str, fiducial: Optional[str], orders: Optional[str]) -> None:
    """Check the resolution of identity for the orbit of |j, m>."""
    parsed = _parse_orders(orders)
    try:
        rep = build_rep(spin)
        m = rep.j if fiducial is None else float(fiducial)
        state = eigenstate(rep, m)
        check = identity_defect(rep, state, *(parsed or (None, None, None)))
    except (SpinRepError, StateError, CoherentStateError, ValueError) as e:
        _fail(str(e))
    payload = {
        "fiducial_m": m,
        "defect": check.defect,
        "d_prime": check.d_prime,
        "quadrature_orders": list(check.quadrature_orders),
    }
    run_config = _run_config(config, "identity", j=rep.j, orders=list(check.quadrature_orders))
    _emit_json(run_config, payload, None)


@cli.command()
def version() -> None:
    """Show the version of su2orbits."""
    click.echo(f"su2orbits version {_version()}")


def main() -> None:
    """Main entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
