"""
freefermion: secular roots, dispersion data and the many-body comparison against ED
"""

import logging

import numpy as np

from cli.config import config
from cli.schemas import ComparisonReport, RootsReport, RunConfig
from cli.utils.helpers import emit_frame, emit_report, fail, guard, ok, status
from src.data.export import roots_frame, spectrum_frame
from src.models.free_fermion import (
    RootFamily,
    bdg_spectrum,
    dispersion_table,
    eigensolve_deviation,
    ground_energy,
    many_body_spectrum,
    secular_roots,
)
from src.models.hamiltonians import QFParams, build_qf_spin
from src.solvers.exact_diag import spectra_match, spectrum_of

logger = logging.getLogger(__name__)


def roots(cfg: RunConfig) -> int:
    # eig(A) cross-check is a dense 3L x 3L eigensolve
    guard(cfg.L, config.ROOTS_MAX_L, "L", cfg.force)
    tol = cfg.tolerance(config.ROOT_TOL)
    modes = secular_roots(cfg.L, cfg.a)
    deviation = eigensolve_deviation(modes)
    symmetry = modes.symmetry_deviation()
    passed = deviation <= tol and symmetry <= tol

    if cfg.format == "json":
        emit_report(
            RootsReport(
                command="freefermion roots",
                leg_length=cfg.L,
                a=cfg.a,
                num_roots=len(modes.lambdas),
                out_of_band={f.value: modes.count_out_of_band(f) for f in RootFamily},
                eigensolve_deviation=deviation,
                symmetry_deviation=symmetry,
                trace=float(np.sum(modes.lambdas)),
                max_secular_residual=float(modes.residuals.max()),
                tolerance=tol,
                passed=passed,
            ),
            cfg.out,
        )
    else:
        emit_frame(roots_frame(modes), cfg.out)

    status(f"📊 {len(modes.lambdas)} roots, {int(modes.out_of_band.sum())} out of band")
    if passed:
        ok(f"secular roots agree with eig(A): dev {deviation:.3e}")
        return 0
    fail(f"secular roots vs eig(A): dev {deviation:.3e}, symmetry {symmetry:.3e}")
    return 1


def dispersion(cfg: RunConfig) -> int:
    table = dispersion_table(cfg.L, cfg.a)
    emit_frame(table, cfg.out)
    status(f"📊 {len(table)} rows for L={cfg.L}, a={cfg.a}")
    return 0


def compare(cfg: RunConfig) -> int:
    guard(cfg.L, config.COMPARE_MAX_L, "L", cfg.force)
    tol = cfg.tolerance(config.TOL)
    params = QFParams(cfg.L, cfg.gamma, cfg.vertex_a, cfg.b)

    if params.is_particle_conserving and cfg.uniform_a and params.a[0].imag == 0:
        modes = secular_roots(cfg.L, params.a[0].real)
        free = many_body_spectrum(modes)
        reference, expected_ground = "secular roots", ground_energy(modes)
    else:
        free = bdg_spectrum(params)
        reference, expected_ground = "bdg", free.min
        logger.info("using the BdG spectrum: gamma=%g b=%s", cfg.gamma, cfg.b)

    exact = spectrum_of(build_qf_spin(params))
    match = spectra_match(free, exact, multiplicity=2, tol=tol)
    ground_ok = abs(free.min - expected_ground) <= 1e-12
    passed = match.match and ground_ok

    if cfg.format == "json":
        emit_report(
            ComparisonReport(
                command="freefermion compare",
                leg_length=cfg.L,
                model="qf",
                reference=reference,
                multiplicity=2,
                dim=len(exact),
                tolerance=tol,
                max_dev=match.max_dev,
                ground_energy=expected_ground,
                passed=passed,
            ),
            cfg.out,
        )
    else:
        emit_frame(spectrum_frame(free, "energy"), cfg.out)

    if passed:
        ok(f"{reference} spectrum matches ED x2: dev {match.max_dev:.3e}")
        return 0
    fail(f"{reference} spectrum vs ED x2: dev {match.max_dev:.3e}, ground state ok={ground_ok}")
    return 1


ACTIONS = {"roots": roots, "dispersion": dispersion, "compare": compare}


def run(cfg: RunConfig) -> int:
    return ACTIONS[cfg.action](cfg)
