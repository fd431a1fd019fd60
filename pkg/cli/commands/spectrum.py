"""
spectrum: exact diagonalization of the XX or QF star Hamiltonian
"""

from cli.config import config
from cli.schemas import ComparisonReport, RunConfig, SpectrumReport
from cli.utils.helpers import emit_frame, emit_report, fail, guard, ok
from src.data.export import spectrum_frame, write_text
from src.models.free_fermion import many_body_spectrum, secular_roots
from src.models.hamiltonians import (
    QFParams,
    XXParams,
    build_qf_fermionic,
    build_qf_spin,
    build_xx_spin,
)
from src.models.jw_transforms import JWVariant
from src.solvers.exact_diag import spectra_match, spectrum_of


def _compare(cfg, reference, reference_name, target, multiplicity, tol) -> ComparisonReport:
    match = spectra_match(reference, target, multiplicity, tol)
    report = ComparisonReport(
        command="spectrum",
        leg_length=cfg.L,
        model=cfg.model,
        reference=reference_name,
        multiplicity=multiplicity,
        dim=len(target),
        tolerance=tol,
        max_dev=match.max_dev,
        ground_energy=target.min,
        passed=match.match,
    )
    if match.match:
        ok(f"{reference_name}: match x{multiplicity}, dev {match.max_dev:.3e}")
    else:
        fail(f"{reference_name}: mismatch x{multiplicity}, dev {match.max_dev:.3e}")
    return report


def run(cfg: RunConfig) -> int:
    tol = cfg.tolerance(config.TOL)
    checks = {}

    if cfg.model == "xx":
        params = XXParams(cfg.L, cfg.rho)
        with_aux = cfg.with_aux or cfg.check_doubling
        guard(3 * cfg.L + int(with_aux), config.MAX_QUBITS, "qubits", cfg.force)
        H = build_xx_spin(params, with_aux=cfg.with_aux)
        spectrum = spectrum_of(H)
        if cfg.check_doubling:
            bare = spectrum if not cfg.with_aux else spectrum_of(build_xx_spin(params))
            doubled = spectrum if cfg.with_aux else spectrum_of(build_xx_spin(params, with_aux=True))
            checks["doubling"] = _compare(cfg, bare, "xx without aux", doubled, 2, tol)
    else:
        params = QFParams(cfg.L, cfg.gamma, cfg.vertex_a, cfg.b)
        guard(3 * cfg.L + 1, config.MAX_QUBITS, "qubits", cfg.force)
        H = build_qf_spin(params)
        spectrum = spectrum_of(H)
        if cfg.check_doubling:
            bare = spectrum_of(build_qf_fermionic(params, JWVariant.SPIRAL))
            checks["doubling"] = _compare(cfg, bare, "spiral fermions without aux", spectrum, 2, tol)
        if params.is_particle_conserving and cfg.uniform_a and params.a[0].imag == 0:
            free = many_body_spectrum(secular_roots(cfg.L, params.a[0].real))
            checks["free_fermion"] = _compare(cfg, free, "secular roots", spectrum, 2, tol)

    if cfg.dump_operator:
        write_text(H.to_text(), cfg.dump_operator)

    if cfg.format == "json":
        emit_report(
            SpectrumReport(
                command="spectrum",
                leg_length=cfg.L,
                model=cfg.model,
                n_sites=H.n_sites,
                eigenvalues=spectrum.eigenvalues.tolist(),
                checks=checks,
            ),
            cfg.out,
        )
    else:
        emit_frame(spectrum_frame(spectrum), cfg.out)

    return 0 if all(c.passed for c in checks.values()) else 1
