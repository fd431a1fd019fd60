"""
verify-kondo: Klein-fermion Kondo form against Id(0) x the XX star Hamiltonian
"""

from cli.config import config
from cli.schemas import KondoReport, RunConfig
from cli.utils.helpers import emit_report, fail, guard, ok
from src.data.export import write_text
from src.models.hamiltonians import (
    XXParams,
    build_kondo_compact,
    build_kondo_fermionic,
    build_xx_spin,
    operator_equal,
)


def run(cfg: RunConfig) -> int:
    guard(cfg.L, config.KONDO_MAX_L, "L", cfg.force)
    tol = cfg.tolerance(config.RESIDUAL_TOL)
    params = XXParams(cfg.L, cfg.rho)

    fermionic = build_kondo_fermionic(params)
    spin = build_xx_spin(params, with_aux=True)
    identity = operator_equal(fermionic, spin, tol)
    passed = identity.equal

    compact_residual = None
    if complex(cfg.rho).imag == 0:
        compact = operator_equal(build_kondo_compact(params), fermionic, tol)
        compact_residual = compact.max_residual
        passed = passed and compact.equal

    if cfg.dump_operator:
        write_text(fermionic.to_text(), cfg.dump_operator)

    report = KondoReport(
        command="verify-kondo",
        leg_length=cfg.L,
        rho_re=complex(cfg.rho).real,
        rho_im=complex(cfg.rho).imag,
        tolerance=tol,
        max_residual=identity.max_residual,
        compact_residual=compact_residual,
        num_terms=fermionic.num_terms,
        passed=passed,
    )
    emit_report(report, cfg.out)

    if passed:
        ok(f"Kondo identity holds at L={cfg.L}, rho={cfg.rho}: residual {identity.max_residual:.3e}")
        return 0
    fail(f"Kondo identity broken at L={cfg.L}, rho={cfg.rho}: residual {identity.max_residual:.3e}")
    return 1
