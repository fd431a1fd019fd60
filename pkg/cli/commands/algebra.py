"""
verify-algebra: anticommutation relations, Klein factor algebra and the spiral probe
"""

import logging

from cli.config import config
from cli.schemas import RunConfig, SuiteReport
from cli.utils.helpers import emit_report, fail, guard, ok, status
from src.models.jw_transforms import (
    FermionFamily,
    JWVariant,
    spiral_quadraticity_probe,
    verify_car,
    verify_eta_relations,
)
from src.operators.star_graph import StarLayout

logger = logging.getLogger(__name__)


def run(cfg: RunConfig) -> int:
    guard(cfg.L, config.ALGEBRA_MAX_L, "L", cfg.force)
    tol = cfg.tolerance(config.RESIDUAL_TOL)

    family = FermionFamily.create(cfg.family, cfg.L)
    reports = {
        "car": verify_car(family, tol),
        "eta": verify_eta_relations(StarLayout(cfg.L, with_aux=True), tol),
    }
    if family.variant is JWVariant.SPIRAL:
        if cfg.L >= 2:
            reports["spiral_probe"] = spiral_quadraticity_probe(family.layout, tol)
        else:
            logger.info("spiral probe skipped at L=1: no bulk bonds")

    for name, report in reports.items():
        if report.ok:
            ok(f"{name}: {len(report.relations)} relation classes as expected")
        else:
            fail(f"{name}: unexpected outcome in {', '.join(report.failures())}")

    suite = SuiteReport(
        command="verify-algebra",
        leg_length=cfg.L,
        family=family.name,
        passed=all(r.ok for r in reports.values()),
        reports=reports,
    )
    emit_report(suite, cfg.out)
    status(f"📊 family={family.name} L={cfg.L} pass={suite.passed}")
    return 0 if suite.passed else 1
