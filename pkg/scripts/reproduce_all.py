"""
Full reproduction run - every acceptance suite end to end
Writes CSV/JSON outputs to STARKONDO_OUTPUT_DIR
"""

import os
import sys
import time
from pathlib import Path

import numpy as np

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cli.config import config
from src.data.export import frame_to_csv, roots_frame, write_text
from src.models.free_fermion import (
    RootFamily,
    bdg_spectrum,
    dispersion_table,
    eigensolve_deviation,
    ground_energy,
    many_body_spectrum,
    secular_roots,
)
from src.models.hamiltonians import (
    QFParams,
    XXParams,
    build_kondo_compact,
    build_kondo_fermionic,
    build_qf_fermionic,
    build_qf_spin,
    build_xx_spin,
    kondo_channel_count,
    operator_equal,
)
from src.models.jw_transforms import (
    FermionFamily,
    spiral_quadraticity_probe,
    verify_car,
    verify_eta_relations,
)
from src.operators.star_graph import StarLayout
from src.solvers.exact_diag import spectra_match, spectrum_of

OUTPUT_DIR = Path(config.OUTPUT_DIR)


def check(label, passed, detail=""):
    print(f"{'✅' if passed else '❌'} {label} {detail}")
    return passed


def car_suite():
    """Anticommutation relations for every family, L = 1..4"""
    print("\n📊 CAR suite...")
    ok = True
    for variant in ("klein", "aux", "naive", "spiral"):
        for L in range(1, 5):
            report = verify_car(FermionFamily.create(variant, L))
            write_text(report.to_json() + "\n", OUTPUT_DIR / f"car_{variant}_L{L}.json")
            ok &= check(f"{variant:7s} L={L}", report.ok)
    return ok


def eta_suite():
    print("\n📊 Klein factor suite...")
    ok = True
    for L in range(1, 5):
        report = verify_eta_relations(StarLayout(L, with_aux=True))
        ok &= check(f"eta L={L}", report.ok)
    report = spiral_quadraticity_probe(StarLayout(2))
    write_text(report.to_json() + "\n", OUTPUT_DIR / "spiral_probe_L2.json")
    ok &= check("spiral probe L=2", report.ok)
    return ok


def kondo_suite():
    print("\n📊 Kondo identity...")
    ok = True
    for L in (1, 2, 3):
        for rho in (0.0, 0.5, 1.0, 0.5j):
            p = XXParams(L, rho)
            fermionic = build_kondo_fermionic(p)
            result = operator_equal(fermionic, build_xx_spin(p, with_aux=True), config.RESIDUAL_TOL)
            ok &= check(f"L={L} rho={rho}", result.equal, f"residual {result.max_residual:.1e}")
            if isinstance(rho, float):
                compact = operator_equal(build_kondo_compact(p), fermionic, config.RESIDUAL_TOL)
                ok &= check(f"L={L} rho={rho} spin-1 form", compact.equal)
    ok &= check("channel count j=1", kondo_channel_count(1) == 4)
    return ok


def qf_suite(rng):
    print("\n📊 Quadratic fermion identity and BdG...")
    ok = True
    for L in (1, 2, 3):
        for _ in range(5):
            p = QFParams(
                L,
                rng.normal(),
                tuple(rng.normal(size=3) + 1j * rng.normal(size=3)),
                tuple(rng.normal(size=3) + 1j * rng.normal(size=3)),
            )
            result = operator_equal(build_qf_fermionic(p), build_qf_spin(p), config.RESIDUAL_TOL)
            ok &= check(f"L={L} random draw", result.equal, f"residual {result.max_residual:.1e}")
            if L <= 2:
                match = spectra_match(bdg_spectrum(p), spectrum_of(build_qf_spin(p)), 2, config.TOL)
                ok &= check(f"L={L} BdG vs ED x2", match.match, f"dev {match.max_dev:.1e}")
    return ok


def doubling_suite():
    print("\n📊 Degeneracy doubling...")
    ok = True
    for L in (1, 2, 3):
        p = XXParams(L, 0.7)
        match = spectra_match(spectrum_of(build_xx_spin(p)), spectrum_of(build_xx_spin(p, with_aux=True)), 2)
        ok &= check(f"XX L={L}", match.match, f"dev {match.max_dev:.1e}")
    for L in (1, 2):
        p = QFParams(L, 0.3, (0.5, 0.4, 0.3), (0.2, 0.1, 0.3))
        match = spectra_match(spectrum_of(build_qf_fermionic(p, "spiral")), spectrum_of(build_qf_spin(p)), 2)
        ok &= check(f"QF L={L}", match.match, f"dev {match.max_dev:.1e}")
    return ok


def secular_suite():
    print("\n📊 Secular equations vs eig(A)...")
    ok = True
    start = time.time()
    for L in (1, 2, 5, 50, 150):
        for a in (0.0, 0.3, 1.0):
            modes = secular_roots(L, a)
            deviation = eigensolve_deviation(modes)
            ok &= check(f"L={L:3d} a={a}", deviation <= config.ROOT_TOL, f"dev {deviation:.1e}")
            write_text(frame_to_csv(roots_frame(modes)), OUTPUT_DIR / f"roots_L{L}_a{a}.csv")
    print(f"   {time.time() - start:.2f}s")

    modes = secular_roots(150, 1.0)
    write_text(frame_to_csv(dispersion_table(150, 1.0)), OUTPUT_DIR / "dispersion_L150_a1.csv")
    isolated = [modes.count_out_of_band(f) for f in RootFamily]
    ok &= check("one isolated root per +/- family", isolated == [1, 1, 0], str(isolated))
    ok &= check("families superimposed", modes.superposition_gap() < 0.05, f"gap {modes.superposition_gap():.3f}")
    return ok


def spectrum_suite():
    print("\n📊 Many-body spectrum vs ED...")
    ok = True
    for L in (1, 2, 3):
        modes = secular_roots(L, 0.8)
        free = many_body_spectrum(modes)
        ed = spectrum_of(build_qf_spin(QFParams.uniform(L, 0.8)))
        match = spectra_match(free, ed, 2)
        ok &= check(f"L={L}", match.match, f"dev {match.max_dev:.1e}")
        ok &= check(f"L={L} ground state", abs(free.min - ground_energy(modes)) <= 1e-12)
        write_text(frame_to_csv(free.to_frame("energy")), OUTPUT_DIR / f"many_body_L{L}_a0.8.csv")
    return ok


def main():
    print("=" * 60)
    print("STAR GRAPH KONDO - FULL REPRODUCTION")
    print("=" * 60)
    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(2024)

    results = {
        "car": car_suite(),
        "eta": eta_suite(),
        "kondo": kondo_suite(),
        "quadratic": qf_suite(rng),
        "doubling": doubling_suite(),
        "secular": secular_suite(),
        "spectrum": spectrum_suite(),
    }

    print("\n" + "=" * 60)
    for name, passed in results.items():
        print(f"{'✅' if passed else '❌'} {name}")
    print(f"Outputs in {OUTPUT_DIR}")
    print("=" * 60)
    return 0 if all(results.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
