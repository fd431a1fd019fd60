"""
Writers for spectra, root tables and operator dumps
"""

import io
import sys
from pathlib import Path
from typing import Optional, Union

import pandas as pd

from src.models.free_fermion import ModeSpectrum, eigensolve_deviations
from src.solvers.exact_diag import Spectrum

FLOAT_FORMAT = "%.17g"

PathLike = Union[str, Path]


def frame_to_csv(df: pd.DataFrame) -> str:
    buffer = io.StringIO()
    df.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def write_text(text: str, out: Optional[PathLike] = None) -> None:
    """Write to ``out`` (parent directories created) or to standard output."""
    if out is None or str(out) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def spectrum_frame(spectrum: Spectrum, value_name: str = "eigenvalue") -> pd.DataFrame:
    return spectrum.to_frame(value_name)


def roots_frame(modes: ModeSpectrum) -> pd.DataFrame:
    """Ascending roots with family label, out-of-band flag, secular residual and gap to eig(A)."""
    return pd.DataFrame(
        {
            "index": range(len(modes.lambdas)),
            "family": [f.value for f in modes.families],
            "lambda": modes.lambdas,
            "out_of_band": modes.out_of_band,
            "residual": modes.residuals,
            "eig_deviation": eigensolve_deviations(modes),
        }
    )
