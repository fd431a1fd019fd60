"""
Console, guard and output helpers shared by the commands
"""

import sys
from typing import Optional

import pandas as pd
from pydantic import BaseModel

from src.data.export import frame_to_csv, write_text
from src.exceptions import SizeGuardError


def status(message: str) -> None:
    """Human-readable progress on stderr; stdout carries only data."""
    print(message, file=sys.stderr)


def banner(title: str) -> None:
    status("=" * 60)
    status(title)
    status("=" * 60)


def ok(message: str) -> None:
    status(f"✅ {message}")


def fail(message: str) -> None:
    status(f"❌ {message}")


def guard(value: int, limit: int, what: str, force: bool = False) -> None:
    if value > limit and not force:
        raise SizeGuardError(f"{what} = {value} exceeds the limit {limit} (use --force to override)")


def emit_report(report: BaseModel, out: Optional[str] = None) -> None:
    write_text(report.to_json() + "\n", out)


def emit_frame(df: pd.DataFrame, out: Optional[str] = None) -> None:
    write_text(frame_to_csv(df), out)
