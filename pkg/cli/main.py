"""
Command-line entry point

    python -m cli verify-algebra --L 3 --family klein
    python -m cli verify-kondo --L 2 --rho 0.5
    python -m cli spectrum --model xx --L 2 --rho 0.7 --check-doubling
    python -m cli freefermion roots --L 150 --a 1
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from cli import commands
from cli.config import config
from cli.schemas import RunConfig
from cli.utils.helpers import fail
from src.exceptions import StarKondoError

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

DISPATCH = {
    "verify-algebra": commands.algebra.run,
    "verify-kondo": commands.kondo.run,
    "spectrum": commands.spectrum.run,
    "freefermion": commands.freefermion.run,
}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--L", type=int, default=1, help="leg length")
    common.add_argument("--family", choices=["klein", "aux", "naive", "spiral"], default="klein")
    common.add_argument("--model", choices=["xx", "qf"], default="xx")
    common.add_argument("--rho", type=complex, default=1 + 0j, help="vertex coupling, complex allowed (e.g. 0.5j)")
    common.add_argument("--a", type=float, default=1.0, help="uniform vertex hopping")
    common.add_argument("--a-vec", type=complex, nargs=3, default=None, metavar=("A1", "A2", "A3"))
    common.add_argument("--b", type=complex, nargs=3, default=[0j, 0j, 0j], metavar=("B1", "B2", "B3"))
    common.add_argument("--gamma", type=float, default=0.0, help="bulk pairing")
    common.add_argument("--with-aux", action="store_true")
    common.add_argument("--check-doubling", action="store_true")
    common.add_argument("--out", default=None, help="output path, stdout when omitted")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--force", action="store_true", help="lift the size guards")
    common.add_argument("--dump-operator", default=None, metavar="PATH")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="starkondo",
        description="Star-graph spin models, Klein-factor Jordan-Wigner and free-fermion checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify-algebra", parents=[common], help="CAR, eta algebra and spiral probe")
    sub.add_parser("verify-kondo", parents=[common], help="Kondo form vs XX star Hamiltonian")
    sub.add_parser("spectrum", parents=[common], help="exact diagonalization spectrum")
    ff = sub.add_parser("freefermion", parents=[common], help="secular equations and comparisons")
    ff.add_argument("action", choices=["roots", "dispersion", "compare"])
    return parser


def _configure_logging() -> None:
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL, logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging()

    try:
        cfg = RunConfig(**vars(args))
    except ValidationError as e:
        fail(f"invalid arguments: {e.errors()[0]['msg']}")
        return EXIT_USAGE

    try:
        return DISPATCH[cfg.command](cfg)
    except (StarKondoError, ValueError) as e:
        fail(f"{type(e).__name__}: {e}")
        logger.debug("command %s failed", cfg.command, exc_info=True)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
