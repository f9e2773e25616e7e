"""
CLI Module
Argument parsing and dispatch for the experiment subcommands
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from symplectic.errors import ConfigError, SymplecticError

from experiments import commands
from experiments.config import load_config
from experiments.logging_handler import set_level

logger = logging.getLogger("experiments")

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_CONFIG = 2

RUNNERS = {
    "isotropic": commands.run_isotropic,
    "psi": commands.run_psi,
    "table": commands.run_table,
    "jordan": commands.run_jordan,
    "example1": commands.run_example,
    "example2": commands.run_example,
}

# defaults applied before the config file for these subcommands
COMMAND_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "example1": {"system": "example1", "perturbation": "reference", "output_dir": "results/example1"},
    "example2": {"system": "example2", "perturbation": "reference", "output_dir": "results/example2"},
}


class _ConfigArgumentParser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; route that through ConfigError"""

    def error(self, message):
        raise ConfigError(message)


def list_commands():
    """Print available subcommands"""
    for line in commands.get_commands_list():
        print(line)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key=value run file")
    common.add_argument("--out", dest="output_dir", help="output directory")
    common.add_argument("--seed", type=int)
    common.add_argument("--tol", dest="integrator_tol", type=float, help="integrator rtol/atol")
    common.add_argument("--nmax", dest="n_max", type=int, help="averaging steps for S(n)")
    common.add_argument("--rank", type=int, help="perturbation rank k")
    common.add_argument("--scales", help="comma list, e.g. 1,0.1,0.01")
    common.add_argument("--perturbation", choices=("none", "random", "reference"))
    common.add_argument("--system", choices=("example1", "example2", "file"))
    common.add_argument("--system-file", dest="system_file")
    common.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING, ...")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = _ConfigArgumentParser(prog="experiments", description="Rank-k symplectic perturbation experiments")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ConfigArgumentParser)

    iso = sub.add_parser("isotropic", parents=[common], help="isotropic basis from a CSV matrix")
    iso.add_argument("--matrix", help="CSV file with a 'rows,cols' header")

    for name in ("psi", "table"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--epsilon", type=float)
        p.add_argument("--delta", type=float)
        p.add_argument("--a", type=float)
        p.add_argument("--b", type=float)

    jordan = sub.add_parser("jordan", parents=[common], help="Jordan structure predictions")
    jordan.add_argument("--structure", help='e.g. "2:2x1" or "1:2x2;3:1x1"')
    jordan.add_argument("--lambda", dest="lam", type=float)
    jordan.add_argument("--k", dest="jordan_k", type=int)
    jordan.add_argument("--trials", type=int)

    ex1 = sub.add_parser("example1", parents=[common], help="full reproduction, first test system")
    ex1.add_argument("--epsilon", type=float)
    ex1.add_argument("--delta", type=float)

    ex2 = sub.add_parser("example2", parents=[common], help="full reproduction, second test system")
    ex2.add_argument("--a", type=float)
    ex2.add_argument("--b", type=float)
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    skip = {"command", "config", "log_level"}
    return {key: value for key, value in vars(args).items() if key not in skip and value is not None}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one subcommand.

    Returns:
        0 on success, 1 on a numerical failure, 2 on invalid configuration
    """
    argv = sys.argv[1:] if argv is None else argv
    if not argv:
        list_commands()
        return EXIT_CONFIG

    try:
        args = build_parser().parse_args(argv)
        set_level(args.log_level)
        config = load_config(args.config, _overrides(args), COMMAND_DEFAULTS.get(args.command))
        logger.info(f"🚀 {args.command} (seed {config.seed}) -> {config.output_dir}")
        paths = RUNNERS[args.command](config)
    except ConfigError as e:
        logger.error(f"❌ Invalid configuration: {e.message}")
        return EXIT_CONFIG
    except SymplecticError as e:
        logger.error(f"❌ {e.code}: {e.message}")
        return EXIT_NUMERICAL

    logger.info(f"✅ {args.command} finished, {len(paths)} files written")
    return EXIT_OK
