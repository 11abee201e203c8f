# -*- coding: utf-8 -*-
import argparse
import logging
import traceback
from typing import List, Optional, Sequence

from vesselforge import __version__
from vesselforge.cli.basic_command import EXIT_FATAL, BasicCommand, float_list, int_list, name_list
from vesselforge.config import RunConfig
from vesselforge.config.run_config import EXPORT_FORMATS
from vesselforge.errors import VesselForgeError
from vesselforge.fitting.types import Criterion, Strategy
from vesselforge.utils.logger import setup_logger


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with the fatal status."""

    def error(self, message: str) -> None:
        self.print_usage()
        self.exit(EXIT_FATAL, f"{self.prog}: error: {message}\n")


def shared_arguments() -> argparse.ArgumentParser:
    """Flags accepted by every subcommand; ``None`` means "keep the config value"."""
    parser = argparse.ArgumentParser(add_help=False)
    io = parser.add_argument_group("input and output")
    io.add_argument("--input", "-i", help="centerline file (.swc) or fixture directory")
    io.add_argument("--output", "-o", help="output directory")
    io.add_argument("--config", "-c", help="YAML configuration file")
    io.add_argument("--format", type=name_list, metavar="FMT[,FMT]",
                    help=f"export formats, any of {','.join(EXPORT_FORMATS)}")
    mesh = parser.add_argument_group("meshing")
    mesh.add_argument("--N", type=int, help="nodes per cross section")
    mesh.add_argument("--relax-iters", type=int, dest="relax_iters", help="furcation surface relaxation iterations")
    mesh.add_argument("--apex-radius", type=float, dest="apex_radius", help="apex smoothing radius (mm)")
    mesh.add_argument("--ogrid", type=float_list, metavar="A,B,G", help="O-grid boundary, intermediate and core fractions")
    mesh.add_argument("--layers", type=int_list, metavar="NA,NB", help="boundary and intermediate layer counts")
    fit = parser.add_argument_group("fitting")
    fit.add_argument("--density", type=float_list, metavar="D[,D]",
                     help="points per mm: input resampling, or the benchmark density grid")
    fit.add_argument("--strategy", choices=[s.value for s in Strategy], help="approximation strategy")
    fit.add_argument("--criterion", choices=[c.value for c in Criterion], help="smoothing parameter criterion")
    run = parser.add_argument_group("run")
    run.add_argument("--seed", type=int, help="random seed")
    run.add_argument("--jobs", "-j", type=int, help="worker processes, 0 for one per CPU")
    return parser


class CommandManager:
    """Registers subcommands, parses the command line and maps outcomes to exit codes.

    Attributes
    ----------
    commands : List[BasicCommand]
        Registered commands in registration order
    logger : logging.Logger
        Logger instance
    """

    def __init__(self, logger: Optional[logging.Logger] = None) -> None:
        self.commands: List[BasicCommand] = []
        self.logger = logger or setup_logger(logging.INFO)

    def get_command(self, name: str) -> Optional[BasicCommand]:
        for command in self.commands:
            if command.name == name:
                return command
        return None

    def register_command(self, command: BasicCommand) -> None:
        """Register a command.

        Raises
        ------
        ValueError
            If a command with the same name is already registered
        """
        if self.get_command(command.name) is not None:
            raise ValueError(f"command {command.name} is already registered")
        command.manager = self
        command.logger = self.logger
        self.commands.append(command)
        self.logger.debug("registered command: %s", command.name)

    def build_parser(self) -> argparse.ArgumentParser:
        parser = _Parser(
            prog="vesselforge",
            description="Vascular network models and structured hexahedral meshes from centerlines.",
        )
        parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
        subparsers.required = True
        shared = shared_arguments()
        for command in self.commands:
            sub = subparsers.add_parser(command.name, help=command.help, description=command.help, parents=[shared])
            command.add_arguments(sub)
        return parser

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """Parse ``argv`` and run the selected command.

        Returns 0 on success, 2 when some branches failed and 1 on a fatal
        error; usage errors also return 1.
        """
        parser = self.build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return int(e.code or 0)
        command = self.get_command(args.command)
        try:
            config = RunConfig(args.config, logger=self.logger)
            config.apply_overrides(command.overrides(args))
            status = command.run(args, config)
        except (VesselForgeError, OSError) as e:
            self.logger.error("%s failed: %s", command.name, e)
            return EXIT_FATAL
        except KeyboardInterrupt:
            self.logger.error("%s interrupted", command.name)
            return EXIT_FATAL
        except Exception as e:  # noqa: BLE001
            self.logger.error("%s failed with an internal error: %s\n%s", command.name, e, traceback.format_exc())
            return EXIT_FATAL
        self.logger.info("%s finished with exit status %d", command.name, status)
        return status
