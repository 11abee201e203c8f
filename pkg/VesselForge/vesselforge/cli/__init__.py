# -*- coding: utf-8 -*-
"""Command-line front end: ``vesselforge <command> [options]``."""

import logging
import sys
from typing import Optional, Sequence

from vesselforge.cli.basic_command import EXIT_FATAL, EXIT_OK, EXIT_PARTIAL, BasicCommand
from vesselforge.cli.command_manager import CommandManager
from vesselforge.cli.commands import (
    BenchmarkCommand,
    DeformCommand,
    EditCommand,
    FitCommand,
    MeshCommand,
    QualityCommand,
)


def create_manager(logger: Optional[logging.Logger] = None) -> CommandManager:
    manager = CommandManager(logger)
    for command in (FitCommand(), MeshCommand(), QualityCommand(), BenchmarkCommand(), DeformCommand(), EditCommand()):
        manager.register_command(command)
    return manager


def main(argv: Optional[Sequence[str]] = None) -> int:
    return create_manager().run(sys.argv[1:] if argv is None else argv)


__all__ = [
    "BasicCommand",
    "CommandManager",
    "EXIT_FATAL",
    "EXIT_OK",
    "EXIT_PARTIAL",
    "create_manager",
    "main",
]
