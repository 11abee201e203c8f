# -*- coding: utf-8 -*-
from pathlib import Path
from typing import Optional
import logging

from vesselforge.centerline.basic_parser import PathLike
from vesselforge.centerline.fixture_parser import FixtureParser
from vesselforge.centerline.network import CenterlineNetwork
from vesselforge.centerline.swc_parser import SwcParser
from vesselforge.errors import CenterlineFormatError

PARSERS = (SwcParser, FixtureParser)


def load_centerline(path: PathLike, logger: Optional[logging.Logger] = None) -> CenterlineNetwork:
    """Read a centerline file or fixture directory, choosing the parser from the path."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"input not found: {path}")
    for parser_cls in PARSERS:
        parser = parser_cls(logger)
        if parser.accepts(path):
            return parser.load(path)
    raise CenterlineFormatError(f"unrecognised centerline format: {path}")


def save_centerline(
    net: CenterlineNetwork, path: PathLike, logger: Optional[logging.Logger] = None
) -> None:
    """Write swc when ``path`` ends in ``.swc``, a fixture directory otherwise."""
    path = Path(path)
    parser = SwcParser(logger) if path.suffix.lower() == ".swc" else FixtureParser(logger)
    parser.dump(net, path)
