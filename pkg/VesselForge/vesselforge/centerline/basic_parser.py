# -*- coding: utf-8 -*-
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional, Union

from vesselforge.centerline.network import CenterlineNetwork
from vesselforge.utils.logger import get_logger

PathLike = Union[str, Path]


class BasicCenterlineParser(ABC):
    """Base class of centerline file readers and writers.

    Attributes
    ----------
    name : str
        Format name used on the command line.
    logger : logging.Logger
        Logger instance.
    """

    name: str = ""

    def __init__(self, logger: Optional[logging.Logger] = None) -> None:
        self.logger = logger or get_logger("centerline")

    @abstractmethod
    def accepts(self, path: Path) -> bool:
        """Whether ``path`` looks like this format."""
        raise NotImplementedError

    @abstractmethod
    def load(self, path: PathLike) -> CenterlineNetwork:
        """Read a network from ``path``.

        Parameters
        ----------
        path : str or Path
            Input file or directory.

        Returns
        -------
        CenterlineNetwork
            The validated network.
        """
        raise NotImplementedError

    @abstractmethod
    def dump(self, net: CenterlineNetwork, path: PathLike) -> None:
        """Write ``net`` to ``path``."""
        raise NotImplementedError
