# -*- coding: utf-8 -*-
import logging
from typing import Dict, List, Optional, Type

from vesselforge.errors import ConfigError
from vesselforge.fitting.strategies.basic_strategy import BasicStrategy
from vesselforge.fitting.strategies.non_penalized import GNPAICStrategy, GNPStrategy
from vesselforge.fitting.strategies.penalized import GPAICStrategy, SRPAICStrategy
from vesselforge.fitting.types import FitConfig


class StrategyManager:
    """Registry of strategy classes by name.

    Attributes
    ----------
    strategies : Dict[str, Type[BasicStrategy]]
        Registered strategy classes.
    """

    def __init__(self) -> None:
        self.strategies: Dict[str, Type[BasicStrategy]] = {}

    def register_strategy(self, strategy: Type[BasicStrategy]) -> None:
        """Register a strategy class.

        Raises
        ------
        ValueError
            A strategy with the same name is already registered.
        """
        if not strategy.name:
            raise ValueError("strategy has no name")
        if strategy.name in self.strategies:
            raise ValueError(f"strategy {strategy.name} already registered")
        self.strategies[strategy.name] = strategy

    def get_strategy(
        self, name: str, config: FitConfig, logger: Optional[logging.Logger] = None
    ) -> BasicStrategy:
        key = getattr(name, "value", name)
        if key not in self.strategies:
            raise ConfigError(f"unknown strategy {key!r}, expected one of {', '.join(self.names())}")
        return self.strategies[key](config, logger)

    def names(self) -> List[str]:
        return list(self.strategies)


strategy_manager = StrategyManager()
for _strategy in (GNPStrategy, GNPAICStrategy, GPAICStrategy, SRPAICStrategy):
    strategy_manager.register_strategy(_strategy)
