from vesselforge.fitting.strategies.basic_strategy import BasicStrategy
from vesselforge.fitting.strategies.non_penalized import GNPAICStrategy, GNPStrategy
from vesselforge.fitting.strategies.penalized import GPAICStrategy, SRPAICStrategy
from vesselforge.fitting.strategies.strategy_manager import StrategyManager, strategy_manager

__all__ = [
    "BasicStrategy",
    "GNPStrategy",
    "GNPAICStrategy",
    "GPAICStrategy",
    "SRPAICStrategy",
    "StrategyManager",
    "strategy_manager",
]
