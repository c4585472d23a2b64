"""Lateral and directed arc-path analysis of directed networks."""

from .errors import (ConfigError, FitError, LateralNetError, ParseError, ResourceLimitError,
                     UndefinedStatistic, ValidationError)
from .network import DirectedNetwork, UndirectedNetwork, parse_edge_list, random_er

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "FitError", "LateralNetError", "ParseError", "ResourceLimitError",
    "UndefinedStatistic", "ValidationError", "DirectedNetwork", "UndirectedNetwork",
    "parse_edge_list", "random_er", "__version__",
]
