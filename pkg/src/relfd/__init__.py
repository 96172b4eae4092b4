"""Relativistic and standard Fermi-Dirac integrals."""
from .errors import ConvergenceError, DomainError, RelFDError, UsageError
from .core import EvalResult, FdParams, Method, QClass, classify_q
from .config import Config, get_config, load_config, using_config

__version__ = "0.1.0"

__all__ = [
    "Config", "ConvergenceError", "DomainError", "EvalResult", "FdParams", "Method",
    "QClass", "RelFDError", "UsageError", "classify_q", "get_config", "load_config",
    "using_config",
]
