"""Exact K-stability tests for log Fano threefold pairs with reducible boundary."""
from .arith import Rat, rat, fmt
from .geom import (ConfigurationError, PreconditionError, NumericalClass, CurveFunctional,
                   Threefold, LogPair, is_log_fano, nef_value)
from .zariski import decompose, decompose_ray, volume
from .kstab import beta_prime, divisorial_verdict, product_rule, Factor
from .az import S_W, delta_Z_bound, polystable_verdict

__version__ = "0.1.0"

__all__ = ["Rat", "rat", "fmt", "ConfigurationError", "PreconditionError", "NumericalClass", "CurveFunctional",
           "Threefold", "LogPair", "is_log_fano", "nef_value", "decompose", "decompose_ray", "volume",
           "beta_prime", "divisorial_verdict", "product_rule", "Factor", "S_W", "delta_Z_bound",
           "polystable_verdict"]
