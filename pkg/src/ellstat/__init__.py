"""Exact statistics of elliptic curves over finite fields, checked against
Hecke-operator trace formulas."""
from .classnum import GroupSpec
from .kernels import IMPLEMENTATION
from .moments import moment_mt, moment_power
from .traceformula import trace_gamma_nm

__version__ = "0.1.0"

__all__ = ["GroupSpec", "IMPLEMENTATION", "moment_mt", "moment_power", "trace_gamma_nm"]
