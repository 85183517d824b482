"""Congruences and min networks of finite inverse semigroups."""

from .catalog import CATALOG, build, emit, load, parse_cayley, parse_json
from .classifiers import ClassVerdict, classify, congruence_bundle
from .congruences import (
    Congruence,
    closure,
    enumerate_congruences,
    mu,
    quotient,
    rho_k,
    rho_t,
    sigma,
    tau,
)
from .errors import ISGError
from .network import MinNetworkReport, min_network, network_on_quotient
from .semigroup import FiniteInverseSemigroup, validate

__all__ = [
    "CATALOG",
    "ClassVerdict",
    "Congruence",
    "FiniteInverseSemigroup",
    "ISGError",
    "MinNetworkReport",
    "build",
    "classify",
    "closure",
    "congruence_bundle",
    "emit",
    "enumerate_congruences",
    "load",
    "min_network",
    "mu",
    "network_on_quotient",
    "parse_cayley",
    "parse_json",
    "quotient",
    "rho_k",
    "rho_t",
    "sigma",
    "tau",
    "validate",
]
