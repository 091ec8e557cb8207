"""Paley-type graphs on products of distinct Pythagorean primes."""

__version__ = "0.1.0"

from .numtheory import PrimeSet, validate_primes  # noqa: E402
from .graphs import Graph, build_paley_type  # noqa: E402

__all__ = ["PrimeSet", "validate_primes", "Graph", "build_paley_type", "__version__"]
