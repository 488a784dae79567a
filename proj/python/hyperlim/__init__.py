"""Hypergraph limits at desk scale: exact homomorphism counts, step hypergraphons,
W-random sampling, hyperpartition cells and removal experiments."""

from ._hyperlim import *  # noqa: F401,F403
from ._hyperlim import __doc__  # noqa: F401
