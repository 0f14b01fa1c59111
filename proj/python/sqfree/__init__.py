"""Exact counting of square-free integers up to 10^36."""

from ._sqfree import (
    approx,
    count,
    golden,
    max_exponent,
    mertens,
    mobius,
    parameters,
)

__all__ = [
    "approx",
    "count",
    "golden",
    "max_exponent",
    "mertens",
    "mobius",
    "parameters",
]
