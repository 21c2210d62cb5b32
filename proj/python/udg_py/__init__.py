"""Python bindings for the udg library."""

from ._udg import (
    BackendError,
    UnitGraph,
    VacuousError,
    chromatic_number,
    construct,
    is_k_colorable,
    is_mono_pair,
    key_property,
    minimize,
)

__all__ = [
    "BackendError",
    "UnitGraph",
    "VacuousError",
    "chromatic_number",
    "construct",
    "is_k_colorable",
    "is_mono_pair",
    "key_property",
    "minimize",
]
