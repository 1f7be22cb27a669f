"""Quiver mutation, oriented exchange graphs, and maximal green sequences."""

from greenseq.quiver import (
    ExchangeMatrix,
    IceQuiver,
    SignIncoherentError,
    VertexColor,
    coframed,
    framed,
    opposite,
)

__version__ = "0.1.0"

__all__ = [
    "ExchangeMatrix",
    "IceQuiver",
    "SignIncoherentError",
    "VertexColor",
    "coframed",
    "framed",
    "opposite",
    "__version__",
]
