"""Exact tools for real rational maps with nonvanishing Jacobian determinant.

Modules:

* :mod:`rma.exactpoly`  sparse polynomials over Q, gcd and resultants
* :mod:`rma.ratfield`   reduced rational functions, maps and Jacobians
* :mod:`rma.fieldext`   annihilating polynomials and primitive elements
* :mod:`rma.realroots`  Sturm chains, root isolation, fiber counts
* :mod:`rma.pinchuk`    the Pinchuk map and its plane geometry
* :mod:`rma.reductions` degree lowering, Yagzhev and symmetric forms
* :mod:`rma.cli`        the ``rma`` command
"""

from .errors import (
    ConsistencyError, DomainError, InexactDivisionError, ResourceError, RmaError, StructuralError,
)
from .exactpoly import MPoly, UPoly, gcd, resultant
from .ratfield import RatFunc, RMap

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError", "DomainError", "InexactDivisionError", "MPoly", "RMap", "RatFunc",
    "ResourceError", "RmaError", "StructuralError", "UPoly", "gcd", "resultant",
]
