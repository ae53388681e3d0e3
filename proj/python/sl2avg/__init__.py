"""Radial-flow averaging operators on the modular quotient of SL(2,R).

Thin re-export of the compiled core: group coordinates, matrix
coefficients of the irreducible unitary representations, model-space
operators, quotient sampling, and the averaging-operator studies.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
