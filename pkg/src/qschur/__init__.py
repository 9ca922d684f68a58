"""Exact computer algebra for q-Schur superalgebras and the quantum
supergroup U(gl_{m|n}).

Modules: ``qpoly`` (Laurent polynomials and quantum numbers), ``weyl``
(symmetric-group and matrix combinatorics), ``hecke`` (Hecke algebra and
tensor action), ``oracle`` (brute-force endomorphism model), ``schur``
(multiplication formulas), ``ugl`` (generator words and relations) and
``calibration`` (the frozen product convention).  ``suites`` holds the
verification sweeps and ``cli`` is the command-line frontend.
"""

from ._kernels import BACKEND
from .errors import QSSError
from .qpoly import LaurentPoly
from .weyl import Composition, Permutation, SuperMatrix

__all__ = ["BACKEND", "QSSError", "LaurentPoly", "Composition", "Permutation", "SuperMatrix"]
__version__ = "0.1.0"
