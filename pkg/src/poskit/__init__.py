"""poskit: exact positivity structures for classical groups.

Subpackages:
  exactmat   exact rational matrices (determinants, minors, compounds)
  totpos     totally positive matrices and their parametrizations
  flags      flag triples, triple ratios, GW/BD positivity
  symplectic Lagrangians and the Maslov index
  liealg     restricted root data of sl / sp / so(p,q)
  thetapos   Theta-positive structures and the worked SO(2,3) / Sp(4) cones
  siegel     floating-point Siegel space and bounded-domain geometry
  cli        JSON batch front end (`poskit ...`)
"""

__version__ = "0.1.0"

from . import exactmat, flags, liealg, siegel, symplectic, thetapos, totpos

__all__ = [
    "__version__",
    "exactmat",
    "totpos",
    "flags",
    "symplectic",
    "liealg",
    "thetapos",
    "siegel",
]
