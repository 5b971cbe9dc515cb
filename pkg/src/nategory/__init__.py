"""Categories with negative-information arrows.

Norphisms are negative arrows between objects: evidence that excludes some
set of morphisms.  They do not compose with each other; a morphism acts on
a norphism from either side, and soundness of those actions (equivariance)
is what the law checkers verify.  Three concrete instances ship with the
library: canonical finite constructions, a terrain path planner whose
norphisms are length lower bounds (heuristics, certificates), and a
co-design feasibility engine whose norphisms are impossibility relations.
A finite dialectica category connects the abstraction to enrichment.
"""

from . import berg, codesign, dialectica, finite, registry
from ._backend import HAVE_NUMBA, default_backend
from .core import (
    CapabilityError,
    Counterexample,
    LawReport,
    LawScope,
    NategoryInstance,
    Nor,
    SignatureError,
    check_category_laws,
    check_equivariance,
    check_exactness,
    check_pn_properties,
    exclusion_set,
)

__version__ = "0.1.0"

__all__ = [
    "berg",
    "codesign",
    "dialectica",
    "finite",
    "registry",
    "HAVE_NUMBA",
    "default_backend",
    "CapabilityError",
    "Counterexample",
    "LawReport",
    "LawScope",
    "NategoryInstance",
    "Nor",
    "SignatureError",
    "check_category_laws",
    "check_equivariance",
    "check_exactness",
    "check_pn_properties",
    "exclusion_set",
    "__version__",
]
