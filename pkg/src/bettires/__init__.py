"""Minimal graded free resolutions and Betti tables over a prime field.

The library computes reduced Gröbner bases of ideals and submodules,
iterated Schreyer resolutions with minimalization, Betti tables, Hilbert
series and scheme invariants, and re-derives a catalog of published
resolutions (scrolls, low-degree monomial curves, projected Veronese
surfaces, unions of linear spaces, ropes on a line) as exact-integer
checks runnable via ``bettires verify-paper``.
"""

from .errors import (
    AlgebraError,
    DimensionError,
    HomogeneityError,
    InternalLimitError,
    ParseError,
    RingMismatchError,
    RopeSpecError,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    colon,
    colon_poly,
    eliminate,
    intersect,
    minimal_generators,
    module_groebner,
    module_normal_form,
    saturate,
    toric_curve_ideal,
)
from .modules import GradedFreeModule, ModuleElement, RingMatrix, tensor, wedge_power
from .resolve import (
    BettiTable,
    FreeResolution,
    HilbertSeries,
    SchemeReport,
    betti_table,
    free_resolution,
    hilbert_function,
    hilbert_series,
    krull_dimension,
    minimal_free_resolution,
    minimalize,
    scheme_report,
    schreyer_syzygies,
)
from .ring import (
    GREVLEX,
    LEX,
    ElimBlockOrder,
    MonomialOrder,
    Polynomial,
    PrimeField,
    Ring,
    monomial_compare,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
