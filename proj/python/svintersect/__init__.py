"""Exact intersection products of algebraic cycles in complex projective space.

The heavy lifting happens in the compiled extension ``svintersect._core``:
sparse polynomial arithmetic over exact rationals, Groebner bases, Hilbert
series, ruled joins, the Stueckrad-Vogel cutting loop, and the fixed/moving
classification of the intersection product. This package re-exports its
string-level surface.

Cycles are passed in the same text format the ``svintersect`` command-line
tool reads::

    ambient 2
    component coeff=1
    x1^3 - x0*x2^2

or with builder statements (``point [1,0,0]``, ``hypersurface x1^2 - x0*x2``,
``linear x1; x2``, ``full``). Points are written ``"[c0, c1, ...]"`` with
integer or rational coordinates.
"""

from svintersect._core import (
    bullet_json,
    cycle_degrees,
    epsilon,
    groebner_basis,
    hilbert_summary,
    join,
    multiplicity,
    polar_split,
    sv_masses,
    total_degree,
    version,
)

__version__ = version()

__all__ = [
    "bullet_json",
    "cycle_degrees",
    "epsilon",
    "groebner_basis",
    "hilbert_summary",
    "join",
    "multiplicity",
    "polar_split",
    "sv_masses",
    "total_degree",
    "version",
    "__version__",
]
