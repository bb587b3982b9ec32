"""Exact computations on graphs of hermitian matrices over finite fields.

Vertices are hermitian matrices over GF(q^2); two are adjacent when their
difference has rank one. The package covers the field arithmetic, exact
matrix algebra, hermitian varieties, clique structure, graph spectra,
homomorphism search and certified constructions on these graphs.
"""

__version__ = "0.1.0"

from .gf import GF, field

__all__ = ["GF", "field", "__version__"]
