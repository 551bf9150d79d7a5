"""Exact computations for split affine iquantum groups of classical type.

Modules: ``scalars`` (coefficients), ``weyl`` (extended affine Weyl groups),
``freealg`` (free algebras on E/F/K and on B), ``uq`` (relations, normal
forms, zero tests), ``braid`` (Lusztig and QSP braid actions), ``iqg``
(brackets, goodness, compatibility), ``qchar`` (q-characters), ``checks``
and ``cli`` (batch verification).
"""
from .weyl import RootDatum, WeylWord, root_datum
from .freealg import AlgElement, BAlgebra, UqAlgebra

__version__ = "0.1.0"

__all__ = ["RootDatum", "WeylWord", "root_datum", "AlgElement", "BAlgebra", "UqAlgebra", "__version__"]
