"""Exact finite substrate of GSp(4) Hida theory.

Submodules: ``roots`` (C2 root datum, Weyl group, degree tables),
``symplectic`` and ``bruhat`` (matrices, parahorics, Iwahori-Bruhat
certificates), ``flags`` and ``hecke`` (flag sets, contraction, Hecke
operators), ``weights`` and ``boundary`` (Kostant weights, boundary
summands, Hida rank), ``polygons`` (Hodge and Newton polygons) and
``cli``.
"""

__version__ = "0.1.0"
