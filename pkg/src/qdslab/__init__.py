"""Exact reduction complexes for affine Lie algebras at small rank.

Modules: scalars (Q and Q(k) arithmetic), liealg (finite root data and a
Chevalley basis), affine (affine weights, roots, Weyl group), qseries
(characters), modules (Verma, dual Verma, quotients), fock (semi-infinite
fermions), brst (the complex and its operators), homology (cohomology and
certification), checks (identity suites), runs and cli (front end).
"""
__version__ = "0.1.0"
