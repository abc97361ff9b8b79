"""Exact-arithmetic verification of the finite computations attached to
configurations of 8 points on the projective line.

Submodules:

- ``f2geom``: the 64-element quadratic space of three hyperbolic planes,
  its transvections, orthogonal group, and subspace enumerations.
- ``weil``: the two 64x64 generator matrices on the group ring, character
  multiplicities, the 15-dimensional invariant space, and the signed
  vectors attached to totally singular subspaces.
- ``qseries``: exact eta-quotient expansions, their translation and
  inversion behaviour, and the weight/divisor bookkeeping of the product
  lift.
- ``lattices``: Gram matrices, Smith normal form, discriminant forms, the
  order-4 fixed-point-free isometry with its Gaussian hermitian structure,
  reflections, glue vectors, and box scans.
- ``tableaux``: pair tableaux, cross-ratio products, the dictionary onto
  totally singular subspaces, straightening, and exact relation discovery.
- ``checks`` / ``cli``: deterministic verification suites and the
  command-line front end.
"""

__version__ = "0.1.0"
