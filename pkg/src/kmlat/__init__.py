"""Exact tools for edge-transitive lattices on (q+1)-regular trees.

Modules:
  gf        - finite fields F_q and quadratic extensions, norm-one torus
  laurent   - exact Laurent polynomials in the uniformizer pi = t^-1
  serretree - the Bruhat-Tits tree for SL2(F_q((t^-1))), involution search
  groups    - finite subgroup machinery, recognition, subgroup tables
  kmaction  - symbolic root-letter action near the base edge, affine checks
  lattice   - edge-of-groups verification and the classification table
  cli       - the `kmlat` command
"""

__version__ = "0.1.0"
