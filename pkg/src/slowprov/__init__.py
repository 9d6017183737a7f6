"""slowprov: ordinal-indexed provability workbench.

Subpackages and modules:
  ordinal   Cantor normal form arithmetic below epsilon_0
  fgh       budgeted fast-growing hierarchy, slow provability functions l/r
  modal     GL/GLT/GL2 formulas, Kripke semantics, decision procedures, proofs
  itercalc  rewrite calculus for iterated provability operators
  oracles   brute-force references backing the test suites
  cli       command-line surface
"""

__version__ = "0.1.0"
