"""Bimodal provability logics: formulas, tree-order Kripke models with an
auxiliary accessibility relation, Hilbert proofs, and bounded deciders."""
