"""Bounded decision procedures for the three systems.

gl_decide enumerates tree-shaped countermodel candidates up to the small
model bound (depth by modal depth, branching by the count of modal
subformulas) and certifies validity by exhaustion. glt_decide and
gl2_decide run proof search first, then walk model candidates in a fixed
lexicographic order, so the countermodel reported is always the least one
under that order. Past both bounds the honest answer is Inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from ..oracles import enumerate_a_sound_extensions, enumerate_tree_frames
from .formula import (
    Box,
    Diamond,
    Formula,
    modal_depth,
    subformulas,
    uses_triangle,
    variables_of,
)
from .kripke import (
    GL,
    GL2,
    GLT,
    KripkeModel,
    SemanticsMismatch,
    eval_formula,
    first_failing_world,
)
from .prover import prove


@dataclass(frozen=True)
class ValidOnAllEnumerated:
    models_checked: int


@dataclass(frozen=True)
class Theorem:
    evidence: object


@dataclass(frozen=True)
class Countermodel:
    model: KripkeModel
    world: str


@dataclass(frozen=True)
class Inconclusive:
    max_model_size: int
    max_proof_depth: int


DecisionOutcome = Theorem | Countermodel | Inconclusive


# --- tree shape enumeration for the GL bound --------------------------------

def _shape_size(s) -> int:
    return 1 + sum(_shape_size(c) for c in s)


def _shape_key(s):
    return (_shape_size(s), repr(s))


def _shapes_to_depth(depth: int, branch: int, cap: int):
    """All unordered tree shapes of depth <= depth, branching <= branch.

    Returns (shapes sorted by size then structure, truncated flag). Level
    d is built from level d-1 and always contains it, so the final level
    alone covers every admissible shape.
    """
    level = [()]
    truncated = False
    for _ in range(depth):
        seen = set(level)
        for k in range(1, branch + 1):
            for combo in combinations_with_replacement(level, k):
                seen.add(tuple(sorted(combo, key=_shape_key)))
                if len(seen) > cap:
                    truncated = True
                    break
            if truncated:
                break
        level = sorted(seen, key=_shape_key)
        if truncated:
            break
    return level, truncated


def _shape_model_parts(shape):
    names = []
    pairs = []

    def walk(s, ancestors):
        name = f"w{len(names)}"
        names.append(name)
        for anc in ancestors:
            pairs.append((anc, name))
        ancestors.append(name)
        for child in s:
            walk(child, ancestors)
        ancestors.pop()

    walk(shape, [])
    return tuple(names), tuple(pairs)


def _valuation(vars_sorted, names, mask):
    val = {}
    bit = 0
    for var in vars_sorted:
        worlds = []
        for w in names:
            if mask >> bit & 1:
                worlds.append(w)
            bit += 1
        val[var] = tuple(worlds)
    return val


def gl_decide(a: Formula, combo_guard: int = 200_000) -> DecisionOutcome:
    """Decide the box-only fragment by exhausting small tree models."""
    if uses_triangle(a):
        raise SemanticsMismatch("gl_decide covers the box-only fragment")
    depth = modal_depth(a)
    modal_heads = [f for f in subformulas(a) if isinstance(f, (Box, Diamond))]
    branch = max(1, len(modal_heads))
    vars_sorted = sorted(variables_of(a))
    shapes, truncated = _shapes_to_depth(depth, branch, cap=20_000)
    checked = 0
    completed_size = 0
    current_size = 0
    for shape in shapes:
        size = _shape_size(shape)
        if size != current_size:
            completed_size = current_size
            current_size = size
        names, prec = _shape_model_parts(shape)
        nbits = len(vars_sorted) * size
        if checked + (1 << nbits) > combo_guard:
            return Inconclusive(max_model_size=completed_size, max_proof_depth=0)
        for mask in range(1 << nbits):
            checked += 1
            m = KripkeModel(worlds=names, root=names[0], prec=prec,
                            precR=(), val=_valuation(vars_sorted, names, mask))
            if not eval_formula(m, names[0], a, GL):
                return Countermodel(m, names[0])
    if truncated:
        return Inconclusive(max_model_size=current_size, max_proof_depth=0)
    return Theorem(ValidOnAllEnumerated(checked))


def glt_decide(a: Formula, max_model_size: int = 5,
               max_proof_depth: int = 4) -> DecisionOutcome:
    """Proof search, then exhaustive A-sound countermodel search by size."""
    proof = prove(a, GLT, rounds=max_proof_depth)
    if proof is not None:
        return Theorem(proof)
    nvars = len(variables_of(a))
    for size in range(1, max_model_size + 1):
        for frame in enumerate_tree_frames(size):
            for m in enumerate_a_sound_extensions(frame, a, nvars):
                w = first_failing_world(m, a, GLT)
                if w is not None:
                    return Countermodel(m, w)
    return Inconclusive(max_model_size=max_model_size,
                        max_proof_depth=max_proof_depth)


def gl2_decide(a: Formula, max_model_size: int = 5,
               max_proof_depth: int = 4) -> DecisionOutcome:
    """Proof search in GL(tri)+K box+collapse, then two-step model search."""
    proof = prove(a, GL2, rounds=max_proof_depth)
    if proof is not None:
        return Theorem(proof)
    vars_sorted = sorted(variables_of(a))
    for size in range(1, max_model_size + 1):
        for frame in enumerate_tree_frames(size):
            names = frame.world_names()
            prec = tuple((names[x], names[y]) for x, y in frame.ancestor_pairs())
            nbits = len(vars_sorted) * size
            for mask in range(1 << nbits):
                m = KripkeModel(worlds=names, root=names[0], prec=prec,
                                precR=(), val=_valuation(vars_sorted, names, mask))
                w = first_failing_world(m, a, GL2)
                if w is not None:
                    return Countermodel(m, w)
    return Inconclusive(max_model_size=max_model_size,
                        max_proof_depth=max_proof_depth)
