"""Kripke models on finite tree orders, model validation, and evaluation.

A model carries the strict tree order (used by `[.]`), an auxiliary strict
relation (used by `[]` in the two-relation reading), and a valuation. The
same structure serves three readings: the one-modality reading interprets
`[]` over the tree order itself; the two-relation reading interprets `[]`
over the auxiliary relation, subject to the five soundness conditions below;
the composed reading interprets `[]` over two-step reachability in the tree
order and ignores the auxiliary relation entirely.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .formula import (
    And,
    Bot,
    Box,
    Diamond,
    Formula,
    Iff,
    Implies,
    Nabla,
    Not,
    Or,
    Top,
    Triangle,
    Var,
    subformulas,
    uses_triangle,
    variables_of,
)


class ModelError(Exception):
    """Malformed model data: wrong shapes, unknown worlds, bad types."""


class SemanticsMismatch(Exception):
    """The model/formula pair does not meet the chosen reading's premises."""


GL = "GL"
GLT = "GLT"
GL2 = "GL2"
SEMANTICS = (GL, GLT, GL2)


class KripkeModel:
    """Finite rooted model. `prec` and `precR` are strict relations given as
    pair collections; the valuation maps variable names to world collections.
    Everything is normalized to sorted tuples on construction."""

    __slots__ = ("worlds", "root", "prec", "precR", "val")

    def __init__(self, worlds, root, prec=(), precR=(), val=None):
        worlds = tuple(worlds)
        if not worlds:
            raise ModelError("a model needs at least one world")
        if len(set(worlds)) != len(worlds):
            raise ModelError("duplicate world names")
        for w in worlds:
            if not isinstance(w, str) or not w:
                raise ModelError(f"world names are nonempty strings, got {w!r}")
        wset = set(worlds)
        if root not in wset:
            raise ModelError(f"root {root!r} is not a world")
        prec = self._pairs(prec, wset, "prec")
        precR = self._pairs(precR, wset, "precR")
        norm_val = {}
        for var in sorted(val or {}):
            if not isinstance(var, str) or not var:
                raise ModelError(f"variable names are nonempty strings, got {var!r}")
            ws = tuple(sorted(set((val or {})[var])))
            for w in ws:
                if w not in wset:
                    raise ModelError(f"valuation of {var!r} names unknown world {w!r}")
            norm_val[var] = ws
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "precR", precR)
        object.__setattr__(self, "val", norm_val)

    @staticmethod
    def _pairs(rel, wset, label):
        out = set()
        for pair in rel:
            pair = tuple(pair)
            if len(pair) != 2:
                raise ModelError(f"{label} entries are pairs, got {pair!r}")
            a, b = pair
            if a not in wset or b not in wset:
                raise ModelError(f"{label} pair {pair!r} names unknown worlds")
            out.add((a, b))
        return tuple(sorted(out))

    def __setattr__(self, name, value):
        raise AttributeError("KripkeModel is immutable")

    def __eq__(self, other):
        if not isinstance(other, KripkeModel):
            return NotImplemented
        return (self.worlds == other.worlds and self.root == other.root
                and self.prec == other.prec and self.precR == other.precR
                and self.val == other.val)

    def __repr__(self):
        return (f"KripkeModel(worlds={self.worlds!r}, root={self.root!r}, "
                f"prec={self.prec!r}, precR={self.precR!r}, val={self.val!r})")

    def successors(self, w, rel) -> tuple:
        return tuple(b for a, b in rel if a == w)

    def prec2(self) -> tuple:
        """Two-step reachability in prec: a before c with something between."""
        out = set()
        for a, b in self.prec:
            for c, d in self.prec:
                if c == b:
                    out.add((a, d))
        return tuple(sorted(out))

    def holds(self, var, w) -> bool:
        return w in self.val.get(var, ())


# --- validation -------------------------------------------------------------

@dataclass(frozen=True)
class Ok:
    pass


@dataclass(frozen=True)
class Violation:
    condition: int
    detail: str


def validate_model(m: KripkeModel, a: Formula):
    """Check the five soundness conditions in order; first failure wins.

    1. the tree order is a strict order, the root sees every other world,
       and every non-root world has exactly one immediate predecessor;
    2. the auxiliary relation sits inside the tree order;
    3. prefixing a tree step to an auxiliary step stays auxiliary;
    4. appending a tree step to an auxiliary step stays auxiliary;
    5. every auxiliary pair has a witness at or below its target at which
       [.]B -> B holds for each subformula B of the formula under test.
    """
    ps = set(m.prec)
    for w in m.worlds:
        if (w, w) in ps:
            return Violation(1, f"{w} precedes itself")
    for a1, b1 in ps:
        for c, d in ps:
            if c == b1 and (a1, d) not in ps:
                return Violation(1, f"missing transitive pair ({a1}, {d})")
    for w in m.worlds:
        if w == m.root:
            continue
        if (m.root, w) not in ps:
            return Violation(1, f"root does not reach {w}")
        preds = [u for u in m.worlds if (u, w) in ps]
        immediate = [u for u in preds
                     if not any((u, v) in ps and (v, w) in ps for v in preds)]
        if len(immediate) != 1:
            return Violation(1, f"{w} has {len(immediate)} immediate predecessors")
    rs = set(m.precR)
    for pair in rs:
        if pair not in ps:
            return Violation(2, f"auxiliary pair {pair} outside the tree order")
    for x, y in ps:
        for c, d in rs:
            if c == y and (x, d) not in rs:
                return Violation(3, f"({x}, {d}) missing")
    for c, d in rs:
        for x, y in ps:
            if x == d and (c, y) not in rs:
                return Violation(4, f"({c}, {y}) missing")
    if rs:
        tri = _succ_map(m.worlds, m.prec)
        rows = _truth_rows(m, a, tri, _succ_map(m.worlds, m.precR))
        for x, y in sorted(rs):
            if not any(_reflexive_witness(rows, tri, c) for c in m.worlds
                       if (x, c) in rs and (c == y or (c, y) in ps)):
                return Violation(5, f"no reflexive witness for ({x}, {y})")
    return Ok()


def _reflexive_witness(rows, tri, c) -> bool:
    """Does [.]B -> B hold at c for every row of the subformula table?"""
    for row in rows.values():
        if all(row[v] for v in tri[c]) and not row[c]:
            return False
    return True


# --- evaluation -------------------------------------------------------------

def _succ_map(worlds, rel) -> dict:
    out = {w: [] for w in worlds}
    for x, y in rel:
        out[x].append(y)
    return out


def _truth_rows(m: KripkeModel, a: Formula, tri, box) -> dict:
    """One {world: truth} row per distinct subformula, built bottom up.

    tri and box are successor maps. Diamond and Nabla rows are the duals
    of the Box and Triangle rows over the same successors.
    """
    rows = {}
    for f in subformulas(a):
        if isinstance(f, Bot):
            row = {w: False for w in m.worlds}
        elif isinstance(f, Top):
            row = {w: True for w in m.worlds}
        elif isinstance(f, Var):
            have = set(m.val.get(f.name, ()))
            row = {w: w in have for w in m.worlds}
        elif isinstance(f, Not):
            body = rows[f.body]
            row = {w: not body[w] for w in m.worlds}
        elif isinstance(f, And):
            lt, rt = rows[f.left], rows[f.right]
            row = {w: lt[w] and rt[w] for w in m.worlds}
        elif isinstance(f, Or):
            lt, rt = rows[f.left], rows[f.right]
            row = {w: lt[w] or rt[w] for w in m.worlds}
        elif isinstance(f, Implies):
            lt, rt = rows[f.left], rows[f.right]
            row = {w: (not lt[w]) or rt[w] for w in m.worlds}
        elif isinstance(f, Iff):
            lt, rt = rows[f.left], rows[f.right]
            row = {w: lt[w] == rt[w] for w in m.worlds}
        elif isinstance(f, Box):
            body = rows[f.body]
            row = {w: all(body[v] for v in box[w]) for w in m.worlds}
        elif isinstance(f, Diamond):
            body = rows[f.body]
            row = {w: any(body[v] for v in box[w]) for w in m.worlds}
        elif isinstance(f, Triangle):
            body = rows[f.body]
            row = {w: all(body[v] for v in tri[w]) for w in m.worlds}
        elif isinstance(f, Nabla):
            body = rows[f.body]
            row = {w: any(body[v] for v in tri[w]) for w in m.worlds}
        else:
            raise SemanticsMismatch(f"cannot evaluate {f!r}")
        rows[f] = row
    return rows


def _relations_for(m: KripkeModel, a: Formula, semantics: str):
    if semantics == GL:
        if uses_triangle(a):
            raise SemanticsMismatch("the one-modality reading has no [.] or <.>")
        return m.prec, m.prec
    if semantics == GLT:
        verdict = validate_model(m, a)
        if not isinstance(verdict, Ok):
            raise SemanticsMismatch(
                f"model fails condition {verdict.condition}: {verdict.detail}")
        return m.prec, m.precR
    if semantics == GL2:
        return m.prec, m.prec2()
    raise SemanticsMismatch(f"unknown semantics {semantics!r}")


def eval_formula(m: KripkeModel, w, a: Formula, semantics: str) -> bool:
    """Truth of a at w under the chosen reading.

    GL: one modality only, [] over the tree order. GLT: [.] over the tree
    order, [] over the auxiliary relation; the model must pass validation
    relative to a. GL2: [.] over the tree order, [] over its two-step
    composition; the auxiliary relation is ignored.
    """
    if w not in set(m.worlds):
        raise ModelError(f"{w!r} is not a world")
    return _rows_for(m, a, semantics)[a][w]


def _rows_for(m: KripkeModel, a: Formula, semantics: str) -> dict:
    tri_rel, box_rel = _relations_for(m, a, semantics)
    return _truth_rows(m, a, _succ_map(m.worlds, tri_rel),
                       _succ_map(m.worlds, box_rel))


def valid_on_model(m: KripkeModel, a: Formula, semantics: str) -> bool:
    """True at every world; validation and evaluation are shared across worlds."""
    return all(_rows_for(m, a, semantics)[a].values())


def first_failing_world(m: KripkeModel, a: Formula, semantics: str):
    """The first world (in model order) where a fails, or None."""
    row = _rows_for(m, a, semantics)[a]
    for w in m.worlds:
        if not row[w]:
            return w
    return None


# --- JSON-facing dict form --------------------------------------------------

def model_to_dict(m: KripkeModel) -> dict:
    return {
        "worlds": list(m.worlds),
        "root": m.root,
        "prec": [list(p) for p in m.prec],
        "precR": [list(p) for p in m.precR],
        "val": {var: list(ws) for var, ws in m.val.items()},
    }


def model_from_dict(d) -> KripkeModel:
    if not isinstance(d, dict):
        raise ModelError("model document must be an object")
    required = {"worlds", "root", "prec", "precR", "val"}
    missing = required - set(d)
    if missing:
        raise ModelError(f"missing fields: {', '.join(sorted(missing))}")
    extra = set(d) - required
    if extra:
        raise ModelError(f"unknown fields: {', '.join(sorted(extra))}")
    if not isinstance(d["worlds"], list):
        raise ModelError("worlds must be a list")
    for key in ("prec", "precR"):
        if not isinstance(d[key], list):
            raise ModelError(f"{key} must be a list of pairs")
        for pair in d[key]:
            if not isinstance(pair, list) or len(pair) != 2:
                raise ModelError(f"{key} entries are two-element lists, got {pair!r}")
    if not isinstance(d["val"], dict):
        raise ModelError("val must map variables to world lists")
    for var, ws in d["val"].items():
        if not isinstance(ws, list):
            raise ModelError(f"val[{var!r}] must be a list of worlds")
    return KripkeModel(worlds=d["worlds"], root=d["root"], prec=d["prec"],
                       precR=d["precR"], val=d["val"])


# --- seeded random models sound for a given formula -------------------------

def random_a_sound_model(rng: random.Random, a: Formula, max_size: int = 8) -> KripkeModel:
    """A random tree model passing validation relative to a.

    The frame is a uniform random parent vector; the auxiliary relation is a
    random subset of the tree order closed under the two mixing conditions;
    then every auxiliary pair gets its witness by forcing all variables of a
    true on the upward cone of the pair's target. For formulas free of
    negation and falsum (all the axiom instances the suite feeds in) every
    subformula comes out true on such a cone, so the target itself is a
    reflexive witness and validation passes.
    """
    size = rng.randint(1, max_size)
    parents = tuple(rng.randrange(i) for i in range(1, size))
    names = tuple(f"w{i}" for i in range(size))
    pairs = set()
    for child in range(1, size):
        anc = parents[child - 1]
        while True:
            pairs.add((names[anc], names[child]))
            if anc == 0:
                break
            anc = parents[anc - 1]
    prec = tuple(sorted(pairs))
    base = [pq for pq in prec if rng.random() < 0.4]
    rset = set(base)
    changed = True
    while changed:
        changed = False
        for x, y in prec:
            for c, d in list(rset):
                if c == y and (x, d) not in rset:
                    rset.add((x, d))
                    changed = True
                if x == d and (c, y) not in rset:
                    rset.add((c, y))
                    changed = True
    vars_ = sorted(variables_of(a))
    val = {v: {w for w in names if rng.random() < 0.5} for v in vars_}
    for _, y in rset:
        cone = {y} | {d for c, d in prec if c == y}
        for v in vars_:
            val[v] |= cone
    model = KripkeModel(worlds=names, root=names[0] if names else "w0",
                        prec=prec, precR=tuple(sorted(rset)),
                        val={v: tuple(sorted(ws)) for v, ws in val.items()})
    verdict = validate_model(model, a)
    if not isinstance(verdict, Ok):
        raise ModelError(f"generator produced an invalid model: {verdict}")
    return model
