"""Proof search for the three systems.

Strategy, in order: tautology check on the goal, direct axiom match, a
small library of derivation templates (transitivity of `[.]`, the boxed
Loeb principle, box transitivity, collapse lemmas for the two-step box),
then a bounded forward closure over the goal's subformulas using modus
ponens, triangle necessitation, monotonicity and syllogism steps. Every
proof that comes out is re-validated with check_proof before it is
returned, so a None result is the only unverified outcome.
"""

from __future__ import annotations

from .formula import And, Box, Formula, Iff, Implies, Triangle, subformulas
from .proofs import (
    AXIOM_MATCHERS,
    Ok,
    ProofError,
    ProofLine,
    ProofObject,
    SYSTEM_RULES,
    check_proof,
    is_tautology,
)


def _taut(f: Formula) -> bool:
    try:
        return is_tautology(f)
    except ProofError:
        return False


class _Builder:
    """Accumulates proof lines with structural deduplication."""

    def __init__(self, system: str, cap: int = 400):
        self.system = system
        self.cap = cap
        self.lines: list[ProofLine] = []
        self.index: dict[Formula, int] = {}

    def overflow(self) -> bool:
        return len(self.lines) > self.cap

    def have(self, f: Formula):
        return self.index.get(f)

    def add(self, f: Formula, rule: str, refs: tuple = ()) -> int:
        got = self.index.get(f)
        if got is not None:
            return got
        self.lines.append(ProofLine(f, rule, refs))
        no = len(self.lines)
        self.index[f] = no
        return no

    def taut(self, f: Formula) -> int:
        return self.add(f, "Taut")

    def mp(self, minor: int, major: int) -> int:
        """major must hold Implies(minor's formula, result)."""
        concl = self.lines[major - 1].formula.right
        return self.add(concl, "MP", (minor, major))

    def nec(self, line: int) -> int:
        return self.add(Triangle(self.lines[line - 1].formula), "Nec_tri", (line,))

    # -- axiom instances -----------------------------------------------

    def k_tri(self, a: Formula, b: Formula) -> int:
        f = Implies(Triangle(Implies(a, b)),
                    Implies(Triangle(a), Triangle(b)))
        return self.add(f, "AxK_tri")

    def k_box(self, a: Formula, b: Formula) -> int:
        f = Implies(Box(Implies(a, b)), Implies(Box(a), Box(b)))
        return self.add(f, "AxK_box")

    def lob_tri(self, a: Formula) -> int:
        f = Implies(Triangle(Implies(Triangle(a), a)), Triangle(a))
        return self.add(f, "AxL_tri")

    def t1(self, a: Formula) -> int:
        return self.add(Implies(Triangle(a), Box(a)), "AxT1")

    def t2(self, a: Formula) -> int:
        return self.add(Implies(Box(a), Triangle(Box(a))), "AxT2")

    def t3(self, a: Formula) -> int:
        return self.add(Implies(Box(a), Box(Triangle(a))), "AxT3")

    def t4(self, a: Formula) -> int:
        return self.add(Implies(Box(Triangle(a)), Box(a)), "AxT4")

    def ax2(self, a: Formula) -> int:
        return self.add(Iff(Box(a), Triangle(Triangle(a))), "Ax2")

    # -- derived moves -------------------------------------------------

    def chain(self, first: int, second: int) -> int:
        """From X->Y and Y->Z conclude X->Z by a syllogism tautology."""
        xy = self.lines[first - 1].formula
        yz = self.lines[second - 1].formula
        xz = Implies(xy.left, yz.right)
        syl = self.taut(Implies(xy, Implies(yz, xz)))
        step = self.mp(first, syl)
        return self.mp(second, step)

    def mono_tri(self, imp: int) -> int:
        """From X->Y conclude [.]X -> [.]Y."""
        f = self.lines[imp - 1].formula
        necd = self.nec(imp)
        k = self.k_tri(f.left, f.right)
        return self.mp(necd, k)

    def tri_tri_to_box(self, a: Formula) -> int:
        ax = self.ax2(a)
        fwd = self.taut(Implies(self.lines[ax - 1].formula,
                                Implies(Triangle(Triangle(a)), Box(a))))
        return self.mp(ax, fwd)

    def box_to_tri_tri(self, a: Formula) -> int:
        ax = self.ax2(a)
        fwd = self.taut(Implies(self.lines[ax - 1].formula,
                                Implies(Box(a), Triangle(Triangle(a)))))
        return self.mp(ax, fwd)

    def mono_box(self, imp: int) -> int:
        """From X->Y conclude []X -> []Y (needs a box-capable system)."""
        f = self.lines[imp - 1].formula
        x, y = f.left, f.right
        if self.system == "GL2":
            step1 = self.mono_tri(imp)
            step2 = self.mono_tri(step1)
            open_x = self.box_to_tri_tri(x)
            close_y = self.tri_tri_to_box(y)
            half = self.chain(open_x, step2)
            return self.chain(half, close_y)
        necd = self.nec(imp)
        lift = self.t1(f)
        boxed = self.mp(necd, lift)
        k = self.k_box(x, y)
        return self.mp(boxed, k)

    def nec_box(self, line: int) -> int:
        """From X conclude []X (derived; Nec_box is not primitive)."""
        f = self.lines[line - 1].formula
        if self.system == "GL2":
            twice = self.nec(self.nec(line))
            coll = self.tri_tri_to_box(f)
            return self.mp(twice, coll)
        necd = self.nec(line)
        lift = self.t1(f)
        return self.mp(necd, lift)

    def four_tri(self, a: Formula) -> int:
        """[.]A -> [.][.]A, via the conjunction A & [.]A."""
        c = And(a, Triangle(a))
        l1 = self.taut(Implies(c, a))
        l4 = self.mp(self.nec(l1), self.k_tri(c, a))
        l5 = self.taut(Implies(self.lines[l4 - 1].formula,
                               Implies(a, Implies(Triangle(c), c))))
        l6 = self.mp(l4, l5)
        l9 = self.mp(self.nec(l6), self.k_tri(a, Implies(Triangle(c), c)))
        l10 = self.lob_tri(c)
        l13 = self.chain(l9, l10)
        l14 = self.taut(Implies(c, Triangle(a)))
        l17 = self.mp(self.nec(l14), self.k_tri(c, Triangle(a)))
        return self.chain(l13, l17)

    def four_box(self, a: Formula) -> int:
        """[]A -> [][]A."""
        if self.system == "GL2":
            base = self.four_tri(a)
            shift = self.four_tri(Triangle(a))
            deeper = self.mono_tri(self.mono_tri(base))
            quad = self.chain(shift, deeper)
            coll = self.tri_tri_to_box(a)
            deep_coll = self.mono_tri(self.mono_tri(coll))
            open_a = self.box_to_tri_tri(a)
            close_box = self.tri_tri_to_box(Box(a))
            part = self.chain(open_a, quad)
            part = self.chain(part, deep_coll)
            return self.chain(part, close_box)
        first = self.t2(a)
        second = self.t1(Box(a))
        return self.chain(first, second)

    def box_lob(self, a: Formula) -> int:
        """[]([]A -> A) -> []A, from the triangle Loeb axiom."""
        t1a = self.t1(a)
        weak = self.taut(Implies(self.lines[t1a - 1].formula,
                                 Implies(Implies(Box(a), a),
                                         Implies(Triangle(a), a))))
        inner = self.mp(t1a, weak)
        lifted = self.mono_box(inner)
        lob = self.lob_tri(a)
        shifted = self.mono_box(lob)
        t3i = self.t3(Implies(Triangle(a), a))
        t4i = self.t4(a)
        part = self.chain(lifted, t3i)
        part = self.chain(part, shifted)
        return self.chain(part, t4i)

    def tri_to_box(self, a: Formula) -> int:
        """[.]A -> []A in the two-step system."""
        base = self.four_tri(a)
        coll = self.tri_tri_to_box(a)
        return self.chain(base, coll)


def _axiom_rule_for(f: Formula, system: str):
    for tag in SYSTEM_RULES[system]:
        matcher = AXIOM_MATCHERS.get(tag)
        if matcher is not None and matcher(f):
            return tag
    return None


def _try_templates(b: _Builder, goal: Formula) -> bool:
    sysname = b.system
    if (isinstance(goal, Implies) and isinstance(goal.left, Triangle)
            and isinstance(goal.right, Triangle)
            and isinstance(goal.right.body, Triangle)
            and goal.right.body.body == goal.left.body):
        b.four_tri(goal.left.body)
        return True
    if sysname == "GL":
        return False
    if not isinstance(goal, Implies):
        return False
    left, right = goal.left, goal.right
    if (isinstance(left, Box) and isinstance(right, Box)
            and isinstance(right.body, Box) and right.body.body == left.body):
        b.four_box(left.body)
        return True
    if (isinstance(left, Box) and isinstance(left.body, Implies)
            and isinstance(left.body.left, Box)
            and left.body.left.body == left.body.right
            and right == Box(left.body.right)):
        b.box_lob(left.body.right)
        return True
    if sysname == "GL2" and isinstance(right, Box):
        if left == Triangle(right.body):
            b.tri_to_box(right.body)
            return True
        if left == Triangle(Triangle(right.body)):
            b.tri_tri_to_box(right.body)
            return True
    if (sysname == "GL2" and isinstance(left, Box)
            and right == Triangle(Triangle(left.body))):
        b.box_to_tri_tri(left.body)
        return True
    return False


def _seed(b: _Builder, pool):
    sysname = b.system
    for f in pool:
        if _taut(f):
            b.taut(f)
        b.lob_tri(f)
        if sysname == "GLT":
            b.t1(f)
            b.t2(f)
            b.t3(f)
            b.t4(f)
        elif sysname == "GL2":
            b.ax2(f)
        if isinstance(f, Implies):
            b.k_tri(f.left, f.right)
            if sysname != "GL":
                b.k_box(f.left, f.right)
    tri_bodies = [f.body for f in pool if isinstance(f, Triangle)]
    box_bodies = [f.body for f in pool if isinstance(f, Box)]
    for bodies, mono in ((tri_bodies, b.mono_tri),
                         (box_bodies, b.mono_box) if sysname != "GL" else ((), None)):
        for x in bodies:
            for y in bodies:
                if x != y and _taut(Implies(x, y)):
                    mono(b.taut(Implies(x, y)))


def _closure_round(b: _Builder, pool, goal: Formula, last: bool) -> bool:
    proved = list(b.index.items())
    boxed = b.system != "GL"
    for f, line in proved:
        if b.overflow():
            return goal in b.index
        if isinstance(f, Implies):
            minor = b.have(f.left)
            if minor is not None:
                b.mp(minor, line)
            if Triangle(f.left) in pool and Triangle(f.right) in pool:
                b.mono_tri(line)
            if boxed and Box(f.left) in pool and Box(f.right) in pool:
                b.mono_box(line)
        if Triangle(f) in pool:
            b.nec(line)
        if boxed and Box(f) in pool:
            b.nec_box(line)
    if goal in b.index:
        return True
    proved = list(b.index.items())
    imps = [(f, n) for f, n in proved if isinstance(f, Implies)]
    for f, n in imps:
        for g, m in imps:
            if f.right == g.left:
                out = Implies(f.left, g.right)
                if out == goal or out in pool:
                    b.chain(n, m)
                    if goal in b.index:
                        return True
    if isinstance(goal, Iff):
        fwd = b.have(Implies(goal.left, goal.right))
        back = b.have(Implies(goal.right, goal.left))
        if fwd is not None and back is not None:
            glue = b.taut(Implies(b.lines[fwd - 1].formula,
                                  Implies(b.lines[back - 1].formula, goal)))
            b.mp(back, b.mp(fwd, glue))
            return True
    for f, n in list(b.index.items()):
        if _taut(Implies(f, goal)):
            step = b.taut(Implies(f, goal))
            b.mp(n, step)
            return True
    if last:
        proved = list(b.index.items())
        for f, n in proved:
            for g, m in proved:
                if _taut(Implies(f, Implies(g, goal))):
                    step = b.taut(Implies(f, Implies(g, goal)))
                    b.mp(m, b.mp(n, step))
                    return True
    return goal in b.index


def _prune(b: _Builder, goal: Formula) -> ProofObject:
    target = b.index[goal]
    keep = set()
    stack = [target]
    while stack:
        n = stack.pop()
        if n in keep:
            continue
        keep.add(n)
        stack.extend(b.lines[n - 1].refs)
    order = sorted(keep)
    renumber = {old: new for new, old in enumerate(order, start=1)}
    lines = tuple(ProofLine(b.lines[old - 1].formula, b.lines[old - 1].rule,
                            tuple(renumber[r] for r in b.lines[old - 1].refs))
                  for old in order)
    return ProofObject(b.system, lines)


def prove(goal: Formula, system: str, rounds: int = 4,
          line_cap: int = 400):
    """Search for a proof of goal; returns a checked ProofObject or None."""
    if system not in SYSTEM_RULES:
        raise ProofError(f"unknown system {system!r}")
    b = _Builder(system, cap=line_cap)
    done = False
    if _taut(goal):
        b.taut(goal)
        done = True
    if not done:
        tag = _axiom_rule_for(goal, system)
        if tag is not None:
            b.add(goal, tag)
            done = True
    if not done and _try_templates(b, goal):
        done = goal in b.index
    if not done:
        pool = set(subformulas(goal))
        _seed(b, pool)
        for i in range(rounds):
            if _closure_round(b, pool, goal, last=(i == rounds - 1)):
                done = True
                break
            if b.overflow():
                break
    if not done or goal not in b.index:
        return None
    proof = _prune(b, goal)
    verdict = check_proof(proof)
    if not isinstance(verdict, Ok):
        raise ProofError(f"internal search produced an invalid proof: {verdict}")
    return proof
