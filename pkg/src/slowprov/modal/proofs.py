"""Hilbert-style proof objects and the line-by-line checker.

Proofs are flat line lists. Each line carries a formula, a rule tag, and
back-references. Tautologies are decided by truth-tabling over the maximal
non-boolean subformulas; axiom tags are matched structurally against their
schema; the two rules check their cited lines. Necessitation is primitive
for `[.]` only; the boxed form is derivable and deliberately rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .formula import (
    And,
    Bot,
    Box,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Top,
    Triangle,
    Var,
    parse_formula,
    render_formula,
)


class ProofError(Exception):
    """Malformed proof data (not a failed check; those are diagnostics)."""


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    rule: str
    refs: tuple = ()


@dataclass(frozen=True)
class ProofObject:
    system: str
    lines: tuple


@dataclass(frozen=True)
class Ok:
    pass


@dataclass(frozen=True)
class ErrorAt:
    line: int
    reason: str


_GL_RULES = frozenset({"Taut", "AxK_tri", "AxL_tri", "MP", "Nec_tri"})
SYSTEM_RULES = {
    "GL": _GL_RULES,
    "GLT": _GL_RULES | {"AxK_box", "AxT1", "AxT2", "AxT3", "AxT4"},
    "GL2": _GL_RULES | {"AxK_box", "Ax2"},
}
ALL_RULES = frozenset().union(*SYSTEM_RULES.values())

TAUT_ATOM_CAP = 16


# --- tautology checking -----------------------------------------------------

def _atoms_of(f: Formula, acc: dict):
    if isinstance(f, (Top, Bot)):
        return
    if isinstance(f, Not):
        _atoms_of(f.body, acc)
    elif isinstance(f, (And, Or, Implies, Iff)):
        _atoms_of(f.left, acc)
        _atoms_of(f.right, acc)
    else:
        acc[f] = None


def _truth(f: Formula, env: dict) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not _truth(f.body, env)
    if isinstance(f, And):
        return _truth(f.left, env) and _truth(f.right, env)
    if isinstance(f, Or):
        return _truth(f.left, env) or _truth(f.right, env)
    if isinstance(f, Implies):
        return (not _truth(f.left, env)) or _truth(f.right, env)
    if isinstance(f, Iff):
        return _truth(f.left, env) == _truth(f.right, env)
    return env[f]


def is_tautology(f: Formula) -> bool:
    """Propositional validity with modal subformulas opaque.

    Raises ProofError past the atom cap; callers decide how to report it.
    """
    acc = {}
    _atoms_of(f, acc)
    atoms = list(acc)
    if len(atoms) > TAUT_ATOM_CAP:
        raise ProofError(f"{len(atoms)} distinct atoms exceeds the "
                         f"{TAUT_ATOM_CAP}-atom tautology cap")
    for bits in product((False, True), repeat=len(atoms)):
        if not _truth(f, dict(zip(atoms, bits))):
            return False
    return True


# --- axiom schema matchers --------------------------------------------------

def _match_k(f: Formula, box) -> bool:
    return (isinstance(f, Implies) and isinstance(f.left, box)
            and isinstance(f.left.body, Implies)
            and isinstance(f.right, Implies)
            and isinstance(f.right.left, box) and isinstance(f.right.right, box)
            and f.right.left.body == f.left.body.left
            and f.right.right.body == f.left.body.right)


def _match_lob_tri(f: Formula) -> bool:
    return (isinstance(f, Implies) and isinstance(f.left, Triangle)
            and isinstance(f.left.body, Implies)
            and isinstance(f.left.body.left, Triangle)
            and isinstance(f.right, Triangle)
            and f.left.body.left.body == f.left.body.right == f.right.body)


def _match_t1(f: Formula) -> bool:
    return (isinstance(f, Implies) and isinstance(f.left, Triangle)
            and isinstance(f.right, Box) and f.left.body == f.right.body)


def _match_t2(f: Formula) -> bool:
    return (isinstance(f, Implies) and isinstance(f.left, Box)
            and isinstance(f.right, Triangle) and isinstance(f.right.body, Box)
            and f.right.body == f.left)


def _match_t3(f: Formula) -> bool:
    return (isinstance(f, Implies) and isinstance(f.left, Box)
            and isinstance(f.right, Box) and isinstance(f.right.body, Triangle)
            and f.right.body.body == f.left.body)


def _match_t4(f: Formula) -> bool:
    return (isinstance(f, Implies) and isinstance(f.left, Box)
            and isinstance(f.left.body, Triangle)
            and isinstance(f.right, Box) and f.left.body.body == f.right.body)


def _match_ax2(f: Formula) -> bool:
    return (isinstance(f, Iff) and isinstance(f.left, Box)
            and isinstance(f.right, Triangle) and isinstance(f.right.body, Triangle)
            and f.right.body.body == f.left.body)


AXIOM_MATCHERS = {
    "AxK_tri": lambda f: _match_k(f, Triangle),
    "AxK_box": lambda f: _match_k(f, Box),
    "AxL_tri": _match_lob_tri,
    "AxT1": _match_t1,
    "AxT2": _match_t2,
    "AxT3": _match_t3,
    "AxT4": _match_t4,
    "Ax2": _match_ax2,
}


# --- the checker ------------------------------------------------------------

def check_proof(p: ProofObject):
    allowed = SYSTEM_RULES.get(p.system)
    if allowed is None:
        return ErrorAt(0, f"unknown system {p.system!r}")
    for no, line in enumerate(p.lines, start=1):
        rule = line.rule
        if rule == "Nec_box":
            return ErrorAt(no, "Nec_box is not a primitive rule; derive it "
                               "from Nec_tri and AxT1")
        if rule not in ALL_RULES:
            return ErrorAt(no, f"unknown rule {rule!r}")
        if rule not in allowed:
            return ErrorAt(no, f"{rule} is not part of {p.system}")
        if rule in AXIOM_MATCHERS or rule == "Taut":
            if line.refs:
                return ErrorAt(no, f"{rule} takes no references")
            if rule == "Taut":
                try:
                    if not is_tautology(line.formula):
                        return ErrorAt(no, "not a tautology")
                except ProofError as e:
                    return ErrorAt(no, str(e))
            elif not AXIOM_MATCHERS[rule](line.formula):
                return ErrorAt(no, f"not an instance of {rule}")
            continue
        for ref in line.refs:
            if not isinstance(ref, int) or not 1 <= ref < no:
                return ErrorAt(no, f"reference {ref} is not an earlier line")
        if rule == "MP":
            if len(line.refs) != 2:
                return ErrorAt(no, "MP takes two references")
            minor = p.lines[line.refs[0] - 1].formula
            major = p.lines[line.refs[1] - 1].formula
            if (not isinstance(major, Implies) or major.left != minor
                    or major.right != line.formula):
                return ErrorAt(no, "MP mismatch")
        elif rule == "Nec_tri":
            if len(line.refs) != 1:
                return ErrorAt(no, "Nec_tri takes one reference")
            prem = p.lines[line.refs[0] - 1].formula
            if line.formula != Triangle(prem):
                return ErrorAt(no, "Nec_tri conclusion must prefix [.] to "
                                   "the cited line")
    return Ok()


def conclusion(p: ProofObject) -> Formula:
    if not p.lines:
        raise ProofError("empty proof has no conclusion")
    return p.lines[-1].formula


# --- JSON-facing dict form --------------------------------------------------

def proof_to_dict(p: ProofObject) -> dict:
    lines = []
    for line in p.lines:
        entry = {"formula": render_formula(line.formula), "rule": line.rule}
        if line.refs:
            entry["refs"] = list(line.refs)
        lines.append(entry)
    return {"system": p.system, "lines": lines}


def proof_from_dict(d) -> ProofObject:
    if not isinstance(d, dict):
        raise ProofError("proof document must be an object")
    if set(d) - {"system", "lines"} or "system" not in d or "lines" not in d:
        raise ProofError("proof document has fields 'system' and 'lines' only")
    if not isinstance(d["lines"], list):
        raise ProofError("'lines' must be a list")
    lines = []
    for i, entry in enumerate(d["lines"], start=1):
        if not isinstance(entry, dict) or "formula" not in entry or "rule" not in entry:
            raise ProofError(f"line {i} needs 'formula' and 'rule'")
        refs = entry.get("refs", [])
        if not isinstance(refs, list) or not all(isinstance(r, int) for r in refs):
            raise ProofError(f"line {i}: refs must be a list of integers")
        lines.append(ProofLine(parse_formula(entry["formula"]),
                               entry["rule"], tuple(refs)))
    return ProofObject(str(d["system"]), tuple(lines))
