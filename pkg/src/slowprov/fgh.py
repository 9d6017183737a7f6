"""Budgeted exact evaluation of the fast-growing hierarchy.

F_0(n) = n+1, F_{a+1}(n) = the (n+1)-fold composition of F_a at n, and at
limits F_lam(n) = F_{lam[n]}(n). Values explode almost immediately, so every
entry point takes a budget and returns budget exhaustion as an ordinary
result. On top of the evaluator sit the slow provability functions l and r.

The evaluator is a work-stack machine over run-length-encoded pending
compositions. Runs of F_0 collapse to one addition and runs of F_1 to one
shift, each charged a single step; that accounting is what lets the default
budget admit F_3(2) (which needs 402,653,184 F_1 applications) while still
cutting off anything genuinely out of reach. The bit length of a shift result
is predicted exactly before materializing, so the bit cap can refuse a value
without ever building it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ordinal import (
    EPSILON0,
    ONE,
    OrdKind,
    Ordinal,
    classify,
    fund_seq,
    omega_tower,
)


@dataclass(frozen=True)
class EvalBudget:
    max_bit_length: int
    max_steps: int

    def __post_init__(self):
        if self.max_bit_length < 1 or self.max_steps < 1:
            raise ValueError("budget caps must be positive")


DEFAULT_BUDGET = EvalBudget(max_bit_length=2 ** 29, max_steps=10 ** 7)


@dataclass(frozen=True)
class Value:
    v: int


@dataclass(frozen=True)
class BudgetExceeded:
    steps_used: int
    largest_intermediate_bit_length: int


EvalResult = Value | BudgetExceeded


@dataclass(frozen=True)
class LE:
    v: int


@dataclass(frozen=True)
class GT:
    pass


ThresholdResult = LE | GT | BudgetExceeded


class Undecided(Exception):
    """A membership test for l hit the budget; the value is not guessed."""

    def __init__(self, n: int, m: int):
        super().__init__(f"l({n}) undecided: membership test at m={m} exceeded budget")
        self.n = n
        self.m = m


def _shift_bits(v: int, k: int) -> int:
    """Exact bit length of 2^k * (v+1) - 1 without computing it."""
    vp1 = v + 1
    m = vp1.bit_length()
    if vp1 & (vp1 - 1) == 0:
        return k + m - 1
    return k + m


def _run(stack, v: int, budget: EvalBudget, threshold=None):
    """Drive the machine to completion or to a budget wall.

    `stack` holds [ordinal, count] pairs, applied from the end. In threshold
    mode the bit cap is ignored (a collapsed shift that would overshoot the
    threshold is answered GT before materializing, which is sound because
    every later application only grows the value), and only the step cap can
    produce BudgetExceeded.
    """
    steps = 0
    biggest = v.bit_length()
    max_steps = budget.max_steps
    max_bits = budget.max_bit_length
    thr_bits = threshold.bit_length() if threshold is not None else None

    if threshold is not None and v > threshold:
        return GT()

    while stack:
        if steps >= max_steps:
            return BudgetExceeded(steps, biggest)
        top = stack[-1]
        alpha, count = top
        kind, pred = classify(alpha)

        if kind is OrdKind.ZERO:
            stack.pop()
            steps += 1
            v = v + count
            bits = v.bit_length()
            if bits > biggest:
                biggest = bits
            if threshold is not None:
                if v > threshold:
                    return GT()
            elif bits > max_bits:
                return BudgetExceeded(steps, biggest)

        elif alpha == ONE:
            stack.pop()
            steps += 1
            bits = _shift_bits(v, count)
            if threshold is not None:
                if bits > thr_bits:
                    if bits > biggest:
                        biggest = bits
                    return GT()
            elif bits > max_bits:
                return BudgetExceeded(steps, max(biggest, bits))
            v = ((v + 1) << count) - 1
            if bits > biggest:
                biggest = bits
            if threshold is not None and v > threshold:
                return GT()

        elif kind is OrdKind.SUCCESSOR:
            if not pred.is_zero():
                # the run about to be pushed applies an index >= 1 at least
                # v+1 times, so the result is at least the F_1 tower
                # 2^(v+1)*(v+1)-1. Once v itself reaches the caps that width
                # settles the outcome, and expanding instead would grow the
                # stack by one giant pair per step until memory ran out.
                if threshold is not None:
                    if _shift_bits(v, v + 1) > thr_bits:
                        return GT()
                elif v >= max_bits:
                    return BudgetExceeded(
                        steps, max(biggest, _shift_bits(v, v + 1)))
            if count == 1:
                stack.pop()
            else:
                top[1] = count - 1
            steps += 1
            stack.append([pred, v + 1])

        else:
            # limit clause; expanding eps0 builds a tower of height v+1 and
            # is charged accordingly, which also guards against building a
            # tower the remaining budget could never consume
            cost = v + 1 if alpha.eps else 1
            if steps + cost > max_steps:
                return BudgetExceeded(steps, biggest)
            if count == 1:
                stack.pop()
            else:
                top[1] = count - 1
            steps += cost
            stack.append([fund_seq(alpha, v), 1])

    if threshold is not None:
        return LE(v)
    return Value(v)


def eval_F(alpha: Ordinal, n: int, budget: EvalBudget = DEFAULT_BUDGET) -> EvalResult:
    """Exact F_alpha(n), or BudgetExceeded with diagnostics."""
    if n < 0:
        raise ValueError("argument must be nonnegative")
    return _run([[alpha, 1]], n, budget)


def eval_F_iter(alpha: Ordinal, i: int, n: int, budget: EvalBudget = DEFAULT_BUDGET) -> EvalResult:
    """i-fold composition of F_alpha applied to n; i = 0 is n itself."""
    if i < 0 or n < 0:
        raise ValueError("arguments must be nonnegative")
    if i == 0:
        return Value(n)
    return _run([[alpha, i]], n, budget)


def _plainly_above(alpha: Ordinal, n: int, threshold: int) -> bool:
    """Cheap sound lower bound: F_alpha(n) > threshold without any stepping.

    Every descent from an index >= omega passes through omega itself (the
    only limit whose fundamental sequence leaves the infinite ordinals), and
    F at omega equals F at n+1, which dominates F_2 once n >= 1. The same
    F_2 bound covers finite indices >= 2. Values are weakly decreasing along
    descents, so F_2(n) = 2^(n+1)*(n+1)-1 bounds F_alpha(n) from below; if
    even that bound outgrows the threshold's bit length, the comparison is
    settled. Without this, memberships like F at omega^omega of 7 against
    threshold 8 would need ~8^8 machine steps before the value first moves.
    """
    if n < 1:
        return False
    finite = not alpha.eps and len(alpha.terms) == 1 and alpha.terms[0][0].is_zero()
    if finite and alpha.terms[0][1] < 2:
        return False
    if not finite and not alpha.eps and (not alpha.terms or alpha.terms[0][0].is_zero()):
        return False
    return _shift_bits(n, n + 1) > threshold.bit_length()


def compare_F_to(alpha: Ordinal, n: int, threshold: int,
                 budget: EvalBudget = DEFAULT_BUDGET) -> ThresholdResult:
    """Decide F_alpha(n) <= threshold without necessarily finishing the value.

    GT fires as soon as any intermediate exceeds the threshold, or already
    up front when the F_2 lower bound settles it; LE carries the exact
    value; BudgetExceeded only on the step cap.
    """
    if n < 0 or threshold < 0:
        raise ValueError("arguments must be nonnegative")
    if _plainly_above(alpha, n, threshold):
        return GT()
    return _run([[alpha, 1]], n, budget, threshold=threshold)


def eval_F_shifted(z: int, x: int, budget: EvalBudget = DEFAULT_BUDGET) -> EvalResult:
    """F at epsilon_0 of (x minus z), with truncated subtraction."""
    if x < 0:
        raise ValueError("argument must be nonnegative")
    return eval_F(EPSILON0, max(x - z, 0), budget)


class SlowFunctions:
    """One evaluation session for l and r, with a memo for decided l values.

    l(n) is the largest m below n whose tower-indexed F value at m stays
    within n (or 0 when no m qualifies); r(n) applies the tower indexed by
    l(n) back to n. Decided l values are exact regardless of budget, so the
    memo is keyed by n alone; Undecided is raised, never guessed around.
    """

    def __init__(self, budget: EvalBudget = DEFAULT_BUDGET):
        self.budget = budget
        self._memo = {0: 0}

    def l(self, n: int) -> int:
        if n < 0:
            raise ValueError("argument must be nonnegative")
        for k in range(1, n + 1):
            if k in self._memo:
                continue
            self._memo[k] = self._compute_l(k)
        return self._memo[n]

    def _compute_l(self, n: int) -> int:
        # descending scan: the first qualifying m is the maximum
        for m in range(n - 1, 0, -1):
            tower = omega_tower(ONE, self._memo[m])
            res = compare_F_to(tower, m, n, self.budget)
            if isinstance(res, LE):
                return m
            if isinstance(res, BudgetExceeded):
                raise Undecided(n, m)
        return 0

    def r(self, n: int) -> EvalResult:
        ln = self.l(n)
        return eval_F(omega_tower(ONE, ln), n, self.budget)


def slow_l(n: int, budget: EvalBudget = DEFAULT_BUDGET,
           session: SlowFunctions | None = None) -> int:
    if session is None:
        session = SlowFunctions(budget)
    return session.l(n)


def slow_r(n: int, budget: EvalBudget = DEFAULT_BUDGET,
           session: SlowFunctions | None = None) -> EvalResult:
    if session is None:
        session = SlowFunctions(budget)
    return session.r(n)
