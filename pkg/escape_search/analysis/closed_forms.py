#
# This file is part of Escape Search.
# Copyright (C) 2025 INPE.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see <https://www.gnu.org/licenses/gpl-3.0.html>.
#

"""Expected runtimes, bounds and crossover thresholds of BrFS and RRW.

Runtimes are counted in goal tests. Every formula is evaluated with
:class:`fractions.Fraction`; floats only appear when a value is rendered.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Tuple, Union

from ..exceptions import SpecError
from ..synthetic import UhrChainSpec, tree_size

Number = Union[int, float, str, Fraction]

#: Significant digits of rendered decimals.
SIGNIFICANT_DIGITS = 6


def to_fraction(value: Number) -> Fraction:
    """Convert ``value`` to an exact rational.

    Floats are read through their shortest decimal representation, so
    ``0.4`` becomes ``2/5``. Strings may be ``"n/d"`` or decimals.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise SpecError(f"Expected a number, got {value!r}.")
    if isinstance(value, float):
        if not math.isfinite(value):
            raise SpecError(f"Expected a finite number, got {value!r}.")
        return Fraction(repr(value))
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"Cannot read {value!r} as a rational number.") from exc


def format_fraction(value: Fraction) -> str:
    """Return ``"n/d"``, or ``"n"`` for integers."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render(value: Any, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Render a number as a decimal with ``digits`` significant digits."""
    if isinstance(value, AnalysisResult):
        return value.decimal(digits)
    if isinstance(value, (Fraction, float)):
        if isinstance(value, float) and math.isinf(value):
            return "Infinity" if value > 0 else "-Infinity"
        return f"{float(value):.{digits}g}"
    return str(value)


@dataclass(frozen=True)
class AnalysisResult:
    """An exact rational value, or an explicit infinity."""

    value: Optional[Fraction] = None
    infinite: bool = False

    def __post_init__(self) -> None:
        """Check that exactly one of ``value`` and ``infinite`` is set."""
        if self.infinite == (self.value is not None):
            raise SpecError("An analysis result is either a rational or infinite.")
        if self.value is not None:
            object.__setattr__(self, "value", to_fraction(self.value))

    @classmethod
    def infinity(cls) -> "AnalysisResult":
        """Return the infinite result."""
        return cls(infinite=True)

    def decimal(self, digits: int = SIGNIFICANT_DIGITS) -> str:
        """Return the decimal rendering."""
        if self.infinite:
            return "Infinity"
        return f"{float(self.value):.{digits}g}"

    def ceiling(self) -> Optional[int]:
        """Return the least integer not below the value; None when infinite."""
        if self.infinite:
            return None
        return math.ceil(self.value)

    def __float__(self) -> float:
        """Return the value as a float."""
        return math.inf if self.infinite else float(self.value)

    def __eq__(self, other: object) -> bool:
        """Compare with another result or with a plain number."""
        if isinstance(other, AnalysisResult):
            return self.infinite == other.infinite and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return not self.infinite and self.value == other
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __lt__(self, other: "AnalysisResult") -> bool:
        """Order results; infinity is larger than every rational."""
        if self.infinite:
            return False
        if other.infinite:
            return True
        return self.value < other.value

    def __le__(self, other: "AnalysisResult") -> bool:
        """Order results."""
        return self == other or self < other

    def to_dict(self) -> Dict[str, Any]:
        """Return the exact value and its rendering."""
        if self.infinite:
            return {"value": "Infinity", "decimal": "Infinity"}
        return {"value": format_fraction(self.value), "decimal": self.decimal()}

    def __str__(self) -> str:
        """Return the decimal rendering."""
        return self.decimal()


@dataclass(frozen=True)
class AnalysisInput:
    """Quantities describing a task for the closed forms.

    Attributes:
        size_below (int): Number of states shallower than the goal depth.
        size_at (int): Number of states at the goal depth.
        goals (int): Number of goals at the goal depth.
        walk_len (int): Length of every random walk.
        reach_prob (Fraction): Probability a walk reaches the goal depth.
        success_prob (Fraction, optional): Probability a walk hits a goal;
            ``reach_prob * goals / size_at`` when omitted.
        dstar (int, optional): Goal depth.
        ell_error (Fraction, optional): ``e`` in ``walk_len = (1 + e) * dstar``.
    """

    size_below: int
    size_at: int
    goals: int
    walk_len: int
    reach_prob: Fraction = Fraction(1)
    success_prob: Optional[Fraction] = None
    dstar: Optional[int] = None
    ell_error: Optional[Fraction] = None

    def __post_init__(self) -> None:
        """Normalize rationals and validate."""
        for name in ("reach_prob", "success_prob", "ell_error"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, to_fraction(value))
        if self.size_below < 1 or self.size_at < 1:
            raise SpecError("size_below and size_at must be positive.")
        if self.goals < 1:
            raise SpecError(f"At least one goal is needed, got g={self.goals}.")
        if self.goals > self.size_at:
            raise SpecError(f"g={self.goals} exceeds size_at={self.size_at}.")
        if self.walk_len < 1:
            raise SpecError(f"The walk length must be at least 1, got {self.walk_len}.")
        if not 0 <= self.reach_prob <= 1:
            raise SpecError(f"reach_prob must lie in [0, 1], got {self.reach_prob}.")
        if self.success_prob is not None and not 0 <= self.success_prob <= 1:
            raise SpecError(f"success_prob must lie in [0, 1], got {self.success_prob}.")

    @property
    def p_g(self) -> Fraction:
        """Return the success probability of a single walk."""
        if self.success_prob is not None:
            return self.success_prob
        return self.reach_prob * self.goals / self.size_at

    def with_success_prob(self, success_prob: Number) -> "AnalysisInput":
        """Return a copy with another success probability."""
        return AnalysisInput(
            self.size_below, self.size_at, self.goals, self.walk_len,
            self.reach_prob, to_fraction(success_prob), self.dstar, self.ell_error,
        )

    def with_goals(self, goals: int) -> "AnalysisInput":
        """Return a copy with ``goals`` goals and a derived success probability."""
        return AnalysisInput(
            self.size_below, self.size_at, goals, self.walk_len,
            self.reach_prob, None, self.dstar, self.ell_error,
        )

    def to_dict(self) -> Dict[str, Any]:
        """Return the JSON object; rationals become ``"n/d"`` strings."""
        data: Dict[str, Any] = {
            "size_below": self.size_below,
            "size_at": self.size_at,
            "goals": self.goals,
            "walk_len": self.walk_len,
            "reach_prob": format_fraction(self.reach_prob),
        }
        if self.success_prob is not None:
            data["success_prob"] = format_fraction(self.success_prob)
        if self.dstar is not None:
            data["dstar"] = self.dstar
        if self.ell_error is not None:
            data["ell_error"] = format_fraction(self.ell_error)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AnalysisInput":
        """Build an input from its JSON object."""
        try:
            return cls(**data)
        except TypeError as exc:
            raise SpecError(f"Invalid analysis input: {exc}") from exc


def expected_brfs(inp: AnalysisInput) -> AnalysisResult:
    """Return ``|S_<d*| + (|S_d*| + 1)/(g + 1)``, BrFS's expected runtime with uniform goals."""
    return AnalysisResult(inp.size_below + Fraction(inp.size_at + 1, inp.goals + 1))


def brfs_bounds(inp: AnalysisInput) -> Tuple[int, int]:
    """Return the best and worst BrFS runtimes, ``|S_<d*| + 1`` and ``|S_<d*| + |S_d*|``."""
    return inp.size_below + 1, inp.size_below + inp.size_at


def rrw_upper(inp: AnalysisInput) -> AnalysisResult:
    """Return ``l/p_g + 1``, the upper bound on RRW's expected runtime.

    It is infinite when no walk can succeed.
    """
    p_g = inp.p_g
    if p_g == 0:
        return AnalysisResult.infinity()
    return AnalysisResult(inp.walk_len / p_g + 1)


def tree_input(b: int, dstar: int, goals: int, walk_len: int) -> AnalysisInput:
    """Return the input of a full tree with branching ``b`` and goals at ``dstar``."""
    if b < 2:
        raise SpecError(f"The branching factor must be at least 2, got {b}.")
    if dstar < 1:
        raise SpecError(f"The goal depth must be at least 1, got {dstar}.")
    if walk_len < dstar:
        raise SpecError(f"Walks of length {walk_len} cannot reach depth {dstar}.")
    return AnalysisInput(tree_size(b, dstar - 1), b**dstar, goals, walk_len, dstar=dstar)


def tree_expectations(
    b: int, dstar: int, goals: int, walk_len: int
) -> Tuple[AnalysisResult, AnalysisResult]:
    """Return BrFS's expected runtime and RRW's bound on a full tree."""
    inp = tree_input(b, dstar, goals, walk_len)
    return expected_brfs(inp), rrw_upper(inp)


def min_success_prob_for_crossover(inp: AnalysisInput) -> Fraction:
    """Return the least ``p_g`` for which RRW's bound is at most BrFS's expectation.

    ``l / (|S_<d*| + (|S_d*| + 1)/(g + 1) - 1)``.
    """
    denominator = inp.size_below + Fraction(inp.size_at + 1, inp.goals + 1) - 1
    if denominator <= 0:
        raise SpecError("The crossover probability is undefined for these sizes.")
    return inp.walk_len / denominator


@dataclass(frozen=True)
class Crossover:
    """A threshold on the number of goals and the least integer satisfying it."""

    threshold: AnalysisResult
    minimal_goals: Optional[int]
    kappa: Optional[Fraction] = None

    def to_dict(self) -> Dict[str, Any]:
        """Return the JSON object."""
        data = {"threshold": self.threshold.to_dict(), "minimal_goals": self.minimal_goals}
        if self.kappa is not None:
            data["kappa"] = {"value": format_fraction(self.kappa), "decimal": render(self.kappa)}
        return data


def _check_sizes(size_below: int, size_at: int, walk_len: int, reach_prob: Fraction) -> None:
    if size_below < 1 or size_at < 1:
        raise SpecError("size_below and size_at must be positive.")
    if walk_len < 1:
        raise SpecError(f"The walk length must be at least 1, got {walk_len}.")
    if not 0 <= reach_prob <= 1:
        raise SpecError(f"reach_prob must lie in [0, 1], got {reach_prob}.")


def goal_crossover_simple(
    size_below: int, size_at: int, walk_len: int, reach_prob: Number = 1
) -> Crossover:
    """Return the goal count ``l |S_d*| / (p_d* |S_<d*|)`` above which RRW wins.

    Holds on trees with goal depth at least 2.
    """
    reach_prob = to_fraction(reach_prob)
    _check_sizes(size_below, size_at, walk_len, reach_prob)
    if reach_prob == 0:
        return Crossover(AnalysisResult.infinity(), None)
    threshold = AnalysisResult(Fraction(walk_len * size_at) / (reach_prob * size_below))
    return Crossover(threshold, threshold.ceiling())


def goal_crossover_accurate(
    size_below: int, size_at: int, walk_len: int, reach_prob: Number = 1
) -> Crossover:
    """Return the tighter goal crossover accounting for BrFS's work at the goal depth.

    With ``s`` the simple threshold,
    ``kappa = max(1, (|S_d*| + 1)/(s + 1))`` and the threshold is
    ``l |S_d*| / (p_d* (|S_<d*| + kappa - 1))``.
    """
    simple = goal_crossover_simple(size_below, size_at, walk_len, reach_prob)
    if simple.threshold.infinite:
        return simple
    reach_prob = to_fraction(reach_prob)
    kappa = max(Fraction(1), Fraction(size_at + 1) / (simple.threshold.value + 1))
    threshold = AnalysisResult(
        Fraction(walk_len * size_at) / (reach_prob * (size_below + kappa - 1))
    )
    return Crossover(threshold, threshold.ceiling(), kappa)


def check_depth1_dominance(n: int, goals: int) -> Tuple[Fraction, Fraction]:
    """Return BrFS's expectation and RRW's exact expectation on a star of ``n`` leaves.

    Returns:
        Tuple[Fraction, Fraction]: ``1 + (n+1)/(g+1)`` and ``1 + n/g``; the
        first is always smaller.

    Raises:
        SpecError: Unless ``1 <= goals < n``.
    """
    if not 1 <= goals < n:
        raise SpecError(f"Need 1 <= g < n, got g={goals}, n={n}.")
    brfs_value = 1 + Fraction(n + 1, goals + 1)
    rrw_value = 1 + Fraction(n, goals)
    assert brfs_value < rrw_value
    return brfs_value, rrw_value


def depth1_crossover_prob(size_at: int, goals: int, walk_len: int) -> Fraction:
    """Return ``l (g + 1)/(|S_d*| + 1)``, the ``p_g`` RRW needs when the goal depth is 1."""
    if size_at < 1 or goals < 1 or walk_len < 1:
        raise SpecError("size_at, goals and walk_len must be positive.")
    return Fraction(walk_len * (goals + 1), size_at + 1)


def check_all_goals_condition(dstar: int, size_below: int, reach_prob: Number) -> bool:
    """Return True iff ``p_d* >= d*/|S_<d*|``.

    Then RRW is at least as fast as BrFS when every goal-depth state is a goal.
    """
    if dstar < 1 or size_below < 1:
        raise SpecError("dstar and size_below must be positive.")
    return to_fraction(reach_prob) >= Fraction(dstar, size_below)


def derivative_positivity_check(
    n: int, d: int, walk_len: int, g_range: Optional[Iterable[int]] = None
) -> bool:
    """Check that ``f(g) = N + (D+1)/(g+1) - L D/g - 1`` strictly increases over ``g_range``.

    Args:
        n (int): ``N``, the states above the goal depth.
        d (int): ``D``, the states at the goal depth.
        walk_len (int): ``L``, at least 2.
        g_range (Iterable[int], optional): Goal counts; ``1..D`` by default.
    """
    if n < 1 or d < 1 or walk_len < 2:
        raise SpecError("Need N >= 1, D >= 1 and L >= 2.")

    def f(g: int) -> Fraction:
        return n + Fraction(d + 1, g + 1) - Fraction(walk_len * d, g) - 1

    values = [f(g) for g in (g_range if g_range is not None else range(1, d + 1))]
    return all(later > earlier for earlier, later in zip(values, values[1:]))


def gap(inp: AnalysisInput, goals: Optional[int] = None) -> AnalysisResult:
    """Return ``expected_brfs - rrw_upper`` with ``p_g = p_d* g / |S_d*|``.

    The gap grows with the number of goals.

    Raises:
        SpecError: If ``p_d*`` is zero (the bound is infinite).
    """
    inp = inp.with_goals(inp.goals if goals is None else goals)
    if inp.reach_prob == 0:
        raise SpecError("The gap is undefined when no walk reaches the goal depth.")
    return AnalysisResult(expected_brfs(inp).value - rrw_upper(inp).value)


def ehc_brfs_bound(h0: int, branching: int, exit_distance: int) -> int:
    """Return ``h(s_I) * sum_{d <= D} B^d``, the worst case of EHC with BrFS escapes.

    Each of the at most ``h(s_I)`` escape searches examines at most every
    state within the maximum exit distance ``D`` with maximum branching ``B``.
    """
    if h0 < 0 or branching < 1 or exit_distance < 0:
        raise SpecError("Need h0 >= 0, B >= 1 and D >= 0.")
    return h0 * tree_size(branching, exit_distance)


def ehc_brfs_expected(spec: UhrChainSpec) -> AnalysisResult:
    """Return the sum over the UHRs of a chain of BrFS's expected escape runtime."""
    total = Fraction(0)
    for b, e, x in zip(spec.branching, spec.exit_depth, spec.exit_count):
        total += expected_brfs(AnalysisInput(tree_size(b, e - 1), b**e, x, e)).value
    return AnalysisResult(total)


def ehc_crrw_upper(spec: UhrChainSpec, walk_len: int) -> AnalysisResult:
    """Return ``sum_i (l/p_i + 1)``, the bound of EHC with constant-depth RRW escapes.

    ``p_i = x_i / b_i^e_i`` when ``l >= e_i``, otherwise the UHR cannot be
    escaped and the bound is infinite.
    """
    if walk_len < 1:
        raise SpecError(f"The walk length must be at least 1, got {walk_len}.")
    total = Fraction(0)
    for b, e, x in zip(spec.branching, spec.exit_depth, spec.exit_count):
        if walk_len < e:
            return AnalysisResult.infinity()
        total += walk_len / Fraction(x, b**e) + 1
    return AnalysisResult(total)
