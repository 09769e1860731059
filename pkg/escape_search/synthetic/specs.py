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

"""Parametric specs of synthetic search tasks and their JSON form."""

from dataclasses import asdict, dataclass, field
from typing import Any, ClassVar, Dict, List, Type

from ..exceptions import SpecError

#: Largest number of states a synthetic task may have.
MAX_STATES = 2**62

_U64 = 2**64


def _check_seed(name: str, value: int) -> None:
    if not 0 <= value < _U64:
        raise SpecError(f"{name} must be a 64-bit unsigned integer, got {value}.")


def tree_size(b: int, depth: int) -> int:
    """Return the number of states of a full tree with branching ``b`` down to ``depth``."""
    if b == 1:
        return depth + 1
    return (b ** (depth + 1) - 1) // (b - 1)


class TaskSpec:
    """Base class of the synthetic task specs."""

    kind: ClassVar[str] = ""

    def to_dict(self) -> Dict[str, Any]:
        """Return the JSON object of the spec, including its ``kind``."""
        return {"kind": self.kind, **asdict(self)}


@dataclass(frozen=True)
class TreeTaskSpec(TaskSpec):
    """Directed tree with constant branching and ``g`` goals at depth ``dstar``.

    Attributes:
        b (int): Branching factor.
        dstar (int): Goal depth.
        g (int): Number of goals at the goal depth.
        goal_seed (int): Seed of the goal placement.
        deeper_levels (int): Levels below the goal depth.
        deep_goals (int): Extra goals placed at the deepest level.
    """

    kind: ClassVar[str] = "tree"

    b: int
    dstar: int
    g: int = 1
    goal_seed: int = 0
    deeper_levels: int = 0
    deep_goals: int = 0

    def __post_init__(self) -> None:
        """Validate the spec."""
        if self.b < 1:
            raise SpecError(f"The branching factor must be at least 1, got {self.b}.")
        if self.dstar < 1:
            raise SpecError(f"The goal depth must be at least 1, got {self.dstar}.")
        if self.deeper_levels < 0:
            raise SpecError(f"deeper_levels must be non-negative, got {self.deeper_levels}.")
        _check_seed("goal_seed", self.goal_seed)
        if tree_size(self.b, self.max_depth) > MAX_STATES:
            raise SpecError(
                f"A tree with b={self.b} down to depth {self.max_depth} exceeds 2^62 states."
            )
        if not 1 <= self.g <= self.size_at:
            raise SpecError(f"g must lie in [1, {self.size_at}], got {self.g}.")
        if self.deep_goals < 0:
            raise SpecError(f"deep_goals must be non-negative, got {self.deep_goals}.")
        if self.deep_goals and not self.deeper_levels:
            raise SpecError("deep_goals needs deeper_levels >= 1.")
        if self.deep_goals > self.b ** self.max_depth:
            raise SpecError(f"deep_goals exceeds the {self.b ** self.max_depth} deepest states.")

    @property
    def max_depth(self) -> int:
        """Return the depth of the leaves."""
        return self.dstar + self.deeper_levels

    @property
    def size_at(self) -> int:
        """Return |S_d*|."""
        return self.b ** self.dstar

    @property
    def size_below(self) -> int:
        """Return |S_<d*|."""
        return tree_size(self.b, self.dstar - 1)


@dataclass(frozen=True)
class StarTaskSpec(TaskSpec):
    """The initial state has ``n`` successors, ``g`` of them goals, all without successors."""

    kind: ClassVar[str] = "star"

    n: int
    g: int = 1
    goal_seed: int = 0

    def __post_init__(self) -> None:
        """Validate the spec."""
        if self.n < 1:
            raise SpecError(f"n must be at least 1, got {self.n}.")
        if not 1 <= self.g <= self.n:
            raise SpecError(f"g must lie in [1, {self.n}], got {self.g}.")
        if self.n > MAX_STATES:
            raise SpecError("A star with more than 2^62 leaves is not supported.")
        _check_seed("goal_seed", self.goal_seed)

    @property
    def dstar(self) -> int:
        """Return the goal depth (always 1)."""
        return 1

    @property
    def size_at(self) -> int:
        """Return |S_d*|."""
        return self.n

    @property
    def size_below(self) -> int:
        """Return |S_<d*|."""
        return 1


@dataclass(frozen=True)
class DeadLeafTreeSpec(TaskSpec):
    """Tree where states above the goal depth may be dead ends.

    Each non-root state shallower than ``dstar`` has no successors with
    probability ``dead_prob``, realized from ``structure_seed``.
    """

    kind: ClassVar[str] = "dead_leaf_tree"

    b: int
    dstar: int
    g: int = 1
    goal_seed: int = 0
    dead_prob: float = 0.0
    structure_seed: int = 0

    def __post_init__(self) -> None:
        """Validate the spec."""
        if self.b < 1:
            raise SpecError(f"The branching factor must be at least 1, got {self.b}.")
        if self.dstar < 1:
            raise SpecError(f"The goal depth must be at least 1, got {self.dstar}.")
        if not 0.0 <= self.dead_prob < 1.0:
            raise SpecError(f"dead_prob must lie in [0, 1), got {self.dead_prob}.")
        if tree_size(self.b, self.dstar) > MAX_STATES:
            raise SpecError(
                f"A tree with b={self.b} down to depth {self.dstar} exceeds 2^62 states."
            )
        if not 1 <= self.g <= self.b ** self.dstar:
            raise SpecError(f"g must lie in [1, {self.b ** self.dstar}], got {self.g}.")
        _check_seed("goal_seed", self.goal_seed)
        _check_seed("structure_seed", self.structure_seed)


@dataclass(frozen=True)
class UhrChainSpec(TaskSpec):
    """A chain of ``k`` uninformative heuristic regions.

    UHR ``i`` is a full tree with branching ``branching[i]`` whose depth
    ``exit_depth[i]`` holds ``exit_count[i]`` escape states; each escape is
    the root of UHR ``i + 1`` and the escapes of the last UHR are goals.
    Every other state at that depth has no successors.
    """

    kind: ClassVar[str] = "uhr_chain"

    k: int
    branching: List[int] = field(default_factory=list)
    exit_depth: List[int] = field(default_factory=list)
    exit_count: List[int] = field(default_factory=list)
    seed: int = 0

    def __post_init__(self) -> None:
        """Validate the spec."""
        if self.k < 1:
            raise SpecError(f"k must be at least 1, got {self.k}.")
        for name in ("branching", "exit_depth", "exit_count"):
            values = getattr(self, name)
            if len(values) != self.k:
                raise SpecError(f"{name} needs {self.k} values, got {len(values)}.")
            # lists from JSON become tuples so the spec stays hashable and immutable
            object.__setattr__(self, name, tuple(int(v) for v in values))
        for i, (b, e, x) in enumerate(zip(self.branching, self.exit_depth, self.exit_count)):
            if b < 1 or e < 1:
                raise SpecError(f"UHR {i}: branching and exit depth must be at least 1.")
            if not 1 <= x <= b**e:
                raise SpecError(f"UHR {i}: exit count must lie in [1, {b ** e}], got {x}.")
        _check_seed("seed", self.seed)

    @classmethod
    def uniform(cls, k: int, b: int, e: int, x: int = 1, seed: int = 0) -> "UhrChainSpec":
        """Return a chain of ``k`` identical UHRs."""
        return cls(k, [b] * k, [e] * k, [x] * k, seed)

    @property
    def max_exit_depth(self) -> int:
        """Return D(T), the largest exit depth."""
        return max(self.exit_depth)

    def to_dict(self) -> Dict[str, Any]:
        """Return the JSON object of the spec."""
        data = super().to_dict()
        for name in ("branching", "exit_depth", "exit_count"):
            data[name] = list(data[name])
        return data


SPEC_TYPES: Dict[str, Type[TaskSpec]] = {
    spec.kind: spec for spec in (TreeTaskSpec, StarTaskSpec, DeadLeafTreeSpec, UhrChainSpec)
}


def spec_from_dict(data: Dict[str, Any]) -> TaskSpec:
    """Build a spec from its JSON object.

    Args:
        data (Dict[str, Any]): Object with a ``kind`` key and the spec fields.

    Raises:
        SpecError: On an unknown kind or unknown/missing fields.
    """
    payload = dict(data)
    kind = payload.pop("kind", None)
    try:
        spec_type = SPEC_TYPES[kind]
    except KeyError:
        raise SpecError(
            f"Unknown task kind {kind!r}; expected one of {sorted(SPEC_TYPES)}."
        ) from None
    try:
        return spec_type(**payload)
    except TypeError as exc:
        raise SpecError(f"Invalid {kind} spec: {exc}") from exc
