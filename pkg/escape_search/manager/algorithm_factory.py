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

"""Registry turning algorithm descriptors into algorithm objects."""

from typing import Callable, Dict, List, Optional

from ..algorithms import (BreadthFirstSearch, ConstantDepth,
                          EnforcedHillClimbing, EscapeStrategy, LubyDepth,
                          RestartingRandomWalk, SearchAlgorithm)
from ..exceptions import SpecError

Builder = Callable[[Optional[str]], SearchAlgorithm]


def _integer(argument: Optional[str], what: str, default: Optional[int] = None) -> int:
    if argument is None or argument == "":
        if default is None:
            raise SpecError(f"Missing {what}.")
        return default
    try:
        return int(argument)
    except ValueError:
        raise SpecError(f"Invalid {what} '{argument}'.") from None


def _no_argument(name: str, argument: Optional[str]) -> None:
    if argument:
        raise SpecError(f"'{name}' takes no parameter, got '{argument}'.")


def _brfs(argument: Optional[str]) -> SearchAlgorithm:
    _no_argument("brfs", argument)
    return BreadthFirstSearch()


def _crrw(argument: Optional[str]) -> SearchAlgorithm:
    return RestartingRandomWalk(ConstantDepth(_integer(argument, "walk length")))


def _luby(argument: Optional[str]) -> SearchAlgorithm:
    return RestartingRandomWalk(LubyDepth(_integer(argument, "Luby multiplier", 1)))


def _ehc(argument: Optional[str]) -> SearchAlgorithm:
    kind, _, parameter = (argument or "").partition(":")
    if kind == "brfs":
        _no_argument("ehc:brfs", parameter)
        return EnforcedHillClimbing(EscapeStrategy.brfs())
    if kind == "crrw":
        return EnforcedHillClimbing(EscapeStrategy.constant(_integer(parameter, "walk length")))
    if kind == "luby":
        return EnforcedHillClimbing(
            EscapeStrategy.luby(_integer(parameter, "Luby multiplier", 1))
        )
    raise SpecError(f"Unknown escape strategy '{kind}'; expected brfs, crrw:<l> or luby:<m>.")


class AlgorithmFactory:
    """Class AlgorithmFactory.

    Descriptors are ``brfs``, ``crrw:<l>``, ``luby:<m>``, ``ehc:brfs``,
    ``ehc:crrw:<l>`` and ``ehc:luby:<m>``.
    """

    _factories: Dict[str, Builder] = {}

    @classmethod
    def register(cls, name: str, factory: Builder) -> None:
        """Register a new algorithm family at the factory."""
        cls._factories[name] = factory

    @classmethod
    def make(cls, descriptor: str) -> SearchAlgorithm:
        """Create the algorithm described by ``descriptor``.

        Raises:
            SpecError: On unknown families or bad parameters.
        """
        name, _, argument = descriptor.strip().lower().partition(":")
        try:
            factory = cls._factories[name]
        except KeyError:
            raise SpecError(
                f"Algorithm '{name}' not registered; expected one of {sorted(cls._factories)}."
            ) from None
        return factory(argument or None)

    @classmethod
    def names(cls) -> List[str]:
        """Return the registered families."""
        return sorted(cls._factories)


AlgorithmFactory.register("brfs", _brfs)
AlgorithmFactory.register("crrw", _crrw)
AlgorithmFactory.register("luby", _luby)
AlgorithmFactory.register("ehc", _ehc)
