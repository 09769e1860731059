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

"""Splittable random streams."""

from typing import List, Sequence, TypeVar

import numpy as np

from ..exceptions import SpecError

T = TypeVar("T")

_U64 = 2**64
_BUFFER_SIZE = 256
_SMALL_RANGE = 2**32


class RngStream:
    """A reproducible random stream identified by ``(master_seed, stream_index)``.

    The stream is a numpy :class:`~numpy.random.Generator` over the
    counter-based Philox bit generator, keyed by
    ``SeedSequence(master_seed, spawn_key=(stream_index,))``. Equal pairs give
    identical sequences; different stream indices give independent ones.
    """

    def __init__(self, master_seed: int, stream_index: int = 0) -> None:
        """Create the stream.

        Args:
            master_seed (int): 64-bit unsigned seed of the experiment.
            stream_index (int): 64-bit unsigned index of the stream.
        """
        for name, value in (("master_seed", master_seed), ("stream_index", stream_index)):
            if not 0 <= value < _U64:
                raise SpecError(f"{name} must be a 64-bit unsigned integer, got {value}.")
        self.master_seed = int(master_seed)
        self.stream_index = int(stream_index)
        sequence = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,))
        self._generator = np.random.Generator(np.random.Philox(sequence))
        self._buffer: List[float] = []
        self._position = 0

    def _uniform(self) -> float:
        if self._position == len(self._buffer):
            self._buffer = self._generator.random(_BUFFER_SIZE).tolist()
            self._position = 0
        value = self._buffer[self._position]
        self._position += 1
        return value

    def random(self) -> float:
        """Return a float uniformly drawn from [0, 1)."""
        return self._uniform()

    def below(self, n: int) -> int:
        """Return an integer uniformly drawn from ``range(n)``."""
        if n <= 0:
            raise SpecError(f"Cannot draw from an empty range (n={n}).")
        if n == 1:
            return 0
        if n <= _SMALL_RANGE:
            return min(int(self._uniform() * n), n - 1)
        return int(self._generator.integers(0, n, dtype=np.uint64))

    def choice(self, items: Sequence[T]) -> T:
        """Return an element of ``items`` chosen uniformly."""
        return items[self.below(len(items))]

    def sample_indices(self, population: int, k: int) -> List[int]:
        """Return a uniformly random ``k``-subset of ``range(population)``, sorted.

        Uses Floyd's subset sampling, so memory is ``O(k)`` whatever the
        population size.
        """
        if not 0 <= k <= population:
            raise SpecError(f"Cannot sample {k} items out of {population}.")
        chosen = set()
        for j in range(population - k, population):
            t = self.below(j + 1)
            chosen.add(j if t in chosen else t)
        return sorted(chosen)

    def spawn(self, stream_index: int) -> "RngStream":
        """Return the stream with the same master seed and another index."""
        return RngStream(self.master_seed, stream_index)

    def __repr__(self) -> str:
        """Stream representation."""
        return f"<RngStream master_seed={self.master_seed} stream_index={self.stream_index}>"
