#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Variable block layout: how the joint strategy vector x = (x_1, ..., x_N)
splits into per-player blocks.

Variables are addressed as (player, coordinate) pairs, both 1-based.
Flat indices only appear when a point is handed over as a vector.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple, Union, Any

import numpy as np

from exceptions import InputError

Variable = Tuple[int, int]

# A point may be a full vector, a map from variables, or a map from players
PointLike = Union[Sequence[float], np.ndarray, Mapping[Any, Any]]


@dataclass(frozen=True)
class BlockLayout:
    """
    Ordered list of (player index, block dimension) pairs.

    Args:
        blocks: Tuple of (i, n_i) with players numbered 1..N in order
    """

    blocks: Tuple[Tuple[int, int], ...]
    _index: Dict[Variable, int] = field(init=False, repr=False, compare=False)
    _offsets: Dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        blocks = tuple((int(i), int(n)) for i, n in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise InputError("layout needs at least one block")
        for position, (player, dim) in enumerate(blocks, start=1):
            if player != position:
                raise InputError(f"player indices must be 1..N in order, got {player} at position {position}")
            if dim < 1:
                raise InputError(f"block x{player} has dimension {dim}, expected >= 1")

        index: Dict[Variable, int] = {}
        offsets: Dict[int, int] = {}
        flat = 0
        for player, dim in blocks:
            offsets[player] = flat
            for coord in range(1, dim + 1):
                index[(player, coord)] = flat
                flat += 1
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_offsets", offsets)

    @classmethod
    def from_dims(cls, dims: Sequence[int]) -> "BlockLayout":
        """
        Build a layout from the list of block dimensions (n_1, ..., n_N).
        """
        return cls(tuple((i, int(n)) for i, n in enumerate(dims, start=1)))

    @property
    def n_players(self) -> int:
        return len(self.blocks)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(n for _, n in self.blocks)

    @property
    def total_dim(self) -> int:
        return len(self._index)

    @property
    def variables(self) -> Tuple[Variable, ...]:
        return tuple(self._index.keys())

    def dim(self, player: int) -> int:
        self._check_player(player)
        return self.blocks[player - 1][1]

    def offset(self, player: int) -> int:
        self._check_player(player)
        return self._offsets[player]

    def block_variables(self, player: int) -> Tuple[Variable, ...]:
        """
        Variables of one player's block in coordinate order.
        """
        return tuple((player, j) for j in range(1, self.dim(player) + 1))

    def block_slice(self, player: int) -> slice:
        start = self.offset(player)
        return slice(start, start + self.dim(player))

    def flat_index(self, var: Variable) -> int:
        try:
            return self._index[var]
        except KeyError:
            raise InputError(f"variable x{var[0]}_{var[1]} is not part of the layout") from None

    def has_variable(self, var: Variable) -> bool:
        return var in self._index

    def with_copy_block(self, player: int) -> "BlockLayout":
        """
        Layout extended by one extra block N+1 with the dimension of `player`.
        Used to hold the copy y_i of a player's strategy.
        """
        return BlockLayout(self.blocks + ((self.n_players + 1, self.dim(player)),))

    def vector(self, point: PointLike) -> np.ndarray:
        """
        Convert a full point into a flat vector.

        Args:
            point: Flat vector, {(i, j): value} map, or {i: block vector} map

        Returns:
            Flat numpy vector of length total_dim

        Raises:
            InputError: If the point does not cover every variable
        """
        if isinstance(point, Mapping):
            values = self.assignment(point)
            missing = [v for v in self._index if v not in values]
            if missing:
                i, j = missing[0]
                raise InputError(f"missing assignment for x{i}_{j}")
            out = np.empty(self.total_dim)
            for var, pos in self._index.items():
                out[pos] = values[var]
            return out
        arr = np.asarray(point, dtype=float).reshape(-1)
        if arr.shape[0] != self.total_dim:
            raise InputError(f"point has dimension {arr.shape[0]}, layout expects {self.total_dim}")
        return arr

    def assignment(self, point: PointLike) -> Dict[Variable, float]:
        """
        Convert a (possibly partial) point into a {(i, j): value} map.

        A mapping keyed by player index holds whole blocks; a flat sequence
        must be a full point.
        """
        if isinstance(point, Mapping):
            values: Dict[Variable, float] = {}
            for key, value in point.items():
                if isinstance(key, tuple):
                    values[(int(key[0]), int(key[1]))] = float(value)
                else:
                    player = int(key)
                    block = np.asarray(value, dtype=float).reshape(-1)
                    if block.shape[0] != self.dim(player):
                        raise InputError(
                            f"block x{player} has dimension {self.dim(player)}, got {block.shape[0]} values"
                        )
                    for j, v in enumerate(block, start=1):
                        values[(player, j)] = float(v)
            return values
        arr = self.vector(point)
        return {var: float(arr[pos]) for var, pos in self._index.items()}

    def split(self, point: PointLike) -> Dict[int, np.ndarray]:
        """
        Split a full point into per-player block vectors.
        """
        arr = self.vector(point)
        return {player: arr[self.block_slice(player)].copy() for player, _ in self.blocks}

    def join(self, blocks: Mapping[int, Sequence[float]]) -> np.ndarray:
        """
        Inverse of split.
        """
        out = np.empty(self.total_dim)
        for player, _ in self.blocks:
            out[self.block_slice(player)] = np.asarray(blocks[player], dtype=float).reshape(-1)
        return out

    def _check_player(self, player: int) -> None:
        if not 1 <= player <= self.n_players:
            raise InputError(f"player {player} out of range 1..{self.n_players}")

    def describe(self) -> List[str]:
        return [f"x{i} in R^{n}" for i, n in self.blocks]
