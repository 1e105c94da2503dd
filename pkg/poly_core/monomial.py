#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Monomials over (player, coordinate) variables and the graded monomial bases.
"""

from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from exceptions import InputError
from poly_core.layout import BlockLayout, Variable


class Monomial:
    """
    Product of variable powers in canonical sparse form.

    Zero exponents are never stored; powers are kept sorted by variable so
    equal monomials have equal representations.

    Args:
        powers: Mapping or iterable of ((i, j), power) pairs
    """

    __slots__ = ("_powers", "_degree", "_hash")

    def __init__(self, powers: Union[Mapping[Variable, int], Iterable[Tuple[Variable, int]]] = ()):
        items = powers.items() if isinstance(powers, Mapping) else powers
        merged: Dict[Variable, int] = {}
        for var, power in items:
            power = int(power)
            if power < 0:
                raise InputError(f"negative exponent {power} for x{var[0]}_{var[1]}")
            if power:
                key = (int(var[0]), int(var[1]))
                merged[key] = merged.get(key, 0) + power
        self._powers: Tuple[Tuple[Variable, int], ...] = tuple(sorted(merged.items()))
        self._degree = sum(p for _, p in self._powers)
        self._hash = hash(self._powers)

    @classmethod
    def one(cls) -> "Monomial":
        return _ONE

    @classmethod
    def of(cls, var: Variable, power: int = 1) -> "Monomial":
        return cls(((var, power),))

    @property
    def powers(self) -> Tuple[Tuple[Variable, int], ...]:
        return self._powers

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def variables(self) -> Tuple[Variable, ...]:
        return tuple(v for v, _ in self._powers)

    def power(self, var: Variable) -> int:
        for v, p in self._powers:
            if v == var:
                return p
        return 0

    def is_one(self) -> bool:
        return not self._powers

    def sort_key(self) -> Tuple[int, Tuple[Tuple[Variable, int], ...]]:
        """
        Graded key: total degree first, then the variable with the larger
        exponent on the earlier variable comes first. Variables are ordered
        by block index, then coordinate index.
        """
        return (self._degree, tuple((v, -p) for v, p in self._powers))

    def exponents(self, variables: Sequence[Variable]) -> Tuple[int, ...]:
        """
        Dense exponent tuple over the given variable list.

        Raises:
            InputError: If the monomial uses a variable outside the list
        """
        position = {v: k for k, v in enumerate(variables)}
        out = [0] * len(variables)
        for var, p in self._powers:
            if var not in position:
                raise InputError(f"variable x{var[0]}_{var[1]} is outside the requested block")
            out[position[var]] = p
        return tuple(out)

    @classmethod
    def from_exponents(cls, exponents: Sequence[int], variables: Sequence[Variable]) -> "Monomial":
        return cls(zip(variables, exponents))

    def rename(self, mapping: Mapping[Variable, Variable]) -> "Monomial":
        return Monomial([(mapping.get(v, v), p) for v, p in self._powers])

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(self._powers + other._powers)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._powers == other._powers

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def to_text(self) -> str:
        if not self._powers:
            return "1"
        parts = []
        for (i, j), p in self._powers:
            parts.append(f"x{i}_{j}" if p == 1 else f"x{i}_{j}^{p}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self.to_text()})"


_ONE = Monomial()


def exponent_basis(n: int, d: int) -> List[Tuple[int, ...]]:
    """
    Dense exponent tuples of all monomials of degree <= d in n variables,
    in graded order (degree, then larger power on earlier variables first).

    Args:
        n: Number of variables
        d: Maximal degree

    Returns:
        List of length C(n + d, d)
    """
    if d < 0:
        raise InputError(f"basis degree must be >= 0, got {d}")
    out: List[Tuple[int, ...]] = []
    for k in range(d + 1):
        for combo in combinations_with_replacement(range(n), k):
            exps = [0] * n
            for idx in combo:
                exps[idx] += 1
            out.append(tuple(exps))
    return out


def monomial_basis(variables: Sequence[Variable], d: int) -> List[Monomial]:
    """
    Graded monomial vector [v]_d over an explicit variable list.
    """
    return [Monomial.from_exponents(e, variables) for e in exponent_basis(len(variables), d)]


def basis(layout: BlockLayout, player: int, d: int) -> List[Monomial]:
    """
    The monomial vector [x_i]_d of one player's block.

    Args:
        layout: Block layout
        player: Player index i
        d: Degree

    Returns:
        Ordered list of C(n_i + d, d) monomials
    """
    return monomial_basis(layout.block_variables(player), d)
