#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Sparse multivariate polynomials with real coefficients over a block layout.

Values are immutable; every arithmetic result is re-canonicalized so that no
stored coefficient is smaller in magnitude than COEFF_EPS.
"""

import math
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from exceptions import InputError
from poly_core.layout import BlockLayout, PointLike, Variable
from poly_core.monomial import Monomial

# Terms below this magnitude are dropped after arithmetic
COEFF_EPS = 1e-14

Number = Union[int, float, np.floating, np.integer]


class Polynomial:
    """
    Map from Monomial to coefficient, tied to a BlockLayout.

    Args:
        terms: Mapping from Monomial to coefficient
        layout: Layout all variables must belong to
    """

    __slots__ = ("_terms", "_layout")

    def __init__(self, terms: Optional[Mapping[Monomial, Number]], layout: BlockLayout):
        clean: Dict[Monomial, float] = {}
        for mono, coef in (terms or {}).items():
            coef = float(coef)
            if not math.isfinite(coef):
                raise InputError(f"non-finite coefficient {coef} for {mono.to_text()}")
            if abs(coef) >= COEFF_EPS:
                clean[mono] = coef
        for mono in clean:
            for var in mono.variables:
                if not layout.has_variable(var):
                    raise InputError(f"variable x{var[0]}_{var[1]} is not part of the layout")
        self._terms = clean
        self._layout = layout

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, layout: BlockLayout) -> "Polynomial":
        return cls({}, layout)

    @classmethod
    def constant(cls, value: Number, layout: BlockLayout) -> "Polynomial":
        return cls({Monomial.one(): value}, layout)

    @classmethod
    def variable(cls, layout: BlockLayout, player: int, coord: int) -> "Polynomial":
        return cls({Monomial.of((player, coord)): 1.0}, layout)

    @classmethod
    def from_monomial(cls, mono: Monomial, layout: BlockLayout, coef: Number = 1.0) -> "Polynomial":
        return cls({mono: coef}, layout)

    @classmethod
    def from_exponent_dict(
        cls, coeffs: Mapping[Tuple[int, ...], Number], variables: Sequence[Variable], layout: BlockLayout
    ) -> "Polynomial":
        """
        Build a polynomial from dense exponent tuples over `variables`.
        """
        terms: Dict[Monomial, float] = {}
        for exps, coef in coeffs.items():
            mono = Monomial.from_exponents(exps, variables)
            terms[mono] = terms.get(mono, 0.0) + float(coef)
        return cls(terms, layout)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, float]:
        return MappingProxyType(self._terms)

    @property
    def layout(self) -> BlockLayout:
        return self._layout

    @property
    def degree(self) -> int:
        """
        Maximal term degree; the zero polynomial has degree 0.
        """
        return max((m.degree for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m.is_one() for m in self._terms)

    @property
    def constant_term(self) -> float:
        return self._terms.get(Monomial.one(), 0.0)

    def coefficient(self, mono: Monomial) -> float:
        return self._terms.get(mono, 0.0)

    def variables(self) -> Tuple[Variable, ...]:
        found = {v for m in self._terms for v in m.variables}
        return tuple(sorted(found))

    def players(self) -> Tuple[int, ...]:
        return tuple(sorted({v[0] for v in self.variables()}))

    def max_abs_coefficient(self, skip_constant: bool = False) -> float:
        values = [abs(c) for m, c in self._terms.items() if not (skip_constant and m.is_one())]
        return max(values, default=0.0)

    def coefficient_norm(self) -> float:
        """
        Infinity norm of the coefficient vector.
        """
        return self.max_abs_coefficient()

    def sorted_terms(self) -> List[Tuple[Monomial, float]]:
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def exponent_dict(self, variables: Sequence[Variable]) -> Dict[Tuple[int, ...], float]:
        """
        Dense exponent tuples over `variables` mapped to coefficients.

        Raises:
            InputError: If a term uses a variable outside `variables`
        """
        return {m.exponents(variables): c for m, c in self._terms.items()}

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def _coerce(self, other: Union["Polynomial", Number]) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._layout != self._layout:
                raise InputError("layout mismatch between polynomial operands")
            return other
        if isinstance(other, (int, float, np.integer, np.floating)):
            return Polynomial.constant(other, self._layout)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other: Union["Polynomial", Number]) -> "Polynomial":
        other = self._coerce(other)
        terms = dict(self._terms)
        for mono, coef in other._terms.items():
            terms[mono] = terms.get(mono, 0.0) + coef
        return Polynomial(terms, self._layout)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()}, self._layout)

    def __sub__(self, other: Union["Polynomial", Number]) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Union["Polynomial", Number]) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other: Union["Polynomial", Number]) -> "Polynomial":
        if isinstance(other, (int, float, np.integer, np.floating)):
            return self.scale(other)
        other = self._coerce(other)
        terms: Dict[Monomial, float] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = m1 * m2
                terms[mono] = terms.get(mono, 0.0) + c1 * c2
        return Polynomial(terms, self._layout)

    __rmul__ = __mul__

    def __truediv__(self, value: Number) -> "Polynomial":
        if isinstance(value, Polynomial):
            raise TypeError("polynomial division is not supported")
        return self.scale(1.0 / float(value))

    def __pow__(self, power: int) -> "Polynomial":
        if int(power) != power or power < 0:
            raise InputError(f"exponent must be a nonnegative integer, got {power}")
        result = Polynomial.constant(1.0, self._layout)
        base = self
        k = int(power)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, value: Number) -> "Polynomial":
        value = float(value)
        return Polynomial({m: c * value for m, c in self._terms.items()}, self._layout)

    # ------------------------------------------------------------------
    # evaluation and substitution
    # ------------------------------------------------------------------
    def eval(self, point: PointLike) -> float:
        """
        Evaluate at a point.

        Args:
            point: Any point form accepted by BlockLayout.assignment

        Returns:
            The value of the finite sum

        Raises:
            InputError: If a variable of the support has no value
        """
        values = self._layout.assignment(point)
        total = 0.0
        for mono, coef in self._terms.items():
            term = coef
            for var, power in mono.powers:
                if var not in values:
                    raise InputError(f"missing assignment for x{var[0]}_{var[1]}")
                term *= values[var] ** power
            total += term
        return total

    def evaluate_batch(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluate at many full points at once.

        Args:
            points: Array of shape (m, total_dim) in layout order

        Returns:
            Array of m values
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self._layout.total_dim:
            raise InputError(f"points have dimension {pts.shape[1]}, layout expects {self._layout.total_dim}")
        out = np.zeros(pts.shape[0])
        for mono, coef in self._terms.items():
            term = np.full(pts.shape[0], coef)
            for var, power in mono.powers:
                term = term * pts[:, self._layout.flat_index(var)] ** power
            out += term
        return out

    def partial_eval(self, values: Mapping[Variable, float]) -> "Polynomial":
        """
        Substitute numbers for the variables present in `values`.
        """
        terms: Dict[Monomial, float] = {}
        for mono, coef in self._terms.items():
            kept = []
            for var, power in mono.powers:
                if var in values:
                    coef *= values[var] ** power
                else:
                    kept.append((var, power))
            rest = Monomial(kept)
            terms[rest] = terms.get(rest, 0.0) + coef
        return Polynomial(terms, self._layout)

    def restrict(self, player: int, fixed: PointLike) -> "Polynomial":
        """
        Fix every block except `player`; the result mentions block `player` only.

        Args:
            player: The free block i
            fixed: Values of all other blocks (a full point is accepted,
                its block i is ignored)

        Raises:
            InputError: If a needed variable of another block is missing
        """
        values = self._layout.assignment(fixed)
        others = {v: x for v, x in values.items() if v[0] != player}
        for mono in self._terms:
            for var in mono.variables:
                if var[0] != player and var not in others:
                    raise InputError(f"restrict: missing value for x{var[0]}_{var[1]}")
        return self.partial_eval(others)

    def rename(self, mapping: Mapping[Variable, Variable], layout: Optional[BlockLayout] = None) -> "Polynomial":
        """
        Rename variables (e.g. x_i -> y_i) and optionally move to a new layout.
        """
        target = layout or self._layout
        terms: Dict[Monomial, float] = {}
        for mono, coef in self._terms.items():
            renamed = mono.rename(mapping)
            terms[renamed] = terms.get(renamed, 0.0) + coef
        return Polynomial(terms, target)

    def relayout(self, layout: BlockLayout) -> "Polynomial":
        """
        Same polynomial viewed in a larger layout.
        """
        return Polynomial(dict(self._terms), layout)

    # ------------------------------------------------------------------
    # comparison and text
    # ------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self._layout == other._layout and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._layout, frozenset(self._terms.items())))

    def almost_equal(self, other: "Polynomial", tol: float = 1e-12) -> bool:
        return (self - other).coefficient_norm() <= tol

    def to_text(self, precision: Optional[int] = None) -> str:
        """
        Render in the problem-file expression syntax.

        Args:
            precision: Decimal digits; None gives round-trip exact output
        """
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for mono, coef in self.sorted_terms():
            magnitude = abs(coef)
            if precision is None:
                number = repr(magnitude)
            else:
                number = f"{magnitude:.{precision}f}"
            if mono.is_one():
                body = number
            elif precision is None and magnitude == 1.0:
                body = mono.to_text()
            else:
                body = f"{number}*{mono.to_text()}"
            sign = "-" if coef < 0 else "+"
            if not pieces:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()})"


def variables_polys(layout: BlockLayout, player: int) -> List[Polynomial]:
    """
    The coordinate polynomials x_{i,1}, ..., x_{i,n_i} of one block.
    """
    return [Polynomial.variable(layout, player, j) for j in range(1, layout.dim(player) + 1)]


def squared_distance(layout: BlockLayout, player: int, center: Sequence[float]) -> Polynomial:
    """
    ||x_i - center||^2 as a polynomial in block i.
    """
    total = Polynomial.zero(layout)
    for var_poly, c in zip(variables_polys(layout, player), center):
        diff = var_poly - float(c)
        total = total + diff * diff
    return total


def poly_sum(polys: Iterable[Polynomial], layout: BlockLayout) -> Polynomial:
    total = Polynomial.zero(layout)
    for p in polys:
        total = total + p
    return total
