"""Sparse multivariate polynomials with exact rational coefficients.

Just enough machinery for substitution automorphisms of the Cox coordinate
ring: coordinate variables ``x1..xm`` plus a few scalar parameter variables
(for symbolic identity checking), addition, multiplication, powers and
substitution of the coordinate variables.  A configurable total-degree cap
guards against runaway compositions; exceeding it raises rather than
truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import DegreeCapError, InputError

Scalar = Union[int, Fraction]

DEFAULT_DEGREE_CAP = 64


@dataclass(frozen=True)
class PolyRing:
    """Fixed variable layout: ``num_coords`` coordinates then named parameters."""

    num_coords: int
    params: tuple[str, ...] = ()
    degree_cap: int = DEFAULT_DEGREE_CAP

    @property
    def num_vars(self) -> int:
        return self.num_coords + len(self.params)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def const(self, value: Scalar) -> "Poly":
        value = Fraction(value)
        if value == 0:
            return self.zero()
        return Poly(self, {(0,) * self.num_vars: value})

    def one(self) -> "Poly":
        return self.const(1)

    def var(self, i: int) -> "Poly":
        if not 0 <= i < self.num_coords:
            raise InputError(f"no coordinate variable {i}")
        mono = tuple(1 if j == i else 0 for j in range(self.num_vars))
        return Poly(self, {mono: Fraction(1)})

    def param(self, name: str) -> "Poly":
        try:
            idx = self.num_coords + self.params.index(name)
        except ValueError:
            raise InputError(f"no parameter {name!r}") from None
        mono = tuple(1 if j == idx else 0 for j in range(self.num_vars))
        return Poly(self, {mono: Fraction(1)})

    def monomial(self, coord_exponents: Sequence[int]) -> "Poly":
        if len(coord_exponents) != self.num_coords or any(e < 0 for e in coord_exponents):
            raise InputError("bad coordinate exponent vector")
        mono = tuple(coord_exponents) + (0,) * len(self.params)
        return Poly(self, {mono: Fraction(1)})

    def var_name(self, i: int) -> str:
        if i < self.num_coords:
            return f"x{i + 1}"
        return self.params[i - self.num_coords]


class Poly:
    """Immutable sparse polynomial; terms map exponent tuples to ``Fraction``."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], Fraction]):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", {m: c for m, c in terms.items() if c != 0})

    def __setattr__(self, *_):
        raise AttributeError("Poly is immutable")

    # -- basic predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise InputError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        other = self._coerce(other)
        cap = self.ring.degree_cap
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                if sum(mono) > cap:
                    raise DegreeCapError(
                        f"total degree exceeded the cap of {cap} during multiplication"
                    )
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise InputError("negative polynomial power")
        result = self.ring.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base_needed = e > 1
            if base_needed:
                base = base * base
            e >>= 1
        return result

    # -- substitution and inspection ----------------------------------------

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Replace coordinate variable ``i`` by ``images[i]``; parameters stay."""
        ring = self.ring
        if len(images) != ring.num_coords:
            raise InputError("need one image per coordinate variable")
        powers: list[dict[int, Poly]] = [dict() for _ in range(ring.num_coords)]

        def power_of(i: int, e: int) -> "Poly":
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        total = ring.zero()
        for mono, coef in self.terms.items():
            term = ring.const(coef)
            for i in range(ring.num_coords):
                if mono[i]:
                    term = term * power_of(i, mono[i])
            param_part = (0,) * ring.num_coords + mono[ring.num_coords:]
            if any(param_part):
                term = term * Poly(ring, {param_part: Fraction(1)})
            total = total + term
        return total

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def coordinate_support(self) -> frozenset[tuple[int, ...]]:
        """Exponent vectors restricted to the coordinate variables."""
        nc = self.ring.num_coords
        return frozenset(m[:nc] for m in self.terms)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        bits = []
        for mono in sorted(self.terms):
            coef = self.terms[mono]
            vars_part = "*".join(
                f"{self.ring.var_name(i)}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(mono)
                if e
            )
            if not vars_part:
                bits.append(str(coef))
            elif coef == 1:
                bits.append(vars_part)
            elif coef == -1:
                bits.append(f"-{vars_part}")
            else:
                bits.append(f"{coef}*{vars_part}")
        return " + ".join(bits).replace("+ -", "- ")
