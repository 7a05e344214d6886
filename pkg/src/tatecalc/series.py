"""Truncated (Laurent-tailed) formal series over pluggable exact coefficient rings.

A TruncSeries stores coefficients for exponents low..order and carries its
reliable order as data: every binary operation computes the output's order
pessimistically from its inputs, and reading past the reliable order raises
PrecisionError.  Coefficients below `low` are exactly zero by construction.

Coefficient rings are described by a Ring record of callables, so the same
engine runs over Q, Q[x], Q[x,y], rational functions of beta, Laurent rings,
divided powers, and numerical polynomials.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Callable, Sequence

from .basis import DividedPowerElem, NumericalPoly
from .errors import (
    CapabilityError,
    DomainError,
    InexactDivisionError,
    NotInvertibleError,
    PrecisionError,
    RingMismatchError,
)
from .laurent import LaurentPoly
from .multipoly import MultiPoly, RationalFunction


@dataclass(frozen=True)
class Ring:
    """Operations contract for a coefficient ring.

    `rational` marks rings with exact division by every nonzero integer;
    exp/log are typed errors without it.  `inv` and `div_exact` are partial:
    they raise NotInvertibleError / InexactDivisionError where undefined.
    """

    name: str
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    mul: Callable[[Any, Any], Any]
    eq: Callable[[Any, Any], bool]
    div_int: Callable[[Any, int], Any]
    rational: bool = True
    inv: Callable[[Any], Any] | None = None
    div_exact: Callable[[Any, Any], Any] | None = None
    from_int: Callable[[int], Any] | None = None
    render: Callable[[Any], str] | None = None
    to_json: Callable[[Any], Any] | None = None

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def is_one(self, a) -> bool:
        return self.eq(a, self.one)

    def int_elem(self, n: int):
        if self.from_int is not None:
            return self.from_int(n)
        return self.mul(self.one, n)

    def text(self, a) -> str:
        return self.render(a) if self.render else str(a)

    def json(self, a):
        if self.to_json is not None:
            return self.to_json(a)
        if hasattr(a, "to_json"):
            return a.to_json()
        f = Fraction(a)
        return [str(f.numerator), str(f.denominator)]


def _frac_json(a) -> list[str]:
    f = Fraction(a)
    return [str(f.numerator), str(f.denominator)]


QQ = Ring(
    name="QQ",
    zero=Fraction(0),
    one=Fraction(1),
    add=operator.add,
    neg=operator.neg,
    mul=operator.mul,
    eq=operator.eq,
    div_int=lambda a, n: a / n,
    inv=lambda a: Fraction(1) / a,
    div_exact=lambda a, b: a / b,
    from_int=Fraction,
    to_json=_frac_json,
)


def _zz_div_int(a: int, n: int) -> int:
    if a % n:
        raise InexactDivisionError(f"{a} is not divisible by {n}")
    return a // n


def _zz_inv(a: int) -> int:
    if a in (1, -1):
        return a
    raise NotInvertibleError(f"{a} is not a unit in Z")


ZZ = Ring(
    name="ZZ",
    zero=0,
    one=1,
    add=operator.add,
    neg=operator.neg,
    mul=operator.mul,
    eq=operator.eq,
    div_int=_zz_div_int,
    rational=False,
    inv=_zz_inv,
    div_exact=_zz_div_int,
    from_int=int,
    to_json=_frac_json,
)


def poly_ring(*gens: str) -> Ring:
    gens = tuple(gens)
    return Ring(
        name="QQ[" + ",".join(gens) + "]",
        zero=MultiPoly.zero(gens),
        one=MultiPoly.const(gens, 1),
        add=operator.add,
        neg=operator.neg,
        mul=operator.mul,
        eq=operator.eq,
        div_int=lambda a, n: a.div_int(n),
        inv=_poly_inv,
        div_exact=lambda a, b: a.div_exact(b),
        from_int=lambda n: MultiPoly.const(gens, n),
    )


def _poly_inv(a: MultiPoly) -> MultiPoly:
    if not a.is_constant() or a.is_zero():
        raise NotInvertibleError(f"{a} is not a unit in the polynomial ring")
    return MultiPoly.const(a.gens, Fraction(1) / a.constant_value())


def ratfun_ring(gen: str = "beta") -> Ring:
    return Ring(
        name=f"QQ({gen})",
        zero=RationalFunction.const(gen, 0),
        one=RationalFunction.const(gen, 1),
        add=operator.add,
        neg=operator.neg,
        mul=operator.mul,
        eq=operator.eq,
        div_int=lambda a, n: a.div_int(n),
        inv=lambda a: a.inverse(),
        div_exact=lambda a, b: a / b,
        from_int=lambda n: RationalFunction.const(gen, n),
    )


def laurent_coeff_ring(var: str, integral: bool = False) -> Ring:
    base = "ZZ" if integral else "QQ"

    def div_int(a: LaurentPoly, n: int) -> LaurentPoly:
        return a.div_scalar_exact(n)

    return Ring(
        name=f"{base}[{var}^±1]",
        zero=LaurentPoly.zero(var),
        one=LaurentPoly.one(var),
        add=operator.add,
        neg=operator.neg,
        mul=operator.mul,
        eq=operator.eq,
        div_int=div_int,
        rational=not integral,
        inv=lambda a: a.inverse(),
        div_exact=lambda a, b: a.div_exact(b),
        from_int=lambda n: LaurentPoly(var, {0: n}),
    )


def divided_power_ring() -> Ring:
    return Ring(
        name="Z[b_*]",
        zero=DividedPowerElem.zero(),
        one=DividedPowerElem.one(),
        add=operator.add,
        neg=operator.neg,
        mul=operator.mul,
        eq=operator.eq,
        div_int=lambda a, n: a.div_int_exact(n),
        rational=False,
        from_int=lambda n: DividedPowerElem({0: n}),
    )


def numerical_ring() -> Ring:
    return Ring(
        name="Z[beta_*]",
        zero=NumericalPoly.zero(),
        one=NumericalPoly.one(),
        add=operator.add,
        neg=operator.neg,
        mul=operator.mul,
        eq=operator.eq,
        div_int=lambda a, n: a.div_int_exact(n),
        rational=False,
        from_int=lambda n: NumericalPoly({0: n}),
    )


class TruncSeries:
    """Series sum_{k=low..order} coeffs[k-low] * var^k, reliable through `order`."""

    __slots__ = ("ring", "low", "order", "coeffs", "var")

    def __init__(self, ring: Ring, low: int, order: int, coeffs: Sequence, var: str = "T"):
        if order < low:
            raise DomainError(f"order {order} below lowest exponent {low}")
        if len(coeffs) != order - low + 1:
            raise DomainError(
                f"expected {order - low + 1} coefficients for exponents {low}..{order}, got {len(coeffs)}"
            )
        self.ring = ring
        self.low = low
        self.order = order
        self.coeffs = tuple(coeffs)
        self.var = var

    # -- constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, ring: Ring, value, order: int, var: str = "T") -> TruncSeries:
        return cls(ring, 0, order, [value] + [ring.zero] * order, var)

    @classmethod
    def one(cls, ring: Ring, order: int, var: str = "T") -> TruncSeries:
        return cls.constant(ring, ring.one, order, var)

    @classmethod
    def zero(cls, ring: Ring, order: int, var: str = "T") -> TruncSeries:
        return cls.constant(ring, ring.zero, order, var)

    @classmethod
    def from_coeffs(cls, ring: Ring, low: int, coeffs: Sequence, var: str = "T",
                    order: int | None = None) -> TruncSeries:
        """Exact data known through `order` (defaults to the last given exponent);
        missing high coefficients are zero-padded when order extends past them."""
        coeffs = list(coeffs)
        top = low + len(coeffs) - 1
        if order is None:
            order = top
        if order > top:
            coeffs.extend([ring.zero] * (order - top))
        return cls(ring, low, order, coeffs, var)

    # -- access ---------------------------------------------------------------

    def coeff(self, k: int):
        """Coefficient of var^k.  Zero below `low`; beyond `order` is a contract breach."""
        if k > self.order:
            raise PrecisionError(
                f"coefficient of {self.var}^{k} requested but series is reliable only to order {self.order}"
            )
        if k < self.low:
            return self.ring.zero
        return self.coeffs[k - self.low]

    def valuation(self) -> int | None:
        """Exponent of the first nonzero known coefficient, or None if all vanish."""
        for k in range(self.low, self.order + 1):
            if not self.ring.is_zero(self.coeffs[k - self.low]):
                return k
        return None

    def _require_ring(self, other: TruncSeries) -> None:
        if self.ring.name != other.ring.name:
            raise RingMismatchError(
                f"cannot combine series over {self.ring.name} and {other.ring.name}"
            )

    def __eq__(self, other: object) -> bool:
        """Equality of reliable data: same ring, same order, same coefficients."""
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.ring.name != other.ring.name or self.order != other.order:
            return False
        lo = min(self.low, other.low)
        return all(
            self.ring.eq(self.coeff(k), other.coeff(k)) for k in range(lo, self.order + 1)
        )

    __hash__ = None

    def agrees_with(self, other: TruncSeries, through: int | None = None) -> bool:
        """Coefficientwise equality through min of the reliable orders (or `through`)."""
        self._require_ring(other)
        top = min(self.order, other.order) if through is None else through
        lo = min(self.low, other.low)
        return all(self.ring.eq(self.coeff(k), other.coeff(k)) for k in range(lo, top + 1))

    def is_zero_series(self) -> bool:
        return self.valuation() is None

    def is_one_series(self) -> bool:
        return self.agrees_with(TruncSeries.one(self.ring, self.order, self.var))

    # -- ring operations -------------------------------------------------------

    def __neg__(self) -> TruncSeries:
        return TruncSeries(self.ring, self.low, self.order, [self.ring.neg(c) for c in self.coeffs], self.var)

    def __add__(self, other: TruncSeries) -> TruncSeries:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._require_ring(other)
        low = min(self.low, other.low)
        order = min(self.order, other.order)
        if order < low:
            raise DomainError("operands share no reliable coefficient range")
        coeffs = [self.ring.add(self.coeff(k), other.coeff(k)) for k in range(low, order + 1)]
        return TruncSeries(self.ring, low, order, coeffs, self.var)

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return self._mul_series(other)
        return self.scalar_mul(other)

    __rmul__ = __mul__

    def _mul_series(self, other: TruncSeries) -> TruncSeries:
        self._require_ring(other)
        ring = self.ring
        low = self.low + other.low
        order = min(self.order + other.low, other.order + self.low)
        if order < low:
            raise DomainError("product has no reliable coefficients")
        n_out = order - low + 1
        acc = [ring.zero] * n_out
        for i, a in enumerate(self.coeffs):
            if ring.is_zero(a):
                continue
            ei = self.low + i
            for j, b in enumerate(other.coeffs):
                e = ei + other.low + j
                if e > order:
                    break
                if ring.is_zero(b):
                    continue
                acc[e - low] = ring.add(acc[e - low], ring.mul(a, b))
        return TruncSeries(ring, low, order, acc, self.var)

    def scalar_mul(self, value) -> TruncSeries:
        """Multiply by a ring element or int."""
        ring = self.ring
        elem = ring.int_elem(value) if isinstance(value, int) else value
        return TruncSeries(ring, self.low, self.order, [ring.mul(c, elem) for c in self.coeffs], self.var)

    def shifted(self, k: int) -> TruncSeries:
        """Multiply by var^k (exactly)."""
        return TruncSeries(self.ring, self.low + k, self.order + k, self.coeffs, self.var)

    def trimmed(self) -> TruncSeries:
        """Raise `low` past known-zero leading coefficients (an exact rewrite
        that tightens the order bookkeeping of later multiplications)."""
        v = self.valuation()
        if v is None:
            return TruncSeries.zero(self.ring, self.order, self.var)
        if v == self.low:
            return self
        return TruncSeries(self.ring, v, self.order, self.coeffs[v - self.low:], self.var)

    def truncated(self, order: int) -> TruncSeries:
        if order > self.order:
            raise PrecisionError(f"cannot extend reliable order {self.order} to {order}")
        if order < self.low:
            raise DomainError("truncation below the lowest exponent")
        return TruncSeries(self.ring, self.low, order, self.coeffs[: order - self.low + 1], self.var)

    def __pow__(self, n: int) -> TruncSeries:
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return TruncSeries.one(self.ring, self.order, self.var)
        result = None
        base = self
        while True:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if not n:
                break
            base = base * base
        return result

    def map_coeffs(self, fn: Callable, ring: Ring | None = None, var: str | None = None) -> TruncSeries:
        return TruncSeries(
            ring or self.ring, self.low, self.order, [fn(c) for c in self.coeffs], var or self.var
        )

    # -- series operations -------------------------------------------------------

    def inverse(self) -> TruncSeries:
        """Multiplicative inverse.  A Laurent factor var^v is split off first:
        (a_v var^v (1 + u))^(-1) = a_v^(-1) var^(-v) (1 + u)^(-1)."""
        ring = self.ring
        v = self.valuation()
        if v is None:
            raise NotInvertibleError("series is zero to its reliable order")
        if ring.inv is None:
            raise CapabilityError(f"ring {ring.name} has no inverses")
        lead = self.coeff(v)
        lead_inv = ring.inv(lead)
        m = self.order - v  # relative reliable order of the unit part
        u = [ring.mul(self.coeff(v + i), lead_inv) for i in range(m + 1)]  # u[0] = 1
        w = [ring.zero] * (m + 1)
        w[0] = ring.one
        for n in range(1, m + 1):
            s = ring.zero
            for k in range(1, n + 1):
                if not ring.is_zero(u[k]):
                    s = ring.add(s, ring.mul(u[k], w[n - k]))
            w[n] = ring.neg(s)
        coeffs = [ring.mul(lead_inv, c) for c in w]
        return TruncSeries(ring, -v, m - v, coeffs, self.var)

    def _check_tail_free(self, op: str, constant) -> None:
        for k in range(min(self.low, 0), 1):
            c = self.coeff(k)
            expected = constant if k == 0 else self.ring.zero
            if not self.ring.eq(c, expected):
                raise DomainError(
                    f"{op} requires constant term {self.ring.text(constant)} and no Laurent tail"
                )

    def exp(self) -> TruncSeries:
        """exp of a series with zero constant term, over a Q-algebra ring."""
        ring = self.ring
        if not ring.rational:
            raise CapabilityError(f"exp needs exact integer division; ring {ring.name} lacks it")
        self._check_tail_free("exp", ring.zero)
        n_top = self.order
        e = [ring.zero] * (n_top + 1)
        e[0] = ring.one
        for n in range(1, n_top + 1):
            s = ring.zero
            for k in range(1, n + 1):
                a_k = self.coeff(k)
                if not ring.is_zero(a_k):
                    s = ring.add(s, ring.mul(ring.mul(a_k, ring.int_elem(k)), e[n - k]))
            e[n] = ring.div_int(s, n)
        return TruncSeries(ring, 0, n_top, e, self.var)

    def log(self) -> TruncSeries:
        """log of a series with constant term 1, over a Q-algebra ring."""
        ring = self.ring
        if not ring.rational:
            raise CapabilityError(f"log needs exact integer division; ring {ring.name} lacks it")
        self._check_tail_free("log", ring.one)
        n_top = self.order
        l = [ring.zero] * (n_top + 1)
        for n in range(1, n_top + 1):
            s = ring.zero
            for k in range(1, n):
                if not ring.is_zero(l[k]):
                    s = ring.add(s, ring.mul(ring.mul(l[k], ring.int_elem(k)), self.coeff(n - k)))
            l[n] = ring.sub(self.coeff(n), ring.div_int(s, n))
        return TruncSeries(ring, 0, n_top, l, self.var)

    def compose(self, inner: TruncSeries) -> TruncSeries:
        """Substitute var := inner (inner must have zero constant term, no tail)."""
        self._require_ring(inner)
        ring = self.ring
        if self.low < 0:
            raise DomainError("composition with a Laurent-tailed outer series is not defined")
        inner._check_tail_free("composition inner", ring.zero)
        v = inner.valuation()
        if v is None:
            return TruncSeries.constant(ring, self.coeff(0) if self.low <= 0 else ring.zero,
                                        inner.order, inner.var)
        order = min(inner.order, v * (self.order + 1) - 1)
        result = TruncSeries.constant(ring, self.coeff(self.order), order, inner.var)
        for k in range(self.order - 1, -1, -1):
            result = (result * inner).truncated(order)
            result = result + TruncSeries.constant(ring, self.coeff(k), order, inner.var)
        return result

    def div_exact(self, other: TruncSeries) -> TruncSeries:
        """Exact series division, solving coefficientwise with ring.div_exact.

        Works when every step divides exactly in the coefficient ring (the
        multiply-back contract is the caller's test); the divisor's leading
        coefficient need not be a unit.
        """
        self._require_ring(other)
        ring = self.ring
        if ring.div_exact is None:
            raise CapabilityError(f"ring {ring.name} has no exact division")
        v = other.valuation()
        if v is None:
            raise ZeroDivisionError("division by a series that is zero to reliable order")
        lead = other.coeff(v)
        va = self.valuation()
        if va is None:
            return TruncSeries.zero(ring, self.order - v, self.var)
        low = va - v
        # beyond this order the recurrence would touch divisor coefficients
        # past the divisor's own reliable order
        order = min(self.order - v, other.order - 2 * v + va)
        if order < low:
            raise DomainError("quotient has no reliable coefficients")
        q: list = []
        for n in range(low, order + 1):
            s = self.coeff(n + v)
            for j, qj in enumerate(q):
                b = other.coeff(n + v - (low + j))
                if not ring.is_zero(qj) and not ring.is_zero(b):
                    s = ring.sub(s, ring.mul(qj, b))
            q.append(ring.div_exact(s, lead))
        return TruncSeries(ring, low, order, q, self.var)

    # -- rendering ----------------------------------------------------------------

    def __str__(self) -> str:
        ring = self.ring
        parts: list[str] = []
        for k in range(self.low, self.order + 1):
            c = self.coeff(k)
            if ring.is_zero(c):
                continue
            text = ring.text(c)
            scalar_like = all(ch in "0123456789/-" for ch in text)
            if k == 0:
                piece = text
            else:
                power = self.var if k == 1 else f"{self.var}^{k}"
                if ring.is_one(c):
                    piece = power
                elif text == "-1":
                    piece = f"-{power}"
                elif scalar_like:
                    piece = f"{text}*{power}"
                else:
                    if " + " in text or " - " in text:
                        text = f"({text})"
                    piece = f"{text} {power}"
            if parts and piece.startswith("-"):
                parts.append(f" - {piece[1:]}")
            elif parts:
                parts.append(f" + {piece}")
            else:
                parts.append(piece)
        return "".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"TruncSeries({self.ring.name}, low={self.low}, order={self.order}, {self.var}; {self})"

    def to_json(self) -> dict:
        return {
            "ring": self.ring.name,
            "var": self.var,
            "low": self.low,
            "order": self.order,
            "coeffs": [self.ring.json(c) for c in self.coeffs],
        }


def geometric_series(ring: Ring, ratio, order: int, var: str = "T") -> TruncSeries:
    """(1 - ratio*var)^(-1) = sum_k ratio^k var^k, computed by series inversion."""
    one_minus = TruncSeries.from_coeffs(ring, 0, [ring.one, ring.neg(ratio)], var, order=order)
    return one_minus.inverse()


# -- Bernoulli numbers ------------------------------------------------------------

_bernoulli_cache: list[Fraction] = []


def bernoulli_minus(order: int) -> TruncSeries:
    """The series D/(e^D - 1) to the given order, over Q.

    Computed by inverting (e^D - 1)/D = sum_k D^k/(k+1)!; the coefficient of
    D^n is B_n/n!, which feeds the Bernoulli number cache.
    """
    if order < 0:
        raise DomainError("order must be non-negative")
    expm1_over = TruncSeries(
        QQ, 0, order, [Fraction(1, factorial(k + 1)) for k in range(order + 1)], var="D"
    )
    series = expm1_over.inverse()
    if order >= len(_bernoulli_cache):
        fact = 1
        values = []
        for n in range(order + 1):
            values.append(series.coeff(n) * fact)
            fact *= n + 1
        _bernoulli_cache.clear()
        _bernoulli_cache.extend(values)
    return series


def bernoulli_number(n: int) -> Fraction:
    """B_n with the B_1 = -1/2 convention, via the cached generating series."""
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    if n >= len(_bernoulli_cache):
        bernoulli_minus(max(n, 16))
    return _bernoulli_cache[n]
