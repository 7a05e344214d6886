"""Laurent polynomials in one named variable with exact coefficients.

One type serves both the integer rings (Z[c,c^-1], Z[q,q^-1]) and, with
Fraction coefficients, the Q-coefficient rings that series computations pass
through.  Integral coefficients are always stored as int, so integrality is a
structural property of the value rather than a mode flag.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .errors import InexactDivisionError, NotInvertibleError, VariableMismatchError

Scalar = int | Fraction


def canon_scalar(value: Scalar) -> Scalar:
    """Collapse integral Fractions to int."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


class LaurentPoly:
    """Finite map exponent -> coefficient; zero coefficients are never stored."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Mapping[int, Scalar] | None = None):
        self.var = var
        clean: dict[int, Scalar] = {}
        if coeffs:
            for e, v in coeffs.items():
                v = canon_scalar(v)
                if v != 0:
                    clean[int(e)] = v
        self.coeffs = clean

    @classmethod
    def zero(cls, var: str) -> LaurentPoly:
        return cls(var)

    @classmethod
    def one(cls, var: str) -> LaurentPoly:
        return cls(var, {0: 1})

    @classmethod
    def monomial(cls, var: str, exponent: int, coeff: Scalar = 1) -> LaurentPoly:
        return cls(var, {exponent: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self.coeffs.values())

    def coeff(self, exponent: int) -> Scalar:
        return self.coeffs.get(exponent, 0)

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def lo(self) -> int:
        """Lowest exponent; 0 for the zero polynomial."""
        return min(self.coeffs) if self.coeffs else 0

    def hi(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def _require_same(self, other: LaurentPoly) -> None:
        if self.var != other.var:
            raise VariableMismatchError(
                f"cannot combine Laurent polynomials in {self.var!r} and {other.var!r}"
            )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ({} if other == 0 else {0: canon_scalar(other)})
        return NotImplemented

    __hash__ = None  # mutable dict inside; values are compared, not hashed

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.var, {e: -v for e, v in self.coeffs.items()})

    def __add__(self, other: LaurentPoly | Scalar) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly(self.var, {0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._require_same(other)
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(self.var, out)

    __radd__ = __add__

    def __sub__(self, other: LaurentPoly | Scalar) -> LaurentPoly:
        return self + (-other)

    def __rsub__(self, other: Scalar) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: LaurentPoly | Scalar) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.var, {e: v * other for e, v in self.coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._require_same(other)
        out: dict[int, Scalar] = {}
        for ea, va in self.coeffs.items():
            for eb, vb in other.coeffs.items():
                e = ea + eb
                out[e] = out.get(e, 0) + va * vb
        return LaurentPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentPoly.one(self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> LaurentPoly:
        """Invert a unit.  Only monomials with invertible coefficient qualify."""
        if len(self.coeffs) != 1:
            raise NotInvertibleError(f"{self} is not a unit in the Laurent ring")
        (e, v), = self.coeffs.items()
        return LaurentPoly(self.var, {-e: canon_scalar(Fraction(1, 1) / v)})

    def evaluate(self, point: Scalar) -> Scalar:
        """Exact evaluation; the point must be invertible if negative exponents occur."""
        total: Scalar = 0
        for e, v in self.coeffs.items():
            if e >= 0:
                total += v * point**e
            else:
                total += v * Fraction(1, 1) / point ** (-e)
        return canon_scalar(total if isinstance(total, Fraction) else total)

    def shifted(self, k: int) -> LaurentPoly:
        """Multiply by var^k."""
        return LaurentPoly(self.var, {e + k: v for e, v in self.coeffs.items()})

    def dilated(self, k: int) -> LaurentPoly:
        """Exponent dilation var^n -> var^(k*n); a ring endomorphism for k >= 1."""
        return LaurentPoly(self.var, {e * k: v for e, v in self.coeffs.items()})

    def map_coeffs(self, fn: Callable[[Scalar], Scalar]) -> LaurentPoly:
        return LaurentPoly(self.var, {e: fn(v) for e, v in self.coeffs.items()})

    def div_scalar_exact(self, n: Scalar) -> LaurentPoly:
        """Divide by a scalar, staying integral when the input is integral."""
        if n == 0:
            raise ZeroDivisionError("division by zero scalar")
        out: dict[int, Scalar] = {}
        for e, v in self.coeffs.items():
            q = Fraction(v) / Fraction(n)
            if isinstance(v, int) and q.denominator != 1:
                raise InexactDivisionError(f"{v} is not divisible by {n}")
            out[e] = q
        return LaurentPoly(self.var, out)

    def div_exact(self, other: LaurentPoly) -> LaurentPoly:
        """Exact Laurent division; raises InexactDivisionError when it fails."""
        if isinstance(other, (int, Fraction)):
            return self.div_scalar_exact(other)
        self._require_same(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.var)
        # Shift both to ordinary polynomials and run dense long division.
        a_lo, b_lo = self.lo(), other.lo()
        a = [Fraction(self.coeff(a_lo + i)) for i in range(self.hi() - a_lo + 1)]
        b = [Fraction(other.coeff(b_lo + i)) for i in range(other.hi() - b_lo + 1)]
        if len(a) < len(b):
            raise InexactDivisionError(f"{other} does not divide {self}")
        lead = b[-1]
        q = [Fraction(0)] * (len(a) - len(b) + 1)
        rem = a[:]
        for i in range(len(q) - 1, -1, -1):
            coef = rem[i + len(b) - 1] / lead
            q[i] = coef
            if coef:
                for j, bj in enumerate(b):
                    rem[i + j] -= coef * bj
        if any(rem):
            raise InexactDivisionError(f"{other} does not divide {self}")
        quo = LaurentPoly(self.var, {a_lo - b_lo + i: c for i, c in enumerate(q)})
        if self.is_integral() and other.is_integral() and not quo.is_integral():
            raise InexactDivisionError(f"{other} does not divide {self} over the integers")
        return quo

    def __str__(self) -> str:
        return render_terms(
            [(e, v) for e, v in sorted(self.coeffs.items())],
            lambda e: var_power(self.var, e),
        )

    def __repr__(self) -> str:
        return f"LaurentPoly({self.var!r}, {self.coeffs!r})"

    def to_json(self) -> list[list[str | int]]:
        out = []
        for e, v in sorted(self.coeffs.items()):
            f = Fraction(v)
            out.append([e, str(f.numerator), str(f.denominator)])
        return out


def var_power(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


def render_terms(terms: list[tuple[int, Scalar]], basis: Callable[[int], str]) -> str:
    """Render (key, scalar) pairs as `a + 2*x^2 - x^3`; scalars use p/q form."""
    if not terms:
        return "0"
    parts: list[str] = []
    for key, v in terms:
        mono = basis(key)
        sign = "-" if v < 0 else "+"
        mag = -v if v < 0 else v
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)
