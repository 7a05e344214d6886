"""The K-side Tate ring of the circle: Z[q^±1, (1-q)^-1], its partial-fraction
splitting onto numerical polynomials, and the binomial/Cartier series.

Elements are kept as a Laurent numerator over a power of (1-q), reduced so the
numerator does not vanish at q = 1 whenever the denominator power is positive.
The quotient map mirrors the H-side boundary through the convention
(1-q)^-j -> beta_{j-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .basis import NumericalPoly, numerical_mul
from .errors import DomainError, NotInvertibleError
from .laurent import LaurentPoly
from .multipoly import MultiPoly, RationalFunction, binom_poly
from .report import Check, IdentityReport
from .series import (
    Ring,
    TruncSeries,
    geometric_series,
    laurent_coeff_ring,
    numerical_ring,
    poly_ring,
    ratfun_ring,
)

ONE_MINUS_Q = LaurentPoly("q", {0: 1, 1: -1})


def _check_q(x: LaurentPoly) -> None:
    if x.var != "q":
        raise DomainError(f"expected a Laurent polynomial in q, got variable {x.var!r}")
    if not x.is_integral():
        raise DomainError(f"{x} has non-integer coefficients; the ring is over Z")


class TateKElem:
    """num / (1-q)^denom_pow with num in Z[q^±1], reduced at q = 1."""

    __slots__ = ("num", "denom_pow")

    def __init__(self, num: LaurentPoly, denom_pow: int = 0):
        _check_q(num)
        if denom_pow < 0:
            raise DomainError("denominator power must be non-negative")
        while denom_pow > 0 and not num.is_zero() and num.evaluate(1) == 0:
            num = num.div_exact(ONE_MINUS_Q)
            denom_pow -= 1
        if num.is_zero():
            denom_pow = 0
        self.num = num
        self.denom_pow = denom_pow

    @classmethod
    def from_laurent(cls, x: LaurentPoly) -> TateKElem:
        return cls(x, 0)

    @classmethod
    def one(cls) -> TateKElem:
        return cls(LaurentPoly.one("q"))

    @classmethod
    def zero(cls) -> TateKElem:
        return cls(LaurentPoly.zero("q"))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.denom_pow == 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TateKElem):
            return self.num == other.num and self.denom_pow == other.denom_pow
        if isinstance(other, (int, LaurentPoly)):
            return self == TateKElem(
                other if isinstance(other, LaurentPoly) else LaurentPoly("q", {0: other})
            )
        return NotImplemented

    __hash__ = None

    def _coerce(self, other) -> TateKElem:
        if isinstance(other, TateKElem):
            return other
        if isinstance(other, LaurentPoly):
            return TateKElem(other)
        if isinstance(other, int):
            return TateKElem(LaurentPoly("q", {0: other}))
        raise TypeError(f"cannot coerce {other!r} into the Tate K ring")

    def __neg__(self) -> TateKElem:
        return TateKElem(-self.num, self.denom_pow)

    def __add__(self, other) -> TateKElem:
        o = self._coerce(other)
        m = max(self.denom_pow, o.denom_pow)
        num = (
            self.num * ONE_MINUS_Q ** (m - self.denom_pow)
            + o.num * ONE_MINUS_Q ** (m - o.denom_pow)
        )
        return TateKElem(num, m)

    __radd__ = __add__

    def __sub__(self, other) -> TateKElem:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> TateKElem:
        return (-self) + other

    def __mul__(self, other) -> TateKElem:
        if isinstance(other, int):
            return TateKElem(self.num * other, self.denom_pow)
        o = self._coerce(other)
        return TateKElem(self.num * o.num, self.denom_pow + o.denom_pow)

    __rmul__ = __mul__

    def inverse(self) -> TateKElem:
        """Invert a unit ±q^a (1-q)^e; anything else is not invertible here."""
        if self.is_zero():
            raise NotInvertibleError("zero is not invertible")
        num, extra = self.num, 0
        while not num.is_zero() and num.evaluate(1) == 0:
            num = num.div_exact(ONE_MINUS_Q)
            extra += 1
        if len(num.coeffs) != 1:
            raise NotInvertibleError(f"{self} is not a unit in Z[q^±1, (1-q)^-1]")
        (e, v), = num.coeffs.items()
        if v not in (1, -1):
            raise NotInvertibleError(f"{self} is not a unit in Z[q^±1, (1-q)^-1]")
        # self = v q^e (1-q)^(extra - denom_pow); invert each factor
        flips = self.denom_pow - extra
        inv_num = LaurentPoly("q", {-e: v})
        if flips >= 0:
            return TateKElem(inv_num * ONE_MINUS_Q**flips, 0)
        return TateKElem(inv_num, -flips)

    def __pow__(self, n: int) -> TateKElem:
        if n < 0:
            return self.inverse() ** (-n)
        result = TateKElem.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self) -> str:
        if self.denom_pow == 0:
            return str(self.num)
        num = str(self.num)
        if len(self.num.coeffs) > 1:
            num = f"({num})"
        pole = f"(1-q)^-{self.denom_pow}" if self.denom_pow > 1 else "(1-q)^-1"
        return pole if num == "1" else f"{num} * {pole}"

    def __repr__(self) -> str:
        return f"TateKElem({self.num!r}, denom_pow={self.denom_pow})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "denomPow": self.denom_pow}


def tatek_div(a: TateKElem, b: TateKElem) -> TateKElem:
    return a * b.inverse()


@dataclass(frozen=True)
class PartialFractionForm:
    """poly_part + sum_j pole_coeffs[j-1] * (1-q)^-j, an exact rewriting."""

    poly_part: LaurentPoly
    pole_coeffs: tuple[int, ...]

    def reconstruct(self) -> TateKElem:
        total = TateKElem(self.poly_part)
        for j, a in enumerate(self.pole_coeffs, start=1):
            total = total + TateKElem(LaurentPoly("q", {0: a}), j)
        return total

    def __str__(self) -> str:
        parts = []
        if not self.poly_part.is_zero():
            parts.append(str(self.poly_part))
        for j, a in enumerate(self.pole_coeffs, start=1):
            if a == 0:
                continue
            body = f"(1-q)^-{j}"
            if a == -1:
                body = f"-{body}"
            elif a != 1:
                body = f"{a}*{body}"
            parts.append(body)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def to_json(self) -> dict:
        return {"polyPart": self.poly_part.to_json(), "poleCoeffs": list(self.pole_coeffs)}


def partial_fractions(x: TateKElem) -> PartialFractionForm:
    """Split off the pole parts by iterated evaluation at q = 1.

    For x = n/(1-q)^k the top pole coefficient is n(1); subtracting it and
    dividing by (1-q) drops k by one.  Pole coefficients are integers because
    the numerator is integral.
    """
    num, k = x.num, x.denom_pow
    poles = [0] * k
    for j in range(k, 0, -1):
        a = num.evaluate(1)
        poles[j - 1] = a
        num = (num - a).div_exact(ONE_MINUS_Q)
    return PartialFractionForm(poly_part=num, pole_coeffs=tuple(poles))


def quotient_to_betas(x: TateKElem) -> NumericalPoly:
    """Image in Z[beta_*]: (1-q)^-j -> beta_{j-1}; the kernel is Z[q^±1]."""
    pf = partial_fractions(x)
    return NumericalPoly({j - 1: a for j, a in enumerate(pf.pole_coeffs, start=1) if a})


def binomial_series(order: int) -> TruncSeries:
    """(1+T)^beta = sum_k beta_k T^k over the numerical-polynomial ring."""
    ring = numerical_ring()
    return TruncSeries(ring, 0, order, [NumericalPoly.basis(k) for k in range(order + 1)])


def binomial_poly_series(order: int, negate: bool = False, gen: str = "beta") -> TruncSeries:
    """(1+T)^(±beta) over Q[beta], via falling-factorial binomials."""
    ring = poly_ring(gen)
    beta = MultiPoly.var((gen,), gen)
    arg = -beta if negate else beta
    return TruncSeries(ring, 0, order, [binom_poly(arg, k) for k in range(order + 1)])


def cartier_check(order0: int, order1: int) -> IdentityReport:
    """The character relation beta(T0 +_Gm T1) = beta(T0) * beta(T1) with
    T0 +_Gm T1 = T0 + T1 + T0*T1, compared coefficientwise in Z[beta_*]."""
    if order0 < 1 or order1 < 1:
        raise DomainError("bi-orders must be at least 1")

    def trunc_mul(a: dict, b: dict) -> dict:
        out: dict[tuple[int, int], int] = {}
        for (i, j), u in a.items():
            for (k, l), v in b.items():
                ii, jj = i + k, j + l
                if ii <= order0 and jj <= order1:
                    out[(ii, jj)] = out.get((ii, jj), 0) + u * v
        return {e: v for e, v in out.items() if v}

    group_law = {(1, 0): 1, (0, 1): 1, (1, 1): 1}
    lhs: dict[tuple[int, int], NumericalPoly] = {}
    power = {(0, 0): 1}
    for k in range(order0 + order1 + 1):
        beta_k = NumericalPoly.basis(k)
        for e, v in power.items():
            lhs[e] = lhs.get(e, NumericalPoly.zero()) + beta_k * v
        power = trunc_mul(power, group_law)
        if not power:
            break

    first_defect = None
    for i in range(order0 + 1):
        for j in range(order1 + 1):
            rhs = numerical_mul(NumericalPoly.basis(i), NumericalPoly.basis(j))
            if lhs.get((i, j), NumericalPoly.zero()) != rhs:
                first_defect = f"T0^{i} T1^{j}: {lhs.get((i, j))} != {rhs}"
                break
        if first_defect:
            break
    check = Check(
        "beta(T0 +Gm T1) == beta(T0)*beta(T1)",
        first_defect is None,
        first_defect,
        note=f"all bi-orders up to ({order0},{order1})",
    )
    return IdentityReport("cartier", max(order0, order1), (check,))


def q_hat_inv_poly(order: int) -> TruncSeries:
    """(1 - (1+T)^-beta)/T over Q[beta]; T^k coefficient is -binom(-beta, k+1)."""
    inv_pow = binomial_poly_series(order + 1, negate=True)
    one = TruncSeries.one(inv_pow.ring, order + 1)
    return (one - inv_pow).shifted(-1).truncated(order)


def verify_prop2(order: int, defect: int | None = None) -> IdentityReport:
    """Both readings of (1 - q^-1 T)^-1 = (1+T)^beta.

    Coordinates: the geometric series has the all-ones sequence on q^-k and
    the binomial series the all-ones sequence on beta_k, matched under
    beta_k <-> q^-k.  Defining relation: substituting the solved q^-1 series
    into 1 - q^-1 T and inverting reproduces (1+T)^beta exactly in Q[beta][[T]].
    """
    if order < 1:
        raise DomainError("order must be at least 1")
    checks = []

    ring_q = laurent_coeff_ring("q", integral=True)
    geo = geometric_series(ring_q, LaurentPoly("q", {-1: 1}), order)
    geo_coords = []
    for k in range(0, order + 1):
        c: LaurentPoly = geo.coeff(k)
        pure = set(c.coeffs) <= {-k}
        geo_coords.append(c.coeff(-k) if pure else None)
    bin_series = binomial_series(order)
    bin_coords = []
    for k in range(0, order + 1):
        c: NumericalPoly = bin_series.coeff(k)
        pure = set(c.coords) <= {k}
        bin_coords.append(c.coord(k) if pure else None)
    if defect is not None and 0 <= defect <= order:
        geo_coords[defect] = (geo_coords[defect] or 0) + 1
    bad = next(
        (k for k in range(order + 1) if not (geo_coords[k] == bin_coords[k] == 1)), None
    )
    checks.append(
        Check(
            "all-ones coordinates under beta_k <-> q^-k",
            bad is None,
            None if bad is None else f"T^{bad}: {geo_coords[bad]} vs {bin_coords[bad]}",
        )
    )

    qhi = q_hat_inv_poly(order)
    one = TruncSeries.one(qhi.ring, order + 1)
    one_minus = (one - qhi.shifted(1)).truncated(order)
    binom = binomial_poly_series(order)
    product_ok = (one_minus * binom).is_one_series()
    inverse_ok = one_minus.inverse().agrees_with(binom, through=order)
    checks.append(
        Check(
            "(1 - qhat_inv T)^-1 == (1+T)^beta",
            product_ok and inverse_ok,
            None if product_ok and inverse_ok else "defining relation fails",
        )
    )

    vandermonde_ok = (binom * binomial_poly_series(order, negate=True)).is_one_series()
    checks.append(
        Check(
            "(1+T)^beta * (1+T)^-beta == 1",
            vandermonde_ok,
            None if vandermonde_ok else "binomial convolution does not telescope",
        )
    )
    return IdentityReport("prop2", order, tuple(checks))


def q_hat_inv_ratfun(order: int) -> TruncSeries:
    """The q^-1 series with coefficients in the rational-function field."""
    poly = q_hat_inv_poly(order)
    ring = ratfun_ring("beta")
    return poly.map_coeffs(RationalFunction.from_poly, ring)


def q_series(order: int) -> TruncSeries:
    """q = T (1 - (1+T)^-beta)^-1 as the reciprocal of the q^-1 series;
    the leading coefficient is 1/beta."""
    return q_hat_inv_ratfun(order).inverse()


@dataclass(frozen=True)
class IntegralityEntry:
    series: str                 # "q" or "beta*q"
    index: int                  # T-power
    value: str                  # rendered coefficient
    is_polynomial: bool
    binomial_coords: tuple[tuple[int, str], ...] | None  # None unless polynomial
    is_integral: bool | None    # None unless polynomial

    def to_json(self) -> dict:
        out = {
            "series": self.series,
            "k": self.index,
            "value": self.value,
            "polynomial": self.is_polynomial,
        }
        if self.is_polynomial:
            out["binomialCoords"] = [[k, v] for k, v in self.binomial_coords]
            out["integral"] = self.is_integral
        return out


@dataclass(frozen=True)
class IntegralityReport:
    """Descriptive evidence on integrality of the q-series coefficients.

    Never a pass/fail verdict: each coefficient of q and beta*q is classified
    as polynomial or not, and polynomial ones get binomial-basis coordinates.
    """

    order: int
    entries: tuple[IntegralityEntry, ...]

    def to_json(self) -> dict:
        return {"report": "q-integrality", "order": self.order,
                "entries": [e.to_json() for e in self.entries]}

    def __str__(self) -> str:
        lines = [f"q-series integrality survey to order {self.order}"]
        for e in self.entries:
            if e.is_polynomial:
                coords = ", ".join(f"c_{k}={v}" for k, v in e.binomial_coords) or "0"
                status = "integral binomial coordinates" if e.is_integral else "fractional coordinates"
                lines.append(f"  {e.series}[T^{e.index}] = {e.value}: polynomial; {status} ({coords})")
            else:
                lines.append(f"  {e.series}[T^{e.index}] = {e.value}: not a polynomial in beta")
        return "\n".join(lines)


def integrality_report(order: int) -> IntegralityReport:
    from .basis import NotIntegral, to_binomial_basis

    q = q_series(order)
    beta = RationalFunction.from_poly(MultiPoly.var(("beta",), "beta"))
    entries = []
    for label, series in (("q", q), ("beta*q", q.scalar_mul(beta))):
        for k in range(0, order + 1):
            rf: RationalFunction = series.coeff(k)
            if rf.is_polynomial():
                conv = to_binomial_basis(rf.as_polynomial())
                if isinstance(conv, NotIntegral):
                    coords = tuple((k2, str(v)) for k2, v in conv.coords)
                    integral = False
                else:
                    coords = tuple((k2, str(v)) for k2, v in sorted(conv.coords.items()))
                    integral = True
                entries.append(IntegralityEntry(label, k, str(rf), True, coords, integral))
            else:
                entries.append(IntegralityEntry(label, k, str(rf), False, None, None))
    return IntegralityReport(order=order, entries=tuple(entries))


def adams_on_laurent(k: int, x: LaurentPoly) -> LaurentPoly:
    """psi^k on characters: the exponent-dilation ring map q^n -> q^(kn)."""
    if k < 1:
        raise DomainError("Adams operations are indexed by positive integers")
    _check_q(x)
    return x.dilated(k)
