"""Laurent-series expansions of Z[q^±1, (1-q)^-1] at the three punctures of
the projective line, plus Adams operations on the series targets.

Local coordinates: q at the origin, u = 1-q at one, s = (1-q)^-1 at infinity.
Each expansion is the ring homomorphism determined by the images of q, q^-1
and (1-q)^-1; at the s-puncture the image of q^-1 carries the sign forced by
(1 - s^-1) * (-sum_{k>=1} s^k) = 1.
"""

from __future__ import annotations

import enum

from .errors import DomainError, PrecisionError
from .series import TruncSeries, ZZ
from .tate_k import TateKElem


class Puncture(enum.Enum):
    ZERO = "0"
    ONE = "1"
    INFINITY = "inf"

    @property
    def variable(self) -> str:
        return {"0": "q", "1": "u", "inf": "s"}[self.value]


def int_series(low: int, coeffs: list[int], order: int, var: str) -> TruncSeries:
    return TruncSeries.from_coeffs(ZZ, low, coeffs, var, order=order)


def _geometric(var: str, order: int) -> TruncSeries:
    return int_series(0, [1] * (order + 1), order, var)


def _images(puncture: Puncture, order: int) -> tuple[TruncSeries, TruncSeries, TruncSeries]:
    """Images (q, q^-1, (1-q)^-1) as series in the local coordinate."""
    v = puncture.variable
    if puncture is Puncture.ZERO:
        return (
            int_series(1, [1], order, v),                   # q
            int_series(-1, [1], order, v),                  # q^-1
            _geometric(v, order),                           # (1-q)^-1 = sum q^k
        )
    if puncture is Puncture.ONE:
        return (
            int_series(0, [1, -1], order, v),               # q = 1 - u
            _geometric(v, order),                           # q^-1 = sum u^k
            int_series(-1, [1], order, v),                  # (1-q)^-1 = u^-1
        )
    qinv_img = (
        int_series(1, [-1] * order, order, v)               # q^-1 = -sum_{k>=1} s^k
        if order >= 1
        else TruncSeries.zero(ZZ, 0, v)
    )
    return (
        int_series(-1, [-1, 1], order, v),                  # q = 1 - s^-1
        qinv_img,
        int_series(1, [1], order, v),                       # (1-q)^-1 = s
    )


def expand(x: TateKElem, puncture: Puncture, order: int) -> TruncSeries:
    """Apply the puncture's expansion homomorphism, reliable through `order`."""
    if order < 0:
        raise DomainError("order must be non-negative")
    # slack covers the low-exponent drift of the Laurent factors during
    # the power products below; the final truncation asserts it sufficed
    lo, hi = x.num.lo(), x.num.hi()
    slack = max(0, -lo) + max(0, hi) + x.denom_pow + 2
    work = order + slack
    img_q, img_qinv, img_pole = _images(puncture, work)
    total = TruncSeries.zero(ZZ, work, puncture.variable)
    pole_power = img_pole**x.denom_pow
    for e, val in sorted(x.num.coeffs.items()):
        factor = img_q**e if e >= 0 else img_qinv ** (-e)
        term = (factor * pole_power).scalar_mul(val)
        total = total + term
    if total.order < order:
        raise PrecisionError(
            f"internal working order insufficient: got {total.order}, need {order}"
        )
    return total.truncated(order).trimmed()


def expand_at_zero(x: TateKElem, order: int) -> TruncSeries:
    """q -> q, (1-q)^-1 -> sum q^k: the Laurent expansion at the origin."""
    return expand(x, Puncture.ZERO, order)


def expand_at_one(x: TateKElem, order: int) -> TruncSeries:
    """q -> 1-u, q^-1 -> sum u^k, (1-q)^-1 -> u^-1: expansion at q = 1."""
    return expand(x, Puncture.ONE, order)


def expand_at_s(x: TateKElem, order: int) -> TruncSeries:
    """(1-q)^-1 -> s, q -> 1 - s^-1, hence q^-1 -> -sum_{k>=1} s^k."""
    return expand(x, Puncture.INFINITY, order)


def adams_on_series(k: int, x: TruncSeries, order: int) -> TruncSeries:
    """Exponent dilation n -> k*n on an integer Laurent series.

    Reliable through `order` provided the input covers order//k; the dilated
    series is known up to k*(input order) + k - 1 since skipped slots vanish.
    """
    if k < 1:
        raise DomainError("Adams operations are indexed by positive integers")
    if x.ring.name != ZZ.name:
        raise DomainError("Adams dilation acts on integer Laurent series")
    natural = k * x.order + k - 1
    if natural < order:
        raise PrecisionError(
            f"input reliable to {x.order} only supports dilated order {natural}, need {order}"
        )
    low = k * x.low
    if low > order:
        return TruncSeries.zero(ZZ, order, x.var)
    coeffs = []
    for n in range(low, order + 1):
        coeffs.append(x.coeff(n // k) if n % k == 0 else 0)
    return TruncSeries(ZZ, low, order, coeffs, x.var)
