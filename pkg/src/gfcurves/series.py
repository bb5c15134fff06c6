"""Dense truncated power series over an exact field.

Truncation is a hard attribute: arithmetic demands equal truncations and
the Cauchy product discards everything at or beyond the window. The only
transcendental-style operation needed anywhere is the binomial k-th root
of 1 + u, computed with exact generalized binomial coefficients.
"""

from __future__ import annotations

from typing import Optional

from .errors import DomainError, FieldMismatchError
from .fields import FieldElem, NumberField, Rational, rat


class TruncatedSeries:
    """Coefficients c[0..T-1] of a series known modulo z^T."""

    __slots__ = ("field", "coeffs", "truncation")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self.truncation = len(coeffs)
        if self.truncation < 1:
            raise DomainError("truncation must be positive")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, field: NumberField, truncation: int) -> "TruncatedSeries":
        return cls(field, (field.zero(),) * truncation)

    @classmethod
    def one(cls, field: NumberField, truncation: int) -> "TruncatedSeries":
        return cls(field, (field.one(),) + (field.zero(),) * (truncation - 1))

    @classmethod
    def monomial(cls, field, truncation, exponent, coeff=None) -> "TruncatedSeries":
        c = field.one() if coeff is None else coeff
        coeffs = [field.zero()] * truncation
        if exponent < truncation:
            coeffs[exponent] = c
        return cls(field, tuple(coeffs))

    @classmethod
    def from_coeffs(cls, field, values, truncation) -> "TruncatedSeries":
        vals = [v if isinstance(v, FieldElem) else field.from_rational(v) for v in values]
        if len(vals) > truncation:
            raise DomainError("more coefficients than the truncation allows")
        vals += [field.zero()] * (truncation - len(vals))
        return cls(field, tuple(vals))

    # -- queries ----------------------------------------------------------

    def order(self) -> Optional[int]:
        """Smallest index with a nonzero coefficient, or None for '>= T'."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return None

    def is_zero(self) -> bool:
        return self.order() is None

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.modulus, self.coeffs))

    def __repr__(self):
        parts = [f"({c})*z^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        body = " + ".join(parts) if parts else "0"
        return f"<{body} mod z^{self.truncation}>"

    def _check_compatible(self, other):
        if not isinstance(other, TruncatedSeries):
            raise DomainError("expected a TruncatedSeries")
        if self.field != other.field:
            raise FieldMismatchError("series over different fields")
        if self.truncation != other.truncation:
            raise DomainError(
                f"mixed truncations {self.truncation} != {other.truncation}; caller aligns"
            )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check_compatible(other)
        return TruncatedSeries(
            self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check_compatible(other)
        return TruncatedSeries(
            self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return TruncatedSeries(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._check_compatible(other)
        T = self.truncation
        zero = self.field.zero()
        out = [zero] * T
        support = [i for i, c in enumerate(self.coeffs) if not c.is_zero()]
        bcoeffs = other.coeffs
        for i in support:
            ai = self.coeffs[i]
            for j in range(T - i):
                bj = bcoeffs[j]
                if not bj.is_zero():
                    out[i + j] = out[i + j] + ai * bj
        return TruncatedSeries(self.field, tuple(out))

    def scale(self, c: FieldElem) -> "TruncatedSeries":
        if not isinstance(c, FieldElem):
            c = self.field.from_rational(c)
        return TruncatedSeries(self.field, tuple(a * c for a in self.coeffs))

    def shift(self, m: int) -> "TruncatedSeries":
        """Multiply by z^m, truncating."""
        if m < 0:
            raise DomainError("negative shift")
        zero = self.field.zero()
        return TruncatedSeries(
            self.field, ((zero,) * min(m, self.truncation) + self.coeffs)[: self.truncation]
        )

    def int_pow(self, e: int) -> "TruncatedSeries":
        if e < 0:
            raise DomainError("negative exponent")
        result = TruncatedSeries.one(self.field, self.truncation)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_int_pow(a: TruncatedSeries, e: int) -> TruncatedSeries:
    return a.int_pow(e)


def kth_root_one_plus(u: TruncatedSeries, k: int) -> TruncatedSeries:
    """The series y with y(0) = 1 and y^k = 1 + u, for u of order >= 1.

    Uses (1+u)^(1/k) = sum C(1/k, m) u^m with the binomial coefficients
    computed by the multiplicative recurrence over exact rationals.
    """
    if k < 2:
        raise DomainError("root index must be >= 2")
    if not u.coeffs[0].is_zero():
        raise DomainError("k-th root expansion needs a series with zero constant term")
    field, T = u.field, u.truncation
    result = TruncatedSeries.one(field, T)
    u_pow = u
    binom = Rational(1, k)  # C(1/k, 1)
    m = 1
    alpha = Rational(1, k)
    while not u_pow.is_zero():
        result = result + u_pow.scale(field.from_rational(binom))
        m += 1
        binom = binom * (alpha - (m - 1)) / m
        u_pow = u_pow * u
    return result
