"""The generalized Fermat curve object and its graded coordinate ring.

A curve of type (k, n) with parameters (l_1, ..., l_{n-2}) is the smooth
complete intersection in P^n cut out by

    x_0^k + x_1^k + x_2^k = 0
    l_1 x_0^k + x_1^k + x_3^k = 0
    ...
    l_{n-2} x_0^k + x_1^k + x_n^k = 0

so the rewriting rule x_i^k -> -c_i x_0^k - x_1^k (with c_2 = 1 and
c_i = l_{i-2} for i >= 3) puts every monomial into the normal form
e_i < k for i >= 2. Graded pieces are enumerated in that normal form,
ordered lexicographically on exponent vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import DomainError, InternalError
from .fields import QQ, FieldElem, NumberField, rat


def genus(k: int, n: int) -> int:
    """Genus of the type (k, n) curve."""
    if k < 2 or n < 2:
        raise DomainError("need k >= 2 and n >= 2")
    num = k ** (n - 1) * ((n - 1) * (k - 1) - 2) + 2
    if num % 2:
        raise InternalError("genus formula produced a non-integer")
    return num // 2


Monomial = Tuple[int, ...]


def monomial_degree(m: Monomial) -> int:
    return sum(m)


@dataclass(frozen=True)
class GradedBasis:
    """Normal-form monomials of one degree, in ascending lex order."""

    m: int
    monomials: Tuple[Monomial, ...]

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)


@dataclass(frozen=True)
class GFCurve:
    """A generalized Fermat curve of type (k, n) with exact parameters."""

    k: int
    n: int
    lam: Tuple[FieldElem, ...]
    field: NumberField

    @classmethod
    def make(
        cls,
        k: int,
        n: int,
        lam: Sequence = (),
        field: Optional[NumberField] = None,
        allow_low_genus: bool = False,
    ) -> "GFCurve":
        """Validate parameters and build the curve.

        Rejects parameter tuples outside the admissible configuration
        space (entries in {0,1} or colliding) and, unless
        allow_low_genus is set, types with (k-1)(n-1) <= 2 whose genus
        is at most 1. Quotient curves may have low genus; gap and
        weight operations re-check the bound themselves.
        """
        if k < 2 or n < 2:
            raise DomainError("need k >= 2 and n >= 2")
        if field is None:
            field = QQ
        vals = []
        for entry in lam:
            if isinstance(entry, FieldElem):
                if entry.field != field:
                    raise DomainError("parameter outside the declared field")
                vals.append(entry)
            else:
                vals.append(field.from_rational(rat(entry)))
        if len(vals) != n - 2:
            raise DomainError(f"expected {n - 2} parameters, got {len(vals)}")
        for i, v in enumerate(vals):
            if v == 0 or v == 1:
                raise DomainError("not in the admissible parameter space: entry in {0,1}")
            for w in vals[:i]:
                if v == w:
                    raise DomainError("not in the admissible parameter space: repeated entry")
        if not allow_low_genus and (k - 1) * (n - 1) <= 2:
            raise DomainError("genus <= 1 unsupported")
        return cls(k=k, n=n, lam=tuple(vals), field=field)

    # -- derived quantities -------------------------------------------------

    @property
    def genus(self) -> int:
        return genus(self.k, self.n)

    @property
    def twist(self) -> int:
        """Degree r of the twist with O(r) the canonical sheaf."""
        return (self.n - 1) * (self.k - 1) - 2

    @property
    def degree(self) -> int:
        return self.k ** (self.n - 1)

    @property
    def fixed_count(self) -> int:
        """Number of coordinate-hyperplane points: (n+1) k^(n-1)."""
        return (self.n + 1) * self.degree

    def eq_coefficient(self, i: int) -> FieldElem:
        """The x_0^k coefficient in the equation solving for x_i (i >= 2)."""
        if i < 2 or i > self.n:
            raise DomainError("equations determine x_i only for 2 <= i <= n")
        if i == 2:
            return self.field.one()
        return self.lam[i - 3]

    def require_positive_genus(self):
        if (self.k - 1) * (self.n - 1) <= 2:
            raise DomainError("genus <= 1 unsupported for gap/weight operations")

    def to_json(self):
        data = {
            "k": self.k,
            "n": self.n,
            "lambda": [v.to_json() for v in self.lam],
        }
        if not self.field.is_rational_field:
            data["field"] = self.field.to_json()
        return data

    @classmethod
    def from_json(cls, data) -> "GFCurve":
        field = NumberField(data["field"]) if data.get("field") else QQ
        lam = [field.element_from_json(v) for v in data.get("lambda", [])]
        return cls.make(int(data["k"]), int(data["n"]), lam, field)

    def __repr__(self):
        lam = ", ".join(repr(v) for v in self.lam)
        return f"GFCurve(k={self.k}, n={self.n}, lam=({lam}))"


def validate(k: int, n: int, lam: Sequence = (), field=None) -> GFCurve:
    """Spec-facing constructor; see GFCurve.make."""
    return GFCurve.make(k, n, lam, field)


# -- graded pieces -----------------------------------------------------------


def _enumerate_normal(k: int, arity: int, m: int):
    """Exponent tuples of length arity summing to m, capped below k from slot 2 on."""

    def rec(slot: int, remaining: int, prefix):
        if slot == arity:
            if remaining == 0:
                yield tuple(prefix)
            return
        cap = remaining if slot < 2 else min(remaining, k - 1)
        for e in range(cap + 1):
            yield from rec(slot + 1, remaining - e, prefix + [e])

    return rec(0, m, [])


def monomial_basis(curve: GFCurve, m: int) -> GradedBasis:
    """All degree-m monomials with e_i < k for i >= 2, lex ascending."""
    if m < 0:
        raise DomainError("degree must be nonnegative")
    monos = sorted(_enumerate_normal(curve.k, curve.n + 1, m))
    return GradedBasis(m=m, monomials=tuple(monos))


def dim_gamma(curve: GFCurve, m: int) -> int:
    return len(monomial_basis(curve, m))


def hilbert_coefficient(k: int, n: int, m: int) -> int:
    """Coefficient of t^m in (1 - t^k)^(n-1) / (1 - t)^(n+1)."""
    if m < 0:
        return 0
    total = 0
    for j in range(n):
        p = m - j * k
        if p < 0:
            break
        total += (-1) ** j * math.comb(n - 1, j) * math.comb(n + p, n)
    return total


def s_dim(curve: GFCurve, j: int) -> int:
    """Dimension of the degree-(r - j) piece in the first n coordinates.

    Closed form (1/2) k^(n-2) (n(k-1) - 2 - 2j) + [j == k-1]; agrees
    with direct enumeration for every n >= 2.
    """
    if j < 0 or j > curve.k - 1:
        raise DomainError("need 0 <= j <= k-1")
    k, n = curve.k, curve.n
    twice = k ** (n - 2) * (n * (k - 1) - 2 - 2 * j)
    if twice % 2:
        raise InternalError("s-dimension formula produced a non-integer")
    return twice // 2 + (1 if j == k - 1 else 0)


def sub_basis_Q(curve: GFCurve, m: int, j: int) -> GradedBasis:
    """Monomial basis of the degree-(m - j) forms in x_0 .. x_{n-1}.

    Exponent tuples have length n (the last coordinate dropped), so they
    evaluate directly on the quotient curve; embed them upstairs by
    appending the exponent j.
    """
    if j < 0 or j > m:
        raise DomainError("need 0 <= j <= m")
    monos = sorted(_enumerate_normal(curve.k, curve.n, m - j))
    return GradedBasis(m=m - j, monomials=tuple(monos))


def h_prime(curve: GFCurve, m: int) -> int:
    """dim H^0(O(m)) by Riemann-Roch with O(twist) canonical."""
    if m < 0:
        return 0
    g, d0, r = curve.genus, curve.degree, curve.twist
    base = m * d0 - g + 1
    if m * d0 > 2 * g - 2:
        return base
    return base + dim_gamma(curve, r - m)


def quotient_curve(curve: GFCurve) -> GFCurve:
    """Drop the last coordinate: the type (k, n-1) curve below this one."""
    if curve.n == 2:
        raise DomainError("no quotient below the classic Fermat curve")
    return GFCurve.make(
        curve.k, curve.n - 1, curve.lam[:-1], curve.field, allow_low_genus=True
    )
