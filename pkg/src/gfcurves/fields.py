"""Exact scalars: arbitrary-precision rationals and simple number fields.

Rationals are gmpy2.mpq when available (fractions.Fraction otherwise);
both stay reduced with a positive denominator after every operation.
A NumberField is Q[theta]/(m) for a monic squarefree m; degree 1 is Q
itself. Irreducibility of m is a documented user precondition -- the
constructor enforces squarefreeness and the rational-root test only,
and an inversion that exposes a factor aborts with
ReducibleModulusError.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, Union

from .errors import DomainError, FieldMismatchError, ReducibleModulusError

try:
    from gmpy2 import mpq as Rational, mpz, iroot as _iroot

    def _int_kth_root(n: int, k: int):
        root, exact = _iroot(mpz(n), k)
        return (int(root), bool(exact))

except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rational

    def _int_kth_root(n: int, k: int):
        if n == 0:
            return (0, True)
        r = round(n ** (1.0 / k))
        while r**k > n:
            r -= 1
        while (r + 1) ** k <= n:
            r += 1
        return (r, r**k == n)


RationalLike = Union[int, str, Rational]

_ZERO = Rational(0)
_ONE = Rational(1)


def rat(value: RationalLike) -> Rational:
    """Coerce an int, 'p/q' string or rational into a reduced Rational."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(value, int):
        return Rational(value)
    if isinstance(value, str):
        try:
            return Rational(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"malformed rational {value!r}") from exc
    raise DomainError(f"cannot interpret {value!r} as a rational")


def rat_str(q: Rational) -> str:
    """Serialize as 'p/q', omitting the denominator when it is 1."""
    return str(q)


def rational_kth_root(q: Rational, k: int):
    """Return the rational k-th root of q, or None if none exists.

    For even k the nonnegative root is returned (q must be >= 0);
    for odd k the sign carries through.
    """
    if k < 1:
        raise DomainError("root index must be positive")
    if q == 0:
        return _ZERO
    neg = q < 0
    if neg and k % 2 == 0:
        return None
    num, den = abs(q.numerator), q.denominator
    rn, okn = _int_kth_root(int(num), k)
    if not okn:
        return None
    rd, okd = _int_kth_root(int(den), k)
    if not okd:
        return None
    root = Rational(rn, rd)
    return -root if neg else root


# -- dense polynomial helpers over Rational (internal) ----------------------


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [_ZERO] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lb
        if c == 0:
            continue
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    return _poly_trim(q), _poly_trim(a[:db])


def _poly_gcd(a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


class NumberField:
    """Q[theta]/(m(theta)) for a monic squarefree modulus m of degree >= 1."""

    def __init__(self, modulus: Sequence[RationalLike]):
        coeffs = [rat(c) for c in modulus]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise DomainError("modulus must have degree >= 1")
        if coeffs[-1] != 1:
            raise DomainError("modulus must be monic")
        self.modulus = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self._check_squarefree()
        if self.degree > 1:
            self._check_no_rational_root()
        # reduction rows: theta^e for e in [degree, 2*degree-2]
        d = self.degree
        rows = [tuple(-c for c in self.modulus[:-1])]
        for _ in range(d - 2):
            prev = rows[-1]
            top = prev[-1]
            nxt = [_ZERO] + list(prev[:-1])
            if top != 0:
                base = rows[0]
                nxt = [nxt[i] + top * base[i] for i in range(d)]
            rows.append(tuple(nxt))
        self._red_rows = tuple(rows)
        self._zero = FieldElem(self, (_ZERO,) * d)
        self._one = FieldElem(self, ((_ONE,) + (_ZERO,) * (d - 1)))

    def _check_squarefree(self):
        deriv = [i * c for i, c in enumerate(self.modulus)][1:]
        g = _poly_gcd(self.modulus, deriv)
        if len(g) > 1:
            raise DomainError("modulus is not squarefree")

    def _check_no_rational_root(self):
        lcm = 1
        for c in self.modulus:
            lcm = lcm * int(c.denominator) // math.gcd(lcm, int(c.denominator))
        ints = [int(c * lcm) for c in self.modulus]
        if ints[0] == 0:
            raise DomainError("modulus has the rational root 0")
        a0, ad = ints[0], ints[-1]
        for p in _divisors(a0):
            for q in _divisors(ad):
                for cand in (Rational(p, q), Rational(-p, q)):
                    acc = _ZERO
                    for c in reversed(ints):
                        acc = acc * cand + c
                    if acc == 0:
                        raise DomainError(f"modulus has the rational root {cand}")

    # -- constructors --------------------------------------------------------

    def zero(self) -> "FieldElem":
        return self._zero

    def one(self) -> "FieldElem":
        return self._one

    def from_rational(self, value: RationalLike) -> "FieldElem":
        v = rat(value)
        return FieldElem(self, (v,) + (_ZERO,) * (self.degree - 1))

    def gen(self) -> "FieldElem":
        """The class of theta (equals the modulus root for degree 1)."""
        if self.degree == 1:
            return self.from_rational(-self.modulus[0])
        coeffs = [_ZERO] * self.degree
        coeffs[1] = _ONE
        return FieldElem(self, tuple(coeffs))

    def element(self, coeffs: Iterable[RationalLike]) -> "FieldElem":
        cs = tuple(rat(c) for c in coeffs)
        if len(cs) != self.degree:
            raise DomainError(
                f"expected {self.degree} coordinates, got {len(cs)}"
            )
        return FieldElem(self, cs)

    def element_from_json(self, data) -> "FieldElem":
        if isinstance(data, (str, int)):
            return self.from_rational(data)
        return self.element(data)

    @property
    def is_rational_field(self) -> bool:
        return self.degree == 1

    # -- structural ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        if self.is_rational_field:
            return "QQ"
        return f"NumberField({[str(c) for c in self.modulus]})"

    def to_json(self):
        return [rat_str(c) for c in self.modulus]

    def complex_roots(self):
        """Floating-point roots of the modulus; sanity checks only."""
        import numpy as np

        return np.roots([float(c) for c in reversed(self.modulus)])


class FieldElem:
    """An element of a NumberField in the reduced basis 1, theta, ...

    Immutable; two elements are equal iff their coordinate vectors are.
    """

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatchError("elements of different fields")
            return other
        if isinstance(other, (int, str, Rational)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(
            self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(
            self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElem(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return FieldElem(self.field, (self.coeffs[0] * o.coeffs[0],))
        a, b = self.coeffs, o.coeffs
        prod = [_ZERO] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj != 0:
                    prod[i + j] += ai * bj
        out = list(prod[:d])
        rows = self.field._red_rows
        for e in range(d, 2 * d - 1):
            ce = prod[e]
            if ce != 0:
                row = rows[e - d]
                for i in range(d):
                    if row[i] != 0:
                        out[i] += ce * row[i]
        return FieldElem(self.field, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self) -> "FieldElem":
        """Multiplicative inverse via the extended euclidean algorithm."""
        if self.is_zero():
            raise DomainError("division by zero")
        if self.field.degree == 1:
            return FieldElem(self.field, (1 / self.coeffs[0],))
        m = list(self.field.modulus)
        a = _poly_trim(list(self.coeffs))
        # invariants: r0 = s0*a mod m, r1 = s1*a mod m
        r0, s0 = m, []
        r1, s1 = a, [_ONE]
        while r1:
            q, r = _poly_divmod(r0, r1)
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, s0, r1, s1 = r1, s1, r, s
        if len(r0) != 1:
            raise ReducibleModulusError(
                "reducible modulus exposed: gcd with the modulus is "
                + "+".join(f"{c}*t^{i}" for i, c in enumerate(r0))
            )
        scale = 1 / r0[0]
        inv = [c * scale for c in s0]
        inv = inv[: self.field.degree]
        inv += [_ZERO] * (self.field.degree - len(inv))
        return FieldElem(self.field, tuple(inv))

    # -- predicates / conversions ---------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Rational:
        if not self.is_rational():
            raise DomainError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, str, Rational)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.modulus, self.coeffs))
        return self._hash

    def __repr__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{i}")
        return " + ".join(terms) if terms else "0"

    def sort_key(self):
        """Total order on elements by coordinate vector; artifact convention."""
        return self.coeffs

    def to_json(self):
        if self.field.is_rational_field:
            return rat_str(self.coeffs[0])
        return [rat_str(c) for c in self.coeffs]

    def eval_complex(self, root) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * root + complex(float(c.numerator) / float(c.denominator))
        return acc


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _ZERO) - (b[i] if i < len(b) else _ZERO) for i in range(n)]
    return _poly_trim(out)


QQ = NumberField((0, 1))


# -- spec-facing operation names ---------------------------------------------


def field_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def field_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def field_inv(a: FieldElem) -> FieldElem:
    return a.inv()


def kth_roots_in_field(target: FieldElem, k: int, field: NumberField):
    """All known k-th roots of target in the field, deterministically ordered.

    Roots are searched among c * theta^j with c rational, which is complete
    for rational targets in prime-degree binomial fields (the shape every
    worked example uses) and always includes rational roots. Fields whose
    roots of unity are not of that monomial shape may yield a subset.
    """
    if target.field != field:
        raise FieldMismatchError("target lives in a different field")
    if target.is_zero():
        return [field.zero()]
    roots = set()
    theta = field.gen()
    power = field.one()  # theta^(j*k)
    theta_k = theta**k
    theta_j = field.one()
    for _ in range(field.degree):
        if not power.is_zero():
            ratio = target * power.inv()
            if ratio.is_rational():
                c = rational_kth_root(ratio.as_rational(), k)
                if c is not None:
                    base = theta_j * c
                    roots.add(base)
                    if k % 2 == 0 and c != 0:
                        roots.add(-base)
        power = power * theta_k
        theta_j = theta_j * theta
    return sorted(roots, key=lambda e: e.sort_key())
