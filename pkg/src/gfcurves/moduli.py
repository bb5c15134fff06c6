"""Action of the symmetric group on parameter tuples.

A tuple (l_1, ..., l_{n-2}) stands for the n+1 marked points
(inf, 0, 1, l_1, ..., l_{n-2}) on the projective line. A permutation of
the markings composed with the unique Moebius map renormalizing the
first three back to (inf, 0, 1) sends admissible tuples to admissible
tuples; two curves are isomorphic exactly when their tuples share an
orbit. Everything is exact projective-line arithmetic, with inf kept
as the pair [1 : 0].
"""

from __future__ import annotations

from itertools import permutations as _perms
from typing import Sequence, Tuple

from .errors import DomainError, InternalError
from .fields import FieldElem, NumberField, QQ

ProjPoint = Tuple[FieldElem, FieldElem]


def _markings(lam: Sequence[FieldElem], field: NumberField):
    one, zero = field.one(), field.zero()
    pts = [(one, zero), (zero, one), (one, one)]
    pts.extend((v, one) for v in lam)
    return pts


def _mobius_to_standard(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint):
    """Matrix sending p1 -> [1:0], p2 -> [0:1], p3 -> [1:1]."""
    (u1, v1), (u2, v2), (u3, v3) = p1, p2, p3
    det = u1 * v2 - u2 * v1
    if det.is_zero():
        raise DomainError("coincident markings")
    # A^{-1} p3 with A = [[u1,u2],[v1,v2]]
    alpha = v2 * u3 - u2 * v3
    beta = -v1 * u3 + u1 * v3
    if alpha.is_zero() or beta.is_zero():
        raise DomainError("coincident markings")
    # M = (A diag(alpha, beta))^{-1}, up to scale: adjugate works projectively
    a, b = u1 * alpha, u2 * beta
    c, d = v1 * alpha, v2 * beta
    return (d, -b, -c, a)


def _apply(mat, p: ProjPoint) -> ProjPoint:
    a, b, c, d = mat
    u, v = p
    return (a * u + b * v, c * u + d * v)


def sym_action(
    sigma: Sequence[int], lam: Sequence[FieldElem], field: NumberField = None
) -> Tuple[FieldElem, ...]:
    """Image of the parameter tuple under a permutation of the markings.

    sigma is given in image form on 0-based positions: position i of the
    permuted tuple receives the old marking at sigma^{-1}(i). The result
    is again an admissible tuple.
    """
    lam = tuple(lam)
    if field is None:
        field = lam[0].field if lam else QQ
    npts = len(lam) + 3
    if sorted(sigma) != list(range(npts)):
        raise DomainError(f"permutation must act on {npts} symbols")
    gamma = _markings(lam, field)
    inv = [0] * npts
    for i, s in enumerate(sigma):
        inv[s] = i
    delta = [gamma[inv[i]] for i in range(npts)]
    mat = _mobius_to_standard(delta[0], delta[1], delta[2])
    out = []
    for p in delta[3:]:
        u, v = _apply(mat, p)
        if v.is_zero():
            raise InternalError("action produced the infinite marking")
        out.append(u / v)
    result = tuple(out)
    _check_admissible(result)
    return result


def _check_admissible(lam):
    for i, v in enumerate(lam):
        if v == 0 or v == 1:
            raise InternalError("action left the admissible parameter space")
        for w in lam[:i]:
            if v == w:
                raise InternalError("action produced a repeated parameter")


def _tuple_key(lam):
    return tuple(v.sort_key() for v in lam)


def orbit(lam: Sequence[FieldElem], field: NumberField = None):
    """All images of the tuple under the (n+1)! marking permutations."""
    lam = tuple(lam)
    if field is None:
        field = lam[0].field if lam else QQ
    npts = len(lam) + 3
    seen = {}
    for sigma in _perms(range(npts)):
        image = sym_action(sigma, lam, field)
        seen.setdefault(_tuple_key(image), image)
    return [seen[k] for k in sorted(seen)]


def is_isomorphic(lam_a: Sequence[FieldElem], lam_b: Sequence[FieldElem]) -> bool:
    """Whether two parameter tuples define isomorphic curves."""
    lam_a, lam_b = tuple(lam_a), tuple(lam_b)
    if len(lam_a) != len(lam_b):
        return False
    key = _tuple_key(lam_b)
    return any(_tuple_key(img) == key for img in orbit(lam_a))


def canonical_representative(lam: Sequence[FieldElem], field: NumberField = None):
    """Lexicographically least orbit element (an artifact convention)."""
    return orbit(lam, field)[0]


def compose(sigma: Sequence[int], tau: Sequence[int]) -> Tuple[int, ...]:
    """(sigma tau)(i) = sigma(tau(i))."""
    return tuple(sigma[tau[i]] for i in range(len(tau)))


def transposition(npts: int, i: int, j: int) -> Tuple[int, ...]:
    sigma = list(range(npts))
    sigma[i], sigma[j] = sigma[j], sigma[i]
    return tuple(sigma)
