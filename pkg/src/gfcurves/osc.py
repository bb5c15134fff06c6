"""Vanishing orders of form families along local expansions.

The engine evaluates a graded monomial family on a chart, then finds the
set of orders achievable by nonzero linear combinations with exact,
order-pivoted Gaussian elimination. Two facts keep the symbolic and
scaled paths honest:

* scaling any spanning row by a nonzero constant leaves the achievable
  order set unchanged, so unit factors (root symbols, embedded
  constants) can be stripped before elimination;
* at a fixed-point chart every row is z^(e_axis) times a series in z^k,
  so rows with different residues e_axis mod k have disjoint coefficient
  support and eliminate independently, with order sets disjoint by
  congruence.

Orders, the normal-form exponents read off them, gap sequences and
weights all come out of the same pivot pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .charts import LocalExpansion, branch_value_expansion, local_expansion
from .curve import GFCurve, GradedBasis, monomial_basis
from .errors import DomainError, GenericModeError, InternalError
from .fields import QQ
from .series import TruncatedSeries


@dataclass(frozen=True)
class Row:
    """One evaluated form: a series, its pivot group and class metadata."""

    index: int
    group: int
    series: TruncatedSeries
    klass: Optional[Tuple[int, ...]]
    mono: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class OscProfile:
    """Achievable orders with the normal-form exponents they encode."""

    orders: Tuple[int, ...]
    alphas: Tuple[int, ...]
    bees: Tuple[int, ...]

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "OscProfile":
        orders = tuple(orders)
        alphas = tuple(
            orders[i] - orders[i - 1] - 1 for i in range(1, len(orders))
        )
        return cls(orders=orders, alphas=alphas, bees=alphas)

    @property
    def dim(self) -> int:
        return len(self.orders)

    @property
    def hyperosculating(self) -> bool:
        return self.orders != tuple(range(len(self.orders)))


@dataclass(frozen=True)
class GapData:
    gaps: Tuple[int, ...]
    weight: int


def evaluate_forms(basis: GradedBasis, expansion: LocalExpansion) -> List[Row]:
    """One truncated series per basis monomial, tagged for pivoting.

    In generic mode the root symbols are reduced modulo k, the discarded
    k-th powers folding into exact constants; the symbol monomial itself
    is a unit and is stripped. In embedded mode the per-row constant is
    likewise stripped; when any coordinate series needs the point's full
    field the whole row set is computed there.
    """
    arity = len(expansion.entries)
    for mono in basis.monomials:
        if len(mono) != arity:
            raise DomainError("form arity does not match the expansion")
    k = expansion.curve.k
    max_e = [0] * arity
    for mono in basis.monomials:
        for i, e in enumerate(mono):
            max_e[i] = max(max_e[i], e)

    if expansion.mode == "generic":
        field = expansion.curve.field
        base_series = [ent.series for ent in expansion.entries]
    else:
        fast = all(ent.series.field.is_rational_field for ent in expansion.entries)
        if fast:
            field = QQ
            base_series = [ent.series for ent in expansion.entries]
        else:
            field = expansion.point.field
            base_series = []
            for ent in expansion.entries:
                s = _lift(ent.series, field)
                # fold the embedded constant in; it scales rows uniformly
                base_series.append(s.scale(ent.scale))

    one = TruncatedSeries.one(field, expansion.truncation)
    tables = []
    for i in range(arity):
        tab = [one]
        for _ in range(max_e[i]):
            tab.append(tab[-1] * base_series[i])
        tables.append(tab)

    nsym = expansion.curve.n - 1
    rows = []
    for idx, mono in enumerate(basis.monomials):
        series = one
        residues = [0] * nsym if expansion.mode == "generic" else None
        wrap = None
        for i, e in enumerate(mono):
            if e == 0:
                continue
            series = series * tables[i][e]
            if expansion.mode == "generic":
                slot = expansion.entries[i].slot
                if slot is not None:
                    residues[slot] += e
        if expansion.mode == "generic":
            for slot, res in enumerate(residues):
                q, r = divmod(res, k)
                residues[slot] = r
                if q:
                    w = expansion.wraps[slot] ** q
                    wrap = w if wrap is None else wrap * w
            if wrap is not None:
                series = series.scale(wrap)
        group = mono[expansion.axis] % k if expansion.zk else 0
        rows.append(
            Row(
                index=idx,
                group=group,
                series=series,
                klass=tuple(residues) if residues is not None else None,
                mono=mono,
            )
        )
    return rows


def _lift(s: TruncatedSeries, field) -> TruncatedSeries:
    if s.field == field:
        return s
    return TruncatedSeries(
        field, tuple(field.from_rational(c.as_rational()) for c in s.coeffs)
    )


def _eliminate(matrix: List[list]) -> List[int]:
    """Orders achievable from the rows, by order-pivoted elimination.

    Rows that vanish within the window contribute nothing; the caller
    compares the count against the family dimension.
    """
    if not matrix:
        return []
    T = len(matrix[0])
    starts = [0] * len(matrix)
    alive = list(range(len(matrix)))
    orders = []
    while alive:
        best = None
        for idx in alive:
            row = matrix[idx]
            s = starts[idx]
            while s < T and row[s].is_zero():
                s += 1
            starts[idx] = s
            if s < T and (best is None or s < starts[best]):
                best = idx
        if best is None:
            break
        o = starts[best]
        orders.append(o)
        pivot = matrix[best]
        inv = pivot[o].inv()
        alive.remove(best)
        for idx in alive:
            row = matrix[idx]
            f = row[o]
            if not f.is_zero():
                fac = f * inv
                for j in range(o, T):
                    pj = pivot[j]
                    if not pj.is_zero():
                        row[j] = row[j] - fac * pj
    return orders


def pivot_orders(rows) -> List[int]:
    """Sorted achievable orders of a row family.

    Accepts plain series (one joint matrix) or tagged Rows, which are
    eliminated group by group; group order sets must stay disjoint.
    Returns fewer orders than rows when the window was too short.
    """
    if not rows:
        return []
    if isinstance(rows[0], TruncatedSeries):
        rows = [Row(index=i, group=0, series=s, klass=None) for i, s in enumerate(rows)]
    groups = {}
    for r in rows:
        groups.setdefault(r.group, []).append(r)
    merged = []
    for gkey in sorted(groups):
        members = groups[gkey]
        matrix = [list(r.series.coeffs) for r in members]
        found = _eliminate(matrix)
        merged.extend(found)
    merged.sort()
    for a, b in zip(merged, merged[1:]):
        if a == b:
            raise InternalError("duplicate pivot orders across groups")
    return merged


def default_truncation(curve: GFCurve, degree: int) -> int:
    """Initial window: 2g + 2k capped by the hard order bound m*d0 + 1."""
    cap = degree * curve.degree + 1
    return max(1, min(2 * curve.genus + 2 * curve.k, cap))


def _profile_loop(curve, basis, make_expansion, truncation=None) -> OscProfile:
    n_forms = len(basis)
    if n_forms == 0:
        raise DomainError("empty form family")
    cap = basis.m * curve.degree + 1
    T = truncation if truncation is not None else default_truncation(curve, basis.m)
    T = max(1, min(T, cap)) if truncation is None else max(1, truncation)
    last_mode = None
    while True:
        expansion = make_expansion(T)
        last_mode = expansion.mode
        rows = evaluate_forms(basis, expansion)
        orders = pivot_orders(rows)
        if len(orders) == n_forms:
            return OscProfile.from_orders(orders)
        if T >= cap:
            # No section of degree m vanishes beyond m*d0, so widening the
            # window further cannot create pivots: the family is dependent
            # along this germ.
            if all(r.series.is_zero() for r in rows):
                raise DomainError("family vanishes identically at the point")
            if last_mode == "generic":
                raise GenericModeError(
                    "generic-mode independence violated; use embedded mode"
                )
            raise DomainError(
                "family linearly dependent along the germ; increase truncation "
                "or check the input forms"
            )
        T = min(2 * T, cap)


def profile(curve: GFCurve, basis: GradedBasis, point, truncation: Optional[int] = None) -> OscProfile:
    """Orders, alphas and ramification of a form family at a point."""
    return _profile_loop(
        curve, basis, lambda T: local_expansion(curve, point, T), truncation
    )


def branch_profile(curve: GFCurve, basis: GradedBasis, truncation: Optional[int] = None) -> OscProfile:
    """Profile of a quotient-curve family along the symbolic branch values."""
    quot_basis_curve = None  # forms live on the quotient; expansion carries it
    return _profile_loop(
        _quotient_for(curve),
        basis,
        lambda T: branch_value_expansion(curve, T),
        truncation,
    )


def _quotient_for(curve: GFCurve) -> GFCurve:
    from .curve import quotient_curve

    return quotient_curve(curve)


def is_hyperosculating(curve: GFCurve, basis: GradedBasis, point, truncation=None) -> bool:
    """Whether the family's contact at the point beats the generic flag."""
    return profile(curve, basis, point, truncation).hyperosculating


def gap_sequence(curve: GFCurve, point, truncation: Optional[int] = None) -> GapData:
    """Gap values and weight of a point under the canonical family."""
    curve.require_positive_genus()
    basis = monomial_basis(curve, curve.twist)
    g = curve.genus
    if len(basis) != g:
        raise InternalError("canonical family dimension differs from the genus")
    prof = profile(curve, basis, point, truncation)
    gaps = tuple(o + 1 for o in prof.orders)
    if len(gaps) != g:
        raise InternalError("gap count differs from the genus")
    if gaps[0] != 1 or gaps[-1] > 2 * g - 1:
        raise InternalError("gap sequence violates its defining bounds")
    weight = sum(prof.orders) - g * (g - 1) // 2
    return GapData(gaps=gaps, weight=weight)


def embedding_profile(curve: GFCurve, point, truncation=None) -> OscProfile:
    """Profile of the degree-1 family (the standard embedding)."""
    return profile(curve, monomial_basis(curve, 1), point, truncation)
