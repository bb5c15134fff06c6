"""Points of the curve and exact local parametrizations.

Two kinds of point are supported. A GenericFixed point is the symbolic
representative of one coordinate-hyperplane class: the k-th roots its
coordinates would require are kept as formal symbols, each tagged by a
residue slot, while everything numeric stays in the curve's parameter
field. An Embedded point has explicit coordinates in a declared number
field and must satisfy the defining equations exactly.

Local charts: at a fixed point the vanishing coordinate ratio is the
parameter z and every other coordinate is a constant times a binomial
k-th root series in z^k; at a point with no vanishing coordinate the
parameter is z = x_1/x_0 - c_1 and the same root construction applies
without the z^k structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from .curve import GFCurve, quotient_curve
from .errors import DomainError, FieldTooSmallError, InternalError
from .fields import QQ, FieldElem, NumberField, kth_roots_in_field
from .moduli import sym_action, transposition
from .series import TruncatedSeries, kth_root_one_plus


@dataclass(frozen=True)
class GenericFixed:
    """The symbolic fixed point of one axis; root choices left open."""

    axis: int

    def to_json(self):
        return {"type": "fixed", "axis": self.axis}


@dataclass(frozen=True)
class Embedded:
    """A concrete point, projectively normalized to leading coordinate 1."""

    field: NumberField
    coords: Tuple[FieldElem, ...]

    @classmethod
    def on_curve(cls, curve: GFCurve, coords: Sequence, field: Optional[NumberField] = None) -> "Embedded":
        if field is None:
            for c in coords:
                if isinstance(c, FieldElem):
                    field = c.field
                    break
            else:
                field = curve.field
        vals = [c if isinstance(c, FieldElem) else field.from_rational(c) for c in coords]
        if len(vals) != curve.n + 1:
            raise DomainError(f"expected {curve.n + 1} coordinates")
        lead = next((v for v in vals if not v.is_zero()), None)
        if lead is None:
            raise DomainError("the zero vector is not a projective point")
        inv = lead.inv()
        vals = [v * inv for v in vals]
        point = cls(field=field, coords=tuple(vals))
        point.validate(curve)
        return point

    def validate(self, curve: GFCurve):
        lam = _lift_parameters(curve, self.field)
        zeros = [i for i, c in enumerate(self.coords) if c.is_zero()]
        if len(zeros) > 1:
            raise DomainError("two coordinates vanish; no such point exists on the curve")
        x0k = self.coords[0] ** curve.k
        x1k = self.coords[1] ** curve.k
        for i in range(2, curve.n + 1):
            res = lam[i] * x0k + x1k + self.coords[i] ** curve.k
            if not res.is_zero():
                raise DomainError(f"coordinates do not satisfy defining equation {i - 1}")

    @property
    def vanishing_axis(self) -> Optional[int]:
        for i, c in enumerate(self.coords):
            if c.is_zero():
                return i
        return None

    def to_json(self):
        return {"type": "embedded", "coords": [c.to_json() for c in self.coords]}


PointSpec = Union[GenericFixed, Embedded]


def point_from_json(data, field: NumberField, curve: GFCurve) -> PointSpec:
    kind = data.get("type")
    if kind == "fixed":
        axis = int(data["axis"])
        if not 0 <= axis <= curve.n:
            raise DomainError("axis out of range")
        return GenericFixed(axis)
    if kind == "embedded":
        coords = [field.element_from_json(c) for c in data["coords"]]
        return Embedded.on_curve(curve, coords, field)
    raise DomainError(f"unknown point type {kind!r}")


def _lift_parameters(curve: GFCurve, field: NumberField):
    """Equation coefficients c_i (i = 2..n) in the requested field, index-aligned."""
    out = {2: field.one()}
    for i in range(3, curve.n + 1):
        v = curve.lam[i - 3]
        if curve.field == field:
            out[i] = v
        elif v.is_rational():
            out[i] = field.from_rational(v.as_rational())
        else:
            raise DomainError("curve parameters live outside the point's field")
    return out


# -- fixed points and branch values -----------------------------------------


@dataclass(frozen=True)
class FixedPointSet:
    axis: int
    count: int
    generic: GenericFixed
    embedded: Tuple[Embedded, ...]
    complete: bool
    missing: Tuple[str, ...]


def _root_targets_at_axis(curve: GFCurve, axis: int, field: NumberField):
    """(index, target) pairs: coordinate i carries a k-th root of target."""
    lam = _lift_parameters(curve, field)
    one = field.one()
    targets = []
    if axis == 0:
        for i in range(2, curve.n + 1):
            targets.append((i, -one))
    elif axis == 1:
        for i in range(2, curve.n + 1):
            targets.append((i, -lam[i]))
    else:
        targets.append((1, -lam[axis]))
        for i in range(2, curve.n + 1):
            if i != axis:
                targets.append((i, lam[axis] - lam[i]))
    return targets


def fixed_points(curve: GFCurve, axis: int) -> FixedPointSet:
    """The fixed-point class of one axis, with its expressible members."""
    if not 0 <= axis <= curve.n:
        raise DomainError("axis out of range")
    field = curve.field
    targets = _root_targets_at_axis(curve, axis, field)
    norm = 1 if axis == 0 else 0
    root_lists, missing = [], []
    for i, t in targets:
        roots = kth_roots_in_field(t, curve.k, field)
        if len(roots) < curve.k:
            missing.append(f"x_{i}^{curve.k} = {t!r}")
        root_lists.append((i, roots))
    pts = [[None] * (curve.n + 1)]
    for i, roots in root_lists:
        pts = [p[:i] + [r] + p[i + 1 :] for p in pts for r in roots]
    embedded = []
    for p in pts:
        coords = [field.zero()] * (curve.n + 1)
        coords[norm] = field.one()
        for i, _ in root_lists:
            coords[i] = p[i]
        embedded.append(Embedded.on_curve(curve, coords, field))
    count = curve.k ** (curve.n - 1)
    return FixedPointSet(
        axis=axis,
        count=count,
        generic=GenericFixed(axis),
        embedded=tuple(embedded),
        complete=len(embedded) == count,
        missing=tuple(missing),
    )


@dataclass(frozen=True)
class BranchValues:
    quotient: GFCurve
    count: int
    points: Tuple[Embedded, ...]
    complete: bool
    missing: Tuple[str, ...]


def branch_values(curve: GFCurve, field: Optional[NumberField] = None) -> BranchValues:
    """Images on the quotient of the last-axis fixed points.

    These are the points of the quotient curve with x_1^k = -c_n x_0^k;
    every coordinate is nonzero. Representatives are returned when the
    needed roots exist in the declared field.
    """
    if curve.n < 3:
        raise DomainError("branch values need n >= 3")
    if field is None:
        field = curve.field
    lam = _lift_parameters(curve, field)
    quot = quotient_curve(curve)
    cn = lam[curve.n]
    targets = [(1, -cn)]
    for i in range(2, curve.n):
        targets.append((i, cn - lam[i]))
    root_lists, missing = [], []
    for i, t in targets:
        roots = kth_roots_in_field(t, curve.k, field)
        if len(roots) < curve.k:
            missing.append(f"x_{i}^{curve.k} = {t!r}")
        root_lists.append(roots)
    combos = [[]]
    for roots in root_lists:
        combos = [c + [r] for c in combos for r in roots]
    pts = tuple(
        Embedded.on_curve(quot, [field.one()] + c, field) for c in combos
    )
    count = curve.k ** (curve.n - 1)
    return BranchValues(
        quotient=quot,
        count=count,
        points=pts,
        complete=len(pts) == count,
        missing=tuple(missing),
    )


def project(curve: GFCurve, p: PointSpec):
    """Drop the last coordinate.

    Embedded points map to embedded points of the quotient; the symbolic
    fixed point of axis j < n maps to the symbolic fixed point of the
    same axis downstairs; the axis-n class maps onto the whole branch
    locus, returned as a BranchValues record.
    """
    if curve.n < 3:
        raise DomainError("projection needs n >= 3")
    quot = quotient_curve(curve)
    if isinstance(p, GenericFixed):
        if p.axis == curve.n:
            return branch_values(curve)
        return GenericFixed(p.axis)
    coords = p.coords[:-1]
    if all(c.is_zero() for c in coords):
        raise InternalError("projection undefined: only the last coordinate is nonzero")
    return Embedded.on_curve(quot, coords, p.field)


# -- local expansions ---------------------------------------------------------


@dataclass(frozen=True)
class CoordEntry:
    """One coordinate of an expansion: scale * (symbol ρ_slot) * series."""

    slot: Optional[int]
    scale: FieldElem
    series: TruncatedSeries


@dataclass(frozen=True)
class LocalExpansion:
    """Truncated coordinates of the curve near a point, in one chart."""

    curve: GFCurve
    point: object
    truncation: int
    mode: str  # "generic" | "embedded"
    axis: Optional[int]  # vanishing coordinate of a fixed chart, else None
    zk: bool  # True when series depend on z only through z^k past offsets
    entries: Tuple[CoordEntry, ...]
    wraps: Optional[Tuple[FieldElem, ...]]  # k-th powers of the symbols

    def residuals(self) -> list:
        """Defining-equation residual series; all must vanish identically."""
        k = self.curve.k
        if self.mode == "generic":
            field = self.curve.field
            powers = []
            for ent in self.entries:
                s = ent.series.int_pow(k)
                if ent.slot is not None:
                    s = s.scale(self.wraps[ent.slot])
                powers.append(s)
        else:
            field = self.point.field
            powers = []
            for ent in self.entries:
                s = _lift_series(ent.series, field).int_pow(k)
                powers.append(s.scale(ent.scale**k))
        lam = _lift_parameters(self.curve, field)
        out = []
        for i in range(2, self.curve.n + 1):
            out.append(powers[0].scale(lam[i]) + powers[1] + powers[i])
        return out


def _lift_series(s: TruncatedSeries, field: NumberField) -> TruncatedSeries:
    if s.field == field:
        return s
    if not s.field.is_rational_field:
        raise InternalError("cannot lift a series between proper extensions")
    return TruncatedSeries(
        field, tuple(field.from_rational(c.as_rational()) for c in s.coeffs)
    )


def _root_series(field, T, k, ratio) -> TruncatedSeries:
    """(1 + ratio * z^k)^(1/k) over the ratio's field."""
    u = TruncatedSeries.monomial(field, T, k, ratio)
    return kth_root_one_plus(u, k)


def local_expansion(curve: GFCurve, p: PointSpec, T: int) -> LocalExpansion:
    """Exact chart coordinates near p, truncated at z^T."""
    if T < 1:
        raise DomainError("truncation must be positive")
    if isinstance(p, GenericFixed):
        return _generic_expansion(curve, p, T)
    return _embedded_expansion(curve, p, T)


def _generic_expansion(curve: GFCurve, p: GenericFixed, T: int) -> LocalExpansion:
    axis = p.axis
    if not 0 <= axis <= curve.n:
        raise DomainError("axis out of range")
    field = curve.field
    norm = 1 if axis == 0 else 0
    targets = dict(_root_targets_at_axis(curve, axis, field))
    one = TruncatedSeries.one(field, T)
    z = TruncatedSeries.monomial(field, T, 1)
    entries = [None] * (curve.n + 1)
    entries[norm] = CoordEntry(slot=None, scale=field.one(), series=one)
    entries[axis] = CoordEntry(slot=None, scale=field.one(), series=z)
    wraps = []
    k = curve.k
    for i in range(curve.n + 1):
        if i in (norm, axis):
            continue
        w = targets[i]
        # coordinate^k = w + b z^k with b fixed by the equations
        b = _zk_slope(curve, axis, i, field)
        slot = len(wraps)
        wraps.append(w)
        series = _root_series(field, T, k, b / w)
        entries[i] = CoordEntry(slot=slot, scale=field.one(), series=series)
    return LocalExpansion(
        curve=curve,
        point=p,
        truncation=T,
        mode="generic",
        axis=axis,
        zk=True,
        entries=tuple(entries),
        wraps=tuple(wraps),
    )


def _zk_slope(curve: GFCurve, axis: int, i: int, field) -> FieldElem:
    """Coefficient of z^k in coordinate_i^k at the axis chart."""
    lam = _lift_parameters(curve, field)
    if axis == 0:
        return -lam[i]
    if axis == 1:
        return -field.one()
    if i == 1:
        return -field.one()
    return field.one()


def _embedded_expansion(curve: GFCurve, p: Embedded, T: int) -> LocalExpansion:
    wf = p.field
    lam = _lift_parameters(curve, wf)
    k = curve.k
    axis = p.vanishing_axis
    entries = [None] * (curve.n + 1)
    if axis is not None:
        norm = 1 if axis == 0 else 0
        targets = dict(_root_targets_at_axis(curve, axis, wf))
        slopes = {i: _zk_slope(curve, axis, i, wf) for i in targets}
        entries[norm] = CoordEntry(None, wf.one(), TruncatedSeries.one(QQ, T))
        entries[axis] = CoordEntry(None, wf.one(), TruncatedSeries.monomial(QQ, T, 1))
        for i, t in targets.items():
            c = p.coords[i]
            if c**k != t:
                raise InternalError("point value disagrees with its equation")
            ratio = slopes[i] / t
            if ratio.is_rational():
                series = _root_series(QQ, T, k, QQ.from_rational(ratio.as_rational()))
            else:
                series = _root_series(wf, T, k, ratio)
            entries[i] = CoordEntry(None, c, series)
        zk = True
    else:
        c1 = p.coords[1]
        rational_chart = c1.is_rational() and all(
            lam[i].is_rational() for i in range(2, curve.n + 1)
        )
        base = QQ if rational_chart else wf
        c1b = base.from_rational(c1.as_rational()) if rational_chart else c1
        one = TruncatedSeries.one(base, T)
        x1 = TruncatedSeries.from_coeffs(base, [c1b, base.one()], T)
        entries[0] = CoordEntry(None, wf.one(), one)
        entries[1] = CoordEntry(None, wf.one(), x1)
        x1k = x1.int_pow(k)
        for i in range(2, curve.n + 1):
            ci = p.coords[i]
            a = ci**k  # = -lam_i - c1^k, the constant term of the branch
            li = lam[i]
            lib = base.from_rational(li.as_rational()) if rational_chart else li
            ab = base.from_rational(a.as_rational()) if rational_chart else a
            body = (-x1k) + TruncatedSeries.from_coeffs(base, [-lib], T)
            if body.coeffs[0] != ab:
                raise InternalError("point value disagrees with its equation")
            u = body.scale(ab.inv()) - one
            series = kth_root_one_plus(u, k)
            entries[i] = CoordEntry(None, ci, series)
        axis = None
        zk = False
    missing = [i for i, e in enumerate(entries) if e is None]
    if missing:
        raise InternalError(f"coordinates {missing} left unexpanded")
    return LocalExpansion(
        curve=curve,
        point=p,
        truncation=T,
        mode="embedded",
        axis=axis,
        zk=zk,
        entries=tuple(entries),
        wraps=None,
    )


@dataclass(frozen=True)
class BranchLocus:
    """Tag object standing for the symbolic image of the last-axis class."""

    upstairs: GFCurve


def branch_value_expansion(curve: GFCurve, T: int) -> LocalExpansion:
    """Symbolic chart on the quotient around a branch value.

    The quotient chart parameter is the k-th power of the upstairs chart
    parameter; the quotient coordinates are the same constants-times-root
    series read in that parameter, so this expansion is exact for every
    branch value regardless of root choices.
    """
    if curve.n < 3:
        raise DomainError("branch values need n >= 3")
    field = curve.field
    quot = quotient_curve(curve)
    lam = _lift_parameters(curve, field)
    cn = lam[curve.n]
    one = TruncatedSeries.one(field, T)
    entries = [CoordEntry(None, field.one(), one)]
    wraps = []
    k = curve.k
    for i in range(1, curve.n):
        if i == 1:
            w, b = -cn, -field.one()
        else:
            w, b = cn - lam[i], field.one()
        slot = len(wraps)
        wraps.append(w)
        u = TruncatedSeries.monomial(field, T, 1, b / w)
        entries.append(CoordEntry(slot=slot, scale=field.one(), series=kth_root_one_plus(u, k)))
    return LocalExpansion(
        curve=quot,
        point=BranchLocus(upstairs=curve),
        truncation=T,
        mode="generic",
        axis=None,
        zk=False,
        entries=tuple(entries),
        wraps=tuple(wraps),
    )


# -- moving a fixed point to a chosen axis -----------------------------------


def move_fixed_axis(curve: GFCurve, p: PointSpec, target: int):
    """Isomorphic model whose corresponding fixed point sits at `target`.

    The root choice of an embedded input is forgotten: gap data at a
    fixed point does not depend on it, every root choice of one axis
    being equivalent under the curve's own automorphisms.
    """
    if isinstance(p, Embedded):
        axis = p.vanishing_axis
        if axis is None:
            raise DomainError("only fixed points can be moved between axes")
        p = GenericFixed(axis)
    axis = p.axis
    if axis == target:
        return curve, GenericFixed(target)
    sigma = transposition(curve.n + 1, axis, target)
    lam2 = sym_action(sigma, curve.lam, curve.field)
    curve2 = GFCurve.make(curve.k, curve.n, lam2, curve.field, allow_low_genus=True)
    return curve2, GenericFixed(target)


def canonicalize_point(curve: GFCurve, p: PointSpec):
    """Move a fixed point to axis 1, the normal-form position."""
    return move_fixed_axis(curve, p, 1)
