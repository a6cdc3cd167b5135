"""Projective points, Moebius families, and type II points at a scale.

A type II point zeta(a, r) is the sup-seminorm of the closed disk of
center ``a`` and radius ``r``; radii live in the value group e^Q of the
working (generator) scale and are stored by their rational log.  The Gauss
point is zeta(0, 1).  For a polynomial, the seminorm at zeta(a, r) is the
Gauss norm of the Taylor shift: max_i |t_i| r^i where sum t_i w^i = T(a+w);
no factorisation is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import DegenerateTuple, ScaleMismatch
from .scales import ScaleBasis, ScaleClass
from .symfield import NormValue, QI, SymbolicNumber
from .upoly import UPoly

__all__ = [
    "ProjPoint",
    "MobiusFamily",
    "TypeIIPoint",
    "Direction",
    "cross_ratio",
    "hyperbolic_distance",
    "move_to_gauss",
    "seminorm_poly",
]

Sym = SymbolicNumber


class ProjPoint:
    """A point [x0 : x1] of the projective line over the symbolic field."""

    __slots__ = ("x0", "x1")

    def __init__(self, x0: Sym, x1: Sym):
        if x0.is_zero() and x1.is_zero():
            raise ValueError("projective point needs a nonzero coordinate")
        self.x0 = x0
        self.x1 = x1

    @staticmethod
    def affine(z: Sym) -> "ProjPoint":
        return ProjPoint(z, Sym.one(z.basis))

    @staticmethod
    def infinity(basis: ScaleBasis) -> "ProjPoint":
        return ProjPoint(Sym.one(basis), Sym.zero(basis))

    @property
    def basis(self) -> ScaleBasis:
        return self.x0.basis

    def is_infinity(self) -> bool:
        return self.x1.is_zero()

    def as_affine(self) -> Optional[Sym]:
        if self.x1.is_zero():
            return None
        return self.x0 / self.x1

    def eq_exact(self, o: "ProjPoint") -> bool:
        return (self.x0 * o.x1 - self.x1 * o.x0).is_zero()

    def eq_at(self, o: "ProjPoint", eps: ScaleClass) -> bool:
        """Projective equality of the images at a scale.

        Coordinates are normalised so the larger has norm 1 before the
        cross-multiplication zero test; this is equality in P^1 of the
        limit field.
        """
        a = self._unit_rep(eps)
        b = o._unit_rep(eps)
        return (a.x0 * b.x1 - a.x1 * b.x0).is_zero_at(eps)

    def _unit_rep(self, eps: ScaleClass) -> "ProjPoint":
        n0, n1 = self.x0.norm_at(eps), self.x1.norm_at(eps)
        big = self.x0 if n0.cmp(n1) >= 0 else self.x1
        if big.norm_at(eps).is_zero:
            raise ScaleMismatch("projective point degenerates at this scale")
        return ProjPoint(self.x0 / big, self.x1 / big)

    def __repr__(self):
        from .printing import format_symbolic

        if self.is_infinity():
            return "[inf]"
        return f"[{format_symbolic(self.as_affine())}]"


class MobiusFamily:
    """A family of Moebius transformations as an exact 2x2 matrix."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Sym, b: Sym, c: Sym, d: Sym):
        self.a, self.b, self.c, self.d = a, b, c, d
        if self.det().is_zero():
            raise ValueError("Moebius family must be invertible over the field")

    @staticmethod
    def identity(basis: ScaleBasis) -> "MobiusFamily":
        one, zero = Sym.one(basis), Sym.zero(basis)
        return MobiusFamily(one, zero, zero, one)

    @staticmethod
    def affine(a: Sym, b: Sym) -> "MobiusFamily":
        """z -> a*z + b."""
        basis = a.basis
        return MobiusFamily(a, b, Sym.zero(basis), Sym.one(basis))

    @staticmethod
    def inversion(basis: ScaleBasis) -> "MobiusFamily":
        one, zero = Sym.one(basis), Sym.zero(basis)
        return MobiusFamily(zero, one, one, zero)

    @property
    def basis(self) -> ScaleBasis:
        return self.a.basis

    def det(self) -> Sym:
        return self.a * self.d - self.b * self.c

    def compose(self, o: "MobiusFamily") -> "MobiusFamily":
        """self after o (matrix product self*o)."""
        return MobiusFamily(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "MobiusFamily":
        return MobiusFamily(self.d, -self.b, -self.c, self.a)

    def entries(self) -> List[Sym]:
        return [self.a, self.b, self.c, self.d]

    def normalized(self) -> "MobiusFamily":
        """Divide all entries by the asymptotically dominant one."""
        piv = _dominant(self.entries())
        return MobiusFamily(*(e / piv for e in self.entries()))

    def degree_at(self, eps: ScaleClass) -> int:
        """1 if the limit at eps lies in PGL(2), 0 if it collapses."""
        m = self.normalized()
        return 0 if m.det().is_zero_at(eps) else 1

    def apply_point(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(self.a * p.x0 + self.b * p.x1, self.c * p.x0 + self.d * p.x1)

    def apply_affine(self, z: Sym) -> Optional[Sym]:
        den = self.c * z + self.d
        if den.is_zero():
            return None
        return (self.a * z + self.b) / den

    def apply_typeII(self, x: "TypeIIPoint") -> "TypeIIPoint":
        """Image of a type II point (exact radius/center bookkeeping)."""
        eps = x.scale
        if self.degree_at(eps) != 1:
            raise ScaleMismatch("Moebius family degenerates at this scale")
        a, b, c, d = self.a, self.b, self.c, self.d
        if c.is_zero():
            alpha = a / d
            beta = b / d
            logr = x.logr + alpha.norm_at(eps).log_value()
            return TypeIIPoint(eps, alpha * x.center + beta, logr)
        pole = -d / c
        t = x.center - pole
        tn = t.norm_at(eps)
        det = self.det()
        if not tn.is_zero and tn.log_value() > x.logr:
            # pole outside the closed disk: image has center T(center)
            logr = (x.logr + det.norm_at(eps).log_value()
                    - c.norm_at(eps).log_value() * 2 - 2 * tn.log_value())
            center = self.apply_affine(x.center)
            return TypeIIPoint(eps, center, logr)
        # pole inside: zeta(center, r) = zeta(pole, r); 1/(z-pole) sends it
        # to zeta(0, 1/r), then the affine part acts
        alpha = -det / (c * c)
        beta = a / c
        logr = -x.logr + alpha.norm_at(eps).log_value()
        return TypeIIPoint(eps, beta, logr)

    def __repr__(self):
        from .printing import format_symbolic as f

        return f"Mobius[[{f(self.a)}, {f(self.b)}], [{f(self.c)}, {f(self.d)}]]"


def _dominant(items: List[Sym]) -> Sym:
    """The asymptotically largest element (lex leading exponent, then
    constant modulus); used to normalise coefficient tuples."""
    from .symfield import _exp_key

    best = None
    best_key = None
    for z in items:
        if z.is_zero():
            continue
        e, c = z.num.lead()
        key = (_exp_key(e), c.mod_sq())
        if best is None or key > best_key:
            best, best_key = z, key
    if best is None:
        raise ValueError("all entries are zero")
    return best


@dataclass
class TypeIIPoint:
    """zeta(center, e^logr) at a non-Archimedean working scale."""

    scale: ScaleClass
    center: Sym
    logr: Fraction

    def __post_init__(self):
        if self.scale.is_zero or self.scale.is_trivial:
            raise ScaleMismatch("type II points live at generator scales")
        self.logr = Fraction(self.logr)

    @staticmethod
    def gauss(basis: ScaleBasis, scale: ScaleClass) -> "TypeIIPoint":
        return TypeIIPoint(scale, Sym.zero(basis), Fraction(0))

    def is_gauss(self) -> bool:
        return self.logr == 0 and self.center.norm_at(self.scale)._cmp_one() <= 0

    def eq(self, o: "TypeIIPoint") -> bool:
        if self.scale != o.scale:
            raise ScaleMismatch("type II points at different scales")
        if self.logr != o.logr:
            return False
        d = (self.center - o.center).norm_at(self.scale)
        if d.is_zero:
            return True
        return d.log_value() <= self.logr

    def radius_norm(self) -> NormValue:
        return NormValue.expq(self.logr)

    def __repr__(self):
        from .printing import format_symbolic

        return f"zeta({format_symbolic(self.center)}, e^{self.logr})"


def move_to_gauss(x: TypeIIPoint) -> MobiusFamily:
    """Canonical Moebius with M(x) = Gauss point: z -> (z - a)/rho, where
    rho is the monomial of the working scale with norm e^logr."""
    basis = x.center.basis
    rho = Sym.monomial(basis, {x.scale.index: x.logr})
    return MobiusFamily(rho.inv(), -x.center / rho, Sym.zero(basis), Sym.one(basis))


def cross_ratio(p1: ProjPoint, p3: ProjPoint, p2: ProjPoint, p4: ProjPoint) -> Sym:
    """(p1, p3; p2, p4) = (p1-p2)(p3-p4) / ((p1-p4)(p3-p2)), with
    homogeneous handling of infinity."""
    pts = [p1, p3, p2, p4]
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i].eq_exact(pts[j]):
                raise DegenerateTuple("cross-ratio of coinciding points")

    def d(u: ProjPoint, v: ProjPoint) -> Sym:
        return u.x0 * v.x1 - u.x1 * v.x0

    num = d(p1, p2) * d(p3, p4)
    den = d(p1, p4) * d(p3, p2)
    return num / den


def hyperbolic_distance(x: TypeIIPoint, y: TypeIIPoint) -> Fraction:
    """Tree distance via the join zeta(a, max(|a - a'|, r, r'))."""
    if x.scale != y.scale:
        raise ScaleMismatch("points at different scales")
    dn = (x.center - y.center).norm_at(x.scale)
    logj = max(x.logr, y.logr)
    if not dn.is_zero:
        logj = max(logj, dn.log_value())
    return (logj - x.logr) + (logj - y.logr)


class Direction:
    """A direction at a type II point, stored by a witness point.

    Witnesses are compared after moving the base point to the Gauss point:
    two finite residues agree iff their difference has norm < 1; all
    witnesses of norm > 1 (or infinity) give the direction towards
    infinity.
    """

    def __init__(self, at: TypeIIPoint, rep: ProjPoint):
        self.at = at
        self.rep = rep
        self._M = move_to_gauss(at)

    def _residue_witness(self) -> Tuple[str, Optional[Sym]]:
        return self._classify(self.rep)

    def same(self, o: "Direction") -> bool:
        # compare both witnesses inside one chart of the common base point
        if not self.at.eq(o.at):
            return False
        k1, z1 = self._classify(self.rep)
        k2, z2 = self._classify(o.rep)
        if k1 != k2:
            return False
        if k1 == "inf":
            return True
        return (z1 - z2).res_is_zero(self.at.scale)

    def _classify(self, rep: ProjPoint):
        w = self._M.apply_point(rep)
        eps = self.at.scale
        if w.x1.is_zero_at(eps):
            return ("inf", None)
        z = w.x0 / w.x1
        if z.norm_at(eps)._cmp_one() > 0:
            return ("inf", None)
        return ("fin", z)

    def __repr__(self):
        k, z = self._residue_witness()
        return f"Dir({'inf' if k == 'inf' else z!r} at {self.at!r})"


def seminorm_poly(p: UPoly, x: TypeIIPoint) -> NormValue:
    """|p(zeta(a, r))| = max_i |t_i| r^i for the Taylor shift at a."""
    if p.is_zero():
        return NormValue.zero()
    eps = x.scale
    shifted = p.shift_x(x.center)
    best = NormValue.zero()
    for i, c in enumerate(shifted.coeffs):
        nv = c.norm_at(eps)
        if nv.is_zero:
            continue
        if nv.is_infinite:
            return NormValue.infinite()
        val = NormValue.expq(nv.log_value() + x.logr * i)
        if val.cmp(best) > 0:
            best = val
    return best
