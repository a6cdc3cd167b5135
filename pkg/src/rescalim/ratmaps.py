"""Families of rational maps: normalization, resultants, limits, divisors.

A family is a pair of homogeneous degree-d polynomials over the symbolic
field with nonzero resultant.  ``normalize`` divides by the asymptotically
dominant coefficient, after which every coefficient has norm <= 1 at every
scale and the dominant one has norm exactly 1 at every scale; this is the
multi-scale analogue of the classical max-modulus-1 normalization and makes
all per-scale limits readable from one representative.

The limit of a family at a scale is the coefficientwise image; extracting
the gcd of the image pair (Euclid over the limit field, zero test = "zero
at the scale") splits it into a lower-degree map and the hole divisor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

from .errors import CycleMeetsHoles, UnboundedMagnitude
from .puiseux import PuiseuxRoot, puiseux_roots
from .projgeom import MobiusFamily, ProjPoint
from .scales import Magnitude, ScaleBasis, ScaleClass, TRIVIAL, theta_class
from .symfield import NormValue, QI, SymbolicNumber, exp_lt
from .upoly import UPoly

__all__ = ["RatMapFamily", "Divisor", "DivisorPoint", "LimitMap", "divisor_of_upoly"]

Sym = SymbolicNumber


def _dominant_index(coeffs: List[Sym]) -> int:
    from .symfield import _exp_key

    best, best_key = -1, None
    for i, z in enumerate(coeffs):
        if z.is_zero():
            continue
        e, c = z.num.lead()
        key = (_exp_key(e), c.mod_sq())
        if best_key is None or key > best_key:
            best, best_key = i, key
    if best < 0:
        raise ValueError("zero coefficient vector")
    return best


def _clear_dens(coeffs: List[Sym]) -> List[Sym]:
    """Multiply a coefficient tuple by the product of its distinct
    denominators (projectively harmless), leaving pure monomial-ring
    coefficients.  Coefficients typically share denominators, so the
    product is deduplicated."""
    from .symfield import HahnPoly

    basis = coeffs[0].basis
    one = HahnPoly.constant(basis, QI.ONE)
    dens = {}
    for c in coeffs:
        if len(c.den.terms) > 1 or c.den != one:
            dens[c.den] = c.den
    if not dens:
        return list(coeffs)
    D = one
    for d in dens.values():
        D = D * d
    cof = {d: None for d in dens}
    out = []
    for c in coeffs:
        if c.is_zero():
            out.append(c)
        elif c.den in cof:
            if cof[c.den] is None:
                cof[c.den] = D.exact_div(c.den)
            out.append(Sym(c.num * cof[c.den]))
        else:
            out.append(Sym(c.num * D))
    return out


def _scale_by_lead_monomial(coeffs: List[Sym], pivot: Sym) -> List[Sym]:
    """Divide a tuple by the leading monomial of ``pivot`` (no new
    denominators are created)."""
    from .symfield import exp_neg

    e, c = pivot.num.lead()
    de, dc = pivot.den.lead()  # canonical: (0, 1)
    inv_exp = exp_neg(e)
    inv_c = dc / c
    return [Sym(z.num.scale_monomial(inv_exp, inv_c), z.den) for z in coeffs]


def sanitize_pair(P: List[Sym], Q: List[Sym], eps: Optional[ScaleClass] = None
                  ) -> Tuple[List[Sym], List[Sym]]:
    """Clear denominators and normalise by the dominant leading monomial
    (the asymptotically dominant coefficient when eps is None, else the
    coefficient of maximal norm at eps)."""
    n = len(P)
    allc = _clear_dens(list(P) + list(Q))
    if eps is None:
        piv = allc[_dominant_index(allc)]
    else:
        piv = _dominant_at(allc, eps)
    allc = _scale_by_lead_monomial(allc, piv)
    return allc[:n], allc[n:]


class RatMapFamily:
    """f = [P : Q], P = sum P[i] z0^i z1^(d-i), Q likewise."""

    __slots__ = ("basis", "d", "P", "Q", "normalized")

    def __init__(self, basis: ScaleBasis, d: int, P: List[Sym], Q: List[Sym],
                 normalized: bool = False, _check: bool = False):
        assert len(P) == d + 1 and len(Q) == d + 1
        self.basis = basis
        self.d = d
        self.P = list(P)
        self.Q = list(Q)
        self.normalized = normalized
        if _check and self.resultant().is_zero():
            raise ValueError("resultant vanishes identically: not a degree-d family")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_affine(p: UPoly, q: UPoly, d: Optional[int] = None,
                    check: bool = True) -> "RatMapFamily":
        """Family [P:Q] from affine numerator/denominator polynomials."""
        basis = p.basis
        if d is None:
            d = max(p.degree(), q.degree())
        P = [p[i] for i in range(d + 1)]
        Q = [q[i] for i in range(d + 1)]
        return RatMapFamily(basis, d, P, Q, _check=check)

    def affine_pair(self) -> Tuple[UPoly, UPoly]:
        return UPoly(self.basis, self.P), UPoly(self.basis, self.Q)

    # -- normalization --------------------------------------------------------

    def normalize(self) -> "RatMapFamily":
        if self.normalized:
            return self
        P, Q = sanitize_pair(self.P, self.Q)
        return RatMapFamily(self.basis, self.d, P, Q,
                            normalized=True, _check=False)

    # -- resultant and the scale of the family ---------------------------------

    def resultant(self) -> Sym:
        """Homogeneous resultant of the pair (Sylvester determinant)."""
        d = self.d
        n = 2 * d
        zero = Sym.zero(self.basis)
        rows = []
        pd = list(reversed(self.P))  # descending in z0
        qd = list(reversed(self.Q))
        for k in range(d):
            rows.append([zero] * k + pd + [zero] * (d - 1 - k))
        for k in range(d):
            rows.append([zero] * k + qd + [zero] * (d - 1 - k))
        return _det(rows, self.basis)

    def eps_of(self) -> ScaleClass:
        """theta-class of the normalized resultant magnitude."""
        f = self.normalize()
        res = f.resultant()
        try:
            return theta_class(res.leading_data())
        except UnboundedMagnitude as exc:  # impossible for normalized input
            raise AssertionError("normalized resultant is unbounded") from exc

    # -- evaluation and algebra -------------------------------------------------

    def apply_point(self, p: ProjPoint) -> ProjPoint:
        x0, x1 = p.x0, p.x1
        pv = Sym.zero(self.basis)
        qv = Sym.zero(self.basis)
        for i in range(self.d + 1):
            mono = x0 ** i * x1 ** (self.d - i)
            pv = pv + self.P[i] * mono
            qv = qv + self.Q[i] * mono
        return ProjPoint(pv, qv)

    def apply_affine(self, z: Sym) -> ProjPoint:
        return self.apply_point(ProjPoint.affine(z))

    def compose(self, inner: "RatMapFamily") -> "RatMapFamily":
        """self o inner (degree d*d')."""
        p_in, q_in = inner.affine_pair_padded()
        d_out = self.d * inner.d
        acc_p = UPoly.zero(self.basis)
        acc_q = UPoly.zero(self.basis)
        # powers of the inner pair
        ppow = [UPoly.const(Sym.one(self.basis))]
        qpow = [UPoly.const(Sym.one(self.basis))]
        for _ in range(self.d):
            ppow.append(ppow[-1] * p_in)
            qpow.append(qpow[-1] * q_in)
        for i in range(self.d + 1):
            term = ppow[i] * qpow[self.d - i]
            acc_p = acc_p + term.scale(self.P[i])
            acc_q = acc_q + term.scale(self.Q[i])
        P = [acc_p[i] for i in range(d_out + 1)]
        Q = [acc_q[i] for i in range(d_out + 1)]
        return RatMapFamily(self.basis, d_out, P, Q, _check=False).normalize()

    def affine_pair_padded(self) -> Tuple[UPoly, UPoly]:
        """Affine pair, remembering the homogeneous degree via caller's d."""
        return UPoly(self.basis, self.P), UPoly(self.basis, self.Q)

    def iterate(self, l: int) -> "RatMapFamily":
        assert l >= 1
        f = self
        out = self
        for _ in range(l - 1):
            out = out.compose(f)
        return out

    def conjugate(self, M: MobiusFamily) -> "RatMapFamily":
        """M . f . M^{-1}, exactly, then normalized."""
        Mi = M.inverse()
        P1 = _subst_linear(self.P, self.d, Mi.a, Mi.b, Mi.c, Mi.d, self.basis)
        Q1 = _subst_linear(self.Q, self.d, Mi.a, Mi.b, Mi.c, Mi.d, self.basis)
        P2 = [M.a * p + M.b * q for p, q in zip(P1, Q1)]
        Q2 = [M.c * p + M.d * q for p, q in zip(P1, Q1)]
        return RatMapFamily(self.basis, self.d, P2, Q2, _check=False).normalize()

    def wronskian(self) -> Tuple[List[Sym], int]:
        """Coefficients of P_{z0} Q_{z1} - P_{z1} Q_{z0}, degree 2d-2."""
        d = self.d
        basis = self.basis

        def par0(C):  # d/dz0: degree d-1
            return [C[i + 1] * Sym.constant(basis, i + 1) for i in range(d)]

        def par1(C):  # d/dz1
            return [C[i] * Sym.constant(basis, d - i) for i in range(d)]

        p0, p1 = par0(self.P), par1(self.P)
        q0, q1 = par0(self.Q), par1(self.Q)
        out = [Sym.zero(basis) for _ in range(2 * d - 1)]
        for i in range(d):
            for j in range(d):
                out[i + j] = out[i + j] + p0[i] * q1[j] - p1[i] * q0[j]
        return out, 2 * d - 2

    def fixed_point_poly(self, l: int = 1) -> Tuple[List[Sym], int]:
        """z1*P - z0*Q for the l-th iterate; degree d^l + 1."""
        g = self.iterate(l) if l > 1 else self.normalize()
        dd = g.d
        out = []
        for i in range(dd + 2):
            a = g.P[i] if i <= dd else Sym.zero(self.basis)
            b = g.Q[i - 1] if i >= 1 else Sym.zero(self.basis)
            out.append(a - b)
        return out, dd + 1

    # -- limits and divisors ------------------------------------------------------

    def limit_at(self, eps: ScaleClass, depth: int = 8) -> "LimitMap":
        f = self.normalize()
        basis = self.basis
        d = self.d
        P = [c if not c.is_zero_at(eps) else Sym.zero(basis) for c in f.P]
        Q = [c if not c.is_zero_at(eps) else Sym.zero(basis) for c in f.Q]
        p, q = UPoly(basis, P), UPoly(basis, Q)
        if p.is_zero() or q.is_zero():
            # one side dies entirely: constant limit, all of degree in holes
            live = q if p.is_zero() else p
            holes = Divisor(eps)
            if d - live.degree():
                holes.add(ProjPoint.infinity(basis), d - live.degree())
            if live.degree() >= 1:
                for dp in divisor_of_upoly(live, live.degree(), eps, depth).points:
                    holes.add(dp.point, dp.mult, exact=dp.exact)
            one_up = UPoly.const(Sym.one(basis))
            zero_up = UPoly.zero(basis)
            U, V = (zero_up, one_up) if p.is_zero() else (one_up, zero_up)
            return LimitMap(eps, 0, U, V, holes, f)
        m_inf = min(d - p.degree(), d - q.degree())
        m_zero = min(p.valuation(), q.valuation())
        if m_zero > 0:
            p = UPoly(basis, p.coeffs[m_zero:])
            q = UPoly(basis, q.coeffs[m_zero:])
        H = p.gcd_at(q, eps)
        holes = Divisor(eps)
        if m_inf:
            holes.add(ProjPoint.infinity(basis), m_inf)
        if m_zero:
            holes.add(ProjPoint.affine(Sym.zero(basis)), m_zero)
        if H.degree() > 0:
            for dp in divisor_of_upoly(H, H.degree(), eps, depth).points:
                holes.add(dp.point, dp.mult, exact=dp.exact)
        U, _ = p.divmod_at(H, eps)
        V, _ = q.divmod_at(H, eps)
        U, V = _clean_at(U, eps), _clean_at(V, eps)
        delta = d - holes.degree()
        # clear denominators and make the max coefficient norm at eps be 1
        ncoeffs = max(len(U.coeffs), len(V.coeffs), 1)
        Pc = [U[i] for i in range(ncoeffs)]
        Qc = [V[i] for i in range(ncoeffs)]
        Pc, Qc = sanitize_pair(Pc, Qc, eps)
        U, V = UPoly(basis, Pc), UPoly(basis, Qc)
        return LimitMap(eps, delta, U, V, holes, f)

    def critical_divisor_at(self, eta: ScaleClass, depth: int = 8) -> "Divisor":
        w, deg = self.normalize().wronskian()
        return divisor_of_coeffs(self.basis, w, deg, eta, depth)

    def periodic_divisor_at(self, l: int, eta: ScaleClass, depth: int = 8) -> "Divisor":
        coeffs, deg = self.fixed_point_poly(l)
        return divisor_of_coeffs(self.basis, coeffs, deg, eta, depth)

    def derivative_affine(self) -> Tuple[UPoly, UPoly]:
        """f' = (p' q - p q')/q^2 as a (num, den) pair of affine polys."""
        p, q = self.affine_pair()
        return p.derivative() * q - p * q.derivative(), q * q

    def multiplier_of_cycle(self, points: List[ProjPoint]) -> Sym:
        """Multiplier of a periodic cycle given by exact points of the
        family; chart-flips to handle infinity."""
        num, den = self.derivative_affine()
        mult = Sym.one(self.basis)
        fn = fd = None
        for pt in points:
            if pt.is_infinity():
                if fn is None:
                    gflip = self.conjugate(MobiusFamily.inversion(self.basis))
                    fn, fd = gflip.derivative_affine()
                z = Sym.zero(self.basis)
                mult = mult * (fn(z) / fd(z))
            else:
                z = pt.as_affine()
                dv = den(z)
                if dv.is_zero():
                    raise CycleMeetsHoles("cycle point is a pole of the family")
                mult = mult * (num(z) / dv)
        return mult

    def multiplier_at(self, points: List[ProjPoint], eta: ScaleClass) -> Sym:
        """Image at a scale of the family multiplier of a cycle, after
        checking the orbit avoids the hole support at that scale."""
        lm = self.limit_at(eta)
        for pt in points:
            if lm.holes.contains(pt):
                raise CycleMeetsHoles(
                    "orbit meets the hole divisor; the limit multiplier "
                    "identity does not apply"
                )
        return self.multiplier_of_cycle(points)

    def __repr__(self):
        p, q = self.affine_pair()
        return f"RatMap({p!r} / {q!r}, d={self.d})"


# ---------------------------------------------------------------------------


@dataclass
class DivisorPoint:
    point: ProjPoint
    mult: int
    exact: bool = True


class Divisor:
    """Effective divisor at a scale, points merged by equality there."""

    def __init__(self, scale: ScaleClass):
        self.scale = scale
        self.points: List[DivisorPoint] = []

    def add(self, p: ProjPoint, mult: int = 1, exact: bool = True):
        for dp in self.points:
            if _points_eq(dp.point, p, self.scale):
                dp.mult += mult
                dp.exact = dp.exact and exact
                return
        self.points.append(DivisorPoint(p, mult, exact))

    def add_divisor(self, other: "Divisor", factor: int = 1):
        assert other.scale == self.scale
        for dp in other.points:
            self.add(dp.point, dp.mult * factor, dp.exact)

    def degree(self) -> int:
        return sum(dp.mult for dp in self.points)

    def contains(self, p: ProjPoint) -> bool:
        return any(_points_eq(dp.point, p, self.scale) for dp in self.points)

    def mult_of(self, p: ProjPoint) -> int:
        for dp in self.points:
            if _points_eq(dp.point, p, self.scale):
                return dp.mult
        return 0

    def eq(self, other: "Divisor") -> bool:
        if self.scale != other.scale or self.degree() != other.degree():
            return False
        if len(self.points) != len(other.points):
            return False
        used = [False] * len(other.points)
        for dp in self.points:
            hit = False
            for i, dq in enumerate(other.points):
                if not used[i] and dq.mult == dp.mult and _points_eq(dp.point, dq.point, self.scale):
                    used[i] = True
                    hit = True
                    break
            if not hit:
                return False
        return True

    def __repr__(self):
        inner = " + ".join(f"{dp.mult}*{dp.point!r}" for dp in self.points)
        return f"Div({inner or '0'})"


def _points_eq(a: ProjPoint, b: ProjPoint, eps: ScaleClass) -> bool:
    ai, bi = a.x1.is_zero_at(eps), b.x1.is_zero_at(eps)
    if ai or bi:
        return ai and bi
    return a.eq_at(b, eps)


@dataclass
class LimitMap:
    """Image of a family at a scale: a degree-delta map plus holes."""

    scale: ScaleClass
    degree: int
    map_p: UPoly
    map_q: UPoly
    holes: Divisor
    family: RatMapFamily

    def reduction(self, depth: int = 8):
        """Residue pair of the limit: (tp, tq, local degree, residue hole
        divisor).  Zero test is "norm < 1 at the scale"."""
        eps = self.scale
        zt = lambda c: c.res_is_zero(eps)
        basis = self.map_p.basis
        P = [c if not zt(c) else Sym.zero(basis) for c in
             [self.map_p[i] for i in range(self.degree + 1)]]
        Q = [c if not zt(c) else Sym.zero(basis) for c in
             [self.map_q[i] for i in range(self.degree + 1)]]
        p, q = UPoly(basis, P), UPoly(basis, Q)
        if p.is_zero() or q.is_zero():
            # constant reduction [1:0] or [0:1] unless both vanished
            if p.is_zero() and q.is_zero():
                raise AssertionError("limit pair has no unit coefficient")
        m_inf = min(self.degree - p.degree(), self.degree - q.degree())
        m_zero = min(p.valuation(), q.valuation()) if not (p.is_zero() or q.is_zero()) else 0
        if m_zero > 0:
            p = UPoly(basis, p.coeffs[m_zero:])
            q = UPoly(basis, q.coeffs[m_zero:])
        if p.is_zero() or q.is_zero():
            H = UPoly.const(Sym.one(basis))
        else:
            H = p.gcd_at(q, eps, zero_test=zt)
        rholes = Divisor(eps)
        if m_inf:
            rholes.add(ProjPoint.infinity(basis), m_inf)
        if m_zero:
            rholes.add(ProjPoint.affine(Sym.zero(basis)), m_zero)
        if H.degree() > 0:
            for dp in divisor_of_upoly(H, H.degree(), eps, depth,
                                       residue=True).points:
                rholes.add(dp.point, dp.mult, exact=dp.exact)
        if H.degree() > 0:
            U, _ = p.divmod_at(H, eps, zero_test=zt)
            V, _ = q.divmod_at(H, eps, zero_test=zt)
        else:
            U, V = p, q
        U = UPoly(basis, [c if not zt(c) else Sym.zero(basis) for c in U.coeffs])
        V = UPoly(basis, [c if not zt(c) else Sym.zero(basis) for c in V.coeffs])
        locdeg = self.degree - rholes.degree()
        return U, V, locdeg, rholes

    def reduction_degree(self) -> int:
        return self.reduction()[2]

    def is_constant(self) -> bool:
        return self.degree == 0

    def map_family(self) -> Optional[RatMapFamily]:
        """The limit pair as a family of its own degree (None if constant)."""
        if self.degree == 0:
            return None
        P = [self.map_p[i] for i in range(self.degree + 1)]
        Q = [self.map_q[i] for i in range(self.degree + 1)]
        return RatMapFamily(self.map_p.basis, self.degree, P, Q,
                            normalized=False, _check=False)

    def __repr__(self):
        return (f"Limit(scale={self.scale!r}, deg={self.degree}, "
                f"map={self.map_p!r}/{self.map_q!r}, holes={self.holes!r})")


# ---------------------------------------------------------------------------


def divisor_of_coeffs(basis: ScaleBasis, coeffs: List[Sym], total_deg: int,
                      eps: ScaleClass, depth: int = 8) -> Divisor:
    return divisor_of_upoly(UPoly(basis, coeffs), total_deg, eps, depth)


def divisor_of_upoly(p: UPoly, total_deg: int, eps: ScaleClass,
                     depth: int = 8, residue: bool = False) -> Divisor:
    """Divisor at a scale of a homogeneous polynomial given by its affine
    part ``p`` and its homogeneous degree.

    The exact roots over the field are computed once; each root maps to its
    image at the scale (infinity when unbounded), and the degree drop goes
    to infinity.  With ``residue=True`` images are taken in the residue
    world (norm < 1 collapses, norm > 1 goes to infinity).
    """
    basis = p.basis
    div = Divisor(eps)
    drop = total_deg - p.degree()
    if drop:
        div.add(ProjPoint.infinity(basis), drop)
    if p.degree() >= 1:
        for root in puiseux_roots(p, depth):
            _add_root_image(div, root, eps, residue)
    assert div.degree() == total_deg
    return div


def _add_root_image(div: Divisor, root: PuiseuxRoot, eps: ScaleClass,
                    residue: bool):
    basis = root.value.basis
    nv = root.value.norm_at(eps)
    if nv.is_infinite or (residue and nv._cmp_one() > 0):
        div.add(ProjPoint.infinity(basis), root.multiplicity)
        return
    exact = root.exact
    if not exact and root.prec is not None:
        # the unknown tail does not move the image iff it dies at eps
        tail = Sym.monomial(basis, dict(enumerate(root.prec)))
        tn = tail.norm_at(eps)
        determined = tn.is_zero or (residue and tn._cmp_one() < 0)
        exact = determined
    div.add(ProjPoint.affine(root.value), root.multiplicity, exact=exact)


def _clean_at(p: UPoly, eps: ScaleClass) -> UPoly:
    return UPoly(p.basis, [c if not c.is_zero_at(eps) else Sym.zero(p.basis)
                           for c in p.coeffs])


def _dominant_at(coeffs: List[Sym], eps: ScaleClass) -> Sym:
    best, best_norm = None, None
    for c in coeffs:
        if c.is_zero():
            continue
        nv = c.norm_at(eps)
        if nv.is_zero:
            continue
        if best is None or nv.cmp(best_norm) > 0:
            best, best_norm = c, nv
    if best is None:
        raise ValueError("all coefficients vanish at the scale")
    return best


def _subst_linear(coeffs: List[Sym], d: int, a: Sym, b: Sym, c: Sym, e: Sym,
                  basis: ScaleBasis) -> List[Sym]:
    """Coefficients of C(a z0 + b z1, c z0 + e z1) for homogeneous C."""
    out = [Sym.zero(basis) for _ in range(d + 1)]
    # binomial expansions of (a z0 + b z1)^i and (c z0 + e z1)^(d-i)
    for i, coeff in enumerate(coeffs):
        if coeff.is_zero():
            continue
        first = _binom_pow(a, b, i, basis)
        second = _binom_pow(c, e, d - i, basis)
        conv = [Sym.zero(basis) for _ in range(d + 1)]
        for k1, c1 in enumerate(first):
            for k2, c2 in enumerate(second):
                conv[k1 + k2] = conv[k1 + k2] + c1 * c2
        for k in range(d + 1):
            out[k] = out[k] + coeff * conv[k]
    return out


def _binom_pow(u: Sym, v: Sym, m: int, basis: ScaleBasis) -> List[Sym]:
    """Coefficients (in z0^k z1^(m-k)) of (u z0 + v z1)^m."""
    out = []
    for k in range(m + 1):
        t = Sym.constant(basis, comb(m, k))
        out.append(t * u ** k * v ** (m - k))
    return out


def _det(rows: List[List[Sym]], basis: ScaleBasis) -> Sym:
    """Exact determinant by fraction-free Bareiss elimination over the
    monomial ring (denominators cleared rowwise first)."""
    from .symfield import HahnPoly

    n = len(rows)
    one = HahnPoly.constant(basis, QI.ONE)
    mult = one
    m: List[List[HahnPoly]] = []
    for row in rows:
        dens = [c.den for c in row]
        pre = [one]
        for d in dens:
            pre.append(pre[-1] * d)
        suf = [one] * (n + 1)
        for i in range(n - 1, -1, -1):
            suf[i] = suf[i + 1] * dens[i]
        mult = mult * pre[-1]
        m.append([row[i].num * pre[i] * suf[i + 1] for i in range(n)])
    sign = 1
    prev = one
    for k in range(n - 1):
        piv = None
        for r in range(k, n):
            if not m[r][k].is_zero():
                piv = r
                break
        if piv is None:
            return Sym.zero(basis)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = HahnPoly.zero(basis)
        prev = m[k][k]
    det = SymbolicNumber(m[n - 1][n - 1], mult)
    if sign < 0:
        det = -det
    return det
