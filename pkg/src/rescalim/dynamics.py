"""Action of a limit map on type II points; reduction data; Julia cycles.

The image of the Gauss point under a map h = [P:Q] of positive degree at a
scale is found by zooming: the reduction of the (scale-normalized) pair is
nonconstant exactly when the Gauss point is fixed, and while it is a
constant c the target chart is recentered at a lift of c and rescaled by
the dominant norm of P - cQ, which strictly shrinks.  Every seminorm used
is a Gauss norm (max coefficient norm after a Taylor shift), so the loop
is exact.

Tangent maps are residue maps of recentered pairs; their hole support
gives the bad directions.  Since every tangent map of an indifferent point
is a Moebius transformation over the residue field, the finiteness of a
direction orbit is decidable exactly: the map has finite order iff the
trace-squared-over-determinant residue equals one of {0, 1, 2, 3, 4}
(orders 2, 3, 4, 6, 1), and an infinite-order Moebius map has a finite
orbit only at its fixed points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from .errors import ScaleMismatch, TruncationInsufficient
from .projgeom import (Direction, MobiusFamily, ProjPoint, TypeIIPoint,
                       move_to_gauss)
from .puiseux import puiseux_roots
from .ratmaps import Divisor, LimitMap, RatMapFamily, divisor_of_upoly
from .scales import ScaleBasis, ScaleClass, TRIVIAL
from .symfield import SymbolicNumber, QI
from .upoly import UPoly

__all__ = [
    "PairAtScale",
    "StepData",
    "TypeIICycleData",
    "typeII_step",
    "bad_directions",
    "find_periodic_typeII",
    "pgr_test",
    "PGRResult",
    "mobius_order",
    "mobius_orbit_infinite",
]

Sym = SymbolicNumber

_MAX_ZOOM = 40


class PairAtScale:
    """A rational map over the field at a scale, as a coprime-at-scale
    normalized pair of affine polynomials with homogeneous degree delta."""

    def __init__(self, p: UPoly, q: UPoly, delta: int, eps: ScaleClass):
        self.p = p
        self.q = q
        self.delta = delta
        self.eps = eps
        self.basis = p.basis

    @staticmethod
    def of_limit(lm: LimitMap) -> "PairAtScale":
        return PairAtScale(lm.map_p, lm.map_q, lm.degree, lm.scale)

    def normalized(self) -> "PairAtScale":
        from .ratmaps import sanitize_pair

        n = self.delta + 1
        P = [self.p[i] for i in range(n)]
        Q = [self.q[i] for i in range(n)]
        P, Q = sanitize_pair(P, Q, self.eps)
        return PairAtScale(UPoly(self.basis, P), UPoly(self.basis, Q),
                           self.delta, self.eps)

    def precompose(self, M: MobiusFamily) -> "PairAtScale":
        """The pair of self o M (exact substitution)."""
        from .ratmaps import _subst_linear

        P = [self.p[i] for i in range(self.delta + 1)]
        Q = [self.q[i] for i in range(self.delta + 1)]
        P1 = _subst_linear(P, self.delta, M.a, M.b, M.c, M.d, self.basis)
        Q1 = _subst_linear(Q, self.delta, M.a, M.b, M.c, M.d, self.basis)
        return PairAtScale(UPoly(self.basis, P1), UPoly(self.basis, Q1),
                           self.delta, self.eps)

    def postcompose(self, M: MobiusFamily) -> "PairAtScale":
        p2 = self.p.scale(M.a) + self.q.scale(M.b)
        q2 = self.p.scale(M.c) + self.q.scale(M.d)
        return PairAtScale(p2, q2, self.delta, self.eps)

    def compose_pair(self, inner: "PairAtScale") -> "PairAtScale":
        """self o inner as exact pairs (degrees multiply)."""
        basis = self.basis
        d_out = self.delta * inner.delta
        ppow = [UPoly.const(Sym.one(basis))]
        qpow = [UPoly.const(Sym.one(basis))]
        for _ in range(self.delta):
            ppow.append(ppow[-1] * inner.p)
            qpow.append(qpow[-1] * inner.q)
        acc_p = UPoly.zero(basis)
        acc_q = UPoly.zero(basis)
        for i in range(self.delta + 1):
            term = ppow[i] * qpow[self.delta - i]
            acc_p = acc_p + term.scale(self.p[i])
            acc_q = acc_q + term.scale(self.q[i])
        return PairAtScale(acc_p, acc_q, d_out, self.eps)

    def reduction(self, depth: int = 8):
        """(map part rp/rq, local degree, residue hole divisor) of the
        residue of the normalized pair."""
        basis = self.basis
        eps = self.eps
        nf = self.normalized()
        zt = lambda c: c.res_is_zero(eps)
        P = [c if not zt(c) else Sym.zero(basis)
             for c in [nf.p[i] for i in range(self.delta + 1)]]
        Q = [c if not zt(c) else Sym.zero(basis)
             for c in [nf.q[i] for i in range(self.delta + 1)]]
        p, q = UPoly(basis, P), UPoly(basis, Q)
        m_inf = min(self.delta - p.degree(), self.delta - q.degree()) \
            if not (p.is_zero() or q.is_zero()) else \
            self.delta - (q.degree() if p.is_zero() else p.degree())
        rholes = Divisor(eps)
        if m_inf:
            rholes.add(ProjPoint.infinity(basis), m_inf)
        if p.is_zero() or q.is_zero():
            live = q if p.is_zero() else p
            for dp in divisor_of_upoly(live, live.degree(), eps, depth,
                                       residue=True).points:
                rholes.add(dp.point, dp.mult, exact=dp.exact)
            zero_up = UPoly.zero(basis)
            one_up = UPoly.const(Sym.one(basis))
            rp, rq = (zero_up, one_up) if p.is_zero() else (one_up, zero_up)
            return rp, rq, 0, rholes
        m_zero = min(p.valuation(), q.valuation())
        if m_zero > 0:
            p = UPoly(basis, p.coeffs[m_zero:])
            q = UPoly(basis, q.coeffs[m_zero:])
            rholes.add(ProjPoint.affine(Sym.zero(basis)), m_zero)
        H = p.gcd_at(q, eps, zero_test=zt)
        if H.degree() > 0:
            for dp in divisor_of_upoly(H, H.degree(), eps, depth,
                                       residue=True).points:
                rholes.add(dp.point, dp.mult, exact=dp.exact)
            p, _ = p.divmod_at(H, eps, zero_test=zt)
            q, _ = q.divmod_at(H, eps, zero_test=zt)
        p = UPoly(basis, [c if not zt(c) else Sym.zero(basis) for c in p.coeffs])
        q = UPoly(basis, [c if not zt(c) else Sym.zero(basis) for c in q.coeffs])
        return p, q, self.delta - rholes.degree(), rholes


@dataclass
class StepData:
    """Result of one application of a map to a type II point."""

    image: TypeIIPoint
    local_degree: int
    tangent: Tuple[UPoly, UPoly]   # residue pair in the charts below
    chart_src: MobiusFamily        # moves the source point to Gauss
    chart_dst: MobiusFamily        # moves the image point to Gauss
    res_holes: Divisor             # holes of the recentered reduction
    bad_dirs: List[Direction]      # directions with hole-support residues


def _reduction_is_constant(cur: PairAtScale):
    """None if the reduction map is nonconstant; otherwise the pair
    (c1, c2) of a residue-level constant value [c1 : c2].

    Constancy is read off the Wronskian residue, which needs no gcd.
    """
    eps = cur.eps
    w = cur.p * cur.q.derivative() - cur.p.derivative() * cur.q
    for c in w.coeffs:
        if not c.res_is_zero(eps):
            return None
    for i in range(cur.delta, -1, -1):
        if not cur.q[i].res_is_zero(eps):
            return (cur.p[i], cur.q[i])
    for i in range(cur.delta, -1, -1):
        if not cur.p[i].res_is_zero(eps):
            return (cur.p[i], Sym.zero(cur.basis))
    raise AssertionError("normalized pair with all-null residue")


def _image_of_gauss(pair: PairAtScale, depth: int = 8) -> MobiusFamily:
    """A Moebius family N with N(h(x_g)) = x_g, by target-side zooming."""
    basis = pair.basis
    eps = pair.eps
    if pair.delta < 1:
        raise ValueError("image of Gauss point needs a nonconstant map")
    N = MobiusFamily.identity(basis)
    cur = pair.normalized()
    for _ in range(_MAX_ZOOM):
        const = _reduction_is_constant(cur)
        if const is None:
            return N
        c1, c2 = const
        if c2.is_zero() or c2.res_is_zero(eps):
            flip = MobiusFamily.inversion(basis)
            N = flip.compose(N)
            cur = cur.postcompose(flip).normalized()
            continue
        c0 = c1 / c2
        shifted = cur.p - cur.q.scale(c0)
        from .ratmaps import _dominant_at

        try:
            m = _dominant_at(shifted.coeffs, eps).norm_at(eps)
        except ValueError:
            raise TruncationInsufficient(
                "map is constant at this scale; no Gauss image"
            )
        rho = Sym.monomial(basis, {eps.index: m.log_value()})
        M = MobiusFamily.affine(rho.inv(), -c0 / rho)
        N = M.compose(N)
        cur = PairAtScale(shifted.scale(rho.inv()), cur.q, cur.delta, eps)
        cur = cur.normalized()
    raise TruncationInsufficient("Gauss image zoom did not stabilise")


def _reduce_center(y: TypeIIPoint) -> TypeIIPoint:
    """Replace the center by a shorter representative of the same disk
    when a truncation stays within the radius (exact test)."""
    c = y.center
    nv = c.norm_at(y.scale)
    if nv.is_zero or (not nv.is_infinite and nv.log_value() <= y.logr):
        if not c.is_zero():
            return TypeIIPoint(y.scale, SymbolicNumber.zero(c.basis), y.logr)
        return y
    if c.size() <= 3:
        return y
    for k in (1, 2, 3, 4, 6):
        ck = c.truncated(k)
        dn = (c - ck).norm_at(y.scale)
        if dn.is_zero or dn.log_value() <= y.logr:
            if ck.size() < c.size():
                return TypeIIPoint(y.scale, ck, y.logr)
            return y
    return y


def typeII_step(pair: PairAtScale, x: TypeIIPoint, depth: int = 8,
                want_tangent: bool = True,
                target_hint: Optional[TypeIIPoint] = None) -> StepData:
    """Image, local degree and tangent data of a type II point under the
    map represented by ``pair`` at its scale.

    With want_tangent=False only the image point is computed (cheap);
    tangent, local degree and bad directions are left empty.  When the
    image coincides with ``target_hint``, that representative's chart is
    used on the target side (so tangents along an orbit compose).
    """
    if x.scale != pair.eps:
        raise ScaleMismatch("point and map live at different scales")
    basis = pair.basis
    M1 = move_to_gauss(x)
    moved = pair.precompose(M1.inverse()).normalized()
    N = _image_of_gauss(moved, depth)
    y = N.inverse().apply_typeII(TypeIIPoint.gauss(basis, pair.eps))
    y = _reduce_center(y)
    if target_hint is not None and y.eq(target_hint):
        y = target_hint
    if not want_tangent:
        zero_up = UPoly.zero(basis)
        return StepData(y, 0, (zero_up, zero_up), M1, N, Divisor(pair.eps), [])
    M2 = move_to_gauss(y)
    recentered = moved.postcompose(M2).normalized()
    rp, rq, locdeg, rholes = recentered.reduction(depth)
    bad = [Direction(x, M1.inverse().apply_point(dp.point))
           for dp in rholes.points]
    return StepData(y, locdeg, (rp, rq), M1, M2, rholes, bad)


def bad_directions(pair: PairAtScale, x: TypeIIPoint, depth: int = 8) -> List[Direction]:
    """Directions at x whose ball meets the fiber of the image point
    (hole support of the recentered reduction)."""
    return typeII_step(pair, x, depth).bad_dirs


# ---------------------------------------------------------------------------
# Moebius classification (exact)


def _mobius_matrix_of_pair(p: UPoly, q: UPoly) -> MobiusFamily:
    basis = p.basis
    return MobiusFamily(p[1], p[0], q[1], q[0])


def mobius_order(M: MobiusFamily, is_zero: Callable[[Sym], bool]) -> Optional[int]:
    """Order of a Moebius transformation over the field-with-zero-test,
    or None when the order is infinite.

    The eigenvalue ratio is a root of unity iff tr^2/det equals one of
    0, 1, 2, 3, 4 (orders 2, 3, 4, 6 and parabolic-or-identity); in this
    Q(i)-coefficient model no other root of unity can occur.
    """
    tr = M.a + M.d
    det = M.det()
    u = tr * tr / det
    basis = M.basis
    table = {0: 2, 1: 3, 2: 4, 3: 6}
    for c, order in table.items():
        if is_zero(u - Sym.constant(basis, c)):
            return order
    if is_zero(u - Sym.constant(basis, 4)):
        # parabolic or identity; identity iff off-diagonal vanishes and
        # the diagonal entries agree
        if is_zero(M.b) and is_zero(M.c) and is_zero(M.a - M.d):
            return 1
        return None  # translation-conjugate: infinite order
    return None


def _mobius_fixes(M: MobiusFamily, w: ProjPoint, is_zero) -> bool:
    img = M.apply_point(w)
    return is_zero(img.x0 * w.x1 - img.x1 * w.x0)


def mobius_orbit_infinite(M: MobiusFamily, w: ProjPoint,
                          is_zero: Callable[[Sym], bool]) -> bool:
    """Exact decision: the forward orbit of w under the Moebius map is
    infinite iff the map has infinite order and w is not fixed."""
    order = mobius_order(M, is_zero)
    if order is not None:
        return False
    return not _mobius_fixes(M, w, is_zero)


# ---------------------------------------------------------------------------
# Periodic type II points


@dataclass
class TypeIICycleData:
    points: List[TypeIIPoint]
    local_degrees: List[int]
    tangent: Tuple[UPoly, UPoly]        # return tangent at points[0]
    cls: str                            # "repelling" | "indifferent"
    julia: bool
    bad_directions: List[Tuple[Direction, str]]  # status "finite"/"infinite"
    steps: List[StepData] = field(default_factory=list)

    @property
    def period(self) -> int:
        return len(self.points)

    def return_degree(self) -> int:
        d = 1
        for k in self.local_degrees:
            d *= k
        return d


_SEED_TERMS = 5


def _orbit_points_of_pair(pair: PairAtScale, max_period: int, hull_depth: int,
                          depth: int) -> List[ProjPoint]:
    """Rigid hull seeds: periodic points, critical points and their
    forward orbits.

    Seeds are truncated to a few leading monomials; they only steer the
    candidate search and every candidate is verified by exact stepping.
    """
    basis = pair.basis
    f = RatMapFamily(basis, pair.delta,
                     [pair.p[i] for i in range(pair.delta + 1)],
                     [pair.q[i] for i in range(pair.delta + 1)],
                     _check=False)
    seed_depth = min(depth, 3)
    pts: List[ProjPoint] = []

    def add_affine(z: Sym):
        pts.append(ProjPoint.affine(z.truncated(_SEED_TERMS)))

    for l in range(1, max_period + 1):
        try:
            coeffs, _ = f.fixed_point_poly(l)
            poly = UPoly(basis, coeffs)
            if poly.degree() >= 1:
                for r in puiseux_roots(poly, seed_depth):
                    if r.resolved and not r.value.is_zero() or r.resolved:
                        add_affine(r.value)
        except Exception:
            continue
    try:
        w, _ = f.wronskian()
        wp = UPoly(basis, w)
        crits: List[Sym] = []
        if wp.degree() >= 1:
            for r in puiseux_roots(wp, seed_depth):
                if r.resolved:
                    crits.append(r.value.truncated(_SEED_TERMS))
        for z in crits:
            add_affine(z)
        orbit = list(crits)
        for _ in range(hull_depth):
            nxt: List[Sym] = []
            for z in orbit:
                try:
                    img = f.apply_affine(z)
                    if img.x1.is_zero():
                        continue
                    zi = img.as_affine().truncated(_SEED_TERMS)
                    nxt.append(zi)
                    add_affine(zi)
                except Exception:
                    continue
            orbit = nxt
            if len(pts) > 60:
                break
    except Exception:
        pass
    return pts


def _candidate_typeII(pair: PairAtScale, max_period: int, hull_depth: int,
                      depth: int) -> List[TypeIIPoint]:
    basis = pair.basis
    eps = pair.eps
    pts = _orbit_points_of_pair(pair, max_period, hull_depth, depth)
    finite = []
    for p in pts:
        if p.x1.is_zero():
            continue
        z = p.as_affine()
        nv = z.norm_at(eps)
        if not nv.is_infinite:
            finite.append(z)
    cands: List[TypeIIPoint] = [TypeIIPoint.gauss(basis, eps)]

    def push(x: TypeIIPoint):
        for c in cands:
            if c.eq(x):
                return
        cands.append(x)

    for i, a in enumerate(finite):
        na = a.norm_at(eps)
        if not na.is_zero:
            push(TypeIIPoint(eps, Sym.zero(basis), na.log_value()))
        for b in finite[i + 1:]:
            dn = (a - b).norm_at(eps)
            if not dn.is_zero:
                push(TypeIIPoint(eps, a, dn.log_value()))
    cands.sort(key=lambda x: (x.logr, str(x.center)))
    if len(cands) > 36:
        cands = cands[:36]
    return cands


def _pair_center_size(x: TypeIIPoint) -> int:
    return x.center.size()


def find_periodic_typeII(lm: LimitMap, max_period: int = 3,
                         hull_depth: int = 4, depth: int = 8) -> List[TypeIICycleData]:
    """Periodic type II cycles of the limit map found on the candidate
    hull.  Completeness is relative to max_period/hull_depth."""
    pair = PairAtScale.of_limit(lm)
    if pair.delta < 2:
        return []
    while max_period > 1 and pair.delta ** max_period + 1 > 12:
        max_period -= 1
    cands = _candidate_typeII(pair, max_period, hull_depth, depth)
    cycles: List[TypeIICycleData] = []
    explored: List[TypeIIPoint] = []

    def seen(x: TypeIIPoint) -> bool:
        return any(any(p.eq(x) for p in c.points) for c in cycles)

    for x0 in cands:
        if seen(x0):
            explored.append(x0)
            continue
        orbit = [x0]
        strikes = 0
        try:
            for _ in range(max_period):
                st = typeII_step(pair, orbit[-1], depth, want_tangent=False)
                hit = None
                for j, prev in enumerate(orbit):
                    if st.image.eq(prev):
                        hit = j
                        break
                if hit is not None:
                    if hit != 0:
                        break  # preperiodic tail: cycle found from another seed
                    cyc = _assemble_cycle(pair, orbit, depth)
                    if cyc is not None and not seen(cyc.points[0]):
                        cycles.append(cyc)
                    break
                # an orbit through an already-explored candidate was or will
                # be handled from that candidate; orbits leaving the hull
                # are abandoned after one grace step (completeness stays
                # relative to the hull)
                if any(st.image.eq(c) for c in explored):
                    break
                if not any(st.image.eq(c) for c in cands):
                    strikes += 1
                    if strikes >= 2:
                        break
                if _pair_center_size(st.image) > 12:
                    break  # bulky wandering representative: abandon
                orbit.append(st.image)
        except TruncationInsufficient:
            continue
        finally:
            explored.append(x0)
    cycles.sort(key=lambda c: (c.period, c.points[0].logr))
    return cycles


def _assemble_cycle(pair: PairAtScale, orbit: List[TypeIIPoint],
                    depth: int) -> Optional[TypeIICycleData]:
    eps = pair.eps
    basis = pair.basis
    m = len(orbit)
    steps = [typeII_step(pair, orbit[j], depth,
                         target_hint=orbit[(j + 1) % m]) for j in range(m)]
    locdegs = [s.local_degree for s in steps]
    # return tangent at orbit[0]: recenter f^m by the first chart and the
    # composite of steps; simplest is to compose the step tangents
    tp, tq = steps[0].tangent
    ret = PairAtScale(tp, tq, max(tp.degree(), tq.degree()), eps)
    for s in steps[1:]:
        tpn, tqn = s.tangent
        nxt = PairAtScale(tpn, tqn, max(tpn.degree(), tqn.degree()), eps)
        ret = nxt.compose_pair(ret)
    rp, rq, locdeg, _ = ret.reduction(depth)
    retdeg = 1
    for k in locdegs:
        retdeg *= k
    cls = "repelling" if retdeg >= 2 else "indifferent"
    bad: List[Tuple[Direction, str]] = []
    julia = cls == "repelling"
    if cls == "indifferent":
        # bad directions of the return map at orbit[0] with orbit status
        # under the return tangent (a residue Moebius map)
        ret_step = _return_step(pair, orbit, depth)
        M = _mobius_matrix_of_pair(rp, rq) if max(rp.degree(), rq.degree()) == 1 \
            else _mobius_matrix_of_pair(*ret_step.tangent)
        zt = lambda c: c.res_is_zero(eps)
        for d in ret_step.bad_dirs:
            w = ret_step.chart_src.apply_point(d.rep)
            inf = mobius_orbit_infinite(M, w, zt)
            bad.append((d, "infinite" if inf else "finite"))
            if inf:
                julia = True
        tangent = ret_step.tangent
    else:
        tangent = (rp, rq)
    return TypeIICycleData(list(orbit), locdegs, tangent, cls, julia, bad, steps)


def _return_step(pair: PairAtScale, orbit: List[TypeIIPoint], depth: int) -> StepData:
    """Step data of the return map f^m at orbit[0] (exact composition)."""
    ret = pair
    for _ in range(len(orbit) - 1):
        ret = ret.compose_pair(pair)
    return typeII_step(ret, orbit[0], depth)


# ---------------------------------------------------------------------------
# Potential good reduction


@dataclass
class PGRResult:
    status: str            # "pgr" | "not_pgr" | "undecided"
    reason: str = ""
    witness: Optional[TypeIIPoint] = None

    @property
    def is_pgr(self) -> bool:
        return self.status == "pgr"

    @property
    def is_not_pgr(self) -> bool:
        return self.status == "not_pgr"


def pgr_test(lm: LimitMap, max_period: int = 2, hull_depth: int = 3,
             depth: int = 8) -> PGRResult:
    """Potential good reduction of a positive-degree limit at a
    non-trivial scale."""
    eps = lm.scale
    if eps.is_trivial or eps.is_zero:
        raise ScaleMismatch("pgr test applies below the trivial scale")
    if lm.degree < 1:
        raise ValueError("pgr test needs a map of degree >= 1")
    basis = lm.map_p.basis
    if lm.degree == 1:
        M = _mobius_matrix_of_pair(lm.map_p, lm.map_q)
        u = (M.a + M.d) ** 2 / M.det()
        if u.norm_at(eps)._cmp_one() > 0:
            return PGRResult("not_pgr", "degree-1 map conjugate to a homothety of norm != 1")
        return PGRResult("pgr", "degree-1 map with unit eigenvalue ratio")

    pair = PairAtScale.of_limit(lm)
    _, _, locdeg, _ = pair.reduction(depth)
    if locdeg == lm.degree:
        return PGRResult("pgr", "good reduction at the Gauss point",
                         TypeIIPoint.gauss(basis, eps))

    # rigid repelling periodic points; periods gated so the divisor
    # degree d^l + 1 stays small
    g = lm.map_family()
    per_cap = max_period
    while per_cap > 1 and lm.degree ** per_cap + 1 > 12:
        per_cap -= 1
    for l in range(1, per_cap + 1):
        try:
            coeffs, _ = g.fixed_point_poly(l)
            poly = UPoly(basis, coeffs)
            if poly.degree() < 1:
                continue
            for root in puiseux_roots(poly, depth):
                if not root.resolved:
                    continue
                try:
                    mult = g.multiplier_of_cycle(
                        _orbit_of(g, root.value, l))
                    if mult.norm_at(eps)._cmp_one() > 0:
                        return PGRResult(
                            "not_pgr", f"repelling rigid {l}-periodic point")
                except Exception:
                    continue
        except Exception:
            continue

    # hull search: full-degree fixed type II point => PGR;
    # repelling or indifferent-Julia cycle => not PGR
    try:
        for x in _candidate_typeII(pair, per_cap, hull_depth, depth):
            try:
                st = typeII_step(pair, x, depth, want_tangent=False)
                if st.image.eq(x):
                    st = typeII_step(pair, x, depth)
            except TruncationInsufficient:
                continue
            if st.image.eq(x) and st.local_degree == lm.degree:
                return PGRResult("pgr", "totally invariant type II point", x)
        for cyc in find_periodic_typeII(lm, per_cap, hull_depth, depth):
            if cyc.cls == "repelling":
                return PGRResult("not_pgr", "repelling type II cycle",
                                 cyc.points[0])
            if cyc.julia:
                return PGRResult(
                    "not_pgr",
                    "indifferent type II cycle with an infinite bad-direction orbit",
                    cyc.points[0])
    except TruncationInsufficient:
        pass
    return PGRResult("undecided",
                     f"no certificate at period<={max_period}, depth<={hull_depth}")


def _orbit_of(g: RatMapFamily, z: Sym, l: int) -> List[ProjPoint]:
    pts = [ProjPoint.affine(z)]
    for _ in range(l - 1):
        pts.append(g.apply_point(pts[-1]))
    return pts
