"""Adapted rescalings, baby rescalings, cycles, and the rooted tree.

A rescaling is a pair (M, eta) of a Moebius family and a scale.  It is
adapted to a family f when the limit of M.f.M^{-1} at eta has degree >= 1
(A1), has no potential good reduction when eta is non-trivial (A2), and,
for degree-1 limits, a bad direction at a finer scale has an image with
infinite orbit (A3).  Two rescalings at the same scale are equivalent when
M.L^{-1} keeps degree 1 there; no tolerances are involved.

The tree is built from the fundamental rescaling by attaching, at every
vertex, the baby rescalings of the periodic type II Julia cycles of its
limit, lifting each to a cycle of rescalings and quotienting by
equivalence.  Completeness of vertex expansion is relative to the search
depths recorded on the vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import (RootOfUnityMultiplier, ScaleMismatch, SearchExhausted,
                     TruncationInsufficient)
from .dynamics import (PairAtScale, PGRResult, StepData, TypeIICycleData,
                       _mobius_matrix_of_pair, find_periodic_typeII,
                       mobius_orbit_infinite, mobius_order, pgr_test,
                       typeII_step)
from .projgeom import (Direction, MobiusFamily, ProjPoint, TypeIIPoint,
                       move_to_gauss)
from .puiseux import puiseux_roots
from .ratmaps import LimitMap, RatMapFamily
from .scales import ScaleBasis, ScaleClass, TRIVIAL, compare_scales
from .symfield import QI, SymbolicNumber
from .upoly import UPoly

__all__ = [
    "AdaptedCert",
    "GRescaling",
    "RescalingCycle",
    "RescalingTree",
    "TreeVertex",
    "is_adapted",
    "is_adapted_conjugated",
    "fundamental_rescaling",
    "baby_rescaling",
    "chain_decompose",
    "extend_to_cycle",
    "build_tree",
    "classify_quadratic",
    "audit_bounds",
    "equivalent_rescalings",
]

Sym = SymbolicNumber


@dataclass
class AdaptedCert:
    """Which adaptedness conditions hold, with witnesses."""

    ok: bool
    degree: int = 0
    reason: str = ""
    a2: Optional[PGRResult] = None
    a3_scale: Optional[ScaleClass] = None
    a3_direction: Optional[ProjPoint] = None


@dataclass
class GRescaling:
    M: MobiusFamily
    scale: ScaleClass
    limit: LimitMap
    cert: AdaptedCert
    iterate: int = 1  # the rescaling is adapted to f^iterate


@dataclass
class RescalingCycle:
    """Period-l cycle of rescalings (M_0..M_{l-1}, scale)."""

    mobius: List[MobiusFamily]
    scale: ScaleClass
    transition_limits: List[LimitMap] = field(default_factory=list)
    return_limit: Optional[LimitMap] = None

    @property
    def period(self) -> int:
        return len(self.mobius)


def equivalent_rescalings(M: MobiusFamily, L: MobiusFamily,
                          eta: ScaleClass) -> bool:
    """(M, eta) ~ (L, eta) iff M L^{-1} has degree 1 at eta."""
    return M.compose(L.inverse()).degree_at(eta) == 1


def is_adapted(M: MobiusFamily, eta: ScaleClass, f: RatMapFamily,
               max_period: int = 2, hull_depth: int = 3,
               depth: int = 8) -> Tuple[AdaptedCert, Optional[LimitMap]]:
    """Full adaptedness certificate of (M, eta) for f, or a rejection."""
    if eta.is_zero:
        return AdaptedCert(False, reason="the extended scale is never adapted"), None
    g = f.conjugate(M).normalize()
    return is_adapted_conjugated(g, eta, max_period, hull_depth, depth)


def is_adapted_conjugated(g: RatMapFamily, eta: ScaleClass,
                          max_period: int = 2, hull_depth: int = 3,
                          depth: int = 8) -> Tuple[AdaptedCert, Optional[LimitMap]]:
    """Adaptedness of (id, eta) for an already conjugated family."""
    lm = g.limit_at(eta, depth)
    if lm.degree < 1:
        return AdaptedCert(False, reason="A1 fails: constant limit"), lm
    cert = AdaptedCert(True, degree=lm.degree)
    if not eta.is_trivial:
        pg = pgr_test(lm, max_period, hull_depth, depth)
        cert.a2 = pg
        if pg.is_pgr:
            return AdaptedCert(False, degree=lm.degree,
                               reason="A2 fails: potential good reduction",
                               a2=pg), lm
        if pg.status == "undecided":
            return AdaptedCert(False, degree=lm.degree,
                               reason="A2 undecided", a2=pg), lm
    if lm.degree == 1:
        got = _a3_certificate(g, eta, lm, depth)
        if got is None:
            return AdaptedCert(False, degree=1,
                               reason="A3 fails: no bad direction with "
                                      "infinite-orbit image"), lm
        cert.a3_scale, cert.a3_direction = got
    return cert, lm


def _a3_certificate(g: RatMapFamily, eta: ScaleClass, lm: LimitMap,
                    depth: int):
    """Search basis generators below eta for the (A3) data."""
    basis = g.basis
    sb = _scale_basis_of(g)
    finer = [s for s in sb.all_scales() if s < eta and s.is_generator]
    T = _mobius_matrix_of_pair(lm.map_p, lm.map_q)
    zt = lambda c: c.is_zero_at(eta)
    for epsc in sorted(finer, key=lambda s: -s.index):
        lme = g.limit_at(epsc, depth)
        if lme.degree < 1:
            continue
        pair = PairAtScale.of_limit(lme)
        rp, rq, locdeg, rholes = pair.reduction(depth)
        if max(rp.degree(), rq.degree()) < 1:
            continue  # Gauss point not fixed
        if locdeg != 1:
            continue
        for dp in rholes.points:
            w = dp.point
            try:
                if mobius_orbit_infinite(T, w, zt):
                    return epsc, w
            except Exception:
                continue
    return None


def _scale_basis_of(g: RatMapFamily) -> ScaleBasis:
    return g.basis


def fundamental_rescaling(f: RatMapFamily, max_period: int = 2,
                          hull_depth: int = 3, depth: int = 8,
                          max_conj: int = 6) -> GRescaling:
    """The unique adapted rescaling whose limit has full degree.

    Starts from (id, eps(f)); while the limit has potential good reduction
    certified by a type II point, recenters there and recomputes.
    """
    if f.d < 2:
        raise ValueError("fundamental rescaling needs degree >= 2")
    basis = f.basis
    M = MobiusFamily.identity(basis)
    cur = f.normalize()
    for _ in range(max_conj):
        e0 = cur.eps_of()
        lm = cur.limit_at(e0, depth)
        if e0.is_trivial:
            cert = AdaptedCert(True, degree=lm.degree,
                               reason="bounded family: trivial scale")
            return GRescaling(M, e0, lm, cert)
        pg = pgr_test(lm, max_period, hull_depth, depth)
        if pg.is_not_pgr:
            cert = AdaptedCert(True, degree=lm.degree, a2=pg)
            return GRescaling(M, e0, lm, cert)
        if pg.is_pgr and pg.witness is not None and not pg.witness.is_gauss():
            mover = move_to_gauss(pg.witness)
            M = mover.compose(M)
            cur = cur.conjugate(mover).normalize()
            continue
        if pg.is_pgr:
            # good reduction at the Gauss point itself: normalize by three
            # rigid periodic points sent to 0, 1, infinity
            mover = _three_point_normalizer(cur, e0, depth)
            if mover is None:
                raise SearchExhausted(
                    "potential good reduction persists and no three-point "
                    "normalizer was found")
            M = mover.compose(M)
            cur = cur.conjugate(mover).normalize()
            continue
        raise SearchExhausted(f"pgr test undecided: {pg.reason}")
    raise SearchExhausted("conjugation search did not terminate")


def _three_point_normalizer(g: RatMapFamily, eps: ScaleClass, depth: int):
    """Moebius sending three rigid fixed points to 0, 1, infinity."""
    basis = g.basis
    coeffs, _ = g.fixed_point_poly(1)
    pts = [r.value for r in puiseux_roots(UPoly(basis, coeffs), depth)
           if r.resolved and r.exact]
    if len(pts) < 3:
        return None
    p, q, r = pts[0], pts[1], pts[2]
    # z -> ((z-p)(q-r)) / ((z-r)(q-p))
    a = q - r
    b = -p * (q - r)
    c = q - p
    d = -r * (q - p)
    return MobiusFamily(a, b, c, d)


# ---------------------------------------------------------------------------
# Baby rescalings


def baby_rescaling(f: RatMapFamily, parent: GRescaling,
                   cyc: TypeIICycleData, bad_dir: Optional[Direction] = None,
                   depth: int = 8) -> GRescaling:
    """Baby rescaling of the parent vertex at a periodic type II Julia
    cycle of its limit; adapted to f^(parent.iterate * cyc.period) at a
    strictly larger scale."""
    eps = parent.scale
    if eps.is_trivial:
        raise ScaleMismatch("no baby rescalings above the trivial scale")
    x = cyc.points[0]
    basis = f.basis
    mover = move_to_gauss(x)
    tp, tq = cyc.tangent
    tdeg = max(tp.degree(), tq.degree())
    total_iter = parent.iterate * cyc.period
    if cyc.return_degree() >= 2:
        lift = RatMapFamily(basis, tdeg,
                            [tp[i] for i in range(tdeg + 1)],
                            [tq[i] for i in range(tdeg + 1)],
                            _check=False).normalize()
        inner = fundamental_rescaling(lift, depth=depth)
        eps_plus = inner.scale
        L = inner.M.compose(mover).compose(parent.M)
    else:
        L1, eps_plus = _indifferent_normalizer(cyc, eps, depth)
        L = L1.compose(mover).compose(parent.M)
    if not (eps_plus > eps):
        raise AssertionError("baby scale must exceed the parent scale")
    fl = f.iterate(total_iter) if total_iter > 1 else f
    cert, lm = is_adapted(L, eps_plus, fl, depth=depth)
    if not cert.ok:
        raise SearchExhausted(
            f"baby rescaling fails adaptedness: {cert.reason}")
    return GRescaling(L, eps_plus, lm, cert, iterate=total_iter)


def _indifferent_normalizer(cyc: TypeIICycleData, eps: ScaleClass,
                            depth: int) -> Tuple[MobiusFamily, ScaleClass]:
    """Normalizer and scale for the baby rescaling at an indifferent
    cycle: conjugate the return tangent to a translation z+1 or read the
    scale off the homothety multiplier."""
    tp, tq = cyc.tangent
    basis = tp.basis
    T = _mobius_matrix_of_pair(tp, tq)
    zt = lambda c: c.res_is_zero(eps)
    order = mobius_order(T, zt)
    if order is not None and order != 1:
        raise RootOfUnityMultiplier(order)
    u = (T.a + T.d) ** 2 / T.det()
    four = Sym.constant(basis, 4)
    if zt(u - four):
        # parabolic: move the fixed direction to infinity, rescale the
        # translation constant to 1
        C = _parabolic_normalizer(T, eps, depth)
        return C, TRIVIAL
    # homothety: move the two fixed directions to 0 and infinity
    C, mu = _homothety_normalizer(T, eps, depth)
    lead = mu.leading_data()
    j = None
    for jj in reversed(range(len(lead.lead_exp))):
        if lead.lead_exp[jj] != 0:
            j = jj
            break
    if j is not None:
        if lead.lead_exp[j] > 0:
            flip = MobiusFamily.inversion(basis)
            C = flip.compose(C)
        return C, ScaleClass("gen", j)
    lam = mu.truncated(1).constant_value()
    if lam is None:
        raise TruncationInsufficient("homothety multiplier without a "
                                     "constant leading term")
    m2 = lam.mod_sq()
    if m2 != 1:
        if m2 > 1:
            C = MobiusFamily.inversion(basis).compose(C)
        return C, TRIVIAL
    if lam != QI.ONE:
        order = {QI(-1): 2, QI.I: 4, QI(0, -1): 4}.get(lam)
        raise RootOfUnityMultiplier(order or 0)
    # lambda = 1 but infinite residue order: the shear construction
    one = Sym.one(basis)
    bstar = (one - mu).inv()
    a = one - bstar
    return MobiusFamily.affine(a, bstar).compose(C), TRIVIAL


def _parabolic_normalizer(T: MobiusFamily, eps: ScaleClass, depth: int) -> MobiusFamily:
    basis = T.basis
    zt = lambda c: c.res_is_zero(eps)
    # fixed direction: root of c z^2 + (d - a) z - b at the residue level
    if zt(T.c):
        # already affine: T = (a z + b)/d, parabolic => a/d ~ 1
        C = MobiusFamily.identity(basis)
        shift = T.b / T.d
    else:
        poly = UPoly(basis, [-T.b, T.d - T.a, T.c])
        w = None
        for r in puiseux_roots(poly, depth):
            if r.resolved and not r.value.norm_at(eps)._cmp_one() > 0:
                w = r.value
                break
        if w is None:
            # fixed direction at infinity side: flip first
            C = MobiusFamily.inversion(basis)
            TT = C.compose(T).compose(C.inverse())
            return _parabolic_normalizer(TT, eps, depth).compose(C)
        # move w to infinity: z -> 1/(z - w)
        C = MobiusFamily(Sym.zero(basis), Sym.one(basis), Sym.one(basis), -w)
        TT = C.compose(T).compose(C.inverse())
        return _parabolic_normalizer(TT, eps, depth).compose(C)
    # now T is z + shift; rescale so the shift becomes 1
    if shift.is_zero() or shift.res_is_zero(eps):
        raise TruncationInsufficient("degenerate parabolic tangent")
    S = MobiusFamily.affine(shift.inv(), Sym.zero(basis))
    return S.compose(C)


def _homothety_normalizer(T: MobiusFamily, eps: ScaleClass, depth: int):
    """Conjugate an infinite-order non-parabolic residue Moebius map to
    mu * z; returns (C, mu)."""
    basis = T.basis
    zt = lambda c: c.res_is_zero(eps)
    if zt(T.c) and zt(T.b):
        return MobiusFamily.identity(basis), T.a / T.d
    if zt(T.c):
        # affine with a/d != 1: fixed points b/(d-a) and infinity
        w = T.b / (T.d - T.a)
        C = MobiusFamily.affine(Sym.one(basis), -w)
        return C, T.a / T.d
    poly = UPoly(basis, [-T.b, T.d - T.a, T.c])
    roots = [r.value for r in puiseux_roots(poly, depth) if r.resolved]
    if len(roots) == 2:
        w1, w2 = roots
        # z -> (z - w1)/(z - w2)
        C = MobiusFamily(Sym.one(basis), -w1, Sym.one(basis), -w2)
    elif len(roots) == 1:
        # the other fixed point is at infinity: shift only
        C = MobiusFamily(Sym.one(basis), -roots[0], Sym.zero(basis), Sym.one(basis))
    else:
        raise TruncationInsufficient("homothety fixed points unresolved")
    TT = C.compose(T).compose(C.inverse())
    mu = TT.a / TT.d
    return C, mu


# ---------------------------------------------------------------------------
# Chains and cycles


def chain_decompose(M: MobiusFamily, eps: ScaleClass, f: RatMapFamily,
                    depth: int = 8) -> List[Tuple[ScaleClass, int]]:
    """Adapted scales along (M, .) up to eps, with their limit degrees.

    Assumes (M, eps) is adapted (caller supplies the right iterate).  The
    chain theorem characterises the intermediate adapted scales: between
    consecutive ones the limit has good reduction, and at each one the
    reduction degree strictly drops.  So membership is read off degree
    and reduction-degree data, plus the cheap homothety-norm test for a
    degree-1 end at a non-trivial scale.
    """
    g = f.conjugate(M).normalize()
    out: List[Tuple[ScaleClass, int]] = []
    for s in f.basis.all_scales():
        if s > eps:
            continue
        lm = g.limit_at(s, depth)
        if lm.degree < 1:
            continue
        if s == eps:
            out.append((s, lm.degree))
            continue
        if s.is_trivial:
            continue
        if lm.degree == 1:
            T = _mobius_matrix_of_pair(lm.map_p, lm.map_q)
            u = (T.a + T.d) ** 2 / T.det()
            if u.norm_at(s)._cmp_one() > 0:
                out.append((s, 1))
            continue
        pair = PairAtScale.of_limit(lm)
        _, _, locdeg, _ = pair.reduction(depth)
        if locdeg < lm.degree:
            out.append((s, lm.degree))
    degs = [d for _, d in out]
    assert all(d1 >= d2 for d1, d2 in zip(degs, degs[1:])), \
        "chain degrees must be non-increasing"
    return out


def _orbit_of_gauss(g: RatMapFamily, eps0: ScaleClass, l: int,
                    depth: int) -> Tuple[List[TypeIIPoint], List[StepData]]:
    lm = g.limit_at(eps0, depth)
    pair = PairAtScale.of_limit(lm)
    x0 = TypeIIPoint.gauss(g.basis, eps0)
    orbit = [x0]
    steps = []
    for _ in range(l):
        st = typeII_step(pair, orbit[-1], depth)
        steps.append(st)
        if st.image.eq(x0):
            break
        orbit.append(st.image)
    return orbit, steps


def extend_to_cycle(M: MobiusFamily, eps: ScaleClass, f: RatMapFamily,
                    l: int, depth: int = 8) -> RescalingCycle:
    """Lift a rescaling adapted to f^l to a period-l cycle adapted to f.

    The Gauss orbit at the previous chain scale is pushed through f and a
    per-index baby normalization applied, following the uniqueness lemma;
    the result is verified (D1 transition degrees).
    """
    basis = f.basis
    if l == 1:
        cyc = RescalingCycle([M], eps)
        _fill_cycle_limits(cyc, f, depth)
        return cyc
    fl = f.iterate(l)
    chain = chain_decompose(M, eps, fl, depth)
    below = [s for s, _ in chain if s < eps]
    if not below:
        # fundamental level: all indices equivalent to M
        cyc = RescalingCycle([M] * l, eps)
        _fill_cycle_limits(cyc, f, depth)
        return cyc
    eps0 = below[-1]
    g = f.conjugate(M).normalize()
    orbit, steps = _orbit_of_gauss(g, eps0, l, depth)
    m = len(orbit)
    mobs: List[MobiusFamily] = []
    for j in range(l):
        xj = orbit[j % m]
        if j % m == 0:
            mobs.append(M)
            continue
        Lj = _index_normalizer(f, M, eps, eps0, xj, l, depth)
        mobs.append(Lj)
    cyc = RescalingCycle(mobs, eps)
    _fill_cycle_limits(cyc, f, depth)
    for i, tl in enumerate(cyc.transition_limits):
        if tl.degree < 1:
            raise SearchExhausted(
                f"cycle lift failed: transition {i} has a constant limit")
    return cyc


def _index_normalizer(f: RatMapFamily, M: MobiusFamily, eps: ScaleClass,
                      eps0: ScaleClass, xj: TypeIIPoint, l: int,
                      depth: int) -> MobiusFamily:
    """Baby normalizer at an orbit point xj of the Gauss cycle."""
    g = f.conjugate(M).normalize()
    fl = g.iterate(l)
    lm0 = fl.limit_at(eps0, depth)
    pair = PairAtScale.of_limit(lm0)
    st = typeII_step(pair, xj, depth)
    tp, tq = st.tangent
    tdeg = max(tp.degree(), tq.degree())
    mover = move_to_gauss(xj)
    basis = f.basis
    if tdeg >= 2:
        lift = RatMapFamily(basis, tdeg,
                            [tp[i] for i in range(tdeg + 1)],
                            [tq[i] for i in range(tdeg + 1)],
                            _check=False).normalize()
        inner = fundamental_rescaling(lift, depth=depth)
        return inner.M.compose(mover).compose(M)
    cycdata = TypeIICycleData([xj], [st.local_degree], (tp, tq),
                              "indifferent", True, [])
    L1, _ = _indifferent_normalizer(cycdata, eps0, depth)
    return L1.compose(mover).compose(M)


def _fill_cycle_limits(cyc: RescalingCycle, f: RatMapFamily, depth: int):
    l = cyc.period
    fl = f.iterate(l) if l > 1 else f
    cyc.return_limit = fl.conjugate(cyc.mobius[0]).normalize().limit_at(cyc.scale, depth)
    cyc.transition_limits = []
    for i in range(l):
        Mi = cyc.mobius[i]
        Mi1 = cyc.mobius[(i + 1) % l]
        h = _sandwich(f, Mi1, Mi)
        cyc.transition_limits.append(h.limit_at(cyc.scale, depth))


def _sandwich(f: RatMapFamily, left: MobiusFamily, right: MobiusFamily) -> RatMapFamily:
    """left . f . right^{-1} as an exact family."""
    from .ratmaps import _subst_linear

    Ri = right.inverse()
    P1 = _subst_linear(f.P, f.d, Ri.a, Ri.b, Ri.c, Ri.d, f.basis)
    Q1 = _subst_linear(f.Q, f.d, Ri.a, Ri.b, Ri.c, Ri.d, f.basis)
    P2 = [left.a * p + left.b * q for p, q in zip(P1, Q1)]
    Q2 = [left.c * p + left.d * q for p, q in zip(P1, Q1)]
    return RatMapFamily(f.basis, f.d, P2, Q2, _check=False).normalize()


# ---------------------------------------------------------------------------
# The tree


@dataclass
class TreeVertex:
    id: int
    cycle: RescalingCycle
    iterate: int                # vertex represents a class adapted to f^iterate
    scale: ScaleClass
    degree: int
    parent: Optional[int]
    shift_index: int = 0        # position inside its sigma-orbit
    orbit_size: int = 1
    pcf: str = "unknown"        # "pcf" | "non-pcf" | "unknown"
    complete: bool = False
    note: str = ""

    def rep_mobius(self) -> MobiusFamily:
        return self.cycle.mobius[0]


@dataclass
class RescalingTree:
    basis: ScaleBasis
    vertices: List[TreeVertex]
    root: int
    sigma: Dict[int, int]
    max_period: int
    hull_depth: int

    def vertex(self, vid: int) -> TreeVertex:
        return self.vertices[vid]

    def children(self, vid: int) -> List[int]:
        return [v.id for v in self.vertices if v.parent == vid]

    def scales_used(self) -> List[ScaleClass]:
        seen = []
        for v in self.vertices:
            if v.scale not in seen:
                seen.append(v.scale)
        return sorted(seen)

    def sigma_orbits(self) -> List[List[int]]:
        seen = set()
        orbits = []
        for v in self.vertices:
            if v.id in seen:
                continue
            orb = [v.id]
            seen.add(v.id)
            nxt = self.sigma.get(v.id, v.id)
            while nxt not in seen:
                orb.append(nxt)
                seen.add(nxt)
                nxt = self.sigma.get(nxt, nxt)
            orbits.append(orb)
        return orbits

    def quotient_shape(self) -> List[Tuple[str, int, Optional[int]]]:
        """Vertices of the sigma-quotient as (scale name, degree, parent
        orbit index), parent orbits resolved through representatives."""
        orbits = self.sigma_orbits()
        of_vertex = {}
        for i, orb in enumerate(orbits):
            for vid in orb:
                of_vertex[vid] = i
        out = []
        for i, orb in enumerate(orbits):
            v = self.vertex(orb[0])
            par = None if v.parent is None else of_vertex[v.parent]
            out.append((self.basis.name_of(v.scale), v.degree, par))
        return out


def build_tree(f: RatMapFamily, max_period: int = 3, hull_depth: int = 4,
               depth: int = 8, root_cap: int = 40,
               iterate_cap: int = 6) -> RescalingTree:
    """Breadth-first construction of the tree of adapted cycles."""
    f = f.normalize()
    basis = f.basis
    fund = fundamental_rescaling(f, depth=depth)
    root_cycle = RescalingCycle([fund.M], fund.scale)
    root_cycle.return_limit = fund.limit
    root_cycle.transition_limits = [fund.limit]
    vertices: List[TreeVertex] = []
    sigma: Dict[int, int] = {}
    root = TreeVertex(0, root_cycle, 1, fund.scale, fund.limit.degree, None)
    vertices.append(root)
    sigma[0] = 0
    queue = [0]
    iter_cache: Dict[int, RatMapFamily] = {1: f}

    def f_iter(k: int) -> RatMapFamily:
        if k not in iter_cache:
            iter_cache[k] = f.iterate(k)
        return iter_cache[k]

    while queue and len(vertices) < root_cap:
        vid = queue.pop(0)
        v = vertices[vid]
        if v.scale.is_trivial:
            v.complete = True
            v.pcf = _pcf_flag(v.cycle.return_limit, depth)
            continue
        try:
            cycles = find_periodic_typeII(v.cycle.return_limit, max_period,
                                          hull_depth, depth)
            v.complete = True
        except TruncationInsufficient:
            cycles = []
            v.note = "cycle search truncated"
        v.pcf = _pcf_flag(v.cycle.return_limit, depth)
        for cyc in cycles:
            if not cyc.julia:
                continue
            total_iter = v.iterate * cyc.period
            if total_iter > iterate_cap:
                v.note = (v.note + "; " if v.note else "") + \
                    f"skipped a period-{cyc.period} cycle above the iterate cap"
                continue
            try:
                parent_g = GRescaling(v.rep_mobius(), v.scale,
                                      v.cycle.return_limit,
                                      AdaptedCert(True, v.degree),
                                      iterate=v.iterate)
                baby = baby_rescaling(f, parent_g, cyc, depth=depth)
            except RootOfUnityMultiplier as exc:
                n = exc.order if exc.order else 2
                v.note = (v.note + "; " if v.note else "") + \
                    f"root-of-unity multiplier of order {n} handled via f^{n}"
                try:
                    baby = _baby_via_iterate(f, v, cyc, n, depth, f_iter)
                except Exception as e2:
                    v.note += f" (failed: {e2})"
                    continue
            except (SearchExhausted, TruncationInsufficient) as exc:
                v.note = (v.note + "; " if v.note else "") + f"baby failed: {exc}"
                continue
            try:
                cyc_lift = extend_to_cycle(baby.M, baby.scale, f,
                                           baby.iterate, depth)
            except Exception as exc:
                v.note = (v.note + "; " if v.note else "") + f"lift failed: {exc}"
                cyc_lift = RescalingCycle([baby.M] * baby.iterate, baby.scale)
                _fill_cycle_limits(cyc_lift, f, depth)
            _attach_cycle(vertices, sigma, queue, vid, cyc_lift, baby, depth)
    return RescalingTree(basis, vertices, 0, sigma, max_period, hull_depth)


def _baby_via_iterate(f, v, cyc, n, depth, f_iter):
    """Indifferent cycle with a root-of-unity multiplier of order n: the
    baby construction applies to the n-th iterate of the return map."""
    fl = f_iter(v.iterate) if v.iterate > 1 else f
    g = fl.conjugate(v.rep_mobius()).normalize()
    gn = g.iterate(n * cyc.period)
    lmn = gn.limit_at(v.scale, depth)
    pair = PairAtScale.of_limit(lmn)
    st = typeII_step(pair, cyc.points[0], depth)
    cyc_n = TypeIICycleData([cyc.points[0]], [st.local_degree], st.tangent,
                            "indifferent" if st.local_degree == 1 else "repelling",
                            True, [])
    parent_g = GRescaling(v.rep_mobius(), v.scale, v.cycle.return_limit,
                          AdaptedCert(True, v.degree),
                          iterate=v.iterate * n * cyc.period)
    # the tangent of the n-th iterate at the cycle point drives the baby
    mover = move_to_gauss(cyc.points[0])
    basis = f.basis
    if st.local_degree >= 2:
        tp, tq = st.tangent
        tdeg = max(tp.degree(), tq.degree())
        lift = RatMapFamily(basis, tdeg, [tp[i] for i in range(tdeg + 1)],
                            [tq[i] for i in range(tdeg + 1)], _check=False).normalize()
        inner = fundamental_rescaling(lift, depth=depth)
        L = inner.M.compose(mover).compose(v.rep_mobius())
        eps_plus = inner.scale
    else:
        L1, eps_plus = _indifferent_normalizer(cyc_n, v.scale, depth)
        L = L1.compose(mover).compose(v.rep_mobius())
    total = v.iterate * cyc.period * n
    cert, lm = is_adapted(L, eps_plus, f_iter(total), depth=depth)
    if not cert.ok:
        raise SearchExhausted(f"baby via f^{n} fails adaptedness: {cert.reason}")
    return GRescaling(L, eps_plus, lm, cert, iterate=total)


def _attach_cycle(vertices, sigma, queue, parent_id, cyc_lift: RescalingCycle,
                  baby: GRescaling, depth: int):
    """Quotient the shifted cycles by equivalence and insert vertices."""
    l = cyc_lift.period
    eta = cyc_lift.scale
    # sigma-period: least j > 0 with shift-j equivalent to shift-0
    sp = l
    for j in range(1, l):
        if equivalent_rescalings(cyc_lift.mobius[j], cyc_lift.mobius[0], eta):
            sp = j
            break
    new_ids = []
    for j in range(sp):
        Mj = cyc_lift.mobius[j]
        dup = None
        for v in vertices:
            if v.scale == eta and equivalent_rescalings(v.rep_mobius(), Mj, eta):
                dup = v.id
                break
        if dup is not None:
            new_ids.append(dup)
            continue
        vid = len(vertices)
        shifted = RescalingCycle(cyc_lift.mobius[j:] + cyc_lift.mobius[:j], eta)
        shifted.return_limit = baby.limit if j == 0 else cyc_lift.return_limit
        shifted.transition_limits = cyc_lift.transition_limits
        if shifted.return_limit is None:
            shifted.return_limit = cyc_lift.return_limit
        deg = shifted.return_limit.degree if shifted.return_limit else baby.limit.degree
        vertices.append(TreeVertex(vid, shifted, baby.iterate, eta, deg,
                                   parent_id, shift_index=j, orbit_size=sp))
        new_ids.append(vid)
        queue.append(vid)
    for idx, vid in enumerate(new_ids):
        sigma[vid] = new_ids[(idx + 1) % len(new_ids)]


def _pcf_flag(lm: Optional[LimitMap], depth: int, horizon: int = 10) -> str:
    """Best-effort postcritical finiteness of a limit map."""
    if lm is None or lm.degree < 2:
        return "unknown"
    g = lm.map_family()
    basis = g.basis
    eps = lm.scale
    try:
        w, _ = g.wronskian()
        wp = UPoly(basis, w)
        crits = [r.value for r in puiseux_roots(wp, depth) if r.resolved and r.exact]
        if wp.degree() >= 1 and len(crits) < wp.degree():
            return "unknown"
    except Exception:
        return "unknown"
    # include the point at infinity when it is critical (degree drop)
    statuses = []
    for c in crits:
        st = _orbit_status(g, ProjPoint.affine(c), eps, horizon)
        statuses.append(st)
    if all(s == "finite" for s in statuses):
        return "pcf"
    if any(s == "infinite" for s in statuses):
        return "non-pcf"
    return "unknown"


def _orbit_status(g: RatMapFamily, p: ProjPoint, eps: ScaleClass,
                  horizon: int) -> str:
    """finite / infinite / unknown orbit of a rigid point.

    Exact repeat detection certifies finite; for a polynomial-chart map,
    norms exceeding every coefficient magnitude certify escape.
    """
    seen = [p]
    poly_chart = all(g.Q[i].is_zero() for i in range(1, g.d + 1)) or \
        all(g.Q[i].is_zero() for i in range(0, g.d))
    cur = p
    for _ in range(horizon):
        try:
            cur = g.apply_point(cur)
        except Exception:
            return "unknown"
        if cur.x0.size() + cur.x1.size() > 200:
            return "unknown"
        for s in seen:
            try:
                if s.eq_exact(cur):
                    return "finite"
            except Exception:
                return "unknown"
        if poly_chart and not cur.x1.is_zero():
            z = cur.as_affine()
            nv = z.norm_at(eps)
            if nv.is_infinite or (nv.kind == "expq" and nv.value > 8) or \
               (nv.kind == "modc" and nv.value > 10 ** 6):
                return "infinite"
        seen.append(cur)
    return "unknown"


# ---------------------------------------------------------------------------
# Quadratic classifier and audits


@dataclass
class QuadraticClassification:
    case: str
    tree: RescalingTree
    detail: str = ""


def classify_quadratic(f: RatMapFamily, max_period: int = 3,
                       hull_depth: int = 4, depth: int = 8) -> QuadraticClassification:
    """The five mutually exclusive quadratic tree shapes."""
    if f.d != 2:
        raise ValueError("classifier requires a quadratic family")
    tree = build_tree(f, max_period, hull_depth, depth)
    root = tree.vertex(tree.root)
    if root.scale.is_trivial or len(tree.vertices) == 1:
        return QuadraticClassification("1", tree, "no type II Julia cycles found")
    orbits = tree.sigma_orbits()
    child_orbits = [o for o in orbits if tree.vertex(o[0]).parent == tree.root]
    if not child_orbits:
        return QuadraticClassification("1", tree, "single vertex")
    degs = [tree.vertex(o[0]).degree for o in child_orbits]
    if len(child_orbits) == 1 and degs[0] == 1:
        return QuadraticClassification("2", tree, "indifferent cycle vertex")
    if len(child_orbits) == 1 and degs[0] == 2:
        child = tree.vertex(child_orbits[0][0])
        if child.scale.is_trivial:
            return QuadraticClassification("3a", tree,
                                           "repelling cycle at the trivial scale")
        return QuadraticClassification("3b", tree,
                                       "repelling cycle below the trivial scale")
    if len(child_orbits) == 2:
        return QuadraticClassification("4", tree, "two repelling cycles")
    return QuadraticClassification("undecided", tree,
                                   f"{len(child_orbits)} child orbits found")


@dataclass
class AuditReport:
    ok: bool
    scales: int
    scale_bound: int
    max_chain_edges: int
    chain_bound: int
    antichain: int
    antichain_bound: int
    sigma_ok: bool
    messages: List[str]


def audit_bounds(tree: RescalingTree, d: int) -> AuditReport:
    """Check the unconditional size bounds; violations indicate bugs."""
    msgs = []
    scales = len(tree.scales_used())
    ok = True
    if scales > 2 * d - 1:
        ok = False
        msgs.append(f"{scales} adapted scales exceed 2d-1 = {2 * d - 1}")
    depth_of = {}

    def vdepth(vid):
        if vid in depth_of:
            return depth_of[vid]
        v = tree.vertex(vid)
        depth_of[vid] = 0 if v.parent is None else vdepth(v.parent) + 1
        return depth_of[vid]

    max_chain = max((vdepth(v.id) for v in tree.vertices), default=0)
    if max_chain > 2 * d - 2:
        ok = False
        msgs.append(f"a chain of {max_chain} edges exceeds 2d-2 = {2 * d - 2}")
    # max antichain of certified non-PCF vertices modulo sigma
    orbits = tree.sigma_orbits()
    orbit_idx = {}
    for i, orb in enumerate(orbits):
        for vid in orb:
            orbit_idx[vid] = i
    children: Dict[int, List[int]] = {i: [] for i in range(len(orbits))}
    parent_of = {}
    for i, orb in enumerate(orbits):
        v = tree.vertex(orb[0])
        if v.parent is not None:
            parent_of[i] = orbit_idx[v.parent]
            children[orbit_idx[v.parent]].append(i)
    roots = [i for i in range(len(orbits)) if i not in parent_of]

    def anti(i) -> int:
        kids = children[i]
        own = 1 if tree.vertex(orbits[i][0]).pcf == "non-pcf" else 0
        if not kids:
            return own
        return max(own, sum(anti(k) for k in kids))

    antichain = sum(anti(r) for r in roots)
    if antichain > 2 * d - 2:
        ok = False
        msgs.append(f"non-PCF antichain {antichain} exceeds 2d-2 = {2 * d - 2}")
    sigma_ok = True
    for vid, image in tree.sigma.items():
        v, w = tree.vertex(vid), tree.vertex(image)
        if v.scale != w.scale:
            sigma_ok = False
        if vid == tree.root and image != tree.root:
            sigma_ok = False
        pv = None if v.parent is None else orbit_idx[v.parent]
        pw = None if w.parent is None else orbit_idx[w.parent]
        if pv != pw:
            sigma_ok = False
    if not sigma_ok:
        ok = False
        msgs.append("sigma is not a poset automorphism fixing the root")
    return AuditReport(ok, scales, 2 * d - 1, max_chain, 2 * d - 2,
                       antichain, 2 * d - 2, sigma_ok, msgs)
