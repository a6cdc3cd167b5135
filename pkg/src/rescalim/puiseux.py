"""Newton-Puiseux root expansion over the symbolic valued field.

Roots of a univariate polynomial are computed as finite expansions
``c_1*m_1 + c_2*m_2 + ...`` of monomials with lex-decreasing exponent
vectors (ramified, i.e. fractional, exponents arise naturally).  Leading
exponents come from the upper Newton polygon of the coefficient exponents;
leading constants solve the residual equations over Q(i).

A residual equation may have roots outside Q(i); such branches are
reported unresolved (their exponent data is still exact).  An expansion is
``exact`` when substituting it into the polynomial gives exactly zero;
otherwise the unknown tail is lex-below the recorded precision exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import sympy

from .errors import TruncationInsufficient
from .scales import ScaleBasis
from .symfield import QI, SymbolicNumber, exp_lt
from .upoly import UPoly, gcd_field

__all__ = ["PuiseuxRoot", "puiseux_roots"]

Sym = SymbolicNumber


@dataclass
class PuiseuxRoot:
    """One root branch: a truncated or exact expansion with multiplicity.

    ``prec`` is the exponent below which the expansion is unknown (None for
    exact roots).  ``resolved`` is False when the leading constant of the
    branch lies outside Q(i); the exponent data is still correct and the
    branch carries ``lead_exp``.
    """

    value: Sym
    multiplicity: int
    exact: bool
    prec: Optional[tuple] = None
    resolved: bool = True
    lead_exp: Optional[tuple] = None

    def sort_key(self):
        from .symfield import _exp_key

        e = self.value.lead_exponent() if not self.value.is_zero() else None
        k = _exp_key(e) if e is not None else None
        return (0 if e is None else 1, k or (), str(self.value))


def puiseux_roots(p: UPoly, depth: int = 8) -> List[PuiseuxRoot]:
    """All roots of ``p`` with multiplicity (sum of multiplicities =
    deg p)."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if depth < 1:
        raise ValueError("depth must be positive")
    basis = p.basis
    out: List[PuiseuxRoot] = []
    m0 = p.valuation()
    if m0 > 0:
        out.append(PuiseuxRoot(Sym.zero(basis), m0, True))
        p = UPoly(basis, p.coeffs[m0:])
    if p.degree() >= 1:
        for g, mult in _squarefree(p):
            for root in _expand(g, depth, None):
                root.multiplicity *= mult
                out.append(root)
    out.sort(key=PuiseuxRoot.sort_key)
    return out


def _spec_squarefree(p: UPoly) -> bool:
    """Certify squarefreeness by specialising the scale atoms to rational
    values (a ring homomorphism on the monomial algebra).  A nonzero
    specialised discriminant proves the symbolic one nonzero; failure is
    inconclusive and the caller falls back to the symbolic gcd chain."""
    from fractions import Fraction

    basis = p.basis
    k = basis.rank
    dens = set()
    for c in p.coeffs:
        for poly in (c.num, c.den):
            for e in poly.terms:
                for q in e:
                    dens.add(q.denominator)
    import math

    D = math.lcm(*dens) if dens else 1
    x = sympy.Symbol("x")
    primes = [2, 3, 5, 7, 11, 13][:k]

    def spec_hahn(h):
        total = sympy.Integer(0)
        for e, c in h.terms.items():
            m = sympy.Integer(1)
            for j, q in enumerate(e):
                m *= sympy.Rational(primes[j]) ** (int(q * D))
            total += (sympy.Rational(c.re) + sympy.Rational(c.im) * sympy.I) * m
        return total

    expr = sympy.Integer(0)
    try:
        for i, c in enumerate(p.coeffs):
            dd = spec_hahn(c.den)
            if dd == 0:
                return False
            expr += spec_hahn(c.num) / dd * x ** i
        poly = sympy.Poly(sympy.together(expr), x, domain="QQ_I")
        if poly.degree() != p.degree():
            return False
        return sympy.gcd(poly, poly.diff(x)).degree() == 0
    except Exception:
        return False


def _squarefree(p: UPoly) -> List[Tuple[UPoly, int]]:
    """Squarefree decomposition via the gcd chain (Tobey-Horowitz);
    gcds are subresultant-based and fraction-free.  A cheap rational
    specialisation certifies the typical squarefree case first."""
    if p.degree() >= 3 and _spec_squarefree(p):
        return [(p, 1)]
    d1 = gcd_field(p, p.derivative())
    if d1.degree() <= 0:
        return [(p, 1)]
    chain = [p, d1]
    while chain[-1].degree() > 0:
        cur = chain[-1]
        chain.append(gcd_field(cur, cur.derivative()))
    ts = []
    for i in range(1, len(chain)):
        q, _ = chain[i - 1].divmod_field(chain[i])
        ts.append(q)
    out: List[Tuple[UPoly, int]] = []
    for i in range(len(ts)):
        if i + 1 < len(ts):
            s, _ = ts[i].divmod_field(ts[i + 1])
        else:
            s = ts[i]
        if s.degree() > 0:
            out.append((s, i + 1))
    return out


def _expand(g: UPoly, depth: int, bound) -> List[PuiseuxRoot]:
    """Roots of squarefree ``g`` whose leading exponent is lex-below
    ``bound`` (no constraint when bound is None)."""
    basis = g.basis
    out: List[PuiseuxRoot] = []
    if g.degree() <= 0:
        return out
    m = g.valuation()
    if m > 0:
        out.append(PuiseuxRoot(Sym.zero(basis), m, True))
        g = UPoly(basis, g.coeffs[m:])
        if g.degree() <= 0:
            return out
    for mu, residual in _polygon(g):
        if bound is not None and not exp_lt(mu, bound):
            continue
        solved, unresolved = _qi_roots(residual)
        for deg_block, mult in unresolved:
            out.append(
                PuiseuxRoot(
                    Sym.monomial(basis, dict(enumerate(mu))),
                    deg_block * mult,
                    False,
                    prec=mu,
                    resolved=False,
                    lead_exp=mu,
                )
            )
        for c, mres in solved:
            term = Sym.monomial(basis, dict(enumerate(mu)), c)
            g1 = g.shift_x(term)
            if g1[0].is_zero() and mres == 1:
                out.append(PuiseuxRoot(term, 1, True, lead_exp=mu))
                continue
            if depth <= 1:
                out.append(PuiseuxRoot(term, mres, False, prec=mu, lead_exp=mu))
                continue
            subs = _expand(g1, depth - 1, mu)
            found = 0
            for s in subs:
                found += s.multiplicity
                out.append(
                    PuiseuxRoot(term + s.value, s.multiplicity, s.exact,
                                prec=s.prec, resolved=s.resolved,
                                lead_exp=mu)
                )
            # branches the sub-expansion could not separate stay truncated
            if found < mres:
                out.append(
                    PuiseuxRoot(term, mres - found, False, prec=mu, lead_exp=mu)
                )
    return out


def _polygon(g: UPoly):
    """Edges of the upper Newton polygon of a polynomial with nonzero
    constant term: pairs (slope mu, residual Q(i) polynomial coefficients).

    The residual of an edge starting at index i0 is sum lc(a_i) c^(i-i0)
    over the indices on the edge; its nonzero roots are the leading
    constants of root branches with leading exponent mu.
    """
    pts = []
    for i, c in enumerate(g.coeffs):
        if not c.is_zero():
            pts.append((i, c.lead_exponent()))
    assert pts and pts[0][0] == 0
    if len(pts) == 1:
        return
    from .symfield import _exp_key

    hull = []
    for x, y in pts:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # pop the middle point unless it lies strictly above chord
            lhs = tuple((y1c - y0c) * (x - x0) for y1c, y0c in zip(y1, y0))
            rhs = tuple((yc - y0c) * (x1 - x0) for yc, y0c in zip(y, y0))
            if _exp_key(lhs) <= _exp_key(rhs):
                hull.pop()
            else:
                break
        hull.append((x, y))
    for (i0, e0), (i1, e1) in zip(hull, hull[1:]):
        # cancellation of a_{i0} z^{i0} against a_{i1} z^{i1} forces the
        # root exponent E(z) = (E0 - E1)/(i1 - i0)
        mu = tuple(Fraction(a - b, i1 - i0) for a, b in zip(e0, e1))
        residual = [QI.ZERO] * (i1 - i0 + 1)
        for i, e in pts:
            if i0 <= i <= i1:
                expect = tuple(b - mu_c * (i - i0) for b, mu_c in zip(e0, mu))
                if e == expect:
                    residual[i - i0] = g.coeffs[i].num.lead()[1] / g.coeffs[i].den.lead()[1]
        yield mu, residual


def _qi_roots(coeffs: List[QI]):
    """Roots in Q(i) of a polynomial with Q(i) coefficients.

    Returns (solved, unresolved): solved is a list of (root, multiplicity)
    with root != 0; unresolved is a list of (degree, multiplicity) for
    irreducible factors of degree >= 2.
    """
    x = sympy.Symbol("x")
    expr = sympy.Integer(0)
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            expr += (sympy.Rational(c.re) + sympy.Rational(c.im) * sympy.I) * x ** k
    poly = sympy.Poly(expr, x, domain="QQ_I")
    solved: List[Tuple[QI, int]] = []
    unresolved: List[Tuple[int, int]] = []
    _, factors = poly.factor_list()
    for fac, mult in factors:
        if fac.degree() == 1:
            a1, a0 = fac.all_coeffs()
            qz = _sympy_to_qi(sympy.expand(-a0 / a1))
            if qz is not None and not qz.is_zero():
                solved.append((qz, mult))
        elif fac.degree() >= 2:
            unresolved.append((fac.degree(), mult))
    return solved, unresolved


def _sympy_to_qi(v) -> Optional[QI]:
    v = sympy.expand(v)
    re, im = v.as_real_imag()
    if re.is_rational and im.is_rational:
        return QI(Fraction(int(sympy.fraction(re)[0]), int(sympy.fraction(re)[1])),
                  Fraction(int(sympy.fraction(im)[0]), int(sympy.fraction(im)[1])))
    return None
