"""Univariate polynomials over the symbolic field.

Coefficients ascending; the zero polynomial has an empty coefficient list.
Two zero tests are in play throughout the library: exact zero in the field,
and zero at a working scale (norm zero there).  The ``*_at`` variants of
division and gcd use the latter, which makes them algorithms over the limit
field at that scale, computed on exact representatives.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Tuple

from .scales import ScaleBasis, ScaleClass
from .symfield import SymbolicNumber

__all__ = ["UPoly"]

Sym = SymbolicNumber


class UPoly:
    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: ScaleBasis, coeffs: List[Sym]):
        while coeffs and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        self.basis = basis
        self.coeffs = list(coeffs)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(basis: ScaleBasis) -> "UPoly":
        return UPoly(basis, [])

    @staticmethod
    def const(c: Sym) -> "UPoly":
        return UPoly(c.basis, [c])

    @staticmethod
    def x(basis: ScaleBasis) -> "UPoly":
        return UPoly(basis, [Sym.zero(basis), Sym.one(basis)])

    @staticmethod
    def from_roots(basis: ScaleBasis, roots) -> "UPoly":
        p = UPoly(basis, [Sym.one(basis)])
        for r in roots:
            p = p * UPoly(basis, [-r, Sym.one(basis)])
        return p

    # -- structure -----------------------------------------------------------

    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Sym:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Sym.zero(self.basis)

    def lead(self) -> Sym:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def valuation(self) -> int:
        """Order of vanishing at 0 (index of first nonzero coefficient)."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return -1

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, o: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(o.coeffs))
        return UPoly(self.basis, [self[i] + o[i] for i in range(n)])

    def __sub__(self, o: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(o.coeffs))
        return UPoly(self.basis, [self[i] - o[i] for i in range(n)])

    def __neg__(self) -> "UPoly":
        return UPoly(self.basis, [-c for c in self.coeffs])

    def __mul__(self, o: "UPoly") -> "UPoly":
        if self.is_zero() or o.is_zero():
            return UPoly.zero(self.basis)
        out = [Sym.zero(self.basis) for _ in range(len(self.coeffs) + len(o.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return UPoly(self.basis, out)

    def scale(self, c: Sym) -> "UPoly":
        return UPoly(self.basis, [a * c for a in self.coeffs])

    def shift_x(self, a: Sym) -> "UPoly":
        """Compose with x -> x + a (Taylor shift via Horner)."""
        out: List[Sym] = []
        for c in reversed(self.coeffs):
            out = _horner_step(out, a, c, self.basis)
        return UPoly(self.basis, out)

    def compose_linear(self, a: Sym, b: Sym) -> "UPoly":
        """Compose with x -> a*x + b."""
        basis = self.basis
        out = UPoly.zero(basis)
        lin = UPoly(basis, [b, a])
        for c in reversed(self.coeffs):
            out = out * lin + UPoly.const(c)
        return out

    def derivative(self) -> "UPoly":
        return UPoly(
            self.basis,
            [self.coeffs[i] * Sym.constant(self.basis, i) for i in range(1, len(self.coeffs))],
        )

    def __call__(self, z: Sym) -> Sym:
        acc = Sym.zero(self.basis)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __eq__(self, o):
        return isinstance(o, UPoly) and self.degree() == o.degree() and all(
            (a - b).is_zero() for a, b in zip(self.coeffs, o.coeffs)
        )

    def __repr__(self):
        from .printing import format_symbolic

        if self.is_zero():
            return "UPoly(0)"
        parts = [f"({format_symbolic(c)})*z^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return "UPoly(" + " + ".join(parts) + ")"

    # -- division and gcd -----------------------------------------------------

    def divmod_field(self, d: "UPoly") -> Tuple["UPoly", "UPoly"]:
        """Exact division with remainder over the field."""
        return self._divmod(d, lambda c: c.is_zero())

    def divmod_at(self, d: "UPoly", eps: ScaleClass,
                  zero_test: Optional[Callable[[Sym], bool]] = None):
        """Division with remainder over the limit field at ``eps``.

        Coefficients that are zero at the scale are treated as zero; the
        returned quotient and remainder are exact representatives of the
        division in the field at that scale.
        """
        zt = zero_test or (lambda c: c.is_zero_at(eps))
        return self._divmod(d, zt)

    def _divmod(self, d: "UPoly", is_zero) -> Tuple["UPoly", "UPoly"]:
        basis = self.basis
        dd = _trim(d, is_zero)
        if dd.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = _trim(self, is_zero)
        q = [Sym.zero(basis) for _ in range(max(0, r.degree() - dd.degree() + 1))]
        lead = dd.lead()
        while not r.is_zero() and r.degree() >= dd.degree():
            k = r.degree() - dd.degree()
            c = r.lead() / lead
            q[k] = q[k] + c
            sub = [Sym.zero(basis)] * k + [c * cc for cc in dd.coeffs]
            r = _trim(UPoly(basis, [r[i] - sub[i] if i < len(sub) else r[i]
                                    for i in range(len(r.coeffs))]), is_zero)
        return UPoly(basis, q), r

    def gcd_at(self, o: "UPoly", eps: ScaleClass,
               zero_test: Optional[Callable[[Sym], bool]] = None) -> "UPoly":
        """Monic gcd of the images over the limit field at ``eps``.

        Fraction-free subresultant runs on exact representatives; when a
        remainder's leading coefficient dies at the scale the trimmed
        remainder starts a fresh run (the projected sequence stays a valid
        pseudo-remainder sequence of the images).
        """
        zt = zero_test or (lambda c: c.is_zero_at(eps))
        A = _ring_trim_zt(to_ring(self), zt)
        B = _ring_trim_zt(to_ring(o), zt)
        if not A:
            return self._ring_to_monic(B, zt)
        if not B:
            return self._ring_to_monic(A, zt)
        if len(A) < len(B):
            A, B = B, A
        from .symfield import HahnPoly, QI

        basis = self.basis
        one = HahnPoly.constant(basis, QI.ONE)
        for _ in range(4 * (len(A) + 2)):
            g, h = one, one
            restart = False
            while True:
                if len(B) == 1:
                    return UPoly(basis, [Sym.one(basis)])
                d = (len(A) - 1) - (len(B) - 1)
                R = _ring_prem(A, B, basis)
                if not R:
                    return self._ring_to_monic(B, zt)
                beta = g * _ring_pow(h, d)
                R = [c.exact_div(beta) for c in R]
                Rt = _ring_trim_zt(R, zt)
                if not Rt:
                    return self._ring_to_monic(B, zt)
                if len(Rt) != len(R):
                    A, B = _ring_trim_zt(B, zt), Rt
                    if len(A) < len(B):
                        A, B = B, A
                    restart = True
                    break
                A, B = B, R
                g = A[-1]
                if d >= 1:
                    h = _ring_pow(g, d).exact_div(_ring_pow(h, d - 1))
            if not restart:
                break
        raise ArithmeticError("gcd_at did not converge")

    def _ring_to_monic(self, coeffs, zt) -> "UPoly":
        basis = self.basis
        if not coeffs:
            return UPoly.zero(basis)
        syms = [Sym(c) for c in coeffs]
        p = _trim(UPoly(basis, syms), zt)
        if p.is_zero():
            return p
        return _trim(p.scale(p.lead().inv()), zt)

    def gcd_field(self, o: "UPoly") -> "UPoly":
        return gcd_field(self, o)

    def squarefree_part(self) -> "UPoly":
        g = gcd_field(self, self.derivative())
        if g.degree() <= 0:
            return self
        q, _ = self.divmod_field(g)
        return q


def _trim(p: UPoly, is_zero) -> UPoly:
    coeffs = list(p.coeffs)
    while coeffs and is_zero(coeffs[-1]):
        coeffs.pop()
    out = UPoly(p.basis, [])
    out.coeffs = [c if not is_zero(c) else Sym.zero(p.basis) for c in coeffs]
    return out


def to_ring(p: UPoly):
    """Clear coefficient denominators: HahnPoly coefficient list of
    D * p, where D is the product of the denominators."""
    from .symfield import HahnPoly, QI

    basis = p.basis
    one = HahnPoly.constant(basis, QI.ONE)
    dens = [c.den for c in p.coeffs]
    n = len(dens)
    pre = [one]
    for d in dens:
        pre.append(pre[-1] * d)
    suf = [one] * (n + 1)
    for i in range(n - 1, -1, -1):
        suf[i] = suf[i + 1] * dens[i]
    out = [p.coeffs[i].num * pre[i] * suf[i + 1] for i in range(n)]
    return out


def _ring_trim(coeffs):
    c = list(coeffs)
    while c and c[-1].is_zero():
        c.pop()
    return c


def _ring_trim_zt(coeffs, zt):
    """Trim ring coefficients by a scale zero test, replacing interior
    nulls by exact zeros (sound representative surgery)."""
    from .symfield import HahnPoly

    out = []
    for c in coeffs:
        s = Sym(c)
        out.append(HahnPoly.zero(s.basis) if zt(s) else c)
    while out and out[-1].is_zero():
        out.pop()
    return out


def _ring_prem(A, B, basis):
    """Pseudo-remainder lc(B)^(dA-dB+1) * A mod B in the monomial ring."""
    A = _ring_trim(A)
    B = _ring_trim(B)
    dA, dB = len(A) - 1, len(B) - 1
    lb = B[-1]
    R = list(A)
    steps = 0
    while R and len(R) - 1 >= dB:
        dR = len(R) - 1
        lead = R[-1]
        R = [c * lb for c in R[:-1]]
        shift = dR - dB
        for j in range(dB):
            R[shift + j] = R[shift + j] - B[j] * lead
        R = _ring_trim(R)
        steps += 1
    # pad to the exact prem power lc(B)^(dA-dB+1)
    for _ in range(dA - dB + 1 - steps):
        R = [c * lb for c in R]
    return R


def gcd_field(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over the field via the subresultant PRS (fraction-free;
    controlled coefficient growth)."""
    from .symfield import HahnPoly, QI, SymbolicNumber

    basis = a.basis
    zt = lambda c: c.is_zero()
    a, b = _trim(a, zt), _trim(b, zt)
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    A = to_ring(a)
    B = to_ring(b)
    if len(A) < len(B):
        A, B = B, A
    if len(B) == 1:
        return UPoly(basis, [SymbolicNumber.one(basis)])
    one = HahnPoly.constant(basis, QI.ONE)
    g, h = one, one
    while True:
        d = (len(A) - 1) - (len(B) - 1)
        R = _ring_prem(A, B, basis)
        if not R:
            return _monic(UPoly(basis, [SymbolicNumber(c) for c in B]))
        if len(R) == 1:
            return UPoly(basis, [SymbolicNumber.one(basis)])
        beta = g * _ring_pow(h, d)
        R = [c.exact_div(beta) for c in R]
        A, B = B, R
        g = A[-1]
        if d >= 1:
            h = _ring_pow(g, d).exact_div(_ring_pow(h, d - 1))


def _ring_pow(x, k: int):
    from .symfield import HahnPoly, QI

    r = HahnPoly.constant(x.basis, QI.ONE)
    for _ in range(k):
        r = r * x
    return r


def _monic(p: UPoly) -> UPoly:
    if p.is_zero() or p.degree() < 0:
        return p
    return p.scale(p.lead().inv())


def _horner_step(out, a, carry, basis):
    # out(x) * (x + a) + carry, coefficients ascending
    res = [Sym.zero(basis) for _ in range(len(out) + 1)]
    for i, c in enumerate(out):
        res[i + 1] = res[i + 1] + c
        res[i] = res[i] + c * a
    res[0] = res[0] + carry
    n = UPoly(basis, res)
    return n.coeffs if n.coeffs else []
