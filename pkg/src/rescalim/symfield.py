"""Exact arithmetic in a rank-k symbolic valued field.

Elements are fractions of finite sums of monomials

    c * exp( q_1/s_{1,n} + ... + q_k/s_{k,n} ),

where ``c`` is a Gaussian rational, the ``q_j`` are rationals and the
``s_j`` are the generator scales of a :class:`~rescalim.scales.ScaleBasis`.
Such a sum models a sequence of complex numbers; two distinct exponent
vectors always have strictly comparable growth (lex order, with the finest
generator most significant), so every nonzero element has a well-defined
leading monomial.

For each scale ``eps`` the model carries the norm

    |z|_eps = lim |z_n|^{min(1, eps_n)},

which only depends on the leading monomial: generators finer than ``eps``
push their exponent to 0/infinity, the generator at ``eps`` contributes
``e^q``, coarser generators contribute 1, and the constant contributes its
modulus exactly at the trivial scale.  Equality of two elements "at eps"
means their difference has norm zero there; this is how the residue fields
and limit fields at every scale are accessed through representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple

from .errors import DivisionByZero, UnboundedAtScale
from .scales import Magnitude, ScaleBasis, ScaleClass, TRIVIAL, ZERO

__all__ = ["QI", "HahnPoly", "SymbolicNumber", "NormValue"]

Exponent = Tuple[Fraction, ...]


def _exp_key(e: Exponent):
    # lex with the finest generator (last coordinate) most significant
    return tuple(reversed(e))


def exp_lt(a: Exponent, b: Exponent) -> bool:
    return _exp_key(a) < _exp_key(b)


def exp_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def exp_neg(a: Exponent) -> Exponent:
    return tuple(-x for x in a)


class QI:
    """A Gaussian rational a + b*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    ZERO: "QI"
    ONE: "QI"
    I: "QI"

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __add__(self, o: "QI") -> "QI":
        return QI(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "QI") -> "QI":
        return QI(self.re - o.re, self.im - o.im)

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def __mul__(self, o: "QI") -> "QI":
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __truediv__(self, o: "QI") -> "QI":
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise DivisionByZero("division by zero Gaussian rational")
        return QI((self.re * o.re + self.im * o.im) / n,
                  (self.im * o.re - self.re * o.im) / n)

    def __pow__(self, k: int) -> "QI":
        if k < 0:
            return QI.ONE / self ** (-k)
        r = QI.ONE
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def conj(self) -> "QI":
        return QI(self.re, -self.im)

    def mod_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, o):
        return isinstance(o, QI) and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def sqrt(self) -> Optional["QI"]:
        """Exact square root inside Q(i), or None if it does not exist."""
        if self.is_zero():
            return QI.ZERO
        m2 = self.mod_sq()
        m = _frac_sqrt(m2)
        if m is None:
            return None
        # want x + iy with x^2 - y^2 = re, 2xy = im, x^2 + y^2 = m
        x2 = (self.re + m) / 2
        x = _frac_sqrt(x2)
        if x is not None:
            if x == 0:
                y = _frac_sqrt(-self.re)
                if y is None:
                    return None
                return QI(0, y)
            y = self.im / (2 * x)
            cand = QI(x, y)
            if cand * cand == self:
                return cand
        return None

    def __repr__(self):
        return f"QI({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        ipart = "i" if mag == 1 else f"{mag}*i"
        return f"({self.re} {sign} {ipart})"


QI.ZERO = QI(0, 0)
QI.ONE = QI(1, 0)
QI.I = QI(0, 1)


def _frac_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    num, den = q.numerator, q.denominator
    rn = _isqrt_exact(num)
    rd = _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n: int) -> Optional[int]:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


class HahnPoly:
    """A finite Q(i)-linear combination of exponential monomials.

    Stored as a map from exponent vectors to nonzero Gaussian-rational
    coefficients.  Exponents are totally ordered lexicographically with the
    finest generator most significant, which matches asymptotic dominance
    of the modelled sequences, so the leading term of a product is the
    product of the leading terms.
    """

    __slots__ = ("basis", "terms")

    def __init__(self, basis: ScaleBasis, terms: Dict[Exponent, QI]):
        self.basis = basis
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(basis: ScaleBasis) -> "HahnPoly":
        return HahnPoly(basis, {})

    @staticmethod
    def constant(basis: ScaleBasis, c: QI) -> "HahnPoly":
        return HahnPoly(basis, {basis.zero_exponent(): c})

    @staticmethod
    def monomial(basis: ScaleBasis, exp: Exponent, c: QI = QI.ONE) -> "HahnPoly":
        return HahnPoly(basis, {tuple(Fraction(q) for q in exp): c})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def lead(self) -> Tuple[Exponent, QI]:
        """Leading (asymptotically dominant) term."""
        e = max(self.terms, key=_exp_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _exp_key(t[0]), reverse=True)

    # -- ring operations ----------------------------------------------------

    def __add__(self, o: "HahnPoly") -> "HahnPoly":
        t = dict(self.terms)
        for e, c in o.terms.items():
            s = t.get(e, QI.ZERO) + c
            if s.is_zero():
                t.pop(e, None)
            else:
                t[e] = s
        return HahnPoly(self.basis, t)

    def __neg__(self) -> "HahnPoly":
        return HahnPoly(self.basis, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o: "HahnPoly") -> "HahnPoly":
        return self + (-o)

    def __mul__(self, o: "HahnPoly") -> "HahnPoly":
        t: Dict[Exponent, QI] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = exp_add(e1, e2)
                s = t.get(e, QI.ZERO) + c1 * c2
                if s.is_zero():
                    t.pop(e, None)
                else:
                    t[e] = s
        return HahnPoly(self.basis, t)

    def scale_monomial(self, exp: Exponent, c: QI) -> "HahnPoly":
        """Multiply by the single monomial c*x^exp (exact)."""
        return HahnPoly(
            self.basis, {exp_add(e, exp): cc * c for e, cc in self.terms.items()}
        )

    def exact_div(self, den: "HahnPoly", max_steps: int = 200000) -> "HahnPoly":
        """Exact quotient self/den in the monomial ring.

        Terminates precisely when den divides self (greedy leading-term
        elimination computes the unique quotient); raises otherwise.
        """
        if den.is_zero():
            raise DivisionByZero("exact_div by zero")
        e0, c0 = den.lead()
        q: Dict[Exponent, QI] = {}
        r = self
        for _ in range(max_steps):
            if r.is_zero():
                return HahnPoly(self.basis, q)
            e, c = r.lead()
            t_exp = exp_sub(e, e0)
            t_c = c / c0
            q[t_exp] = t_c
            r = r - den.scale_monomial(t_exp, t_c)
        raise ArithmeticError("exact_div: divisor does not divide dividend")

    def __eq__(self, o):
        return isinstance(o, HahnPoly) and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"HahnPoly({self.terms!r})"


@dataclass(frozen=True)
class NormValue:
    """Value of a scale norm.

    kind "zero" and "inf" are absorbing; "expq" stores q with value e^q
    (generator scales take values in e^Q); "modc" stores the squared
    modulus of a complex constant (trivial scale).  ExpQ(0) and ModC(1)
    both denote the unit norm and compare equal.
    """

    kind: str  # "zero" | "inf" | "expq" | "modc"
    value: Fraction = Fraction(0)

    @staticmethod
    def zero() -> "NormValue":
        return NormValue("zero")

    @staticmethod
    def infinite() -> "NormValue":
        return NormValue("inf")

    @staticmethod
    def expq(q) -> "NormValue":
        return NormValue("expq", Fraction(q))

    @staticmethod
    def modc_sq(m2) -> "NormValue":
        return NormValue("modc", Fraction(m2))

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero" or (self.kind == "modc" and self.value == 0)

    @property
    def is_infinite(self) -> bool:
        return self.kind == "inf"

    def is_one(self) -> bool:
        return (self.kind == "expq" and self.value == 0) or (
            self.kind == "modc" and self.value == 1
        )

    def _cmp_one(self) -> int:
        """-1, 0, 1 as the value is <1, =1, >1."""
        if self.is_zero:
            return -1
        if self.is_infinite:
            return 1
        if self.kind == "expq":
            return (self.value > 0) - (self.value < 0)
        return (self.value > 1) - (self.value < 1)

    def cmp(self, other: "NormValue") -> int:
        """Total comparison; mixing expq != 1 with modc != 1 is refused."""
        if self.is_zero:
            return 0 if other.is_zero else -1
        if other.is_zero:
            return 1
        if self.is_infinite:
            return 0 if other.is_infinite else 1
        if other.is_infinite:
            return -1
        if self.is_one():
            return -other._cmp_one()
        if other.is_one():
            return self._cmp_one()
        if self.kind == other.kind:
            return (self.value > other.value) - (self.value < other.value)
        raise ValueError(f"incomparable norm values {self} and {other}")

    def __eq__(self, o):
        if not isinstance(o, NormValue):
            return NotImplemented
        if self.is_one() and o.is_one():
            return True
        if self.is_zero and o.is_zero:
            return True
        return self.kind == o.kind and self.value == o.value

    def __hash__(self):
        if self.is_one():
            return hash(("norm-one",))
        if self.is_zero:
            return hash(("norm-zero",))
        return hash((self.kind, self.value))

    def mul(self, other: "NormValue") -> "NormValue":
        if self.is_zero or other.is_zero:
            if self.is_infinite or other.is_infinite:
                raise ValueError("0 * infinity in norm arithmetic")
            return NormValue.zero()
        if self.is_infinite or other.is_infinite:
            return NormValue.infinite()
        if self.kind == "expq" and other.kind == "expq":
            return NormValue.expq(self.value + other.value)
        if self.kind == "modc" and other.kind == "modc":
            return NormValue.modc_sq(self.value * other.value)
        if self.is_one():
            return other
        if other.is_one():
            return self
        raise ValueError(f"cannot multiply norms {self} and {other}")

    def inv(self) -> "NormValue":
        if self.is_zero:
            return NormValue.infinite()
        if self.is_infinite:
            return NormValue.zero()
        if self.kind == "expq":
            return NormValue.expq(-self.value)
        return NormValue.modc_sq(1 / self.value)

    def log_value(self) -> Fraction:
        """q with value e^q; only for expq norms."""
        if self.kind != "expq":
            raise ValueError(f"norm {self} is not in the value group e^Q")
        return self.value

    def __repr__(self):
        if self.kind == "zero":
            return "Norm(0)"
        if self.kind == "inf":
            return "Norm(inf)"
        if self.kind == "expq":
            return f"Norm(e^{self.value})"
        return f"Norm(|.|^2={self.value})"


def _monomial_norm(exp: Exponent, coeff: QI, eps: ScaleClass) -> NormValue:
    """Norm of c*exp(sum q_j/s_j) at a scale != (0)."""
    if eps.is_trivial:
        for j in reversed(range(len(exp))):
            if exp[j] != 0:
                return NormValue.infinite() if exp[j] > 0 else NormValue.zero()
        return NormValue.modc_sq(coeff.mod_sq())
    j_eps = eps.index
    for j in reversed(range(j_eps + 1, len(exp))):
        if exp[j] != 0:
            return NormValue.infinite() if exp[j] > 0 else NormValue.zero()
    return NormValue.expq(exp[j_eps])


class SymbolicNumber:
    """An element of the symbolic valued field, as a canonical fraction.

    The denominator is normalised to have leading term exactly 1 (unit
    constant, zero exponent); consequently norms and leading data are read
    off the numerator alone.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: HahnPoly, den: Optional[HahnPoly] = None):
        if den is None:
            den = HahnPoly.constant(num.basis, QI.ONE)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        e, c = den.lead()
        if c != QI.ONE or any(q != 0 for q in e):
            inv_exp = exp_neg(e)
            inv_c = QI.ONE / c
            num = num.scale_monomial(inv_exp, inv_c)
            den = den.scale_monomial(inv_exp, inv_c)
        if not num.is_zero() and 1 < len(den.terms) <= 12 and len(num.terms) <= 48:
            cap = len(num.terms) + 4 * len(den.terms) + 4
            q, ok = _try_exact_div(num, den, cap)
            if ok:
                num, den = q, HahnPoly.constant(num.basis, QI.ONE)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(basis: ScaleBasis) -> "SymbolicNumber":
        return SymbolicNumber(HahnPoly.zero(basis))

    @staticmethod
    def one(basis: ScaleBasis) -> "SymbolicNumber":
        return SymbolicNumber(HahnPoly.constant(basis, QI.ONE))

    @staticmethod
    def constant(basis: ScaleBasis, c) -> "SymbolicNumber":
        if not isinstance(c, QI):
            c = QI(c)
        return SymbolicNumber(HahnPoly.constant(basis, c))

    @staticmethod
    def monomial(basis: ScaleBasis, exp_map: Dict[int, Fraction],
                 coeff: QI = QI.ONE) -> "SymbolicNumber":
        """c * prod_j exp(q_j / s_j) with q_j = exp_map[j]."""
        e = list(basis.zero_exponent())
        for j, q in exp_map.items():
            e[j] = Fraction(q)
        return SymbolicNumber(HahnPoly.monomial(basis, tuple(e), coeff))

    @property
    def basis(self) -> ScaleBasis:
        return self.num.basis

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # -- field arithmetic ----------------------------------------------------

    def __add__(self, o: "SymbolicNumber") -> "SymbolicNumber":
        if self.den == o.den:
            return SymbolicNumber(self.num + o.num, self.den)
        return SymbolicNumber(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o: "SymbolicNumber") -> "SymbolicNumber":
        return self + (-o)

    def __neg__(self) -> "SymbolicNumber":
        return SymbolicNumber(-self.num, self.den)

    def __mul__(self, o: "SymbolicNumber") -> "SymbolicNumber":
        return SymbolicNumber(self.num * o.num, self.den * o.den)

    def __truediv__(self, o: "SymbolicNumber") -> "SymbolicNumber":
        if o.num.is_zero():
            raise DivisionByZero("division by zero symbolic number")
        return SymbolicNumber(self.num * o.den, self.den * o.num)

    def inv(self) -> "SymbolicNumber":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return SymbolicNumber(self.den, self.num)

    def __pow__(self, k: int) -> "SymbolicNumber":
        if k < 0:
            return self.inv() ** (-k)
        r = SymbolicNumber.one(self.basis)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, o):
        if not isinstance(o, SymbolicNumber):
            return NotImplemented
        return (self.num * o.den) == (o.num * self.den)

    def __hash__(self):
        # canonical form makes equal fractions with den=1 collide; general
        # fractions hash by leading data, which is equality-compatible.
        if self.den == HahnPoly.constant(self.basis, QI.ONE):
            return hash(self.num)
        if self.num.is_zero():
            return hash(HahnPoly.zero(self.basis))
        e, c = self.num.lead()
        return hash((e, c))

    # -- norms, residues, leading data ---------------------------------------

    def norm_at(self, eps: ScaleClass) -> NormValue:
        """Norm |z|_eps; at the extended scale (0) the norm is trivial."""
        if eps.is_zero:
            return NormValue.zero() if self.is_zero() else NormValue.expq(0)
        if self.num.is_zero():
            return NormValue.zero()
        e, c = self.num.lead()
        return _monomial_norm(e, c, eps)

    def equal_at(self, o: "SymbolicNumber", eps: ScaleClass) -> bool:
        if self.norm_at(eps).is_infinite or o.norm_at(eps).is_infinite:
            raise UnboundedAtScale("equality test on unbounded elements")
        return (self - o).norm_at(eps).is_zero

    def is_zero_at(self, eps: ScaleClass) -> bool:
        return self.norm_at(eps).is_zero

    def res_is_zero(self, eps: ScaleClass) -> bool:
        """Zero test in the residue field at eps (norm < 1)."""
        return self.norm_at(eps)._cmp_one() < 0

    def leading_data(self) -> Magnitude:
        if self.is_zero():
            return Magnitude(self.basis.zero_exponent(), Fraction(0), zero=True)
        e, c = self.num.lead()
        return Magnitude(e, c.mod_sq())

    def lead_exponent(self) -> Optional[Exponent]:
        if self.is_zero():
            return None
        return self.num.lead()[0]

    def size(self) -> int:
        return len(self.num.terms) + len(self.den.terms)

    def truncated(self, k: int) -> "SymbolicNumber":
        """Series approximant with at most k monomials; the discarded tail
        is lex-below the last kept exponent.  Used only where downstream
        verification is exact (e.g. hull candidate generation)."""
        if self.is_zero():
            return self
        if len(self.den.terms) == 1:
            if len(self.num.terms) <= k:
                return self
            top = dict(self.num.sorted_terms()[:k])
            return SymbolicNumber(HahnPoly(self.basis, top))
        q: Dict[Exponent, QI] = {}
        r = self.num
        for _ in range(k):
            if r.is_zero():
                break
            e, c = r.lead()
            q[e] = c
            r = r - self.den.scale_monomial(e, c)
        return SymbolicNumber(HahnPoly(self.basis, q))

    def constant_value(self) -> Optional[QI]:
        """The Gaussian rational this element equals, if it is constant."""
        if self.is_zero():
            return QI.ZERO
        if len(self.den.terms) != 1 or len(self.num.terms) != 1:
            return None
        e, c = self.num.lead()
        if any(q != 0 for q in e):
            return None
        return c

    # -- display --------------------------------------------------------------

    def __repr__(self):
        from .printing import format_symbolic

        return f"Sym[{format_symbolic(self)}]"


def _try_exact_div(num: HahnPoly, den: HahnPoly, max_steps: int = 64):
    """Attempt exact division num/den; den must have leading term 1.

    Returns (quotient, True) on success.  Division in this group algebra
    does not terminate in general, so the attempt is capped.
    """
    basis = num.basis
    q: Dict[Exponent, QI] = {}
    r = num
    for _ in range(max_steps):
        if r.is_zero():
            return HahnPoly(basis, q), True
        e, c = r.lead()
        q[e] = q.get(e, QI.ZERO) + c
        r = r - den.scale_monomial(e, c)
    return num, False
