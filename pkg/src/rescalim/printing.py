"""Canonical string form of symbolic numbers and polynomials.

The emitted strings use the same grammar as the family definition language,
so printing then re-parsing is loss-free.  Monomials are sorted by
decreasing exponent (dominant first); the three builtin atoms render as
``log(n)``, ``n`` and ``exp(q*n)``, abstract generators by their declared
names.
"""

from __future__ import annotations

from fractions import Fraction

from .scales import BUILTIN_NAMES, ScaleBasis
from .symfield import HahnPoly, QI, SymbolicNumber

__all__ = ["format_symbolic", "format_hahn", "atom_label"]


def atom_label(basis: ScaleBasis, j: int) -> str:
    """Display atom for generator j: the quantity whose q-th power realises
    exponent q at that generator."""
    name = basis.names[j]
    if name == "(1/loglog n)":
        return "log(n)"
    if name == "(1/log n)":
        return "n"
    if name == "(1/n)":
        return None  # exp-family, handled separately
    return name


def _frac_str(q: Fraction) -> str:
    return str(q)


def _pow_str(base: str, q: Fraction) -> str:
    if q == 1:
        return base
    if q.denominator == 1 and q >= 0:
        return f"{base}^{q}"
    return f"{base}^({q})"


def _coeff_str(c: QI) -> str:
    return str(c)


def _monomial_str(basis: ScaleBasis, exp, c: QI) -> str:
    parts = []
    neg_parts = []
    for j, q in enumerate(exp):
        if q == 0:
            continue
        name = basis.names[j]
        if name == "(1/n)":
            parts.append(f"exp({_frac_str(q)}*n)")
            continue
        label = atom_label(basis, j)
        if q > 0:
            parts.append(_pow_str(label, q))
        else:
            neg_parts.append(_pow_str(label, -q))
    cs = _coeff_str(c)
    if parts and cs == "1":
        head = "*".join(parts)
    elif parts and cs == "-1":
        head = "-" + "*".join(parts)
    else:
        head = cs if not parts else cs + "*" + "*".join(parts)
    if neg_parts:
        head += "/" + "/".join(neg_parts)
    return head


def format_hahn(p: HahnPoly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.sorted_terms():
        s = _monomial_str(p.basis, e, c)
        if pieces and not s.startswith("-"):
            pieces.append("+ " + s)
        elif pieces:
            pieces.append("- " + s[1:])
        else:
            pieces.append(s)
    return " ".join(pieces)


def format_symbolic(z: SymbolicNumber) -> str:
    num = format_hahn(z.num)
    if z.den == HahnPoly.constant(z.basis, QI.ONE):
        return num
    den = format_hahn(z.den)
    nstr = num if "+" not in num and " - " not in num else f"({num})"
    return f"{nstr}/({den})"
