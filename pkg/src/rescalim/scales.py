"""Asymptotic scales as a finite ordered basis.

A scale is an equivalence class of bounded sequences of positive reals,
two sequences being identified when the limit of their ratio is finite and
nonzero.  Scales are totally ordered; the constant sequence ``(1)`` is the
maximal (trivial) scale and the extended scale ``(0)`` is adjoined as a
minimum.  This module restricts attention to a finite declared basis of
generator scales

    s_1 > s_2 > ... > s_k        (all strictly below the trivial scale)

which is enough to house every scale produced by the computations of the
library: every scale that actually arises is the theta-class of the
magnitude of an element of the symbolic coefficient field, and such classes
always land on a basis generator or on the trivial scale.

Magnitudes record the leading asymptotic behaviour of ``|z_n|`` for an
element ``z`` of the symbolic field: an exponent vector ``q`` (``z_n``
grows like ``exp(sum_j q_j / s_{j,n})`` times a constant) together with the
squared modulus of the leading constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import UnboundedMagnitude

__all__ = [
    "ScaleBasis",
    "ScaleClass",
    "Magnitude",
    "TRIVIAL",
    "ZERO",
    "compare_scales",
    "theta_class",
]

# Builtin generator tags, coarsest first.  The atom named on the right of
# each arrow produces the generator on the left when it appears in a family
# definition:  log(n) -> (1/loglog n),  n -> (1/log n),  exp(q*n) -> (1/n).
BUILTIN_NAMES = ("(1/loglog n)", "(1/log n)", "(1/n)")


@dataclass(frozen=True)
class ScaleClass:
    """One scale: the trivial scale, the extended zero scale, or a basis
    generator identified by its index (0 = coarsest)."""

    kind: str  # "trivial" | "zero" | "gen"
    index: int = -1

    def _key(self):
        if self.kind == "zero":
            return (0, 0)
        if self.kind == "gen":
            # larger index = finer = smaller scale
            return (1, -self.index)
        return (2, 0)

    def __lt__(self, other: "ScaleClass") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "ScaleClass") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "ScaleClass") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "ScaleClass") -> bool:
        return self._key() >= other._key()

    @property
    def is_trivial(self) -> bool:
        return self.kind == "trivial"

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    @property
    def is_generator(self) -> bool:
        return self.kind == "gen"

    def __repr__(self):
        if self.kind == "trivial":
            return "ScaleClass(1)"
        if self.kind == "zero":
            return "ScaleClass(0)"
        return f"ScaleClass(gen {self.index})"


TRIVIAL = ScaleClass("trivial")
ZERO = ScaleClass("zero")


class ScaleBasis:
    """An ordered finite basis of generator scales, coarsest first.

    ``names[j]`` is the display name of generator ``j``; names must be
    unique.  The trivial scale and the extended zero scale are implicit.
    """

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        self.names = names

    @property
    def rank(self) -> int:
        return len(self.names)

    def gen(self, index: int) -> ScaleClass:
        if not 0 <= index < self.rank:
            raise IndexError(f"no generator with index {index}")
        return ScaleClass("gen", index)

    def generators(self):
        return [self.gen(j) for j in range(self.rank)]

    def all_scales(self):
        """Every representable scale, fine to coarse, excluding (0)."""
        return [self.gen(j) for j in reversed(range(self.rank))] + [TRIVIAL]

    def name_of(self, scale: ScaleClass) -> str:
        if scale.is_trivial:
            return "(1)"
        if scale.is_zero:
            return "(0)"
        return self.names[scale.index]

    def scale_by_name(self, name: str) -> ScaleClass:
        if name == "(1)":
            return TRIVIAL
        if name == "(0)":
            return ZERO
        return self.gen(self.names.index(name))

    def zero_exponent(self) -> Tuple[Fraction, ...]:
        return (Fraction(0),) * self.rank

    def __eq__(self, other):
        return isinstance(other, ScaleBasis) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"ScaleBasis({' > '.join(self.names) if self.names else '<empty>'})"


@dataclass(frozen=True)
class Magnitude:
    """Leading asymptotic size data of a coefficient sequence.

    ``lead_exp[j]`` is the exponent of ``exp(1/s_{j,n})`` in the dominant
    term; ``lead_mod_sq`` the squared modulus of its constant.
    """

    lead_exp: Tuple[Fraction, ...]
    lead_mod_sq: Fraction
    zero: bool = False

    def __post_init__(self):
        if self.zero:
            assert all(q == 0 for q in self.lead_exp) and self.lead_mod_sq == 0
        else:
            assert self.lead_mod_sq > 0

    def finest_nonzero(self) -> Optional[int]:
        """Index of the finest generator with a nonzero exponent."""
        for j in reversed(range(len(self.lead_exp))):
            if self.lead_exp[j] != 0:
                return j
        return None


def compare_scales(a: ScaleClass, b: ScaleClass) -> int:
    """Total order on scales: -1, 0 or 1 as ``a`` is below, equal to or
    above ``b``.  Zero is the minimum and the trivial scale the maximum."""
    ka, kb = a._key(), b._key()
    return (ka > kb) - (ka < kb)


def theta_class(m: Magnitude) -> ScaleClass:
    """Scale class of ``(theta(|z_n|))`` for a magnitude ``m``.

    theta(s) = -1/log(s) for small s and 1 for s >= 1/e, so a sequence
    decaying like ``exp(q/s_{j,n})`` with ``q < 0`` has theta-class the
    generator ``s_j`` while bounded-away-from-0 sequences are trivial.
    """
    if m.zero:
        raise ValueError("theta undefined for the identically zero magnitude")
    j = m.finest_nonzero()
    if j is None:
        return TRIVIAL
    if m.lead_exp[j] > 0:
        raise UnboundedMagnitude(
            "sequence tends to infinity; theta-class undefined"
        )
    return ScaleClass("gen", j)
