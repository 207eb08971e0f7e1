"""Haar-measure-valued Euler characteristics.

A ``HaarValue`` is a rational multiple of the Haar measure normalized at a
compact open subgroup, identified only by a symbolic label.  Measures at
different base labels are never compared directly: ``rebase`` converts,
given the rational factor relating the two normalizations (for a base
contained in a larger subgroup with index k, the smaller-base measure is k
times the larger-base one).

``chi_from_resolution`` evaluates the alternating sum of permutation-module
ranks over a finite resolution description: each summand is the measure
normalized at a subgroup containing the common base with known index.
``chevalley_chi`` and ``chi_via_parahoric_sum`` are the two independent
closed forms for simple groups over a local field with residue size q,
both normalized at the chamber stabilizer label "Iw".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .coxeter import (
    AffineCartanPair,
    exponents,
    poincare_poly,
    poincare_value,
)
from .errors import ValidationError

TRIVIAL_BASE = "1"
IWAHORI_BASE = "Iw"


class UnknownIndex(ValidationError):
    pass


@dataclass(frozen=True)
class HaarValue:
    """coeff times the Haar measure with mass one on the subgroup ``base``."""

    coeff: Fraction
    base: str

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))

    def _require_same_base(self, other):
        if self.base != other.base:
            raise ValueError(f"cannot combine measures over {self.base!r} and {other.base!r}")

    def __add__(self, other):
        if not isinstance(other, HaarValue):
            return NotImplemented
        self._require_same_base(other)
        return HaarValue(self.coeff + other.coeff, self.base)

    def __sub__(self, other):
        if not isinstance(other, HaarValue):
            return NotImplemented
        self._require_same_base(other)
        return HaarValue(self.coeff - other.coeff, self.base)

    def __neg__(self):
        return HaarValue(-self.coeff, self.base)

    def __mul__(self, scalar):
        return HaarValue(self.coeff * Fraction(scalar), self.base)

    __rmul__ = __mul__

    def rebase(self, new_base, factor):
        """Express the value over a different normalizing subgroup.

        ``factor`` is the exact rational with (measure at the old base) ==
        factor times (measure at the new base); when the old base sits
        inside the new one with index k the factor is k.
        """
        factor = Fraction(factor)
        if factor <= 0:
            raise UnknownIndex(f"rebase factor must be positive, got {factor}")
        return HaarValue(self.coeff * factor, new_base)

    def is_negative(self):
        return self.coeff < 0

    def __str__(self):
        return f"{self.coeff}*mu[{self.base}]"


def hs_rank_permutation(base):
    """Rank of the permutation module on cosets of the labelled subgroup:
    exactly the measure normalized there."""
    return HaarValue(1, base)


@dataclass(frozen=True)
class ResolutionDescription:
    """Finite resolution datum: per degree, summands given by subgroup
    labels with their index over a common base subgroup.

    ``degrees[k]`` lists ``(label, index)`` pairs; the index is the
    (positive integer) index of the base inside the labelled subgroup, so
    the summand contributes measure 1/index over the base.  A missing index
    (None) raises ``UnknownIndex`` on evaluation.
    """

    base: str
    degrees: tuple

    @classmethod
    def build(cls, base, degrees):
        packed = tuple(tuple((label, index) for label, index in layer) for layer in degrees)
        return cls(base, packed)


def chi_from_resolution(description):
    """Alternating sum of the permutation-module ranks of a resolution."""
    total = Fraction(0)
    for k, layer in enumerate(description.degrees):
        sign = -1 if k % 2 else 1
        for label, index in layer:
            if index is None:
                raise UnknownIndex(f"no index known for subgroup {label!r}")
            index = int(index)
            if index <= 0:
                raise UnknownIndex(f"index for {label!r} must be positive")
            total += Fraction(sign, index)
    return HaarValue(total, description.base)


def chevalley_chi(finite_cartan, q):
    """Closed-form Euler characteristic over the Iwahori normalization.

    Exact value: minus the product of (q^{m_i} - 1) over the exponents,
    divided by the length generating polynomial evaluated at q.  Strictly
    negative for every finite type and every q >= 2.
    """
    if int(q) != q or q < 2:
        raise ValidationError("q must be an integer >= 2")
    q = int(q)
    poly = poincare_poly(finite_cartan)
    numerator = 1
    for m in exponents(poly):
        numerator *= q ** m - 1
    return HaarValue(Fraction(-numerator, poly(q)), IWAHORI_BASE)


def chi_via_parahoric_sum(pair, q):
    """Euler characteristic as the alternating sum over parahoric classes.

    Parahoric classes correspond to proper subsets of the affine node set;
    the class of subset I contributes sign (-1)^(|I| - 1) with weight one
    over the subgroup of index p_{W(I)}(q) above the chamber stabilizer.
    Agrees exactly with ``chevalley_chi`` on the finite part.
    """
    if not isinstance(pair, AffineCartanPair):
        raise ValidationError("parahoric sum needs an affine/finite Cartan pair")
    if int(q) != q or q < 2:
        raise ValidationError("q must be an integer >= 2")
    q = int(q)
    affine = pair.affine
    coxeter_view = affine.to_coxeter()
    total = Fraction(0)
    for size in range(affine.n):
        for subset in combinations(range(affine.n), size):
            if not coxeter_view.is_spherical(subset):
                raise ValidationError(f"parahoric subset {subset} is not finite type")
            if subset:
                index = poincare_value(affine.submatrix(subset), q)
            else:
                index = 1
            sign = 1 if size % 2 else -1  # (-1) to the (size - 1)
            total += Fraction(sign, index)
    return HaarValue(total, IWAHORI_BASE)
