"""Ingredient bases and exact evaluation of finite-combination norms.

Three 1-unconditional, 1-symmetric normalized bases are supported: the
standard bases of the summable, square-summable and null sequence spaces.
Norm results are carried as NormValue: either an exact nonnegative
rational `power_base` meaning value = power_base ** (1/inv_exp), or a
binary64 approximation.  Square-summable values stay squared end to end;
roots are taken only when a float is demanded.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParameter

#: Tolerance used for every comparison involving an approximate value.
APPROX_TOL = 1e-9


class BasisKind(enum.Enum):
    L1 = "l1"
    L2 = "l2"
    C0 = "c0"

    @classmethod
    def from_tag(cls, tag):
        for kind in cls:
            if kind.value == tag:
                return kind
        raise InvalidParameter(f"unknown basis tag {tag!r}")


def deleted_first(kind):
    """The same basis with its first term deleted.

    All three supported bases are symmetric, so deletion is an isometry
    and the tag is returned unchanged.
    """
    return kind


@dataclass(frozen=True)
class NormValue:
    power_base: Fraction | None
    inv_exp: Fraction
    approx: float

    @classmethod
    def exact(cls, base, p):
        base = Fraction(base)
        p = Fraction(p)
        if base < 0:
            raise InvalidParameter("power base must be nonnegative")
        if p <= 0:
            raise InvalidParameter("inverse exponent must be positive")
        return cls(base, p, float(base) ** (1 / float(p)))

    @classmethod
    def approximate(cls, value):
        return cls(None, Fraction(1), float(value))

    @property
    def is_exact(self):
        return self.power_base is not None

    @property
    def value(self):
        return self.approx

    def __float__(self):
        return self.approx

    def _int_exp(self):
        return self.inv_exp.denominator == 1

    def compare(self, other):
        """Three-way comparison: exact when both sides admit it, else
        float comparison at APPROX_TOL."""
        if (
            self.is_exact
            and other.is_exact
            and self._int_exp()
            and other._int_exp()
        ):
            p, q = self.inv_exp.numerator, other.inv_exp.numerator
            lhs = self.power_base**q
            rhs = other.power_base**p
            return (lhs > rhs) - (lhs < rhs)
        diff = self.approx - other.approx
        if abs(diff) <= APPROX_TOL:
            return 0
        return 1 if diff > 0 else -1

    def equals(self, other):
        return self.compare(other) == 0

    def _cmp_scalar(self, q):
        """Three-way comparison against a rational threshold q >= 0."""
        q = Fraction(q)
        if self.is_exact and self._int_exp():
            if q < 0:
                return 1
            rhs = q ** self.inv_exp.numerator
            return (self.power_base > rhs) - (self.power_base < rhs)
        diff = self.approx - float(q)
        if abs(diff) <= APPROX_TOL:
            return 0
        return 1 if diff > 0 else -1

    def at_least(self, q):
        return self._cmp_scalar(q) >= 0

    def at_most(self, q):
        return self._cmp_scalar(q) <= 0

    def below(self, q):
        return self._cmp_scalar(q) < 0

    def scale(self, c):
        """The norm of the |c|-scaled vector: absolute homogeneity."""
        c = Fraction(c)
        if self.is_exact and self._int_exp():
            base = self.power_base * abs(c) ** self.inv_exp.numerator
            return NormValue.exact(base, self.inv_exp)
        return NormValue.approximate(self.approx * abs(float(c)))

    def __repr__(self):
        if self.is_exact:
            return f"NormValue({self.power_base}^(1/{self.inv_exp}))"
        return f"NormValue(~{self.approx!r})"


ZERO_L1 = NormValue.exact(0, 1)


def basis_norm(kind, coeffs):
    """Exact norm of a finite coefficient combination in the given basis."""
    cs = [Fraction(c) for c in coeffs]
    if kind is BasisKind.L1:
        return NormValue.exact(sum((abs(c) for c in cs), Fraction(0)), 1)
    if kind is BasisKind.L2:
        return NormValue.exact(sum((c * c for c in cs), Fraction(0)), 2)
    if kind is BasisKind.C0:
        return NormValue.exact(max((abs(c) for c in cs), default=Fraction(0)), 1)
    raise InvalidParameter(f"unknown basis kind {kind!r}")


def triangle_leq(whole, part1, part2):
    """Check ||x+y|| <= ||x|| + ||y|| given the three norm values.

    Exact mode requires a shared integer inverse exponent in {1, 2};
    for 2 the square-root-free route is A <= B + C + 2*sqrt(B*C), decided
    by one cross-multiplied squaring.  Falls back to floats at APPROX_TOL.
    """
    if (
        whole.is_exact
        and part1.is_exact
        and part2.is_exact
        and whole.inv_exp == part1.inv_exp == part2.inv_exp
        and whole._int_exp()
    ):
        p = whole.inv_exp.numerator
        a, b, c = whole.power_base, part1.power_base, part2.power_base
        if p == 1:
            return a <= b + c
        if p == 2:
            gap = a - b - c
            if gap <= 0:
                return True
            return gap * gap <= 4 * b * c
    return whole.approx <= part1.approx + part2.approx + APPROX_TOL
