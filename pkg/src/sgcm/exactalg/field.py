"""Coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either ``FieldSpec("rational")`` or ``FieldSpec("prime", p)``.

    Rational coefficients are ``Fraction``; prime-field coefficients are
    plain ints reduced into ``[0, p)``.
    """

    kind: str = "rational"
    p: int = 0

    def __post_init__(self):
        if self.kind == "rational":
            if self.p:
                raise ValueError("rational field takes no characteristic")
        elif self.kind == "prime":
            if not _is_prime(self.p) or self.p >= 2**31:
                raise ValueError(f"{self.p} is not a prime below 2^31")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value):
        """Coerce an int or Fraction into this field."""
        if self.p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def __str__(self) -> str:
        return f"Fp({self.p})" if self.p else "Q"


QQ = FieldSpec.rational()
