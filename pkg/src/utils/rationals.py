"""
Exact rational values for machine-format reports.

Rationals are serialized as ``{"sign": ±1, "num": "...", "den": "..."}`` with
decimal strings so that arbitrary precision survives JSON.
"""

from fractions import Fraction
from math import gcd
from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator


class ExactRational(BaseModel):
    """A reduced rational with an explicit sign."""

    model_config = ConfigDict(frozen=True)

    sign: Literal[-1, 0, 1]
    num: str
    den: str

    @model_validator(mode="after")
    def _reduced(self) -> "ExactRational":
        if not (self.num.isdigit() and self.den.isdigit()):
            raise ValueError("num and den must be non-negative decimal strings")
        num, den = int(self.num), int(self.den)
        if den == 0:
            raise ValueError("den must be positive")
        if gcd(num, den) != 1 and num != 0:
            raise ValueError("fraction is not reduced")
        if (num == 0) != (self.sign == 0):
            raise ValueError("sign 0 exactly for the zero value")
        return self

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> "ExactRational":
        value = Fraction(value)
        sign = (value > 0) - (value < 0)
        return cls(sign=sign, num=str(abs(value.numerator)), den=str(value.denominator))

    def to_fraction(self) -> Fraction:
        return self.sign * Fraction(int(self.num), int(self.den))

    def __str__(self) -> str:
        body = self.num if self.den == "1" else f"{self.num}/{self.den}"
        return f"-{body}" if self.sign < 0 else body
