"""Symbolic determinant values of the form ``sign * (3 if factor3 else 1) * 2**exp2``."""
from __future__ import annotations

import re
from dataclasses import dataclass

_TEXT = re.compile(r"^\s*(-?)\s*(?:(3)\s*\*\s*)?2\s*\^\s*(\d+)\s*$")


@dataclass(frozen=True, order=True)
class DetValue:
    sign: int
    exp2: int = 0
    factor3: bool = False

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if self.exp2 < 0:
            raise ValueError("exp2 must be non-negative")
        if self.sign == 0 and (self.exp2 or self.factor3):
            raise ValueError("a zero DetValue carries no exponent or factor 3")

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def signed_log2(self) -> int | None:
        """``sign * exp2``; None for zero (the factor 3 is ignored)."""
        return None if self.sign == 0 else self.sign * self.exp2

    def to_int(self) -> int:
        """Materialize the exact integer; only sensible for moderate exponents."""
        if self.sign == 0:
            return 0
        return self.sign * ((3 if self.factor3 else 1) << self.exp2)

    @classmethod
    def from_int(cls, value: int) -> "DetValue":
        """Inverse of to_int; raises ValueError if value is not +-2^k or +-3*2^k."""
        if value == 0:
            return cls(0)
        sign = 1 if value > 0 else -1
        v = abs(value)
        e = (v & -v).bit_length() - 1
        rest = v >> e
        if rest not in (1, 3):
            raise ValueError(f"{value} is not of the form +-2^k or +-3*2^k")
        return cls(sign, e, rest == 3)

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        return f"{'-' if self.sign < 0 else ''}{'3*' if self.factor3 else ''}2^{self.exp2}"

    @classmethod
    def parse(cls, text: str) -> "DetValue":
        if text.strip() == "0":
            return cls(0)
        m = _TEXT.match(text)
        if not m:
            raise ValueError(f"cannot parse determinant text {text!r}")
        return cls(-1 if m.group(1) else 1, int(m.group(3)), bool(m.group(2)))


DetValue.ZERO = DetValue(0)
