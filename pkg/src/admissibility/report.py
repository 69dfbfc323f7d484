"""Verdict carrier shared by every bound check, plus display helpers."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction


@dataclass(frozen=True)
class BoundReport:
    """Verdict of an exact integer inequality ``lhs <= rhs``.

    ``approx`` holds decimal strings for display only; the verdict never
    looks at it.  ``details`` carries check-specific extras in insertion
    order.
    """

    quantity: int
    inequality: str
    lhs: int
    rhs: int
    holds: bool
    approx: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, quantity, inequality, lhs, rhs, approx=None, details=None):
        return cls(quantity, inequality, lhs, rhs, lhs <= rhs, dict(approx or {}), dict(details or {}))

    def to_json(self):
        out = {
            "quantity": str(self.quantity),
            "inequality": self.inequality,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "holds": self.holds,
            "approx": dict(self.approx),
        }
        if self.details:
            out["details"] = dict(self.details)
        return out


def decimal_string(x, places=6) -> str:
    """Fixed-point rendering of a rational (or Decimal), trailing zeros dropped."""
    with localcontext() as ctx:
        ctx.prec = 60
        if isinstance(x, Decimal):
            q = x
        else:
            x = Fraction(x)
            q = Decimal(x.numerator) / Decimal(x.denominator)
        q = q.quantize(Decimal(1).scaleb(-places))
        text = format(q, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def decimal_power(base, exponent: Fraction, places=6) -> str:
    """Display string of ``base ** exponent`` for a rational exponent."""
    with localcontext() as ctx:
        ctx.prec = 60
        b = Fraction(base)
        value = (Decimal(b.numerator) / Decimal(b.denominator)) ** (
            Decimal(exponent.numerator) / Decimal(exponent.denominator)
        )
        return decimal_string(value, places)


def decimal_sqrt(square: int, places=6) -> str:
    with localcontext() as ctx:
        ctx.prec = max(60, len(str(square)) + places + 5)
        return decimal_string(Decimal(square).sqrt(), places)
