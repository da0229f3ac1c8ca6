"""Structured verification results and their JSON form."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

__all__ = ["Check", "VerificationReport", "format_rational"]


def _rational(q) -> Fraction:
    return q if type(q) is Fraction else Fraction(q)


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    values: tuple[Fraction, ...]
    radius: Fraction
    passed: bool
    error: Optional[str] = None

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "anchor": self.anchor,
            "values": [format_rational(v) for v in self.values],
            "radius": format_rational(self.radius),
            "pass": self.passed,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, anchor: str, values: Sequence, radius, passed: bool) -> Check:
        check = Check(name, anchor, tuple(map(_rational, values)), _rational(radius), bool(passed))
        self.checks.append(check)
        return check

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)
