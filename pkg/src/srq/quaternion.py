"""Quaternion arithmetic, slice decomposition, and text/JSON formats.

Every value in the package ultimately reduces to the :class:`Quaternion`
defined here.  Instances are immutable in practice (nothing in the package
mutates them), so they are safe for unrestricted concurrent use.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

from .errors import ParseError

#: Below this (scale-aware) threshold, inversion refuses to divide.
DIVISION_EPS = 1e-12


class Quaternion:
    """A quaternion w + x*i + y*j + z*k with double-precision components.

    Construction rejects NaN/Inf so a non-finite value can never leave an
    operation silently.
    """

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        w = float(w)
        x = float(x)
        y = float(y)
        z = float(z)
        if not (math.isfinite(w) and math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            raise ValueError(f"non-finite quaternion component in ({w}, {x}, {y}, {z})")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w + other.w, self.x + other.x,
                              self.y + other.y, self.z + other.z)
        if isinstance(other, (int, float)):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w - other.w, self.x - other.x,
                              self.y - other.y, self.z - other.z)
        if isinstance(other, (int, float)):
            return Quaternion(self.w - other, self.x, self.y, self.z)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(other - self.w, -self.x, -self.y, -self.z)
        return NotImplemented

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            w1, x1, y1, z1 = self.w, self.x, self.y, self.z
            w2, x2, y2, z2 = other.w, other.x, other.y, other.z
            return Quaternion(
                w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2)
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        # real scalars commute, so left multiplication needs no special case
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __truediv__(self, other):
        # quotient by a quaternion is ambiguous (left vs right); use inverse()
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Quaternion):
            return (self.w == other.w and self.x == other.x
                    and self.y == other.y and self.z == other.z)
        if isinstance(other, (int, float)):
            return self.w == other and self.x == 0.0 and self.y == 0.0 and self.z == 0.0
        return NotImplemented

    def __hash__(self):
        return hash((self.w, self.x, self.y, self.z))

    # -- metrics and involutions --------------------------------------------

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    __abs__ = norm

    def inverse(self, eps: float = DIVISION_EPS) -> "Quaternion":
        """q^{-1} = conj(q)/|q|^2; refuses when |q| is below ``eps``."""
        n2 = self.norm_sq()
        if n2 <= eps * eps:
            raise ZeroDivisionError(f"quaternion too small to invert (|q| = {math.sqrt(n2):g})")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    def imag(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    def imag_norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def is_real(self, tol: float = 0.0) -> bool:
        return self.imag_norm() <= tol

    def isclose(self, other: "Quaternion", rel_tol: float = 1e-12, abs_tol: float = 0.0) -> bool:
        gap = (self - other).norm()
        return gap <= max(rel_tol * max(self.norm(), other.norm()), abs_tol)

    # -- slice structure ------------------------------------------------------

    def slice_decompose(self) -> "SliceCoordinates":
        """Split q = x0 + y0*I with y0 >= 0 and I a unit imaginary.

        Real points have no preferred imaginary unit; the canonical choice
        I = i keeps decomposition total.  Near-real points keep their actual
        tiny y0 and true axis, so the map stays continuous off the reals.
        """
        y0 = self.imag_norm()
        if y0 == 0.0:
            return SliceCoordinates(self.w, 0.0, I)
        axis = Quaternion(0.0, self.x / y0, self.y / y0, self.z / y0)
        return SliceCoordinates(self.w, y0, axis)

    # -- formats ---------------------------------------------------------------

    def to_json(self) -> list:
        return [self.w, self.x, self.y, self.z]

    @classmethod
    def from_json(cls, obj) -> "Quaternion":
        if not isinstance(obj, (list, tuple)) or len(obj) != 4:
            raise ParseError(f"quaternion JSON must be a list [w, x, y, z], got {obj!r}")
        try:
            return cls(*obj)
        except (TypeError, ValueError) as exc:
            raise ParseError(str(exc)) from exc

    @classmethod
    def parse(cls, text: str) -> "Quaternion":
        """Parse 'w+xi+yj+zk' with optional terms (e.g. '0.5i'), or JSON '[w,x,y,z]'."""
        s = text.strip()
        if not s:
            raise ParseError("empty quaternion literal")
        if s.startswith("["):
            try:
                obj = json.loads(s)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad quaternion JSON {text!r}: {exc}") from exc
            return cls.from_json(obj)
        compact = s.replace(" ", "")
        comp = {"": 0.0, "i": 0.0, "j": 0.0, "k": 0.0}
        pos = 0
        first = True
        while pos < len(compact):
            m = _TERM.match(compact, pos)
            if m is None or (m.group("num") is None and not m.group("unit")):
                raise ParseError(f"invalid quaternion literal {text!r} (at offset {pos})")
            if not first and not m.group("sign"):
                raise ParseError(f"invalid quaternion literal {text!r}: "
                                 f"terms after the first need a sign (at offset {pos})")
            first = False
            mag = 1.0 if m.group("num") is None else float(m.group("num"))
            if m.group("sign") == "-":
                mag = -mag
            comp[m.group("unit") or ""] += mag
            pos = m.end()
        return cls(comp[""], comp["i"], comp["j"], comp["k"])

    def __str__(self):
        parts = []
        for value, unit in ((self.w, ""), (self.x, "i"), (self.y, "j"), (self.z, "k")):
            if value == 0.0:
                continue
            mag = _fmt_float(abs(value))
            if unit and mag == "1":
                mag = ""
            parts.append(("-" if value < 0 else "+") + mag + unit)
        if not parts:
            return "0"
        joined = "".join(parts)
        return joined[1:] if joined.startswith("+") else joined

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


_TERM = re.compile(
    r"(?P<sign>[+-]?)"
    r"(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)?"
    r"(?P<unit>[ijk]?)")


def _fmt_float(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


@dataclass(frozen=True)
class SliceCoordinates:
    """Coordinates q = x0 + y0*I on the complex slice through q."""

    x0: float
    y0: float
    I: Quaternion

    def reconstruct(self) -> Quaternion:
        return Quaternion(self.x0) + self.I * self.y0


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def as_quaternion(value) -> Quaternion:
    """Coerce a Quaternion, real number, or 4-sequence to a Quaternion."""
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float)):
        return Quaternion(value)
    if isinstance(value, (list, tuple)) and len(value) == 4:
        return Quaternion(*value)
    raise TypeError(f"cannot interpret {value!r} as a quaternion")
