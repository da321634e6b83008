"""Regular quotients, the sphere-preserving change of variables, and zero sets.

Symmetrizations have real coefficients, and real-coefficient polynomials are
central for the star product.  Every regular quotient therefore evaluates as
``sym(q)^{-1} * conum(q)`` for a real polynomial ``sym`` and a polynomial
``conum`` (for a left quotient f^{-*}*g these are f^s and f^c*g), and in this
"expanded" form the ring of quotients multiplies componentwise:

    (S1, P1) * (S2, P2) = (S1*S2, P1*P2)

Quotients built from an explicit (den, num) pair keep the pair around; it
feeds the independent change-of-variables evaluation route and the cheap
pair-level conjugation and reciprocal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonConvergence, PoleError
from .quaternion import ONE, ZERO, Quaternion, as_quaternion
from .series import RegularPolynomial

#: Scale factor for the pole guard: evaluation refuses when
#: |sym(q)| < POLE_EPS * (1 + sum |sym coefficients|).
POLE_EPS = 1e-12


class RegularQuotient:
    """A quotient of regular polynomials under the star product.

    ``side="left"`` is f^{-*}*g with den=f, num=g, evaluating as
    f^s(q)^{-1} (f^c*g)(q); ``side="right"`` is g*h^{-*} with den=h, num=g,
    evaluating as h^s(q)^{-1} (g*h^c)(q).  Ring arithmetic (sums, star
    products, reciprocals) may leave the pair representation behind, in which
    case only the expanded form is carried (``side == "expanded"``).

    Evaluation anywhere on the zero set of the denominator symmetrization is
    an error, never a silent value.
    """

    __slots__ = ("den", "num", "side", "sym", "conum", "_pole_scale")

    def __init__(self, den, num, side: str = "left"):
        den = _as_poly(den)
        num = _as_poly(num)
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        if den.is_zero:
            raise ValueError("denominator is identically zero")
        sym = den.symmetrization()
        conum = den.conjugate() * num if side == "left" else num * den.conjugate()
        self._install(den, num, side, sym, conum)

    def _install(self, den, num, side, sym, conum):
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "sym", sym)
        object.__setattr__(self, "conum", conum)
        object.__setattr__(self, "_pole_scale",
                           POLE_EPS * (1.0 + sym.coefficient_norm_sum()))

    def __setattr__(self, name, value):
        raise AttributeError("RegularQuotient is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_expanded(cls, sym: RegularPolynomial, conum: RegularPolynomial) -> "RegularQuotient":
        sym = _as_poly(sym)
        conum = _as_poly(conum)
        if sym.is_zero:
            raise ValueError("expanded denominator is identically zero")
        if not sym.is_real(1e-12 * (1.0 + sym.coefficient_norm_sum())):
            raise ValueError("expanded denominator must have real coefficients")
        obj = cls.__new__(cls)
        obj._install(None, None, "expanded", sym, conum)
        return obj

    @classmethod
    def from_polynomial(cls, p) -> "RegularQuotient":
        return cls(RegularPolynomial([ONE]), _as_poly(p), "left")

    @classmethod
    def from_json(cls, obj) -> "RegularQuotient":
        return cls(RegularPolynomial.from_json(obj["den"]),
                   RegularPolynomial.from_json(obj["num"]),
                   obj.get("side", "left"))

    def to_json(self) -> dict:
        if self.den is None:
            raise ValueError("only (den, num) pair quotients have a JSON form")
        return {"den": self.den.to_json(), "num": self.num.to_json(), "side": self.side}

    @property
    def is_pair(self) -> bool:
        return self.den is not None

    # -- evaluation --------------------------------------------------------------

    def evaluate(self, q) -> Quaternion:
        """sym(q)^{-1} conum(q), refusing near the zero set of sym."""
        q = as_quaternion(q)
        s = self.sym.evaluate(q)
        if s.norm() < self._pole_scale:
            raise PoleError(f"{q} lies on the zero set of the denominator symmetrization")
        return s.inverse() * self.conum.evaluate(q)

    __call__ = evaluate

    def evaluate_via_transform(self, q) -> Quaternion:
        """Independent evaluation route through the change of variables.

        For a left quotient this is f(T_f(q))^{-1} g(T_f(q)).  For a right
        quotient g*h^{-*} the analogous route pushes h^c through the star
        product with g: h^s(q)^{-1} g(q) h^c(g(q)^{-1} q g(q)), valid where
        g(q) != 0.  Both routes exist for cross-validation against
        :meth:`evaluate`; they share no intermediate values.
        """
        if self.den is None:
            raise ValueError("transform-route evaluation needs a (den, num) pair")
        q = as_quaternion(q)
        if self.side == "left":
            w = star_transform(self.den, q)
            fw = self.den.evaluate(w)
            if fw.norm() < POLE_EPS * (1.0 + self.den.coefficient_norm_sum()):
                raise PoleError(f"{q} maps onto a zero of the denominator")
            return fw.inverse() * self.num.evaluate(w)
        s = self.sym.evaluate(q)
        if s.norm() < self._pole_scale:
            raise PoleError(f"{q} lies on the zero set of the denominator symmetrization")
        gq = self.num.evaluate(q)
        if gq.norm() < POLE_EPS * (1.0 + self.num.coefficient_norm_sum()):
            raise ValueError("transform route for a right quotient needs a nonzero numerator value")
        w = gq.inverse() * q * gq
        return s.inverse() * (gq * self.den.conjugate().evaluate(w))

    # -- ring structure --------------------------------------------------------------

    def conjugate(self) -> "RegularQuotient":
        """Regular conjugate; on pairs it conjugates both parts and flips the side."""
        if self.is_pair:
            flipped = "right" if self.side == "left" else "left"
            return RegularQuotient(self.den.conjugate(), self.num.conjugate(), flipped)
        return RegularQuotient.from_expanded(self.sym, self.conum.conjugate())

    def symmetrization(self) -> "RegularQuotient":
        """(f^{-*}*g)^s = (f^s)^{-1} g^s, with both parts real."""
        if self.is_pair:
            return RegularQuotient.from_expanded(self.den.symmetrization(),
                                                 self.num.symmetrization())
        return RegularQuotient.from_expanded(self.sym * self.sym,
                                             self.conum.symmetrization())

    def symmetrization_value(self, q) -> Quaternion:
        return self.symmetrization().evaluate(q)

    def reciprocal(self) -> "RegularQuotient":
        if self.is_pair:
            # (f^{-*}*g)^{-*} = g^{-*}*f and (g*h^{-*})^{-*} = h*g^{-*}
            if self.num.is_zero:
                raise ValueError("cannot invert the zero quotient")
            return RegularQuotient(self.num, self.den, self.side)
        if self.conum.is_zero:
            raise ValueError("cannot invert the zero quotient")
        return RegularQuotient.from_expanded(self.conum.symmetrization(),
                                             self.conum.conjugate() * self.sym)

    def __mul__(self, other):
        other = _as_quotient(other)
        if other is NotImplemented:
            return NotImplemented
        return RegularQuotient.from_expanded(self.sym * other.sym,
                                             self.conum * other.conum)

    def __rmul__(self, other):
        other = _as_quotient(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __add__(self, other):
        other = _as_quotient(other)
        if other is NotImplemented:
            return NotImplemented
        return RegularQuotient.from_expanded(
            self.sym * other.sym,
            other.sym * self.conum + self.sym * other.conum)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_quotient(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_quotient(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return RegularQuotient.from_expanded(self.sym, -self.conum)

    def remainder(self, q0) -> "RegularQuotient":
        """(q - q0)^{-*} * (f - f(q0)) inside the ring of quotients.

        With f = S^{-1} P the shifted conumerator P - S f(q0) vanishes at q0,
        so the linear factor divides out exactly on the polynomial side; the
        result S^{-1} (P - S f(q0)) / (q - q0) carries no removable
        singularity on the sphere of q0.
        """
        q0 = as_quaternion(q0)
        shifted = self.conum - self.sym * self.evaluate(q0)
        return RegularQuotient.from_expanded(self.sym, shifted.remainder(q0))

    def cullen_derivative(self) -> "RegularQuotient":
        """Slice derivative of S^{-1}P: (S^2)^{-1} (S P' - S' P)."""
        ds = self.sym.cullen_derivative()
        dp = self.conum.cullen_derivative()
        return RegularQuotient.from_expanded(self.sym * self.sym,
                                             self.sym * dp - ds * self.conum)

    def sphere_zero_set(self) -> "SphereZeroSet":
        """The excluded spheres: zeros of the denominator symmetrization."""
        return _zero_set_of_real_polynomial(self.sym)

    def __repr__(self):
        if self.is_pair:
            return f"RegularQuotient(den={self.den!r}, num={self.num!r}, side={self.side!r})"
        return f"RegularQuotient.from_expanded({self.sym!r}, {self.conum!r})"


def _as_poly(value) -> RegularPolynomial:
    if isinstance(value, RegularPolynomial):
        return value
    if isinstance(value, (int, float, Quaternion)):
        return RegularPolynomial([as_quaternion(value)])
    raise TypeError(f"cannot interpret {value!r} as a regular polynomial")


def _as_quotient(value):
    if isinstance(value, RegularQuotient):
        return value
    if isinstance(value, (int, float, Quaternion, RegularPolynomial)):
        return RegularQuotient.from_polynomial(_as_poly(value))
    return NotImplemented


def as_quotient(value) -> RegularQuotient:
    out = _as_quotient(value)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as a regular quotient")
    return out


# -- change of variables ------------------------------------------------------------


def star_transform(f: RegularPolynomial, q) -> Quaternion:
    """T_f(q) = f^c(q)^{-1} q f^c(q); maps every sphere x+yS to itself.

    T_f relates the regular quotient to the pointwise one, is the identity on
    the reals, and is inverted by the transform of f^c.
    """
    q = as_quaternion(q)
    fc = f.conjugate()
    v = fc.evaluate(q)
    if v.norm() < POLE_EPS * (1.0 + fc.coefficient_norm_sum()):
        raise PoleError(f"conjugate denominator vanishes at {q}")
    return v.inverse() * q * v


def star_transform_inverse(f: RegularPolynomial, q) -> Quaternion:
    return star_transform(f.conjugate(), q)


# -- zero sets -------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroEntry:
    """One component of a symmetrization zero set: x + y*S (a point when y == 0)."""

    x: float
    y: float
    multiplicity: int

    @property
    def is_real_point(self) -> bool:
        return self.y == 0.0


@dataclass(frozen=True)
class SphereZeroSet:
    """Spheres and real points where a symmetrization vanishes."""

    entries: tuple

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def durand_kerner(coeffs, max_iter: int = 500, tol: float = 1e-12):
    """All complex roots of sum_n coeffs[n] z^n by simultaneous iteration.

    Robustness beats speed here: degrees stay small, so the quadratic
    per-sweep cost is irrelevant.  Raises NonConvergence when a residual
    stays above ``tol`` (scaled by the coefficient size).
    """
    c = [complex(v) for v in coeffs]
    while c and abs(c[-1]) == 0.0:
        c.pop()
    n = len(c) - 1
    if n <= 0:
        return []
    lead = c[-1]
    monic = [v / lead for v in c]
    if n == 1:
        return [-monic[0]]
    radius = 1.0 + max(abs(v) for v in monic[:-1])
    seed = 0.4 + 0.9j
    roots = [max(1.0, radius) * seed ** (k + 1) / abs(seed) ** (k + 1) * (0.95 ** k)
             for k in range(n)]

    def value(z):
        acc = 0j
        for v in reversed(monic):
            acc = acc * z + v
        return acc

    for _ in range(max_iter):
        shift = 0.0
        new_roots = list(roots)
        for k in range(n):
            denom = 1 + 0j
            for l in range(n):
                if l != k:
                    denom *= roots[k] - roots[l]
            if denom == 0:
                denom = 1e-300
            step = value(roots[k]) / denom
            new_roots[k] = roots[k] - step
            shift = max(shift, abs(step))
        roots = new_roots
        if shift < 1e-14 * (1.0 + max(abs(z) for z in roots)):
            break
    scale = 1.0 + sum(abs(v) for v in monic)
    for z in roots:
        if abs(value(z)) > tol * scale:
            raise NonConvergence(
                f"root iteration stalled with residual {abs(value(z)):g} at {z}")
    return roots


def _cluster(roots, tol: float):
    """Greedy clustering of complex roots within an absolute-ish tolerance."""
    remaining = sorted(roots, key=lambda z: (z.real, z.imag))
    clusters = []
    for z in remaining:
        for group in clusters:
            if abs(z - group[0]) <= tol * (1.0 + abs(z)):
                group.append(z)
                break
        else:
            clusters.append([z])
    return clusters


def _zero_set_of_real_polynomial(sym: RegularPolynomial,
                                 cluster_tol: float = 1e-6) -> SphereZeroSet:
    if sym.is_zero:
        raise ValueError("the zero polynomial vanishes everywhere")
    if sym.degree == 0:
        return SphereZeroSet(())
    roots = durand_kerner(sym.real_coefficients())
    entries = []
    for group in _cluster(roots, cluster_tol):
        center = sum(group) / len(group)
        if abs(center.imag) <= cluster_tol * (1.0 + abs(center)):
            entries.append(ZeroEntry(center.real, 0.0, len(group)))
        elif center.imag > 0.0:
            entries.append(ZeroEntry(center.real, center.imag, len(group)))
        # lower-halfplane clusters mirror the upper ones and are dropped
    entries.sort(key=lambda e: (e.x, e.y))
    return SphereZeroSet(tuple(entries))


def sphere_zero_set(f: RegularPolynomial, cluster_tol: float = 1e-6) -> SphereZeroSet:
    """Spheres x+yS (and real points) on which f has a zero.

    These are exactly the zeros of the symmetrization f^s, found as
    complex-polynomial roots on one slice; conjugate pairs collapse to one
    sphere entry, with multiplicities counted in f^s.
    """
    if f.is_zero:
        raise ValueError("the zero polynomial vanishes everywhere")
    return _zero_set_of_real_polynomial(f.symmetrization(), cluster_tol)


def zeros_on_sphere(f: RegularPolynomial, x: float, y: float, tol: float = 1e-6):
    """Zeros of f on the sphere x + y*S.

    Writing f(x+yI) = b + I c with b, c independent of I, either c != 0 and
    the unique candidate is I = -b c^{-1} (a zero iff that is a unit
    imaginary), or b = c = 0 and the whole sphere vanishes.  Returns
    ``(is_spherical, zeros)``.
    """
    scale = 1.0 + f.coefficient_norm_sum()
    if abs(y) <= 1e-12:
        v = f.evaluate(Quaternion(x))
        return (False, [Quaternion(x)] if v.norm() <= tol * scale else [])
    z = complex(x, y)
    b = ZERO
    c = ZERO
    zn = 1 + 0j
    for a in f.coeffs:
        b = b + a * zn.real
        c = c + a * zn.imag
        zn *= z
    if c.norm() <= 1e-9 * scale:
        return (b.norm() <= 1e-9 * scale, [])
    axis = -(b * c.inverse())
    if abs(axis.w) > tol or abs(axis.norm() - 1.0) > tol:
        return (False, [])
    im = axis.imag()
    unit = im / im.norm()
    zero = Quaternion(x) + unit * y
    if f.evaluate(zero).norm() > tol * scale:
        return (False, [])
    return (False, [zero])
