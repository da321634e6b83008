"""Hyperbolic geometry of the quaternionic unit ball.

The distance here is the one preserved by the classical Moebius self-maps of
the ball.  Its regular analogs factor through a pointwise Moebius map and a
twist of the ball; the twist moves points, which is exactly why the regular
maps fail to be isometries, and their two directional multipliers at the
center have different moduli, which is why they fail to be conformal.
"""

from __future__ import annotations

import math

from .errors import CoincidentPoints, DegenerateCenter, OutsideBall, RealPoint
from .quaternion import ONE, Quaternion, as_quaternion
from .rational import RegularQuotient
from .series import RegularPolynomial, SphericalExpansion

#: Points with |q| beyond 1 - BOUNDARY_EPS are rejected, not extrapolated.
BOUNDARY_EPS = 1e-12


def _in_ball(q, name: str) -> Quaternion:
    q = as_quaternion(q)
    if q.norm() > 1.0 - BOUNDARY_EPS:
        raise OutsideBall(f"{name} = {q} is not inside the open unit ball")
    return q


def pseudo_distance_sq(q1, q2) -> float:
    """|q1 - q2|^2 / |1 - q1 conj(q2)|^2, the squared ratio inside the distance."""
    q1 = _in_ball(q1, "q1")
    q2 = _in_ball(q2, "q2")
    return (q1 - q2).norm_sq() / (ONE - q1 * q2.conjugate()).norm_sq()


def poincare_distance(q1, q2) -> float:
    """(1/2) log of the cross-ratio bound; symmetric, zero iff q1 == q2."""
    t = math.sqrt(pseudo_distance_sq(q1, q2))
    # |1 - q1 conj(q2)|^2 - |q1 - q2|^2 = (1 - |q1|^2)(1 - |q2|^2) > 0, so t < 1
    return math.atanh(t)


def classical_moebius(q0, u, v, q) -> Quaternion:
    """v^{-1} (1 - q conj(q0))^{-1} (q - q0) u, an isometry of the ball."""
    q0 = _in_ball(q0, "q0")
    q = _in_ball(q, "q")
    u = as_quaternion(u)
    v = as_quaternion(v)
    for name, w in (("u", u), ("v", v)):
        if abs(w.norm() - 1.0) > 1e-9:
            raise ValueError(f"{name} must be unit, got modulus {w.norm():g}")
    return v.inverse() * ((ONE - q * q0.conjugate()).inverse() * ((q - q0) * u))


def _moebius_to_zero(q0: Quaternion, q: Quaternion) -> Quaternion:
    return (ONE - q * q0.conjugate()).inverse() * (q - q0)


def _moebius_from_zero(q0: Quaternion, p: Quaternion) -> Quaternion:
    return (p + q0) * (ONE + q0.conjugate() * p).inverse()


def regular_moebius_map(q0, u=ONE, side: str = "left") -> RegularQuotient:
    """The regular quotient (1 - q conj(q0))^{-*} * (q - q0) u.

    The same polynomial pair also represents the right-quotient form
    (q - q0) u' * (1 - conj(q0) q)^{-*}; both evaluate identically.
    """
    q0 = as_quaternion(q0)
    u = as_quaternion(u)
    if q0.norm() >= 1.0:
        raise OutsideBall(f"|q0| = {q0.norm():g} is not inside the unit ball")
    if abs(u.norm() - 1.0) > 1e-9:
        raise ValueError(f"u must be unit, got modulus {u.norm():g}")
    den = RegularPolynomial([ONE, -q0.conjugate()])
    num = RegularPolynomial([-(q0 * u), u])
    return RegularQuotient(den, num, side)


def regular_moebius(q0, u, q) -> Quaternion:
    q = _in_ball(q, "q")
    return regular_moebius_map(q0, u).evaluate(q)


def twist_map(q0, q) -> Quaternion:
    """T(q) = (1 - q q0)^{-1} q (1 - q q0); relates regular and classical maps."""
    q0 = _in_ball(q0, "q0")
    q = _in_ball(q, "q")
    m = ONE - q * q0
    return m.inverse() * q * m


def twist_map_inverse(q0, q) -> Quaternion:
    q0 = _in_ball(q0, "q0")
    q = _in_ball(q, "q")
    m = ONE - q * q0.conjugate()
    return m.inverse() * q * m


def moebius_expansion_coefficients(q0, n_max: int) -> SphericalExpansion:
    """Closed-form spherical coefficients of the regular self-map centered at q0.

    For n >= 1 (everything commutes inside the slice of q0, so the division
    is unambiguous):

        A_{2n-1} = conj(q0)^{2n-2} / ((1-|q0|^2)^{n-1} (1-conj(q0)^2)^n)
        A_{2n}   = conj(q0)^{2n-1} / ((1-|q0|^2)^n     (1-conj(q0)^2)^n)

    and A_0 = 0.  Returned with the same coefficient layout as the
    remainder-based expansion: A_0 .. A_{2*n_max+1}.
    """
    q0 = as_quaternion(q0)
    if q0.norm() >= 1.0:
        raise OutsideBall(f"|q0| = {q0.norm():g} is not inside the unit ball")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    sc = q0.slice_decompose()
    if sc.y0 == 0.0 and n_max > 1:
        raise DegenerateCenter(f"center {q0} is real: the sphere through it degenerates")
    zbar = complex(sc.x0, -sc.y0)
    one_minus_sq = 1.0 - (sc.x0 * sc.x0 + sc.y0 * sc.y0)
    one_minus_zbar2 = 1.0 - zbar * zbar

    def lift(w: complex) -> Quaternion:
        return Quaternion(w.real) + sc.I * w.imag

    coeffs = [Quaternion()]
    for n in range(1, n_max + 2):
        odd = zbar ** (2 * n - 2) / (one_minus_sq ** (n - 1) * one_minus_zbar2 ** n)
        coeffs.append(lift(odd))
        if n <= n_max:
            even = zbar ** (2 * n - 1) / (one_minus_sq ** n * one_minus_zbar2 ** n)
            coeffs.append(lift(even))
    return SphericalExpansion(q0, coeffs)


def conformality_defect(q0) -> tuple:
    """Moduli of the two directional multipliers of the regular self-map at q0.

    Returns (|slice multiplier|, |orthogonal multiplier|) =
    ((1-|q0|^2)^{-1}, |1-conj(q0)^2|^{-1}).  The first is strictly larger for
    every non-real center, so the map is not conformal there.
    """
    q0 = _in_ball(q0, "q0")
    if q0.imag_norm() <= 1e-12 * (1.0 + q0.norm()):
        raise RealPoint(f"conformality defect is undefined at the real point {q0}")
    qc = q0.conjugate()
    return (1.0 / (1.0 - q0.norm_sq()), 1.0 / (ONE - qc * qc).norm())


class GeodesicSegment:
    """The non-Euclidean segment between two points of the ball.

    Built by transporting the first endpoint to the origin with a classical
    isometry, walking the straight diameter, and transporting back; distance
    along the curve is additive.
    """

    __slots__ = ("q1", "q2", "_image")

    def __init__(self, q1: Quaternion, q2: Quaternion):
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "q2", q2)
        object.__setattr__(self, "_image", _moebius_to_zero(q1, q2))

    def __setattr__(self, name, value):
        raise AttributeError("GeodesicSegment is immutable")

    def point(self, t: float) -> Quaternion:
        if not 0.0 <= t <= 1.0:
            raise ValueError("parameter must lie in [0, 1]")
        return _moebius_from_zero(self.q1, self._image * t)

    __call__ = point

    def length(self) -> float:
        return poincare_distance(self.q1, self.q2)


def geodesic(q1, q2) -> GeodesicSegment:
    q1 = _in_ball(q1, "q1")
    q2 = _in_ball(q2, "q2")
    if (q1 - q2).norm() <= 1e-13:
        raise CoincidentPoints(f"geodesic endpoints coincide at {q1}")
    return GeodesicSegment(q1, q2)
