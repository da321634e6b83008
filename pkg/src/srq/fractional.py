"""2x2 quaternionic matrices and regular fractional transformations.

The matrix [[a, c], [b, d]] acts through the regular quotient
(qc+d)^{-*} * (qa+b); with this layout composition of the right action on
functions matches ordinary matrix multiplication.  The module also houses the
Dieudonne determinant, membership in the indefinite unitary group that fixes
diag(1, -1), the two group actions on quotients, the left/right factor swap,
and normal forms of the self-maps of the unit ball.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (DegenerateComposite, DegenerateSwap, NotHermitian,
                     NotSp11, OutsideBall, PoleError, SingularMatrix)
from .quaternion import ONE, ZERO, Quaternion, as_quaternion
from .rational import RegularQuotient, as_quotient
from .series import RegularPolynomial

_SINGULAR_EPS = 1e-12


class QuaternionMatrix2:
    """Quaternionic 2x2 matrix with rows (a, c) and (b, d)."""

    __slots__ = ("a", "c", "b", "d")

    def __init__(self, a, c, b, d):
        object.__setattr__(self, "a", as_quaternion(a))
        object.__setattr__(self, "c", as_quaternion(c))
        object.__setattr__(self, "b", as_quaternion(b))
        object.__setattr__(self, "d", as_quaternion(d))

    def __setattr__(self, name, value):
        raise AttributeError("QuaternionMatrix2 is immutable")

    @classmethod
    def identity(cls) -> "QuaternionMatrix2":
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def from_json(cls, obj) -> "QuaternionMatrix2":
        return cls(Quaternion.from_json(obj["a"]), Quaternion.from_json(obj["c"]),
                   Quaternion.from_json(obj["b"]), Quaternion.from_json(obj["d"]))

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "c": self.c.to_json(),
                "b": self.b.to_json(), "d": self.d.to_json()}

    def __mul__(self, other):
        if not isinstance(other, QuaternionMatrix2):
            return NotImplemented
        return QuaternionMatrix2(
            self.a * other.a + self.c * other.b,
            self.a * other.c + self.c * other.d,
            self.b * other.a + self.d * other.b,
            self.b * other.c + self.d * other.d)

    def scale(self, t: float) -> "QuaternionMatrix2":
        return QuaternionMatrix2(self.a * t, self.c * t, self.b * t, self.d * t)

    def conj(self) -> "QuaternionMatrix2":
        """Entrywise quaternion conjugation."""
        return QuaternionMatrix2(self.a.conjugate(), self.c.conjugate(),
                                 self.b.conjugate(), self.d.conjugate())

    def transpose(self) -> "QuaternionMatrix2":
        return QuaternionMatrix2(self.a, self.b, self.c, self.d)

    def conj_transpose(self) -> "QuaternionMatrix2":
        return self.conj().transpose()

    def entry_scale(self) -> float:
        return max(self.a.norm(), self.b.norm(), self.c.norm(), self.d.norm())

    def isclose(self, other: "QuaternionMatrix2", tol: float) -> bool:
        return ((self.a - other.a).norm() <= tol and (self.c - other.c).norm() <= tol
                and (self.b - other.b).norm() <= tol and (self.d - other.d).norm() <= tol)

    def dieudonne_det(self) -> float:
        """The multiplicative nonnegative-real determinant.

        |a| |d - b a^{-1} c| when a != 0, else |b||c|; agrees with the square
        root of the determinant of the 4x4 complex adjoint matrix.
        """
        scale = self.entry_scale()
        if self.a.norm() > 1e-14 * (1.0 + scale):
            return self.a.norm() * (self.d - self.b * self.a.inverse() * self.c).norm()
        return self.b.norm() * self.c.norm()

    def is_sp11(self, tol: float = 1e-9) -> bool:
        """Whether conj-transpose * diag(1,-1) * self equals diag(1,-1) entrywise."""
        h = QuaternionMatrix2(ONE, ZERO, ZERO, -ONE)
        m = self.conj_transpose() * (h * self)
        return m.isclose(h, tol)

    def __repr__(self):
        return (f"QuaternionMatrix2(a={self.a!s}, c={self.c!s}, "
                f"b={self.b!s}, d={self.d!s})")


@dataclass(frozen=True)
class MoebiusNormalForm:
    """The (zero, phase) pair identifying a regular self-map of the unit ball."""

    q0: Quaternion
    u: Quaternion


def _require_invertible(A: QuaternionMatrix2):
    if A.dieudonne_det() <= _SINGULAR_EPS * (1.0 + A.entry_scale()) ** 2:
        raise SingularMatrix(f"matrix has vanishing Dieudonne determinant: {A!r}")


def regular_fractional(A: QuaternionMatrix2) -> RegularQuotient:
    """The regular fractional transformation (qc+d)^{-*} * (qa+b)."""
    _require_invertible(A)
    den = RegularPolynomial([A.d, A.c])
    num = RegularPolynomial([A.b, A.a])
    return RegularQuotient(den, num, "left")


def classical_fractional(A: QuaternionMatrix2, q) -> Quaternion:
    """Pointwise classical value (qc+d)^{-1} (qa+b)."""
    q = as_quaternion(q)
    den = q * A.c + A.d
    if den.norm() < _SINGULAR_EPS * (1.0 + A.entry_scale()) * (1.0 + q.norm()):
        raise PoleError(f"classical denominator vanishes at {q}")
    return den.inverse() * (q * A.a + A.b)


def generator(kind: str, param=None) -> QuaternionMatrix2:
    """The four classical generators: translation, unit rotation, dilation, inversion."""
    if kind == "translation":
        return QuaternionMatrix2(ONE, ZERO, as_quaternion(param), ONE)
    if kind == "rotation":
        a = as_quaternion(param)
        if abs(a.norm() - 1.0) > 1e-9:
            raise ValueError(f"rotation factor must be unit, got |a| = {a.norm():g}")
        return QuaternionMatrix2(a, ZERO, ZERO, ONE)
    if kind == "dilation":
        r = float(param)
        if r <= 0.0:
            raise ValueError("dilation factor must be a positive real")
        return QuaternionMatrix2(Quaternion(r), ZERO, ZERO, ONE)
    if kind == "inversion":
        return QuaternionMatrix2(ZERO, ONE, ONE, ZERO)
    raise ValueError(f"unknown generator kind {kind!r}")


# -- the two actions ---------------------------------------------------------------


def right_action(f, A: QuaternionMatrix2) -> RegularQuotient:
    """f.A = (f c + d)^{-*} * (f a + b).

    On a left quotient F^{-*}*G the composite is again a left quotient with
    den = G*c + F*d and num = G*a + F*b, so no degree is wasted; other inputs
    go through generic ring arithmetic.
    """
    _require_invertible(A)
    f = as_quotient(f) if not isinstance(f, RegularQuotient) else f
    if f.is_pair and f.side == "left":
        den = f.num * A.c + f.den * A.d
        num = f.num * A.a + f.den * A.b
        if den.is_zero:
            raise DegenerateComposite("composite denominator is identically zero")
        return RegularQuotient(den, num, "left")
    den = f * A.c + A.d
    num = f * A.a + A.b
    if den.conum.is_zero:
        raise DegenerateComposite("composite denominator is identically zero")
    return den.reciprocal() * num

def left_action(A: QuaternionMatrix2, f) -> RegularQuotient:
    """The left group action (a*f + b) * (c*f + d)^{-*}.

    The formula entries are read from the *transpose* of the acting matrix;
    with this labelling the map composes as a genuine left action, Hermitian
    matrices act the same way from either side (up to their own transpose),
    and the ball-preserving subgroup keeps self-maps inside the ball.  On a
    right quotient G*H^{-*} the result stays a right quotient with
    num = a*G + b*H and den = c*G + d*H.
    """
    _require_invertible(A)
    A = A.transpose()
    if isinstance(f, RegularPolynomial) or isinstance(f, (int, float, Quaternion)):
        f = RegularQuotient(RegularPolynomial([ONE]), f, "right")
    if f.is_pair and f.side == "right":
        num = A.a * f.num + A.b * f.den
        den = A.c * f.num + A.d * f.den
        if den.is_zero:
            raise DegenerateComposite("composite denominator is identically zero")
        return RegularQuotient(den, num, "right")
    num = A.a * f + A.b
    den = A.c * f + A.d
    if den.conum.is_zero:
        raise DegenerateComposite("composite denominator is identically zero")
    return num * den.reciprocal()


def hermitian_coincidence_check(f, A: QuaternionMatrix2, *, points=None,
                                tol: float = 1e-10) -> bool:
    """For Hermitian A (real diagonal, c = conj(b)) the two actions coincide.

    Evaluates both composites on a fixed sample grid in the unit ball and
    reports whether they agree pointwise.
    """
    scale = 1.0 + A.entry_scale()
    if (A.a.imag_norm() > 1e-9 * scale or A.d.imag_norm() > 1e-9 * scale
            or (A.c - A.b.conjugate()).norm() > 1e-9 * scale):
        raise NotHermitian(f"matrix is not Hermitian: {A!r}")
    r = right_action(f, A)
    l = left_action(A.transpose(), f)
    if points is None:
        points = _default_grid()
    for q in points:
        try:
            rv = r.evaluate(q)
            lv = l.evaluate(q)
        except PoleError:
            continue
        if (rv - lv).norm() > tol * (1.0 + rv.norm()):
            return False
    return True


def _default_grid():
    import random

    rng = random.Random("hermitian-grid")
    points = []
    while len(points) < 50:
        q = Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1),
                       rng.uniform(-1, 1), rng.uniform(-1, 1))
        if q.norm() < 0.85:
            points.append(q)
    return points


def left_right_convert(A: QuaternionMatrix2) -> QuaternionMatrix2:
    """A matrix C whose left action on the identity equals (qc+d)^{-*}*(qa+b).

    With c = 0 the transformation is affine.  Otherwise normalize c to 1,
    write the denominator as q - p, and swap factors:
    (q - conj(p))*(q alpha + beta) = (q gamma + delta)*(q - p~) with p~ on the
    sphere of p, solved in closed form through p~^2 = 2 Re(p) p~ - |p|^2.
    """
    _require_invertible(A)
    scale = 1.0 + A.entry_scale()
    if A.c.norm() <= _SINGULAR_EPS * scale:
        dinv = A.d.inverse()
        return QuaternionMatrix2(dinv * A.a, dinv * A.b, ZERO, ONE)
    cinv = A.c.inverse()
    alpha = cinv * A.a
    beta = cinv * A.b
    p = -(cinv * A.d)
    pbar = p.conjugate()
    lead = beta - pbar * alpha + (2.0 * p.w) * alpha
    if lead.norm() <= _SINGULAR_EPS * (1.0 + alpha.norm() + beta.norm()) * (1.0 + p.norm()):
        raise DegenerateSwap("factor swap hit a singular linear solve")
    ptilde = lead.inverse() * (pbar * beta + p.norm_sq() * alpha)
    delta = beta - pbar * alpha + alpha * ptilde
    return QuaternionMatrix2(alpha, delta, ONE, -ptilde.conjugate())


# -- normal forms of ball self-maps ---------------------------------------------------


def from_normal_form(q0, u) -> QuaternionMatrix2:
    """The normalized matrix of (1 - q conj(q0))^{-*} * (q - q0) u.

    The raw matrix is scaled by (1 - |q0|^2)^{-1/2}, which lands it exactly on
    the defining identity of the indefinite unitary group.
    """
    q0 = as_quaternion(q0)
    u = as_quaternion(u)
    if q0.norm() >= 1.0:
        raise OutsideBall(f"|q0| = {q0.norm():g} is not inside the unit ball")
    if abs(u.norm() - 1.0) > 1e-9:
        raise ValueError(f"phase must be unit, got |u| = {u.norm():g}")
    lam = 1.0 / (1.0 - q0.norm_sq()) ** 0.5
    return QuaternionMatrix2(u * lam, -q0.conjugate() * lam,
                             -(q0 * u) * lam, Quaternion(lam))


def normal_form(A: QuaternionMatrix2, tol: float = 1e-9) -> MoebiusNormalForm:
    """Recover the unique (q0, u) with F_A = (1 - q conj(q0))^{-*} * (q - q0) u.

    q0 is the unique zero of F_A in the ball.  The numerator qa+b vanishes at
    w = -b a^{-1}; pulling w back through the change of variables of the
    denominator conjugate gives q0 = f(w)^{-1} w f(w) with f = qc+d.  The
    phase then comes from F_A(0) = -q0 u, or from a real probe point when q0
    is at the origin.
    """
    if not A.is_sp11(tol):
        raise NotSp11("matrix does not satisfy the defining identity")
    # |a|^2 = 1 + |b|^2 >= 1 for these matrices, so a is invertible
    w = -(A.b * A.a.inverse())
    fw = w * A.c + A.d
    if fw.norm() < _SINGULAR_EPS * (1.0 + A.entry_scale()):
        raise NotSp11("denominator vanishes inside the ball")
    q0 = fw.inverse() * w * fw
    if q0.norm() >= 1.0:
        raise NotSp11(f"recovered zero |q0| = {q0.norm():g} escapes the ball")
    frac = regular_fractional(A)
    if q0.norm() > 1e-9:
        u = -(q0.inverse() * frac.evaluate(ZERO))
    else:
        t = 0.5
        m = (ONE - q0.conjugate() * t).inverse() * (Quaternion(t) - q0)
        u = m.inverse() * frac.evaluate(Quaternion(t))
    if abs(u.norm() - 1.0) > 1e-6:
        raise NotSp11(f"recovered phase is not unit: |u| = {u.norm():g}")
    return MoebiusNormalForm(q0, u / u.norm())
