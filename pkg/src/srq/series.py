"""Regular polynomials under the star product.

A regular polynomial is a finite series sum_n q^n a_n with quaternionic
coefficients on the *right*.  The star product convolves coefficients, which
restricts the noncommutative product of regular functions to polynomials.
Together with regular conjugation, symmetrization, remainders, and the
spherical expansion this is the algebraic core of the package.
"""

from __future__ import annotations

from .errors import DegenerateCenter, RealPoint
from .quaternion import ONE, ZERO, Quaternion, as_quaternion


class RegularPolynomial:
    """Finite sequence of right coefficients (a_0, ..., a_N) for sum q^n a_n.

    Trailing zero coefficients are stripped so the degree is normalized; the
    zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        lifted = [as_quaternion(c) for c in coeffs]
        while lifted and lifted[-1] == ZERO:
            lifted.pop()
        object.__setattr__(self, "coeffs", tuple(lifted))

    def __setattr__(self, name, value):
        raise AttributeError("RegularPolynomial is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "RegularPolynomial":
        return cls([as_quaternion(c)])

    @classmethod
    def identity(cls) -> "RegularPolynomial":
        """The polynomial q."""
        return cls([ZERO, ONE])

    @classmethod
    def from_json(cls, obj) -> "RegularPolynomial":
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise ValueError(f'polynomial JSON must look like {{"coeffs": [[w,x,y,z], ...]}}, got {obj!r}')
        return cls([Quaternion.from_json(c) for c in obj["coeffs"]])

    def to_json(self) -> dict:
        return {"coeffs": [c.to_json() for c in self.coeffs]}

    # -- basic structure -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, n: int) -> Quaternion:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else ZERO

    def coefficient_norm_sum(self) -> float:
        """sum |a_n|; bounds |f| on the closed unit ball."""
        return sum(c.norm() for c in self.coeffs)

    def is_real(self, tol: float = 0.0) -> bool:
        return all(c.imag_norm() <= tol for c in self.coeffs)

    def real_coefficients(self, tol: float = 1e-9) -> list:
        scale = 1.0 + self.coefficient_norm_sum()
        out = []
        for c in self.coeffs:
            if c.imag_norm() > tol * scale:
                raise ValueError(f"coefficient {c} is not real within tolerance")
            out.append(c.w)
        return out

    # -- evaluation -------------------------------------------------------------

    def evaluate(self, q) -> Quaternion:
        """Horner evaluation a_0 + q(a_1 + q(a_2 + ...)), q multiplying from the left."""
        q = as_quaternion(q)
        if not self.coeffs:
            return ZERO
        acc = self.coeffs[-1]
        for n in range(len(self.coeffs) - 2, -1, -1):
            acc = q * acc + self.coeffs[n]
        return acc

    __call__ = evaluate

    def evaluate_complex(self, z: complex) -> complex:
        """Horner evaluation on a slice; requires real coefficients."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = z * acc + c.w
        return acc

    # -- vector-space operations --------------------------------------------------

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return RegularPolynomial(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return RegularPolynomial(
            [self.coefficient(k) - other.coefficient(k) for k in range(n)])

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return RegularPolynomial([-c for c in self.coeffs])

    # -- star product ----------------------------------------------------------------

    def __mul__(self, other):
        """Star product: coefficient convolution c_n = sum_k a_k b_{n-k}."""
        if isinstance(other, (int, float, Quaternion)):
            c = as_quaternion(other)
            return RegularPolynomial([a * c for a in self.coeffs])
        if isinstance(other, RegularPolynomial):
            if self.is_zero or other.is_zero:
                return RegularPolynomial()
            out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for k, a in enumerate(self.coeffs):
                for l, b in enumerate(other.coeffs):
                    out[k + l] = out[k + l] + a * b
            return RegularPolynomial(out)
        return NotImplemented

    def __rmul__(self, other):
        # constant * f multiplies every coefficient on the left
        if isinstance(other, (int, float, Quaternion)):
            c = as_quaternion(other)
            return RegularPolynomial([c * a for a in self.coeffs])
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = RegularPolynomial([ONE])
        for _ in range(n):
            out = out * self
        return out

    # -- conjugation ------------------------------------------------------------------

    def conjugate(self) -> "RegularPolynomial":
        """Regular conjugate f^c: the same powers with conjugated coefficients."""
        return RegularPolynomial([c.conjugate() for c in self.coeffs])

    def symmetrization(self, tol: float = 1e-9) -> "RegularPolynomial":
        """f^s = f * f^c, which has real coefficients.

        The floating-point convolution leaves an imaginary residue of rounding
        size; it is checked against ``tol`` (scale-aware) and then dropped.
        """
        prod = self * self.conjugate()
        scale = 1.0 + prod.coefficient_norm_sum()
        worst = max((c.imag_norm() for c in prod.coeffs), default=0.0)
        if worst > tol * scale:
            raise ValueError(f"symmetrization has imaginary residue {worst:g}")
        return RegularPolynomial([Quaternion(c.w) for c in prod.coeffs])

    # -- calculus -----------------------------------------------------------------------

    def remainder(self, q0) -> "RegularPolynomial":
        """The unique R with f(q) - f(q0) = (q - q0) * R(q).

        Computed top-down from the leading coefficient, b_{n-1} = c_n + q0 b_n,
        with no division; the degree drops by one.
        """
        q0 = as_quaternion(q0)
        if self.degree <= 0:
            return RegularPolynomial()
        b = [ZERO] * self.degree
        b[-1] = self.coeffs[-1]
        for n in range(self.degree - 1, 0, -1):
            b[n - 1] = self.coeffs[n] + q0 * b[n]
        return RegularPolynomial(b)

    def cullen_derivative(self) -> "RegularPolynomial":
        """Termwise derivative sum q^{n-1} n a_n."""
        return RegularPolynomial(
            [self.coeffs[n] * float(n) for n in range(1, len(self.coeffs))])

    def spherical_expansion(self, q0, n_max: int) -> "SphericalExpansion":
        """Expansion around the sphere through q0 by iterated remainders.

        Returns coefficients A_0 .. A_{2*n_max+1}, where A_{2n} is the n-fold
        double remainder evaluated at q0 and A_{2n+1} the extra remainder
        evaluated at conj(q0).  A real center carries no sphere: only
        ``n_max == 0`` is allowed there (giving the single coefficient A_0);
        odd coefficients are refused with :class:`DegenerateCenter` rather
        than silently returning a derivative limit.
        """
        q0 = as_quaternion(q0)
        if n_max < 0:
            raise ValueError("n_max must be >= 0")
        if q0.is_real():
            if n_max > 0:
                raise DegenerateCenter(
                    f"center {q0} is real: the sphere through it degenerates")
            return SphericalExpansion(q0, [self.evaluate(q0)])
        qc = q0.conjugate()
        coeffs = []
        g = self
        for _ in range(n_max + 1):
            coeffs.append(g.evaluate(q0))
            h = g.remainder(q0)
            coeffs.append(h.evaluate(qc))
            g = h.remainder(qc)
        return SphericalExpansion(q0, coeffs)

    # -- misc -----------------------------------------------------------------------------

    def isclose(self, other: "RegularPolynomial", rel_tol: float = 1e-12,
                abs_tol: float = 0.0) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        scale = max(self.coefficient_norm_sum(), other.coefficient_norm_sum())
        bound = max(rel_tol * scale, abs_tol)
        return all((self.coefficient(k) - other.coefficient(k)).norm() <= bound
                   for k in range(n))

    def __eq__(self, other):
        if isinstance(other, RegularPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RegularPolynomial({[str(c) for c in self.coeffs]})"


def _lift(value):
    if isinstance(value, RegularPolynomial):
        return value
    if isinstance(value, (int, float, Quaternion)):
        return RegularPolynomial([as_quaternion(value)])
    return NotImplemented


class SphericalExpansion:
    """Coefficients A_n of f(q) = sum_n [(q-x0)^2 + y0^2]^n [A_2n + (q-q0) A_2n+1].

    The bracket [(q-x0)^2 + y0^2] vanishes exactly on the sphere x0 + y0*S
    through the center, so partial sums converge inside the corresponding
    symmetric neighborhood; for a polynomial the sum is exact once enough
    coefficients are kept.
    """

    __slots__ = ("center", "coefficients", "x0", "y0")

    def __init__(self, center, coefficients):
        center = as_quaternion(center)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "coefficients", tuple(as_quaternion(c) for c in coefficients))
        sc = center.slice_decompose()
        object.__setattr__(self, "x0", sc.x0)
        object.__setattr__(self, "y0", sc.y0)

    def __setattr__(self, name, value):
        raise AttributeError("SphericalExpansion is immutable")

    def evaluate(self, q) -> Quaternion:
        q = as_quaternion(q)
        shifted = q - self.x0
        sphere = shifted * shifted + self.y0 * self.y0
        power = ONE
        total = ZERO
        for n in range(0, len(self.coefficients), 2):
            bracket = self.coefficients[n]
            if n + 1 < len(self.coefficients):
                bracket = bracket + (q - self.center) * self.coefficients[n + 1]
            total = total + power * bracket
            power = power * sphere
        return total

    __call__ = evaluate

    def to_json(self) -> dict:
        return {"center": self.center.to_json(),
                "coefficients": [c.to_json() for c in self.coefficients]}

    def __repr__(self):
        return (f"SphericalExpansion(center={self.center!s}, "
                f"coefficients={[str(c) for c in self.coefficients]})")


def evaluate_any(f, q) -> Quaternion:
    """Evaluate a polynomial, quotient, expansion, or plain callable at q."""
    if hasattr(f, "evaluate"):
        return f.evaluate(q)
    return as_quaternion(f(as_quaternion(q)))


def spherical_derivative_at(f, q) -> Quaternion:
    """(2 Im q)^{-1} (f(q) - f(conj q)); undefined at real points."""
    q = as_quaternion(q)
    im = q.imag()
    if im.norm() <= 1e-12 * (1.0 + q.norm()):
        raise RealPoint(f"spherical derivative is undefined at the real point {q}")
    return (2.0 * im).inverse() * (evaluate_any(f, q) - evaluate_any(f, q.conjugate()))


def directional_derivative(f: RegularPolynomial, q0, v) -> Quaternion:
    """Derivative of f at q0 along v, as v*A_1 + (q0 v - v conj(q0))*A_2.

    A_1 and A_2 come from the spherical expansion at q0, so a real center
    raises :class:`DegenerateCenter`.
    """
    q0 = as_quaternion(q0)
    v = as_quaternion(v)
    if v == ZERO:
        return ZERO
    exp = f.spherical_expansion(q0, 1)
    a1, a2 = exp.coefficients[1], exp.coefficients[2]
    return v * a1 + (q0 * v - v * q0.conjugate()) * a2
