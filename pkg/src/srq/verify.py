"""Deterministic randomized verification of the package's analytic claims.

Every suite draws its randomness from streams derived from ``(seed, label)``
strings, so a rerun with the same seed reproduces identical reports
bit-for-bit.  Batches own independent streams and reports merge through
min/max reductions only, so batch evaluation order does not matter.

An inequality "margin" is always (right side) - (left side); a sample counts
as a violation only when the margin drops below ``-tol * (1 + |rhs|)``, which
keeps floating-point slack from either masking real violations or
manufacturing false ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import PoleError
from .fractional import QuaternionMatrix2, from_normal_form, left_action, right_action
from .geometry import regular_moebius_map
from .quaternion import ONE, Quaternion, as_quaternion
from .rational import RegularQuotient, as_quotient
from .series import RegularPolynomial, evaluate_any, spherical_derivative_at

DEFAULT_TOL = 1e-9
EQUALITY_TOL = 1e-8

SUITE_NAMES = ("schwarz-pick", "zero-case", "modulus-product",
               "reg-preservation", "slice-regularity")


# -- deterministic sampling ----------------------------------------------------


def stream(seed, label: str) -> random.Random:
    """An independent RNG stream for (seed, label); string seeding is stable."""
    return random.Random(f"{seed}:{label}")


def sample_ball(rng: random.Random, radius: float = 0.99) -> Quaternion:
    """Uniform point of the ball of the given radius, by rejection from the cube."""
    while True:
        q = Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1),
                       rng.uniform(-1, 1), rng.uniform(-1, 1))
        if q.norm() < radius:
            return q


def sample_unit(rng: random.Random) -> Quaternion:
    while True:
        q = Quaternion(rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        n = q.norm()
        if n > 1e-3:
            return q / n


def sample_unit_imaginary(rng: random.Random) -> Quaternion:
    while True:
        q = Quaternion(0.0, rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        n = q.norm()
        if n > 1e-3:
            return q / n


def random_self_map(seed, degree: int) -> RegularPolynomial:
    """A random polynomial self-map of the ball.

    Coefficients are rescaled so that sum |a_n| < 1 - 1e-6, which bounds |f|
    below 1 on the closed ball.  ``seed`` may be an integer or an existing
    stream; the same seed always yields the same coefficients.
    """
    rng = seed if isinstance(seed, random.Random) else stream(seed, "self-map")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    coeffs = [Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1),
                         rng.uniform(-1, 1), rng.uniform(-1, 1))
              for _ in range(degree + 1)]
    while coeffs[-1].norm() < 1e-2:
        coeffs[-1] = Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                rng.uniform(-1, 1), rng.uniform(-1, 1))
    total = sum(c.norm() for c in coeffs)
    target = (1.0 - 1e-6) * rng.uniform(0.35, 1.0)
    return RegularPolynomial([c * (target / total) for c in coeffs])


def random_sp11(rng: random.Random, max_radius: float = 0.9) -> QuaternionMatrix2:
    """A random matrix of the indefinite unitary group, via its normal form."""
    return from_normal_form(sample_ball(rng, max_radius), sample_unit(rng))


# -- reports ----------------------------------------------------------------------


@dataclass
class VerificationReport:
    """Outcome of one verification suite run."""

    suite: str
    seed: int
    samples: int
    passed: bool
    worst_margin: float
    witness: dict
    properties: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "samples": self.samples,
                "pass": self.passed, "worst_margin": self.worst_margin,
                "witness": self.witness, "properties": self.properties}


class _Tracker:
    """Running minimum margin with its witness, plus a violation count."""

    def __init__(self, name: str, tol: float):
        self.name = name
        self.tol = tol
        self.worst = None
        self.worst_abs = 0.0
        self.violations = 0
        self.witness = {}
        self.count = 0

    def update(self, margin: float, rhs: float, witness: dict):
        self.count += 1
        self.worst_abs = max(self.worst_abs, abs(margin))
        if self.worst is None or margin < self.worst:
            self.worst = margin
            self.witness = dict(witness, property=self.name, margin=margin)
        if margin < -self.tol * (1.0 + abs(rhs)):
            self.violations += 1

    def absorb(self, summary: dict):
        """Merge a summary produced by another tracker with the same name."""
        self.count += summary["checked"]
        self.violations += summary["violations"]
        self.worst_abs = max(self.worst_abs, summary["max_abs_margin"])
        other = summary["worst_margin"]
        if other is not None and (self.worst is None or other < self.worst):
            self.worst = other
            self.witness = summary["witness"]

    def summary(self) -> dict:
        return {"worst_margin": self.worst,
                "max_abs_margin": self.worst_abs,
                "violations": self.violations,
                "checked": self.count,
                "witness": self.witness}


def _merge(suite: str, seed: int, total_samples: int, trackers, extra=None) -> VerificationReport:
    worst = None
    witness = {}
    passed = True
    properties = {}
    for t in trackers:
        properties[t.name] = t.summary()
        if t.violations:
            passed = False
        if t.worst is not None and (worst is None or t.worst < worst):
            worst = t.worst
            witness = t.witness
    if extra:
        for key, value in extra.items():
            properties[key] = value
            if isinstance(value, dict) and value.get("pass") is False:
                passed = False
    return VerificationReport(suite, seed, total_samples, passed,
                              0.0 if worst is None else worst, witness, properties)


def _merge_reports(suite: str, seed: int, total: int, reports, extra=None) -> VerificationReport:
    trackers = {}
    for rep in reports:
        for name, summary in rep.properties.items():
            agg = trackers.setdefault(name, _Tracker(name, 0.0))
            agg.absorb(summary)
    return _merge(suite, seed, total, trackers.values(), extra)


# -- single-input checks -------------------------------------------------------------


def check_schwarz_pick(f, q0, sample_count: int = 100, *, rng=None,
                       tol: float = DEFAULT_TOL, seed: int = 0) -> VerificationReport:
    """Check the three self-map inequalities for one map at one base point.

    With c = f(q0) and G = 1 - conj(c)*f, the three statements bound, at
    sampled q:

      (difference)   |(f - c) * G^{-*}|(q)   <=  |canonical self-map centered q0|(q)
      (remainder)    |R_{q0} f * G^{-*}|(q)  <=  |(1 - q conj(q0))^{-*}|(q)
      (derivative)   |(d_c f * G^{-*})(q0)|  <=  1 / (1 - |q0|^2)

    The derivative bound is a single number per call; the others are sampled.
    For a regular self-map in normal form the remainder and derivative bounds
    hold with equality, which callers can read off ``max_abs_margin``.
    """
    rng = rng or stream(seed, "schwarz-points")
    q0 = as_quaternion(q0)
    fq = f if isinstance(f, RegularQuotient) else as_quotient(f)
    c = fq.evaluate(q0)
    if c.norm() >= 1.0:
        raise ValueError(f"f(q0) = {c} escapes the ball; f is not a self-map")
    shifted = fq - c
    schur_inv = ((-c.conjugate()) * fq + ONE).reciprocal()
    lhs13 = shifted * schur_inv
    rhs13 = regular_moebius_map(q0)
    lhs14 = fq.remainder(q0) * schur_inv
    rhs14 = RegularQuotient(RegularPolynomial([ONE, -q0.conjugate()]),
                            RegularPolynomial([ONE]), "left")
    t13 = _Tracker("difference_bound", tol)
    t14 = _Tracker("remainder_bound", tol)
    t15 = _Tracker("derivative_bound", tol)
    for _ in range(sample_count):
        q = sample_ball(rng, 0.95)
        witness = {"q": q.to_json(), "q0": q0.to_json()}
        r13 = rhs13.evaluate(q).norm()
        t13.update(r13 - lhs13.evaluate(q).norm(), r13, witness)
        r14 = rhs14.evaluate(q).norm()
        t14.update(r14 - lhs14.evaluate(q).norm(), r14, witness)
    d15 = (fq.cullen_derivative() * schur_inv).evaluate(q0).norm()
    r15 = 1.0 / (1.0 - q0.norm_sq())
    t15.update(r15 - d15, r15, {"q0": q0.to_json()})
    return _merge("schwarz-pick", seed, sample_count, (t13, t14, t15))


def make_zero_case_map(seed, q0, degree: int = 2) -> RegularQuotient:
    """A random regular self-map of the ball vanishing at q0.

    Star-multiplies the canonical self-map centered at q0 (written in its
    right-quotient form, so the zero sits in the left factor) by a random
    self-map of the ball.
    """
    rng = seed if isinstance(seed, random.Random) else stream(seed, "zero-case-map")
    g = random_self_map(rng, degree)
    return regular_moebius_map(q0, side="right") * g


def check_zero_case(f, q0, sample_count: int = 100, *, rng=None,
                    tol: float = DEFAULT_TOL, seed: int = 0) -> VerificationReport:
    """Bounds for a self-map vanishing at q0.

    |M^{-*} * f| <= 1 on samples, |d_c f(q0)| <= 1/(1-|q0|^2), and for
    non-real q0 also |d_s f(q0)| <= 1/|1 - conj(q0)^2|.
    """
    rng = rng or stream(seed, "zero-case-points")
    q0 = as_quaternion(q0)
    fq = f if isinstance(f, RegularQuotient) else as_quotient(f)
    if fq.evaluate(q0).norm() > 1e-8:
        raise ValueError(f"f(q0) = {fq.evaluate(q0)} is not zero; precondition violated")
    ratio = regular_moebius_map(q0).reciprocal() * fq
    t1 = _Tracker("factor_bound", tol)
    for _ in range(sample_count):
        # the ratio carries a removable singularity on the sphere of q0;
        # resample the measure-zero hits instead of reporting them as poles
        for _ in range(10):
            q = sample_ball(rng, 0.95)
            try:
                value = ratio.evaluate(q)
                break
            except PoleError:
                continue
        else:
            raise PoleError("could not sample away from the sphere of q0")
        t1.update(1.0 - value.norm(), 1.0, {"q": q.to_json(), "q0": q0.to_json()})
    t2 = _Tracker("slice_derivative_bound", tol)
    r2 = 1.0 / (1.0 - q0.norm_sq())
    t2.update(r2 - fq.cullen_derivative().evaluate(q0).norm(), r2, {"q0": q0.to_json()})
    trackers = [t1, t2]
    if q0.imag_norm() > 1e-9:
        qc = q0.conjugate()
        t3 = _Tracker("spherical_derivative_bound", tol)
        r3 = 1.0 / (ONE - qc * qc).norm()
        t3.update(r3 - spherical_derivative_at(fq, q0).norm(), r3, {"q0": q0.to_json()})
        trackers.append(t3)
    return _merge("zero-case", seed, sample_count, trackers)


def check_modulus_product(h, f, g, sample_count: int = 100, *, rng=None,
                          tol: float = DEFAULT_TOL, seed: int = 0) -> VerificationReport:
    """If |f| <= |g| pointwise then |h*f| <= |h*g| pointwise.

    The hypothesis is verified on the sample set first; a hypothesis failure
    is an input error, not a reported violation.
    """
    rng = rng or stream(seed, "modulus-points")
    points = [sample_ball(rng, 0.95) for _ in range(sample_count)]
    for q in points:
        if f.evaluate(q).norm() > g.evaluate(q).norm() + 1e-12:
            raise ValueError(f"|f| > |g| at {q}; hypothesis violated on the sample set")
    hf = h * f
    hg = h * g
    t = _Tracker("modulus_product", tol)
    for q in points:
        rhs = hg.evaluate(q).norm()
        t.update(rhs - hf.evaluate(q).norm(), rhs, {"q": q.to_json()})
    return _merge("modulus-product", seed, sample_count, (t,))


def check_reg_preservation(f, A: QuaternionMatrix2, sample_count: int = 100, *,
                           rng=None, tol: float = DEFAULT_TOL,
                           seed: int = 0) -> VerificationReport:
    """Both actions of a ball-preserving matrix keep self-maps inside the ball.

    Also checks that the regular conjugate of f stays a self-map.
    """
    if not A.is_sp11(1e-9):
        raise ValueError("matrix does not preserve the ball; precondition violated")
    rng = rng or stream(seed, "preservation-points")
    moved_right = right_action(f, A)
    moved_left = left_action(A, f)
    conj = f.conjugate()
    t_r = _Tracker("right_action_in_ball", tol)
    t_l = _Tracker("left_action_in_ball", tol)
    t_c = _Tracker("conjugate_in_ball", tol)
    for _ in range(sample_count):
        q = sample_ball(rng, 0.99)
        witness = {"q": q.to_json()}
        t_r.update(1.0 - moved_right.evaluate(q).norm(), 1.0, witness)
        t_l.update(1.0 - moved_left.evaluate(q).norm(), 1.0, witness)
        t_c.update(1.0 - evaluate_any(conj, q).norm(), 1.0, witness)
    return _merge("reg-preservation", seed, sample_count, (t_r, t_l, t_c))


def slice_regularity_residual(f, x: float, y: float, I: Quaternion,
                              step: float = 1e-5) -> float:
    """Central finite-difference residual of (d/dx + I d/dy)/2 on the slice of I."""

    def at(xx, yy):
        return evaluate_any(f, Quaternion(xx) + I * yy)

    dx = (at(x + step, y) - at(x - step, y)) / (2.0 * step)
    dy = (at(x, y + step) - at(x, y - step)) / (2.0 * step)
    return (0.5 * (dx + I * dy)).norm()


def check_slice_regularity(f, sample_count: int = 100, *, rng=None,
                           tol: float = 1e-5, seed: int = 0) -> VerificationReport:
    """Finite-difference regularity test on random slices.

    Accepts polynomials, quotients, or arbitrary callables; a genuinely
    non-regular map (such as pointwise conjugation) fails with residual
    around one.
    """
    rng = rng or stream(seed, "slice-points")
    t = _Tracker("slice_regularity", 0.0)
    for _ in range(sample_count):
        x = rng.uniform(-0.7, 0.7)
        y = rng.uniform(0.05, 0.6)
        axis = sample_unit_imaginary(rng)
        residual = slice_regularity_residual(f, x, y, axis)
        t.update(tol - residual, tol, {"x": x, "y": y, "axis": axis.to_json()})
    return _merge("slice-regularity", seed, sample_count, (t,))


# -- suite drivers -----------------------------------------------------------------------


def run_schwarz_pick(seed: int, samples: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    points_per_center = 25
    centers_per_map = 2
    per_map = points_per_center * centers_per_map
    batches = max(1, (samples + per_map - 1) // per_map)
    reports = []
    eq_worst = 0.0
    eq_checked = 0
    total = 0
    for b in range(batches):
        rng = stream(seed, f"schwarz:{b}")
        is_moebius = (b % 4 == 3)
        if is_moebius:
            f = regular_moebius_map(sample_ball(rng, 0.7), sample_unit(rng))
        else:
            f = random_self_map(rng, rng.randint(1, 4))
        for _ in range(centers_per_map):
            q0 = sample_ball(rng, 0.8)
            rep = check_schwarz_pick(f, q0, points_per_center, rng=rng, tol=tol, seed=seed)
            reports.append(rep)
            total += points_per_center
            if is_moebius:
                eq_checked += 1
                eq_worst = max(eq_worst,
                               rep.properties["remainder_bound"]["max_abs_margin"],
                               rep.properties["derivative_bound"]["max_abs_margin"])
    extra = {"moebius_equality": {"max_abs_margin": eq_worst,
                                  "checked": eq_checked,
                                  "pass": eq_worst < EQUALITY_TOL}}
    return _merge_reports("schwarz-pick", seed, total, reports, extra)


def run_zero_case(seed: int, samples: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    per_batch = 50
    batches = max(1, (samples + per_batch - 1) // per_batch)
    reports = []
    total = 0
    for b in range(batches):
        rng = stream(seed, f"zero:{b}")
        while True:
            q0 = sample_ball(rng, 0.8)
            if q0.imag_norm() > 0.05:
                break
        if b % 3 == 2:
            f = regular_moebius_map(q0, side="right")
        else:
            f = make_zero_case_map(rng, q0, rng.randint(1, 3))
        reports.append(check_zero_case(f, q0, per_batch, rng=rng, tol=tol, seed=seed))
        total += per_batch
    return _merge_reports("zero-case", seed, total, reports)


def run_modulus_product(seed: int, samples: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    per_batch = 50
    batches = max(1, (samples + per_batch - 1) // per_batch)
    reports = []
    total = 0
    for b in range(batches):
        rng = stream(seed, f"modulus:{b}")
        h = RegularPolynomial([Quaternion(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                          rng.uniform(-1, 1), rng.uniform(-1, 1))
                               for _ in range(rng.randint(1, 4))])
        if h.is_zero:
            h = RegularPolynomial([ONE])
        g = random_self_map(rng, rng.randint(1, 3))
        factor = sample_unit(rng) * rng.uniform(0.0, 1.0)
        f = g * factor
        reports.append(check_modulus_product(h, f, g, per_batch, rng=rng, tol=tol, seed=seed))
        total += per_batch
    return _merge_reports("modulus-product", seed, total, reports)


def run_reg_preservation(seed: int, samples: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    per_batch = 50
    batches = max(1, (samples + per_batch - 1) // per_batch)
    reports = []
    total = 0
    for b in range(batches):
        rng = stream(seed, f"preserve:{b}")
        f = random_self_map(rng, rng.randint(0, 4))
        A = random_sp11(rng)
        reports.append(check_reg_preservation(f, A, per_batch, rng=rng, tol=tol, seed=seed))
        total += per_batch
    return _merge_reports("reg-preservation", seed, total, reports)


def run_slice_regularity(seed: int, samples: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    per_batch = 25
    batches = max(1, (samples + per_batch - 1) // per_batch)
    reports = []
    total = 0
    for b in range(batches):
        rng = stream(seed, f"slice:{b}")
        kind = b % 3
        if kind == 0:
            f = random_self_map(rng, rng.randint(1, 5))
        elif kind == 1:
            f = RegularPolynomial.identity()
        else:
            f = RegularPolynomial.constant(sample_ball(rng, 0.9))
        reports.append(check_slice_regularity(f, per_batch, rng=rng, seed=seed))
        total += per_batch
    return _merge_reports("slice-regularity", seed, total, reports)


_RUNNERS = {
    "schwarz-pick": run_schwarz_pick,
    "zero-case": run_zero_case,
    "modulus-product": run_modulus_product,
    "reg-preservation": run_reg_preservation,
    "slice-regularity": run_slice_regularity,
}


def run_suite(name: str, seed: int, samples: int, tol: float = DEFAULT_TOL) -> VerificationReport:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(_RUNNERS)}")
    return _RUNNERS[name](seed, samples, tol)


def run_all(seed: int, samples: int, tol: float = DEFAULT_TOL) -> dict:
    """Run every suite and aggregate into one JSON-ready document."""
    reports = [run_suite(name, seed, samples, tol) for name in SUITE_NAMES]
    return {"seed": seed, "samples": samples,
            "pass": all(r.passed for r in reports),
            "suites": [r.to_json_dict() for r in reports]}
