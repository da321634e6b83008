"""Regular quotients, the change of variables, and symmetrization zero sets."""

import math
import random

import numpy as np
import pytest

from srq.errors import PoleError
from srq.quaternion import I, J, K, ONE, ZERO, Quaternion
from srq.rational import (RegularQuotient, durand_kerner, sphere_zero_set,
                          star_transform, star_transform_inverse, zeros_on_sphere)
from srq.series import RegularPolynomial

Q = RegularPolynomial.identity()


def rand_quat(rng, scale=1.0):
    return Quaternion(rng.uniform(-scale, scale), rng.uniform(-scale, scale),
                      rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def rand_poly(rng, degree, scale=1.0):
    return RegularPolynomial([rand_quat(rng, scale) for _ in range(degree + 1)])


def point_off_poles(rng, quotient, scale=1.0):
    while True:
        q = rand_quat(rng, scale)
        if quotient.sym.evaluate(q).norm() > 1e-3 * (1 + quotient.sym.coefficient_norm_sum()):
            return q


def test_left_quotient_examples():
    rng = random.Random(0)
    g = rand_poly(rng, 3)
    trivial = RegularQuotient(RegularPolynomial([ONE]), g, "left")
    for _ in range(10):
        q = rand_quat(rng)
        assert trivial.evaluate(q).isclose(g.evaluate(q))

    recip = RegularQuotient(Q - I, RegularPolynomial([ONE]), "left")
    assert recip.evaluate(Quaternion(2)).isclose(Quaternion(0.4, 0.2))

    # the self-map centered at the origin is the identity
    m0 = RegularQuotient(RegularPolynomial([ONE]), Q, "left")
    assert m0.evaluate(Quaternion(0.1, 0.2, 0.3)).isclose(Quaternion(0.1, 0.2, 0.3))


def test_right_quotient_definition():
    # g*h^{-*}(q) = h^s(q)^{-1} (g*h^c)(q)
    rng = random.Random(1)
    g, h = rand_poly(rng, 2), rand_poly(rng, 2)
    quotient = RegularQuotient(h, g, "right")
    for _ in range(10):
        q = point_off_poles(rng, quotient)
        expected = h.symmetrization().evaluate(q).inverse() * (g * h.conjugate()).evaluate(q)
        assert quotient.evaluate(q).isclose(expected, rel_tol=1e-12)


def test_pole_raises_on_whole_sphere():
    recip = RegularQuotient(Q - I, RegularPolynomial([ONE]), "left")
    for bad in (I, J, K, (I + J) / math.sqrt(2)):
        with pytest.raises(PoleError):
            recip.evaluate(bad)


def test_transform_route_at_real_points():
    # T_f fixes the reals, so there the quotient is the pointwise one
    rng = random.Random(2)
    f, g = rand_poly(rng, 2), rand_poly(rng, 2)
    quotient = RegularQuotient(f, g, "left")
    for x in (2.0, -0.75, 0.3):
        q = Quaternion(x)
        if quotient.sym.evaluate(q).norm() < 1e-6:
            continue
        expected = f.evaluate(q).inverse() * g.evaluate(q)
        assert quotient.evaluate(q).isclose(expected, rel_tol=1e-11)
        assert quotient.evaluate_via_transform(q).isclose(expected, rel_tol=1e-11)


def test_route_agreement_left():
    rng = random.Random(3)
    for _ in range(30):
        quotient = RegularQuotient(rand_poly(rng, rng.randint(1, 3)),
                                   rand_poly(rng, rng.randint(0, 3)), "left")
        for _ in range(20):
            q = point_off_poles(rng, quotient)
            direct = quotient.evaluate(q)
            via = quotient.evaluate_via_transform(q)
            assert (direct - via).norm() <= 1e-10 * (1 + direct.norm())


def test_route_agreement_right():
    rng = random.Random(4)
    for _ in range(20):
        num = rand_poly(rng, rng.randint(1, 3))
        quotient = RegularQuotient(rand_poly(rng, rng.randint(1, 3)), num, "right")
        for _ in range(20):
            q = point_off_poles(rng, quotient)
            if num.evaluate(q).norm() < 1e-2:
                continue
            direct = quotient.evaluate(q)
            via = quotient.evaluate_via_transform(q)
            assert (direct - via).norm() <= 1e-10 * (1 + direct.norm())


def test_star_transform_examples():
    f = Q - I
    for x in (-1.0, 0.0, 2.5):
        assert star_transform(f, Quaternion(x)).isclose(Quaternion(x))
    assert star_transform(f, J).isclose(I)
    # real constants act trivially; general constants conjugate
    assert star_transform(RegularPolynomial([Quaternion(3)]), J + K).isclose(J + K)
    c = Quaternion(1, 1)
    got = star_transform(RegularPolynomial([c]), J)
    expected = c.conjugate().inverse() * J * c.conjugate()
    assert got.isclose(expected)


def test_star_transform_preserves_spheres():
    rng = random.Random(5)
    for _ in range(30):
        f = rand_poly(rng, rng.randint(1, 3))
        q = rand_quat(rng)
        try:
            w = star_transform(f, q)
        except PoleError:
            continue
        assert abs(w.w - q.w) < 1e-10
        assert abs(w.imag_norm() - q.imag_norm()) < 1e-10
        # inverse transform comes from the conjugate polynomial
        assert star_transform_inverse(f, w).isclose(q, rel_tol=1e-9, abs_tol=1e-11)


def test_durand_kerner_against_companion_roots():
    rng = random.Random(6)
    for _ in range(25):
        coeffs = [rng.uniform(-2, 2) for _ in range(rng.randint(2, 7))]
        if abs(coeffs[-1]) < 0.1:
            coeffs[-1] = 1.0
        mine = sorted(durand_kerner(coeffs), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
        ref = sorted(np.roots(list(reversed(coeffs))),
                     key=lambda z: (round(z.real, 6), round(z.imag, 6)))
        assert len(mine) == len(ref)
        for a, b in zip(mine, ref):
            assert abs(a - complex(b)) < 1e-6


def test_sphere_zero_set_examples():
    entries = list(sphere_zero_set(Q - I))
    assert len(entries) == 1
    assert abs(entries[0].x) < 1e-9 and abs(entries[0].y - 1) < 1e-9
    assert entries[0].multiplicity == 1

    entries = list(sphere_zero_set(Q - 2))
    assert len(entries) == 1
    assert entries[0].is_real_point and abs(entries[0].x - 2) < 1e-6

    entries = list(sphere_zero_set((Q - I) * (Q - J)))
    assert len(entries) == 1
    assert abs(entries[0].x) < 1e-6 and abs(entries[0].y - 1) < 1e-6
    assert entries[0].multiplicity == 2


def test_every_zero_lies_on_a_listed_sphere():
    rng = random.Random(7)
    for _ in range(25):
        f = rand_poly(rng, rng.randint(1, 4))
        fs = f.symmetrization()
        for entry in sphere_zero_set(f):
            spherical, zeros = zeros_on_sphere(f, entry.x, entry.y)
            if spherical:
                # the whole sphere vanishes; check one representative
                rep = Quaternion(entry.x) + J * entry.y
                assert f.evaluate(rep).norm() < 1e-6 * (1 + f.coefficient_norm_sum())
                continue
            assert zeros, f"no zero found on listed sphere ({entry.x}, {entry.y})"
            for z in zeros:
                assert fs.evaluate(z).norm() < 1e-8 * (1 + fs.coefficient_norm_sum())


def test_zero_count_matches_conjugate():
    rng = random.Random(8)
    for _ in range(25):
        f = rand_poly(rng, rng.randint(1, 4))
        fc = f.conjugate()
        for entry in sphere_zero_set(f):
            sph_f, zf = zeros_on_sphere(f, entry.x, entry.y)
            sph_c, zc = zeros_on_sphere(fc, entry.x, entry.y)
            assert sph_f == sph_c
            assert len(zf) == len(zc)


def test_unique_zero_of_nonsymmetric_product():
    f = (Q - I) * (Q - J)
    spherical, zeros = zeros_on_sphere(f, 0.0, 1.0)
    assert not spherical
    assert len(zeros) == 1
    assert zeros[0].isclose(I, abs_tol=1e-9)
    # the conjugate has its single zero at -j
    spherical, zeros = zeros_on_sphere(f.conjugate(), 0.0, 1.0)
    assert zeros[0].isclose(-J, abs_tol=1e-9)


def test_symmetrization_vanishes_on_whole_sphere():
    spherical, zeros = zeros_on_sphere((Q - I).symmetrization(), 0.0, 1.0)
    assert spherical and not zeros


def test_dense_sampling_refinement_oracle():
    # independent minimization over the sphere confirms the algebraic zero
    from scipy.optimize import minimize

    f = (Q - I) * (Q - J)

    def modulus(angles):
        theta, phi = angles
        axis = Quaternion(0, math.sin(theta) * math.cos(phi),
                          math.sin(theta) * math.sin(phi), math.cos(theta))
        return f.evaluate(axis).norm()

    best = None
    n = 40
    for a in range(n):
        for b in range(n):
            theta = math.pi * (a + 0.5) / n
            phi = 2 * math.pi * b / n
            val = modulus((theta, phi))
            if best is None or val < best[0]:
                best = (val, (theta, phi))
    refined = minimize(modulus, best[1], method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-14})
    theta, phi = refined.x
    found = Quaternion(0, math.sin(theta) * math.cos(phi),
                       math.sin(theta) * math.sin(phi), math.cos(theta))
    assert refined.fun < 1e-6
    assert found.isclose(I, abs_tol=1e-4)
    assert f.symmetrization().evaluate(found).norm() < 1e-8


def test_quotient_conjugate_involution():
    rng = random.Random(9)
    q0 = I * 0.5
    m = RegularQuotient(RegularPolynomial([ONE, -q0.conjugate()]),
                        RegularPolynomial([-q0, ONE]), "left")
    mc = m.conjugate()
    assert mc.side == "right"
    back = mc.conjugate()
    for _ in range(20):
        q = point_off_poles(rng, m, 0.8)
        assert back.evaluate(q).isclose(m.evaluate(q), rel_tol=1e-12)


def test_conjugate_of_real_denominator():
    # real-coefficient denominator: Q^c = f^{-*} * g^c pointwise
    rng = random.Random(10)
    f = RegularPolynomial([Quaternion(2), Quaternion(1)])
    g = rand_poly(rng, 2)
    quotient = RegularQuotient(f, g, "left")
    conj = quotient.conjugate()
    manual = RegularQuotient(f, g.conjugate(), "left")
    for _ in range(15):
        q = point_off_poles(rng, quotient)
        assert conj.evaluate(q).isclose(manual.evaluate(q), rel_tol=1e-11)


def test_quotient_symmetrization_at_real_points():
    rng = random.Random(11)
    f, g = rand_poly(rng, 2), rand_poly(rng, 3)
    quotient = RegularQuotient(f, g, "left")
    for x in (0.5, -1.25, 2.0):
        q = Quaternion(x)
        value = quotient.symmetrization_value(q)
        expected = f.symmetrization().evaluate(q).inverse() * g.symmetrization().evaluate(q)
        assert value.is_real(1e-9 * (1 + value.norm()))
        assert value.isclose(expected, rel_tol=1e-10)


def test_quotient_star_product():
    rng = random.Random(12)
    one = RegularQuotient(RegularPolynomial([ONE]), RegularPolynomial([ONE]), "left")
    q1 = RegularQuotient(rand_poly(rng, 2), rand_poly(rng, 2), "left")
    prod = q1 * one
    for _ in range(15):
        q = point_off_poles(rng, q1)
        assert prod.evaluate(q).isclose(q1.evaluate(q), rel_tol=1e-11)

    # (q-i)^{-*} squared: denominator-symmetrization (q^2+1)^2, conumerator (q+i)*(q+i)
    recip = RegularQuotient(Q - I, RegularPolynomial([ONE]), "left")
    square = recip * recip
    expected_sym = RegularPolynomial([ONE, ZERO, ONE]) ** 2
    assert square.sym.isclose(expected_sym, rel_tol=1e-12)
    assert square.conum.isclose((Q + I) * (Q + I), rel_tol=1e-12)

    # with trivial denominators the product is the star product of numerators
    f, g = rand_poly(rng, 2), rand_poly(rng, 2)
    both = RegularQuotient.from_polynomial(f) * RegularQuotient.from_polynomial(g)
    for _ in range(10):
        q = rand_quat(rng)
        assert both.evaluate(q).isclose((f * g).evaluate(q), rel_tol=1e-11)


def test_quotient_product_pointwise_formula():
    # (f^{-*}*g)*(h^{-*}*k)(q) = (f^s h^s)(q)^{-1} (f^c*g*h^c*k)(q)
    rng = random.Random(13)
    f, g, h, k = (rand_poly(rng, 2) for _ in range(4))
    prod = RegularQuotient(f, g, "left") * RegularQuotient(h, k, "left")
    big = f.conjugate() * g * h.conjugate() * k
    for _ in range(15):
        q = point_off_poles(rng, prod)
        expected = (f.symmetrization().evaluate(q) * h.symmetrization().evaluate(q)
                    ).inverse() * big.evaluate(q)
        assert prod.evaluate(q).isclose(expected, rel_tol=1e-9, abs_tol=1e-11)


def test_ring_operations_pointwise():
    rng = random.Random(14)
    q1 = RegularQuotient(rand_poly(rng, 2), rand_poly(rng, 2), "left")
    q2 = RegularQuotient(rand_poly(rng, 1), rand_poly(rng, 2), "right")
    total = q1 + q2
    # inversion is a ring identity: the star product with the reciprocal is 1
    unit = q1.reciprocal() * q1
    for _ in range(15):
        q = point_off_poles(rng, total)
        assert total.evaluate(q).isclose(q1.evaluate(q) + q2.evaluate(q),
                                         rel_tol=1e-9, abs_tol=1e-11)
    for _ in range(15):
        q = point_off_poles(rng, unit)
        assert unit.evaluate(q).isclose(ONE, rel_tol=1e-8)


def test_quotient_remainder_matches_polynomial_remainder():
    rng = random.Random(15)
    f = rand_poly(rng, 4)
    q0 = rand_quat(rng)
    ring = RegularQuotient.from_polynomial(f).remainder(q0)
    poly = f.remainder(q0)
    for _ in range(10):
        q = point_off_poles(rng, ring)
        assert ring.evaluate(q).isclose(poly.evaluate(q), rel_tol=1e-9, abs_tol=1e-11)


def test_json_roundtrip():
    quotient = RegularQuotient(Q - I, Q - J, "right")
    again = RegularQuotient.from_json(quotient.to_json())
    assert again.den == quotient.den
    assert again.num == quotient.num
    assert again.side == "right"


def test_zero_quotient_cannot_be_inverted():
    q1 = RegularQuotient(Q - I, RegularPolynomial(), "left")
    assert q1.evaluate(Quaternion(2)) == ZERO
    with pytest.raises(ValueError):
        q1.reciprocal()
