import cmath
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from eqtor.ellcore import (BalanceError, DeltaTerm, Lat, ParameterError, Params,
                           PoleProximityError, ThetaRatioSpec, gkernel,
                           gkernel_branches, pf_expand, phi_delta_difference,
                           poch_pairs_series, pochratio_series, qpoch, theta,
                           theta_coefficient, theta_zero_distance)

P = Params()


def test_qpoch_trivial_cases():
    assert qpoch(0, 0.3, 40) == 1
    assert qpoch(1, 0.3, 40) == 0
    assert qpoch(0.5, 0, 40) == pytest.approx(0.5)


def test_qpoch_rejects_bad_input():
    with pytest.raises(ValueError):
        qpoch(float("nan"), 0.3)
    with pytest.raises(ValueError):
        qpoch(0.5, 1.2)
    with pytest.raises(ValueError):
        qpoch(0.5, 0.3, terms=0)


def test_theta_trivial_cases():
    assert theta(1, P.p) == 0
    assert theta(2, 0) == pytest.approx(-1)
    with pytest.raises(ValueError):
        theta(0, P.p)


def test_theta_quasi_periodicity_seeded():
    rng = random.Random(11)
    for _ in range(100):
        z = cmath.rect(rng.uniform(0.3, 2.5), rng.uniform(0, 2 * math.pi))
        p = cmath.rect(rng.uniform(0.01, 0.3), rng.uniform(0, 2 * math.pi))
        lhs = theta(p * z, p)
        rhs = -theta(z, p) / z
        assert abs(lhs - rhs) <= 1e-12 * (1 + abs(lhs))


def test_theta_reflection_derived():
    # theta(p z) = -z^{-1} theta(z) evaluated from the defining product
    z, p = 0.7 + 0.2j, 0.1
    assert abs(theta(p * z, p) + theta(z, p) / z) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.floats(0.3, 2.0), st.floats(0, 6.28))
def test_theta_laurent_expansion(r, phi):
    z = cmath.rect(r, phi)
    total = sum(theta_coefficient(n, P.p) * z ** n for n in range(-12, 13))
    assert abs(total - theta(z, P.p)) < 1e-12 * (1 + abs(total))


def test_gkernel_trivial_cases():
    assert gkernel(0.3, 0, 2, P.q) == pytest.approx(1)
    assert gkernel(0, 0.2, 2, P.q) == pytest.approx(1)


def test_gkernel_dual_branch():
    series, poch = gkernel_branches(0.3, 0.2, 2, 0.9)
    assert abs(series - poch) < 1e-12
    rng = random.Random(5)
    for b in range(-3, 4):
        for _ in range(100):
            z = cmath.rect(rng.uniform(0.05, 1.1), rng.uniform(0, 6.28))
            s = cmath.rect(rng.uniform(0.02, 0.3), rng.uniform(0, 6.28))
            series, poch = gkernel_branches(z, s, b, P.q, terms=60)
            assert abs(series - poch) / (1 + abs(poch)) < 1e-12


def test_pochratio_series_trivial():
    assert pochratio_series(0.4, 0.4, 0.1, 5) == [1, 0j, 0j, 0j, 0j, 0j]
    a, b = 0.25, 0.6
    coeffs = pochratio_series(a, b, 0, 6)
    # s = 0 reduces to (1 - a x)/(1 - b x)
    expect = [1.0, b - a] + [b ** n * (b - a) for n in range(1, 5)]
    for got, want in zip(coeffs, expect):
        assert abs(got - want) < 1e-14


def test_pochratio_series_matches_direct_ratio():
    a, b, s, xi = 0.2, 0.5, 0.1, 0.3
    coeffs = pochratio_series(a, b, s, 24)
    total = sum(c * xi ** n for n, c in enumerate(coeffs))
    direct = qpoch(a * xi, s, 60) / qpoch(b * xi, s, 60)
    assert abs(total - direct) < 1e-10


def test_poch_pairs_series_multiplies():
    pairs = [(0.2, 0.5, 0.1), (0.1 + 0.2j, 0.3, 0.08)]
    joint = poch_pairs_series(pairs, 10)
    c1 = pochratio_series(*pairs[0], 10)
    c2 = pochratio_series(*pairs[1], 10)
    for n in range(11):
        conv = sum(c1[k] * c2[n - k] for k in range(n + 1))
        assert abs(joint[n] - conv) < 1e-12


def test_pf_expand_single_pole():
    c, t = 1.3, 0.9
    a = [0.4]
    b = [0.4 * c, t / c]
    lhs, rhs = pf_expand(a, b, t, P)
    assert abs(lhs - rhs) < 1e-9 * (1 + abs(lhs))


def test_pf_expand_random_balanced():
    rng = random.Random(2)
    for n in (1, 2, 3, 4):
        for _ in range(10):
            a = [cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(0, 6.28)) for _ in range(n)]
            b = [cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(0, 6.28)) for _ in range(n)]
            t = cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(0, 6.28))
            prod_a = t
            for x in a:
                prod_a *= x
            prod_b = 1 + 0j
            for x in b:
                prod_b *= x
            lhs, rhs = pf_expand(a, b + [prod_a / prod_b], t, P)
            assert abs(lhs - rhs) < 1e-9 * (1 + abs(lhs))


def test_pf_expand_larger_nome():
    # stays below 1e-9 with |p| up to 0.3 at the default truncation length
    big = Params(p=0.28 * cmath.exp(0.45j))
    rng = random.Random(8)
    for n in (2, 4):
        for _ in range(8):
            a = [cmath.rect(rng.uniform(0.6, 1.4), rng.uniform(0, 6.28)) for _ in range(n)]
            b = [cmath.rect(rng.uniform(0.6, 1.4), rng.uniform(0, 6.28)) for _ in range(n)]
            t = cmath.rect(rng.uniform(0.6, 1.4), rng.uniform(0, 6.28))
            prod_a = t
            for x in a:
                prod_a *= x
            prod_b = 1 + 0j
            for x in b:
                prod_b *= x
            try:
                lhs, rhs = pf_expand(a, b + [prod_a / prod_b], t, big)
            except PoleProximityError:
                continue
            assert abs(lhs - rhs) < 1e-9 * (1 + abs(lhs))


def test_pochratio_series_order_eight_example():
    # truncating at order 8 leaves the geometric tail sum_{n>8} c_n xi^n with
    # c_n ~ (b-a) b^{n-1}, about 3e-8 here; order 24 pushes it below 1e-10
    a, b, s, xi = 0.2, 0.5, 0.1, 0.3
    coeffs = pochratio_series(a, b, s, 8)
    total = sum(c * xi ** n for n, c in enumerate(coeffs))
    direct = qpoch(a * xi, s, 60) / qpoch(b * xi, s, 60)
    assert abs(total - direct) < 5e-8


def test_pf_expand_guards():
    with pytest.raises(BalanceError):
        pf_expand([0.4], [0.5, 0.9], 0.9, P)
    # closing pole b_{n+1} = t sits on the theta zero ring
    with pytest.raises(PoleProximityError):
        pf_expand([0.4], [0.4, 0.9], 0.9, P)


def test_phi_delta_difference_lowest_weight():
    q, u = P.q, P.u
    spec = ThetaRatioSpec((q * q * u,), (u,), 1 / q)
    out = phi_delta_difference(spec, P)
    assert len(out) == 1
    support, coeff = out[0]
    assert support == u
    expected = theta(q ** -2, P.p) * (-q) / qpoch(P.p, P.p) ** 2
    assert abs(coeff - expected) < 1e-12 * (1 + abs(expected))


def _laurent_coeffs(f, r, ns, samples=4096):
    out = {}
    vals = [f(cmath.rect(r, 2 * math.pi * k / samples)) for k in range(samples)]
    for n in ns:
        acc = 0j
        for k, v in enumerate(vals):
            acc += v / cmath.rect(r, 2 * math.pi * k / samples) ** n
        out[n] = acc / samples
    return out


def test_phi_delta_difference_against_laurent_extraction():
    # independent oracle: numeric Laurent coefficients on circles on each
    # side of the pole ring; their difference must match the delta sum
    q, u = P.q, P.u
    spec = ThetaRatioSpec((q ** 2 * u, q ** 2 * 1.4 * u), (u, 1.4 * u), 0.7 + 0.1j)
    out = dict((complex(s), c) for s, c in phi_delta_difference(spec, P))
    f = lambda z: spec.evaluate(z, P)
    ns = range(-3, 4)
    outer = _laurent_coeffs(f, abs(u) * 1.6, ns)
    inner = _laurent_coeffs(f, abs(u) * 0.75, ns)
    for n in ns:
        predicted = sum(c * d ** -n for d, c in out.items())
        assert abs(outer[n] - inner[n] - predicted) < 1e-10 * (1 + abs(predicted))


def test_phi_delta_difference_linearity_and_supports():
    q, u = P.q, P.u
    spec = ThetaRatioSpec((q * q * u, q ** 4 * 2 * u), (u, q * q * 2 * u), 1 / q)
    base = phi_delta_difference(spec, P)
    scaled = phi_delta_difference(spec.scaled(3.5 - 1j), P)
    assert [s for s, _ in base] == list(spec.denom_shifts)
    for (_, c1), (_, c2) in zip(base, scaled):
        assert abs(c2 - (3.5 - 1j) * c1) < 1e-12 * (1 + abs(c2))


def test_phi_delta_difference_rejects_coincident_poles():
    q, u = P.q, P.u
    eps = 1 + 1e-9
    spec = ThetaRatioSpec((q * q * u, q * q * eps * u), (u, eps * u), 1.0)
    with pytest.raises(PoleProximityError):
        phi_delta_difference(spec, P)


def test_phi_delta_difference_empty_spec():
    assert phi_delta_difference(ThetaRatioSpec((), (), 2.0), P) == []


def test_theta_ratio_balance():
    u = P.u
    spec = ThetaRatioSpec((Lat(0, 2, 1),), (Lat(0, 0, 1),), 1.0)
    assert spec.balance_exponent(P) == 1
    bad = ThetaRatioSpec((Lat(1, 0, 1),), (Lat(0, 0, 1),), 1.0)
    with pytest.raises(BalanceError):
        bad.balance_exponent(P)
    numeric = ThetaRatioSpec((P.q ** 2 * u,), (u,), 1.0)
    assert numeric.balance_exponent(P) == 1


def test_delta_term_substitution():
    term = DeltaTerm((Lat(0, 0, 1), Lat(1, -2, 1)), 2.0 + 1j, payload="x")
    f = lambda z, w: z * w ** 2
    value = f(*(s.value(P) for s in term.supports))
    assert term.scaled(value).coeff == (2.0 + 1j) * value
    with pytest.raises(ValueError):
        DeltaTerm((0,), 1.0)


def test_lat_arithmetic():
    a = Lat(1, -2, 1)
    b = Lat(0, 3, 0)
    assert (a * b) == Lat(1, 1, 1)
    assert (a / b) == Lat(1, -5, 1)
    assert (b ** 2) == Lat(0, 6, 0)
    assert abs(a.value(P) - P.kappa * P.q ** -2 * P.u) < 1e-15


def test_params_validation():
    with pytest.raises(ParameterError):
        Params(p=0.95)
    with pytest.raises(ParameterError):
        Params(q=1.0)  # q^1 = 1 is degenerate
    with pytest.raises(ParameterError):
        Params(kappa=complex(P.q) ** -1)  # kappa q = 1
    p1 = Params(level_k=1)
    assert abs(p1.p_star - p1.p * p1.q ** -2) < 1e-16


def test_params_theta_lat_exact_zero():
    assert P.theta_lat(Lat(0, 0, 0)) == 0
    assert P.theta_lat(Lat(0, 2, 0)) != 0


def test_theta_zero_distance():
    assert theta_zero_distance(1.0, P.p) == 0
    assert theta_zero_distance(complex(P.p), P.p) < 1e-15
    assert theta_zero_distance(0.5 + 0.4j, P.p) > 0.1


def test_high_precision_mode_matches_double():
    hp = P.with_precision(40)
    a = qpoch(0.3 + 0.1j, 0.2, 40)
    b = qpoch(hp.q * 0 + (0.3 + 0.1j), hp.q * 0 + 0.2, 40)
    assert abs(complex(b) - a) < 1e-14
    th = hp.theta_p(hp.u)
    assert abs(complex(th) - P.theta_p(P.u)) < 1e-12
