import math

import pytest
from hypothesis import given, settings, strategies as st

from src.coefficients import (
    build_coefficients,
    cap_q,
    compute_c3,
    energy_y,
    epsilon0,
    epsilon1,
    lifespan_bound,
    lifespan_report,
    part2_bound,
    part2_energy_cap,
    regime_classify,
    wave_map_coefficients,
)
from src.utils.errors import (
    CapDiverged,
    NegativeCoefficient,
    NonPositiveEnergy,
    NonPositiveInertia,
    NonPositiveViscosity,
    ParodiViolation,
    RegimeMismatch,
)

coefficient = st.floats(min_value=0.0, max_value=50.0, allow_nan=False)


def make(**kw):
    values = dict(mu1=0.0, mu2=0.0, mu3=0.0, mu4=1.0, mu5=0.0, mu6=0.0, rho1=1.0)
    values.update(kw)
    return build_coefficients(enforce_parodi=False, **values)


def test_lambda_examples():
    assert make(mu2=1.0, mu3=3.0).lambda1 == -2.0
    assert make(mu5=2.0, mu6=2.0).lambda2 == 0.0


def test_parodi_holds():
    c = build_coefficients(0.0, 0.0, 2.0, 1.0, 1.0, 3.0, 1.0, enforce_parodi=True)
    assert c.parodi_residual == 0.0
    assert c.lambda1 == -2.0 and c.lambda2 == -2.0


def test_parodi_violation_raises_when_enforced():
    with pytest.raises(ParodiViolation):
        build_coefficients(0.0, 0.0, 1.0, 101.0, 0.0, 0.0, 1.0, enforce_parodi=True)


def test_parodi_violation_warns_otherwise(caplog):
    c = build_coefficients(0.0, 0.0, 1.0, 101.0, 0.0, 0.0, 1.0, enforce_parodi=False)
    assert c.parodi_residual == 1.0
    assert 'Parodi' in caplog.text


@pytest.mark.parametrize('kw, error', [
    ({'mu4': 0.0}, NonPositiveViscosity),
    ({'mu4': -1.0}, NonPositiveViscosity),
    ({'rho1': 0.0}, NonPositiveInertia),
    ({'mu2': -1e-3}, NegativeCoefficient),
    ({'mu6': -2.0}, NegativeCoefficient),
])
def test_construction_errors(kw, error):
    with pytest.raises(error):
        make(**kw)


@given(coefficient, coefficient, coefficient, coefficient)
@settings(max_examples=200)
def test_lambdas_are_exact_differences(mu2, mu3, mu5, mu6):
    c = make(mu2=mu2, mu3=mu3, mu5=mu5, mu6=mu6)
    assert c.lambda1 == mu2 - mu3
    assert c.lambda2 == mu5 - mu6


@given(st.floats(min_value=0.1, max_value=10.0), coefficient, st.floats(min_value=0.1, max_value=50.0))
def test_beta_scales_linearly(scale, mu6, mu4):
    c = make(mu4=mu4, mu6=mu6)
    scaled = make(mu4=scale * mu4, mu6=scale * mu6)
    assert scaled.beta == pytest.approx(scale * c.beta, rel=1e-12, abs=1e-9)


def test_part3_example(part3):
    report = regime_classify(part3)
    assert report.eta == 0.5
    assert report.alpha == pytest.approx(1.0, rel=1e-12)
    assert report.theta == pytest.approx(0.5, rel=1e-12)
    assert report.part1_applies and report.part3_applies and not report.part2_applies
    assert report.constants_used == {'C': 1.0, 'C_prime': 1.0}
    assert len(report.notes) == 2


def test_eta_example():
    assert regime_classify(make(mu3=1.0, rho1=2.0)).eta == pytest.approx(0.25, rel=1e-12)


def test_beta_example():
    assert make(mu4=8.0, mu6=1.0).beta == 4.0


def test_epsilon0_example():
    c = make(mu3=1.0, mu4=8.0, mu5=1.0, mu6=1.0)
    assert epsilon0(c, 1.0) == pytest.approx(256.0 / 192.0 ** 4, rel=1e-12)
    assert epsilon0(c, 1.0) == pytest.approx(1.8838e-7, rel=1e-4)


def test_epsilon0_negative_bracket_uses_formula():
    # lambda2 = 5 > |lambda1| = 0，分母为 96 * (-5)
    c = make(mu4=10.0, mu5=5.0)
    assert c.lambda2 == 5.0
    assert epsilon0(c, 1.0) == pytest.approx((100.0 / 480.0 ** 2) ** 2, rel=1e-12)


def test_epsilon0_wave_map_is_one(wave_map):
    assert epsilon0(wave_map, 1.0) == 1.0


def test_epsilon0_monotone_in_C_and_beta():
    c = make(mu3=1.0, mu4=8.0, mu5=1.0, mu6=1.0)
    assert epsilon0(c, 2.0) < epsilon0(c, 1.0)
    assert epsilon0(make(mu3=1.0, mu4=12.0, mu5=1.0, mu6=1.0), 1.0) >= epsilon0(c, 1.0)


def test_epsilon0_vanishes_as_beta_shrinks():
    values = [epsilon0(make(mu3=1.0, mu4=4.0 + h, mu5=1.0, mu6=1.0)) for h in (1.0, 1e-2, 1e-4)]
    assert values[0] > values[1] > values[2]
    assert values[2] < 1e-20


def test_epsilon0_requires_positive_beta():
    with pytest.raises(RegimeMismatch):
        epsilon0(make(mu4=4.0, mu5=1.0, mu6=1.0))


def test_epsilon1_part3_example(part3):
    C3 = compute_c3(part3, 1.0)
    assert C3 == pytest.approx(4.0 * 2.0 * 4.0, rel=1e-12)
    theta = 0.5
    expected = min(0.5 * epsilon0(part3, 1.0), theta ** 2 / (8.0 * C3) ** 2) / 3.0
    assert epsilon1(part3, 1.0, 1.0) == pytest.approx(expected, rel=1e-12)
    assert epsilon1(part3) <= epsilon0(part3) / (2.0 * (abs(part3.lambda1) + 2.0))


def test_epsilon1_outside_part3():
    with pytest.raises(RegimeMismatch):
        epsilon1(make(mu2=1.0, mu4=101.0))


def test_part2_lifespan_example():
    c = wave_map_coefficients(1.0, 1.0)
    assert energy_y(1.0) == 0.75
    assert lifespan_bound(c, 1.0, 1.0, 0.0) == pytest.approx(math.log(4.0 / 3.0) / 8.0, rel=1e-12)


def test_part2_energy_cap():
    assert part2_energy_cap(1.0, 0.0, 2.0) == pytest.approx(1.0, rel=1e-12)
    W = part2_energy_cap(0.5, 0.01, 2.0)
    Y = energy_y(0.5)
    assert W == pytest.approx(1.0 / math.sqrt(1.0 - Y * math.exp(0.08)) - 1.0, rel=1e-12)
    assert part2_bound(0.5, 0.01, 2.0) == pytest.approx(0.5 + 0.04 * W * (W + 1) * (W + 2), rel=1e-12)
    with pytest.raises(CapDiverged):
        part2_energy_cap(1.0, 1.0, 2.0)


def test_part1_lifespan_limits():
    c = make(mu4=2.0, mu3=1.0)
    small = lifespan_bound(c, 1e-12)
    near_one = lifespan_bound(c, 1.0 - 1e-9)
    assert small > lifespan_bound(c, 1e-3) > near_one > 0.0
    assert near_one < 1e-9


def test_part3_global_lifespan(part3):
    eps1 = epsilon1(part3)
    report = lifespan_report(part3, 0.5 * eps1)
    assert report.part == 'III'
    assert report.lifespan == math.inf
    assert report.energy_cap == pytest.approx(2.0 * 3.0 * 0.5 * eps1)


def test_lifespan_rejects_non_positive_energy():
    with pytest.raises(NonPositiveEnergy):
        lifespan_bound(wave_map_coefficients(1.0, 1.0), 0.0)


def test_lifespan_outside_all_regimes():
    with pytest.raises(RegimeMismatch):
        lifespan_bound(make(mu2=1.0, mu4=4.0, mu5=0.0, mu6=1.0), 0.1)


def test_wave_map_q_term_vanishes():
    c = wave_map_coefficients(3.0, 2.0)
    assert cap_q(c, 1.5, 2.0) == 0.0
    assert regime_classify(c).part2_applies


def test_classify_rejects_non_positive_constants(part3):
    with pytest.raises(RegimeMismatch):
        regime_classify(part3, C=0.0)
