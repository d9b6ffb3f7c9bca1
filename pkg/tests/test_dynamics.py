import numpy as np
import pytest

from conftest import random_state
from src.coefficients import build_coefficients, wave_map_coefficients
from src.dynamics import (
    State,
    SystemRhs,
    Tendency,
    build_initial_data,
    compat_deviation,
    constraint_deviation,
    make_initial_data,
    make_rhs,
    normalize_director,
    resolve_params,
    rhs_full,
    rhs_wavemap,
    state_from_samples,
    tangential,
)
from src.spectral import (
    SpectralField,
    TorusGrid,
    divergence,
    gradient,
    hermitian_defect,
    inner,
    laplacian,
    leray_project,
    physical_on,
    to_spectral,
)
from src.utils.errors import (
    ComponentMismatch,
    CutoffMismatch,
    NonPositiveInertia,
    NormalizationFailed,
    UnknownPreset,
)

ORACLE_STATES = 20
GENERAL = dict(mu1=0.3, mu2=0.2, mu3=0.7, mu4=1.5, mu5=0.4, mu6=0.1, rho1=1.3)


def general_coefficients():
    return build_coefficients(enforce_parodi=False, **GENERAL)


def constant_director_state(grid, K, u=None):
    values = np.zeros((3,) + grid.shape)
    values[2] = 1.0
    if u is None:
        u = np.zeros((grid.dim,) + grid.shape)
    return state_from_samples(grid, K, u, values, np.zeros_like(values))


def test_constant_director_is_fixed_point():
    grid = TorusGrid(2, 32)
    s = constant_director_state(grid, 10)
    for c in (general_coefficients(), wave_map_coefficients(1.0, 1.0)):
        assert make_rhs(c, 0.1)(s).max_abs() < 1e-15


@pytest.mark.parametrize('m', [1, 2, 3])
def test_twist_wave_is_stationary(m, part3):
    grid = TorusGrid(2, 32)
    s = make_initial_data('twist_wave', {'m': m}, grid, 10)
    assert rhs_wavemap(s, 1.0, 1.0, 0.1).max_abs() < 1e-12
    assert rhs_full(s, part3, 0.1).max_abs() < 1e-12


def test_wave_map_paths_agree(rng):
    grid = TorusGrid(2, 32)
    s = random_state(grid, 10, rng)
    c = wave_map_coefficients(2.0, 0.7)
    a = rhs_wavemap(s, 2.0, 0.7, 0.1)
    b = rhs_full(s, c, 0.1)
    for x, y in zip(a.fields(), b.fields()):
        assert x.max_abs_diff(y) < 1e-13


def test_system_rhs_dispatch(rng, wave_map):
    grid = TorusGrid(2, 32)
    s = random_state(grid, 10, rng)
    rhs = make_rhs(wave_map, 0.1)
    assert isinstance(rhs, SystemRhs)
    expected = rhs_wavemap(s, wave_map.mu4, wave_map.rho1, 0.1)
    for x, y in zip(rhs(s).fields(), expected.fields()):
        assert np.array_equal(x.coeffs, y.coeffs)


@pytest.mark.parametrize('c', [general_coefficients(), wave_map_coefficients(3.0, 1.0)])
def test_shear_flow_decays_like_heat_equation(c):
    grid = TorusGrid(2, 32)
    _, y = grid.coordinates
    u = np.array([0.2 * np.sin(y) + 0.1 * np.cos(2 * y), np.zeros_like(y)])
    s = constant_director_state(grid, 10, u)
    k = make_rhs(c, 0.1)(s)
    expected = -0.5 * c.mu4 * to_spectral(np.array([0.2 * np.sin(y) + 0.4 * np.cos(2 * y),
                                                    np.zeros_like(y)]), grid, 10).coeffs
    assert np.max(np.abs(k.du_dt.coeffs - expected)) < 1e-13
    assert np.max(np.abs(k.dd_dt.coeffs)) < 1e-15
    assert np.max(np.abs(k.dddot_dt.coeffs)) < 1e-14


def test_velocity_tendency_is_divergence_free(rng):
    grid = TorusGrid(2, 32)
    s = random_state(grid, 10, rng)
    k = rhs_full(s, general_coefficients(), 0.1)
    assert np.max(np.abs(divergence(k.du_dt).coeffs)) < 1e-11


def test_tendency_is_band_limited_and_hermitian(rng):
    grid = TorusGrid(3, 16)
    s = random_state(grid, 4, rng)
    k = rhs_full(s, general_coefficients(), 0.25)
    outside = ~grid.band_mask(4)
    for f in k.fields():
        assert f.cutoff == 4
        assert np.all(f.coeffs[..., outside] == 0.0)
        assert hermitian_defect(f) < 1e-13


def _mode_sum(coeffs, grid, K, x, deriv=()):
    """sum_xi c(xi) prod_j (i xi_j) exp(i xi . x)，逐模式直接求和"""
    k = grid.wavenumbers
    comp = coeffs.shape[:-grid.dim]
    out = np.zeros(comp + x.shape[1:], dtype=complex)
    for idx in zip(*np.nonzero(grid.band_mask(K))):
        xi = k[(slice(None),) + idx]
        factor = np.prod([1j * xi[j] for j in deriv])
        phase = np.exp(1j * np.tensordot(xi, x, axes=1))
        out += np.multiply.outer(factor * coeffs[(Ellipsis,) + idx], phase)
    return out.real


def _oracle(s, c, Mo):
    """在 Mo 网格上用显式指标循环计算右端项"""
    grid, K, dim = s.grid, s.cutoff, s.grid.dim
    x = TorusGrid(dim, Mo).coordinates
    u = _mode_sum(s.u.coeffs, grid, K, x)
    d = _mode_sum(s.d.coeffs, grid, K, x)
    ddot = _mode_sum(s.ddot.coeffs, grid, K, x)
    du = [[_mode_sum(s.u.coeffs[i], grid, K, x, (j,)) for j in range(dim)] for i in range(dim)]
    dd = [[_mode_sum(s.d.coeffs[k], grid, K, x, (j,)) for k in range(3)] for j in range(dim)]
    dddot = [[_mode_sum(s.ddot.coeffs[k], grid, K, x, (j,)) for k in range(3)] for j in range(dim)]

    zero = np.zeros(x.shape[1:])
    G = [[du[i][j] if i < dim and j < dim else zero for j in range(3)] for i in range(3)]
    A = [[0.5 * (G[i][j] + G[j][i]) for j in range(3)] for i in range(3)]
    B = [[0.5 * (G[i][j] - G[j][i]) for j in range(3)] for i in range(3)]
    Bd = [sum(B[i][k] * d[k] for k in range(3)) for i in range(3)]
    Ad = [sum(A[i][k] * d[k] for k in range(3)) for i in range(3)]
    N = [ddot[i] - Bd[i] for i in range(3)]
    dAd = sum(d[i] * Ad[i] for i in range(3))
    grad_d_sq = sum(dd[j][k] ** 2 for j in range(dim) for k in range(3))
    gamma = -c.rho1 * sum(ddot[k] ** 2 for k in range(3)) + grad_d_sq - c.lambda2 * dAd

    T = np.zeros((dim, dim) + x.shape[1:])
    for j in range(dim):
        for i in range(dim):
            T[j, i] = (c.mu1 * dAd * d[i] * d[j] + c.mu2 * d[j] * N[i] + c.mu3 * d[i] * N[j]
                       + c.mu5 * d[j] * Ad[i] + c.mu6 * d[i] * Ad[j]
                       - sum(dd[j][k] * dd[i][k] for k in range(3)))
    adv_u = np.array([sum(u[j] * du[i][j] for j in range(dim)) for i in range(dim)])
    adv_d = np.array([sum(u[j] * dd[j][k] for j in range(dim)) for k in range(3)])
    forcing = np.array([
        -c.rho1 * sum(u[j] * dddot[j][k] for j in range(dim)) + gamma * d[k]
        - c.lambda1 * Bd[k] + c.lambda2 * Ad[k]
        for k in range(3)
    ])

    axes = tuple(range(-dim, 0))
    hat = {name: np.fft.fftn(v, axes=axes) / Mo ** dim
           for name, v in (('T', T), ('adv_u', adv_u), ('adv_d', adv_d), ('forcing', forcing))}
    out_u = np.zeros_like(s.u.coeffs)
    out_ddot = np.zeros_like(s.ddot.coeffs)
    out_d = np.zeros_like(s.d.coeffs)
    k = grid.wavenumbers
    for idx in zip(*np.nonzero(grid.band_mask(K))):
        xi = k[(slice(None),) + idx]
        fine = tuple(int(v) % Mo for v in xi)
        at = (Ellipsis,) + fine
        m = -hat['adv_u'][at] + np.array([
            sum(1j * xi[j] * hat['T'][(j, i) + fine] for j in range(dim)) for i in range(dim)])
        xi2 = float(np.dot(xi, xi))
        if xi2 > 0:
            m = m - xi * np.dot(xi, m) / xi2
        here = (Ellipsis,) + idx
        out_u[here] = m - 0.5 * c.mu4 * xi2 * s.u.coeffs[here]
        out_ddot[here] = (-xi2 * s.d.coeffs[here] + hat['forcing'][at]
                          + c.lambda1 * s.ddot.coeffs[here]) / c.rho1
        out_d[here] = s.ddot.coeffs[here] - hat['adv_d'][at]
    return out_u, out_ddot, out_d


@pytest.mark.parametrize('dim, K, N, Mo', [(2, 4, 16, 32), (3, 2, 8, 16)])
def test_rhs_matches_physical_space_oracle(dim, K, N, Mo, rng):
    grid = TorusGrid(dim, N)
    c = general_coefficients()
    for _ in range(ORACLE_STATES):
        s = random_state(grid, K, rng)
        k = rhs_full(s, c, 1.0 / K)
        for got, expected in zip(k.fields(), _oracle(s, c, Mo)):
            scale = max(1.0, float(np.max(np.abs(expected))))
            assert np.max(np.abs(got.coeffs - expected)) < 1e-11 * scale


@pytest.mark.parametrize('c', [general_coefficients(), wave_map_coefficients(2.0, 0.7)])
def test_mollified_multiplier_pairs_like_unmollified(c):
    # u = 0 时 rho1 dddot/dt - Lap(d) - lambda1 ddot 恰为 J(gamma d)
    grid, K, M = TorusGrid(2, 32), 8, 48
    x, y = grid.coordinates
    phi = x + 2 * y
    d = np.array([np.cos(phi), np.sin(phi), np.zeros_like(phi)])
    ddot = np.sin(y) * np.array([-np.sin(phi), np.cos(phi), np.zeros_like(phi)])
    s = state_from_samples(grid, K, np.zeros((2,) + grid.shape), d, ddot)
    k = make_rhs(c, 1.0 / K)(s)
    mollified = k.dddot_dt * c.rho1 - laplacian(s.d) - s.ddot * c.lambda1

    d_f, ddot_f = physical_on(s.d, M), physical_on(s.ddot, M)
    grad_d = physical_on(gradient(s.d), M)
    gamma = -c.rho1 * np.sum(ddot_f ** 2, axis=0) + np.sum(grad_d ** 2, axis=(0, 1))
    exact = grid.volume * np.mean(np.sum(gamma * d_f * ddot_f, axis=0))
    assert inner(mollified, s.ddot) == pytest.approx(exact, rel=1e-12, abs=1e-12)


def _reflect_x1(f: SpectralField, signs) -> SpectralField:
    """f'(x) = S f(-x1, x2, ...)，S = diag(signs)"""
    axis = f.coeffs.ndim - f.grid.dim
    coeffs = np.roll(np.flip(f.coeffs, axis=axis), 1, axis=axis)
    return f.with_coeffs(coeffs * np.reshape(signs, (-1,) + (1,) * f.grid.dim))


def test_reflection_equivariance(rng):
    grid = TorusGrid(2, 32)
    s = random_state(grid, 8, rng)
    su, sd = (-1.0, 1.0), (-1.0, 1.0, 1.0)
    mirrored = State(0.0, _reflect_x1(s.u, su), _reflect_x1(s.d, sd), _reflect_x1(s.ddot, sd))
    rhs = make_rhs(general_coefficients(), 1.0 / 8)
    k, km = rhs(s), rhs(mirrored)
    assert km.du_dt.max_abs_diff(_reflect_x1(k.du_dt, su)) < 1e-10
    assert km.dd_dt.max_abs_diff(_reflect_x1(k.dd_dt, sd)) < 1e-10
    assert km.dddot_dt.max_abs_diff(_reflect_x1(k.dddot_dt, sd)) < 1e-10


def test_rhs_rejects_wrong_eps(rng, part3):
    grid = TorusGrid(2, 32)
    s = random_state(grid, 8, rng)
    with pytest.raises(CutoffMismatch):
        rhs_full(s, part3, 0.25)
    with pytest.raises(CutoffMismatch):
        rhs_wavemap(s, 1.0, 1.0, 0.0)
    with pytest.raises(NonPositiveInertia):
        rhs_wavemap(s, 1.0, 0.0, 0.125)


def test_state_validation(grid2):
    u = SpectralField.zeros(grid2, (2,), 8)
    d = SpectralField.zeros(grid2, (3,), 8)
    with pytest.raises(ComponentMismatch):
        State(0.0, u, SpectralField.zeros(grid2, (2,), 8), d)
    with pytest.raises(ComponentMismatch):
        State(0.0, d, d, d)
    with pytest.raises(CutoffMismatch):
        State(0.0, u, d, SpectralField.zeros(grid2, (3,), 7))


def test_tendency_arithmetic(rng):
    grid = TorusGrid(2, 16)
    s = random_state(grid, 5, rng)
    k = Tendency(s.u, s.ddot, s.d)
    assert ((k + k) * 0.5).du_dt.max_abs_diff(s.u) == 0.0
    shifted = s.shifted(k, 0.5)
    assert shifted.t == 0.5
    assert shifted.d.max_abs_diff(s.d + 0.5 * s.d) == 0.0


def test_twist_initial_data():
    grid = TorusGrid(2, 32)
    data = build_initial_data('twist_wave', {'m': 1}, grid, 10, s_ord=4, rho1=1.0)
    expected = 5 * 4 * np.pi ** 2
    assert data.E_in == pytest.approx(expected, rel=1e-12)
    assert data.grad_din_Hs == pytest.approx(np.sqrt(expected), rel=1e-12)
    assert data.constraint_residual < 1e-13
    assert data.compat_residual == 0.0
    assert data.state.cutoff == 10 and data.d_in.cutoff == grid.max_cutoff


def test_perturbed_twist_initial_data():
    grid = TorusGrid(2, 48)
    data = build_initial_data('perturbed_twist', {'amplitude': 1e-3}, grid, 16, s_ord=4, rho1=1.0)
    assert data.constraint_residual < 1e-10
    assert data.compat_residual < 1e-10
    assert np.max(np.abs(divergence(data.state.u).coeffs)) < 1e-15


def test_random_small_initial_data():
    grid = TorusGrid(2, 48)
    data = build_initial_data('random_small', {'amplitude': 1e-2, 'seed': 3}, grid, 16, s_ord=4, rho1=1.0)
    again = build_initial_data('random_small', {'amplitude': 1e-2, 'seed': 3}, grid, 16, s_ord=4, rho1=1.0)
    assert data.constraint_residual < 1e-10
    assert data.compat_residual < 1e-10
    assert data.state.max_abs_diff(again.state) == 0.0
    assert data.E_in > 0.0


def test_random_small_does_not_depend_on_grid_size():
    small = build_initial_data('random_small', {'seed': 5}, TorusGrid(2, 48), 16, s_ord=3, rho1=1.0)
    large = build_initial_data('random_small', {'seed': 5}, TorusGrid(2, 64), 16, s_ord=3, rho1=1.0)
    assert small.E_in == pytest.approx(large.E_in, rel=1e-8)


def test_constant_director_shear_preset():
    grid = TorusGrid(2, 32)
    s = make_initial_data('constant_director_shear', {'amplitude': 2.0}, grid, 10)
    assert constraint_deviation(s.d) < 1e-15
    assert compat_deviation(s.d, s.ddot) == 0.0
    assert s.u.coeffs[0, 0, 1] == pytest.approx(-1j)


def test_unknown_preset():
    with pytest.raises(UnknownPreset):
        build_initial_data('hedgehog', None, TorusGrid(2, 16), 5, s_ord=3, rho1=1.0)


def test_resolve_params_keeps_known_keys():
    params = resolve_params('perturbed_twist', {'amplitude': 0.5, 'seed': 7})
    assert params == {'m': 1, 'amplitude': 0.5}


def test_normalize_and_tangential(rng):
    d = rng.standard_normal((3, 8, 8))
    unit = normalize_director(d)
    assert np.allclose(np.sum(unit ** 2, axis=0), 1.0)
    v = tangential(rng.standard_normal((3, 8, 8)), unit)
    assert np.max(np.abs(np.sum(v * unit, axis=0))) < 1e-14
    d[:, 2, 3] = 0.0
    with pytest.raises(NormalizationFailed):
        normalize_director(d)


def test_state_from_samples_projects_velocity(rng):
    grid = TorusGrid(2, 16)
    u = rng.standard_normal((2,) + grid.shape)
    d = rng.standard_normal((3,) + grid.shape)
    s = state_from_samples(grid, 5, u, d, d, t=1.5)
    assert s.t == 1.5
    assert s.u.max_abs_diff(leray_project(s.u)) < 1e-15
    assert np.max(np.abs(divergence(s.u).coeffs)) < 1e-13
