"""满足单位长度约束与相容条件的初值"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .state import State
from ..config.constants import PRESETS
from ..spectral import (
    SpectralField,
    TorusGrid,
    gradient,
    leray_project,
    sobolev_norm_sq,
    to_physical,
    to_spectral,
    truncate,
)
from ..spectral.operators import hermitian_part
from ..tensorcalc import DIRECTOR_COMPONENTS
from ..utils.errors import NormalizationFailed, UnknownPreset
from ..utils.logger import logger

# 指向矢采样长度低于此值视为零长度
MIN_DIRECTOR_LENGTH = 1e-14


@dataclass(frozen=True)
class InitialData:
    """截断后的初始状态及原始（未磨光）初值的信息"""
    state: State
    d_in: SpectralField
    E_in: float
    grad_din_Hs: float
    constraint_residual: float
    compat_residual: float
    preset: str
    params: dict


def _low_mode_field(rng: np.random.Generator, grid: TorusGrid, components: int,
                    modes: int) -> np.ndarray:
    """|xi| <= modes 上的随机三角多项式，系数抽样与 N 无关"""
    L = 2 * modes + 1
    shape = (components,) + (L,) * grid.dim
    amplitudes = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    coeffs = np.zeros((components,) + grid.shape, dtype=complex)
    offsets = np.arange(-modes, modes + 1) % grid.N
    coeffs[np.ix_(range(components), *([offsets] * grid.dim))] = amplitudes
    coeffs = hermitian_part(coeffs, grid.dim) * grid.band_mask(modes)
    scale = np.max(np.abs(coeffs), initial=0.0)
    if scale > 0.0:
        coeffs = coeffs / scale
    return to_physical(SpectralField(grid, coeffs, modes))


def _twist_angle(grid: TorusGrid, m: float) -> np.ndarray:
    return m * grid.coordinates[0]


def _director_from_angle(phi: np.ndarray) -> np.ndarray:
    return np.stack([np.cos(phi), np.sin(phi), np.zeros_like(phi)])


def _preset_samples(preset: str, params: dict, grid: TorusGrid):
    """返回原始物理采样 (u, d, ddot)"""
    x = grid.coordinates
    zeros_u = np.zeros((grid.dim,) + grid.shape)
    zeros_d = np.zeros((DIRECTOR_COMPONENTS,) + grid.shape)

    if preset == 'twist_wave':
        return zeros_u, _director_from_angle(_twist_angle(grid, params['m'])), zeros_d

    if preset == 'perturbed_twist':
        a = params['amplitude']
        phi = _twist_angle(grid, params['m']) + a * np.sin(x[1])
        d = _director_from_angle(phi)
        ddot = a * np.cos(x[0]) * np.stack([-np.sin(phi), np.cos(phi), np.zeros_like(phi)])
        u = a * np.stack([np.sin(x[(i + 1) % grid.dim]) for i in range(grid.dim)])
        return u, d, ddot

    if preset == 'random_small':
        a = params['amplitude']
        rng = np.random.default_rng(params['seed'])
        modes = params['modes']
        e3 = np.zeros((DIRECTOR_COMPONENTS,) + grid.shape)
        e3[2] = 1.0
        d = e3 + a * _low_mode_field(rng, grid, DIRECTOR_COMPONENTS, modes)
        ddot = a * _low_mode_field(rng, grid, DIRECTOR_COMPONENTS, modes)
        u = a * _low_mode_field(rng, grid, grid.dim, modes)
        return u, d, ddot

    if preset == 'constant_director_shear':
        u = zeros_u.copy()
        u[0] = params['amplitude'] * np.sin(x[1])
        d = zeros_d.copy()
        d[2] = 1.0
        return u, d, zeros_d

    raise UnknownPreset(f"未知的初值预设: {preset}，可选 {sorted(PRESETS)}")


def normalize_director(d: np.ndarray) -> np.ndarray:
    length = np.sqrt(np.sum(d ** 2, axis=0))
    if np.min(length) <= MIN_DIRECTOR_LENGTH:
        raise NormalizationFailed(f"指向矢采样最小长度 {np.min(length):.3g}，无法归一化")
    return d / length


def tangential(ddot: np.ndarray, d: np.ndarray) -> np.ndarray:
    """ddot - (ddot . d) d"""
    return ddot - np.sum(ddot * d, axis=0) * d


def state_from_samples(grid: TorusGrid, K: float, u: np.ndarray, d: np.ndarray,
                       ddot: np.ndarray, t: float = 0.0) -> State:
    """不做归一化，直接把物理采样截断成状态；u 经过 Leray 投影"""
    u_hat = leray_project(to_spectral(u, grid, K, 'u'))
    return State(t, u_hat, to_spectral(d, grid, K, 'd'), to_spectral(ddot, grid, K, 'ddot'))


def constraint_deviation(d: SpectralField) -> float:
    """max | |d|^2 - 1 |"""
    values = to_physical(d)
    return float(np.max(np.abs(np.sum(values ** 2, axis=0) - 1.0)))


def compat_deviation(d: SpectralField, ddot: SpectralField) -> float:
    """max |d . ddot|"""
    return float(np.max(np.abs(np.sum(to_physical(d) * to_physical(ddot), axis=0))))


def initial_energy(u: SpectralField, d: SpectralField, ddot: SpectralField,
                   s_ord: int, rho1: float) -> float:
    """E_in = |u|_Hs^2 + rho1 |ddot|_Hs^2 + |grad d|_Hs^2"""
    return (sobolev_norm_sq(u, s_ord) + rho1 * sobolev_norm_sq(ddot, s_ord)
            + sobolev_norm_sq(gradient(d), s_ord))


def resolve_params(preset: str, params: Optional[dict] = None) -> dict:
    if preset not in PRESETS:
        raise UnknownPreset(f"未知的初值预设: {preset}，可选 {sorted(PRESETS)}")
    resolved = dict(PRESETS[preset])
    resolved.update({k: v for k, v in (params or {}).items() if k in resolved})
    return resolved


def build_initial_data(preset: str, params: Optional[dict], grid: TorusGrid, K: float,
                       s_ord: int, rho1: float) -> InitialData:
    """构造初值

    流程：原始采样 -> 归一化 d -> ddot 做切向投影 -> 在最大截断 N/2-1 上计算 E_in
    -> 截断到 K 并对 u 做 Leray 投影。
    """
    params = resolve_params(preset, params)
    u, d, ddot = _preset_samples(preset, params, grid)
    d = normalize_director(d)
    ddot = tangential(ddot, d)

    full = grid.max_cutoff
    u_full = leray_project(to_spectral(u, grid, full, 'u'))
    d_full = to_spectral(d, grid, full, 'd_in')
    ddot_full = to_spectral(ddot, grid, full, 'ddot')
    E_in = initial_energy(u_full, d_full, ddot_full, s_ord, rho1)
    grad_din_Hs = float(np.sqrt(sobolev_norm_sq(gradient(d_full), s_ord)))

    state = State(0.0, truncate(u_full, K).renamed('u'), truncate(d_full, K).renamed('d'),
                  truncate(ddot_full, K).renamed('ddot'))
    constraint = constraint_deviation(state.d)
    compat = compat_deviation(state.d, state.ddot)
    logger.debug(f"初值 {preset}{params}: E_in={E_in:.6g}, 约束偏差={constraint:.3g}, 相容偏差={compat:.3g}")
    return InitialData(state, d_full, E_in, grad_din_Hs, constraint, compat, preset, params)


def make_initial_data(preset: str, params: Optional[dict], grid: TorusGrid, K: float) -> State:
    """只返回截断后的初始状态"""
    return build_initial_data(preset, params, grid, K, s_ord=1, rho1=1.0).state
