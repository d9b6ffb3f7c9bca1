"""傅里叶算子：变换、磨光、Leray 投影、导数与 Sobolev 范数"""

import numpy as np

from .field import SpectralField
from .grid import TorusGrid
from ..utils.errors import ComponentMismatch, CutoffMismatch, InvalidOrder, ShapeMismatch


def _reflect(coeffs: np.ndarray, dim: int) -> np.ndarray:
    """返回 c(-xi)"""
    axes = tuple(range(-dim, 0))
    return np.roll(np.flip(coeffs, axis=axes), 1, axis=axes)


def hermitian_part(coeffs: np.ndarray, dim: int) -> np.ndarray:
    """(c(xi) + conj(c(-xi))) / 2，结果精确满足 Hermite 对称"""
    return 0.5 * (coeffs + np.conj(_reflect(coeffs, dim)))


def hermitian_defect(f: SpectralField) -> float:
    """max |c(xi) - conj(c(-xi))|"""
    return float(np.max(np.abs(f.coeffs - np.conj(_reflect(f.coeffs, f.grid.dim))), initial=0.0))


def to_physical(f: SpectralField) -> np.ndarray:
    """网格点上的实值采样"""
    grid = f.grid
    values = np.fft.ifftn(f.coeffs, axes=grid.axes) * grid.N ** grid.dim
    return np.ascontiguousarray(values.real)


def to_spectral(values: np.ndarray, grid: TorusGrid, cutoff: float, name: str = '') -> SpectralField:
    """网格采样 -> 截断到 |xi| <= cutoff 的谱场"""
    values = np.asarray(values, dtype=float)
    if values.ndim < grid.dim or values.shape[-grid.dim:] != grid.shape:
        raise ShapeMismatch(f"采样形状 {values.shape} 与网格 {grid.shape} 不一致")
    coeffs = np.fft.fftn(values, axes=grid.axes) / grid.N ** grid.dim
    coeffs = hermitian_part(coeffs, grid.dim) * grid.band_mask(cutoff)
    return SpectralField(grid, coeffs, cutoff, name)


def truncate(f: SpectralField, radius: float) -> SpectralField:
    """保留 |xi| <= radius 的模式"""
    radius = min(f.cutoff, radius)
    return SpectralField(f.grid, f.coeffs * f.grid.band_mask(radius), radius, f.name)


def mollify(f: SpectralField, eps: float) -> SpectralField:
    """磨光算子 J_eps：锐截断 |xi| <= 1/eps，是 L2 正交投影"""
    if eps <= 0.0:
        raise CutoffMismatch(f"磨光参数必须为正，当前 eps={eps}")
    return truncate(f, 1.0 / eps)


def leray_project(u: SpectralField) -> SpectralField:
    """Leray 投影：u_hat - xi (xi . u_hat) / |xi|^2，零模不变"""
    grid = u.grid
    if u.component_shape != (grid.dim,):
        raise ComponentMismatch(f"Leray 投影需要 {grid.dim} 维向量场，当前 {u.component_shape}")
    k = grid.wavenumbers
    projection = np.sum(k * u.coeffs, axis=0) / grid.k2_safe
    return u.with_coeffs(u.coeffs - k * projection)


def gradient(f: SpectralField) -> SpectralField:
    """梯度，结果分量 [i, ...] = d_i f[...]"""
    grid = f.grid
    k = grid.wavenumbers.reshape((grid.dim,) + (1,) * len(f.component_shape) + grid.shape)
    return f.with_coeffs(1j * k * f.coeffs[np.newaxis])


def jacobian(u: SpectralField) -> SpectralField:
    """速度梯度 (grad u)_{ij} = d_j u_i"""
    if len(u.component_shape) != 1:
        raise ComponentMismatch(f"jacobian 需要向量场，当前 {u.component_shape}")
    return u.with_coeffs(np.swapaxes(gradient(u).coeffs, 0, 1))


def divergence(v: SpectralField) -> SpectralField:
    """散度，沿第一个分量指标收缩：(div S)_i = d_j S_{ji}"""
    grid = v.grid
    shape = v.component_shape
    if not shape or shape[0] != grid.dim:
        raise ComponentMismatch(f"散度需要首个分量长度为 {grid.dim}，当前 {shape}")
    k = grid.wavenumbers.reshape((grid.dim,) + (1,) * (len(shape) - 1) + grid.shape)
    return v.with_coeffs(np.sum(1j * k * v.coeffs, axis=0))


def laplacian(f: SpectralField) -> SpectralField:
    return f.with_coeffs(-f.grid.k2 * f.coeffs)


def _mode_energy(f: SpectralField) -> np.ndarray:
    """每个模式上所有分量的 |f_hat|^2 之和"""
    power = np.abs(f.coeffs) ** 2
    if f.component_shape:
        power = power.reshape((-1,) + f.grid.shape).sum(axis=0)
    return power


def derivative_norm_sq(f: SpectralField, k: int) -> float:
    """|grad^k f|_L2^2"""
    if k < 0:
        raise InvalidOrder(f"导数阶数不能为负，当前 {k}")
    weight = f.grid.k2 ** k
    return float(f.grid.volume * np.sum(weight * _mode_energy(f)))


def sobolev_weight(grid: TorusGrid, s: int, homogeneous: bool = False) -> np.ndarray:
    """w(xi) = sum_{k=k0}^{s} |xi|^{2k}"""
    k0 = 1 if homogeneous else 0
    if s < k0:
        raise InvalidOrder(f"{'齐次' if homogeneous else '非齐次'} Sobolev 阶数 s={s} 不合法")
    weight = np.zeros(grid.shape)
    power = grid.k2 ** k0
    for _ in range(k0, s + 1):
        weight += power
        power = power * grid.k2
    return weight


def sobolev_norm_sq(f: SpectralField, s: int, homogeneous: bool = False) -> float:
    """|f|_{H^s}^2 = sum_{k=k0}^{s} |grad^k f|_L2^2（齐次时 k0 = 1）"""
    weight = sobolev_weight(f.grid, s, homogeneous)
    return float(f.grid.volume * np.sum(weight * _mode_energy(f)))


def inner(f: SpectralField, g: SpectralField) -> float:
    """L2 内积 <f, g>，对所有分量求和"""
    if f.coeffs.shape != g.coeffs.shape:
        raise ShapeMismatch(f"内积两侧形状不一致: {f.coeffs.shape} vs {g.coeffs.shape}")
    return float(f.grid.volume * np.sum(f.coeffs * np.conj(g.coeffs)).real)


def pad_coeffs(coeffs: np.ndarray, dim: int, M: int) -> np.ndarray:
    """把 N 网格的系数零填充到 M 网格"""
    N = coeffs.shape[-1]
    if M == N:
        return coeffs
    axes = tuple(range(-dim, 0))
    shifted = np.fft.fftshift(coeffs, axes=axes)
    out = np.zeros(coeffs.shape[:-dim] + (M,) * dim, dtype=complex)
    offset = M // 2 - N // 2
    out[(Ellipsis,) + (slice(offset, offset + N),) * dim] = shifted
    return np.fft.ifftshift(out, axes=axes)


def unpad_coeffs(coeffs: np.ndarray, dim: int, N: int) -> np.ndarray:
    """pad_coeffs 的逆：丢弃 N 网格不能表示的模式"""
    M = coeffs.shape[-1]
    if M == N:
        return coeffs
    axes = tuple(range(-dim, 0))
    shifted = np.fft.fftshift(coeffs, axes=axes)
    offset = M // 2 - N // 2
    block = shifted[(Ellipsis,) + (slice(offset, offset + N),) * dim]
    return np.fft.ifftshift(block, axes=axes)


def physical_on(f: SpectralField, M: int) -> np.ndarray:
    """在 M 点网格上求值（M >= N）"""
    dim = f.grid.dim
    values = np.fft.ifftn(pad_coeffs(f.coeffs, dim, M), axes=f.grid.axes) * M ** dim
    return np.ascontiguousarray(values.real)


def linf_norm(f: SpectralField, oversample: int = 1) -> float:
    """网格上的最大模（向量取欧氏长度，张量取 Frobenius 范数）"""
    values = physical_on(f, oversample * f.grid.N)
    if f.component_shape:
        values = np.sqrt(np.sum(values.reshape((-1,) + values.shape[-f.grid.dim:]) ** 2, axis=0))
    return float(np.max(np.abs(values)))


def random_field(grid: TorusGrid, component_shape, cutoff: float, rng: np.random.Generator,
                 amplitude: float = 1.0, name: str = '') -> SpectralField:
    """随机带限场，谱系数在 |xi| <= cutoff 内独立同分布"""
    shape = tuple(component_shape) + grid.shape
    noise = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    coeffs = hermitian_part(noise, grid.dim) * grid.band_mask(cutoff)
    scale = np.max(np.abs(coeffs), initial=0.0)
    if scale > 0.0:
        coeffs = coeffs * (amplitude / scale)
    return SpectralField(grid, coeffs, cutoff, name)
