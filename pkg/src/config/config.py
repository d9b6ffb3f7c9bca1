"""配置模块"""

import os
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Optional

from dotenv import dotenv_values, load_dotenv

from .constants import DEFAULTS, PRESETS, SCHEMES, SUPPORTED_DIMS
from ..utils.errors import ConfigInvalid


def _parse(mapping: Mapping[str, Optional[str]], key: str, kind):
    raw = mapping.get(key)
    if raw is None or str(raw).strip() == '':
        raw = DEFAULTS[key]
    raw = str(raw).strip()
    try:
        if kind is bool:
            if raw.lower() not in ('true', 'false', '1', '0', 'yes', 'no'):
                raise ValueError(raw)
            return raw.lower() in ('true', '1', 'yes')
        if kind is list:
            return [float(x) for x in raw.split(',') if x.strip()]
        return kind(raw)
    except ValueError:
        raise ConfigInvalid(key, f"无法解析为 {kind.__name__}: {raw!r}")


@dataclass
class RunConfig:
    """一次运行的全部配置，键名与 .env.example 对应"""
    # 网格
    dim: int = 2
    N: int = 64
    K: int = 21
    s_ord: int = 4

    # 系数
    mu1: float = 0.0
    mu2: float = 0.0
    mu3: float = 0.0
    mu4: float = 1.0
    mu5: float = 0.0
    mu6: float = 0.0
    rho1: float = 1.0
    enforce_parodi: bool = True
    parodi_tol: float = 1e-12

    # 时间推进
    dt: float = 1e-3
    scheme: str = 'rk4_if'
    t_end: float = 1.0
    cfl_safety: float = 1.0

    # 初值
    preset: str = 'twist_wave'
    preset_m: int = 1
    preset_amplitude: float = 1e-2
    preset_modes: int = 2

    # 输出
    monitor_cadence: int = 10
    snapshot_cadence: int = 0
    output_dir: str = 'output'
    seed: int = 0

    # 未给出的常数 C(n, s), C'(n, s) 的替代值
    C: float = 1.0
    C_prime: float = 1.0

    # 扫描
    sweep_mu4: List[float] = field(default_factory=lambda: [1.0, 10.0])
    sweep_amplitudes: List[float] = field(default_factory=lambda: [1e-3, 1e-2])

    def __post_init__(self):
        self.validate()

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Optional[str]]) -> 'RunConfig':
        return cls(
            dim=_parse(mapping, 'GRID_DIM', int),
            N=_parse(mapping, 'GRID_N', int),
            K=_parse(mapping, 'CUTOFF_K', int),
            s_ord=_parse(mapping, 'SOBOLEV_ORDER', int),
            mu1=_parse(mapping, 'COEFFICIENTS_MU1', float),
            mu2=_parse(mapping, 'COEFFICIENTS_MU2', float),
            mu3=_parse(mapping, 'COEFFICIENTS_MU3', float),
            mu4=_parse(mapping, 'COEFFICIENTS_MU4', float),
            mu5=_parse(mapping, 'COEFFICIENTS_MU5', float),
            mu6=_parse(mapping, 'COEFFICIENTS_MU6', float),
            rho1=_parse(mapping, 'COEFFICIENTS_RHO1', float),
            enforce_parodi=_parse(mapping, 'COEFFICIENTS_ENFORCE_PARODI', bool),
            parodi_tol=_parse(mapping, 'COEFFICIENTS_PARODI_TOL', float),
            dt=_parse(mapping, 'STEPPER_DT', float),
            scheme=_parse(mapping, 'STEPPER_SCHEME', str),
            t_end=_parse(mapping, 'STEPPER_T_END', float),
            cfl_safety=_parse(mapping, 'STEPPER_CFL_SAFETY', float),
            preset=_parse(mapping, 'PRESET_NAME', str),
            preset_m=_parse(mapping, 'PRESET_M', int),
            preset_amplitude=_parse(mapping, 'PRESET_AMPLITUDE', float),
            preset_modes=_parse(mapping, 'PRESET_MODES', int),
            monitor_cadence=_parse(mapping, 'MONITOR_CADENCE', int),
            snapshot_cadence=_parse(mapping, 'SNAPSHOT_CADENCE', int),
            output_dir=_parse(mapping, 'OUTPUT_DIR', str),
            seed=_parse(mapping, 'RNG_SEED', int),
            C=_parse(mapping, 'CONSTANT_C', float),
            C_prime=_parse(mapping, 'CONSTANT_C_PRIME', float),
            sweep_mu4=_parse(mapping, 'SWEEP_MU4', list),
            sweep_amplitudes=_parse(mapping, 'SWEEP_AMPLITUDES', list),
        )

    @classmethod
    def from_file(cls, path: str) -> 'RunConfig':
        """从 KEY=VALUE 格式的配置文件加载，未给出的键取默认值"""
        if not os.path.isfile(path):
            raise ConfigInvalid('config', f"配置文件不存在: {path}")
        return cls.from_mapping(dotenv_values(path))

    @classmethod
    def from_env(cls) -> 'RunConfig':
        """从环境变量（及当前目录的 .env）加载配置"""
        load_dotenv()
        return cls.from_mapping({key: os.getenv(key) for key in DEFAULTS})

    def validate(self):
        if self.dim not in SUPPORTED_DIMS:
            raise ConfigInvalid('GRID_DIM', f"只支持 {SUPPORTED_DIMS}，当前 {self.dim}")
        if self.N < 8 or self.N % 2:
            raise ConfigInvalid('GRID_N', f"必须为不小于 8 的偶数，当前 {self.N}")
        if self.K < 1 or self.K > self.N // 2 - 1:
            raise ConfigInvalid('CUTOFF_K', f"必须满足 1 <= K <= N/2 - 1 = {self.N // 2 - 1}，当前 {self.K}")
        if self.N < 3 * self.K + 1:
            raise ConfigInvalid('GRID_N', f"去混叠要求 N >= 3K + 1 = {3 * self.K + 1}，当前 {self.N}")
        if not self.s_ord > self.dim / 2 + 2:
            raise ConfigInvalid('SOBOLEV_ORDER', f"要求 s > dim/2 + 2 = {self.dim / 2 + 2}，当前 {self.s_ord}")
        if self.scheme not in SCHEMES:
            raise ConfigInvalid('STEPPER_SCHEME', f"可选 {SCHEMES}，当前 {self.scheme!r}")
        if not self.dt > 0.0:
            raise ConfigInvalid('STEPPER_DT', f"必须为正，当前 {self.dt}")
        if self.t_end < 0.0:
            raise ConfigInvalid('STEPPER_T_END', f"不能为负，当前 {self.t_end}")
        if self.preset not in PRESETS:
            raise ConfigInvalid('PRESET_NAME', f"可选 {sorted(PRESETS)}，当前 {self.preset!r}")
        if self.C <= 0.0 or self.C_prime <= 0.0:
            raise ConfigInvalid('CONSTANT_C', f"C 与 C' 必须为正，当前 {self.C}, {self.C_prime}")
        if self.monitor_cadence < 0 or self.snapshot_cadence < 0:
            raise ConfigInvalid('MONITOR_CADENCE', "采样间隔不能为负")

    @property
    def eps(self) -> float:
        """与截断 K 对应的磨光参数"""
        return 1.0 / self.K

    def with_overrides(self, **overrides) -> 'RunConfig':
        """命令行参数覆盖，值为 None 的项忽略"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def grid(self):
        from ..spectral import TorusGrid
        return TorusGrid(self.dim, self.N)

    def coefficients(self, **overrides):
        from ..coefficients import build_coefficients
        values = {
            'mu1': self.mu1, 'mu2': self.mu2, 'mu3': self.mu3, 'mu4': self.mu4,
            'mu5': self.mu5, 'mu6': self.mu6, 'rho1': self.rho1,
        }
        values.update(overrides)
        return build_coefficients(enforce_parodi=self.enforce_parodi, parodi_tol=self.parodi_tol, **values)

    def stepper(self):
        from ..integrator import StepperConfig
        return StepperConfig(dt=self.dt, t_end=self.t_end, scheme=self.scheme,
                             cfl_safety=self.cfl_safety, cadence=self.monitor_cadence,
                             snapshot_cadence=self.snapshot_cadence)

    def preset_params(self, **overrides) -> Dict[str, float]:
        params = {'m': self.preset_m, 'amplitude': self.preset_amplitude,
                  'seed': self.seed, 'modes': self.preset_modes}
        params.update(overrides)
        return params

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}
