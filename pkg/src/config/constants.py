"""常量配置文件"""
# 系数相关
PARODI_TOL = 1e-12
DEFAULT_C = 1.0        # C(n, s) 的替代值，没有具体数值
DEFAULT_C_PRIME = 1.0  # C'(n, s) 的替代值

# 网格与截断
MIN_GRID_N = 8
SUPPORTED_DIMS = (2, 3)
# FFT 友好的长度只含这些素因子
FFT_PRIMES = (2, 3, 5)

# 时间推进
SCHEMES = ('rk4_if', 'rk4_plain')
DEFAULT_SCHEME = 'rk4_if'
DEFAULT_CFL_SAFETY = 1.0

# 初值预设及其默认参数
PRESETS = {
    'twist_wave': {'m': 1},
    'perturbed_twist': {'m': 1, 'amplitude': 1e-2},
    'random_small': {'amplitude': 1e-2, 'seed': 0, 'modes': 2},
    'constant_director_shear': {'amplitude': 1.0},
}

# 单位球约束与相容条件的构造容差
CONSTRAINT_TOL = 1e-12
COMPAT_TOL = 1e-12
DIVERGENCE_TOL = 1e-12

# 运行配置的默认值，与 .env.example 保持一致
DEFAULTS = {
    'GRID_DIM': '2',
    'GRID_N': '64',
    'CUTOFF_K': '21',
    'SOBOLEV_ORDER': '4',
    'COEFFICIENTS_MU1': '0.0',
    'COEFFICIENTS_MU2': '0.0',
    'COEFFICIENTS_MU3': '0.0',
    'COEFFICIENTS_MU4': '1.0',
    'COEFFICIENTS_MU5': '0.0',
    'COEFFICIENTS_MU6': '0.0',
    'COEFFICIENTS_RHO1': '1.0',
    'COEFFICIENTS_ENFORCE_PARODI': 'true',
    'COEFFICIENTS_PARODI_TOL': str(PARODI_TOL),
    'STEPPER_DT': '1e-3',
    'STEPPER_SCHEME': DEFAULT_SCHEME,
    'STEPPER_T_END': '1.0',
    'STEPPER_CFL_SAFETY': str(DEFAULT_CFL_SAFETY),
    'PRESET_NAME': 'twist_wave',
    'PRESET_M': '1',
    'PRESET_AMPLITUDE': '1e-2',
    'PRESET_MODES': '2',
    'MONITOR_CADENCE': '10',
    'SNAPSHOT_CADENCE': '0',
    'OUTPUT_DIR': 'output',
    'RNG_SEED': '0',
    'CONSTANT_C': str(DEFAULT_C),
    'CONSTANT_C_PRIME': str(DEFAULT_C_PRIME),
    'SWEEP_MU4': '1.0,10.0',
    'SWEEP_AMPLITUDES': '1e-3,1e-2',
}

# 验收实验的参数与阈值
CHECK = {
    'stationary_K': 21,
    'stationary_dt': 1e-3,
    'stationary_t_end': 1.0,
    'stationary_tol': 1e-9,
    'stationary_constraint_tol': 1e-10,
    'propagation_K': (8, 16, 32),
    'propagation_amplitude': 0.05,
    'propagation_dt': 2e-3,
    'propagation_t_end': 0.5,
    'propagation_tol': 1e-6,
    'balance_K': 21,
    'balance_amplitude': 1e-2,
    'balance_dt': 1e-3,
    'balance_t_end': 1.0,
    'balance_tol': 1e-5,
    'mollifier_samples': 100,
    'mollifier_orders': (3, 4, 5),
    'mollifier_eps': (1 / 4, 1 / 8, 1 / 16),
    'leray_samples': 100,
    'heat_dt': 1e-2,
    'heat_tol': 1e-10,
    'richardson_min_order': 3.5,
}

# 监测 CSV 的输出精度
CSV_DIGITS = 17
SNAPSHOT_VERSION = 1
SNAPSHOT_MAGIC = 'LCFIELD'

# 手算可核对的系数样例（Parodi 关系均不强制）
REGIME_EXAMPLES = {
    'part3': {'mu1': 0.0, 'mu2': 0.0, 'mu3': 1.0, 'mu4': 101.0, 'mu5': 0.0, 'mu6': 0.0, 'rho1': 1.0},
    'eta': {'mu1': 0.0, 'mu2': 0.0, 'mu3': 1.0, 'mu4': 1.0, 'mu5': 0.0, 'mu6': 0.0, 'rho1': 2.0},
    'eps0': {'mu1': 0.0, 'mu2': 0.0, 'mu3': 1.0, 'mu4': 8.0, 'mu5': 1.0, 'mu6': 1.0, 'rho1': 1.0},
}
CHECK.update({
    'heat_K': 8,
    'heat_t_end': 1.0,
    'richardson_K': 8,
    'richardson_dt': 2e-2,
    'richardson_t_end': 0.4,
    'richardson_amplitude': 0.1,
    'contract_N': 48,
    'regime_tol': 1e-12,
    # 常指向附近的小初值，E_in 低于第三部分的阈值 eps1
    'decay_K': 8,
    'decay_amplitude': 5e-6,
    'decay_modes': 1,
    'decay_s_ord': 4,
    'decay_dt': 5e-3,
    'decay_t_end': 5.0,
    'decay_cadence': 10,
})
