"""验收实验套件"""

import asyncio
import sys
from typing import Dict, List

import numpy as np

from .base import BaseCommand
from ..coefficients import (
    build_coefficients,
    cap_q,
    energy_y,
    epsilon0,
    epsilon1,
    regime_classify,
    wave_map_coefficients,
)
from ..config.constants import CHECK, REGIME_EXAMPLES
from ..diagnostics import (
    balance_experiment,
    constraint_propagation_experiment,
    decay_experiment,
    grid_for_cutoff,
    heat_decay_experiment,
    initial_energy_check,
    leray_contract,
    mollifier_contract,
    richardson,
    stationary_experiment,
)
from ..dynamics import build_initial_data
from ..spectral import TorusGrid


def example_coefficients(name: str):
    return build_coefficients(enforce_parodi=False, **REGIME_EXAMPLES[name])


def _close(value: float, expected: float, tol: float) -> bool:
    return abs(value - expected) <= tol * max(abs(expected), 1e-300)


class CheckCommand(BaseCommand):
    """逐项运行验收实验，任何一项失败则以非零状态退出"""

    def __init__(self, config=None, items: List[str] = None):
        super().__init__(config)
        self.items = items
        self.rows: List[Dict[str, object]] = []

    def _record(self, name: str, value, threshold, passed: bool):
        self.rows.append({'item': name, 'value': value, 'threshold': threshold, 'passed': bool(passed)})
        if passed:
            self._log_info(f"[通过] {name}", {'value': value, 'threshold': threshold})
        else:
            self._log_warning(f"[失败] {name}: value={value}, threshold={threshold}")

    def check_stationary(self):
        c = example_coefficients('part3')
        report = stationary_experiment(c, CHECK['stationary_K'], CHECK['stationary_dt'], CHECK['stationary_t_end'])
        self._record('twist_stationary_change', report.max_change, CHECK['stationary_tol'],
                     report.max_change <= CHECK['stationary_tol'] and report.stop_reason == 'completed')
        self._record('twist_stationary_constraint', report.constraint_dev, CHECK['stationary_constraint_tol'],
                     report.constraint_dev <= CHECK['stationary_constraint_tol'])

    def check_propagation(self):
        c = wave_map_coefficients(1.0, 1.0)
        table = constraint_propagation_experiment(
            'random_small', {'amplitude': CHECK['propagation_amplitude'], 'seed': self.config.seed},
            CHECK['propagation_K'], CHECK['propagation_dt'], CHECK['propagation_t_end'], c,
            tol=CHECK['propagation_tol'])
        deviations = [r.constraint_dev for r in table.rows]
        self._record('constraint_propagation_trend', deviations, 'strictly decreasing in K',
                     table.strictly_decreasing and table.non_increasing and table.compat_non_increasing)
        self._record('constraint_propagation_final', deviations[-1], table.tol, table.passed)

    def check_balance(self):
        c = wave_map_coefficients(1.0, 1.0)
        K = CHECK['balance_K']
        initial = build_initial_data('perturbed_twist', {'m': 1, 'amplitude': CHECK['balance_amplitude']},
                                     grid_for_cutoff(2, K), K, self.config.s_ord, c.rho1)
        report = balance_experiment(c, initial, self.config.s_ord, CHECK['balance_dt'], CHECK['balance_t_end'])
        self._record('dissipation_balance', report.max_residual, CHECK['balance_tol'],
                     report.max_residual <= CHECK['balance_tol'] and report.stop_reason == 'completed')
        self._record('initial_energy_bound', initial.E_in, 'E_eps(0) <= E_in',
                     initial_energy_check(initial, self.config.s_ord, c.rho1))

    def check_mollifier(self):
        rng = np.random.default_rng(self.config.seed)
        grid = TorusGrid(2, CHECK['contract_N'])
        report = mollifier_contract(grid, CHECK['mollifier_samples'], CHECK['mollifier_orders'],
                                    CHECK['mollifier_eps'], rng)
        self._record('mollifier_idempotence', report.idempotence, 1e-15, report.idempotence <= 1e-15)
        self._record('mollifier_bound_ratio', report.worst_ratio, 1.0, report.worst_ratio <= 1.0)

    def check_leray(self):
        rng = np.random.default_rng(self.config.seed + 1)
        report = leray_contract(TorusGrid(2, CHECK['contract_N']), CHECK['leray_samples'], rng)
        self._record('leray_contract', max(report.max_divergence, report.max_gradient_residual, report.idempotence),
                     1e-12, report.passed)

    def check_heat(self):
        c = wave_map_coefficients(1.0, 1.0)
        report = heat_decay_experiment(c, CHECK['heat_K'], CHECK['heat_dt'], CHECK['heat_t_end'])
        self._record('heat_decay', report.relative_error, CHECK['heat_tol'],
                     report.relative_error <= CHECK['heat_tol'])

    def check_decay(self):
        c = example_coefficients('part3')
        K, s_ord = CHECK['decay_K'], CHECK['decay_s_ord']
        params = {'amplitude': CHECK['decay_amplitude'], 'modes': CHECK['decay_modes'], 'seed': self.config.seed}
        initial = build_initial_data('random_small', params, grid_for_cutoff(2, K), K, s_ord, c.rho1)
        eps1 = epsilon1(c, self.config.C, self.config.C_prime)
        self._record('decay_small_data', initial.E_in, eps1, initial.E_in <= eps1)
        report = decay_experiment(c, initial, s_ord, CHECK['decay_dt'], CHECK['decay_t_end'],
                                  cadence=CHECK['decay_cadence'], C=self.config.C)
        self._record('decay_monotone', report.first_increase, 'non-increasing',
                     report.monotone and report.stop_reason == 'completed')
        self._record('decay_integral', report.dissipation_integral, report.integral_bound, report.integral_ok)

    def check_richardson(self):
        c = wave_map_coefficients(1.0, 1.0)
        K = CHECK['richardson_K']
        initial = build_initial_data('perturbed_twist', {'m': 1, 'amplitude': CHECK['richardson_amplitude']},
                                     grid_for_cutoff(2, K), K, self.config.s_ord, c.rho1)
        report = richardson(initial, c, CHECK['richardson_dt'], CHECK['richardson_t_end'])
        self._record('temporal_order', report.order, CHECK['richardson_min_order'],
                     report.order >= CHECK['richardson_min_order'])

    def check_regime(self):
        tol = CHECK['regime_tol']
        part3 = regime_classify(example_coefficients('part3'))
        eta = regime_classify(example_coefficients('eta'))
        eps0_c = example_coefficients('eps0')
        values = {
            'beta': (eps0_c.beta, 4.0),
            'eta_rho1_2': (eta.eta, 0.25),
            'alpha_part3': (part3.alpha, 1.0),
            'theta_part3': (part3.theta, 0.5),
            'Y(1)': (energy_y(1.0), 0.75),
            'eps0': (epsilon0(eps0_c, 1.0), 256.0 / 192.0 ** 4),
        }
        for name, (value, expected) in values.items():
            self._record(f"regime_{name}", value, expected, _close(value, expected, tol))
        wave = wave_map_coefficients(1.0, 1.0)
        q = cap_q(wave, 1.0, 0.0)
        self._record('wave_map_Q_vanishes', q, 0.0, q == 0.0)
        self._record('part3_applies', part3.part3_applies, True, part3.part3_applies)

    ITEMS = ('regime', 'mollifier', 'leray', 'heat', 'stationary', 'balance', 'propagation',
             'decay', 'richardson')

    async def execute(self):
        try:
            for item in self.items or self.ITEMS:
                self._log_info(f"\n验收项: {item}")
                await asyncio.to_thread(getattr(self, f"check_{item}"))
        except Exception as e:
            self._handle_error(e, "验收实验运行失败")

        self.handler.write_summary(self.rows, 'check.txt')
        failed = [row['item'] for row in self.rows if not row['passed']]
        if failed:
            self._log_warning(f"验收未通过: {failed}")
            sys.exit(1)
        self._log_info(f"\n全部 {len(self.rows)} 项验收通过")
        return self.rows
