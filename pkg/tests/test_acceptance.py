"""One test per acceptance criterion; each records a pass/fail summary line."""

import csv
import io
import itertools
import math
import time

import numpy as np
import pytest

from minlen import cli
from minlen.deformation import DeformationParameters, b_parameter, from_minimal_length
from minlen.flux import (
    azimuthal_flux_terms,
    cross_term_moment,
    divergence,
    flux_components,
    magnetic_moment_numeric,
)
from minlen.hydrogen import (
    QuantumNumbers,
    energy_level,
    expectation_inv_r_power,
    mean_kinetic,
    radial_overlap,
)
from minlen.moment import (
    comparison_report,
    magnetic_moment_closed,
    relativistic_fraction,
    relativistic_moment,
    varsigma,
)
from minlen.perturbation import (
    CorrectionExpansion,
    MatrixElementRequest,
    correction_expansion,
    coulomb_regularization_shift,
    first_order_energy_shift,
    full_matrix_element,
    matrix_element_V,
)
from minlen.units import ALPHA, BOHR_MAGNETON_AU

from conftest import DX_MIN, ETAS, moment_states, record_criterion, rel

PARAMETER_SETS = [(eta, dx) for eta in ETAS for dx in (0.0, DX_MIN)]


def _params(eta, dx):
    return from_minimal_length(dx, eta)


def test_criterion_1_headline_bound():
    value = varsigma(DX_MIN, 1.0, 2)
    err = rel(value, 3.57e-12)
    passed = err <= 5e-3
    record_criterion(1, "headline varsigma", passed, f"varsigma={value:.6e}, rel. dev. {err:.2e} <= 5e-3")
    assert passed


def test_criterion_2_figure1(capsys):
    start = time.perf_counter()
    code = cli.main(["figure1", "--n", "2", "3", "4", "--no-header-timestamp"])
    elapsed = time.perf_counter() - start
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    eta = np.array([float(r["eta"]) for r in rows])
    cols = {n: np.array([float(r[f"varsigma_n{n}"]) for r in rows]) for n in (2, 3, 4)}
    slopes = {n: np.polyfit(eta, cols[n], 1) for n in cols}
    linear = all(np.max(np.abs(np.polyval(slopes[n], eta) - cols[n])) <= 1e-12 * cols[n].max() for n in cols)
    ratios = [slopes[3][0] / slopes[2][0], slopes[4][0] / slopes[2][0]]
    ratio_ok = rel(ratios[0], 4 / 9) < 1e-12 and rel(ratios[1], 1 / 4) < 1e-12
    intercepts = all(abs(slopes[n][1]) <= 1e-12 * cols[n].max() for n in cols)
    endpoints = all(rel(cols[n][-1], 3.57e-12 * 4 / n**2) <= 5e-3 for n in cols)
    monotone = all(np.all(np.diff(cols[n]) > 0) for n in cols)
    decreasing = np.all(cols[2] > cols[3]) and np.all(cols[3] > cols[4])
    passed = code == 0 and eta[0] == pytest.approx(1 / 3) and eta[-1] == 1.0 and linear and ratio_ok
    passed = passed and intercepts and endpoints and monotone and decreasing and elapsed < 1.0
    record_criterion(
        2,
        "figure 1 curves",
        passed,
        f"slope ratios {ratios[0]:.12f} : {ratios[1]:.12f}, runtime {elapsed:.3f} s",
    )
    assert passed


def test_criterion_3_oracle_equivalence():
    start = time.perf_counter()
    worst, undeformed_worst = 0.0, 0.0
    states = moment_states(5)
    for (n, l, m), (eta, dx) in itertools.product(states, PARAMETER_SETS):
        p = _params(eta, dx)
        numeric = magnetic_moment_numeric(QuantumNumbers(n, l, m), p)
        worst = max(worst, rel(numeric, magnetic_moment_closed(n, m, p)))
        if dx == 0.0:
            undeformed_worst = max(undeformed_worst, rel(numeric, -m * BOHR_MAGNETON_AU))
    elapsed = time.perf_counter() - start
    passed = len(states) == 20 and worst <= 1e-8 and undeformed_worst <= 1e-8 and elapsed < 60
    record_criterion(
        3,
        "tube quadrature vs closed form",
        passed,
        f"{len(states) * len(PARAMETER_SETS)} cases, max rel. dev. {worst:.2e} <= 1e-8, "
        f"undeformed {undeformed_worst:.2e}, runtime {elapsed:.1f} s",
    )
    assert passed


def test_criterion_4_cross_term_vanishing():
    start = time.perf_counter()
    worst = 0.0
    cases = 0
    for n in range(2, 5):
        for l in range(1, n):  # noqa: E741
            for eta in ETAS:
                p = _params(eta, DX_MIN)
                exp = correction_expansion(QuantumNumbers(n, l, 1), p, n_max=8)
                for m in range(1, l + 1):
                    q = QuantumNumbers(n, l, m)
                    # coefficients do not depend on m
                    shifted = CorrectionExpansion(q, exp.coefficients, exp.n_max)
                    worst = max(worst, abs(cross_term_moment(q, p, shifted)) / BOHR_MAGNETON_AU)
                    cases += 1
    elapsed = time.perf_counter() - start
    passed = worst < 1e-9 and elapsed < 60
    record_criterion(
        4, "wave-function correction does not contribute", passed,
        f"{cases} cases, max |mu_cross| {worst:.2e} mu_B < 1e-9, runtime {elapsed:.1f} s",
    )
    assert passed


def test_criterion_5_flux_structure():
    rng = np.random.default_rng(2024)
    worst_div, worst_comp = 0.0, 0.0
    cases = 0
    for (n, l, m), (eta, dx) in itertools.product(moment_states(5), PARAMETER_SETS):
        q = QuantumNumbers(n, l, m)
        p = _params(eta, dx)
        correction = correction_expansion(q, p, n_max=8) if not p.is_undeformed else None
        r = rng.uniform(0.1, 3.0 * n * n, 1000)
        theta = rng.uniform(0.01, math.pi - 0.01, 1000)
        phi = rng.uniform(0.0, 2 * math.pi, 1000)
        j_r, j_t, _ = flux_components(q, p, correction, r, theta, phi)
        worst_comp = max(worst_comp, float(np.max(np.abs(j_r))), float(np.max(np.abs(j_t))))
        div = divergence(q, p, r, theta, phi, 1e-4, correction)
        worst_div = max(worst_div, float(np.max(np.abs(div))))
        cases += 1
    passed = worst_comp == 0.0 and worst_div < 1e-12
    record_criterion(
        5, "flux structure", passed,
        f"{cases} state/parameter cases x 1000 points, max |j_r|,|j_theta| {worst_comp:.1e}, "
        f"max |div j| {worst_div:.2e} < 1e-12",
    )
    assert passed


def test_criterion_6_commutative_case():
    p = from_minimal_length(DX_MIN, 1 / 3)
    structural = p.coulomb_coefficient == 0.0 and b_parameter(p) == 0.0
    r = np.geomspace(1e-3, 80, 400)[:, None]
    theta = np.linspace(1e-3, math.pi - 1e-3, 200)[None, :]
    coulomb_zero = all(
        np.all(azimuthal_flux_terms(QuantumNumbers(n, l, m), p, None, r, theta)["coulomb"] == 0.0)
        for n, l, m in moment_states(5)
    )
    # V reduces to beta' p^4 / 2: 2 beta' (E E' delta + (E + E') <1/r> + <1/r^2>)
    worst = 0.0
    shift_zero = True
    for l in range(0, 4):  # noqa: E741
        for n in range(l + 1, 7):
            for n2 in range(l + 1, 7):
                shift_zero &= coulomb_regularization_shift(n, n2, l, b_parameter(p)) == 0.0
                e, e2 = energy_level(n), energy_level(n2)
                inv_r = radial_overlap(n, n2, l, lambda x: 1 / x)[0]
                inv_r2 = radial_overlap(n, n2, l, lambda x: 1 / (x * x))[0]
                kinetic = 2 * p.beta_prime * (e * e2 * (n == n2) + (e + e2) * inv_r + inv_r2)
                worst = max(worst, rel(full_matrix_element(n, n2, l, p), kinetic))
    closed_kinetic_only = all(
        first_order_energy_shift(n, l, p)
        == 2 * p.beta_prime * (
            energy_level(n) ** 2
            + 2 * energy_level(n) * expectation_inv_r_power(n, l, 1)
            + expectation_inv_r_power(n, l, 2)
        )
        for n in range(2, 8)
        for l in range(1, n)  # noqa: E741
    )
    passed = structural and coulomb_zero and shift_zero and closed_kinetic_only and worst < 1e-10
    record_criterion(
        6, "commutative special case", passed,
        f"2beta-beta'={p.coulomb_coefficient}, Coulomb flux term identically 0: {coulomb_zero}, "
        f"V vs kinetic-only max rel. dev. {worst:.1e}",
    )
    assert passed


def test_criterion_7_relativistic_comparison():
    p = from_minimal_length(DX_MIN, 1.0)
    signs_ok = True
    for n in range(2, 11):
        for m in range(1, n):
            mu0 = -m * BOHR_MAGNETON_AU
            deformed = (magnetic_moment_closed(n, m, p) - mu0) / mu0
            relativistic = (relativistic_moment(n, m) - mu0) / mu0
            signs_ok &= deformed > 0 > relativistic
    frac_err = rel(relativistic_fraction(2), ALPHA**2 / 8)
    report = comparison_report(2, 1, p)
    ratio_err = rel(report.ratio, 1.43e-4)
    passed = (
        signs_ok
        and frac_err <= 1e-10
        and ratio_err <= 5e-3
        and report.verdict == "below measurement precision"
        and report.signs == {"deformation": "+", "relativistic": "-"}
    )
    record_criterion(
        7, "relativistic comparison", passed,
        f"alpha^2/8 rel. dev. {frac_err:.1e}, ratio {report.ratio:.4e}, verdict '{report.verdict}'",
    )
    assert passed


def test_criterion_8_hydrogen_suite():
    worst = {"norm": 0.0, "orth": 0.0, "virial": 0.0, "inv_r": 0.0}
    for n in range(1, 9):
        for l in range(n):  # noqa: E741
            worst["norm"] = max(worst["norm"], abs(radial_overlap(n, n, l)[0] - 1))
            for n2 in range(l + 1, 9):
                if n2 != n:
                    worst["orth"] = max(worst["orth"], abs(radial_overlap(n, n2, l)[0]))
            potential = -radial_overlap(n, n, l, lambda x: 1 / x)[0]
            kinetic = energy_level(n) - potential
            worst["virial"] = max(
                worst["virial"], rel(kinetic, mean_kinetic(n)), rel(potential, 2 * energy_level(n))
            )
            for k in (1, 2, 3):
                if k == 3 and l == 0:
                    continue
                value = radial_overlap(n, n, l, lambda x, k=k: x ** (-k))[0]
                worst["inv_r"] = max(worst["inv_r"], rel(value, expectation_inv_r_power(n, l, k)))
    passed = all(v <= 1e-9 for v in worst.values())
    record_criterion(
        8, "hydrogen foundation", passed, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + " <= 1e-9"
    )
    assert passed


def test_criterion_9_perturbation_consistency():
    params = [_params(eta, DX_MIN) for eta in ETAS]
    cache = {}

    def V(n, n2, l, p):  # noqa: E741
        key = (n, n2, l, p)
        if key not in cache:
            cache[key] = matrix_element_V(MatrixElementRequest(n, n2, l, p))
        return cache[key]

    sym = lin = route = 0.0
    for p in params:
        for l in range(0, 8):  # noqa: E741
            for n in range(l + 1, 9):
                for n2 in range(n, 9):
                    a, b = V(n, n2, l, p), V(n2, n, l, p)
                    sym = max(sym, abs(a - b) / max(abs(a), abs(b)))
                    # for s-states the regularized Coulomb part is ~ b^2 ln(1/b), not linear
                    if l >= 1 and n2 <= n + 2:
                        doubled = matrix_element_V(MatrixElementRequest(n, n2, l, p.scaled(2.0)))
                        lin = max(lin, rel(doubled, 2 * a))
                if l >= 1:
                    route = max(route, rel(full_matrix_element(n, n, l, p), first_order_energy_shift(n, l, p)))
    passed = sym <= 1e-10 and lin <= 1e-10 and route <= 1e-6
    record_criterion(
        9, "perturbation consistency", passed,
        f"symmetry {sym:.1e} <= 1e-10, linearity (l >= 1) {lin:.1e} <= 1e-10, two-route {route:.1e} <= 1e-6",
    )
    assert passed


def test_undeformed_parameters_are_the_zero_deformation():
    assert _params(0.5, 0.0) == DeformationParameters()
