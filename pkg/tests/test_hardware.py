import math

import pytest

from cournot_energy import (
    DomainError,
    EnergyKind,
    HardwareConstants,
    HardwareKind,
    NoSignChange,
    TwoGroupParams,
    algorithm_energy,
    asymptotic_quantities,
    critical_scale,
    hardware_model,
    power,
)
from cournot_energy.hardware import exact_quantities, scale_energies

FIG3 = TwoGroupParams(10, 10, 1000, 1000, 2, 2, 2, 2, 0.1)


@pytest.mark.parametrize("kind, energy_kind, beta, exponent", [
    (HardwareKind.RYDBERG, EnergyKind.LOG_POWER, 1.5e4, 2),
    (HardwareKind.ION_TRAP, EnergyKind.LOG_POWER, 0.0175, 2),
    (HardwareKind.CLASSICAL_HPC, EnergyKind.POWER_LAW, 4e-10, 1),
])
def test_hardware_model(kind, energy_kind, beta, exponent):
    m = hardware_model(kind)
    assert (m.kind, m.beta, m.exponent) == (energy_kind, beta, exponent)


@pytest.mark.parametrize("kind, N, joules", [
    ("rydberg", 2.0**10, 1.5e6),
    ("classical_hpc", 2.0**10, 4.096e-7),
    ("ion_trap", 2.0**40, 28.0),
])
def test_algorithm_energy(kind, N, joules):
    assert algorithm_energy(kind, N) == pytest.approx(joules, rel=1e-13)


@pytest.mark.parametrize("kind", list(HardwareKind))
@pytest.mark.parametrize("N", [1.5, 17.0, 2.0**30, 1e18])
def test_algorithm_energy_is_power(kind, N):
    assert algorithm_energy(kind, N) == power(hardware_model(kind), N)


@pytest.mark.parametrize("kind, N", [("rydberg", 1.0), ("ion_trap", 0.5), ("classical_hpc", 0.0)])
def test_algorithm_energy_domain(kind, N):
    with pytest.raises(DomainError):
        algorithm_energy(kind, N)


def test_constants_override():
    c = HardwareConstants(beta_ion=1.0, mu=1.0)
    assert algorithm_energy("ion_trap", 2.0**5, c) == pytest.approx(5.0)


def test_ion_crossing():
    a = critical_scale(FIG3, "ion_trap", "classical_hpc", 1e6, 1e16)
    assert a / 3 <= 1.3e12 <= a * 3
    e_q, e_c = scale_energies(FIG3, "ion_trap", "classical_hpc", a)
    assert abs(e_q - e_c) <= 1e-6 * max(e_q, e_c)


def test_rydberg_crossing():
    a = critical_scale(FIG3, HardwareKind.RYDBERG, HardwareKind.CLASSICAL_HPC, 1e10, 1e22)
    assert 1e16 <= a <= 1e19
    e_q, e_c = scale_energies(FIG3, "rydberg", "classical_hpc", a)
    assert abs(e_q - e_c) <= 1e-6 * max(e_q, e_c)


@pytest.mark.parametrize("kind, lo, hi", [("ion_trap", 1e6, 1e16), ("rydberg", 1e10, 1e22)])
def test_sign_pattern_around_crossing(kind, lo, hi):
    a = critical_scale(FIG3, kind, "classical_hpc", lo, hi)
    below = scale_energies(FIG3, kind, "classical_hpc", a / 10)
    above = scale_energies(FIG3, kind, "classical_hpc", a * 10)
    assert below[0] > below[1]
    assert above[0] < above[1]


def test_no_crossing_raises():
    with pytest.raises(NoSignChange) as info:
        critical_scale(FIG3, "rydberg", "classical_hpc", 1e2, 1e3)
    assert (info.value.lo, info.value.hi) == (1e2, 1e3)


def test_bracket_expansion():
    a = critical_scale(FIG3, "rydberg", "classical_hpc", 1e3, 1e4, expand=True)
    assert a == pytest.approx(critical_scale(FIG3, "rydberg", "classical_hpc", 1e10, 1e22), rel=1e-9)


def test_bracket_expansion_gives_up():
    with pytest.raises(NoSignChange) as info:
        critical_scale(FIG3, "rydberg", "classical_hpc", 1e3, 1e4, expand=True, max_expansions=3)
    assert info.value.hi == pytest.approx(1e7)


def test_asymptotic_decoupled():
    p = FIG3.with_(gamma_qc=0.0)
    assert asymptotic_quantities(p, 100) == pytest.approx((5.0, 5.0), rel=1e-14)


def test_asymptotic_fig3_point():
    approx_q, _ = asymptotic_quantities(FIG3, 483)
    exact_q, _ = exact_quantities(FIG3, 483)
    assert exact_q == pytest.approx(21.0, rel=1e-12)
    assert approx_q == pytest.approx(483 * 1.9 / (3.99 * 10), rel=1e-12)
    assert abs(approx_q - exact_q) / exact_q < 0.10


def test_asymptotic_converges():
    errors = []
    for n in (10, 30, 100, 300):
        p = FIG3.with_(n_q=n, n_c=n)
        a = 100.0 * n
        approx, exact = asymptotic_quantities(p, a), exact_quantities(p, a)
        errors.append(max(abs(x - y) / y for x, y in zip(approx, exact)))
    assert all(e2 < e1 for e1, e2 in zip(errors, errors[1:]))
    assert errors[2] < 0.02


def test_is_quantum():
    assert HardwareKind.ION_TRAP.is_quantum and not HardwareKind.CLASSICAL_HPC.is_quantum
    assert math.isfinite(algorithm_energy("ion_trap", 1e300))
