import math

import numpy as np
import pytest

import cellab


def diag_field(angle_fns, grid=129):
    ts = np.linspace(0.0, 1.0, grid)
    n = len(angle_fns)
    u = np.zeros((grid, n, n), dtype=complex)
    for j, f in enumerate(angle_fns):
        u[:, j, j] = np.exp(1j * f(ts))
    return u


def test_scalar_cel():
    ts = np.linspace(0, 1, 257)
    assert cellab.scalar_cel(list(-1.5 * math.pi * ts)) == pytest.approx(1.5 * math.pi)
    assert cellab.scalar_cel_exact([[0, 0], [1, "-3/2"]]) == ("3/2·π", 0)
    assert cellab.scalar_cel_exact([[0, 0], [0.5, 3], [1, 0]])[0] == "2·π"


def test_dense_bounds_on_diagonal_witness():
    u = diag_field([lambda t: 2 * math.pi * 2 * t / 3 + 1e-6, lambda t: -2 * math.pi * t / 3,
                    lambda t: -2 * math.pi * t / 3 - 1e-6])
    lower = cellab.cel_lower_distinct(u)
    assert lower["lower"] == pytest.approx(4 * math.pi / 3, abs=1e-5)
    path = cellab.cu_upper_bound(u)
    assert path["length"] <= 4 * math.pi / 3 + 1e-2
    assert all(isinstance(s, int) for s in path["shifts"])
    assert math.isinf(cellab.geodesic_upper_bound(u))


def test_errors_map_to_python():
    u = diag_field([lambda t: t, lambda t: 0 * t])
    with pytest.raises(cellab.CuError):
        cellab.cu_upper_bound(u)
    with pytest.raises(cellab.Error):
        cellab.chi_report(1)
    with pytest.raises(cellab.ParseError):
        cellab.chi_report(4, c="x")


def test_witness_reports():
    pw = cellab.pan_wang_report(3, grid_size=129)
    assert pw["pass"] and pw["lower"] == "4/3·π"
    chi = cellab.chi_report(100)
    assert chi["lower"] == "99/50·π" and chi["cu"]["pass"]
    js = cellab.jiangsu_report(1, 3)
    assert js["details"]["floor"] == "1·π"
    assert cellab.minimal_chi_L("7/4·π") == 8
    assert cellab.jiangsu_floor(3, 2) == "1·π"


def test_tower():
    stages = cellab.build_tower(3)
    assert [s["d"] for s in stages] == ["6", "1326", "9368140938"]
    assert stages[0]["k"] == "221"
    patterns = cellab.one_step_patterns(1)
    assert sum(int(p["mult"]) for p in patterns) == 221
    assert cellab.dichotomy_count(26, 51) == 0
    assert cellab.is_prime(2657) and not cellab.is_prime(221)


def test_acceptance_tower_suite():
    results = cellab.run_acceptance("tower")
    assert len(results) == 1 and results[0]["pass"]
    assert "tower" in cellab.acceptance_suites()
