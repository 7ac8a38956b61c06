import cmath
import math

import pytest

import biatom


def test_initial_amplitude_is_one():
    assert abs(biatom.amplitude(0.0) - 1.0) < 1e-10
    assert abs(biatom.amplitude(0.0, regime="small", delta=0.1) - 1.0) < 1e-10


def test_large_cavity_decays():
    assert abs(biatom.amplitude(20.0)) ** 2 < 1e-3
    assert biatom.g_integral(1.0) == pytest.approx(-0.364301852632, abs=1e-9)


def test_measures_closed_forms():
    d, c, n = biatom.measures(0.3, 0.0, 0.6)
    assert c == pytest.approx(2 * math.sqrt(0.21) * 0.6, abs=1e-12)
    d, c, n = biatom.measures(0.5, 0.0, cmath.sqrt(0.5))
    assert n == pytest.approx(0.5, abs=1e-12)
    assert n <= c


def test_evolve_columns_and_csv_check():
    cfg = {"regime": "small", "delta": 0.1, "t_end": 5.0, "n_points": 51}
    cols = biatom.evolve(cfg)
    assert len(cols["t"]) == 51
    assert min(cols["abs_f_sq"]) >= biatom.small_cavity_floor(0.1)
    text = biatom.evolve_csv(cfg)
    assert text.startswith("# {")
    assert biatom.check_csv(text) == []
    assert biatom.evolve_csv(cfg) == text


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError):
        biatom.evolve({"xi": 2.0})
    with pytest.raises(biatom.InvalidInput):
        biatom.amplitude(1.0, omega_bar=1.0, g=1.0)
    with pytest.raises(ValueError):
        biatom.evolve({"unknown_key": 1})
