import pytest

from app.errors import DomainError
from app.modforms import (
    eigenbasis_spectrum,
    fourth_moment,
    harmonic_measure,
    moment_from_l_values,
    spectral_data,
    watson_L_value,
)


def test_fourth_moment_weight_12():
    """Test Parseval and Watson reconstructions of int |Delta|^4"""
    result = fourth_moment(12)
    assert len(result.rows) == 2
    assert result.parseval_gap < 1e-3
    assert result.watson_gap < 1e-3
    assert all(row.value >= 0 for row in result.rows)
    assert result.value > 0


@pytest.mark.slow
@pytest.mark.parametrize("k", [16, 18, 20])
def test_fourth_moment_higher_weights(k):
    """Test the identity for f of weight 16 to 20"""
    result = fourth_moment(k)
    assert result.parseval_gap < 1e-3
    assert result.watson_gap < 1e-3


def test_watson_value_inverts():
    """Test the moment rebuilds from the per-form L-values"""
    result = fourth_moment(12)
    l_f = spectral_data(12).l_sym2
    assert moment_from_l_values(12, l_f, result.rows) == pytest.approx(result.watson_sum)


def test_watson_value_from_forms():
    """Test watson_L_value(f, g) matches the fourth-moment rows for f = Delta"""
    result = fourth_moment(12)
    delta = spectral_data(12).form
    for entry, row in zip(eigenbasis_spectrum(24), result.rows):
        value = watson_L_value(delta, entry.form)
        assert value >= 0
        assert value == pytest.approx(row.value, rel=1e-6)


def test_watson_value_weight_mismatch():
    """Test g must have twice the weight of f"""
    delta = spectral_data(12).form
    with pytest.raises(DomainError):
        watson_L_value(delta, delta)


def test_harmonic_measure_near_one():
    """Test sum^h 1 over B_24 is close to 1"""
    assert harmonic_measure(24) == pytest.approx(1.0, abs=1e-2)
    assert abs(spectral_data(12).measure_deviation) < 1e-2


def test_spectrum_entries():
    """Test spectral entries carry norms and Euler cross-checks"""
    spectrum = eigenbasis_spectrum(24)
    assert [entry.form.index for entry in spectrum] == [0, 1]
    assert all(entry.norm.value > 0 for entry in spectrum)
    assert all(abs(entry.euler_discrepancy) < 0.5 for entry in spectrum)
