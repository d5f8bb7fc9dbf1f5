import pytest

from app.acceptance import AcceptanceSuite, file_digests
from app.errors import ConfigError
from app.storage import TableWriter


@pytest.fixture
def suite(tmp_path):
    return AcceptanceSuite("quick", str(tmp_path), seed=1)


def test_unknown_suite():
    """Test an unknown suite name raises ConfigError"""
    with pytest.raises(ConfigError):
        AcceptanceSuite("everything")


def test_exact_criteria(suite):
    """Test the exact identity criteria"""
    assert suite.moment_identities().passed
    assert suite.hecke_expansion().passed
    assert suite.truncated_exponential().passed


def test_lemma_criterion(suite):
    """Test random weight systems respect the lemma bounds"""
    result = suite.lemma_brute_force()
    assert result.passed
    assert result.details["instances"] > 0


def test_chain_criterion(suite, tmp_path):
    """Test the chain criterion and its bound table"""
    result = suite.chain(TableWriter(str(tmp_path)))
    assert result.passed
    assert result.details["failing_at_1e4"] > 0
    assert (tmp_path / "chain_bounds.csv").exists()


def test_artifacts_reproducible(suite, tmp_path):
    """Test artifact digests repeat for a fixed seed"""
    first = suite.write_artifacts(tmp_path / "a")
    second = suite.write_artifacts(tmp_path / "b")
    assert first == second
    assert first == file_digests(tmp_path / "a")
    assert "family.csv" in first
