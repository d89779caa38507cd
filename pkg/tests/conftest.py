"""Shared fixtures: the frozen desk-scale ECA run and its profiles."""

import gzip
from pathlib import Path

import pytest

from caemu.complexity import profiles_from_csv
from caemu.network import records_from_csv

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def eca_records():
    """All verified ECA records for block sizes 2..6, frozen from one
    full search run (109 168 records)."""
    text = gzip.decompress((DATA / "eca_all_k2_6.csv.gz").read_bytes()).decode()
    return records_from_csv(text)


@pytest.fixture(scope="session")
def eca_profiles():
    """Measured complexity profiles for all 256 ECA rules, frozen."""
    return profiles_from_csv((DATA / "eca_profiles.csv").read_text())
