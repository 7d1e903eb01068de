"""
Shared fixtures for the test suite
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from basepoly.approx_spec import ApproxSpec
from basepoly.registry import build_base
from chebpoly.polynomial import normalize
from operators.poisson import poisson1d, poisson2d
from spectral.spectrum import merge_duplicates


@pytest.fixture(autouse=True)
def _isolated_output(tmp_path, monkeypatch):
    monkeypatch.setenv("QSVT_OUTPUT_DIR", str(tmp_path / "results"))


@pytest.fixture(scope="session")
def example_spec():
    return ApproxSpec(kappa=10.0, eps=0.2)


@pytest.fixture(scope="session")
def example_spectrum():
    return merge_duplicates([0.1, 0.5, 1.0])


@pytest.fixture(scope="session")
def mang_example(example_spec):
    return normalize(build_base("mang", example_spec))


@pytest.fixture(scope="session")
def poisson4():
    return poisson1d(4)


@pytest.fixture(scope="session")
def poisson2d_small():
    return poisson2d(2)


@pytest.fixture(scope="session")
def mang_poisson4(poisson4):
    return normalize(build_base("mang", ApproxSpec(kappa=poisson4.kappa, eps=0.1)))
