"""
Shared fixtures: the shipped germ files, their categories and Coxeter lifts
"""

import sys
from pathlib import Path

import hypothesis as hyp
import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from src.core.category_engine import Category  # noqa: E402
from src.core.coxeter import coxeter_preset, lift_germ  # noqa: E402
from src.utils.germ_io import load_germ_file  # noqa: E402

GERMS = ROOT / "germs"

# exhaustive checks dominate; keep hypothesis runs short and untimed
hyp.settings.register_profile("desk", max_examples=60, deadline=None)
hyp.settings.load_profile("desk")


@pytest.fixture(scope="session")
def germs_dir() -> Path:
    return GERMS


@pytest.fixture(scope="session")
def a2_germ():
    return load_germ_file(GERMS / "a2.germ")


@pytest.fixture(scope="session")
def a2(a2_germ) -> Category:
    return Category(a2_germ)


@pytest.fixture(scope="session")
def counter_germ():
    return load_germ_file(GERMS / "counterexample.germ")


@pytest.fixture(scope="session")
def counter(counter_germ) -> Category:
    return Category(counter_germ)


@pytest.fixture(scope="session")
def a3_lift():
    return lift_germ(coxeter_preset("A3"))
