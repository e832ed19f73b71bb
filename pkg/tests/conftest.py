import os
from pathlib import Path

import pytest

from qapsolve.instance import parse_instance, random_instance
from qapsolve.rng import SplitMix64, derive_seed

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"

TOY2_TEXT = "2\n0 3\n2 0\n0 1\n5 0"


@pytest.fixture
def toy2():
    """n=2 instance with costs 13 (identity) and 17 (swap)."""
    return parse_instance(TOY2_TEXT, name="toy")


@pytest.fixture
def rand_instance_factory():
    def make(n, seed, name=None):
        return random_instance(n, SplitMix64(derive_seed(seed, 0)), name=name)

    return make


def qaplib_dir() -> Path:
    return Path(os.environ.get("QAPLIB_DIR", DATA_DIR / "qaplib"))


def qaplib_path(name: str) -> Path | None:
    for suffix in (".dat", ""):
        candidate = qaplib_dir() / f"{name}{suffix}"
        if candidate.exists():
            return candidate
    return None
