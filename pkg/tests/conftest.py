import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # tests/oracle.py etc.

from evidentia import load_kb

REPO_ROOT = Path(__file__).resolve().parent.parent
REFERENCE_KB_PATH = REPO_ROOT / "kb" / "avian_influenza.kb.json"
ERROR_KB_DIR = Path(__file__).resolve().parent / "data" / "kb_errors"
TOTAL_CONFLICT_KB_PATH = Path(__file__).resolve().parent / "data" / "total_conflict.kb.json"


@pytest.fixture(scope="session")
def reference_kb_path() -> Path:
    return REFERENCE_KB_PATH


@pytest.fixture(scope="session")
def reference_kb():
    return load_kb(REFERENCE_KB_PATH)


@pytest.fixture(scope="session")
def total_conflict_kb_path() -> Path:
    return TOTAL_CONFLICT_KB_PATH


@pytest.fixture(scope="session")
def total_conflict_kb():
    return load_kb(TOTAL_CONFLICT_KB_PATH)
