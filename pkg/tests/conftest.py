import re
from pathlib import Path

import pytest

from daydrift import load_config

REPO_ROOT = Path(__file__).resolve().parent.parent
REFERENCE_CONFIG = REPO_ROOT / "configs" / "reference.ini"
NOISY_CONFIG = REPO_ROOT / "configs" / "noisy.ini"


@pytest.fixture
def reference_config_path() -> Path:
    return REFERENCE_CONFIG


@pytest.fixture
def noisy_config_path() -> Path:
    return NOISY_CONFIG


@pytest.fixture
def reference_scenario():
    return load_config(REFERENCE_CONFIG).build()


def parse_stanza(output: str) -> dict[str, str]:
    """Pull key=value pairs out of a command's machine-readable stanza."""
    pairs = {}
    for line in output.splitlines():
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_.]*)=(.*)", line.strip())
        if m:
            pairs[m.group(1)] = m.group(2)
    return pairs
