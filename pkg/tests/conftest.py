import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import pytest

from gpakit.numfield import field_create


@pytest.fixture(scope="session")
def Qd():
    """The cubic field of d ~ 2.24698, the largest root of x^3-2x^2-x+1."""
    return field_create([1, -2, -1, 1], "2.25", generator="d")
