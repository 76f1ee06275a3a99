from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"

# (m, k) pairs with m, k <= 6 and m^k <= 50000
DESK_PAIRS = [(m, k) for m in range(1, 7) for k in range(1, 7) if m**k <= 50000]


@pytest.fixture
def golden():
    return lambda name: (GOLDEN / name).read_text(encoding="utf-8")
