import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cantor_spectra.fourier import compute_mask_constants  # noqa: E402
from cantor_spectra.numtheory import MeasureParams  # noqa: E402

P24 = MeasureParams(2, 4)
P36 = MeasureParams(3, 6)


@pytest.fixture(scope="session")
def mc24():
    return compute_mask_constants(P24)


@pytest.fixture(scope="session")
def mc36():
    return compute_mask_constants(P36)


ACCEPTANCE: dict = {}


def record(k: int, ok: bool, detail: str) -> None:
    """Store and print the outcome of acceptance criterion ``k``."""
    line = f"ACCEPTANCE {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[k] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
