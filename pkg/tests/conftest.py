import gzip
import os
from pathlib import Path

import numpy as np
import pytest

ACCEPTANCE_LINES = []


def sklearn_optdigits_tes():
    """Path to scikit-learn's bundled copy of the UCI ``optdigits.tes`` file."""
    try:
        import sklearn.datasets
    except ImportError:
        return None
    path = Path(sklearn.datasets.__file__).parent / "data" / "digits.csv.gz"
    return path if path.exists() else None


@pytest.fixture(scope="session")
def optdigits_files(tmp_path_factory):
    """``(train, test, have_uci_train)`` optdigits files.

    Uses ``$OPTDIGITS_DIR/optdigits.{tra,tes}`` when present. Otherwise the
    bundled test file is used as the test set and its first 1000 lines
    stand in for a training file.
    """
    root = os.environ.get("OPTDIGITS_DIR")
    if root and (Path(root) / "optdigits.tra").exists():
        return Path(root) / "optdigits.tra", Path(root) / "optdigits.tes", True
    src = sklearn_optdigits_tes()
    if src is None:
        pytest.skip("no optdigits data available")
    d = tmp_path_factory.mktemp("optdigits")
    lines = gzip.open(src, "rt").read().splitlines()
    tes = d / "optdigits.tes"
    tes.write_text("\n".join(lines) + "\n")
    tra = d / "optdigits_part.tra"
    tra.write_text("\n".join(lines[:1000]) + "\n")
    return tra, tes, False


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
