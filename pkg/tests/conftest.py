import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from cyclepack.torus import CycleParams  # noqa: E402

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "cyclepack", "data")

CERT_FILES = {
    (7, 5): "cert_p7_d5.cert",
    (11, 4): "cert_p11_d4.cert",
    (13, 4): "cert_p13_d4.cert",
    (15, 3): "cert_p15_d3.cert",
}

CERT_SIZES = {(7, 5): 350, (11, 4): 748, (13, 4): 1534, (15, 3): 381}


def cert_path(p, d):
    return os.path.join(DATA_DIR, CERT_FILES[(p, d)])


def cert_text(p, d):
    with open(cert_path(p, d)) as fh:
        return fh.read()


@pytest.fixture
def p5d2():
    return CycleParams(5, 2)


@pytest.fixture
def p7d5():
    return CycleParams(7, 5)
