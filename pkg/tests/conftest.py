import math

import pytest

from collar import CollarParams, TriangleLengths, invert_pi_H

SYM = math.acosh(1.5)


@pytest.fixture
def symmetric():
    return TriangleLengths(SYM, SYM, SYM)


@pytest.fixture
def fn_image():
    """The H point over the Fenchel-Nielsen coordinates (2, 0)."""
    return invert_pi_H(CollarParams(-0.20769024400863478, -1.1199429123874159))
