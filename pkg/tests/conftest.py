import random

import pytest

from levibranch import build_levi, build_root_system


@pytest.fixture
def rng():
    return random.Random(987654321)


@pytest.fixture(scope="session")
def gl2():
    return build_root_system("GL", 2)


@pytest.fixture(scope="session")
def gl3():
    return build_root_system("GL", 3)


@pytest.fixture(scope="session")
def gl4():
    return build_root_system("GL", 4)


@pytest.fixture(scope="session")
def gl6():
    return build_root_system("GL", 6)


@pytest.fixture(scope="session")
def c2():
    return build_root_system("C", 2)


@pytest.fixture(scope="session")
def c3():
    return build_root_system("C", 3)


@pytest.fixture(scope="session")
def b2():
    return build_root_system("B", 2)


@pytest.fixture(scope="session")
def b3():
    return build_root_system("B", 3)


@pytest.fixture(scope="session")
def d4():
    return build_root_system("D", 4)


@pytest.fixture(scope="session")
def sp12():
    return build_root_system("C", 6)


@pytest.fixture(scope="session")
def levi_gl3_21(gl3):
    return build_levi(gl3, [1])


@pytest.fixture(scope="session")
def levi_gl4_22(gl4):
    return build_levi(gl4, [1, 3])


@pytest.fixture(scope="session")
def levi_gl6_42(gl6):
    return build_levi(gl6, [1, 2, 3, 5])


@pytest.fixture(scope="session")
def levi_c2_gl2(c2):
    return build_levi(c2, [1])


@pytest.fixture(scope="session")
def levi_c3_gl3(c3):
    return build_levi(c3, [1, 2])


@pytest.fixture(scope="session")
def levi_b2_gl2(b2):
    return build_levi(b2, [1])


@pytest.fixture(scope="session")
def levi_b3_gl2_so3(b3):
    return build_levi(b3, [1, 3])


@pytest.fixture(scope="session")
def levi_d4_gl4(d4):
    return build_levi(d4, [1, 2, 3])


@pytest.fixture(scope="session")
def levi_sp12(sp12):
    return build_levi(sp12, [1, 2, 4, 5, 6])
