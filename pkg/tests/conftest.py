import pytest

from altring import (PrimeField, build_map, gen_direct_sum, gen_m2,
                     gen_triangular2, gen_zorn, peirce_frame, zorn_idempotent)
from altring.rings import Ring


@pytest.fixture(scope="session")
def m2():
    return gen_m2(5)


@pytest.fixture(scope="session")
def zorn():
    return gen_zorn(5)


@pytest.fixture(scope="session")
def t2():
    return gen_triangular2(5)


@pytest.fixture(scope="session")
def m2q():
    return gen_m2("Q")


@pytest.fixture(scope="session")
def dsum(m2):
    return gen_direct_sum(m2, m2)


@pytest.fixture(scope="session")
def broken3():
    """Triangular 2x2 with E12*E12 = E22 forced in: unit survives, the
    alternative law does not."""
    sc = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    units = {(0, 0): 0, (0, 1): 1, (1, 1): 2}
    for (a, b), i in units.items():
        for (c, d), j in units.items():
            if b == c and (a, d) in units:
                sc[i][j][units[(a, d)]] = 1
    sc[1][1][2] = 1
    return Ring("broken3", PrimeField(5), ["E11", "E12", "E22"], sc, [1, 0, 1])


@pytest.fixture(scope="session")
def m2_frame(m2):
    return peirce_frame(m2, m2.basis_element(0))


@pytest.fixture(scope="session")
def zorn_frame(zorn):
    return peirce_frame(zorn, zorn_idempotent(zorn))


@pytest.fixture(scope="session")
def dsum_frame(dsum):
    return peirce_frame(dsum, dsum.element([1, 0, 0, 0, 1, 0, 0, 0]))


@pytest.fixture(scope="session")
def id_m2(m2):
    return build_map(m2, m2, {"kind": "identity"})


@pytest.fixture(scope="session")
def negtr(m2):
    return build_map(m2, m2, {"kind": "neg_transpose_plus_trace"})


@pytest.fixture(scope="session")
def conj(m2):
    # conjugation by 1 + E12, determinant 1
    return build_map(m2, m2, {"kind": "conjugation", "element": [1, 1, 0, 1]})
