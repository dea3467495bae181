import numpy as np
import pytest
from hypothesis import settings

from starclean import coeff, groups

settings.register_profile("suite", deadline=None, max_examples=30)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def q8():
    return groups.build_slc(groups.Presentation.D2, 1)


@pytest.fixture(scope="session")
def d4():
    # the dihedral group of order 8 as the type-1 presentation
    return groups.build_slc(groups.Presentation.D1, 1)


@pytest.fixture(scope="session")
def f3():
    return coeff.GF(3)


@pytest.fixture(scope="session")
def f5():
    return coeff.GF(5)


@pytest.fixture(scope="session")
def z9():
    return coeff.Zmod(9)


@pytest.fixture(scope="session")
def qq():
    return coeff.rationals()


def group_from_permutations(perms):
    """Independent oracle: close a set of permutation tuples under
    composition and return the multiplication table group."""
    n = len(perms[0])
    identity = tuple(range(n))
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for p in perms:
                c = tuple(a[p[i]] for i in range(n))
                if c not in seen:
                    seen.add(c)
                    elements.append(c)
                    nxt.append(c)
        frontier = nxt
    index = {e: i for i, e in enumerate(elements)}
    order = len(elements)
    table = np.zeros((order, order), dtype=np.int32)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[tuple(a[b[k]] for k in range(len(b)))]
    return groups.FiniteGroup.from_table(table)


@pytest.fixture(scope="session")
def s3():
    return group_from_permutations([(1, 0, 2), (1, 2, 0)])


@pytest.fixture(scope="session")
def dihedral8_perms():
    # symmetries of the square acting on its vertices
    return group_from_permutations([(1, 2, 3, 0), (1, 0, 3, 2)])
