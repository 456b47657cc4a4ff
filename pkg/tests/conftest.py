import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from henkin.groups import Group, PrincipalNormal, build_permutation_model
from henkin.structures import Structure, Table, standard_structure


@pytest.fixture(scope="session")
def std2():
    """Standard structure over two individuals, arities 1 and 2."""
    return standard_structure(("a", "b"), 2)


@pytest.fixture(scope="session")
def std3():
    """Standard structure over three individuals, arities 1 and 2."""
    return standard_structure(("a", "b", "c"), 2)


@pytest.fixture(scope="session")
def a4_model():
    """Invariant-table model over four points: tables fixed by the even
    permutations, arities 1 and 2."""
    group = Group.symmetric(4)
    filt = PrincipalNormal((Group.alternating(4),))
    return build_permutation_model(("1", "2", "3", "4"), group, filt, 2)


@pytest.fixture(scope="session")
def crippled2(std2):
    """Two individuals, full unary domain, but only the full binary relation."""
    return Structure(
        ("a", "b"), {1: std2.domains[1], 2: frozenset({Table.constant(2, 2, True)})}
    )
