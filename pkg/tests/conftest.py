from pathlib import Path

import pytest

from qtorus import formats
from qtorus.algebra import QTorusPresentation, ScalarAutomorphismSpec
from qtorus.scalars import GeneratorBasis

DATA = Path(__file__).resolve().parent.parent / "data"


def four_generator_torus() -> QTorusPresentation:
    """X4 fails to commute with X1, X2, X3 through independent q1, q2, q3."""
    basis = GeneratorBasis.symbolic(["q1", "q2", "q3"])
    return QTorusPresentation.from_upper(4, basis, {(0, 3): (1, 0, 0), (1, 3): (0, 1, 0), (2, 3): (0, 0, 1)})


def fresh_sigma() -> ScalarAutomorphismSpec:
    basis = GeneratorBasis.symbolic(["p1", "p2", "p3", "p4"])
    return ScalarAutomorphismSpec(tuple(basis.unit(k) for k in range(4)), basis)


def commutative_torus(n: int) -> QTorusPresentation:
    return QTorusPresentation.from_upper(n, GeneratorBasis.symbolic([]), {})


def one_relation_torus(n: int, i: int, j: int, e: int = 1) -> QTorusPresentation:
    """Single generator g with q_ij = g^e (0-based i < j), all else 1."""
    return QTorusPresentation.from_upper(n, GeneratorBasis.symbolic(["g"]), {(i, j): (e,)})


@pytest.fixture
def torus4():
    return four_generator_torus()


@pytest.fixture
def sigma4():
    return fresh_sigma()


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def example_file():
    return DATA / "example1.qt"


@pytest.fixture
def parsed_example(example_file):
    return formats.read_presentation(example_file)
