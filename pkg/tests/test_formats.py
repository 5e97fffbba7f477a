import pytest

from qtorus import formats
from qtorus.errors import (
    NonUnitRational,
    OverlappingGenerators,
    ParseError,
    QTorusError,
    TorsionScalar,
    UnknownGenerator,
)

from conftest import four_generator_torus, fresh_sigma


def test_parse_four_generator_file(parsed_example):
    Q, sigma = parsed_example.torus, parsed_example.sigma
    assert (Q.n, Q.m) == (4, 3)
    assert Q == four_generator_torus()
    assert sigma == fresh_sigma()


def test_parse_rational_file(data_dir):
    pf = formats.read_presentation(data_dir / "example1_rational.qt")
    assert pf.torus.basis.labels == (2, 3, 5, 7, 11, 13, 17)
    assert pf.torus.q(0, 3) == (1, 0, 0, 0, 0, 0, 0)
    assert pf.sigma.p[3] == (0, 0, 0, 0, 0, 0, 1)


def test_omitted_entries_default_to_one():
    pf = formats.parse_presentation("[torus]\nn = 3\n")
    assert all(not any(pf.torus.q(i, j)) for i in range(3) for j in range(3))
    assert pf.sigma is None


def test_sigma_over_torus_generators(data_dir):
    pf = formats.read_presentation(data_dir / "shared_generator.qt")
    assert pf.sigma.basis == pf.torus.basis and pf.sigma.p == ((1,), (0,))


def test_rational_negative_is_torsion():
    with pytest.raises(TorsionScalar):
        formats.parse_presentation("[torus]\nn = 2\nmode = rational\nq 1 2 = -1\n")


def test_rational_zero_is_not_a_unit():
    with pytest.raises(NonUnitRational):
        formats.parse_presentation("[torus]\nn = 2\nmode = rational\nq 1 2 = 0\n")


def test_rational_fraction():
    pf = formats.parse_presentation("[torus]\nn = 2\nmode = rational\nq 1 2 = 3/4\n")
    assert pf.torus.basis.labels == (2, 3) and pf.torus.q(0, 1) == (-2, 1)


@pytest.mark.parametrize(
    "text, line",
    [
        ("[torus]\nn = 2\nq 2 1 = g\n", 3),
        ("[torus]\nn = 2\nq 1 3 = g\n", 3),
        ("[torus]\nn = 2\nq 1 x = g\n", 3),
        ("[torus]\nn = 0\n", 2),
        ("n = 2\n", 1),
        ("[torus]\nn = 2\nfoo = 1\n", 3),
        ("[torus]\nn = 2\n[other]\n", 3),
        ("[torus]\nn = 2\nmode = complex\n", 3),
        ("[torus]\nn = 2\ngenerators = g\nq 1 2 = g\nq 1 2 = g\n", 5),
        ("[torus]\nn = 2\nq 1 2 = g\n", None),  # unknown generator, located below
    ],
)
def test_errors_carry_location(text, line):
    with pytest.raises(QTorusError) as info:
        formats.parse_presentation(text)
    assert info.value.exit_code == 2
    if line is not None:
        assert info.value.line == line and info.value.column >= 1


def test_unknown_generator_location():
    with pytest.raises(UnknownGenerator) as info:
        formats.parse_presentation("[torus]\nn = 2\ngenerators = g\nq 1 2 = h\n")
    assert info.value.line == 4 and info.value.column == 9


def test_missing_torus_section():
    with pytest.raises(ParseError):
        formats.parse_presentation("# nothing\n")


def test_overlapping_sigma_generators():
    text = "[torus]\nn = 2\ngenerators = g\nq 1 2 = g\n[sigma]\ngenerators = g h\np 1 = h\n"
    with pytest.raises(OverlappingGenerators) as info:
        formats.parse_presentation(text)
    assert info.value.line == 6


def test_render_round_trip(parsed_example, data_dir):
    for name in ("example1.qt", "example1_rational.qt", "commutative.qt", "shared_generator.qt"):
        pf = formats.read_presentation(data_dir / name)
        again = formats.parse_presentation(formats.render_presentation(pf.torus, pf.sigma))
        assert again.torus == pf.torus
        assert (again.sigma is None) == (pf.sigma is None)
        if pf.sigma is not None:
            assert again.sigma.p == pf.sigma.p
