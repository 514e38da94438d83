"""Tests for marked diagrams: parsing, generators, enumeration."""

import random

import pytest

from markedbrauer.diagrams import (
    DiagramParseError,
    MarkedDiagram,
    count_diagrams,
    enumerate_diagrams,
    format_diagram,
    generator_J,
    generator_c,
    generator_sigma,
    identity_diagram,
    parse_diagram,
    perm_sign,
    permutation_diagram,
)
from markedbrauer.exact import SizeBoundError


def test_parse_format_roundtrip():
    rng = random.Random(3)
    pool = list(enumerate_diagrams(3))
    for d in rng.sample(pool, 60):
        assert parse_diagram(format_diagram(d), 3) == d


def test_parse_normalizes_edge_order_and_orientation():
    a = parse_diagram("5-1* 2-4 3-6", 3)
    b = parse_diagram("2-4 1-5* 6-3", 3)
    assert a == b
    assert format_diagram(a) == "1-5* 2-4 3-6"


def test_parse_errors_are_distinct():
    with pytest.raises(DiagramParseError, match="malformed"):
        parse_diagram("1-2-3 4-5 6-7", 3)  # unreadable token
    with pytest.raises(DiagramParseError, match="out of range"):
        parse_diagram("1-7 2-3 4-5", 3)  # vertex too large
    with pytest.raises(DiagramParseError, match="two edges"):
        parse_diagram("1-2 2-3 4-5", 3)  # repeated vertex
    with pytest.raises(DiagramParseError, match="expected 3 edges"):
        parse_diagram("1-2 3-4", 3)  # not a perfect matching
    with pytest.raises(DiagramParseError, match="self-loop"):
        parse_diagram("1-1 2-3 4-5", 3)
    with pytest.raises(DiagramParseError, match="empty"):
        parse_diagram("   ", 3)
    assert issubclass(DiagramParseError, ValueError)


def test_constructor_rejects_bad_edge_lists():
    with pytest.raises(ValueError):
        MarkedDiagram(2, [(1, 3, False)])  # too few edges
    with pytest.raises(ValueError):
        MarkedDiagram(2, [(1, 3, False), (2, 5, False)])  # out of range
    with pytest.raises(ValueError):
        MarkedDiagram(0, [])


def test_partner_and_canonical_storage():
    d = MarkedDiagram(2, [(4, 2, True), (3, 1, False)])
    assert d.edges == ((1, 3, False), (2, 4, True))
    assert d.partner(1) == 3 and d.partner(3) == 1
    assert d.partner(2) == 4 and d.partner(4) == 2
    with pytest.raises(KeyError):
        d.partner(5)


def test_generators():
    r = 4
    ident = identity_diagram(r)
    assert all(not m for _, _, m in ident.edges)
    s1 = generator_sigma(1, r)
    assert s1.partner(1) == r + 2 and s1.partner(2) == r + 1
    j3 = generator_J(3, r)
    assert [m for _, _, m in j3.edges] == [False, False, True, False]
    c = generator_c(2, 4, r)
    assert c.partner(2) == 4 and c.partner(r + 2) == r + 4
    with pytest.raises(ValueError):
        generator_sigma(4, 4)
    with pytest.raises(ValueError):
        generator_J(0, 4)
    with pytest.raises(ValueError):
        generator_c(3, 3, 4)


def test_permutation_diagrams_compose_contravariantly():
    # Right action: slot j of sigma-then-tau reads factor sigma(tau(j)).
    from markedbrauer.algebra import multiply_diagrams

    rng = random.Random(17)
    r = 4
    for _ in range(30):
        sigma = list(range(1, r + 1))
        tau = list(range(1, r + 1))
        rng.shuffle(sigma)
        rng.shuffle(tau)
        coeff, prod = multiply_diagrams(permutation_diagram(sigma, r),
                                        permutation_diagram(tau, r))
        composed = [sigma[tau[j] - 1] for j in range(r)]
        assert prod == permutation_diagram(composed, r)
        assert coeff == 1


def test_perm_sign():
    assert perm_sign([1, 2, 3]) == 1
    assert perm_sign([2, 1, 3]) == -1
    assert perm_sign([3, 1, 2]) == 1
    rng = random.Random(8)
    for _ in range(20):
        perm = list(range(1, 6))
        rng.shuffle(perm)
        swaps = perm_sign(perm)
        # parity of inversions equals parity of transposition count
        count = 0
        work = list(perm)
        for i in range(len(work)):
            while work[i] != i + 1:
                j = work.index(i + 1)
                work[i], work[j] = work[j], work[i]
                count += 1
        assert swaps == (-1) ** count


def test_counts_and_enumeration():
    assert [count_diagrams(r) for r in (1, 2, 3)] == [2, 12, 120]
    for r in (1, 2, 3):
        pool = list(enumerate_diagrams(r))
        assert len(pool) == count_diagrams(r)
        assert len(set(pool)) == len(pool)
    # deterministic order
    assert list(enumerate_diagrams(2)) == list(enumerate_diagrams(2))
    with pytest.raises(SizeBoundError):
        list(enumerate_diagrams(6))
