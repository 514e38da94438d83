"""Tests for diagram concatenation, signs, products, relations, idempotents."""

import random
from fractions import Fraction

import pytest

from markedbrauer.algebra import (
    RELATION_NAMES,
    AlgebraElement,
    check_relations,
    element_to_json,
    format_element,
    gamma_loop,
    gamma_path,
    idempotent_eP,
    j_pair_diagram,
    multiply_diagrams,
    multiply_elements,
    span_closure,
    standard_generators,
    trace_components,
    verify_idempotent_family,
    z_element,
)
from markedbrauer.diagrams import (
    enumerate_diagrams,
    generator_J,
    generator_c,
    generator_sigma,
    identity_diagram,
    parse_diagram,
)
from markedbrauer.exact import Polynomial, SizeBoundError, parse_poly


X7 = "1-3* 4-6 5-7* 2-8* 9-10* 11-12* 13-14"
Y7 = "1-2 4-7* 5-6 3-12 8-11 9-10* 13-14"
PROD7 = "1-3* 4-6 5-7* 2-12 8-11 9-10* 13-14"
A6 = "1-2 3-4 5-6 7-8* 9-10* 11-12"
B6 = "1-6* 2-3 4-5 7-8 9-10 11-12"


def random_element(rng, r, pool, nterms=3):
    a = AlgebraElement.zero(r)
    for _ in range(nterms):
        coeff = Polynomial([Fraction(rng.randint(-4, 4)) for _ in range(3)])
        a = a + AlgebraElement.from_diagram(rng.choice(pool), coeff)
    return a


def test_trace_components_of_worked_pair():
    comps = trace_components(parse_diagram(X7, 7), parse_diagram(Y7, 7))
    loops = [c for c in comps if c.kind == "loop"]
    long_paths = [c for c in comps if c.kind == "path" and len(c.vertices) > 2]
    outer = [c for c in comps if c.kind == "path" and len(c.vertices) == 2]
    assert (len(loops), len(long_paths), len(outer)) == (1, 1, 6)
    assert {v[1] for v in loops[0].vertices if v[0] in ("X", "Y")} == {4, 5, 6, 7}
    assert long_paths[0].vertices[0] == ("T", 2)
    assert long_paths[0].vertices[-1] == ("B", 5)


def test_gamma_golden_values():
    comps = trace_components(parse_diagram(X7, 7), parse_diagram(Y7, 7))
    loop = next(c for c in comps if c.kind == "loop")
    path = next(c for c in comps if c.kind == "path" and len(c.vertices) > 2)
    assert len(path.mark_positions) == 2
    assert gamma_path(path) == (-1, False)
    assert len(loop.mark_positions) == 2
    assert gamma_loop(loop) == (-1, False)
    # straight unmarked vertical path
    comps_id = trace_components(identity_diagram(2), identity_diagram(2))
    for c in comps_id:
        assert gamma_path(c) == (1, False)
    # single-mark path: sign -1 with a residual mark
    jc = trace_components(generator_J(1, 2), generator_c(1, 2, 2))
    marked = next(c for c in jc if c.mark_positions)
    assert gamma_path(marked) == (-1, True)


def test_gamma_odd_mark_loop_vanishes():
    comps = trace_components(parse_diagram(A6, 6), parse_diagram(B6, 6))
    loop = next(c for c in comps if c.kind == "loop")
    assert len(loop.mark_positions) == 3
    assert gamma_loop(loop).sign == 0


def test_gamma_rejects_wrong_kind():
    comps = trace_components(parse_diagram(X7, 7), parse_diagram(Y7, 7))
    loop = next(c for c in comps if c.kind == "loop")
    path = next(c for c in comps if c.kind == "path")
    with pytest.raises(ValueError):
        gamma_path(loop)
    with pytest.raises(ValueError):
        gamma_loop(path)


def test_worked_product():
    coeff, prod = multiply_diagrams(parse_diagram(X7, 7), parse_diagram(Y7, 7))
    assert coeff == Polynomial.x_power(1)
    assert prod == parse_diagram(PROD7, 7)


def test_zero_product():
    coeff, prod = multiply_diagrams(parse_diagram(A6, 6), parse_diagram(B6, 6))
    assert coeff == Polynomial() and prod is None


def test_contraction_squares_to_x_times_itself():
    c12 = generator_c(1, 2, 2)
    coeff, prod = multiply_diagrams(c12, c12)
    assert coeff == Polynomial.x_power(1) and prod == c12
    with pytest.raises(ValueError):
        multiply_diagrams(c12, generator_c(1, 2, 3))


def test_element_arithmetic_ring_laws():
    rng = random.Random(41)
    r = 2
    pool = list(enumerate_diagrams(r))
    one = AlgebraElement.one(r)
    zero = AlgebraElement.zero(r)
    for _ in range(25):
        a = random_element(rng, r, pool)
        b = random_element(rng, r, pool)
        c = random_element(rng, r, pool)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * one == a and one * a == a
        assert a * zero == zero and a + zero == a
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a - a == zero
        assert 2 * a == a + a
        x = Polynomial.x_power(1)
        assert x * a == a * x


def test_known_element_products():
    r = 2
    ident = AlgebraElement.one(r)
    j1 = AlgebraElement.from_diagram(generator_J(1, r))
    c12 = AlgebraElement.from_diagram(generator_c(1, 2, r))
    assert j1 * j1 == -1 * ident
    assert c12 * j1 * c12 == AlgebraElement.zero(r)
    assert multiply_elements(ident, c12) == c12
    assert j1 ** 4 == ident


def test_associativity_sample():
    rng = random.Random(97)
    for r in (2, 3):
        pool = list(enumerate_diagrams(r))
        for _ in range(40):
            a = random_element(rng, r, pool, nterms=2)
            b = random_element(rng, r, pool, nterms=2)
            c = random_element(rng, r, pool, nterms=2)
            assert (a * b) * c == a * (b * c)


def test_format_and_json_roundtrip():
    r = 2
    a = AlgebraElement.from_diagram(generator_J(1, r), Polynomial([1, 2])) \
        - AlgebraElement.from_diagram(generator_c(1, 2, r), Fraction(1, 2))
    text = format_element(a)
    assert "1-3* 2-4" in text and "(" in text  # multi-term coeff parenthesized
    blob = element_to_json(a)
    assert len(blob) == 2
    rebuilt = AlgebraElement.zero(r)
    for term in blob:
        rebuilt = rebuilt + AlgebraElement.from_diagram(
            parse_diagram(term["diagram"], r), parse_poly(term["coeff"]))
    assert rebuilt == a
    assert format_element(AlgebraElement.zero(r)) == "0"


def test_relations_all_hold_small():
    for r in (2, 3):
        report = check_relations(r)
        assert report["all_hold"]
        assert set(report["relations"]) == set(RELATION_NAMES)
        for name in RELATION_NAMES:
            assert report["relations"][name]["holds"], name
        assert set(report["defining_set"]) <= set(RELATION_NAMES)
    with pytest.raises(ValueError):
        check_relations(1)


def test_j_pair_diagram_and_idempotent_basics():
    r = 2
    jj = j_pair_diagram(1, 2, r)
    assert jj == parse_diagram("1-3* 2-4*", r)
    e = idempotent_eP({1, 2}, 1, r)
    expected = AlgebraElement.from_diagram(identity_diagram(r), Fraction(1, 2)) \
        - AlgebraElement.from_diagram(jj, Fraction(1, 2))
    assert e == expected
    assert e * e == e
    assert idempotent_eP({1}, 1, 1) == AlgebraElement.one(1)
    with pytest.raises(ValueError):
        idempotent_eP({1}, 2, 2)
    with pytest.raises(ValueError):
        idempotent_eP(set(), 1, 2)


def test_idempotent_complement_and_p_independence():
    r = 3
    assert idempotent_eP({1}, 1, r) == idempotent_eP({2, 3}, 2, r)
    assert idempotent_eP({1, 3}, 1, r) == idempotent_eP({1, 3}, 3, r)


def test_idempotent_family_report():
    for r in (1, 2, 3):
        report = verify_idempotent_family(r)
        assert report["ok"], report
        assert report["subsets"] == 2 ** r - 1
        assert report["anchored"] == 2 ** (r - 1)


def test_span_closure_reaches_everything():
    for r in (1, 2, 3):
        count, complete = span_closure(r)
        assert complete and count == len(list(enumerate_diagrams(r)))
    with pytest.raises(SizeBoundError):
        span_closure(5)


def test_standard_generators_shape():
    gens = standard_generators(3)
    assert generator_sigma(1, 3) in gens and generator_sigma(2, 3) in gens
    assert generator_J(1, 3) in gens and generator_c(1, 2, 3) in gens


def test_z_element_is_nonzero():
    for r in (2, 3):
        z = z_element(r)
        assert not z.is_zero()
        assert all(poly for poly in z.terms.values())
