"""Tests for the tensor-space action: matrices, kernel, commutant, forms."""

import random
from fractions import Fraction

import pytest

from markedbrauer.algebra import (
    AlgebraElement,
    RELATION_NAMES,
    _relation_cases,
    idempotent_eP,
)
from markedbrauer.diagrams import (
    enumerate_diagrams,
    generator_J,
    generator_c,
    generator_sigma,
    identity_diagram,
)
from markedbrauer.exact import ExactMatrix, SizeBoundError, matrix_rank
from markedbrauer.tensorrep import (
    TensorOperator,
    TensorSpaceConfig,
    _wide_rank,
    centralizer_equals_diagram_span,
    commutant_dim,
    diagram_span_rank,
    diagonal_action,
    eP_image_rank,
    forms_annihilated,
    invariant_form_eval,
    invariant_space_dim,
    operator_from_json,
    operator_to_json,
    pairing_forms_rank,
    rho_diagram,
    rho_element,
    rho_kernel_dim,
    u_basis,
    verify_homomorphism,
    z_element_check,
)


def test_config_indexing_roundtrip():
    cfg = TensorSpaceConfig(2, 3)
    assert cfg.dim == 4 and cfg.side == 64
    for idx in range(cfg.side):
        assert cfg.index(cfg.tuple_of(idx)) == idx
    # big-endian: first slot varies slowest
    assert cfg.tuple_of(0) == (0, 0, 0)
    assert cfg.tuple_of(1) == (0, 0, 1)
    assert cfg.tuple_of(cfg.dim ** 2) == (1, 0, 0)


def test_j_apply_squares_to_minus_one():
    for n in (1, 2, 3):
        cfg = TensorSpaceConfig(n, 1)
        for k in range(2 * n):
            s1, k1 = cfg.j_apply(k)
            s2, k2 = cfg.j_apply(k1)
            assert k2 == k and s1 * s2 == -1


def test_rho_of_identity_and_generators():
    cfg = TensorSpaceConfig(2, 2)
    ident = rho_diagram(identity_diagram(2), cfg)
    assert ident == TensorOperator.identity(cfg)
    j1 = rho_diagram(generator_J(1, 2), cfg)
    assert j1 * j1 == -TensorOperator.identity(cfg)
    s1 = rho_diagram(generator_sigma(1, 2), cfg)
    assert s1 * s1 == TensorOperator.identity(cfg)
    c12 = rho_diagram(generator_c(1, 2, 2), cfg)
    assert c12.rank() == 1
    assert c12.trace() == 2 * cfg.n
    assert (c12 * c12) == (2 * cfg.n) * c12


def test_rho_element_linearity_and_idempotent_image():
    cfg = TensorSpaceConfig(2, 2)
    a = AlgebraElement.from_diagram(generator_J(1, 2), 3)
    b = AlgebraElement.from_diagram(generator_c(1, 2, 2), Fraction(-1, 2))
    assert rho_element(a + b, cfg) == rho_element(a, cfg) + rho_element(b, cfg)
    e = idempotent_eP({1, 2}, 1, 2)
    p = rho_element(e, cfg)
    assert p * p == p


def test_homomorphism_exhaustive_small_and_sampled():
    assert verify_homomorphism(TensorSpaceConfig(1, 2), exhaustive=True)
    assert verify_homomorphism(TensorSpaceConfig(1, 3), sample_count=80,
                               seed=11)
    failures = []
    assert verify_homomorphism(TensorSpaceConfig(2, 2), sample_count=40,
                               seed=5, failures=failures)
    assert failures == []


def test_rho_respects_relations_fully_at_small_r():
    for n, r in ((2, 2), (1, 3)):
        cfg = TensorSpaceConfig(n, r)
        for name in RELATION_NAMES:
            for label, lhs, rhs in _relation_cases(name, r):
                assert rho_element(lhs - rhs, cfg).is_zero(), (name, label)


def test_rho_respects_relations_sampled_at_r4():
    cfg = TensorSpaceConfig(2, 4)
    rng = random.Random(19)
    for name in ("braid", "c_sandwich", "conjugated_c_commute",
                 "j_sigma_fourth_power"):
        cases = list(_relation_cases(name, 4))
        for label, lhs, rhs in rng.sample(cases, min(2, len(cases))):
            assert rho_element(lhs - rhs, cfg).is_zero(), (name, label)


def test_wide_rank_gram_route_agrees():
    rng = random.Random(13)
    base = [{rng.randrange(5000): Fraction(rng.randint(1, 9)) for _ in range(12)}
            for _ in range(3)]
    rows = list(base)
    for i in range(3):
        combo = {}
        for j, scale in enumerate((1, 2, -1)):
            for k, v in base[j].items():
                w = combo.get(k, 0) + scale * v * (i + 1)
                if w:
                    combo[k] = w
                else:
                    combo.pop(k, None)
        rows.append(combo)
    m = ExactMatrix(6, 5000, rows)
    assert m.ncols > 4096  # forces the Gram branch inside _wide_rank
    assert _wide_rank(m) == matrix_rank(m) == 3


def test_kernel_dimensions_small():
    assert rho_kernel_dim(TensorSpaceConfig(2, 2)) == 0
    assert rho_kernel_dim(TensorSpaceConfig(1, 2)) == 6
    assert rho_kernel_dim(TensorSpaceConfig(1, 3)) == 100
    assert diagram_span_rank(TensorSpaceConfig(1, 2)) == 6


def test_z_element_check_on_noninjective_side():
    assert z_element_check(TensorSpaceConfig(1, 2))
    assert z_element_check(TensorSpaceConfig(1, 3))
    with pytest.raises(ValueError):
        z_element_check(TensorSpaceConfig(2, 2))


def test_commutant_modes_agree():
    for n, r, expected in ((1, 1, 2), (1, 2, 6)):
        cfg = TensorSpaceConfig(n, r)
        exact = commutant_dim(cfg, mode="exact")
        modular = commutant_dim(cfg, mode="mod-p", seed=7)
        both = commutant_dim(cfg, mode="both", seed=7)
        assert exact == modular == both == expected
    with pytest.raises(ValueError):
        commutant_dim(TensorSpaceConfig(1, 1), mode="sideways")
    with pytest.raises(SizeBoundError):
        commutant_dim(TensorSpaceConfig(3, 3))


def test_centralizer_identity_small():
    assert centralizer_equals_diagram_span(TensorSpaceConfig(1, 1))
    assert centralizer_equals_diagram_span(TensorSpaceConfig(1, 2))


def test_u_basis_is_skew_symmetric():
    for n in (1, 2, 3):
        ops = u_basis(n)
        assert len(ops) == n * n
        for op in ops:
            for i, row in op.items():
                for j, v in row.items():
                    assert op.get(j, {}).get(i, 0) == -v


def test_diagonal_action_on_invariant_vector():
    # sum_k b_k (x) b_k + J b_k (x) J b_k is killed by every u(n) op at r=2
    cfg = TensorSpaceConfig(2, 2)
    vec = {}
    for k in range(cfg.dim):
        s, jk = cfg.j_apply(k)
        vec[cfg.index((k, k))] = vec.get(cfg.index((k, k)), 0) + 1
        vec[cfg.index((jk, jk))] = vec.get(cfg.index((jk, jk)), 0) + 1
    for op in u_basis(cfg.n):
        d = diagonal_action(op, cfg)
        image = {}
        for j, v in vec.items():
            for k, w in d.transpose().rows[j].items():
                image[k] = image.get(k, 0) + v * w
        assert not any(image.values())


def test_invariant_form_eval_examples():
    cfg = TensorSpaceConfig(1, 2)
    b1, b2 = [1, 0], [0, 1]
    assert invariant_form_eval([1, 2], [0], [b1, b1], cfg) == 1
    assert invariant_form_eval([1, 2], [1], [b1, b2], cfg) == -1
    cfg4 = TensorSpaceConfig(1, 4)
    assert invariant_form_eval([1, 2, 3, 4], [0, 0], [b1, b1, b2, b2], cfg4) == 1
    # transposing one pairing through sigma
    assert invariant_form_eval([2, 1], [1], [b1, b2], cfg) == 1
    with pytest.raises(ValueError):
        invariant_form_eval([1, 2], [0], [b1], cfg)
    with pytest.raises(ValueError):
        invariant_form_eval([1, 1], [0], [b1, b1], cfg)


def test_invariant_space_dims_small():
    assert invariant_space_dim(TensorSpaceConfig(1, 1)) == 0
    assert invariant_space_dim(TensorSpaceConfig(1, 3)) == 0
    assert invariant_space_dim(TensorSpaceConfig(2, 2)) == 2
    assert invariant_space_dim(TensorSpaceConfig(1, 2)) == 2
    assert pairing_forms_rank(TensorSpaceConfig(2, 2)) == 2
    assert forms_annihilated(TensorSpaceConfig(2, 2))
    assert forms_annihilated(TensorSpaceConfig(1, 2))


def test_eP_image_ranks():
    assert eP_image_rank({1}, TensorSpaceConfig(1, 1)) == 2
    cfg = TensorSpaceConfig(2, 2)
    ranks = [eP_image_rank(P, cfg) for P in ({1}, {1, 2})]
    assert ranks == [8, 8]
    assert sum(ranks) == cfg.side == 16
    # p-independence carries over to the image
    assert eP_image_rank({1, 2}, cfg, p=2) == 8


def test_operator_json_roundtrip():
    cfg = TensorSpaceConfig(2, 2)
    op = rho_element(idempotent_eP({1}, 1, 2), cfg)
    blob = operator_to_json(op)
    assert blob["n"] == 2 and blob["r"] == 2
    assert all(isinstance(v, str) for _, _, v in blob["entries"])
    back = operator_from_json(blob)
    assert back == op
    with pytest.raises(ValueError):
        operator_from_json({"n": 2, "r": 2, "entries": [[0, 1, "1"]]})


def test_config_size_bound():
    with pytest.raises(SizeBoundError):
        TensorSpaceConfig(3, 4)
    TensorSpaceConfig(3, 4, max_side=2000)  # explicit override allowed
