"""Irreducible summands of the tensor power under the unitary action.

Labels pair a contraction list L (which V slots pair off against which
V* slots) with two standard Young tableaux filled by the uncontracted
slot numbers.  A label determines a weakly decreasing highest weight,
whose Weyl dimension formula gives the complex dimension; a summand
stays irreducible over R (doubling its dimension) unless the two frames
coincide with q = r - q, in which case it splits into two real halves.

Also houses the two worked side-216 decompositions used as end-to-end
checks: the alternating sector (Gray-Hervella) and the J-symmetric
sector (Abbena-Garbiero) of the third tensor power.
"""

import collections
import itertools
import math
from fractions import Fraction

from .exact import ExactMatrix, matrix_rank, nullspace_basis, vstack, vec_mat, invert
from .diagrams import permutation_diagram, generator_c, generator_J
from .algebra import AlgebraElement, j_pair_diagram, idempotent_eP
from .tensorrep import TensorSpaceConfig, rho_diagram, rho_element

COMPLEX_TYPE = "complexType"
REAL_TYPE = "realType"


def standard_tableaux(values):
    """All standard tableaux filled with the given values.

    Shapes run over partitions of len(values); fillings increase strictly
    along rows and down columns.  Values may be any sorted-able integers.
    Yields tuples of row tuples; the empty filling yields one empty shape.
    """
    values = sorted(values)
    rows = []

    def place(i):
        if i == len(values):
            yield tuple(tuple(rw) for rw in rows)
            return
        v = values[i]
        for rix in range(len(rows)):
            if rix == 0 or len(rows[rix]) < len(rows[rix - 1]):
                rows[rix].append(v)
                yield from place(i + 1)
                rows[rix].pop()
        rows.append([v])
        yield from place(i + 1)
        rows.pop()

    yield from place(0)


IrrepLabel = collections.namedtuple(
    "IrrepLabel", ["q", "rq", "pairs", "tau_plus", "tau_minus"])


def enumerate_labels(q, rq, n):
    """All (tableau pair, contraction list) labels for q copies of V and rq of V*.

    Contractions pair increasing slots m_1 < ... < m_s <= q with distinct
    (arbitrarily ordered) slots in q+1..q+rq; the leftover slot numbers
    fill the two tableaux; the total row count may not exceed n.
    """
    r = q + rq
    if n < r:
        raise ValueError("need n >= q + rq (got n=%d, q+rq=%d)" % (n, r))
    labels = []
    for s in range(min(q, rq) + 1):
        for ms in itertools.combinations(range(1, q + 1), s):
            plus_values = [v for v in range(1, q + 1) if v not in ms]
            for mps in itertools.permutations(range(q + 1, r + 1), s):
                minus_values = [v for v in range(q + 1, r + 1) if v not in mps]
                for tp in standard_tableaux(plus_values):
                    for tm in standard_tableaux(minus_values):
                        if len(tp) + len(tm) <= n:
                            labels.append(IrrepLabel(
                                q, rq, tuple(zip(ms, mps)), tp, tm))
    return labels


def highest_weight(label, n):
    """Row lengths of tau_plus, padding zeros, then negated reversed rows of tau_minus."""
    plus = [len(rw) for rw in label.tau_plus]
    minus = [len(rw) for rw in label.tau_minus]
    if len(plus) + len(minus) > n:
        raise ValueError("too many tableau rows for n=%d" % n)
    zeros = [0] * (n - len(plus) - len(minus))
    return tuple(plus + zeros + [-x for x in reversed(minus)])


def weyl_dim(lam, n):
    """dim of the irreducible with highest weight lam: prod (lam_i - lam_j + j - i)/(j - i)."""
    lam = tuple(lam)
    if len(lam) != n:
        raise ValueError("weight length %d != n=%d" % (len(lam), n))
    if any(lam[i] < lam[i + 1] for i in range(n - 1)):
        raise ValueError("weight is not weakly decreasing: %s" % (lam,))
    total = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            total *= Fraction(lam[i] - lam[j] + j - i, j - i)
    if total.denominator != 1:
        raise ArithmeticError("non-integer dimension for %s" % (lam,))
    return int(total)


def reality_type(label):
    """Real when the V and V* counts and both frames agree, else complex."""
    frame_p = tuple(len(rw) for rw in label.tau_plus)
    frame_m = tuple(len(rw) for rw in label.tau_minus)
    if label.q == label.rq and frame_p == frame_m:
        return REAL_TYPE
    return COMPLEX_TYPE


def label_record(label, n, multiplicity):
    lam = highest_weight(label, n)
    dim_c = weyl_dim(lam, n)
    reality = reality_type(label)
    return {
        "q": label.q,
        "L": [list(p) for p in label.pairs],
        "tauPlusRows": [list(rw) for rw in label.tau_plus],
        "tauMinusRows": [list(rw) for rw in label.tau_minus],
        "lambda": list(lam),
        "dimC": dim_c,
        "reality": reality,
        "dimR": 2 * dim_c,
        "multiplicity": multiplicity,
    }


def decompose_tensor(n, r):
    """Summand report for the r-th tensor power at complex dimension n >= r.

    Each subset of slots carrying V (rather than V*) gives a sector, so
    the labels for (q, r-q) enter with multiplicity C(r, q); the complex
    dimensions per q sum to n^r and the grand total over all sectors is
    (2n)^r, which is re-verified on every call.
    """
    if n < r:
        raise ValueError("need n >= r (got n=%d, r=%d)" % (n, r))
    summands = []
    per_q = []
    grand = 0
    for q in range(r + 1):
        mult = math.comb(r, q)
        labels = enumerate_labels(q, r - q, n)
        records = [label_record(lab, n, mult) for lab in labels]
        dim_c_sum = sum(rec["dimC"] for rec in records)
        per_q.append({"q": q, "multiplicity": mult, "dimCSum": dim_c_sum})
        grand += mult * dim_c_sum
        summands.extend(records)
    if grand != (2 * n) ** r:
        raise ArithmeticError(
            "sector dimensions add to %d, expected (2n)^r = %d"
            % (grand, (2 * n) ** r))
    return {
        "n": n,
        "r": r,
        "summands": summands,
        "perQ": per_q,
        "grandTotalReal": grand,
    }


# ---------------------------------------------------------------------------
# the two worked side-216 decompositions


def _swap23(r=3):
    return permutation_diagram((1, 3, 2), r)


def _elem(d):
    return AlgebraElement.from_diagram(d)


def _coevaluation_rows(cfg, pattern):
    """Seed vectors sum_l (basis tuple with l at two slots, v at the third).

    pattern gives, per slot, "l" (the summed index) or "v" (the free one);
    one row per choice of the free basis vector v.
    """
    rows = []
    for v in range(cfg.dim):
        vec = {}
        for l in range(cfg.dim):
            tup = tuple(l if w == "l" else v for w in pattern)
            vec[cfg.index(tup)] = 1
        rows.append(vec)
    return ExactMatrix(cfg.dim, cfg.side, rows)


def _basis_matrix(vectors, side):
    return ExactMatrix(len(vectors), side, list(vectors))


def _left_kernel_basis(mats):
    """Basis of {x : x M = 0 for every M}, as rows."""
    stacked = vstack([m.transpose() for m in mats])
    return nullspace_basis(stacked)


def _projector_checks(blocks):
    """Orthogonal-projector verification for pairwise-orthogonal row blocks.

    For each block B: G = B B^T must be invertible, and P = B^T G^-1 B must
    fix B^T (which forces P idempotent of rank = rows(B)); distinct blocks
    must satisfy B_i B_j^T = 0, which makes the projector products vanish.
    """
    gram_inv = []
    for b in blocks:
        try:
            gram_inv.append(invert(b * b.transpose()))
        except ValueError:
            return False  # dependent rows: no projector from this block
    for b, ginv in zip(blocks, gram_inv):
        proj = b.transpose() * ginv * b
        if proj * b.transpose() != b.transpose():
            return False
        if matrix_rank(proj) != b.nrows:
            return False
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if not (blocks[i] * blocks[j].transpose()).is_zero():
                return False
    return True


def gray_hervella(n=3, max_side=1024):
    """Dimensions of the four summands of the alternating J-aligned sector.

    The sector W of the third tensor power consists of the x with
    x(23) = -x = x J_2 J_3.  Its pieces: the fully alternating part, the
    part killed by 1 + (123) + (132), the part with xJ_1 = -xJ_2 and
    x c_12 = 0, and a diagonal copy of V built from coevaluation seeds.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    cfg = TensorSpaceConfig(n, 3, max_side)
    side = cfg.side
    one = AlgebraElement.one(3)
    swap = _elem(_swap23())
    jj = _elem(j_pair_diagram(2, 3, 3))
    pw = Fraction(1, 4) * (one - swap) * (one - jj)
    if pw * pw != pw:
        raise ArithmeticError("sector projector is not idempotent in the algebra")
    PW = rho_element(pw, cfg).mat
    dim_w = matrix_rank(PW)

    identity = ExactMatrix.identity(side)
    off_w = identity - PW
    r12 = rho_diagram(permutation_diagram((2, 1, 3), 3), cfg).mat
    r123 = rho_diagram(permutation_diagram((2, 3, 1), 3), cfg).mat
    r132 = rho_diagram(permutation_diagram((3, 1, 2), 3), cfg).mat
    j1 = rho_diagram(generator_J(1, 3), cfg).mat
    j2 = rho_diagram(generator_J(2, 3), cfg).mat
    c12 = rho_diagram(generator_c(1, 2, 3), cfg).mat

    b1 = _basis_matrix(_left_kernel_basis([off_w, identity + r12]), side)
    b2 = _basis_matrix(_left_kernel_basis([off_w, identity + r123 + r132]), side)
    b3 = _basis_matrix(_left_kernel_basis([off_w, j1 + j2, c12]), side)

    p4 = rho_element(
        Fraction(1, 4) * (one + _elem(j_pair_diagram(1, 3, 3))) * (one - swap), cfg).mat
    b4 = ExactMatrix(cfg.dim, side,
                     [vec_mat(row, p4) for row in _coevaluation_rows(cfg, "llv").rows])
    if not (b4 * off_w).is_zero():
        raise ArithmeticError("diagonal seed rows left the sector")

    blocks = [b1, b2, b3, b4]
    dims = [matrix_rank(b) for b in blocks]
    stacked_rank = matrix_rank(vstack(blocks))
    pairwise = all(
        matrix_rank(vstack([blocks[i], blocks[j]])) == dims[i] + dims[j]
        for i in range(4) for j in range(i + 1, 4))
    direct = (stacked_rank == sum(dims) == dim_w) and pairwise
    projectors_ok = _projector_checks(blocks)
    return {
        "n": n,
        "dimW": dim_w,
        "dims": dims,
        "sumOfDims": sum(dims),
        "directSum": direct,
        "projectorsVerified": projectors_ok,
        "verified": direct and projectors_ok,
    }


def abbena_garbiero(n=3, max_side=1024):
    """Dimensions of the four summands of the alternating J-opposed sector.

    The sector K: x(23) = -x = -x J_2 J_3.  It matches the doubled V (x) V
    (x) V* space Y cut out by e_{1,2}; the pieces are the symmetric and
    alternating (in slots 1,2) kernels of the slot-1/3 contraction plus two
    coevaluation copies of V, transported into K by 1 - (23).
    """
    if n < 3:
        raise ValueError("need n >= 3")
    cfg = TensorSpaceConfig(n, 3, max_side)
    side = cfg.side
    one = AlgebraElement.one(3)
    swap = _elem(_swap23())
    jj = _elem(j_pair_diagram(2, 3, 3))
    pk = Fraction(1, 4) * (one - swap) * (one + jj)
    if pk * pk != pk:
        raise ArithmeticError("sector projector is not idempotent in the algebra")
    PK = rho_element(pk, cfg).mat
    dim_k = matrix_rank(PK)

    identity = ExactMatrix.identity(side)
    E = rho_element(idempotent_eP({1, 2}, 1, 3), cfg).mat
    off_y = identity - E
    r12 = rho_diagram(permutation_diagram((2, 1, 3), 3), cfg).mat
    c13 = rho_diagram(generator_c(1, 3, 3), cfg).mat

    b_sym = _basis_matrix(_left_kernel_basis([off_y, identity - r12, c13]), side)
    b_alt = _basis_matrix(_left_kernel_basis([off_y, identity + r12, c13]), side)
    b_v1 = ExactMatrix(cfg.dim, side,
                       [vec_mat(row, E) for row in _coevaluation_rows(cfg, "vll").rows])
    b_v2 = ExactMatrix(cfg.dim, side,
                       [vec_mat(row, E) for row in _coevaluation_rows(cfg, "lvl").rows])

    transport = identity - rho_diagram(_swap23(), cfg).mat
    blocks = [b * transport for b in (b_sym, b_alt, b_v1, b_v2)]
    for b in blocks:
        if not (b * (identity - PK)).is_zero():
            raise ArithmeticError("a transported summand left the sector")
    dims = [matrix_rank(b) for b in blocks]
    stacked_rank = matrix_rank(vstack(blocks))
    direct = stacked_rank == sum(dims) == dim_k
    return {
        "n": n,
        "dimK": dim_k,
        "dims": dims,
        "sumOfDims": sum(dims),
        "directSum": direct,
        "verified": direct,
    }
