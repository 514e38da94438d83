"""The diagram action on r-fold tensor powers of a realified hermitian space.

V is C^n seen as R^{2n} with orthonormal basis b_1..b_{2n}, where
b_{n+k} = i b_k; multiplication by i is the real operator J with
J b_k = b_{n+k}, J b_{n+k} = -b_k.  The tensor power has its basis indexed
by r-tuples, most significant slot first.  All operators act on the right
(rows of a matrix are inputs), so rho(X)rho(Y) corresponds to applying X
first, matching the diagram product X*Y.
"""

import itertools
import random
from fractions import Fraction

from .exact import (ExactMatrix, SizeBoundError, matrix_rank, nullspace_basis,
                    vstack, vec_mat, poly_eval, modular_rank_two_primes)
from .diagrams import enumerate_diagrams, count_diagrams
from .algebra import AlgebraElement, multiply_diagrams, z_element, idempotent_eP, \
    generator_J


class TensorSpaceConfig:
    """Dimensions and index bookkeeping for (R^{2n})^{tensor r}."""

    __slots__ = ("n", "r", "dim", "side")

    def __init__(self, n, r, max_side=1024):
        if n < 1 or r < 1:
            raise ValueError("need n >= 1 and r >= 1")
        self.n = n
        self.r = r
        self.dim = 2 * n
        self.side = self.dim ** r
        if self.side > max_side:
            raise SizeBoundError(
                "matrix side (2n)^r = %d exceeds bound %d" % (self.side, max_side))

    def index(self, tup):
        idx = 0
        for t in tup:
            idx = idx * self.dim + t
        return idx

    def tuple_of(self, idx):
        out = []
        for _ in range(self.r):
            idx, t = divmod(idx, self.dim)
            out.append(t)
        return tuple(reversed(out))

    def j_apply(self, k):
        """Multiplication by i on basis vector k: returns (sign, image index)."""
        if k < self.n:
            return 1, k + self.n
        return -1, k - self.n

    def __repr__(self):
        return "TensorSpaceConfig(n=%d, r=%d)" % (self.n, self.r)


class TensorOperator:
    """A (2n)^r-square exact matrix tied to its space configuration."""

    __slots__ = ("cfg", "mat")

    def __init__(self, cfg, mat):
        if mat.nrows != cfg.side or mat.ncols != cfg.side:
            raise ValueError("matrix side does not match the configuration")
        self.cfg = cfg
        self.mat = mat

    @classmethod
    def identity(cls, cfg):
        return cls(cfg, ExactMatrix.identity(cfg.side))

    @classmethod
    def zero(cls, cfg):
        return cls(cfg, ExactMatrix(cfg.side, cfg.side))

    def _check(self, other):
        if self.cfg.side != other.cfg.side or self.cfg.n != other.cfg.n:
            raise ValueError("operators live on different spaces")

    def __add__(self, other):
        self._check(other)
        return TensorOperator(self.cfg, self.mat + other.mat)

    def __sub__(self, other):
        self._check(other)
        return TensorOperator(self.cfg, self.mat - other.mat)

    def __mul__(self, other):
        if isinstance(other, TensorOperator):
            self._check(other)
            return TensorOperator(self.cfg, self.mat * other.mat)
        return TensorOperator(self.cfg, self.mat.scale(other))

    def __rmul__(self, other):
        return TensorOperator(self.cfg, self.mat.scale(other))

    def __neg__(self):
        return TensorOperator(self.cfg, self.mat.scale(-1))

    def __eq__(self, other):
        if not isinstance(other, TensorOperator):
            return NotImplemented
        return self.cfg.side == other.cfg.side and self.mat == other.mat

    def is_zero(self):
        return self.mat.is_zero()

    def rank(self):
        return matrix_rank(self.mat)

    def trace(self):
        return sum(row.get(i, 0) for i, row in enumerate(self.mat.rows))

    def __repr__(self):
        return "<TensorOperator n=%d r=%d, %d nonzero>" % (
            self.cfg.n, self.cfg.r, self.mat.nnz())


def rho_diagram(X, cfg):
    """Matrix of one marked diagram on the tensor power.

    Top horizontal edges contract two input slots against the inner
    product (with J inserted when marked), vertical edges route an input
    slot to an output slot (through J when marked), and bottom horizontal
    edges expand into the sum over k of b_k placed left and J^m b_k placed
    right.
    """
    if X.r != cfg.r:
        raise ValueError("diagram has r=%d, config has r=%d" % (X.r, cfg.r))
    r, dim = cfg.r, cfg.dim
    top, vert, bottom = [], [], []
    for p, q, m in X.edges:
        if q <= r:
            top.append((p - 1, q - 1, m))
        elif p <= r:
            vert.append((p - 1, q - r - 1, m))
        else:
            bottom.append((p - r - 1, q - r - 1, m))
    rows = [{} for _ in range(cfg.side)]
    for idx in range(cfg.side):
        t = cfg.tuple_of(idx)
        sign = 1
        dead = False
        for a, b, m in top:
            vb = t[b]
            if m:
                s, vb = cfg.j_apply(vb)
                sign *= s
            if t[a] != vb:
                dead = True
                break
        if dead:
            continue
        out = [0] * r
        for a, j, m in vert:
            v = t[a]
            if m:
                s, v = cfg.j_apply(v)
                sign *= s
            out[j] = v
        row = rows[idx]
        for assign in itertools.product(range(dim), repeat=len(bottom)):
            s2 = sign
            for (a, b, m), k in zip(bottom, assign):
                out[a] = k
                if m:
                    sk, k = cfg.j_apply(k)
                    s2 *= sk
                out[b] = k
            row[cfg.index(out)] = s2
    return TensorOperator(cfg, ExactMatrix(cfg.side, cfg.side, rows))


def rho_element(a, cfg):
    """Image of a linear combination, with x evaluated at 2n."""
    if a.r != cfg.r:
        raise ValueError("element has r=%d, config has r=%d" % (a.r, cfg.r))
    acc = ExactMatrix(cfg.side, cfg.side)
    for d, c in a.sorted_terms():
        val = poly_eval(c, 2 * cfg.n)
        if val:
            acc = acc + rho_diagram(d, cfg).mat.scale(val)
    return TensorOperator(cfg, acc)


def verify_homomorphism(cfg, sample_count=200, seed=0, exhaustive=False,
                        failures=None):
    """Check rho(X)rho(Y) = rho(X*Y) at x=2n on diagram pairs.

    Exhaustive mode walks every ordered pair; otherwise sample_count pairs
    are drawn with the given seed.  Returns True when every checked pair
    agrees exactly; mismatching pairs are appended to `failures` if given.
    """
    diagrams = list(enumerate_diagrams(cfg.r))
    cache = {}

    def image(d):
        if d not in cache:
            cache[d] = rho_diagram(d, cfg).mat
        return cache[d]

    if exhaustive:
        pairs = itertools.product(diagrams, repeat=2)
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(diagrams), rng.choice(diagrams))
                 for _ in range(sample_count))
    ok = True
    for X, Y in pairs:
        coeff, prod = multiply_diagrams(X, Y)
        lhs = image(X) * image(Y)
        if prod is None:
            rhs = ExactMatrix(cfg.side, cfg.side)
        else:
            rhs = image(prod).scale(poly_eval(coeff, 2 * cfg.n))
        if lhs != rhs:
            ok = False
            if failures is not None:
                failures.append((X, Y))
    return ok


# ---------------------------------------------------------------------------
# span, kernel, commutant


def _vectorized_images(cfg, bound=5):
    """One sparse row per diagram: the flattened rho matrix."""
    side = cfg.side
    rows = []
    for d in enumerate_diagrams(cfg.r, bound):
        op = rho_diagram(d, cfg)
        vec = {}
        for i, row in enumerate(op.mat.rows):
            base = i * side
            for j, v in row.items():
                vec[base + j] = v
        rows.append(vec)
    return ExactMatrix(len(rows), side * side, rows)


def _wide_rank(m):
    """Rank of a wide rational matrix, via the exact Gram matrix when wide.

    rank(M M^T) = rank(M) over the rationals, and the Gram matrix is only
    nrows x nrows, which keeps elimination cheap when ncols is huge.
    """
    if m.ncols <= 4096:
        return matrix_rank(m)
    gram_rows = []
    from .exact import dot
    for i, u in enumerate(m.rows):
        grow = {}
        for j, v in enumerate(m.rows):
            if j < i:
                prev = gram_rows[j].get(i)
                if prev:
                    grow[j] = prev
                continue
            p = dot(u, v)
            if p:
                grow[j] = p
        gram_rows.append(grow)
    return matrix_rank(ExactMatrix(m.nrows, m.nrows, gram_rows))


def diagram_span_rank(cfg, bound=5):
    """Dimension of the span of all diagram images inside End."""
    return _wide_rank(_vectorized_images(cfg, bound))


def rho_kernel_dim(cfg, bound=5):
    """Dimension of the space of combinations of diagrams that act as zero."""
    count = count_diagrams(cfg.r)
    return count - diagram_span_rank(cfg, bound)


def z_element_check(cfg):
    """The witness combination: nonzero in the algebra, zero on tensors.

    Only meaningful on the non-injective side n <= r-1; calling it with
    n >= r is an error.
    """
    if cfg.n >= cfg.r:
        raise ValueError("witness requires n <= r-1 (got n=%d, r=%d)"
                         % (cfg.n, cfg.r))
    z = z_element(cfg.r)
    return (not z.is_zero()) and rho_element(z, cfg).is_zero()


def u_basis(n):
    """A real basis of the skew-hermitian matrices on C^n, realified.

    Returns 2n x 2n single-site matrices as {row: {col: int}} dicts:
    iE_kk for each k, then E_kl - E_lk and i(E_kl + E_lk) for k < l.
    """
    ops = []
    for k in range(n):
        ops.append({k: {n + k: 1}, n + k: {k: -1}})
    for k in range(n):
        for l in range(k + 1, n):
            ops.append({l: {k: 1}, k: {l: -1},
                        n + l: {n + k: 1}, n + k: {n + l: -1}})
            ops.append({l: {n + k: 1}, k: {n + l: 1},
                        n + l: {k: -1}, n + k: {l: -1}})
    return ops


def diagonal_action(op_rows, cfg):
    """Action of a single-site operator on the tensor power, summed over slots."""
    rows = [{} for _ in range(cfg.side)]
    for idx in range(cfg.side):
        t = cfg.tuple_of(idx)
        row = rows[idx]
        for s in range(cfg.r):
            for j, v in op_rows.get(t[s], {}).items():
                out = list(t)
                out[s] = j
                k = cfg.index(out)
                w = row.get(k, 0) + v
                if w:
                    row[k] = w
                else:
                    del row[k]
    return ExactMatrix(cfg.side, cfg.side, rows)


def _commutator_system(cfg):
    """Equations [D, M] = 0 in the side^2 unknowns M[i,j], one basis D at a time."""
    side = cfg.side
    rows = []
    for op in u_basis(cfg.n):
        d = diagonal_action(op, cfg)
        cols = [{} for _ in range(side)]
        for i, row in enumerate(d.rows):
            for j, v in row.items():
                cols[j][i] = v
        for i in range(side):
            drow = d.rows[i]
            for k in range(side):
                eq = {}
                for j, v in drow.items():
                    eq[j * side + k] = v
                for j, v in cols[k].items():
                    w = eq.get(i * side + j, 0) - v
                    if w:
                        eq[i * side + j] = w
                    else:
                        eq.pop(i * side + j, None)
                if eq:
                    rows.append(eq)
    return ExactMatrix(len(rows), side * side, rows)


def commutant_dim(cfg, mode="auto", seed=0, max_unknowns=4096):
    """Dimension of the matrices commuting with the whole diagonal action.

    mode: "exact" (rational elimination), "mod-p" (two random primes that
    must agree), "both" (run both and require equality), or "auto"
    (exact up to 256 unknowns, else mod-p).
    """
    unknowns = cfg.side ** 2
    if unknowns > max_unknowns:
        raise SizeBoundError(
            "commutant system has %d unknowns (bound %d)" % (unknowns, max_unknowns))
    system = _commutator_system(cfg)
    if mode == "auto":
        mode = "exact" if unknowns <= 256 else "mod-p"
    if mode == "exact":
        rank = matrix_rank(system)
    elif mode == "mod-p":
        rank, _ = modular_rank_two_primes(system, random.Random(seed))
    elif mode == "both":
        rank = matrix_rank(system)
        mrank, primes = modular_rank_two_primes(system, random.Random(seed))
        if mrank != rank:
            raise ArithmeticError(
                "modular rank %d (primes %s) != rational rank %d"
                % (mrank, primes, rank))
    else:
        raise ValueError("unknown mode %r" % mode)
    return unknowns - rank


def centralizer_equals_diagram_span(cfg, mode="auto", seed=0):
    """Does the diagram span exhaust the commutant of the unitary action?"""
    return diagram_span_rank(cfg) == commutant_dim(cfg, mode=mode, seed=seed)


# ---------------------------------------------------------------------------
# invariant forms


def invariant_form_eval(sigma, delta, vectors, cfg):
    """Product of pairings <v_{sigma(2l-1)}, J^{delta_l} v_{sigma(2l)}>.

    vectors are coordinate rows (sequences or {index: value} dicts) in the
    b-basis; sigma permutes their positions (1-based); delta picks J or not
    for each of the m pairings.
    """
    if len(vectors) % 2:
        raise ValueError("need an even number of vectors")
    m = len(vectors) // 2
    if sorted(sigma) != list(range(1, 2 * m + 1)):
        raise ValueError("sigma must permute 1..%d" % (2 * m))
    if len(delta) != m:
        raise ValueError("delta must have %d bits" % m)
    coords = []
    for vec in vectors:
        if isinstance(vec, dict):
            coords.append({k: Fraction(v) for k, v in vec.items() if v})
        else:
            coords.append({k: Fraction(v) for k, v in enumerate(vec) if v})
    total = Fraction(1)
    for l in range(m):
        u = coords[sigma[2 * l] - 1]
        w = coords[sigma[2 * l + 1] - 1]
        if delta[l]:
            jw = {}
            for k, v in w.items():
                s, k2 = cfg.j_apply(k)
                jw[k2] = s * v
            w = jw
        total *= sum(u[k] * w[k] for k in u.keys() & w.keys())
        if not total:
            return Fraction(0)
    return total


def _pair_supports(delta_bit, cfg):
    """All (i, j, sign) with <b_i | J^delta b_j> = sign != 0."""
    out = []
    for j in range(cfg.dim):
        if delta_bit:
            s, i = cfg.j_apply(j)
        else:
            s, i = 1, j
        out.append((i, j, s))
    return out


def pairing_form_vector(matching, delta, cfg):
    """Coordinates of the form contracting the slots paired by `matching`.

    matching: disjoint (a, b) pairs covering 1..r; delta: one bit per pair.
    Entry at a basis tuple is the product over pairs of <b_{t_a}|J^m b_{t_b}>.
    """
    vec = {}
    pairs = list(matching)
    supports = [_pair_supports(bit, cfg) for bit in delta]
    for combo in itertools.product(*supports):
        out = [0] * cfg.r
        sign = 1
        for (a, b), (i, j, s) in zip(pairs, combo):
            out[a - 1] = i
            out[b - 1] = j
            sign *= s
        vec[cfg.index(out)] = sign
    return vec


def _slot_matchings(r):
    from .diagrams import _matchings
    return list(_matchings(tuple(range(1, r + 1))))


def all_pairing_forms(cfg):
    """Every (matching, delta) form vector, in deterministic order."""
    if cfg.r % 2:
        raise ValueError("pairing forms need an even tensor power")
    forms = []
    for matching in _slot_matchings(cfg.r):
        for delta in itertools.product((0, 1), repeat=cfg.r // 2):
            forms.append(((matching, delta),
                          pairing_form_vector(matching, delta, cfg)))
    return forms


def pairing_forms_rank(cfg):
    forms = all_pairing_forms(cfg)
    return matrix_rank(ExactMatrix(len(forms), cfg.side, [v for _, v in forms]))


def forms_annihilated(cfg):
    """Is every pairing form killed by every basis element of the action?"""
    forms = all_pairing_forms(cfg)
    for op in u_basis(cfg.n):
        d = diagonal_action(op, cfg)
        for _, vec in forms:
            for row in d.rows:
                if sum(row.get(k, 0) * v for k, v in vec.items()):
                    return False
    return True


def invariant_space_dim(cfg):
    """Dimension of the forms annihilated by the full diagonal action.

    For even r the span of the pairing forms must reproduce the same
    dimension, and for odd r the dimension must be zero; both facts are
    re-verified on every call and violations raise ArithmeticError.
    """
    stacked = vstack([diagonal_action(op, cfg) for op in u_basis(cfg.n)])
    dim = cfg.side - matrix_rank(stacked)
    if cfg.r % 2:
        if dim != 0:
            raise ArithmeticError(
                "odd tensor power carries a nonzero invariant (dim %d)" % dim)
    else:
        span = pairing_forms_rank(cfg)
        if span != dim:
            raise ArithmeticError(
                "pairing forms span %d but the invariant space has dim %d"
                % (span, dim))
    return dim


# ---------------------------------------------------------------------------
# idempotent images


def eP_image_rank(P, cfg, p=None):
    """Rank of the idempotent's image, cross-checked against its eigenspace.

    The image must coincide with {x : x J_q = x J_p for q in P,
    x J_q = -x J_p for q outside P}; any discrepancy raises ArithmeticError.
    """
    P = frozenset(P)
    if p is None:
        p = min(P)
    e = idempotent_eP(P, p, cfg.r)
    mat = rho_element(e, cfg).mat
    rank = matrix_rank(mat)
    jmats = {q: rho_diagram(generator_J(q, cfg.r), cfg).mat
             for q in range(1, cfg.r + 1)}
    constraints = []
    for q in range(1, cfg.r + 1):
        if q == p:
            continue
        sign = -1 if q in P else 1
        diff = jmats[q] + jmats[p].scale(sign)
        if not (mat * diff).is_zero():
            raise ArithmeticError(
                "image of e_P violates its J-eigenspace law at q=%d" % q)
        constraints.append(diff.transpose())
    if constraints:
        eigdim = cfg.side - matrix_rank(vstack(constraints))
    else:
        eigdim = cfg.side
    if eigdim != rank:
        raise ArithmeticError(
            "e_P image rank %d != joint eigenspace dim %d" % (rank, eigdim))
    return rank


# ---------------------------------------------------------------------------
# serialization


def operator_to_json(op):
    entries = []
    for i, row in enumerate(op.mat.rows):
        for j in sorted(row):
            entries.append([i + 1, j + 1, str(Fraction(row[j]))])
    return {"n": op.cfg.n, "r": op.cfg.r, "entries": entries}


def operator_from_json(obj, max_side=1024):
    cfg = TensorSpaceConfig(obj["n"], obj["r"], max_side)
    rows = [{} for _ in range(cfg.side)]
    for i, j, val in obj["entries"]:
        if not (1 <= i <= cfg.side and 1 <= j <= cfg.side):
            raise ValueError("entry (%d, %d) outside the matrix" % (i, j))
        rows[i - 1][j - 1] = Fraction(val)
    return TensorOperator(cfg, ExactMatrix(cfg.side, cfg.side, rows))
