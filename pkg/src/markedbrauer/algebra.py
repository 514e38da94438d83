"""The diagram algebra over Q[x].

Multiplying two diagrams concatenates them: the bottom row of X is joined
strand by strand to the top row of Y, and the joined graph decomposes
into paths (ending at outer vertices) and closed loops.  Every loop
contributes a factor x and a sign; every path contributes a sign and one
edge of the product diagram; marks travel to a target endpoint, flipping
the sign once per horizontal matching edge crossed, and annihilate in
pairs at the target with sign (-1)^floor(s/2).

Middle vertices keep their identity: the l-th bottom vertex of X and the
l-th top vertex of Y stay distinct and are joined by a "connector" edge,
which is never marked and never counts as a horizontal move.
"""

import collections
import itertools
from fractions import Fraction

from .exact import Polynomial, SizeBoundError
from .diagrams import (MarkedDiagram, identity_diagram, generator_sigma,
                       generator_J, generator_c, permutation_diagram,
                       perm_sign, count_diagrams, format_diagram)

HORIZONTAL = "horizontal-matching"
VERTICAL = "vertical-matching"
CONNECTOR = "connector"


class TraceComponent:
    """A maximal path or loop of the concatenation graph.

    vertices are tags: ("T", i) top row of X, ("B", i) bottom row of Y,
    ("X", l) bottom row of X, ("Y", l) top row of Y.  edge_kinds[i] labels
    the step leaving vertices[i]; for loops the last step closes the walk.
    mark_positions index into vertices.
    """

    __slots__ = ("kind", "vertices", "edge_kinds", "mark_positions", "r")

    def __init__(self, kind, vertices, edge_kinds, mark_positions, r):
        self.kind = kind
        self.vertices = tuple(vertices)
        self.edge_kinds = tuple(edge_kinds)
        self.mark_positions = tuple(mark_positions)
        self.r = r

    def __repr__(self):
        return "<%s %s marks=%s>" % (self.kind, list(self.vertices),
                                     list(self.mark_positions))


GammaResult = collections.namedtuple("GammaResult", ["sign", "residual_mark"])


def _vertex_order(v):
    side, l = v
    return (l, 0 if side == "X" else 1)


def _outer_index(v, r):
    side, i = v
    return i if side == "T" else r + i


def trace_components(X, Y):
    """Decompose the concatenation graph of X over Y into paths and loops."""
    if X.r != Y.r:
        raise ValueError("diagrams have different r: %d vs %d" % (X.r, Y.r))
    r = X.r
    match = {}

    def add_edge(u, v, kind, mark_vertex):
        match[u] = (v, kind, mark_vertex)
        match[v] = (u, kind, mark_vertex)

    for p, q, marked in X.edges:
        u = ("T", p) if p <= r else ("X", p - r)
        v = ("T", q) if q <= r else ("X", q - r)
        kind = HORIZONTAL if (p <= r) == (q <= r) else VERTICAL
        add_edge(u, v, kind, v if marked else None)
    for p, q, marked in Y.edges:
        u = ("Y", p) if p <= r else ("B", p - r)
        v = ("Y", q) if q <= r else ("B", q - r)
        kind = HORIZONTAL if (p <= r) == (q <= r) else VERTICAL
        add_edge(u, v, kind, v if marked else None)

    comps = []
    visited = set()

    def walk(start, stop_at_outer):
        verts = [start]
        kinds = []
        marks = []
        visited.add(start)
        cur = start
        take_matching = True
        while True:
            if take_matching:
                nxt, kind, mark_vertex = match[cur]
                kinds.append(kind)
                if mark_vertex is not None:
                    if mark_vertex == cur:
                        marks.append(len(verts) - 1)
                    else:
                        marks.append(0 if nxt == start else len(verts))
            else:
                side, l = cur
                nxt = ("Y", l) if side == "X" else ("X", l)
                kinds.append(CONNECTOR)
            if nxt == start and not stop_at_outer:
                break
            verts.append(nxt)
            visited.add(nxt)
            cur = nxt
            if stop_at_outer and cur[0] in ("T", "B"):
                break
            take_matching = not take_matching
        return verts, kinds, sorted(marks)

    for i in range(1, r + 1):
        for row in ("T", "B"):
            start = (row, i)
            if start not in visited:
                verts, kinds, marks = walk(start, stop_at_outer=True)
                comps.append(TraceComponent("path", verts, kinds, marks, r))
    middles = sorted(
        (v for l in range(1, r + 1) for v in (("X", l), ("Y", l))),
        key=_vertex_order)
    for start in middles:
        if start not in visited:
            verts, kinds, marks = walk(start, stop_at_outer=False)
            comps.append(TraceComponent("loop", verts, kinds, marks, r))
    return comps


def gamma_path(c):
    """Sign and residual mark of a path: marks travel to the target endpoint.

    The target is the endpoint with the larger product index, i.e. the
    bottom endpoint of a vertical result edge and the rightmost endpoint
    of a horizontal one.  Only horizontal matching edges between a mark
    and the target flip the sign; s marks annihilate to (s mod 2) with an
    extra (-1)^floor(s/2).
    """
    if c.kind != "path":
        raise ValueError("gamma_path expects a path component")
    i0 = _outer_index(c.vertices[0], c.r)
    i1 = _outer_index(c.vertices[-1], c.r)
    target_pos = len(c.vertices) - 1 if i1 > i0 else 0
    moves = 0
    for pos in c.mark_positions:
        lo, hi = (pos, target_pos) if pos <= target_pos else (target_pos, pos)
        moves += sum(1 for k in c.edge_kinds[lo:hi] if k == HORIZONTAL)
    s = len(c.mark_positions)
    sign = (-1) ** (moves + s // 2)
    return GammaResult(sign, bool(s % 2))


def _arc_edges(m, pos, fixed, forward):
    if forward:
        return [(pos + t) % m for t in range((fixed - pos) % m)]
    return [(pos - 1 - t) % m for t in range((pos - fixed) % m)]


def _arc_moves(c, edge_indices):
    return sum(1 for e in edge_indices if c.edge_kinds[e] == HORIZONTAL)


def _check_loop_sign_invariance(c):
    """The loop sign must not depend on the fixed vertex or the arc chosen.

    This is asserted on every call and raises ArithmeticError on the first
    counterexample ever encountered.
    """
    m = len(c.vertices)
    ref_parity = None
    for fixed in range(m):
        total = 0
        for pos in c.mark_positions:
            fwd = _arc_moves(c, _arc_edges(m, pos, fixed, True))
            bwd = _arc_moves(c, _arc_edges(m, pos, fixed, False))
            if (fwd - bwd) % 2:
                raise ArithmeticError(
                    "loop sign ill-defined: the two arcs from mark %d to "
                    "vertex %d differ in parity in %r" % (pos, fixed, c))
            total += fwd
        if ref_parity is None:
            ref_parity = total % 2
        elif ref_parity != total % 2:
            raise ArithmeticError(
                "loop sign ill-defined: fixed vertex %d changes the total "
                "parity in %r" % (fixed, c))


def gamma_loop(c):
    """Sign of a loop: 0 for an odd mark count, else (-1)^moves (-1)^(s/2)."""
    if c.kind != "loop":
        raise ValueError("gamma_loop expects a loop component")
    s = len(c.mark_positions)
    if s % 2:
        return GammaResult(0, False)
    if s == 0:
        return GammaResult(1, False)
    _check_loop_sign_invariance(c)
    m = len(c.vertices)
    fixed = min(range(m), key=lambda i: _vertex_order(c.vertices[i]))
    moves = 0
    for pos in c.mark_positions:
        fwd = _arc_edges(m, pos, fixed, True)
        bwd = _arc_edges(m, pos, fixed, False)
        if len(fwd) < len(bwd):
            arc = fwd
        elif len(bwd) < len(fwd):
            arc = bwd
        else:
            nf = c.vertices[(pos + 1) % m]
            nb = c.vertices[(pos - 1) % m]
            arc = fwd if _vertex_order(nf) <= _vertex_order(nb) else bwd
        moves += _arc_moves(c, arc)
    sign = (-1) ** (moves + s // 2)
    return GammaResult(sign, False)


def multiply_diagrams(X, Y):
    """(coefficient, product diagram); the diagram is None for a zero product."""
    comps = trace_components(X, Y)
    r = X.r
    sign = 1
    loops = 0
    edges = []
    for c in comps:
        if c.kind == "loop":
            g = gamma_loop(c)
            if g.sign == 0:
                return Polynomial(), None
            sign *= g.sign
            loops += 1
        else:
            g = gamma_path(c)
            sign *= g.sign
            a = _outer_index(c.vertices[0], r)
            b = _outer_index(c.vertices[-1], r)
            edges.append((min(a, b), max(a, b), g.residual_mark))
    return Polynomial.x_power(loops, sign), MarkedDiagram(r, edges)


# ---------------------------------------------------------------------------
# linear combinations


class AlgebraElement:
    """A Q[x]-linear combination of marked diagrams sharing one r."""

    __slots__ = ("r", "terms")

    def __init__(self, r, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for d, c in items:
                if d.r != r:
                    raise ValueError("diagram has r=%d, element has r=%d" % (d.r, r))
                poly = c if isinstance(c, Polynomial) else Polynomial([c])
                if poly.is_zero():
                    continue
                prev = clean.get(d)
                poly = poly if prev is None else prev + poly
                if poly.is_zero():
                    clean.pop(d, None)
                else:
                    clean[d] = poly
        self.r = r
        self.terms = clean

    @classmethod
    def zero(cls, r):
        return cls(r)

    @classmethod
    def one(cls, r):
        return cls(r, {identity_diagram(r): 1})

    @classmethod
    def from_diagram(cls, d, coeff=1):
        return cls(d.r, {d: coeff})

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].edges)

    def __add__(self, other):
        other = self._coerce(other)
        merged = dict(self.terms)
        out = AlgebraElement(self.r)
        out.terms = merged
        for d, c in other.terms.items():
            prev = merged.get(d)
            s = c if prev is None else prev + c
            if s.is_zero():
                merged.pop(d, None)
            else:
                merged[d] = s
        return out

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        out = AlgebraElement(self.r)
        out.terms = {d: -c for d, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, MarkedDiagram):
            other = AlgebraElement.from_diagram(other)
        if isinstance(other, AlgebraElement):
            if other.r != self.r:
                raise ValueError("elements have different r")
            acc = {}
            for d1, c1 in self.terms.items():
                for d2, c2 in other.terms.items():
                    coeff, prod = multiply_diagrams(d1, d2)
                    if prod is None:
                        continue
                    c = c1 * c2 * coeff
                    prev = acc.get(prod)
                    c = c if prev is None else prev + c
                    if c.is_zero():
                        acc.pop(prod, None)
                    else:
                        acc[prod] = c
            out = AlgebraElement(self.r)
            out.terms = acc
            return out
        # scalar or polynomial
        poly = other if isinstance(other, Polynomial) else Polynomial([other])
        if poly.is_zero():
            return AlgebraElement.zero(self.r)
        out = AlgebraElement(self.r)
        out.terms = {d: c * poly for d, c in self.terms.items()}
        return out

    def __rmul__(self, other):
        if isinstance(other, MarkedDiagram):
            return AlgebraElement.from_diagram(other) * self
        return self.__mul__(other)  # scalars commute

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = AlgebraElement.one(self.r)
        for _ in range(k):
            out = out * self
        return out

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            if other.r != self.r:
                raise ValueError("elements have different r")
            return other
        if isinstance(other, MarkedDiagram):
            return AlgebraElement.from_diagram(other)
        return AlgebraElement(self.r, {identity_diagram(self.r): other})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = AlgebraElement(self.r, {identity_diagram(self.r): other})
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.r == other.r and self.terms == other.terms

    def __hash__(self):
        return hash((self.r, tuple(sorted((d.edges, c.coeffs)
                                          for d, c in self.terms.items()))))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return "<element r=%d: %s>" % (self.r, format_element(self))


def multiply_elements(a, b):
    if a.r != b.r:
        raise ValueError("elements have different r")
    return a * b


def format_element(a):
    """Terms "coeff*diagram" joined by " + "; multi-term coefficients get parens."""
    if a.is_zero():
        return "0"
    parts = []
    for d, c in a.sorted_terms():
        text = str(c)
        if " + " in text or " - " in text:
            text = "(%s)" % text
        parts.append("%s*%s" % (text, format_diagram(d)))
    return " + ".join(parts)


def element_to_json(a):
    return [{"coeff": str(c), "diagram": format_diagram(d)}
            for d, c in a.sorted_terms()]


# ---------------------------------------------------------------------------
# idempotents, relations, closure


def j_pair_diagram(p, q, r):
    """Identity matching with marks on strands p and q (the product J_p J_q)."""
    if p == q or not (1 <= p <= r and 1 <= q <= r):
        raise ValueError("need distinct strands in 1..r")
    return MarkedDiagram(r, [(i, r + i, i in (p, q)) for i in range(1, r + 1)])


def idempotent_eP(P, p, r):
    """The primitive idempotent attached to a nonempty subset P of strands.

    (1/2^(r-1)) * prod_{q in P, q != p} (1 - J_p J_q)
                * prod_{q not in P} (1 + J_p J_q)
    """
    P = frozenset(P)
    if not P:
        raise ValueError("P must be nonempty")
    if p not in P:
        raise ValueError("p=%d must belong to P" % p)
    if not all(1 <= q <= r for q in P):
        raise ValueError("P must be a subset of 1..%d" % r)
    acc = AlgebraElement.one(r)
    for q in sorted(P - {p}):
        acc = acc * (AlgebraElement.one(r)
                     - AlgebraElement.from_diagram(j_pair_diagram(p, q, r)))
    for q in sorted(set(range(1, r + 1)) - P):
        acc = acc * (AlgebraElement.one(r)
                     + AlgebraElement.from_diagram(j_pair_diagram(p, q, r)))
    return Fraction(1, 2 ** (r - 1)) * acc


RELATION_NAMES = (
    "sigma_involutive",
    "sigma_distant_commute",
    "braid",
    "j_square_is_minus_one",
    "j_sigma_distant_commute",
    "j_sigma_fourth_power",
    "c_idempotent_up_to_x",
    "c_sigma_distant_commute",
    "c_sigma_absorption",
    "c_sandwich",
    "c_j_c_vanishes",
    "j_c_annihilation",
    "conjugated_j_commutes_with_c",
    "conjugated_c_commute",
)

# Sufficient defining subsets for small r.
_DEFINING = {
    2: ("sigma_involutive", "j_square_is_minus_one", "j_sigma_fourth_power",
        "c_idempotent_up_to_x", "c_sigma_absorption", "c_j_c_vanishes",
        "j_c_annihilation"),
    3: ("sigma_involutive", "braid", "j_square_is_minus_one",
        "j_sigma_fourth_power", "c_idempotent_up_to_x", "c_sigma_absorption",
        "c_sandwich", "c_j_c_vanishes", "j_c_annihilation",
        "conjugated_j_commutes_with_c"),
}


def _relation_cases(name, r):
    """Yield (case label, lhs, rhs) pairs for one named relation at size r."""
    one = AlgebraElement.one(r)
    x = Polynomial.x_power(1)
    sig = lambda l: AlgebraElement.from_diagram(generator_sigma(l, r))
    J1 = AlgebraElement.from_diagram(generator_J(1, r))
    c12 = AlgebraElement.from_diagram(generator_c(1, 2, r)) if r >= 2 else None
    if name == "sigma_involutive":
        for l in range(1, r):
            yield "l=%d" % l, sig(l) * sig(l), one
    elif name == "sigma_distant_commute":
        for l in range(1, r):
            for m in range(l + 2, r):
                yield "l=%d,m=%d" % (l, m), sig(l) * sig(m), sig(m) * sig(l)
    elif name == "braid":
        for l in range(1, r - 1):
            yield "l=%d" % l, (sig(l) * sig(l + 1)) ** 3, one
    elif name == "j_square_is_minus_one":
        yield "", J1 * J1, -one
    elif name == "j_sigma_distant_commute":
        for l in range(2, r):
            yield "l=%d" % l, J1 * sig(l), sig(l) * J1
    elif name == "j_sigma_fourth_power":
        if r >= 2:
            yield "", (J1 * sig(1)) ** 4, one
    elif name == "c_idempotent_up_to_x":
        if r >= 2:
            yield "", c12 * c12, x * c12
    elif name == "c_sigma_distant_commute":
        for l in range(3, r):
            yield "l=%d" % l, c12 * sig(l), sig(l) * c12
    elif name == "c_sigma_absorption":
        if r >= 2:
            yield "right", c12 * sig(1), c12
            yield "left", sig(1) * c12, c12
    elif name == "c_sandwich":
        if r >= 3:
            yield "", c12 * sig(2) * c12, c12
    elif name == "c_j_c_vanishes":
        if r >= 2:
            yield "", c12 * J1 * c12, AlgebraElement.zero(r)
    elif name == "j_c_annihilation":
        if r >= 2:
            yield "left", (sig(1) * J1 + J1) * c12, AlgebraElement.zero(r)
            yield "right", c12 * (J1 + J1 * sig(1)), AlgebraElement.zero(r)
    elif name == "conjugated_j_commutes_with_c":
        if r >= 3:
            w = sig(2) * sig(1) * J1 * sig(1) * sig(2)
            yield "", w * c12, c12 * w
    elif name == "conjugated_c_commute":
        if r >= 4:
            u = sig(2) * sig(1) * sig(3) * sig(2)
            uinv = sig(2) * sig(3) * sig(1) * sig(2)
            yield "", c12 * u * c12 * uinv, u * c12 * uinv * c12
    else:
        raise ValueError("unknown relation %r" % name)


def check_relations(r):
    """Verify the defining relations by exact element arithmetic.

    Returns a report: per-relation status with the offending difference
    when a case fails, the list of relations that suffice as a defining
    set at this r, and an overall flag.
    """
    if r < 2:
        raise ValueError("relations need r >= 2")
    relations = {}
    for name in RELATION_NAMES:
        cases = 0
        failure = None
        for label, lhs, rhs in _relation_cases(name, r):
            cases += 1
            if lhs != rhs:
                failure = {"case": label,
                           "difference": format_element(lhs - rhs)}
                break
        relations[name] = {"holds": failure is None, "cases": cases}
        if failure:
            relations[name]["failure"] = failure
    defining = _DEFINING.get(r, RELATION_NAMES)
    return {
        "r": r,
        "relations": relations,
        "defining_set": list(defining),
        "all_hold": all(rel["holds"] for rel in relations.values()),
    }


def _nonempty_subsets(r):
    base = range(1, r + 1)
    for size in range(1, r + 1):
        for combo in itertools.combinations(base, size):
            yield frozenset(combo)


def verify_idempotent_family(r):
    """Exact checks on the whole e_P family at one r.

    Confirms e_P does not depend on the chosen p, that each e_P is
    idempotent, that the e_P for distinct P containing 1 are mutually
    orthogonal, and that those anchored at 1 sum to the identity.
    """
    independence = idempotency = True
    anchored = []
    for P in _nonempty_subsets(r):
        e = idempotent_eP(P, min(P), r)
        for p in sorted(P)[1:]:
            if idempotent_eP(P, p, r) != e:
                independence = False
        if e * e != e:
            idempotency = False
        if 1 in P:
            anchored.append(e)
    orthogonal = all(
        (anchored[i] * anchored[j]).is_zero()
        for i in range(len(anchored)) for j in range(len(anchored)) if i != j)
    total = AlgebraElement.zero(r)
    for e in anchored:
        total = total + e
    sums_to_one = total == AlgebraElement.one(r)
    return {
        "r": r,
        "subsets": 2 ** r - 1,
        "anchored": len(anchored),
        "independence": independence,
        "idempotency": idempotency,
        "orthogonality": orthogonal,
        "sumsToOne": sums_to_one,
        "ok": independence and idempotency and orthogonal and sums_to_one,
    }


def standard_generators(r):
    gens = [generator_sigma(l, r) for l in range(1, r)]
    gens.append(generator_J(1, r))
    if r >= 2:
        gens.append(generator_c(1, 2, r))
    return gens


def span_closure(r, generators=None, bound=4):
    """Breadth-first closure of the generators under diagram products.

    Scalars are discarded and zero products skipped; any nonzero word in
    the generators is some nonzero scalar times a reachable diagram.
    Returns (reachedCount, complete).
    """
    if r > bound:
        raise SizeBoundError("closure limited to r <= %d (got r=%d)" % (bound, r))
    gens = standard_generators(r) if generators is None else list(generators)
    reached = {identity_diagram(r)}
    reached.update(gens)
    frontier = sorted(reached)
    while frontier:
        fresh = []
        for d in frontier:
            for g in gens:
                _, prod = multiply_diagrams(d, g)
                if prod is not None and prod not in reached:
                    reached.add(prod)
                    fresh.append(prod)
        frontier = fresh
    return len(reached), len(reached) == count_diagrams(r)


def z_element(r):
    """The alternating sum over permutations, hit by prod (1 - J_1 J_q).

    Nonzero in the algebra for every r, but represented by the zero matrix
    whenever the tensor space is too small (n <= r-1).
    """
    acc = AlgebraElement.zero(r)
    for perm in itertools.permutations(range(1, r + 1)):
        acc = acc + AlgebraElement.from_diagram(
            permutation_diagram(perm, r), perm_sign(perm))
    for q in range(2, r + 1):
        acc = (AlgebraElement.one(r)
               - AlgebraElement.from_diagram(j_pair_diagram(1, q, r))) * acc
    return acc
