"""Marked Brauer diagrams on two rows of r vertices.

Vertices are numbered 1..r across the top row and r+1..2r across the
bottom row.  A diagram is a perfect matching of the 2r vertices where
every edge may carry one mark; the mark always sits on the edge's
larger-indexed endpoint (the rightmost vertex of a horizontal edge, the
bottom vertex of a vertical edge).  There are 2^r (2r-1)!! of them.

Text grammar: whitespace-separated edges, each "p-q" or "p-q*".
"""

import itertools
import re

from .exact import SizeBoundError


class DiagramParseError(ValueError):
    """Raised when a diagram string does not describe a marked matching."""


class MarkedDiagram:
    """An immutable marked perfect matching; hashable, canonically stored."""

    __slots__ = ("r", "edges")

    def __init__(self, r, edges):
        if r < 1:
            raise ValueError("r must be at least 1")
        canon = []
        seen = set()
        for p, q, marked in edges:
            if p > q:
                p, q = q, p
            if p == q:
                raise ValueError("self-loop at vertex %d" % p)
            if not (1 <= p and q <= 2 * r):
                raise ValueError("vertex out of range in edge (%d, %d)" % (p, q))
            if p in seen or q in seen:
                raise ValueError("repeated vertex in edge (%d, %d)" % (p, q))
            seen.add(p)
            seen.add(q)
            canon.append((p, q, bool(marked)))
        if len(canon) != r:
            raise ValueError("expected %d edges, got %d" % (r, len(canon)))
        canon.sort()
        self.r = r
        self.edges = tuple(canon)

    def partner(self, v):
        for p, q, _ in self.edges:
            if p == v:
                return q
            if q == v:
                return p
        raise KeyError(v)

    def __eq__(self, other):
        if not isinstance(other, MarkedDiagram):
            return NotImplemented
        return self.r == other.r and self.edges == other.edges

    def __hash__(self):
        return hash((self.r, self.edges))

    def __lt__(self, other):
        return (self.r, self.edges) < (other.r, other.edges)

    def __str__(self):
        return format_diagram(self)

    def __repr__(self):
        return "<diagram r=%d %s>" % (self.r, format_diagram(self))


_EDGE_RE = re.compile(r"^(\d+)-(\d+)(\*)?$")


def parse_diagram(text, r):
    tokens = text.split()
    if not tokens:
        raise DiagramParseError("empty diagram string")
    edges = []
    seen = set()
    for tok in tokens:
        m = _EDGE_RE.match(tok)
        if not m:
            raise DiagramParseError("malformed edge token %r" % tok)
        p, q = int(m.group(1)), int(m.group(2))
        if p == q:
            raise DiagramParseError("self-loop in edge %r" % tok)
        for v in (p, q):
            if not 1 <= v <= 2 * r:
                raise DiagramParseError("vertex %d out of range 1..%d" % (v, 2 * r))
            if v in seen:
                raise DiagramParseError("vertex %d appears in two edges" % v)
            seen.add(v)
        edges.append((p, q, m.group(3) is not None))
    if len(edges) != r:
        raise DiagramParseError(
            "expected %d edges for r=%d, got %d" % (r, r, len(edges)))
    return MarkedDiagram(r, edges)


def format_diagram(d):
    return " ".join("%d-%d%s" % (p, q, "*" if marked else "")
                    for p, q, marked in d.edges)


def identity_diagram(r):
    return MarkedDiagram(r, [(i, r + i, False) for i in range(1, r + 1)])


def generator_sigma(l, r):
    """The crossing of strands l and l+1 (all edges unmarked)."""
    if not 1 <= l <= r - 1:
        raise ValueError("sigma index %d out of range 1..%d" % (l, r - 1))
    edges = [(i, r + i, False) for i in range(1, r + 1) if i not in (l, l + 1)]
    edges.append((l, r + l + 1, False))
    edges.append((l + 1, r + l, False))
    return MarkedDiagram(r, edges)


def generator_J(l, r):
    """The identity matching with a single mark on strand l."""
    if not 1 <= l <= r:
        raise ValueError("J index %d out of range 1..%d" % (l, r))
    return MarkedDiagram(r, [(i, r + i, i == l) for i in range(1, r + 1)])


def generator_c(p, q, r):
    """Contraction: top edge (p,q), bottom edge (r+p,r+q), verticals elsewhere."""
    if not (1 <= p < q <= r):
        raise ValueError("need 1 <= p < q <= r, got p=%d q=%d" % (p, q))
    edges = [(p, q, False), (r + p, r + q, False)]
    edges.extend((i, r + i, False) for i in range(1, r + 1) if i not in (p, q))
    return MarkedDiagram(r, edges)


def permutation_diagram(perm, r):
    """Unmarked diagram of a permutation: slot j of the output gets factor perm[j-1].

    perm lists the images (sigma(1), ..., sigma(r)).
    """
    if sorted(perm) != list(range(1, r + 1)):
        raise ValueError("not a permutation of 1..%d: %r" % (r, perm))
    return MarkedDiagram(r, [(perm[j - 1], r + j, False) for j in range(1, r + 1)])


def perm_sign(perm):
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def count_diagrams(r):
    """2^r (2r-1)!!"""
    total = 2 ** r
    for k in range(1, 2 * r, 2):
        total *= k
    return total


def _matchings(verts):
    if not verts:
        yield ()
        return
    a = verts[0]
    for i in range(1, len(verts)):
        b = verts[i]
        rest = verts[1:i] + verts[i + 1:]
        for tail in _matchings(rest):
            yield ((a, b),) + tail


def enumerate_diagrams(r, bound=5):
    """All marked diagrams in a fixed deterministic order."""
    if r > bound:
        raise SizeBoundError("enumeration limited to r <= %d (got r=%d)" % (bound, r))
    for pairs in _matchings(tuple(range(1, 2 * r + 1))):
        for marks in itertools.product((False, True), repeat=r):
            yield MarkedDiagram(r, [(p, q, mk) for (p, q), mk in zip(pairs, marks)])
