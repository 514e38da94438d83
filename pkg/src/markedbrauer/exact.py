"""Exact linear algebra over the rationals, plus univariate polynomials.

Scalars are `fractions.Fraction`.  Polynomials store a tuple of
coefficients indexed by degree.  Matrices are sparse: a list of rows,
each row a dict mapping column index to a nonzero Fraction (or int).
Rank comes from fraction-free integer elimination; nullspaces from a
reduced echelon form over Q.  A mod-p rank kernel (numpy, optionally
numba) lives in modp.py and is wired in through rank_mod_p for
cross-checking larger systems against two random primes.
"""

from fractions import Fraction
import math
import re

from . import modp


class SizeBoundError(ValueError):
    """A requested computation exceeds a configured size bound."""


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Univariate polynomial over Q; coeffs[k] is the x^k coefficient.

    >>> str(Polynomial([1, -1, Fraction(3, 2)]))
    '3/2*x^2 - x + 1'
    >>> str(Polynomial())
    '0'
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def x_power(cls, k, c=1):
        return cls([0] * k + [c])

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for k, c in enumerate(other.coeffs):
            a[k] += c
        return Polynomial(a)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return "Polynomial(%r)" % (list(self.coeffs),)


def _as_poly(v):
    if isinstance(v, Polynomial):
        return v
    if isinstance(v, (int, Fraction)):
        return Polynomial([v])
    return None


def poly_eval(p, v):
    """Evaluate p at v by Horner's rule, exactly."""
    v = Fraction(v)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * v + c
    return acc


def format_poly(p):
    """Render with descending powers, e.g. "3/2*x^2 - x + 1"."""
    if p.is_zero():
        return "0"
    pieces = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            xpart = "x" if k == 1 else "x^%d" % k
            body = xpart if mag == 1 else "%s*%s" % (mag, xpart)
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append((" + " if c > 0 else " - ") + body)
    return "".join(pieces)


_TERM_RE = re.compile(r"^(-?)(\d+(?:/\d+)?)?(?:\*?(x)(?:\^(\d+))?)?$")


def parse_poly(text):
    """Parse the textual polynomial form produced by format_poly."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    s = s.replace("-", "+-")
    coeffs = {}
    for term in s.split("+"):
        if not term:
            continue
        m = _TERM_RE.match(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise ValueError("malformed polynomial term %r" % term)
        sign = -1 if m.group(1) else 1
        mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3) is None:
            k = 0
        elif m.group(4) is None:
            k = 1
        else:
            k = int(m.group(4))
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * mag
    out = [Fraction(0)] * (max(coeffs) + 1 if coeffs else 0)
    for k, c in coeffs.items():
        out[k] = c
    return Polynomial(out)


# ---------------------------------------------------------------------------
# sparse exact matrices


class ExactMatrix:
    """A sparse nrows x ncols matrix over Q (rows are {col: value} dicts)."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows = [{} for _ in range(nrows)]
        else:
            if len(rows) != nrows:
                raise ValueError("row count mismatch")
            self.rows = [{j: v for j, v in row.items() if v} for row in rows]

    @classmethod
    def from_rows(cls, dense_rows, ncols=None):
        if ncols is None:
            ncols = len(dense_rows[0]) if dense_rows else 0
        rows = [{j: v for j, v in enumerate(row) if v} for row in dense_rows]
        return cls(len(dense_rows), ncols, rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: 1} for i in range(n)])

    def entry(self, i, j):
        return self.rows[i].get(j, 0)

    def nnz(self):
        return sum(len(row) for row in self.rows)

    def is_zero(self):
        return all(not row for row in self.rows)

    def transpose(self):
        cols = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                cols[j][i] = v
        return ExactMatrix(self.ncols, self.nrows, cols)

    def scale(self, c):
        if c == 0:
            return ExactMatrix(self.nrows, self.ncols)
        return ExactMatrix(self.nrows, self.ncols,
                           [{j: c * v for j, v in row.items()} for row in self.rows])

    def __add__(self, other):
        self._shape_check(other)
        rows = []
        for ra, rb in zip(self.rows, other.rows):
            row = dict(ra)
            for j, v in rb.items():
                w = row.get(j, 0) + v
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
            rows.append(row)
        return ExactMatrix(self.nrows, self.ncols, rows)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions differ")
        rows = []
        for row in self.rows:
            acc = {}
            for j, v in row.items():
                for k, w in other.rows[j].items():
                    acc[k] = acc.get(k, 0) + v * w
            rows.append({k: v for k, v in acc.items() if v})
        return ExactMatrix(self.nrows, other.ncols, rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and \
            self.rows == other.rows

    def __hash__(self):
        return hash((self.nrows, self.ncols,
                     tuple(tuple(sorted(r.items())) for r in self.rows)))

    def _shape_check(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def __repr__(self):
        return "<ExactMatrix %dx%d, %d nonzero>" % (self.nrows, self.ncols, self.nnz())


def vstack(mats):
    """Stack matrices with equal column counts on top of each other."""
    ncols = mats[0].ncols
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("column counts differ")
        rows.extend(dict(r) for r in m.rows)
    return ExactMatrix(len(rows), ncols, rows)


def vec_mat(vec, m):
    """Row vector (a {index: value} dict) times a matrix."""
    acc = {}
    for j, v in vec.items():
        for k, w in m.rows[j].items():
            acc[k] = acc.get(k, 0) + v * w
    return {k: v for k, v in acc.items() if v}


def dot(u, v):
    """Inner product of two sparse vectors."""
    if len(u) > len(v):
        u, v = v, u
    acc = 0
    for j, a in u.items():
        b = v.get(j)
        if b is not None:
            acc += a * b
    return acc


# ---------------------------------------------------------------------------
# elimination


def _integer_rows(m):
    """Scale each nonzero row to a primitive integer vector."""
    out = []
    for row in m.rows:
        if not row:
            continue
        den = 1
        for v in row.values():
            d = v.denominator
            den = den * d // math.gcd(den, d)
        ints = {j: int(v * den) for j, v in row.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        if g > 1:
            ints = {j: v // g for j, v in ints.items()}
        out.append(ints)
    return out


def _eliminate(rows, ncols):
    """Sparse integer Gaussian elimination.

    Returns (rank, echelon) where echelon is a list of primitive integer
    rows with strictly increasing leading columns.
    """
    buckets = {}
    for r in rows:
        if r:
            buckets.setdefault(min(r), []).append(r)
    rank = 0
    echelon = []
    for col in range(ncols):
        bucket = buckets.pop(col, None)
        if not bucket:
            continue
        bucket.sort(key=len)
        pivot = bucket[0]
        pv = pivot[col]
        rank += 1
        echelon.append(pivot)
        for r in bucket[1:]:
            rv = r[col]
            g = math.gcd(pv, rv)
            a, b = pv // g, rv // g
            new = {j: a * v for j, v in r.items()}
            for j, w in pivot.items():
                t = new.get(j, 0) - b * w
                if t:
                    new[j] = t
                else:
                    new.pop(j, None)
            if not new:
                continue
            g2 = 0
            for v in new.values():
                g2 = math.gcd(g2, v)
            if g2 > 1:
                new = {j: v // g2 for j, v in new.items()}
            buckets.setdefault(min(new), []).append(new)
    return rank, echelon


def matrix_rank(m):
    """Exact rank over Q by fraction-free sparse elimination."""
    return _eliminate(_integer_rows(m), m.ncols)[0]


def nullspace_dim(m):
    """cols - rank."""
    return m.ncols - matrix_rank(m)


def _reduced_echelon(m):
    """Reduced row echelon form over Q: (pivot_cols, rows of Fractions)."""
    _, echelon = _eliminate(_integer_rows(m), m.ncols)
    echelon.sort(key=min)
    leads = []
    frows = []
    for r in echelon:
        lead = min(r)
        pv = r[lead]
        leads.append(lead)
        frows.append({j: Fraction(v, pv) for j, v in r.items()})
    for i in range(len(frows) - 1, -1, -1):
        lead_i = leads[i]
        for k in range(i):
            c = frows[k].get(lead_i)
            if not c:
                continue
            rk = frows[k]
            for j, v in frows[i].items():
                w = rk.get(j, 0) - c * v
                if w:
                    rk[j] = w
                else:
                    rk.pop(j, None)
    return leads, frows


def nullspace_basis(m):
    """A basis of {x : M x = 0}, one sparse vector per free column."""
    leads, frows = _reduced_echelon(m)
    lead_set = set(leads)
    basis = []
    for f in range(m.ncols):
        if f in lead_set:
            continue
        vec = {f: Fraction(1)}
        for lead, row in zip(leads, frows):
            c = row.get(f)
            if c:
                vec[lead] = -c
        basis.append(vec)
    return basis


def row_space_basis(m):
    """Independent spanning rows of m (reduced echelon rows over Q)."""
    return _reduced_echelon(m)[1]


def invert(m):
    """Inverse of a square matrix; raises ValueError when singular."""
    if m.nrows != m.ncols:
        raise ValueError("not square")
    n = m.nrows
    aug_rows = []
    for i, row in enumerate(m.rows):
        r = dict(row)
        r[n + i] = Fraction(1)
        aug_rows.append(r)
    aug = ExactMatrix(n, 2 * n, aug_rows)
    leads, frows = _reduced_echelon(aug)
    if leads != list(range(n)):
        raise ValueError("matrix is singular")
    inv_rows = []
    for row in frows:
        inv_rows.append({j - n: v for j, v in row.items() if j >= n})
    return ExactMatrix(n, n, inv_rows)


# ---------------------------------------------------------------------------
# prime-field ranks

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(num):
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs."""
    if num < 2:
        return False
    for w in _MR_WITNESSES:
        if num % w == 0:
            return num == w
    d, s = num - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, num)
        if x in (1, num - 1):
            continue
        for _ in range(s - 1):
            x = x * x % num
            if x == num - 1:
                break
        else:
            return False
    return True


def random_prime(rng, lo=1 << 20, hi=1 << 21):
    """A random prime in [lo, hi), rejection-sampled."""
    while True:
        cand = rng.randrange(lo | 1, hi, 2)
        if is_prime(cand):
            return cand


_DENSE_CAP = 50_000_000


def rank_mod_p(m, p):
    """Rank of m over Z/p.  Rejects non-prime p and denominators killed by p."""
    if not is_prime(p):
        raise ValueError("%d is not prime" % p)
    if m.nrows * m.ncols > _DENSE_CAP:
        raise SizeBoundError("matrix too large for the dense mod-p kernel")
    dense = modp.np.zeros((m.nrows, m.ncols), dtype=modp.np.int64)
    for i, row in enumerate(m.rows):
        for j, v in row.items():
            num, den = v.numerator, v.denominator
            if den % p == 0:
                raise ValueError("denominator divisible by p=%d" % p)
            cell = num % p
            if den != 1:
                cell = cell * pow(den, p - 2, p) % p
            dense[i, j] = cell
    return modp.rank_mod_p_dense(dense, p)


def modular_rank_two_primes(m, rng):
    """Rank of m modulo two distinct random primes; they must agree.

    Modular rank can only undercount, so agreement of two independent
    primes above 2^20 is strong evidence of the true rank; a disagreement
    is a hard error.
    """
    ranks = []
    primes = []
    while len(primes) < 2:
        p = random_prime(rng)
        if p in primes:
            continue
        try:
            rk = rank_mod_p(m, p)
        except ValueError:
            continue  # p divided some denominator; draw again
        primes.append(p)
        ranks.append(rk)
    if ranks[0] != ranks[1]:
        raise ArithmeticError(
            "modular ranks disagree: rank=%d mod %d but rank=%d mod %d"
            % (ranks[0], primes[0], ranks[1], primes[1]))
    return ranks[0], tuple(primes)
