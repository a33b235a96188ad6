"""Exact scalar arithmetic and dense/sparse matrix kernels.

Two fields are supported: the rationals (elements are ``fractions.Fraction``)
and prime fields F_p (elements are ints reduced to ``0..p-1``).  A field tag
is a :class:`Field` instance; scalars themselves are plain Python values, so
there is no per-element wrapper object.

Every operation is exact and deterministic.  Gaussian elimination always
pivots on the leftmost nonzero column of the topmost unreduced row, so the
reduced row echelon form, kernel bases and solve outputs are reproducible
bit for bit.  Rational elimination clears denominators and runs on Python
integers (cross-multiplication with per-row gcd normalisation), which is
both exact and much faster than Fraction arithmetic in the inner loop.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, FieldMismatch

_INT64_SAFE = 2**62


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Field tag plus exact scalar operations."""

    name = "?"

    def coerce(self, x):
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero()

    def to_str(self, a):
        raise NotImplementedError

    def parse(self, s):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def to_str(self, a):
        return str(a)

    def parse(self, s):
        return Fraction(s)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return (x.numerator % self.p) * pow(den, self.p - 2, self.p) % self.p
        if isinstance(x, str):
            return self.coerce(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def to_str(self, a):
        return str(a % self.p)

    def parse(self, s):
        return self.coerce(Fraction(s))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = RationalField()

_GF_CACHE = {}


def GF(p):
    """The prime field F_p (cached)."""
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


def parse_field(tag):
    """Parse a field tag string: "Q" or "Fp:<prime>"."""
    if tag == "Q":
        return QQ
    if tag.startswith("Fp:"):
        return GF(int(tag[3:]))
    raise ValueError(f"unknown field tag {tag!r}")


def field_tag_str(field):
    return "Q" if field == QQ else f"Fp:{field.p}"


def check_same_field(*fields):
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatch(f"{first} vs {f}")
    return first


class Matrix:
    """Immutable exact matrix over a fixed field (row-major tuples)."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_rref_cache")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        self.rows = rows
        self.nrows = len(rows)
        if rows:
            self.ncols = len(rows[0])
            for r in rows:
                if len(r) != self.ncols:
                    raise DimensionMismatch("ragged rows")
        else:
            if ncols is None:
                ncols = 0
            self.ncols = ncols
        self._rref_cache = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zeros(field, nrows, ncols):
        z = field.zero()
        return Matrix(field, [[z] * ncols for _ in range(nrows)], ncols=ncols)

    @staticmethod
    def identity(field, n):
        z, o = field.zero(), field.one()
        return Matrix(field, [[o if i == j else z for j in range(n)] for i in range(n)], ncols=n)

    @staticmethod
    def from_cols(field, cols, nrows=None):
        cols = list(cols)
        if cols:
            nrows = len(cols[0])
        elif nrows is None:
            nrows = 0
        return Matrix(field, [[cols[j][i] for j in range(len(cols))] for i in range(nrows)],
                      ncols=len(cols))

    @staticmethod
    def row_vector(field, entries):
        return Matrix(field, [list(entries)], ncols=len(entries))

    @staticmethod
    def col_vector(field, entries):
        return Matrix(field, [[x] for x in entries], ncols=1)

    # -- basic structure ---------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return f"Matrix({self.field}, {self.nrows}x{self.ncols})"

    def entry(self, i, j):
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def is_zero(self):
        zero = self.field.is_zero
        return all(zero(x) for r in self.rows for x in r)

    def is_identity(self):
        if self.nrows != self.ncols:
            return False
        f = self.field
        return all(r[j] == (f.one() if i == j else f.zero())
                   for i, r in enumerate(self.rows) for j in range(self.ncols))

    def transpose(self):
        return Matrix(self.field, [[self.rows[i][j] for i in range(self.nrows)]
                                   for j in range(self.ncols)], ncols=self.nrows)

    def hstack(self, other):
        if other.nrows != self.nrows:
            raise DimensionMismatch("hstack needs equal row counts")
        check_same_field(self.field, other.field)
        if self.nrows == 0:
            return Matrix(self.field, [], ncols=self.ncols + other.ncols)
        return Matrix(self.field, [self.rows[i] + other.rows[i] for i in range(self.nrows)])

    def vstack(self, other):
        if other.ncols != self.ncols:
            raise DimensionMismatch("vstack needs equal col counts")
        check_same_field(self.field, other.field)
        return Matrix(self.field, self.rows + other.rows, ncols=self.ncols)

    def submatrix(self, row_idx, col_idx):
        return Matrix(self.field, [[self.rows[i][j] for j in col_idx] for i in row_idx],
                      ncols=len(col_idx))

    def take_rows(self, idx):
        return Matrix(self.field, [self.rows[i] for i in idx], ncols=self.ncols)

    def map_entries(self, fn):
        return Matrix(self.field, [[fn(x) for x in r] for r in self.rows], ncols=self.ncols)

    def scale(self, c):
        c = self.field.coerce(c)
        mul = self.field.mul
        return Matrix(self.field, [[mul(c, x) for x in r] for r in self.rows], ncols=self.ncols)

    def add(self, other):
        self._check_shape(other)
        add = self.field.add
        return Matrix(self.field,
                      [[add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
                      ncols=self.ncols)

    def sub(self, other):
        self._check_shape(other)
        sub = self.field.sub
        return Matrix(self.field,
                      [[sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
                      ncols=self.ncols)

    def neg(self):
        neg = self.field.neg
        return Matrix(self.field, [[neg(x) for x in r] for r in self.rows], ncols=self.ncols)

    def _check_shape(self, other):
        check_same_field(self.field, other.field)
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch(f"{self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}")

    # -- multiplication ----------------------------------------------------

    def mul(self, other):
        check_same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        if self.nrows == 0:
            return Matrix(self.field, [], ncols=other.ncols)
        if other.ncols == 0:
            return Matrix(self.field, [[] for _ in range(self.nrows)], ncols=0)
        if self.ncols == 0:
            return Matrix.zeros(self.field, self.nrows, other.ncols)
        fast = _matmul_fast(self, other)
        if fast is not None:
            return fast
        f = self.field
        add, mul, zero = f.add, f.mul, f.zero()
        bt = other.transpose().rows
        out = []
        for ra in self.rows:
            out_row = []
            for cb in bt:
                acc = zero
                for a, b in zip(ra, cb):
                    if a != zero and b != zero:
                        acc = add(acc, mul(a, b))
                out_row.append(acc)
            out.append(out_row)
        return Matrix(f, out, ncols=other.ncols)

    def __matmul__(self, other):
        return self.mul(other)

    # -- serialisation -----------------------------------------------------

    def to_str_rows(self):
        ts = self.field.to_str
        return [[ts(x) for x in r] for r in self.rows]

    @staticmethod
    def from_str_rows(field, rows, ncols=None):
        return Matrix(field, [[field.parse(x) for x in r] for r in rows], ncols=ncols)

    def content_hash(self):
        h = hashlib.sha256()
        h.update(field_tag_str(self.field).encode())
        h.update(f":{self.nrows}x{self.ncols}:".encode())
        ts = self.field.to_str
        for r in self.rows:
            h.update((",".join(ts(x) for x in r) + ";").encode())
        return h.hexdigest()


def _matmul_fast(a, b):
    """int64 numpy matmul when all entries are small integers; None otherwise."""
    try:
        if a.field == QQ:
            if any(x.denominator != 1 for r in a.rows for x in r):
                return None
            if any(x.denominator != 1 for r in b.rows for x in r):
                return None
            na = np.array([[int(x) for x in r] for r in a.rows], dtype=object)
            nb = np.array([[int(x) for x in r] for r in b.rows], dtype=object)
            ma = max((abs(int(x)) for r in a.rows for x in r), default=0)
            mb = max((abs(int(x)) for r in b.rows for x in r), default=0)
            if ma * mb * max(a.ncols, 1) < _INT64_SAFE:
                prod = na.astype(np.int64) @ nb.astype(np.int64)
            else:
                prod = na @ nb
            return Matrix(QQ, [[Fraction(int(x)) for x in row] for row in prod.tolist()],
                          ncols=b.ncols)
        p = a.field.p
        if (p - 1) * (p - 1) * max(a.ncols, 1) < _INT64_SAFE:
            na = np.array(a.rows, dtype=np.int64)
            nb = np.array(b.rows, dtype=np.int64)
            prod = (na @ nb) % p
            return Matrix(a.field, prod.tolist(), ncols=b.ncols)
    except (OverflowError, ValueError):
        return None
    return None


# --------------------------------------------------------------------------
# Gaussian elimination.
#
# Pivot rule: scan columns left to right; the pivot is the topmost unreduced
# row with a nonzero entry in that column.  This makes the RREF (which is
# unique anyway), the pivot list, kernel bases and solve outputs reproducible.
# --------------------------------------------------------------------------


def _rref_prime(rows, ncols, p):
    rows = [list(r) for r in rows]
    pivots = []
    pr = 0
    nrows = len(rows)
    for pc in range(ncols):
        sel = None
        for i in range(pr, nrows):
            if rows[i][pc] % p:
                sel = i
                break
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        inv = pow(rows[pr][pc], p - 2, p)
        rows[pr] = [(x * inv) % p for x in rows[pr]]
        prow = rows[pr]
        for i in range(nrows):
            if i != pr and rows[i][pc]:
                c = rows[i][pc]
                ri = rows[i]
                rows[i] = [(x - c * y) % p for x, y in zip(ri, prow)]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def _igcd_row(row):
    g = 0
    for x in row:
        if x:
            g = _gcd(g, x if x > 0 else -x)
            if g == 1:
                return 1
    return g


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _rref_rational(rows, ncols):
    # Clear denominators per row, forward-eliminate on integers, then
    # renormalise the surviving pivot rows into the exact rational RREF.
    irows = []
    for r in rows:
        den = 1
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
        ir = [int(x * den) for x in r]
        g = _igcd_row(ir)
        if g > 1:
            ir = [x // g for x in ir]
        irows.append(ir)
    pivots = []
    pr = 0
    nrows = len(irows)
    for pc in range(ncols):
        sel = None
        for i in range(pr, nrows):
            if irows[i][pc]:
                sel = i
                break
        if sel is None:
            continue
        irows[pr], irows[sel] = irows[sel], irows[pr]
        prow = irows[pr]
        pv = prow[pc]
        for i in range(pr + 1, nrows):
            c = irows[i][pc]
            if c:
                ri = irows[i]
                new = [x * pv - y * c for x, y in zip(ri, prow)]
                g = _igcd_row(new)
                if g > 1:
                    new = [x // g for x in new]
                irows[i] = new
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    # Back substitution in exact rationals on the <= rank pivot rows.
    rank = len(pivots)
    frows = [[Fraction(x) for x in irows[i]] for i in range(rank)]
    for k in range(rank - 1, -1, -1):
        pc = pivots[k]
        pv = frows[k][pc]
        frows[k] = [x / pv for x in frows[k]]
        for i in range(k):
            c = frows[i][pc]
            if c:
                frows[i] = [x - c * y for x, y in zip(frows[i], frows[k])]
    zero_row = [Fraction(0)] * ncols
    out = frows + [list(zero_row) for _ in range(nrows - rank)]
    return out, pivots


def rref(m):
    """Reduced row echelon form: (rref matrix, pivot column tuple)."""
    if m._rref_cache is not None:
        return m._rref_cache
    if m.nrows == 0 or m.ncols == 0:
        res = (Matrix(m.field, [list(r) for r in m.rows], ncols=m.ncols), ())
        m._rref_cache = res
        return res
    if m.field == QQ:
        rows, pivots = _rref_rational(m.rows, m.ncols)
    else:
        rows, pivots = _rref_prime(m.rows, m.ncols, m.field.p)
    res = (Matrix(m.field, rows, ncols=m.ncols), tuple(pivots))
    m._rref_cache = res
    return res


def rank(m):
    """Rank over the exact field."""
    return len(rref(m)[1])


def kernel_basis(m):
    """Columns form the unique echelon-normalised basis of the right null space.

    Column j of the output corresponds to the j-th free column f of m: it has
    a 1 in position f, minus the RREF coefficient in each pivot position, and
    zeros elsewhere, so the output is unique and m @ K = 0 exactly.
    """
    R, pivots = rref(m)
    f = m.field
    zero, one = f.zero(), f.one()
    pivset = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    cols = []
    for fc in free:
        v = [zero] * m.ncols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(R.rows[i][fc])
        cols.append(v)
    return Matrix.from_cols(f, cols, nrows=m.ncols)


def solve(m, b):
    """Some x with m @ x = b (free variables set to 0), or None.

    b is a sequence of length m.nrows; returns a tuple of length m.ncols.
    """
    f = m.field
    b = [f.coerce(x) for x in b]
    if len(b) != m.nrows:
        raise DimensionMismatch("rhs length != row count")
    aug = Matrix(f, [list(r) + [b[i]] for i, r in enumerate(m.rows)], ncols=m.ncols + 1)
    R, pivots = rref(aug)
    if m.ncols in pivots:
        return None
    x = [f.zero()] * m.ncols
    for i, pc in enumerate(pivots):
        x[pc] = R.rows[i][m.ncols]
    return tuple(x)


def solve_matrix(m, B):
    """Solve m @ X = B column by column; None if any column is inconsistent."""
    f = check_same_field(m.field, B.field)
    if B.nrows != m.nrows:
        raise DimensionMismatch("solve_matrix shape")
    aug = m.hstack(B)
    R, pivots = rref(aug)
    if any(pc >= m.ncols for pc in pivots):
        return None
    cols = []
    for j in range(B.ncols):
        x = [f.zero()] * m.ncols
        for i, pc in enumerate(pivots):
            x[pc] = R.rows[i][m.ncols + j]
        cols.append(x)
    return Matrix.from_cols(f, cols, nrows=m.ncols)


def row_space_basis(m):
    """Canonical (RREF) basis of the row space, as a matrix of rows."""
    R, pivots = rref(m)
    return R.take_rows(range(len(pivots)))


def column_space_basis(m):
    """Canonical basis of the column span (RREF of the transpose, as columns)."""
    return row_space_basis(m.transpose()).transpose()


def subspace_equal(u, v):
    """True iff the column spans of u and v coincide (same ambient row count)."""
    check_same_field(u.field, v.field)
    if u.nrows != v.nrows:
        raise DimensionMismatch("ambient dimensions differ")
    ru, rv = rank(u), rank(v)
    if ru != rv:
        return False
    return rank(u.hstack(v)) == ru


def subspace_leq(u, v):
    """True iff colspan(u) is contained in colspan(v)."""
    check_same_field(u.field, v.field)
    if u.nrows != v.nrows:
        raise DimensionMismatch("ambient dimensions differ")
    return rank(u.hstack(v)) == rank(v)


def express_in_row_basis(basis, vectors):
    """Coordinates of each row of `vectors` in the row space of `basis`.

    Returns a Matrix C with C @ basis = vectors, or None if some row is
    outside the span.  Deterministic (RREF-based back substitution).
    """
    f = check_same_field(basis.field, vectors.field)
    if basis.ncols != vectors.ncols:
        raise DimensionMismatch("ambient mismatch")
    sol = solve_matrix(basis.transpose(), vectors.transpose())
    if sol is None:
        return None
    return sol.transpose()


# --------------------------------------------------------------------------
# Sparse integer rank, used by the truncated bar-complex oracle where dense
# matrices would not fit.  Columns are dicts {row_index: int coefficient}.
# --------------------------------------------------------------------------


def sparse_rank(columns, field):
    """Rank of the matrix whose columns are sparse int dicts, over `field`."""
    if field == QQ:
        return _sparse_rank_int(columns)
    return _sparse_rank_prime(columns, field.p)


def _sparse_rank_int(columns):
    pivots = {}
    rk = 0
    for col in columns:
        col = {r: c for r, c in col.items() if c}
        while col:
            lead = min(col)
            piv = pivots.get(lead)
            if piv is None:
                g = 0
                for v in col.values():
                    g = _gcd(g, v if v > 0 else -v)
                    if g == 1:
                        break
                if g > 1:
                    col = {r: c // g for r, c in col.items()}
                pivots[lead] = col
                rk += 1
                break
            a, b = piv[lead], col[lead]
            g = _gcd(a if a > 0 else -a, b if b > 0 else -b)
            ma, mb = a // g, b // g
            new = {}
            for r, c in col.items():
                new[r] = c * ma
            for r, c in piv.items():
                val = new.get(r, 0) - c * mb
                if val:
                    new[r] = val
                elif r in new:
                    del new[r]
            col = new
    return rk


def _sparse_rank_prime(columns, p):
    pivots = {}
    rk = 0
    for col in columns:
        col = {r: c % p for r, c in col.items() if c % p}
        while col:
            lead = min(col)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(col[lead], p - 2, p)
                pivots[lead] = {r: (c * inv) % p for r, c in col.items()}
                rk += 1
                break
            b = col[lead]
            new = dict(col)
            for r, c in piv.items():
                val = (new.get(r, 0) - c * b) % p
                if val:
                    new[r] = val
                elif r in new:
                    del new[r]
            col = new
    return rk
