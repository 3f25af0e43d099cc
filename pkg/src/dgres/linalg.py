"""
Exact sparse linear algebra.

Vectors are dicts ``{index: value}`` holding only nonzero entries.  A
:class:`Matrix` stores its columns as such dicts, which is the natural
layout here: differentials are built by applying a map to each source
basis element in turn.
"""

from .field import QQ, check_same


class DimensionError(ValueError):
    pass


# -- sparse vector helpers ---------------------------------------------------

def axpy(v, c, w, p):
    """v += c*w in place (entries reduced mod p when p > 0)."""
    if p:
        for k, x in w.items():
            y = (v.get(k, 0) + c * x) % p
            if y:
                v[k] = y
            else:
                v.pop(k, None)
    else:
        for k, x in w.items():
            y = v.get(k, 0) + c * x
            if y:
                v[k] = y
            else:
                v.pop(k, None)
    return v


def scaled(w, c, p):
    if p:
        out = {k: (c * x) % p for k, x in w.items()}
        return {k: x for k, x in out.items() if x}
    if c == 0:
        return {}
    return {k: c * x for k, x in w.items()}


class Echelon:
    """
    An incrementally built echelon basis of sparse vectors.

    Each stored vector has its smallest index as pivot, normalized to 1.
    With ``track=True`` every vector also carries the combination of the
    inserted vectors (by tag) that produced it, which is what kernel and
    solve need.
    """

    def __init__(self, field=QQ, track=False):
        self.field = field
        self.p = field.p
        self.track = track
        self.piv = {}
        self.combo = {}

    def __len__(self):
        return len(self.piv)

    def reduce(self, v, combo=None):
        v = dict(v)
        p = self.p
        piv = self.piv
        if combo is not None:
            combo = dict(combo)
        while True:
            hits = [k for k in v if k in piv]
            if not hits:
                break
            k = min(hits)
            c = v[k]
            axpy(v, -c, piv[k], p)
            if combo is not None:
                axpy(combo, -c, self.combo[k], p)
        return v, combo

    def add(self, v, tag=None):
        """Insert v; return True when it was independent of what is stored."""
        combo = {tag: 1} if self.track else None
        r, combo = self.reduce(v, combo)
        if not r:
            return False
        k = min(r)
        inv = self.field.inv(r[k])
        self.piv[k] = scaled(r, inv, self.p)
        if self.track:
            self.combo[k] = scaled(combo, inv, self.p)
        return True

    def contains(self, v):
        r, _ = self.reduce(v)
        return not r


# -- matrices ----------------------------------------------------------------

class Matrix:
    """A rows x cols matrix over an exact field, stored by sparse columns."""

    __slots__ = ("rows", "cols", "field", "columns")

    def __init__(self, rows, cols, columns=None, field=QQ):
        if rows < 0 or cols < 0:
            raise DimensionError("negative shape")
        self.rows = rows
        self.cols = cols
        self.field = field
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise DimensionError("expected %d columns, got %d" % (cols, len(columns)))
        self.columns = columns

    @classmethod
    def from_rows(cls, data, field=QQ, cols=None):
        data = [list(r) for r in data]
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        columns = [{} for _ in range(cols)]
        for i, r in enumerate(data):
            if len(r) != cols:
                raise DimensionError("ragged row %d" % i)
            for j, x in enumerate(r):
                x = field(x)
                if x:
                    columns[j][i] = x
        return cls(rows, cols, columns, field)

    @classmethod
    def zeros(cls, rows, cols, field=QQ):
        return cls(rows, cols, None, field)

    @classmethod
    def identity(cls, n, field=QQ):
        return cls(n, n, [{i: 1} for i in range(n)], field)

    def entry(self, i, j):
        return self.columns[j].get(i, 0)

    def to_rows(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, x in c.items():
                out[i][j] = x
        return out

    def is_zero(self):
        return not any(self.columns)

    def transpose(self):
        cols = [{} for _ in range(self.rows)]
        for j, c in enumerate(self.columns):
            for i, x in c.items():
                cols[i][j] = x
        return Matrix(self.cols, self.rows, cols, self.field)

    T = property(transpose)

    def apply(self, v):
        """Matrix times a sparse vector."""
        if v and max(v) >= self.cols:
            raise DimensionError("vector index out of range")
        out = {}
        p = self.field.p
        for j, x in v.items():
            axpy(out, x, self.columns[j], p)
        return out

    def __matmul__(self, other):
        check_same(self.field, other.field)
        if self.cols != other.rows:
            raise DimensionError("cannot compose %dx%d with %dx%d"
                                 % (self.rows, self.cols, other.rows, other.cols))
        return Matrix(self.rows, other.cols,
                      [self.apply(c) for c in other.columns], self.field)

    def __add__(self, other):
        check_same(self.field, other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in sum")
        p = self.field.p
        cols = [axpy(dict(a), 1, b, p) for a, b in zip(self.columns, other.columns)]
        return Matrix(self.rows, self.cols, cols, self.field)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        p = self.field.p
        c = self.field(c)
        return Matrix(self.rows, self.cols, [scaled(col, c, p) for col in self.columns],
                      self.field)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.field) == (other.rows, other.cols, other.field) \
            and all(a == b for a, b in zip(self.columns, other.columns))

    __hash__ = None

    def __repr__(self):
        return "Matrix(%dx%d over %s)" % (self.rows, self.cols, self.field)

    # elimination-based queries

    def echelon(self, track=False):
        e = Echelon(self.field, track=track)
        for j, c in enumerate(self.columns):
            e.add(c, tag=j)
        return e

    def rank(self):
        # eliminate along the shorter side
        if self.rows < self.cols:
            return len(self.transpose().echelon())
        return len(self.echelon())

    def kernel(self):
        """Sparse basis of the null space (dicts over column indices)."""
        e = Echelon(self.field, track=True)
        out = []
        for j, c in enumerate(self.columns):
            r, combo = e.reduce(c, {j: 1})
            if r:
                k = min(r)
                inv = self.field.inv(r[k])
                e.piv[k] = scaled(r, inv, e.p)
                e.combo[k] = scaled(combo, inv, e.p)
            else:
                out.append(combo)
        return out

    def image_columns(self):
        """Indices of a maximal independent set of columns."""
        e = Echelon(self.field)
        return [j for j, c in enumerate(self.columns) if e.add(c)]

    def solve(self, b):
        """Some sparse x with self @ x == b, or None."""
        e = Echelon(self.field, track=True)
        for j, c in enumerate(self.columns):
            e.add(c, tag=j)
        r, combo = e.reduce(b, {})
        if r:
            return None
        return scaled(combo, -1, self.field.p)


def rank(m):
    return m.rank()


def kernel_basis(m):
    """Basis of the null space of m as dense column vectors."""
    return [[v.get(j, 0) for j in range(m.cols)] for v in m.kernel()]


def solve(m, b):
    """A dense solution x of m x = b, or None when no solution exists."""
    b = list(b)
    if len(b) != m.rows:
        raise DimensionError("right-hand side has length %d, matrix has %d rows"
                             % (len(b), m.rows))
    f = m.field
    x = m.solve({i: f(v) for i, v in enumerate(b) if f(v)})
    if x is None:
        return None
    return [x.get(j, 0) for j in range(m.cols)]


class Subspace:
    """
    A based subspace of k^n spanned by sparse vectors, with membership
    tests and coordinates on a complement chosen from the standard basis.
    """

    def __init__(self, n, vectors, field=QQ):
        self.n = n
        self.field = field
        self.ech = Echelon(field, track=True)
        self.basis = []
        for v in vectors:
            if self.ech.add(v, tag=len(self.basis)):
                self.basis.append(dict(v))
        pivots = self.ech.piv
        # standard basis vectors not hit as pivots span a complement
        self.complement = [i for i in range(n) if i not in pivots]
        self._cpos = {i: k for k, i in enumerate(self.complement)}

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        return self.ech.contains(v)

    def coordinates(self, v):
        """Express v in self.basis, or None if v is not in the subspace."""
        r, combo = self.ech.reduce(v, {})
        if r:
            return None
        return scaled(combo, -1, self.field.p)

    def quotient_coords(self, v):
        """Coordinates of v modulo the subspace, on the complement basis."""
        r, _ = self.ech.reduce(v)
        return {self._cpos[i]: x for i, x in r.items()}

    def lift(self, k):
        """The standard basis vector representing complement coordinate k."""
        return {self.complement[k]: 1}
