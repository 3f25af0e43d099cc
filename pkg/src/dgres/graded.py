"""
Graded vector spaces, homogeneous maps and cochain complexes.

Everything is degreewise finite and materialized only on finitely many
degrees.  Basis elements are arbitrary hashable names; elements of a
single degree are written as sparse dicts ``{name: coefficient}``.
Differentials have degree +1 and signs follow the Koszul rule.
"""

from dataclasses import dataclass

from .field import QQ, check_same
from .linalg import Matrix, Echelon, Subspace, axpy


class WindowError(ValueError):
    pass


class NotAChainMap(ValueError):
    def __init__(self, degree, msg="map does not commute with the differentials"):
        super().__init__("%s in degree %d" % (msg, degree))
        self.degree = degree


class DifferentialError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class DegreeWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise WindowError("empty window [%d,%d]" % (self.lo, self.hi))

    def __contains__(self, n):
        return self.lo <= n <= self.hi

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def interior(self):
        """Degrees on which cohomology claims are made (one-degree margin)."""
        return range(self.lo + 1, self.hi)

    def reflected(self):
        return DegreeWindow(-self.hi, -self.lo)

    def shifted(self, n):
        return DegreeWindow(self.lo - n, self.hi - n)

    def __str__(self):
        return "[%d,%d]" % (self.lo, self.hi)

    @classmethod
    def parse(cls, s):
        lo, hi = s.split(":")
        return cls(int(lo), int(hi))


@dataclass(frozen=True)
class Primed:
    """Name of a dual basis element."""
    name: object

    def __str__(self):
        return "%s'" % (fmt_name(self.name),)


def fmt_name(x):
    if isinstance(x, tuple):
        return "(" + ",".join(fmt_name(y) for y in x) + ")" if x else "()"
    return str(x)


# -- graded spaces ------------------------------------------------------------

class GradedSpace:
    """Finitely many nonzero components, each an ordered tuple of names."""

    def __init__(self, components):
        comps = {}
        for n, names in components.items():
            names = tuple(names)
            if len(set(names)) != len(names):
                raise ValueError("duplicate basis names in degree %d" % n)
            if names:
                comps[int(n)] = names
        self.components = dict(sorted(comps.items()))
        self._index = {n: {x: i for i, x in enumerate(b)} for n, b in self.components.items()}

    def basis(self, n):
        return self.components.get(n, ())

    def dim(self, n):
        return len(self.components.get(n, ()))

    def index(self, n):
        return self._index.get(n, {})

    def degrees(self):
        return list(self.components)

    def dims(self):
        return {n: len(b) for n, b in self.components.items()}

    def total_dim(self):
        return sum(len(b) for b in self.components.values())

    def vec(self, n, element):
        """Name-keyed element of degree n -> index-keyed sparse vector."""
        idx = self.index(n)
        try:
            return {idx[x]: c for x, c in element.items()}
        except KeyError as e:
            raise KeyError("%r is not a basis element in degree %d" % (e.args[0], n))

    def named(self, n, v):
        b = self.basis(n)
        return {b[i]: c for i, c in v.items()}

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.components == other.components

    __hash__ = None

    def __repr__(self):
        return "GradedSpace(%s)" % self.dims()


def _space(x):
    return x.space if isinstance(x, Complex) else x


class GradedMap:
    """
    A homogeneous linear map of degree ``shift``; ``blocks[n]`` sends the
    degree n component of the source to degree n+shift of the target.
    """

    def __init__(self, source, target, shift, blocks, field=QQ):
        self.source = source
        self.target = target
        self.shift = shift
        self.field = field
        S, T = _space(source), _space(target)
        clean = {}
        for n, m in blocks.items():
            if (m.rows, m.cols) != (T.dim(n + shift), S.dim(n)):
                raise ValueError("block in degree %d has shape %dx%d, expected %dx%d"
                                 % (n, m.rows, m.cols, T.dim(n + shift), S.dim(n)))
            check_same(field, m.field)
            clean[n] = m
        self.blocks = clean

    @classmethod
    def from_function(cls, source, target, shift, f, field=QQ):
        """Build from f(n, name) -> {target name: coeff} (names in degree n+shift)."""
        S, T = _space(source), _space(target)
        blocks = {}
        p = field.p
        for n in S.degrees():
            tidx = T.index(n + shift)
            cols = []
            for x in S.basis(n):
                col = {}
                for y, c in f(n, x).items():
                    if y not in tidx:
                        raise KeyError("%r not in target degree %d" % (y, n + shift))
                    axpy(col, 1, {tidx[y]: field(c)}, p)
                cols.append(col)
            blocks[n] = Matrix(T.dim(n + shift), S.dim(n), cols, field)
        return cls(source, target, shift, blocks, field)

    def block(self, n):
        m = self.blocks.get(n)
        if m is None:
            S, T = _space(self.source), _space(self.target)
            m = Matrix.zeros(T.dim(n + self.shift), S.dim(n), self.field)
        return m

    def apply(self, n, element):
        """Apply to a name-keyed element of degree n."""
        S, T = _space(self.source), _space(self.target)
        return T.named(n + self.shift, self.block(n).apply(S.vec(n, element)))

    def compose(self, other):
        """self after other."""
        blocks = {}
        for n in _space(other.source).degrees():
            blocks[n] = self.block(n + other.shift) @ other.block(n)
        return GradedMap(other.source, self.target, self.shift + other.shift, blocks, self.field)

    def is_zero(self):
        return all(m.is_zero() for m in self.blocks.values())

    def __repr__(self):
        return "GradedMap(shift=%d, degrees=%s)" % (self.shift, sorted(self.blocks))


# -- complexes --------------------------------------------------------------------

class Complex:
    """
    A cochain complex materialized on finitely many degrees.

    ``window`` (optional) records the degrees on which the materialized
    object agrees with the full, possibly infinite, complex; cohomology is
    only trusted strictly inside it.
    """

    def __init__(self, space, d, field=QQ, window=None, check=True, name=None):
        self.space = space
        self.field = field
        self.window = window
        self.name = name
        blocks = {}
        for n in space.degrees():
            m = d.get(n) if isinstance(d, dict) else d.block(n)
            if m is None:
                m = Matrix.zeros(space.dim(n + 1), space.dim(n), field)
            if (m.rows, m.cols) != (space.dim(n + 1), space.dim(n)):
                raise ValueError("differential block %d has wrong shape" % n)
            blocks[n] = m
        self.d = GradedMap(space, space, 1, blocks, field)
        if check:
            self.check_square_zero()

    @classmethod
    def from_function(cls, space, f, field=QQ, window=None, check=True, name=None):
        d = GradedMap.from_function(space, space, 1, f, field)
        return cls(space, d, field, window=window, check=check, name=name)

    def check_square_zero(self):
        for n in self.space.degrees():
            if self.space.dim(n + 2) and not (self.d.block(n + 1) @ self.d.block(n)).is_zero():
                raise DifferentialError("d∘d != 0 starting in degree %d" % n)

    def differential(self, n):
        return self.d.block(n)

    def basis(self, n):
        return self.space.basis(n)

    def dim(self, n):
        return self.space.dim(n)

    def dims(self):
        return self.space.dims()

    def degrees(self):
        return self.space.degrees()

    def apply_d(self, n, element):
        return self.d.apply(n, element)

    def restrict(self, w):
        """The naive truncation to degrees in w (a subquotient, not a subcomplex)."""
        space = GradedSpace({n: b for n, b in self.space.components.items() if n in w})
        blocks = {n: self.d.block(n) for n in space.degrees() if n + 1 in w}
        return Complex(space, blocks, self.field, window=w, check=False, name=self.name)

    def __repr__(self):
        return "Complex(%s%s)" % (self.dims(), "" if self.window is None else ", window=%s" % self.window)


def zero_complex(field=QQ):
    return Complex(GradedSpace({}), {}, field)


def point(n=0, name="1", field=QQ):
    """The one-dimensional complex k placed in degree n."""
    return Complex(GradedSpace({n: [name]}), {}, field)


# -- cohomology ----------------------------------------------------------------

@dataclass
class Cohomology:
    dims: dict
    representatives: dict
    window: DegreeWindow

    def nonzero(self):
        return {n: d for n, d in self.dims.items() if d}

    def __getitem__(self, n):
        return self.dims[n]


def _check_window(c, w):
    if w.hi - w.lo < 2:
        raise WindowError("window %s too small: need hi - lo >= 2" % w)
    cw = getattr(c, "window", None)
    if cw is not None and (w.lo < cw.lo or w.hi > cw.hi):
        raise WindowError("window %s exceeds the materialized window %s" % (w, cw))


def _degree_data(c, n):
    """Return (boundary subspace, cycle basis, representative vectors) in degree n."""
    dim = c.dim(n)
    dprev = c.differential(n - 1)
    boundaries = [col for col in dprev.columns if col] if c.dim(n - 1) else []
    cycles = c.differential(n).kernel() if dim else []
    ech = Echelon(c.field)
    for b in boundaries:
        ech.add(b)
    nb = len(ech)
    reps = [z for z in cycles if ech.add(z)]
    return ech, nb, reps


def cohomology(c, w):
    """Cohomology dimensions and representative cocycles on the interior of w."""
    _check_window(c, w)
    dims, reps = {}, {}
    for n in w.interior():
        _, _, r = _degree_data(c, n)
        dims[n] = len(r)
        reps[n] = [c.space.named(n, v) for v in r]
    return Cohomology(dims, reps, w)


def is_acyclic(c, w):
    return not any(cohomology(c, w).dims.values())


# -- shifts, duals, tensors ------------------------------------------------------

def shift(c, n):
    """c[n]: degree d holds c's degree d+n; the differential picks up (-1)^n."""
    space = GradedSpace({k - n: b for k, b in c.space.components.items()})
    s = -1 if n % 2 else 1
    blocks = {k - n: c.differential(k).scale(s) for k in c.degrees()}
    w = None if c.window is None else c.window.shifted(n)
    return Complex(space, blocks, c.field, window=w, check=False)


def graded_dual(c, w=None):
    """
    Degree n of the dual is the dual of degree -n, with differential
    (-1)^(n+1) times the transpose.
    """
    comps = {}
    for n in c.degrees():
        if w is None or -n in w:
            comps[-n] = [Primed(x) for x in c.basis(n)]
    space = GradedSpace(comps)
    blocks = {}
    for m in space.degrees():
        if space.dim(m + 1):
            s = -1 if m % 2 == 0 else 1
            blocks[m] = c.differential(-m - 1).transpose().scale(s)
    win = c.window.reflected() if c.window is not None else (w.reflected() if w else None)
    return Complex(space, blocks, c.field, window=win)


def dual_map(f):
    """The transpose f* : target* -> source* of a degree-0 map (no sign)."""
    S, T = _space(f.source), _space(f.target)
    src = GradedSpace({-n: [Primed(x) for x in T.basis(n)] for n in T.degrees()})
    tgt = GradedSpace({-n: [Primed(x) for x in S.basis(n)] for n in S.degrees()})
    blocks = {-n: f.block(n).transpose() for n in S.degrees() if T.dim(n + f.shift)}
    if f.shift:
        raise ValueError("dual_map handles degree-0 maps only")
    return GradedMap(src, tgt, 0, {n: m for n, m in blocks.items() if src.dim(n)}, f.field)


def tensor(c1, c2, w=None):
    """c1 ⊗ c2 with d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy, restricted to degrees in w."""
    field = check_same(c1.field, c2.field)
    comps = {}
    for p in c1.degrees():
        for q in c2.degrees():
            if w is None or p + q in w:
                comps.setdefault(p + q, []).extend((x, y) for x in c1.basis(p) for y in c2.basis(q))
    space = GradedSpace(comps)
    deg = {}
    for p in c1.degrees():
        for x in c1.basis(p):
            deg[x] = p

    def d(n, xy):
        x, y = xy
        p = deg[x]
        out = {}
        for x2, a in c1.apply_d(p, {x: 1}).items():
            out[(x2, y)] = a
        s = -1 if p % 2 else 1
        for y2, b in c2.apply_d(n - p, {y: 1}).items():
            out[(x, y2)] = out.get((x, y2), 0) + s * b
        return out

    if w is not None:
        # boundary degree: drop targets outside w
        def dw(n, xy):
            return {} if n + 1 not in w else d(n, xy)
        return Complex.from_function(space, dw, field, window=w)
    return Complex.from_function(space, d, field)


def direct_sum(*cs, tags=None):
    field = check_same(*[c.field for c in cs])
    tags = tags if tags is not None else list(range(len(cs)))
    comps = {}
    for t, c in zip(tags, cs):
        for n in c.degrees():
            comps.setdefault(n, []).extend((t, x) for x in c.basis(n))
    space = GradedSpace(comps)
    byt = dict(zip(tags, cs))

    def d(n, tx):
        t, x = tx
        return {(t, y): a for y, a in byt[t].apply_d(n, {x: 1}).items()}

    return Complex.from_function(space, d, field)


# -- chain maps --------------------------------------------------------------------

def check_chain_map(f, w=None):
    """Raise NotAChainMap unless d∘f = f∘d on every degree (in w)."""
    src, tgt = f.source, f.target
    for n in _space(src).degrees():
        if w is not None and (n not in w or n + 1 not in w):
            continue
        lhs = tgt.differential(n + f.shift) @ f.block(n)
        rhs = f.block(n + 1) @ src.differential(n)
        if f.shift % 2:
            rhs = rhs.scale(-1)
        if lhs != rhs:
            raise NotAChainMap(n)


@dataclass
class QuasiIsoResult:
    ok: bool
    per_degree: dict
    window: DegreeWindow

    def __bool__(self):
        return self.ok

    def failures(self):
        return [n for n, r in self.per_degree.items() if not r["iso"]]


def verify_quasi_iso(f, w):
    """
    Decide whether the degree-0 chain map f induces isomorphisms on
    cohomology in every interior degree of w.  The witness records, per
    degree, both cohomology dimensions and the induced matrix with respect
    to the chosen representative cocycles.
    """
    src, tgt = f.source, f.target
    _check_window(src, w)
    _check_window(tgt, w)
    if f.shift != 0:
        raise ValueError("quasi-isomorphisms have degree 0")
    check_chain_map(f, w)
    out = {}
    ok = True
    for n in w.interior():
        _, _, sreps = _degree_data(src, n)
        _, _, treps = _degree_data(tgt, n)
        boundaries = Subspace(tgt.dim(n), tgt.differential(n - 1).columns, tgt.field)
        nbt = boundaries.dim
        full = Subspace(tgt.dim(n), boundaries.basis + treps, tgt.field)
        m = f.block(n)
        matrix = []
        for z in sreps:
            coords = full.coordinates(m.apply(z))
            matrix.append([coords.get(nbt + i, 0) for i in range(len(treps))])
        induced = Matrix(len(treps), len(sreps),
                         [{i: x for i, x in enumerate(col) if x} for col in matrix], tgt.field)
        r = induced.rank()
        iso = len(sreps) == len(treps) == r
        ok = ok and iso
        out[n] = {"source": len(sreps), "target": len(treps), "rank": r, "iso": iso,
                  "matrix": induced.to_rows()}
    return QuasiIsoResult(ok, out, w)


def identity_map(c):
    return GradedMap(c, c, 0, {n: Matrix.identity(c.dim(n), c.field) for n in c.degrees()}, c.field)


def cone_complex(f):
    """Cone of a chain map of complexes: degree n holds src^(n+1) ⊕ tgt^n."""
    src, tgt = f.source, f.target
    comps = {}
    for n in sorted({k - 1 for k in src.degrees()} | set(tgt.degrees())):
        comps[n] = [("s", x) for x in src.basis(n + 1)] + [("t", y) for y in tgt.basis(n)]
    space = GradedSpace(comps)

    def d(n, e):
        tag, x = e
        if tag == "s":
            out = {("s", y): -a for y, a in src.apply_d(n + 1, {x: 1}).items()}
            for y, a in f.apply(n + 1, {x: 1}).items():
                out[("t", y)] = out.get(("t", y), 0) + a
            return out
        return {("t", y): a for y, a in tgt.apply_d(n, {x: 1}).items()}

    return Complex.from_function(space, d, src.field)
