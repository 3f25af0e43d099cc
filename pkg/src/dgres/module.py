"""
Right DG modules, bimodules, Hom complexes, tensor products over an
algebra and cones.

A left module over A is treated as a bimodule over (A, k); a bimodule over
(A, B) can always be viewed as a right module over Aᵒᵖ⊗B through
:meth:`DGBimodule.as_module`.
"""

from .algebra import (DGAlgebra, ValidationReport, opposite, structurally_equal,
                      tensor_algebras, ground)
from .field import check_same
from .graded import Complex, DegreeWindow, GradedMap, GradedSpace
from .linalg import Matrix, Subspace
from .vec import add_into, lin, scale, sub, sign


def _callable_or_table(t, nargs):
    if callable(t):
        return t
    t = {k: v for k, v in (t or {}).items() if v}
    if nargs == 1:
        return lambda x: t.get(x, {})
    return lambda x, y: t.get((x, y), {})


class DGModule:
    """A right DG module over ``algebra`` with basis ``degrees``."""

    def __init__(self, algebra, degrees, act, diff=None, name=None, window=None):
        self.algebra = algebra
        self.field = algebra.field
        self.p = algebra.p
        self.degree = dict(degrees)
        self.basis = list(self.degree)
        self._act = _callable_or_table(act, 2)
        self._diff = _callable_or_table(diff, 1)
        self.name = name
        self.window = window
        self._by_degree = {}
        for x, n in self.degree.items():
            self._by_degree.setdefault(n, []).append(x)
        self._complex = None

    def act(self, m, a):
        return self._act(m, a)

    def d(self, m):
        return self._diff(m)

    def action(self, u, v):
        out = {}
        p = self.p
        for m, c in u.items():
            for a, e in v.items():
                add_into(out, self._act(m, a), c * e, p)
        return out

    def dvec(self, u):
        return lin(((c, self._diff(m)) for m, c in u.items()), self.p)

    def basis_in(self, n):
        return self._by_degree.get(n, [])

    def degrees(self):
        return sorted(self._by_degree)

    def dims(self):
        return {n: len(self._by_degree[n]) for n in self.degrees()}

    @property
    def dim(self):
        return len(self.basis)

    def complex(self):
        if self._complex is None:
            space = GradedSpace({n: self._by_degree[n] for n in self.degrees()})
            self._complex = Complex.from_function(space, lambda n, x: self._diff(x), self.field,
                                                  window=self.window, check=False)
        return self._complex

    def __repr__(self):
        return "DGModule(%s over %s, dims=%s)" % (self.name or "?", self.algebra.name, self.dims())


def validate_module(M, exhaustive=None, max_checks=None):
    """
    Unitality, d^2 = 0, homogeneity, associativity (m·x)·y = m·(xy) and
    Leibniz d(m·x) = dm·x + (-1)^|m| m·dx over basis tuples.  With declared
    algebra generators, x runs over generators only.
    """
    A = M.algebra
    rep = ValidationReport()
    p = M.p
    mdeg, adeg = M.degree, A.degree
    mdegs = set(M.degrees())
    if exhaustive is None:
        exhaustive = A.generators is None
    first = A.basis if exhaustive else A.generators
    for m in M.basis:
        dm = M.d(m)
        for y in dm:
            if mdeg.get(y) != mdeg[m] + 1:
                rep.add("homogeneity", (m,))
        if M.dvec(dm):
            rep.add("d^2", (m,))
        if sub(M.action({m: 1}, A.unit), {m: 1}, p):
            rep.add("unitality", (m,))
        sm = sign(mdeg[m])
        for x in first:
            if mdeg[m] + adeg[x] not in mdegs and mdeg[m] + adeg[x] + 1 not in mdegs:
                continue
            mx = M.act(m, x)
            for y in mx:
                if mdeg.get(y) != mdeg[m] + adeg[x]:
                    rep.add("homogeneity", (m, x))
            rhs = add_into(M.action(dm, {x: 1}), M.action({m: 1}, A.d(x)), sm, p)
            if sub(M.dvec(mx), rhs, p):
                rep.add("leibniz", (m, x))
            for y in A.basis:
                if mdeg[m] + adeg[x] + adeg[y] not in mdegs:
                    continue
                if sub(M.action(mx, {y: 1}), M.action({m: 1}, A.mul(x, y)), p):
                    rep.add("associativity", (m, x, y))
    return rep


class DGBimodule:
    """
    Left ``left``-module and right ``right``-module with commuting actions;
    realized as a right module over left^op ⊗ right by :meth:`as_module`.
    """

    def __init__(self, left, right, degrees, lact, ract, diff=None, name=None, window=None):
        self.left = left
        self.right = right
        self.field = check_same(left.field, right.field)
        self.p = self.field.p
        self.degree = dict(degrees)
        self.basis = list(self.degree)
        self._lact = _callable_or_table(lact, 2)
        self._ract = _callable_or_table(ract, 2)
        self._diff = _callable_or_table(diff, 1)
        self.name = name
        self.window = window
        self._by_degree = {}
        for x, n in self.degree.items():
            self._by_degree.setdefault(n, []).append(x)
        self._complex = None

    def lact(self, a, m):
        return self._lact(a, m)

    def ract(self, m, b):
        return self._ract(m, b)

    def d(self, m):
        return self._diff(m)

    def dvec(self, u):
        return lin(((c, self._diff(m)) for m, c in u.items()), self.p)

    def left_action(self, a, u):
        out = {}
        for x, c in a.items():
            for m, e in u.items():
                add_into(out, self._lact(x, m), c * e, self.p)
        return out

    def right_action(self, u, b):
        out = {}
        for m, e in u.items():
            for y, c in b.items():
                add_into(out, self._ract(m, y), c * e, self.p)
        return out

    basis_in = DGModule.basis_in
    degrees = DGModule.degrees
    dims = DGModule.dims
    complex = DGModule.complex
    dim = DGModule.dim

    def as_module(self):
        """m·(a⊗b) = (-1)^(|a||m|) (a·m)·b over left^op ⊗ right."""
        env = tensor_algebras(opposite(self.left), self.right)
        ldeg = self.left.degree
        mdeg = self.degree
        p = self.p

        def act(m, ab):
            a, b = ab
            am = self._lact(a, m)
            out = {}
            for m2, c in am.items():
                add_into(out, self._ract(m2, b), c, p)
            if (ldeg[a] * mdeg[m]) % 2:
                out = scale(out, -1, p)
            return out

        return DGModule(env, self.degree, act, self._diff, self.name, self.window)

    def __repr__(self):
        return "DGBimodule(%s over (%s, %s), dims=%s)" % (self.name or "?", self.left.name,
                                                         self.right.name, self.dims())


def validate_bimodule(N, exhaustive=None):
    """Left and right module axioms plus (x·m)·y = x·(m·y), checked on generators."""
    rep = ValidationReport()
    p = N.p
    A, B = N.left, N.right
    mdeg = N.degree
    mdegs = set(N.degrees())
    ex = exhaustive if exhaustive is not None else False
    lg = A.basis if (ex or A.generators is None) else A.generators
    rg = B.basis if (ex or B.generators is None) else B.generators
    for m in N.basis:
        dm = N.d(m)
        if any(mdeg.get(y) != mdeg[m] + 1 for y in dm):
            rep.add("homogeneity", (m,))
        if N.dvec(dm):
            rep.add("d^2", (m,))
        if sub(N.left_action(A.unit, {m: 1}), {m: 1}, p):
            rep.add("left unitality", (m,))
        if sub(N.right_action({m: 1}, B.unit), {m: 1}, p):
            rep.add("right unitality", (m,))
        sm = sign(mdeg[m])
        for x in lg:
            n = mdeg[m] + A.degree[x]
            if n not in mdegs and n + 1 not in mdegs:
                continue
            xm = N.lact(x, m)
            # d(x·m) = dx·m + (-1)^|x| x·dm
            rhs = add_into(N.left_action(A.d(x), {m: 1}), N.left_action({x: 1}, dm),
                           sign(A.degree[x]), p)
            if sub(N.dvec(xm), rhs, p):
                rep.add("left leibniz", (x, m))
            for y in A.basis:
                if n + A.degree[y] in mdegs and \
                        sub(N.left_action({y: 1}, xm), N.left_action(A.mul(y, x), {m: 1}), p):
                    rep.add("left associativity", (y, x, m))
            for y in rg:
                if n + B.degree[y] in mdegs and \
                        sub(N.right_action(xm, {y: 1}), N.left_action({x: 1}, N.ract(m, y)), p):
                    rep.add("commuting actions", (x, m, y))
        for y in rg:
            n = mdeg[m] + B.degree[y]
            if n not in mdegs and n + 1 not in mdegs:
                continue
            my = N.ract(m, y)
            rhs = add_into(N.right_action(dm, {y: 1}), N.right_action({m: 1}, B.d(y)), sm, p)
            if sub(N.dvec(my), rhs, p):
                rep.add("right leibniz", (m, y))
            for z in B.basis:
                if n + B.degree[z] in mdegs and \
                        sub(N.right_action(my, {z: 1}), N.right_action({m: 1}, B.mul(y, z)), p):
                    rep.add("right associativity", (m, y, z))
    return rep


def diagonal_bimodule(a):
    """A as a bimodule over itself."""
    return DGBimodule(a, a, a.degree, a.mul, a.mul, a.d, name="diag(%s)" % a.name)


def regular_module(a):
    """A as a right module over itself."""
    return DGModule(a, a.degree, a.mul, a.d, name=a.name)


def left_module(a, degrees, lact, diff=None, name=None):
    """A left A-module, i.e. an (A, k)-bimodule."""
    k = ground(a.field)
    return DGBimodule(a, k, degrees, lact, lambda m, one: {m: 1}, diff, name)


def trivial_module(a, eps, n=0, name="k"):
    """k in degree n as a right A-module through the augmentation."""
    return DGModule(a, {name: n}, lambda m, x: {m: eps.get(x, 0)} if eps.get(x, 0) else {},
                    {}, name)


def same_algebra(a, b):
    return a is b or structurally_equal(a, b)


# -- module maps ---------------------------------------------------------------

class ModuleMap:
    """A homogeneous map of right modules given on basis elements."""

    def __init__(self, source, target, images, degree=0):
        self.source = source
        self.target = target
        self.images = images
        self.shift = degree

    def image(self, m):
        im = self.images
        return im(m) if callable(im) else im.get(m, {})

    def apply(self, u):
        return lin(((c, self.image(m)) for m, c in u.items()), self.target.p)

    def check(self, actions=True):
        rep = ValidationReport()
        S, T = self.source, self.target
        p = T.p
        for m in S.basis:
            fm = self.image(m)
            if any(T.degree.get(y) != S.degree[m] + self.shift for y in fm):
                rep.add("homogeneity", (m,))
            lhs = T.dvec(fm)
            rhs = self.apply(S.d(m))
            if self.shift % 2:
                rhs = scale(rhs, -1, p)
            if sub(lhs, rhs, p):
                rep.add("chain", (m,))
            if not actions:
                continue
            if isinstance(S, DGBimodule):
                for x in (S.left.generators or S.left.basis):
                    if sub(self.apply(S.lact(x, m)), T.left_action({x: 1}, fm), p):
                        rep.add("left linear", (x, m))
                for y in (S.right.generators or S.right.basis):
                    if sub(self.apply(S.ract(m, y)), T.right_action(fm, {y: 1}), p):
                        rep.add("right linear", (m, y))
            else:
                for x in (S.algebra.generators or S.algebra.basis):
                    if sub(self.apply(S.act(m, x)), T.action(fm, {x: 1}), p):
                        rep.add("linear", (m, x))
        return rep

    def graded_map(self):
        S, T = self.source.complex(), self.target.complex()
        return GradedMap.from_function(S, T, self.shift, lambda n, x: self.image(x),
                                       self.source.field)


def cone(f):
    """
    Cone of a closed degree-0 module map f: M1 -> M2, on M1[1] ⊕ M2 with
    d(s m1, m2) = (-s dm1, f(m1) + dm2).
    """
    M1, M2 = f.source, f.target
    if f.shift:
        raise ValueError("cone needs a degree-0 map")
    degrees = {("s", m): n - 1 for m, n in M1.degree.items()}
    degrees.update({("t", m): n for m, n in M2.degree.items()})
    p = M1.p

    def diff(e):
        tag, m = e
        if tag == "t":
            return {("t", y): c for y, c in M2.d(m).items()}
        out = {("s", y): -c for y, c in M1.d(m).items()}
        for y, c in f.image(m).items():
            add_into(out, {("t", y): c}, 1, p)
        return out

    name = "cone"
    if isinstance(M1, DGBimodule):
        def lact(a, e):
            tag, m = e
            if tag == "t":
                return {("t", y): c for y, c in M2.lact(a, m).items()}
            s = sign(M1.left.degree[a])
            return {("s", y): s * c for y, c in M1.lact(a, m).items()}

        def ract(e, b):
            tag, m = e
            src = M2 if tag == "t" else M1
            return {(tag, y): c for y, c in src.ract(m, b).items()}

        return DGBimodule(M1.left, M1.right, degrees, lact, ract, diff, name)

    def act(e, a):
        tag, m = e
        src = M2 if tag == "t" else M1
        return {(tag, y): c for y, c in src.act(m, a).items()}

    return DGModule(M1.algebra, degrees, act, diff, name)


def free_module(a, shifts):
    """⊕ A[n_i]: summand i has basis (i, x) in degree |x| - n_i."""
    degrees = {}
    for i, n in enumerate(shifts):
        for x in a.basis:
            degrees[(i, x)] = a.degree[x] - n
    shifts = list(shifts)

    def act(e, y):
        i, x = e
        return {(i, z): c for z, c in a.mul(x, y).items()}

    def diff(e):
        i, x = e
        s = sign(shifts[i])
        return {(i, z): s * c for z, c in a.d(x).items()}

    return DGModule(a, degrees, act, diff, name="free(%s,%s)" % (a.name, shifts))


# -- quotients -------------------------------------------------------------------

class QuotientComplex:
    """
    C / R degreewise, where R is a subcomplex given by spanning vectors per
    degree.  The basis of the quotient is a subset of C's basis (a
    complement of R chosen by elimination).
    """

    def __init__(self, C, relations):
        self.C = C
        self.subs = {}
        comps = {}
        for n in C.degrees():
            idx = C.space.index(n)
            rel = [{idx[x]: c for x, c in v.items()} for v in relations.get(n, [])]
            sub_ = Subspace(C.dim(n), rel, C.field)
            self.subs[n] = sub_
            comps[n] = [C.basis(n)[i] for i in sub_.complement]
        space = GradedSpace(comps)

        def d(n, x):
            return self.project(n + 1, C.apply_d(n, {x: 1}))

        self.complex = Complex.from_function(space, d, C.field, window=C.window)

    def project(self, n, element):
        if not element:
            return {}
        sub_ = self.subs[n]
        C = self.C
        v = sub_.quotient_coords(C.space.vec(n, element))
        b = C.basis(n)
        return {b[sub_.complement[k]]: c for k, c in v.items()}


def tensor_over(M, N, w=None):
    """
    M ⊗_A N for a right A-module M and a bimodule N with left algebra A:
    the quotient of M⊗N by (m·a)⊗n - (-1)^(|a||m|)... realized with the
    relation (m·a)⊗n = m⊗(a·n).  Returns a DGModule over N's right algebra
    (a plain complex when that algebra is k).
    """
    A = M.algebra
    if not same_algebra(A, N.left):
        raise ValueError("tensor_over: algebras do not match")
    p = M.p
    mdeg, ndeg = M.degree, N.degree
    degrees = {}
    for m in M.basis:
        for n in N.basis:
            t = mdeg[m] + ndeg[n]
            if w is None or t in w:
                degrees[(m, n)] = t
    comps = {}
    for x, t in degrees.items():
        comps.setdefault(t, []).append(x)
    space = GradedSpace(comps)

    def d(t, mn):
        m, n = mn
        out = {}
        for m2, c in M.d(m).items():
            if (m2, n) in degrees:
                add_into(out, {(m2, n): c}, 1, p)
        s = sign(mdeg[m])
        for n2, c in N.d(n).items():
            if (m, n2) in degrees:
                add_into(out, {(m, n2): s * c}, 1, p)
        return out

    total = Complex.from_function(space, d, M.field, check=False)
    gens = A.generators if A.generators is not None else A.basis
    rels = {}
    for m in M.basis:
        for a in gens:
            ma = M.act(m, a)
            for n in N.basis:
                t = mdeg[m] + A.degree[a] + ndeg[n]
                if t not in comps:
                    continue
                r = {}
                for m2, c in ma.items():
                    add_into(r, {(m2, n): c}, 1, p)
                for n2, c in N.lact(a, n).items():
                    add_into(r, {(m, n2): -c}, 1, p)
                r = {k: v for k, v in r.items() if k in degrees}
                if r:
                    rels.setdefault(t, []).append(r)
    Q = QuotientComplex(total, rels)
    B = N.right
    qdeg = {x: t for t in Q.complex.degrees() for x in Q.complex.basis(t)}

    def act(mn, b):
        m, n = mn
        out = {}
        for n2, c in N.ract(n, b).items():
            if (m, n2) in degrees:
                add_into(out, {(m, n2): c}, 1, p)
        if not out:
            return {}
        return Q.project(qdeg[mn] + B.degree[b], out)

    mod = DGModule(B, qdeg, act, lambda x: Q.complex.apply_d(qdeg[x], {x: 1}),
                   name="%s⊗_A%s" % (M.name, N.name), window=w)
    mod.quotient = Q
    return mod


# -- Hom complexes -------------------------------------------------------------------

class HomComplex:
    """
    Hom_A(M, N) on the degrees of a window.  Degree n consists of the
    A-linear maps of degree n (a kernel of linear constraints); the
    differential is f ↦ d_N∘f - (-1)^n f∘d_M.
    """

    def __init__(self, M, N, w):
        if not same_algebra(M.algebra, N.algebra):
            raise ValueError("hom_complex: modules over different algebras")
        self.M, self.N, self.window = M, N, w
        A = M.algebra
        gens = A.generators if A.generators is not None else A.basis
        p = M.p
        self.p = p
        self.field = M.field
        self.bases = {}
        self.unknowns = {}
        for n in range(w.lo, w.hi + 2):
            unk = [(m, y) for m in M.basis for y in N.basis_in(M.degree[m] + n)]
            uidx = {u: i for i, u in enumerate(unk)}
            self.unknowns[n] = (unk, uidx)
            # constraint (m, x): f(m·x) - f(m)·x = 0, coordinates in N
            cols = []
            cpos = {}
            for i, (m, y) in enumerate(unk):
                col = {}
                for x in gens:
                    # -f(m)·x contribution
                    for z, c in N.act(y, x).items():
                        key = (m, x, z)
                        j = cpos.setdefault(key, len(cpos))
                        add_into(col, {j: -c}, 1, p)
                cols.append(col)
            for m2 in M.basis:
                for x in gens:
                    for m, c in M.act(m2, x).items():
                        for y in N.basis_in(M.degree[m] + n):
                            i = uidx[(m, y)]
                            j = cpos.setdefault((m2, x, y), len(cpos))
                            add_into(cols[i], {j: c}, 1, p)
            mat = Matrix(len(cpos), len(unk), cols, self.field)
            self.bases[n] = mat.kernel()
        comps = {n: [("hom", n, i) for i in range(len(self.bases[n]))]
                 for n in w.degrees()}
        space = GradedSpace(comps)
        subs = {n: Subspace(len(self.unknowns[n][0]), self.bases[n], self.field)
                for n in range(w.lo, w.hi + 2)}
        self._subs = subs
        blocks = {}
        for n in space.degrees():
            if n + 1 not in w:
                continue
            cols = []
            for f in self.bases[n]:
                df = self._differential(n, f)
                coords = subs[n + 1].coordinates(df)
                if coords is None:
                    raise ArithmeticError("Hom differential left the A-linear maps")
                cols.append(coords)
            blocks[n] = Matrix(space.dim(n + 1), space.dim(n), cols, self.field)
        self.complex = Complex(space, blocks, self.field, window=w)

    def as_dict(self, n, f):
        """f as {m: N-vector}."""
        unk, _ = self.unknowns[n]
        out = {}
        for i, c in f.items():
            m, y = unk[i]
            out.setdefault(m, {})[y] = c
        return out

    def element(self, n, i):
        return self.as_dict(n, self.bases[n][i])

    def coordinates(self, n, fdict):
        """Coordinates of a map {m: N-vector} in the basis of Hom^n, or None."""
        _, uidx = self.unknowns[n]
        vec = {uidx[(m, y)]: c for m, img in fdict.items() for y, c in img.items()}
        co = self._subs[n].coordinates(vec)
        return None if co is None else {("hom", n, i): c for i, c in co.items()}

    def _differential(self, n, f):
        M, N, p = self.M, self.N, self.p
        fd = self.as_dict(n, f)
        _, uidx = self.unknowns[n + 1]
        out = {}
        s = sign(n)
        for m in M.basis:
            img = lin(((c, N.d(y)) for y, c in fd.get(m, {}).items()), p)
            pre = {}
            for m2, c in M.d(m).items():
                add_into(pre, fd.get(m2, {}), c, p)
            add_into(img, pre, -s, p)
            for y, c in img.items():
                add_into(out, {uidx[(m, y)]: c}, 1, p)
        return out


def hom_complex(M, N, w):
    return HomComplex(M, N, w)


# -- complexes of vector spaces: Hom and End ------------------------------------------------

def _basis_degrees(X):
    return {x: n for n in X.degrees() for x in X.basis(n)}


def hom_of_complexes(X, Y, tag="H"):
    """Hom(X, Y) with matrix-unit basis (tag, y, x) and D(φ) = dφ - (-1)^|φ| φd."""
    field = check_same(X.field, Y.field)
    p = field.p
    dx, dy = _basis_degrees(X), _basis_degrees(Y)
    comps = {}
    for y, ny in dy.items():
        for x, nx in dx.items():
            comps.setdefault(ny - nx, []).append((tag, y, x))
    space = GradedSpace(comps)
    # transpose of d_X: for each x, which x' have x in d(x')
    dX = {x: X.apply_d(n, {x: 1}) for x, n in dx.items()}
    pre = {}
    for x2, img in dX.items():
        for x, c in img.items():
            pre.setdefault(x, []).append((x2, c))

    def d(n, e):
        _, y, x = e
        out = {}
        for y2, c in Y.apply_d(dy[y], {y: 1}).items():
            add_into(out, {(tag, y2, x): c}, 1, p)
        s = -sign(n)
        # (E_{y,x} ∘ d)(x2) = coefficient of x in d(x2) times y
        for x2, c in pre.get(x, []):
            add_into(out, {(tag, y, x2): s * c}, 1, p)
        return out

    return Complex.from_function(space, d, field)


def endomorphism_algebra(X, tag="E"):
    """End(X) as a DG algebra; the unit is the sum of diagonal matrix units."""
    H = hom_of_complexes(X, X, tag)
    degrees = {e: n for n in H.degrees() for e in H.basis(n)}

    def mult(u, v):
        _, a, b = u
        _, c, e = v
        return {(tag, a, e): 1} if b == c else {}

    unit = {(tag, x, x): 1 for n in X.degrees() for x in X.basis(n)}
    return DGAlgebra(degrees, mult, lambda e: H.apply_d(degrees[e], {e: 1}), unit, X.field,
                     "End")


def matrix_unit_apply(u, vec_x):
    """Apply a matrix-unit-basis map u = {(tag, y, x): c} to a vector."""
    out = {}
    for (tag, y, x), c in u.items():
        if x in vec_x:
            out[y] = out.get(y, 0) + c * vec_x[x]
    return {k: v for k, v in out.items() if v}


# -- the cone-endomorphism (zigzag) algebra -------------------------------------------------

class ZigzagAlgebra:
    """
    The upper-triangular DG algebra with corners End(Y), Hom(X[1], Y) and A,
    realized inside End(C_f) for the cone C_f = X[1] ⊕ Y of f: X -> Y.  An
    element (e, h, a) acts on C_f by the matrix [[e, h], [0, ψφ(a)]] where
    ψ(g) = (-1)^|g| s g s⁻¹; products and the differential are computed in
    End(C_f), with the A-corner carried along through φ.
    """

    def __init__(self, f, phi):
        from .algebra import DGAlgebraHom
        from .graded import cone_complex
        X, Y = f.source, f.target
        A = phi.source
        self.f, self.phi, self.A = f, phi, A
        field = check_same(X.field, Y.field, A.field)
        p = field.p
        Cf = cone_complex(f)
        End = endomorphism_algebra(Cf)
        self.cone, self.end = Cf, End
        xdeg, ydeg = _basis_degrees(X), _basis_degrees(Y)
        degrees = {}
        for y, ny in ydeg.items():
            for y2, ny2 in ydeg.items():
                degrees[("E", y, y2)] = ny - ny2
            for x, nx in xdeg.items():
                degrees[("H", y, x)] = ny - nx + 1
        for a in A.basis:
            degrees[("A", a)] = A.degree[a]

        def psi_phi(a):
            out = {}
            for (_, x, x2), c in phi.apply({a: 1}).items():
                s = sign(xdeg[x] - xdeg[x2])
                add_into(out, {("E", ("s", x), ("s", x2)): s * c}, 1, p)
            return out

        def to_end(u):
            if u[0] == "E":
                return {("E", ("t", u[1]), ("t", u[2])): 1}
            if u[0] == "H":
                return {("E", ("t", u[1]), ("s", u[2])): 1}
            return psi_phi(u[1])

        def from_end(m, apart):
            out = {}
            for (_, r, c_), v in m.items():
                if r[0] == "t" and c_[0] == "t":
                    out[("E", r[1], c_[1])] = v
                elif r[0] == "t":
                    out[("H", r[1], c_[1])] = v
                elif c_[0] == "t":
                    raise ArithmeticError("lower-left corner is not zero")
            for a, v in apart.items():
                out[("A", a)] = v
            return out

        def mult(u, v):
            apart = A.mul(u[1], v[1]) if u[0] == "A" and v[0] == "A" else {}
            return from_end(End.product(to_end(u), to_end(v)), apart)

        def diff(u):
            apart = A.d(u[1]) if u[0] == "A" else {}
            return from_end(End.dvec(to_end(u)), apart)

        unit = {("E", y, y): 1 for y in ydeg}
        for a, c in A.unit.items():
            unit[("A", a)] = c
        self.algebra = DGAlgebra(degrees, mult, diff, unit, field, "C_A")
        self.to_end = to_end
        self.p_A = DGAlgebraHom(self.algebra, A,
                                {u: {u[1]: 1} for u in degrees if u[0] == "A"})
        endY = endomorphism_algebra(Y)
        self.end_y = endY
        self.p_Y = DGAlgebraHom(self.algebra, endY,
                                {u: {u: 1} for u in degrees if u[0] == "E"})


def zigzag_algebra(f, phi):
    """Returns (𝒞_A, p_A, p_Y) together with the construction object."""
    z = ZigzagAlgebra(f, phi)
    return z.algebra, z.p_A, z.p_Y, z


def covering_window(*cs):
    degs = [n for c in cs for n in c.degrees()] or [0]
    return DegreeWindow(min(degs) - 1, max(degs) + 1)


def verify_zigzag_hypotheses(f, phi, w=None):
    """
    Checks that f*: End(Y) -> Hom(X, Y), e ↦ e∘f and
    A -> End(X) -> Hom(X, Y), a ↦ f∘φ(a) are quasi-isomorphisms.
    """
    from .checks import Checks
    from .graded import verify_quasi_iso
    X, Y = f.source, f.target
    H = hom_of_complexes(X, Y)
    endY = hom_of_complexes(Y, Y, "E")
    A = phi.source
    if w is None:
        w = covering_window(H, endY, A.complex())
    p = X.field.p
    # f as a matrix: column x -> f(x)
    fcols = {x: f.apply(n, {x: 1}) for n in X.degrees() for x in X.basis(n)}

    def f_star(n, e):
        _, y, y2 = e
        out = {}
        for x, img in fcols.items():
            c = img.get(y2, 0)
            if c:
                add_into(out, {("H", y, x): c}, 1, p)
        return out

    def f_phi(n, a):
        out = {}
        for (_, x, x2), c in phi.apply({a: 1}).items():
            for y, c2 in fcols[x].items():
                add_into(out, {("H", y, x2): c * c2}, 1, p)
        return out

    c = Checks()
    g1 = GradedMap.from_function(endY, H, 0, f_star, X.field)
    g2 = GradedMap.from_function(A.complex(), H, 0, f_phi, X.field)
    for name, g in (("f* quasi-isomorphism", g1), ("f∘phi quasi-isomorphism", g2)):
        try:
            q = verify_quasi_iso(g, w)
            c.add(name, q.ok, "window %s" % w)
        except ValueError as e:
            c.add(name, False, str(e))
    return c


def check_zigzag(f, phi):
    """
    Hypotheses, DG algebra axioms for 𝒞_A, and the two projections.  A
    projection whose quasi-isomorphism check fails is reported as "not
    established".  Returns (checks, algebra).
    """
    from .algebra import validate
    from .checks import Checks
    from .graded import verify_quasi_iso
    c = Checks()
    c.extend(verify_zigzag_hypotheses(f, phi), "hypothesis: ")
    C, pA, pY, _ = zigzag_algebra(f, phi)
    r = validate(C)
    c.add("zigzag algebra is a DG algebra", r.ok, ", ".join(r.kinds()))
    for label, h in (("p_A", pA), ("p_Y", pY)):
        w = covering_window(C.complex(), h.target.complex())
        q = verify_quasi_iso(h.graded_map(), w)
        c.add("%s quasi-isomorphism" % label, q.ok, "window %s" % w if q.ok else "not established")
    return c, C
