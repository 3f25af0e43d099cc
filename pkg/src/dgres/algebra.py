"""
DG algebras given by structure constants.

A :class:`DGAlgebra` has a finite homogeneous basis, a product table and
a differential.  Both may be plain dicts or callables, which lets large
algebras (Koszul duals, enveloping algebras) compute products on demand.
"""

from dataclasses import dataclass, field as dfield
from .field import QQ, check_same
from .graded import Complex, GradedSpace
from .linalg import Subspace
from .vec import add_into, lin, scale, sub, sign


class AlgebraError(ValueError):
    pass


class DGAlgebra:

    def __init__(self, degrees, mult, diff=None, unit=None, field=QQ, name=None,
                 generators=None):
        self.degree = dict(degrees)
        self.basis = list(self.degree)
        self.field = field
        self.p = field.p
        self.name = name
        if callable(mult):
            self._mult = mult
            self._table = None
        else:
            table = {k: v for k, v in mult.items() if v}
            self._table = table
            self._mult = lambda x, y: table.get((x, y), {})
        if diff is None:
            diff = {}
        if callable(diff):
            self._diff = diff
        else:
            dt = {k: v for k, v in diff.items() if v}
            self._diff = lambda x: dt.get(x, {})
        if unit is None:
            raise AlgebraError("a unit is required")
        self.unit = {unit: 1} if not isinstance(unit, dict) else dict(unit)
        self.generators = list(generators) if generators is not None else None
        self._by_degree = {}
        for x, n in self.degree.items():
            self._by_degree.setdefault(n, []).append(x)
        self._complex = None

    # structure

    def mul(self, x, y):
        return self._mult(x, y)

    def d(self, x):
        return self._diff(x)

    def product(self, u, v):
        out = {}
        p = self.p
        for x, a in u.items():
            for y, b in v.items():
                add_into(out, self._mult(x, y), a * b, p)
        return out

    def dvec(self, u):
        return lin(((c, self._diff(x)) for x, c in u.items()), self.p)

    def basis_in(self, n):
        return self._by_degree.get(n, [])

    def degrees(self):
        return sorted(self._by_degree)

    def dims(self):
        return {n: len(self._by_degree[n]) for n in self.degrees()}

    @property
    def dim(self):
        return len(self.basis)

    def vdegree(self, u):
        """Degree of a nonzero homogeneous vector."""
        ds = {self.degree[x] for x in u}
        if len(ds) != 1:
            raise AlgebraError("inhomogeneous element %r" % (u,))
        return ds.pop()

    def complex(self):
        if self._complex is None:
            space = GradedSpace({n: self._by_degree[n] for n in self.degrees()})
            self._complex = Complex.from_function(space, lambda n, x: self._diff(x), self.field,
                                                  check=False)
        return self._complex

    def table(self):
        """Materialized nonzero structure constants."""
        if self._table is not None:
            return dict(self._table)
        out = {}
        for x in self.basis:
            for y in self.basis:
                v = self._mult(x, y)
                if v:
                    out[(x, y)] = v
        return out

    def __repr__(self):
        return "DGAlgebra(%s, dims=%s)" % (self.name or "?", self.dims())


def structurally_equal(a, b):
    if a is b:
        return True
    if a.field != b.field or a.degree != b.degree or a.unit != b.unit:
        return False
    p = a.p
    for x in a.basis:
        if sub(a.d(x), b.d(x), p):
            return False
        for y in a.basis:
            if sub(a.mul(x, y), b.mul(x, y), p):
                return False
    return True


# -- validation ----------------------------------------------------------------

@dataclass
class ValidationReport:
    violations: list = dfield(default_factory=list)
    checked: dict = dfield(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def kinds(self):
        return sorted({v[0] for v in self.violations})

    def add(self, kind, where, detail=""):
        self.violations.append((kind, where, detail))


def generates(a, gens):
    """True when the given basis elements generate a as an algebra."""
    idx = {x: i for i, x in enumerate(a.basis)}
    vecs = [dict(a.unit)]
    sp = Subspace(len(a.basis), [], a.field)
    frontier = []
    for v in vecs:
        if sp.ech.add({idx[x]: c for x, c in v.items()}):
            frontier.append(v)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = a.product(v, {g: 1})
                if w and sp.ech.add({idx[x]: c for x, c in w.items()}):
                    nxt.append(w)
        frontier = nxt
    return len(sp.ech) == len(a.basis)


def validate(a, exhaustive=None):
    """
    Check homogeneity, unitality, d(1)=0, d^2=0, associativity and the
    Leibniz rule over basis tuples.  When the algebra declares generators
    (and exhaustive is not requested) associativity and Leibniz are checked
    with a generator in the first slot, which suffices once generation is
    confirmed.
    """
    rep = ValidationReport()
    p = a.p
    deg = a.degree
    one = a.unit
    for x in one:
        if deg[x] != 0:
            rep.add("unit", (x,), "unit has a component in degree %d" % deg[x])
    if a.dvec(one):
        rep.add("d(1)", ("1",), "d(1) = %r" % (a.dvec(one),))
    for x in a.basis:
        for y, c in a.d(x).items():
            if deg.get(y) != deg[x] + 1:
                rep.add("homogeneity", (x,), "d(%s) has term %s of degree %s" % (x, y, deg.get(y)))
        if a.dvec(a.d(x)):
            rep.add("d^2", (x,))
        if sub(a.product(one, {x: 1}), {x: 1}, p) or sub(a.product({x: 1}, one), {x: 1}, p):
            rep.add("unitality", (x,))
    if exhaustive is None:
        exhaustive = a.generators is None
    first = a.basis if exhaustive else a.generators
    if not exhaustive and not generates(a, a.generators):
        rep.add("generation", tuple(a.generators), "declared generators do not generate")
    degs = set(a.degrees())
    for x in first:
        dx = a.d(x)
        sx = sign(deg[x])
        for y in a.basis:
            xy = a.mul(x, y)
            for z, c in xy.items():
                if deg.get(z) != deg[x] + deg[y]:
                    rep.add("homogeneity", (x, y), "product term %s in wrong degree" % (z,))
            # Leibniz
            lhs = a.dvec(xy)
            rhs = add_into(a.product(dx, {y: 1}), a.product({x: 1}, a.d(y)), sx, p)
            if sub(lhs, rhs, p):
                rep.add("leibniz", (x, y))
            for z in a.basis:
                if deg[x] + deg[y] + deg[z] not in degs:
                    continue
                if sub(a.product(xy, {z: 1}), a.product({x: 1}, a.mul(y, z)), p):
                    rep.add("associativity", (x, y, z))
    rep.checked = {"elements": a.dim, "exhaustive": exhaustive}
    return rep


# -- constructions -----------------------------------------------------------------

def opposite(a):
    """m_op(x, y) = (-1)^(|x||y|) m(y, x)."""
    deg = a.degree
    p = a.p

    def mult(x, y):
        v = a.mul(y, x)
        return scale(v, -1, p) if (deg[x] * deg[y]) % 2 and v else v

    name = None if a.name is None else (a.name[:-3] if a.name.endswith("^op") else a.name + "^op")
    op = DGAlgebra(a.degree, mult, a.d, a.unit, a.field, name, a.generators)
    op.opposite_of = a
    return op


def tensor_algebras(a, b, name=None):
    """(x⊗y)(x'⊗y') = (-1)^(|y||x'|) xx'⊗yy'."""
    field = check_same(a.field, b.field)
    p = field.p
    da, db = a.degree, b.degree
    degrees = {(x, y): da[x] + db[y] for x in a.basis for y in b.basis}

    def mult(u, v):
        x, y = u
        x2, y2 = v
        left = a.mul(x, x2)
        if not left:
            return {}
        right = b.mul(y, y2)
        if not right:
            return {}
        s = sign(db[y] * da[x2])
        out = {}
        for s1, c1 in left.items():
            for s2, c2 in right.items():
                out[(s1, s2)] = (s * c1 * c2) % p if p else s * c1 * c2
        return {k: v for k, v in out.items() if v}

    def diff(u):
        x, y = u
        out = {(x2, y): c for x2, c in a.d(x).items()}
        s = sign(da[x])
        for y2, c in b.d(y).items():
            add_into(out, {(x, y2): c}, s, p)
        return out

    unit = {}
    for x, c in a.unit.items():
        for y, e in b.unit.items():
            add_into(unit, {(x, y): c * e}, 1, p)
    gens = None
    if a.generators is not None and b.generators is not None \
            and len(a.unit) == 1 and len(b.unit) == 1:
        ua, ub = next(iter(a.unit)), next(iter(b.unit))
        gens = [(g, ub) for g in a.generators] + [(ua, h) for h in b.generators]
    if name is None and a.name and b.name:
        name = "%s⊗%s" % (a.name, b.name)
    return DGAlgebra(degrees, mult, diff, unit, field, name, gens)


def enveloping(a):
    return tensor_algebras(opposite(a), a)


def change_basis(a, new_basis, name=None):
    """
    Re-present a in a new homogeneous basis given as (name, vector) pairs,
    vectors written in a's basis.  Returns the new algebra and a function
    converting old-basis vectors to new-basis vectors.
    """
    per_degree = {}
    for nm, v in new_basis:
        per_degree.setdefault(a.vdegree(v), []).append((nm, v))
    spaces = {}
    for n, items in per_degree.items():
        old = a.basis_in(n)
        idx = {x: i for i, x in enumerate(old)}
        sp = Subspace(len(old), [{idx[x]: c for x, c in v.items()} for _, v in items], a.field)
        if sp.dim != len(items) or len(items) != len(old):
            raise AlgebraError("new basis is not a basis in degree %d" % n)
        spaces[n] = (sp, idx, [nm for nm, _ in items])
    if set(spaces) != set(a.degrees()):
        raise AlgebraError("new basis misses some degrees")

    def convert(u):
        out = {}
        by = {}
        for x, c in u.items():
            by.setdefault(a.degree[x], {})[x] = c
        for n, part in by.items():
            sp, idx, names = spaces[n]
            coords = sp.coordinates({idx[x]: c for x, c in part.items()})
            for i, c in coords.items():
                out[names[i]] = c
        return out

    vec_of = dict(new_basis)
    degrees = {nm: a.vdegree(v) for nm, v in new_basis}
    mult = {}
    diff = {}
    for x, vx in new_basis:
        dx = convert(a.dvec(vx))
        if dx:
            diff[x] = dx
        for y, vy in new_basis:
            pr = convert(a.product(vx, vy))
            if pr:
                mult[(x, y)] = pr
    unit = convert(a.unit)
    b = DGAlgebra(degrees, mult, diff, unit, a.field, name or a.name)
    b.old_vectors = vec_of
    return b, convert


@dataclass
class DGAlgebraHom:
    source: DGAlgebra
    target: DGAlgebra
    images: dict                # source basis name -> target vector

    def apply(self, u):
        return lin(((c, self.images.get(x, {})) for x, c in u.items()), self.target.p)

    def check(self, unital=False):
        rep = ValidationReport()
        s, t = self.source, self.target
        p = t.p
        # multiplicativity on generators × basis propagates to all products
        first = s.basis if s.generators is None else list(s.generators) + list(s.unit)
        for x in s.basis:
            if sub(self.apply(s.d(x)), t.dvec(self.apply({x: 1})), p):
                rep.add("chain", (x,))
        for x in first:
            for y in s.basis:
                if sub(self.apply(s.mul(x, y)), t.product(self.apply({x: 1}), self.apply({y: 1})), p):
                    rep.add("multiplicative", (x, y))
        if unital and sub(self.apply(s.unit), t.unit, p):
            rep.add("unital", ())
        return rep

    def graded_map(self):
        from .graded import GradedMap
        S, T = self.source.complex(), self.target.complex()
        return GradedMap.from_function(S, T, 0, lambda n, x: self.images.get(x, {}), self.source.field)


# -- augmentations ---------------------------------------------------------------------

class Augmentation:
    """An augmentation eps: A -> k, given on basis elements (default 0)."""

    def __init__(self, algebra, eps=None):
        self.algebra = algebra
        a = algebra
        if eps is None:
            eps = {x: 1 for x, c in a.unit.items()} if len(a.unit) == 1 else {}
        self.eps = {x: a.field(c) for x, c in eps.items() if a.field(c)}
        self._normal = None

    def __call__(self, u):
        t = sum(c * self.eps.get(x, 0) for x, c in u.items())
        return t % self.algebra.p if self.algebra.p else t

    def check(self):
        rep = ValidationReport()
        a = self.algebra
        p = a.p
        if (self(a.unit) - 1) % p if p else self(a.unit) != 1:
            rep.add("eps(1)", ())
        for x, c in self.eps.items():
            if a.degree[x] != 0:
                rep.add("degree", (x,), "eps nonzero in degree %d" % a.degree[x])
        for x in a.basis:
            if self(a.d(x)):
                rep.add("eps∘d", (x,))
            ex = self.eps.get(x, 0)
            for y in a.basis:
                lhs = self(a.mul(x, y))
                rhs = ex * self.eps.get(y, 0)
                if (lhs - rhs) % p if p else lhs != rhs:
                    rep.add("multiplicative", (x, y))
        return rep

    def normalized(self):
        """
        The same augmented algebra in a basis made of the unit followed by a
        basis of the augmentation ideal (elements x - eps(x)·1).
        """
        if self._normal is not None:
            return self._normal
        rep = self.check()
        if not rep.ok:
            raise AlgebraError("not an augmentation: %s" % rep.kinds())
        a = self.algebra
        p = a.p
        if all(self.eps.get(x, 0) == 0 for x in a.basis if x not in a.unit) \
                and len(a.unit) == 1 and next(iter(a.unit.values())) == 1:
            na = a
        else:
            u0 = next(x for x in a.basis if x in a.unit)
            one_name = u0 if len(a.unit) == 1 else "1"
            new = [(one_name, dict(a.unit))]
            for x in a.basis:
                if x == u0:
                    continue
                e = self.eps.get(x, 0)
                if e:
                    v = add_into({x: 1}, a.unit, -e, p)
                    new.append(("%s-%s" % (x, a.field.fmt(e)), v))
                else:
                    new.append((x, {x: 1}))
            na, _ = change_basis(a, new, a.name)
        ideal = [x for x in na.basis if x not in na.unit]
        aug = self if na is a else Augmentation(na, {next(iter(na.unit)): 1})
        aug.ideal = ideal
        aug._normal = aug
        self._normal = aug
        return aug

    @property
    def unit_name(self):
        n = self.normalized()
        return next(iter(n.algebra.unit))


def augmentation_ideal(aug):
    """Basis names of A⁺ inside the normalized presentation, which is also returned."""
    n = aug.normalized()
    return n.ideal, n


def ideal_powers(aug, bound=None):
    """
    Subspaces (A⁺)^1, (A⁺)^2, ... as lists of vectors in the normalized
    basis, stopping at the first zero power or after ``bound`` steps.
    """
    n = aug.normalized()
    a = n.algebra
    idx = {x: i for i, x in enumerate(a.basis)}
    if bound is None:
        bound = a.dim
    ideal = [{x: 1} for x in n.ideal]
    powers = [ideal]
    cur = ideal
    for _ in range(bound):
        if not cur:
            break
        sp = Subspace(len(a.basis), [], a.field)
        nxt = []
        for u in cur:
            for v in ideal:
                w = a.product(u, v)
                if w and sp.ech.add({idx[x]: c for x, c in w.items()}):
                    nxt.append(w)
        powers.append(nxt)
        cur = nxt
    return powers


def nilpotency_index(aug, bound=None):
    """Least N with (A⁺)^N = 0, or None if not reached within ``bound`` powers."""
    a = aug.normalized().algebra
    if bound is None:
        bound = a.dim
    powers = ideal_powers(aug, bound)
    for i, pw in enumerate(powers):
        if not pw:
            return i + 1 if i + 1 <= bound else None
    return None


def check_resolution_hypotheses(aug):
    from .checks import Checks
    a = aug.algebra
    c = Checks()
    c.add("finite-dimensional", True, "dim %d" % a.dim)
    pos = [n for n in a.degrees() if n > 0]
    c.add("concentrated in degrees <= 0", not pos, "" if not pos else "degrees %s present" % pos)
    N = nilpotency_index(aug)
    c.add("augmentation ideal nilpotent", N is not None,
          "index %d" % N if N is not None else "not nilpotent within bound %d" % a.dim)
    return c


def check_connected_hypotheses(aug):
    from .checks import Checks
    a = aug.algebra
    c = Checks()
    neg = [n for n in a.degrees() if n < 0]
    c.add("no negative degrees", not neg, "" if not neg else "degrees %s present" % neg)
    d0 = len(a.basis_in(0))
    c.add("degree 0 is k", d0 == 1, "dim A^0 = %d" % d0)
    c.add("finite-dimensional in each degree", True, str(a.dims()))
    return c


# -- standard algebras ------------------------------------------------------------------

def ground(field=QQ, name="k"):
    return DGAlgebra({"1": 0}, {("1", "1"): {"1": 1}}, {}, "1", field, name, generators=[])


def truncated_polynomial(n, field=QQ, degree=0, var="x"):
    """k[x]/x^n with x in the given degree."""
    if degree % 2 and n > 2:
        raise AlgebraError("an odd generator squares to zero; use n <= 2")
    names = ["1"] + [var if i == 1 else "%s%d" % (var, i) for i in range(1, n)]
    degrees = {nm: i * degree for i, nm in enumerate(names)}
    mult = {(names[i], names[j]): {names[i + j]: 1}
            for i in range(n) for j in range(n) if i + j < n}
    return DGAlgebra(degrees, mult, {}, "1", field, "k[%s]/%s^%d" % (var, var, n),
                     generators=[var] if n > 1 else [])


def truncated_tensor(dim_v, field=QQ):
    """T(V)/V^⊗2 with V of dimension dim_v in degree 0."""
    names = ["1"] + ["v%d" % (i + 1) for i in range(dim_v)]
    degrees = {nm: 0 for nm in names}
    mult = {}
    for x in names:
        mult[("1", x)] = {x: 1}
        mult[(x, "1")] = {x: 1}
    return DGAlgebra(degrees, mult, {}, "1", field, "TV/V^2(dim %d)" % dim_v,
                     generators=names[1:])


def cyclic_group_algebra(n, field=QQ):
    """k[Z/n] with basis g^0..g^(n-1)."""
    names = ["1"] + ["g" if i == 1 else "g%d" % i for i in range(1, n)]
    mult = {(names[i], names[j]): {names[(i + j) % n]: 1} for i in range(n) for j in range(n)}
    return DGAlgebra({nm: 0 for nm in names}, mult, {}, "1", field, "k[Z/%d]" % n,
                     generators=names[1:2])


def group_augmentation(a):
    return Augmentation(a, {x: 1 for x in a.basis})


def a2_path_algebra(field=QQ):
    """Upper-triangular 2x2 matrices: idempotents e1, e2 and an arrow a = e1·a·e2."""
    degrees = {"e1": 0, "e2": 0, "a": 0}
    mult = {("e1", "e1"): {"e1": 1}, ("e2", "e2"): {"e2": 1},
            ("e1", "a"): {"a": 1}, ("a", "e2"): {"a": 1}}
    return DGAlgebra(degrees, mult, {}, {"e1": 1, "e2": 1}, field, "A2")


def exterior(degree=1, field=QQ):
    """k[e]/e^2 with e in the given degree."""
    return DGAlgebra({"1": 0, "e": degree}, {("1", "1"): {"1": 1}, ("1", "e"): {"e": 1},
                                             ("e", "1"): {"e": 1}},
                     {}, "1", field, "Λ(e)", generators=["e"])


def product_algebra(a, b):
    """A × B with unit (1, 1)."""
    field = check_same(a.field, b.field)
    degrees = {("A", x): n for x, n in a.degree.items()}
    degrees.update({("B", y): n for y, n in b.degree.items()})

    def mult(u, v):
        if u[0] != v[0]:
            return {}
        alg = a if u[0] == "A" else b
        return {(u[0], z): c for z, c in alg.mul(u[1], v[1]).items()}

    def diff(u):
        alg = a if u[0] == "A" else b
        return {(u[0], z): c for z, c in alg.d(u[1]).items()}

    unit = {("A", x): c for x, c in a.unit.items()}
    unit.update({("B", y): c for y, c in b.unit.items()})
    return DGAlgebra(degrees, mult, diff, unit, field, "%s×%s" % (a.name, b.name))


def with_unit_products(degrees, mult, unit):
    """Fill in 1·x = x·1 = x for a basis-element unit."""
    out = dict(mult)
    for x in degrees:
        out.setdefault((unit, x), {x: 1})
        out.setdefault((x, unit), {x: 1})
    return out


def is_isomorphism(a, b, images):
    """Check that basis images define a DG algebra isomorphism a -> b."""
    h = DGAlgebraHom(a, b, images)
    rep = h.check(unital=True)
    idx = {x: i for i, x in enumerate(b.basis)}
    sp = Subspace(len(b.basis), [{idx[y]: c for y, c in images.get(x, {}).items()} for x in a.basis],
                  b.field)
    if sp.dim != len(b.basis) or a.dim != b.dim:
        rep.add("bijective", ())
    return rep


def truncated_free_algebra(gens, diff=None, length=2, field=QQ, name=None):
    """
    The free algebra on generators (name -> degree) modulo words of length
    > ``length``, with the derivation extending ``diff`` (generator -> dict
    of words given as tuples).  Basis elements are words (tuples).
    """
    diff = diff or {}
    words = [()]
    frontier = [()]
    for _ in range(length):
        frontier = [u + (g,) for u in frontier for g in gens]
        words.extend(frontier)
    degrees = {u: sum(gens[g] for g in u) for u in words}
    p = field.p

    def mult(u, v):
        return {u + v: 1} if len(u) + len(v) <= length else {}

    def d(u):
        out = {}
        pre = 0
        for i, g in enumerate(u):
            for w, c in diff.get(g, {}).items():
                y = u[:i] + tuple(w) + u[i + 1:]
                if len(y) <= length:
                    add_into(out, {y: c}, sign(pre), p)
            pre += gens[g]
        return out

    return DGAlgebra(degrees, mult, d, (), field, name or "T_%d" % length,
                     generators=[(g,) for g in gens])
