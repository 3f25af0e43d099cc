"""
Smoothness certificates and obstructions: filtrations with free
subquotients, semi-free bimodule resolutions, the Tor obstruction for
algebras in degree 0, and gluing of DG algebras along a bimodule.
"""

from dataclasses import dataclass, field as dfield

from .algebra import (Augmentation, DGAlgebra, change_basis, check_resolution_hypotheses,
                      ideal_powers, is_isomorphism, nilpotency_index, product_algebra)
from .bar import BarCoalgebra, DualTwoSidedBar, TwoSidedBar
from .checks import Checks
from .graded import (DegreeWindow, GradedMap, GradedSpace, Complex, cohomology,
                     check_chain_map, verify_quasi_iso)
from .linalg import Echelon, Matrix, Subspace
from .module import (DGBimodule, DGModule, ModuleMap, cone, diagonal_bimodule, validate_bimodule,
                     validate_module)
from .vec import add_into, lin, sign, sub


# -- filtrations with free subquotients ----------------------------------------------------

@dataclass
class FiltrationCertificate:
    """
    A chain 0 = F_0 ⊆ F_1 ⊆ ... ⊆ F_r = M of coordinate sub-bimodules of a
    bimodule M over (L, R), each F_i a set of basis names.  ``generators[i]``
    lists (name, element, degree) such that x⊗g⊗y ↦ x·element·y identifies
    the free bimodule on the generators with F_(i+1)/F_i.  Free models are
    cut off at outer degree ``max_outer`` (|x| + |y| <= max_outer) when set,
    matching a bimodule that is itself a truncation.
    """
    bimodule: DGBimodule
    steps: list
    generators: list
    max_outer: int = None
    info: dict = dfield(default_factory=dict)


def verify_filtration_certificate(cert, w=None):
    """Returns Checks; the verdict line is 'perfect (certified)' when all pass."""
    M = cert.bimodule
    L, R = M.left, M.right
    c = Checks()
    steps = [set(s) for s in cert.steps]
    if steps[0]:
        c.add("F_0 = 0", False, "first step has %d elements" % len(steps[0]))
    if steps[-1] != set(M.basis):
        c.add("F_r = M", False, "last step misses %d basis elements"
              % len(set(M.basis) - steps[-1]))
    if any(not a <= b for a, b in zip(steps, steps[1:])):
        c.add("steps increasing", False)
    lgens = L.generators if L.generators is not None else L.basis
    rgens = R.generators if R.generators is not None else R.basis

    def inside(v, F):
        return all(x in F for x in v)

    for i, F in enumerate(steps):
        bad = None
        for m in sorted(F, key=repr):
            if not inside(M.d(m), F):
                bad = ("d", m)
                break
            for x in lgens:
                if not inside(M.lact(x, m), F):
                    bad = ("left action by %s" % (x,), m)
                    break
            for y in rgens:
                if bad is None and not inside(M.ract(m, y), F):
                    bad = ("right action by %s" % (y,), m)
            if bad:
                break
        c.add("F_%d closed" % i, bad is None,
              "" if bad is None else "%s leaves F_%d at %r" % (bad[0], i, bad[1]))

    for i in range(len(steps) - 1):
        lower, upper = steps[i], steps[i + 1]
        gens = cert.generators[i]
        # generators must be cycles modulo the lower step
        bad = [g for g, el, _ in gens if not inside(_project_out(M.dvec(el), lower), set())]
        if bad:
            g = bad[0]
            el = next(e for n_, e, _ in gens if n_ == g)
            wit = _project_out(M.dvec(el), lower)
            c.add("step %d generators closed" % (i + 1), False,
                  "d(%s) = %r is not in F_%d" % (g, wit, i))
            continue
        c.add("step %d generators closed" % (i + 1), True, "%d generators" % len(gens))
        ok, detail = _check_free_subquotient(M, lower, upper, gens, cert.max_outer)
        c.add("step %d subquotient free" % (i + 1), ok, detail)
    return c


def _project_out(v, F):
    return {x: e for x, e in v.items() if x not in F}


def _check_free_subquotient(M, lower, upper, gens, max_outer):
    """
    The map ⊕ L⊗k·g⊗R -> F_(i+1)/F_i, x⊗g⊗y ↦ x·u_g·y, is bijective in each
    degree and commutes with differentials modulo F_i.
    """
    L, R = M.left, M.right
    p = M.p
    quotient = [m for m in M.basis if m in upper and m not in lower]
    free = []
    for gi, (g, el, dg) in enumerate(gens):
        for x in L.basis:
            for y in R.basis:
                if max_outer is not None and L.degree[x] + R.degree[y] > max_outer:
                    continue
                free.append((x, gi, y))
    fdeg = {t: L.degree[t[0]] + gens[t[1]][2] + R.degree[t[2]] for t in free}

    def phi(t):
        x, gi, y = t
        v = M.left_action({x: 1}, gens[gi][1])
        v = M.right_action(v, {y: 1})
        return _project_out({m: c for m, c in v.items()}, lower)

    images = {t: phi(t) for t in free}
    # bijectivity per degree
    qdeg = {}
    for m in quotient:
        qdeg.setdefault(M.degree[m], []).append(m)
    fby = {}
    for t in free:
        fby.setdefault(fdeg[t], []).append(t)
    for n in sorted(set(qdeg) | set(fby)):
        qs, fs = qdeg.get(n, []), fby.get(n, [])
        if len(qs) != len(fs):
            return False, "degree %d: %d free basis elements vs %d in the subquotient" % (
                n, len(fs), len(qs))
        idx = {m: k for k, m in enumerate(qs)}
        ech = Echelon(M.field)
        for t in fs:
            img = images[t]
            if any(m not in idx for m in img):
                return False, "image of %r leaves F_(i+1)" % (t,)
            ech.add({idx[m]: c for m, c in img.items()})
        if len(ech) != len(qs):
            return False, "degree %d: map not surjective" % n
    # chain map modulo the lower step
    for t in free:
        x, gi, y = t
        g, el, dg = gens[gi]
        lhs = _project_out(M.dvec(images[t]), lower)
        rhs = {}
        for x2, c in L.d(x).items():
            add_into(rhs, images.get((x2, gi, y)) or phi((x2, gi, y)), c, p)
        s = sign(L.degree[x] + dg)
        for y2, c in R.d(y).items():
            if (x, gi, y2) in fdeg:
                add_into(rhs, images[(x, gi, y2)], s * c, p)
        if sub(lhs, rhs, p):
            return False, "differential mismatch at %r" % (t,)
    return True, "%d generators, degrees %s" % (len(gens), sorted({d for _, _, d in gens}))


def refined_power_filtration(aug):
    """
    The powers of A⁺ refined through π⁻¹(im d) ⊆ π⁻¹(ker d) on each
    quotient (A⁺)^j/(A⁺)^(j+1).  Returns a list of subspaces
    A = G_0 ⊋ G_1 ⊋ ... ⊋ G_r = 0, each as {degree: [vectors]}.
    """
    n = aug.normalized()
    A = n.algebra
    N = nilpotency_index(aug)
    if N is None:
        raise ValueError("augmentation ideal is not nilpotent")
    powers = ideal_powers(aug)
    chain = [[{x: 1} for x in A.basis]] + powers + [[]]
    by_degree = [_split(A, vs) for vs in chain]
    steps = []
    for j in range(len(by_degree) - 1):
        P, P1 = by_degree[j], by_degree[j + 1]
        ker, im = {}, {}
        for deg in A.degrees():
            big = P.get(deg, [])
            small = P1.get(deg, [])
            nxt_small = P1.get(deg + 1, [])
            # x in P^deg with dx in P1^(deg+1)
            k_vecs = _preimage(A, big, nxt_small, deg)
            ker[deg] = small + k_vecs
            im[deg] = small + [A.dvec(v) for v in P.get(deg - 1, [])]
        steps.extend([P, ker, im])
    steps.append({})
    # drop repeated steps
    out = []
    for s in steps:
        dims = _dims(A, s)
        if not out or dims != _dims(A, out[-1]):
            out.append(s)
    return out, A, n


def _split(A, vecs):
    out = {}
    for v in vecs:
        if v:
            out.setdefault(A.vdegree(v), []).append(v)
    return out


def _dims(A, s):
    res = []
    for deg in A.degrees():
        idx = {x: i for i, x in enumerate(A.basis_in(deg))}
        sp = Subspace(len(idx), [{idx[x]: c for x, c in v.items()} for v in s.get(deg, []) if v],
                      A.field)
        res.append(sp.dim)
    return tuple(res)


def _preimage(A, big, small_next, deg):
    """Vectors x in span(big) with d(x) in span(small_next)."""
    tgt = A.basis_in(deg + 1)
    idx = {x: i for i, x in enumerate(tgt)}
    sp = Subspace(len(tgt), [{idx[x]: c for x, c in v.items()} for v in small_next], A.field)
    cols = []
    for v in big:
        dv = A.dvec(v)
        cols.append(sp.quotient_coords({idx[x]: c for x, c in dv.items()}))
    m = Matrix(len(sp.complement), len(big), cols, A.field)
    out = []
    for k in m.kernel():
        out.append(lin(((c, big[i]) for i, c in k.items()), A.p))
    return [v for v in out if v]


def adapted_basis(A, steps):
    """
    A homogeneous basis with level(b) = i when b ∈ G_i \\ G_(i+1); returns
    a list of (name, vector, level).
    """
    r = len(steps) - 1
    out = []
    used = set()
    for deg in A.degrees():
        idx = {x: i for i, x in enumerate(A.basis_in(deg))}
        names = A.basis_in(deg)
        ech = Echelon(A.field)
        for level in range(r - 1, -1, -1):
            for v in steps[level].get(deg, []):
                if ech.add({idx[x]: c for x, c in v.items()}):
                    if len(v) == 1 and next(iter(v.values())) == 1 and next(iter(v)) not in used:
                        nm = next(iter(v))
                    else:
                        nm = "b%d" % len(out)
                    used.add(nm)
                    out.append((nm, v, level))
        assert len(ech) == len(names)
    return out


def auto_filtration(aug, w):
    """
    The filtration of Ǎ⊗_τ*A*⊗_τ*Ǎ induced by the refined power filtration
    of A: F_i = Ǎ⊗G_i^⊥⊗Ǎ in a basis of A adapted to the G's.
    """
    hyp = check_resolution_hypotheses(aug)
    if not hyp.ok:
        raise ValueError("hypotheses fail: %s" % "; ".join(c.line() for c in hyp.failures()))
    steps, A, n = refined_power_filtration(aug)
    basis = adapted_basis(A, steps)
    level = {nm: lv for nm, _, lv in basis}
    A2, convert = change_basis(A, [(nm, v) for nm, v, _ in basis], A.name)
    unit = next(iter(convert(A.unit)))
    aug2 = Augmentation(A2, {unit: 1})
    bar = BarCoalgebra(aug2, w)
    T = TwoSidedBar(bar)
    D = DualTwoSidedBar(T)
    M = D.bimodule
    r = len(steps) - 1
    fsteps = [set(m for m in M.basis if level[m[1]] < i) for i in range(r + 1)]
    gens = []
    for i in range(r):
        gs = [(nm, {((), nm, ()): 1}, -A2.degree[nm]) for nm, _, lv in basis if lv == i]
        gens.append(gs)
    cert = FiltrationCertificate(M, fsteps, gens, max_outer=-w.lo,
                                 info={"levels": level, "algebra": A2, "dual": D,
                                       "two_sided": T, "bar": bar, "aug": aug2})
    return cert


def break_filtration(cert, i=1):
    """Drop step i (merging two subquotients): the result should be rejected."""
    steps = cert.steps[:i] + cert.steps[i + 1:]
    gens = cert.generators[:i - 1] + [cert.generators[i - 1] + cert.generators[i]] \
        + cert.generators[i + 1:]
    return FiltrationCertificate(cert.bimodule, steps, gens, cert.max_outer, dict(cert.info))


# -- semi-free resolutions ---------------------------------------------------------------

@dataclass
class FreeResolutionCertificate:
    """
    A semi-free bimodule P over (A, A) with generators
    (name, degree, left idempotent, right idempotent): the summand for g is
    A·e ⊗ k·g ⊗ e'·A.  ``dgen[g]`` is d(g) as a dict over triples
    (x, g', y) meaning x·g'·y; ``aug[g]`` is the image of g in the target.
    """
    target: DGBimodule
    generators: list
    dgen: dict
    aug: dict
    max_outer: int = None
    window: DegreeWindow = None


def semifree_bimodule(cert):
    T = cert.target
    A = T.left
    p = T.p
    gens = cert.generators
    gdeg = {g: n for g, n, _, _ in gens}
    degrees = {}
    for g, n, e, e2 in gens:
        for x in A.basis:
            if A.product({x: 1}, _as_vec(e)) != {x: 1}:
                continue
            for y in A.basis:
                if A.product(_as_vec(e2), {y: 1}) != {y: 1}:
                    continue
                if cert.max_outer is not None and A.degree[x] + A.degree[y] > cert.max_outer:
                    continue
                degrees[(x, g, y)] = A.degree[x] + n + A.degree[y]

    def keep(v):
        return {t: c for t, c in v.items() if t in degrees}

    def lact(a, t):
        x, g, y = t
        return keep({(z, g, y): c for z, c in A.mul(a, x).items()})

    def ract(t, b):
        x, g, y = t
        return keep({(x, g, z): c for z, c in A.mul(y, b).items()})

    def d(t):
        x, g, y = t
        out = {}
        for z, c in A.d(x).items():
            add_into(out, {(z, g, y): c}, 1, p)
        for (x2, g2, y2), c in cert.dgen.get(g, {}).items():
            for z, c1 in A.mul(x, x2).items():
                for z2, c2 in A.mul(y2, y).items():
                    add_into(out, {(z, g2, z2): c * c1 * c2}, sign(A.degree[x]), p)
        s = sign(A.degree[x] + gdeg[g])
        for z, c in A.d(y).items():
            add_into(out, {(x, g, z): c}, s, p)
        return keep(out)

    return DGBimodule(A, A, degrees, lact, ract, d, "P")


def _as_vec(e):
    return e if isinstance(e, dict) else {e: 1}


def verify_free_resolution(cert, w=None):
    """'smooth (certified up to window)' when every check passes."""
    c = Checks()
    T = cert.target
    A = T.left
    order = {g: i for i, (g, _, _, _) in enumerate(cert.generators)}
    tri = all(order.get(t[1], 10 ** 9) < order[g] for g, v in cert.dgen.items() for t in v)
    c.add("triangular generator differentials", tri)
    idem = all(A.product(_as_vec(e), _as_vec(e)) == _as_vec(e)
               for _, _, e, e2 in cert.generators for e in (e, e2))
    c.add("idempotents", idem)
    P = semifree_bimodule(cert)
    PC = P.complex()
    bad = [m for m in P.basis if P.dvec(P.d(m))]
    c.add("d^2 = 0", not bad, "dims %s" % PC.dims() if not bad else "fails at %r" % (bad[0],))
    if bad:
        return c, P

    def eps(t):
        x, g, y = t
        return T.right_action(T.left_action({x: 1}, cert.aug.get(g, {})), {y: 1})

    f = ModuleMap(P, T, eps)
    rep = f.check()
    c.add("augmentation is a bimodule chain map", rep.ok,
          "" if rep.ok else "%s at %r" % (rep.violations[0][0], rep.violations[0][1]))
    w = w or cert.window
    if w is None:
        degs = PC.degrees() + T.degrees()
        w = DegreeWindow(min(degs) - 1, max(degs) + 1)
    try:
        q = verify_quasi_iso(f.graded_map(), w)
        c.add("augmentation quasi-isomorphism", q.ok, "window %s" % w)
    except ValueError as e:
        c.add("augmentation quasi-isomorphism", False, str(e))
    return c, P


def a2_diagonal_resolution(A):
    """
    The diagonal of the A2 path algebra resolved by the idempotent
    projectives A e1⊗e1 A, A e2⊗e2 A and A e1⊗e2 A[1].
    """
    target = diagonal_bimodule(A)
    gens = [("g1", 0, "e1", "e1"), ("g2", 0, "e2", "e2"), ("h", -1, "e1", "e2")]
    dgen = {"h": {("a", "g2", "e2"): 1, ("e1", "g1", "a"): -1}}
    aug = {"g1": {"e1": 1}, "g2": {"e2": 1}}
    return FreeResolutionCertificate(target, gens, dgen, aug)


def trivial_resolution(A):
    """A ⊗ k·g ⊗ A -> A for A = k (or any algebra with a basis unit)."""
    u = next(iter(A.unit))
    return FreeResolutionCertificate(diagonal_bimodule(A), [("g", 0, u, u)], {}, {"g": {u: 1}})


def koszul_dual_resolution(cert):
    """
    The filtration certificate's bimodule Ǎ⊗_τ*A*⊗_τ*Ǎ read as a semi-free
    resolution of the diagonal Ǎ, with augmentation ν*.
    """
    D = cert.info["dual"]
    dual = D.dual
    A2 = cert.info["algebra"]
    level = cert.info["levels"]
    unit = cert.info["bar"].unit
    M = cert.bimodule
    names = sorted(A2.basis, key=lambda g: (level[g], repr(g)))
    gens = [(g, -A2.degree[g], (), ()) for g in names]
    dgen = {g: M.d(((), g, ())) for g in names}
    aug = {unit: {(): 1}}
    w = cert.info["bar"].window
    return FreeResolutionCertificate(diagonal_bimodule(dual), gens, dgen, aug,
                                     max_outer=cert.max_outer, window=DegreeWindow(-w.hi, -w.lo))


# -- Tor obstruction --------------------------------------------------------------------------

@dataclass
class TorResult:
    dims: list
    applicable: bool
    verdict: str


def tor_obstruction(aug, max_n):
    """dim Tor_n^A(k, k) = dim H^(-n)(BA) for n = 0..max_n."""
    A = aug.algebra
    if any(n != 0 for n in A.degrees()):
        return TorResult([], False, "inapplicable: A is not concentrated in degree 0")
    w = DegreeWindow(-(max_n + 1), 1)
    bar = BarCoalgebra(aug, w)
    H = cohomology(bar.complex, w)
    dims = [H.dims.get(-n, 0) for n in range(max_n + 1)]
    tail = dims[-1] == 0 and max_n > 0
    if tail:
        verdict = "no obstruction up to n=%d" % max_n
    else:
        verdict = "obstruction: Tor_n nonzero up to n=%d (infinite global dimension " \
                  "suggested up to max_n)" % max_n
    return TorResult(dims, True, verdict)


# -- gluing ---------------------------------------------------------------------------------------

class GluedAlgebra:
    """
    C = [[B, 0], [N, A]] on B ⊕ N ⊕ A with basis ("B", b), ("N", n), ("A", a):
    (b, n, a)(b', n', a') = (bb', n·b' + a·n', aa').
    """

    def __init__(self, A, B, N):
        self.A, self.B, self.N = A, B, N
        field = A.field
        degrees = {("B", b): n for b, n in B.degree.items()}
        degrees.update({("N", m): n for m, n in N.degree.items()})
        degrees.update({("A", a): n for a, n in A.degree.items()})

        def tag(t, v):
            return {(t, x): c for x, c in v.items()}

        def mult(u, v):
            s, x = u
            t, y = v
            if s == t == "B":
                return tag("B", B.mul(x, y))
            if s == t == "A":
                return tag("A", A.mul(x, y))
            if s == "N" and t == "B":
                return tag("N", N.ract(x, y))
            if s == "A" and t == "N":
                return tag("N", N.lact(x, y))
            return {}

        def diff(u):
            s, x = u
            src = {"A": A.d, "B": B.d, "N": N.d}[s]
            return tag(s, src(x))

        self.e_A = {("A", x): c for x, c in A.unit.items()}
        self.e_B = {("B", x): c for x, c in B.unit.items()}
        unit = dict(self.e_B)
        unit.update(self.e_A)
        self.C = DGAlgebra(degrees, mult, diff, unit, field,
                           "glue(%s,%s,%s)" % (A.name, B.name, N.name))


def glue(A, B, N):
    rep = validate_bimodule(N)
    if not rep.ok:
        raise ValueError("N is not a valid bimodule: %s" % rep.kinds())
    return GluedAlgebra(A, B, N)


def zero_bimodule(A, B):
    return DGBimodule(A, B, {}, {}, {}, {}, "0")


def ground_bimodule(A, B, name="k"):
    """k as an (A, B)-bimodule for algebras whose unit is a single basis element."""
    ua, ub = next(iter(A.unit)), next(iter(B.unit))
    return DGBimodule(A, B, {"n": 0}, lambda a, m: {m: 1} if a == ua else {},
                      lambda m, b: {m: 1} if b == ub else {}, {}, name)


def glued_product_check(ga):
    """glue(A, B, 0) ≅ A × B."""
    P = product_algebra(ga.A, ga.B)
    images = {u: {u: 1} for u in ga.C.basis}
    return is_isomorphism(ga.C, P, images)


def _sub_bimodule(M, names, name):
    keep = set(names)

    def restrict(v):
        return {x: c for x, c in v.items() if x in keep}

    return DGBimodule(M.left, M.right, {x: M.degree[x] for x in names},
                      lambda a, m: restrict(M.lact(a, m)), lambda m, b: restrict(M.ract(m, b)),
                      lambda m: restrict(M.d(m)), name)


def _direct_sum(M1, M2, tags=("L", "R")):
    t1, t2 = tags
    degrees = {(t1, x): n for x, n in M1.degree.items()}
    degrees.update({(t2, x): n for x, n in M2.degree.items()})

    def pick(t):
        return M1 if t == t1 else M2

    return DGBimodule(
        M1.left, M1.right, degrees,
        lambda a, m: {(m[0], y): c for y, c in pick(m[0]).lact(a, m[1]).items()},
        lambda m, b: {(m[0], y): c for y, c in pick(m[0]).ract(m[1], b).items()},
        lambda m: {(m[0], y): c for y, c in pick(m[0]).d(m[1]).items()},
        "%s⊕%s" % (M1.name, M2.name))


def glued_diagonal_cone(ga, w=None):
    """
    The diagonal C-bimodule against the cone of
    ι: LInd(N) = e_A C e_B -> LInd(A) ⊕ LInd(B) = e_A C ⊕ C e_B, n ↦ (n, n),
    with π: cone -> C, (s n, x, y) ↦ x - y and a section C -> cone.
    """
    C = ga.C
    c = Checks()
    diag = diagonal_bimodule(C)
    names_N = [u for u in C.basis if u[0] == "N"]
    ind_A = _sub_bimodule(diag, [u for u in C.basis if u[0] in ("A", "N")], "LInd(A)")
    ind_B = _sub_bimodule(diag, [u for u in C.basis if u[0] in ("B", "N")], "LInd(B)")
    ind_N = _sub_bimodule(diag, names_N, "LInd(N)")
    for M in (ind_A, ind_B, ind_N):
        rep = validate_bimodule(M, exhaustive=True)
        c.add("%s is a sub-bimodule" % M.name, rep.ok, "" if rep.ok else str(rep.kinds()))
    S = _direct_sum(ind_A, ind_B)
    iota = ModuleMap(ind_N, S, lambda n: {("L", n): 1, ("R", n): 1})
    rep = iota.check()
    c.add("iota bimodule chain map", rep.ok)
    K = cone(iota)
    rep = validate_bimodule(K, exhaustive=True)
    c.add("cone is a bimodule", rep.ok, "dims %s" % K.dims())

    def pi(e):
        tag, m = e
        if tag == "s":
            return {}
        t, x = m
        return {x: 1 if t == "L" else -1}

    pmap = ModuleMap(K, diag, pi)
    rep = pmap.check()
    c.add("cone -> C bimodule chain map", rep.ok)

    def section(x):
        if x[0] == "B":
            return {("t", ("R", x)): -1}
        return {("t", ("L", x)): 1}

    smap = GradedMap.from_function(C.complex(), K.complex(), 0,
                                   lambda n, x: section(x), C.field)
    if w is None:
        degs = C.degrees() + K.degrees()
        w = DegreeWindow(min(degs) - 1, max(degs) + 1)
    pg = pmap.graded_map()
    try:
        check_chain_map(smap, w)
        sec_ok = True
    except ValueError:
        sec_ok = False
    c.add("section C -> cone chain map", sec_ok)
    comp = pg.compose(smap)
    c.add("pi∘section = id", all(comp.block(n) == Matrix.identity(C.complex().dim(n), C.field)
                                 for n in C.degrees()))
    c.add("cone -> C quasi-isomorphism", verify_quasi_iso(pg, w).ok, "window %s" % w)
    c.add("C -> cone quasi-isomorphism", verify_quasi_iso(smap, w).ok, "window %s" % w)
    return c


# -- modules over a glued algebra ----------------------------------------------------------------

@dataclass
class ModuleTriple:
    S_A: DGModule
    S_B: DGModule
    phi: dict          # (S_A name, N name) -> S_B vector
    vectors_A: dict    # S_A name -> vector in S
    vectors_B: dict


def _image_basis(S, e, tag):
    """A basis of S·e made of vectors s·e, with coordinate lookup."""
    vecs = []
    idx = {x: i for i, x in enumerate(S.basis)}
    ech = Echelon(S.field, track=True)
    for s in S.basis:
        v = S.action({s: 1}, e)
        if v and ech.add({idx[x]: c for x, c in v.items()}, tag=len(vecs)):
            vecs.append(v)
    names = ["%s%d" % (tag, i) for i in range(len(vecs))]
    sp = Subspace(len(S.basis), [{idx[x]: c for x, c in v.items()} for v in vecs], S.field)

    def coords(v):
        co = sp.coordinates({idx[x]: c for x, c in v.items()})
        if co is None:
            raise ArithmeticError("vector not in S·e")
        return {names[i]: c for i, c in co.items()}

    return dict(zip(names, vecs)), coords


def module_triple(ga, S):
    """Split a right C-module into (S·e_A, S·e_B, φ: S_A⊗N -> S_B, s⊗n ↦ s·n)."""
    A, B, N = ga.A, ga.B, ga.N
    va, ca = _image_basis(S, ga.e_A, "a")
    vb, cb = _image_basis(S, ga.e_B, "b")
    deg = {}
    for vs in (va, vb):
        for nm, v in vs.items():
            deg[nm] = S.degree[next(iter(v))]

    def sub_module(alg, vs, coords, tag):
        return DGModule(alg, {nm: deg[nm] for nm in vs},
                        lambda m, x: coords(S.action(vs[m], {(tag, x): 1})),
                        lambda m: coords(S.dvec(vs[m])), "S_" + tag)

    S_A = sub_module(A, va, ca, "A")
    S_B = sub_module(B, vb, cb, "B")
    phi = {}
    for m, v in va.items():
        for n in N.basis:
            img = S.action(v, {("N", n): 1})
            if img:
                phi[(m, n)] = cb(img)
    return ModuleTriple(S_A, S_B, phi, va, vb)


def module_from_triple(ga, t):
    def act(m, u):
        s, x = u
        if m in t.S_A.degree:
            if s == "A":
                return t.S_A.act(m, x)
            if s == "N":
                return dict(t.phi.get((m, x), {}))
            return {}
        if s == "B":
            return t.S_B.act(m, x)
        return {}

    def d(m):
        return t.S_A.d(m) if m in t.S_A.degree else t.S_B.d(m)

    degrees = dict(t.S_A.degree)
    degrees.update(t.S_B.degree)
    return DGModule(ga.C, degrees, act, d, "triple")


def module_triple_check(ga, S):
    """
    Extract the triple, check its parts (S_A, S_B modules; φ balanced,
    B-linear and closed), rebuild a C-module and check that
    s ↦ (s·e_A, s·e_B) is an isomorphism of C-modules.
    """
    c = Checks()
    rep = validate_module(S, exhaustive=True)
    if not rep.ok:
        c.add("S is a C-module", False, str(rep.kinds()))
        return c, None
    t = module_triple(ga, S)
    N = ga.N
    p = S.p
    c.add("S_A is an A-module", validate_module(t.S_A, exhaustive=True).ok, str(t.S_A.dims()))
    c.add("S_B is a B-module", validate_module(t.S_B, exhaustive=True).ok, str(t.S_B.dims()))
    balanced = linear = closed = True
    for m in t.S_A.basis:
        for n in N.basis:
            base = t.phi.get((m, n), {})
            for a in ga.A.basis:
                lhs = lin(((cc, t.phi.get((m2, n), {})) for m2, cc in t.S_A.act(m, a).items()), p)
                rhs = lin(((cc, t.phi.get((m, n2), {})) for n2, cc in N.lact(a, n).items()), p)
                balanced &= not sub(lhs, rhs, p)
            for b in ga.B.basis:
                lhs = lin(((cc, t.phi.get((m, n2), {})) for n2, cc in N.ract(n, b).items()), p)
                rhs = lin(((cc, t.S_B.act(y, b)) for y, cc in base.items()), p)
                linear &= not sub(lhs, rhs, p)
            lhs = t.S_B.dvec(base)
            rhs = lin(((cc, t.phi.get((m2, n), {})) for m2, cc in t.S_A.d(m).items()), p)
            s = sign(t.S_A.degree[m])
            add_into(rhs, lin(((cc, t.phi.get((m, n2), {})) for n2, cc in N.d(n).items()), p), s, p)
            closed &= not sub(lhs, rhs, p)
    c.add("phi balanced over A", balanced)
    c.add("phi B-linear", linear)
    c.add("phi closed of degree 0", closed)
    R = module_from_triple(ga, t)
    c.add("rebuilt triple is a C-module", validate_module(R, exhaustive=True).ok)
    _, ca = _image_basis(S, ga.e_A, "a")
    _, cb = _image_basis(S, ga.e_B, "b")

    def split(s):
        out = ca(S.action({s: 1}, ga.e_A))
        out.update(cb(S.action({s: 1}, ga.e_B)))
        return out

    f = ModuleMap(S, R, split)
    rep = f.check()
    bij = len(S.basis) == len(R.basis)
    if bij:
        idx = {x: i for i, x in enumerate(R.basis)}
        sp = Subspace(len(R.basis), [{idx[y]: cc for y, cc in split(s).items()} for s in S.basis],
                      S.field)
        bij = sp.dim == len(R.basis)
    c.add("round trip S ≅ triple", rep.ok and bij)
    return c, t


def random_triple_module(ga, rng, max_dim=2, scramble=True):
    """
    A random right module over glue(k, k, N) built from a random triple
    (two-term complexes S_A, S_B and a chain map φ), then presented in a
    scrambled basis of S.
    """
    A, B, N = ga.A, ga.B, ga.N
    field = ga.C.field
    p = field.p
    ua, ub = next(iter(A.unit)), next(iter(B.unit))

    def rand_complex(tag):
        n0, n1 = rng.randint(0, max_dim), rng.randint(0, max_dim)
        names0 = ["%s0_%d" % (tag, i) for i in range(n0)]
        names1 = ["%s1_%d" % (tag, i) for i in range(n1)]
        d = {x: {y: field(rng.randint(-2, 2)) for y in names1} for x in names0}
        d = {x: {y: c for y, c in v.items() if c} for x, v in d.items()}
        deg = {x: 0 for x in names0}
        deg.update({y: 1 for y in names1})
        return deg, d

    da, dA = rand_complex("a")
    db, dB = rand_complex("b")
    # φ: S_A⊗N -> S_B (N = k) as a null-homotopic chain map plus optional zero
    h = {x: {y: field(rng.randint(-1, 1)) for y in db if db[y] == da[x] - 1} for x in da}
    p_ = p

    def apply(dmap, v):
        return lin(((c, dmap.get(x, {})) for x, c in v.items()), p_)

    n0 = N.basis[0] if N.basis else None
    phi = {}
    if n0 is not None:
        for x in da:
            # φ = d h + h d
            img = apply(dB, h[x])
            add_into(img, apply(h, dA.get(x, {})), 1, p)
            if img:
                phi[x] = img
    degrees = dict(da)
    degrees.update(db)

    def act(m, u):
        s, x = u
        if m in da:
            if s == "A" and x == ua:
                return {m: 1}
            if s == "N":
                return dict(phi.get(m, {}))
            return {}
        if s == "B" and x == ub:
            return {m: 1}
        return {}

    diff = dict(dA)
    diff.update(dB)
    S = DGModule(ga.C, degrees, act, diff, "S")
    if not scramble:
        return S
    return _scramble(S, rng)


def _scramble(S, rng):
    """Re-present S in a random homogeneous basis (unitriangular change)."""
    p = S.p
    field = S.field
    new = {}
    for n in S.degrees():
        names = S.basis_in(n)
        for i, x in enumerate(names):
            v = {x: 1}
            for y in names[i + 1:]:
                c = field(rng.randint(-1, 1))
                if c:
                    v[y] = c
            new["z_%s" % x] = v
    # inverse by solving degreewise
    inv = {}
    for n in S.degrees():
        names = S.basis_in(n)
        idx = {x: i for i, x in enumerate(names)}
        znames = ["z_%s" % x for x in names]
        sp = Subspace(len(names), [{idx[y]: c for y, c in new[z].items()} for z in znames], field)
        for x in names:
            co = sp.coordinates({idx[x]: 1})
            inv[x] = {znames[i]: c for i, c in co.items()}

    def to_new(v):
        return lin(((c, inv[x]) for x, c in v.items()), p)

    degrees = {z: S.degree[z[2:]] for z in new}
    return DGModule(S.algebra, degrees,
                    lambda z, u: to_new(S.action(new[z], {u: 1})),
                    lambda z: to_new(S.dvec(new[z])), S.name)


def random_chain_complex(rng, field, degrees=(-1, 0, 1), max_dim=2, tag="x"):
    """A random complex built as a direct sum of shifted k and acyclic k -> k pieces."""
    comps = {}
    d = {}
    count = 0
    for n in degrees:
        for _ in range(rng.randint(0, max_dim)):
            nm = "%s%d" % (tag, count)
            count += 1
            comps.setdefault(n, []).append(nm)
            if rng.random() < 0.5 and n + 1 in degrees:
                nm2 = "%s%d" % (tag, count)
                count += 1
                comps.setdefault(n + 1, []).append(nm2)
                d[nm] = {nm2: field(rng.choice([1, -1, 2]))}
    space = GradedSpace({n: comps[n] for n in sorted(comps)})
    return Complex.from_function(space, lambda n, x: d.get(x, {}), field)

