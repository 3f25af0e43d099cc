"""Shared generators and independent oracles for the test suite."""

import random
from fractions import Fraction

import sympy
from sympy.polys.domains import GF as SymGF, QQ as SymQQ
from sympy.polys.matrices import DomainMatrix

from dgres.algebra import (Augmentation, change_basis, cyclic_group_algebra, group_augmentation,
                           truncated_free_algebra, truncated_polynomial, truncated_tensor)
from dgres.field import GF, QQ
from dgres.graded import Complex, GradedSpace
from dgres.linalg import Matrix


def corpus():
    """The five augmented algebras every pipeline test runs on."""
    return {
        "kx2": Augmentation(truncated_polynomial(2)),
        "kx5": Augmentation(truncated_polynomial(5)),
        "trunc2": Augmentation(truncated_tensor(2)),
        "z2": group_augmentation(cyclic_group_algebra(2, GF(2))),
        "z3": group_augmentation(cyclic_group_algebra(3, GF(3))),
    }


def dg_free():
    """x in degree 0, y in degree -1, dy = x, words of length <= 2."""
    return truncated_free_algebra({"x": 0, "y": -1}, {"y": {("x",): 1}}, 2)


# -- oracles ------------------------------------------------------------------------------

def sym_rank(m):
    """Rank by sympy, over Q or F_p."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = m.to_rows()
    if m.field.p:
        dom = SymGF(m.field.p)
        dm = DomainMatrix([[dom(int(x)) for x in r] for r in rows], (m.rows, m.cols), dom)
    else:
        dm = DomainMatrix([[SymQQ(Fraction(x).numerator, Fraction(x).denominator) for x in r]
                           for r in rows], (m.rows, m.cols), SymQQ)
    return dm.rank()


def sym_rank_rows(rows, p=0):
    if not rows or not rows[0]:
        return 0
    if p:
        dom = SymGF(p)
        dm = DomainMatrix([[dom(int(x) % p) for x in r] for r in rows], (len(rows), len(rows[0])), dom)
        return dm.rank()
    return sympy.Matrix(rows).rank()


def oracle_cohomology(c, degrees):
    """dim H^n = dim C^n - rank d^n - rank d^(n-1), ranks by sympy."""
    out = {}
    for n in degrees:
        r_out = sym_rank(c.differential(n)) if c.dim(n) and c.dim(n + 1) else 0
        r_in = sym_rank(c.differential(n - 1)) if c.dim(n - 1) and c.dim(n) else 0
        out[n] = c.dim(n) - r_out - r_in
    return out


def tor_oracle(A, eps, max_n):
    """
    dim Tor_n^A(k, k) for an algebra in degree 0, from the reduced bar
    complex built directly out of structure constants: chains are
    (A⁺)^⊗n in the basis x - eps(x) for x ≠ unit, with
    b(a1⊗...⊗an) = Σ (-1)^i a1⊗...⊗a_i a_(i+1)⊗...⊗an.
    """
    p = A.field.p
    unit = next(iter(A.unit))
    names = [x for x in A.basis if x != unit]
    full = list(A.basis)
    idx = {x: i for i, x in enumerate(full)}

    def vec(x):
        v = [0] * len(full)
        v[idx[x]] += 1
        v[idx[unit]] -= eps.get(x, 0)
        return v

    # coordinates on the augmentation ideal basis {x - eps(x)1}
    basis_vecs = [vec(x) for x in names]

    def ideal_coords(v):
        # v = Σ c_x (x - eps(x) 1): c_x is the x-coordinate of v
        return [v[idx[x]] for x in names]

    def mult_vec(u, v):
        out = [0] * len(full)
        for i, a in enumerate(u):
            for j, b in enumerate(v):
                if a and b:
                    for z, c in A.mul(full[i], full[j]).items():
                        out[idx[z]] += a * b * c
        return out

    prod = {}
    for i, x in enumerate(names):
        for j, y in enumerate(names):
            prod[(i, j)] = ideal_coords(mult_vec(basis_vecs[i], basis_vecs[j]))
    r = len(names)

    def tuples(n):
        if n == 0:
            return [()]
        return [t + (i,) for t in tuples(n - 1) for i in range(r)]

    def boundary(n):
        src, tgt = tuples(n), tuples(n - 1)
        tix = {t: k for k, t in enumerate(tgt)}
        rows = [[0] * len(src) for _ in tgt]
        for col, t in enumerate(src):
            for i in range(n - 1):
                s = -1 if (i + 1) % 2 else 1
                for z, c in enumerate(prod[(t[i], t[i + 1])]):
                    if c:
                        rows[tix[t[:i] + (z,) + t[i + 2:]]][col] += s * c
        return rows

    ranks = {n: sym_rank_rows(boundary(n), p) if n >= 2 else 0 for n in range(1, max_n + 2)}
    return [r ** n - ranks.get(n, 0) - ranks.get(n + 1, 0) for n in range(max_n + 1)]


# -- random objects -----------------------------------------------------------------------------

def random_matrix(rng, rows, cols, field=QQ, density=0.5, lo=-3, hi=3):
    data = [[field(rng.randint(lo, hi)) if rng.random() < density else 0 for _ in range(cols)]
            for _ in range(rows)]
    return Matrix.from_rows(data, field, cols=cols)


def random_complex(rng, field=QQ, degrees=(-2, -1, 0, 1), max_dim=3, tag="c"):
    """
    A random complex with d² = 0 by construction: pick C^n = B^n ⊕ H^n ⊕ E^n
    with d: E^n ≅ B^(n+1), then scramble each degree by a random invertible
    (unitriangular) change of basis.
    """
    comps, pieces = {}, {}
    for n in degrees:
        e = rng.randint(0, max_dim) if n + 1 in degrees else 0
        h = rng.randint(0, max_dim)
        pieces[n] = (h, e)
    # B^n = E^(n-1)
    names = {}
    for n in degrees:
        b = pieces[n - 1][1] if n - 1 in pieces else 0
        h, e = pieces[n]
        names[n] = (["%s%d_b%d" % (tag, n, i) for i in range(b)],
                    ["%s%d_h%d" % (tag, n, i) for i in range(h)],
                    ["%s%d_e%d" % (tag, n, i) for i in range(e)])
        comps[n] = names[n][0] + names[n][1] + names[n][2]
    raw = {}
    for n in degrees:
        for i, x in enumerate(names[n][2]):
            c = field(rng.choice([1, -1, 2, 3]))
            raw[x] = {names[n + 1][0][i]: c if c else field(1)}
    # unitriangular scramble T_n (new basis vectors in old coordinates)
    new, inv = {}, {}
    for n in degrees:
        old = comps[n]
        for i, x in enumerate(old):
            v = {x: 1}
            for y in old[i + 1:]:
                c = field(rng.randint(-1, 1))
                if c:
                    v[y] = c
            new[x] = v
        # invert by back substitution (unitriangular)
        for i in range(len(old) - 1, -1, -1):
            x = old[i]
            w = {x: 1}
            for y, c in new[x].items():
                if y != x:
                    for z, e in inv[y].items():
                        w[z] = w.get(z, 0) - c * e
            inv[x] = {z: field(e) for z, e in w.items() if field(e)}
    p = field.p

    def to_new(v):
        out = {}
        for y, c in v.items():
            for z, e in inv[y].items():
                t = out.get(z, 0) + c * e
                out[z] = t % p if p else t
        return {z: c for z, c in out.items() if c}

    def d(n, x):
        # x is a new basis vector: new[x] in old coordinates
        img = {}
        for y, c in new[x].items():
            for z, e in raw.get(y, {}).items():
                t = img.get(z, 0) + c * e
                img[z] = t % p if p else t
        return to_new({z: c for z, c in img.items() if c})

    space = GradedSpace({n: comps[n] for n in degrees if comps[n]})
    return Complex.from_function(space, d, field), {n: pieces[n][0] for n in degrees}


def scrambled(aug, rng):
    """Re-present an augmented algebra in a random unitriangular basis (unit kept)."""
    A = aug.algebra
    unit = next(iter(A.unit))
    new = []
    for n in A.degrees():
        names = [x for x in A.basis_in(n) if x != unit]
        for i, x in enumerate(names):
            v = {x: 1}
            for y in names[i + 1:]:
                c = A.field(rng.randint(-1, 1))
                if c:
                    v[y] = c
            new.append(("s_%s" % x if isinstance(x, str) else ("s",) + tuple(x), v))
    B, convert = change_basis(A, [(unit, {unit: 1})] + new, A.name)
    eps = {}
    for nm, v in [(unit, {unit: 1})] + new:
        e = aug(v)
        if e:
            eps[nm] = e
    return Augmentation(B, eps)


def rng_for(seed):
    return random.Random(seed)


def zigzag_instance(rng, field=QQ, passing=True):
    """
    (f, phi) with f: X -> Y = X ⊕ Z the inclusion of a random complex into
    its sum with an acyclic one, and phi: End(X) -> End(X) the identity, or
    k -> End(X) when H(X) is a line.  Failing instances use f = 0 on a
    complex with cohomology, or the unit map k -> End(X) with H(X) of
    dimension two.
    """
    from dgres.algebra import DGAlgebraHom, ground
    from dgres.graded import GradedMap, direct_sum
    from dgres.module import endomorphism_algebra

    def with_h(total):
        while True:
            X, h = random_complex(rng, field, degrees=(-1, 0), max_dim=1, tag="x")
            if sum(h.values()) == total:
                return X, h

    if passing:
        X, h = with_h(rng.choice([1, 1, 2]))
        while True:
            Z, hz = random_complex(rng, field, degrees=(-1, 0), max_dim=1, tag="z")
            if not any(hz.values()):
                break
        Y = direct_sum(X, Z)
        f = GradedMap.from_function(X, Y, 0, lambda n, x: {(0, x): 1}, field)
    else:
        X, h = with_h(rng.choice([1, 2]))
        kind = "zero" if sum(h.values()) == 1 else rng.choice(["zero", "unit"])
        Y = X
        if kind == "zero":
            f = GradedMap.from_function(X, Y, 0, lambda n, x: {}, field)
        else:
            f = GradedMap.from_function(X, Y, 0, lambda n, x: {x: 1}, field)
    E = endomorphism_algebra(X)
    if sum(h.values()) == 1 or (not passing and kind == "unit"):
        k = ground(field)
        phi = DGAlgebraHom(k, E, {x: dict(E.unit) for x in k.basis})
    else:
        phi = DGAlgebraHom(E, E, {e: {e: 1} for e in E.basis})
    return f, phi
