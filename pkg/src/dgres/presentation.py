"""
Line-oriented text format for algebras, modules, bimodules, complexes
and maps between them.

    field Q                      # or Fp:2
    algebra kx2
      gen 1 0                    # basis element and its degree
      gen x 0
      unit 1
      generators x               # optional algebra generators
      mul x x = 0
      d x = 0
      aug 1 = 1
    end
    module M over kx2            # right module
      gen m 0
      act m x = 0
    end
    bimodule N over A B          # lact a n = ..., ract n b = ...
    complex X                    # gen, d
    chainmap f X Y               # map x = ...
    action phi A X               # left action of A on X: act a x = ...

Right-hand sides are sums like ``2*x - 1/2*y`` or ``0``.  Products with a
single-basis-element unit default to 1·x = x·1 = x, module and action
units to m·1 = m; everything else not listed is zero.  In strict mode
nothing is defaulted and every entry must be listed.
"""

import re

from .algebra import Augmentation, DGAlgebra, DGAlgebraHom
from .field import QQ, field_from_string
from .graded import Complex, GradedMap, GradedSpace
from .module import DGBimodule, DGModule, endomorphism_algebra

NAME = r"[A-Za-z0-9_'^.]+"
_name_re = re.compile(r"^%s$" % NAME)
_term_re = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(%s)\s*" % NAME)

HEADERS = {
    "algebra": 0, "module": 2, "bimodule": 3, "complex": 0, "chainmap": 2, "action": 2,
}
# entry keyword -> (number of names on the left, allowed section kinds)
ENTRIES = {
    "mul": (2, ("algebra",)),
    "d": (1, ("algebra", "module", "bimodule", "complex")),
    "aug": (1, ("algebra",)),
    "act": (2, ("module", "action")),
    "lact": (2, ("bimodule",)),
    "ract": (2, ("bimodule",)),
    "map": (1, ("chainmap",)),
}


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.msg, self.line, self.col = msg, line, col
        where = ""
        if line is not None:
            where = "line %d" % line + (", col %d: " % col if col else ": ")
        super().__init__(where + msg)


class Section:
    def __init__(self, kind, name, args, line):
        self.kind = kind
        self.name = name
        self.args = list(args)
        self.line = line
        self.gens = {}           # name -> degree, in declaration order
        self.unit = None         # vector or None
        self.generators = None
        self.entries = {}        # (keyword, lhs names) -> vector
        self.where = {}          # same keys -> line number

    def key(self):
        return (self.kind, self.name, tuple(self.args), tuple(self.gens.items()),
                None if self.unit is None else tuple(sorted(self.unit.items())),
                None if self.generators is None else tuple(self.generators),
                tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.entries.items())))


class Presentation:
    def __init__(self, field=QQ):
        self.field = field
        self.sections = {}

    def __eq__(self, other):
        return (isinstance(other, Presentation) and self.field == other.field
                and [s.key() for s in self.sections.values()]
                == [s.key() for s in other.sections.values()])

    def __getitem__(self, name):
        return self.sections[name]

    def of_kind(self, kind):
        return [s for s in self.sections.values() if s.kind == kind]

    def _get(self, name, kind):
        if name is None:
            return self.first(kind)
        s = self.sections.get(name)
        if s is None or s.kind != kind:
            raise ParseError("no %s section named %r" % (kind, name))
        return s

    def first(self, kind):
        s = self.of_kind(kind)
        if not s:
            raise ParseError("no %s section in input" % kind)
        return s[0]

    # -- building objects

    def algebra(self, name=None, strict=False):
        s = self._get(name, "algebra")
        mult = {k[1]: v for k, v in s.entries.items() if k[0] == "mul"}
        diff = {k[1][0]: v for k, v in s.entries.items() if k[0] == "d"}
        unit = s.unit
        if not strict and unit is not None and len(unit) == 1 and next(iter(unit.values())) == 1:
            u = next(iter(unit))
            for x in s.gens:
                mult.setdefault((u, x), {x: 1})
                mult.setdefault((x, u), {x: 1})
        return DGAlgebra(s.gens, mult, diff, unit, self.field, s.name, generators=s.generators)

    def augmentation(self, name=None, strict=False):
        s = self._get(name, "algebra")
        A = self.algebra(s.name, strict)
        eps = {k[1][0]: v.get("1", 0) for k, v in s.entries.items() if k[0] == "aug"}
        return Augmentation(A, eps if eps else None)

    def module(self, name=None, strict=False):
        s = self._get(name, "module")
        A = self.algebra(s.args[0], strict)
        act = {k[1]: v for k, v in s.entries.items() if k[0] == "act"}
        if not strict:
            _default_unit(act, s.gens, A.unit, right=True)
        diff = {k[1][0]: v for k, v in s.entries.items() if k[0] == "d"}
        return DGModule(A, s.gens, act, diff, s.name)

    def bimodule(self, name=None, strict=False):
        s = self._get(name, "bimodule")
        L = self.algebra(s.args[0], strict)
        R = self.algebra(s.args[1], strict)
        lact = {k[1]: v for k, v in s.entries.items() if k[0] == "lact"}
        ract = {k[1]: v for k, v in s.entries.items() if k[0] == "ract"}
        if not strict:
            _default_unit(lact, s.gens, L.unit, right=False)
            _default_unit(ract, s.gens, R.unit, right=True)
        diff = {k[1][0]: v for k, v in s.entries.items() if k[0] == "d"}
        return DGBimodule(L, R, s.gens, lact, ract, diff, s.name)

    def complex(self, name=None):
        s = self._get(name, "complex")
        comps = {}
        for x, n in s.gens.items():
            comps.setdefault(n, []).append(x)
        diff = {k[1][0]: v for k, v in s.entries.items() if k[0] == "d"}
        space = GradedSpace({n: comps[n] for n in sorted(comps)})
        return Complex.from_function(space, lambda n, x: diff.get(x, {}), self.field, name=s.name)

    def chainmap(self, name=None):
        s = self._get(name, "chainmap")
        X, Y = self.complex(s.args[0]), self.complex(s.args[1])
        images = {k[1][0]: v for k, v in s.entries.items() if k[0] == "map"}
        return GradedMap.from_function(X, Y, 0, lambda n, x: images.get(x, {}), self.field)

    def action(self, name=None, strict=False):
        """φ: A -> End(X) from a left action of A on X."""
        s = self._get(name, "action")
        A = self.algebra(s.args[0], strict)
        X = self.complex(s.args[1])
        act = {k[1]: v for k, v in s.entries.items() if k[0] == "act"}
        xs = [x for n in X.degrees() for x in X.basis(n)]
        if not strict:
            _default_unit(act, xs, A.unit, right=False)
        End = endomorphism_algebra(X)
        images = {}
        for a in A.basis:
            img = {}
            for x in xs:
                for y, c in act.get((a, x), {}).items():
                    img[("E", y, x)] = c
            images[a] = img
        return DGAlgebraHom(A, End, images)


def _default_unit(table, names, unit, right):
    if len(unit) != 1 or next(iter(unit.values())) != 1:
        return
    u = next(iter(unit))
    for m in names:
        table.setdefault((m, u) if right else (u, m), {m: 1})


# -- parsing ---------------------------------------------------------------------------------

def parse(text, field=None, strict=False):
    """
    Parse a presentation.  ``field`` (a Field) is used when the text has no
    field line and must agree with it otherwise.  Errors carry line numbers.
    """
    pres = Presentation(field or QQ)
    declared_field = False
    cur = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        toks = line.split()
        kw = toks[0]

        def col(tok_index):
            pos = indent
            for t in toks[:tok_index]:
                pos = line.index(t, pos) + len(t)
            return line.index(toks[tok_index], pos) + 1 if tok_index < len(toks) else pos + 1

        if kw == "field":
            if cur is not None or pres.sections:
                raise ParseError("field must be declared before any section", lineno, 1)
            if len(toks) != 2:
                raise ParseError("expected 'field Q' or 'field Fp:<p>'", lineno, 1)
            try:
                f = field_from_string(toks[1])
            except ValueError as e:
                raise ParseError(str(e), lineno, col(1))
            if field is not None and f != field:
                raise ParseError("field mismatch: file declares %s, %s requested"
                                 % (f.name, field.name), lineno, col(1))
            if declared_field:
                raise ParseError("field declared twice", lineno, 1)
            pres.field = f
            declared_field = True
            continue
        if kw in HEADERS:
            if cur is not None:
                raise ParseError("section %r not closed with 'end'" % cur.name, lineno, 1)
            cur = _header(pres, toks, lineno, col)
            continue
        if kw == "end":
            if cur is None:
                raise ParseError("'end' outside a section", lineno, 1)
            _finish(pres, cur, strict)
            pres.sections[cur.name] = cur
            cur = None
            continue
        if cur is None:
            raise ParseError("unknown keyword %r" % kw, lineno, 1)
        _body_line(pres, cur, kw, toks, line, lineno, col)
    if cur is not None:
        raise ParseError("section %r not closed with 'end'" % cur.name, cur.line, 1)
    return pres


def _header(pres, toks, lineno, col):
    kind = toks[0]
    nargs = HEADERS[kind]
    if len(toks) < 2 or not _name_re.match(toks[1]):
        raise ParseError("%s needs a name" % kind, lineno, col(1))
    name = toks[1]
    if name in pres.sections:
        raise ParseError("section %r declared twice" % name, lineno, col(1))
    args = toks[2:]
    if kind in ("module", "bimodule"):
        if not args or args[0] != "over":
            raise ParseError("expected '%s %s over ...'" % (kind, name), lineno, col(2))
        args = args[1:]
    if len(args) != nargs - (1 if kind in ("module", "bimodule") else 0):
        raise ParseError("wrong number of arguments for %s" % kind, lineno, col(2))
    want = {"module": ["algebra"], "bimodule": ["algebra", "algebra"],
            "chainmap": ["complex", "complex"], "action": ["algebra", "complex"]}.get(kind, [])
    for i, (a, k) in enumerate(zip(args, want)):
        sec = pres.sections.get(a)
        if sec is None or sec.kind != k:
            raise ParseError("undeclared %s %r" % (k, a), lineno, col(len(toks) - len(args) + i))
    return Section(kind, name, args, lineno)


def _body_line(pres, cur, kw, toks, line, lineno, col):
    if kw == "gen":
        if cur.kind in ("chainmap", "action"):
            raise ParseError("'gen' not allowed in %s" % cur.kind, lineno, 1)
        if len(toks) != 3 or not re.match(r"^-?\d+$", toks[2]):
            raise ParseError("expected 'gen NAME DEGREE'", lineno, col(1))
        nm = toks[1]
        if not _name_re.match(nm) or nm == "0":
            raise ParseError("bad basis name %r" % nm, lineno, col(1))
        if nm in cur.gens:
            raise ParseError("basis element %r declared twice" % nm, lineno, col(1))
        if cur.entries or cur.unit is not None:
            raise ParseError("'gen' lines must come first", lineno, 1)
        cur.gens[nm] = int(toks[2])
        return
    if kw == "unit":
        if cur.kind != "algebra":
            raise ParseError("'unit' only in algebra sections", lineno, 1)
        if cur.unit is not None:
            raise ParseError("unit declared twice", lineno, 1)
        rhs = line.split(None, 1)[1] if len(toks) > 1 else ""
        cur.unit = _linear(pres, rhs, cur.gens, lineno, line.index("unit") + 5)
        for x in cur.unit:
            if cur.gens[x] != 0:
                raise ParseError("degree mismatch: unit involves %r of degree %d"
                                 % (x, cur.gens[x]), lineno, 1)
        return
    if kw == "generators":
        if cur.kind != "algebra":
            raise ParseError("'generators' only in algebra sections", lineno, 1)
        for i, g in enumerate(toks[1:], 1):
            if g not in cur.gens:
                raise ParseError("undeclared name %r" % g, lineno, col(i))
        cur.generators = toks[1:]
        return
    if kw not in ENTRIES:
        raise ParseError("unknown keyword %r" % kw, lineno, 1)
    nl, kinds = ENTRIES[kw]
    if cur.kind not in kinds:
        raise ParseError("'%s' not allowed in %s sections" % (kw, cur.kind), lineno, 1)
    if "=" not in line:
        raise ParseError("expected '='", lineno, len(line) + 1)
    lhs_text, rhs = line.split("=", 1)
    lhs = lhs_text.split()[1:]
    if len(lhs) != nl:
        raise ParseError("'%s' takes %d name(s) before '='" % (kw, nl), lineno, col(1))
    spaces = _lhs_spaces(pres, cur, kw)
    degs = []
    for i, (nm, sp) in enumerate(zip(lhs, spaces)):
        if nm not in sp:
            raise ParseError("undeclared name %r" % nm, lineno, col(i + 1))
        degs.append(sp[nm])
    target = _rhs_space(pres, cur, kw)
    rcol = line.index("=") + 2
    vec = _linear(pres, rhs, target, lineno, rcol)
    if kw == "aug":
        want = None
        if degs[0] != 0 and vec:
            raise ParseError("degree mismatch: augmentation nonzero on %r of degree %d"
                             % (lhs[0], degs[0]), lineno, rcol)
    else:
        want = sum(degs) + (1 if kw == "d" else 0)
    if want is not None:
        for x in vec:
            if target[x] != want:
                raise ParseError("degree mismatch: %r has degree %d, expected %d"
                                 % (x, target[x], want), lineno, rcol)
    key = (kw, tuple(lhs))
    if key in cur.entries:
        raise ParseError("duplicate entry %s %s (first on line %d)"
                         % (kw, " ".join(lhs), cur.where[key]), lineno, 1)
    cur.entries[key] = vec
    cur.where[key] = lineno


def _lhs_spaces(pres, cur, kw):
    own = cur.gens
    if kw in ("mul",):
        return [own, own]
    if kw in ("d", "aug"):
        return [own]
    if kw == "act" and cur.kind == "module":
        return [own, pres[cur.args[0]].gens]
    if kw == "act":
        return [pres[cur.args[0]].gens, pres[cur.args[1]].gens]
    if kw == "lact":
        return [pres[cur.args[0]].gens, own]
    if kw == "ract":
        return [own, pres[cur.args[1]].gens]
    if kw == "map":
        return [pres[cur.args[0]].gens]
    raise AssertionError(kw)


def _rhs_space(pres, cur, kw):
    if kw == "aug":
        return {"1": 0}
    if kw == "map":
        return pres[cur.args[1]].gens
    if kw == "act" and cur.kind == "action":
        return pres[cur.args[1]].gens
    return cur.gens


def _linear(pres, text, space, lineno, col0):
    """Parse 'c1*x1 + c2*x2 - ...' into a dict; '0' is zero.  For aug, a bare number."""
    s = text.strip()
    f = pres.field
    if s == "0" or (space == {"1": 0} and re.match(r"^-?\d+(/\d+)?$", s)):
        if s == "0":
            return {}
        try:
            c = f.parse(s)
        except ZeroDivisionError:
            raise ParseError("field mismatch: %s is not defined in %s" % (s, f.name), lineno, col0)
        return {"1": c} if c else {}
    if not s:
        raise ParseError("empty right-hand side", lineno, col0)
    out = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _term_re.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group(1)):
            raise ParseError("syntax error in linear combination near %r" % s[pos:pos + 10],
                             lineno, col0 + pos)
        sgn, coef, nm = m.groups()
        if nm not in space:
            raise ParseError("undeclared name %r" % nm, lineno, col0 + m.start(3))
        try:
            c = f.parse(coef) if coef else 1
        except ZeroDivisionError:
            raise ParseError("field mismatch: %s is not defined in %s" % (coef, f.name),
                             lineno, col0 + m.start(2))
        if sgn == "-":
            c = -c
        v = out.get(nm, 0) + c
        v = v % f.p if f.p else v
        if v:
            out[nm] = f(v) if not f.p else v
        else:
            out.pop(nm, None)
        pos = m.end()
        first = False
    return out


def _finish(pres, cur, strict):
    if cur.kind == "algebra" and cur.unit is None:
        raise ParseError("algebra %r has no unit" % cur.name, cur.line, 1)
    if not strict:
        return
    need = []
    g = list(cur.gens)
    if cur.kind == "algebra":
        need = [("mul", (x, y)) for x in g for y in g] + [("d", (x,)) for x in g] \
            + [("aug", (x,)) for x in g]
    elif cur.kind == "module":
        need = [("act", (m, a)) for m in g for a in pres[cur.args[0]].gens] + [("d", (m,)) for m in g]
    elif cur.kind == "bimodule":
        need = [("lact", (a, m)) for a in pres[cur.args[0]].gens for m in g] \
            + [("ract", (m, b)) for m in g for b in pres[cur.args[1]].gens] + [("d", (m,)) for m in g]
    elif cur.kind == "complex":
        need = [("d", (x,)) for x in g]
    elif cur.kind == "chainmap":
        need = [("map", (x,)) for x in pres[cur.args[0]].gens]
    elif cur.kind == "action":
        need = [("act", (a, x)) for a in pres[cur.args[0]].gens for x in pres[cur.args[1]].gens]
    for key in need:
        if key not in cur.entries:
            raise ParseError("strict mode: missing entry '%s %s' in %s %r"
                             % (key[0], " ".join(key[1]), cur.kind, cur.name), cur.line, 1)


def parse_file(path, field=None, strict=False):
    with open(path) as fh:
        return parse(fh.read(), field, strict)


# -- emitting ------------------------------------------------------------------------------------

def _fmt_vec(field, v):
    if not v:
        return "0"
    parts = []
    for x, c in v.items():
        s = field.fmt(c)
        neg = s.startswith("-")
        s = s.lstrip("-")
        term = x if s == "1" else "%s*%s" % (s, x)
        if not parts:
            parts.append(("-" if neg else "") + term)
        else:
            parts.append(("- " if neg else "+ ") + term)
    return " ".join(parts)


def emit(pres):
    f = pres.field
    out = ["field %s" % ("Q" if not f.p else "Fp:%d" % f.p)]
    for s in pres.sections.values():
        head = [s.kind, s.name]
        if s.kind in ("module", "bimodule"):
            head.append("over")
        out.append(" ".join(head + s.args))
        for x, n in s.gens.items():
            out.append("  gen %s %d" % (x, n))
        if s.unit is not None:
            out.append("  unit %s" % _fmt_vec(f, s.unit))
        if s.generators is not None:
            out.append("  generators %s" % " ".join(s.generators))
        for (kw, lhs), v in s.entries.items():
            rhs = f.fmt(v.get("1", 0)) if kw == "aug" else _fmt_vec(f, v)
            out.append("  %s %s = %s" % (kw, " ".join(lhs), rhs))
        out.append("end")
    return "\n".join(out) + "\n"


def presentation_of(A, aug=None, name=None):
    """A Presentation for an algebra whose basis names are format-safe strings."""
    pres = Presentation(A.field)
    nm = name or re.sub(r"[^A-Za-z0-9_]", "_", A.name or "A")
    s = Section("algebra", nm, [], 0)
    for x in A.basis:
        if not isinstance(x, str) or not _name_re.match(x) or x == "0":
            raise ValueError("basis name %r cannot be written" % (x,))
        s.gens[x] = A.degree[x]
    s.unit = dict(A.unit)
    if A.generators is not None:
        s.generators = list(A.generators)
    for x in A.basis:
        for y in A.basis:
            v = A.mul(x, y)
            if v:
                s.entries[("mul", (x, y))] = dict(v)
    for x in A.basis:
        v = A.d(x)
        if v:
            s.entries[("d", (x,))] = dict(v)
    if aug is not None:
        for x, c in aug.eps.items():
            s.entries[("aug", (x,))] = {"1": c}
    pres.sections[nm] = s
    return pres
