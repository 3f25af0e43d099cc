"""The ``dgres`` command line front-end."""

import argparse
import json
import sys

from .algebra import AlgebraError, validate
from .bar import (BarCoalgebra, check_maurer_cartan, dual_opposite_comparison, koszul_dual,
                  resolution_report, tensor_algebra_comparison, universal_twisting_cochain)
from .checks import Checks
from .field import FieldMismatchError, field_from_string
from .graded import DegreeWindow, DifferentialError, WindowError, check_chain_map, cohomology
from .module import (check_zigzag, covering_window, endomorphism_algebra, validate_bimodule,
                     validate_module)
from .presentation import ParseError, parse_file
from .smooth import (FreeResolutionCertificate, auto_filtration, glue, glued_diagonal_cone,
                     glued_product_check, koszul_dual_resolution, tor_obstruction,
                     trivial_resolution, verify_filtration_certificate, verify_free_resolution)

COMMANDS = ["validate", "cohomology", "bar", "koszul-dual", "mc-check", "resolve", "tor", "glue",
            "diagonal-cone", "smooth-cert", "zigzag"]

DEFAULT_WINDOW = "-4:1"


class InputError(Exception):
    pass


class Report:
    def __init__(self, command, files, field, window=None, argv=None):
        self.command = command
        self.argv = list(argv) if argv is not None else [command] + list(files)
        self.files = files
        self.field = field
        self.window = window
        self.checks = Checks()
        self.tables = {}
        self.info = {}
        self.verdict = None

    @property
    def ok(self):
        return self.checks.ok

    def as_dict(self):
        return {
            "command": self.command,
            "argv": self.argv,
            "files": self.files,
            "field": self.field.name,
            "window": None if self.window is None else [self.window.lo, self.window.hi],
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
            "tables": {k: _jsonable(v) for k, v in self.tables.items()},
            "info": {k: _jsonable(v) for k, v in self.info.items()},
            "verdict": self.verdict,
            "ok": self.ok,
        }

    def text(self):
        out = ["dgres %s" % " ".join(self.argv),
               "field: %s" % self.field.name]
        if self.window is not None:
            out.append("window: [%d,%d]" % (self.window.lo, self.window.hi))
        for k, v in self.tables.items():
            out.append("%s: %s" % (k, _table_str(v)))
        for k, v in self.info.items():
            out.append("%s: %s" % (k, _table_str(v)))
        out.extend(self.checks.lines())
        out.append("verdict: %s" % self.verdict)
        return "\n".join(out) + "\n"


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    return str(v)


def _table_str(v):
    if isinstance(v, dict):
        return ", ".join("%s:%s" % (k, _table_str(x)) for k, x in v.items()) or "(empty)"
    if isinstance(v, (list, tuple)):
        return ",".join(_table_str(x) for x in v)
    return str(v)


def _verdict(report, good):
    if report.verdict is None:
        report.verdict = good if report.ok else "failures: " + "; ".join(
            c.name for c in report.checks.failures())


# -- commands ---------------------------------------------------------------------------------

def cmd_validate(pres, opts, rep):
    for s in pres.sections.values():
        try:
            if s.kind == "algebra":
                A = pres.algebra(s.name, opts.strict)
                r = validate(A, exhaustive=True)
                rep.checks.add("algebra %s" % s.name, r.ok, _kinds(r) or "dims %s" % A.dims())
                aug = pres.augmentation(s.name, opts.strict)
                if [k for k in s.entries if k[0] == "aug"]:
                    r = aug.check()
                    rep.checks.add("augmentation of %s" % s.name, r.ok, _kinds(r))
            elif s.kind == "module":
                r = validate_module(pres.module(s.name, opts.strict), exhaustive=True)
                rep.checks.add("module %s" % s.name, r.ok, _kinds(r))
            elif s.kind == "bimodule":
                r = validate_bimodule(pres.bimodule(s.name, opts.strict), exhaustive=True)
                rep.checks.add("bimodule %s" % s.name, r.ok, _kinds(r))
            elif s.kind == "complex":
                C = pres.complex(s.name)
                rep.checks.add("complex %s" % s.name, True, "dims %s" % C.dims())
            elif s.kind == "chainmap":
                f = pres.chainmap(s.name)
                check_chain_map(f)
                rep.checks.add("chain map %s" % s.name, True)
            elif s.kind == "action":
                r = pres.action(s.name, opts.strict).check(unital=True)
                rep.checks.add("action %s" % s.name, r.ok, _kinds(r))
        except (DifferentialError, AlgebraError, ValueError) as e:
            rep.checks.add("%s %s" % (s.kind, s.name), False, str(e))
    _verdict(rep, "valid")


def _kinds(r):
    return "" if r.ok else "violations: %s" % ", ".join(sorted(r.kinds()))


def cmd_cohomology(pres, opts, rep):
    for s in pres.sections.values():
        if s.kind == "algebra":
            C = pres.algebra(s.name, opts.strict).complex()
        elif s.kind == "complex":
            C = pres.complex(s.name)
        else:
            continue
        w = rep.window or covering_window(C)
        H = cohomology(C, w)
        rep.tables["H(%s)" % s.name] = {n: H.dims.get(n, 0) for n in w.interior()
                                        if H.dims.get(n, 0)}
        rep.checks.add("d^2 = 0 on %s" % s.name, True, "dims %s" % C.dims())
    _verdict(rep, "computed")


def _aug(pres, opts):
    return pres.augmentation(opts.algebra, opts.strict)


def cmd_bar(pres, opts, rep):
    aug = _aug(pres, opts)
    w = rep.window
    bar = BarCoalgebra(aug, w)
    rep.tables["BA dims"] = bar.dims()
    rep.checks.add("d^2 = 0 on BA", True)
    H = cohomology(bar.complex, w)
    rep.tables["H(BA)"] = {n: H.dims.get(n, 0) for n in w.interior() if n in bar.words}
    _verdict(rep, "computed")


def cmd_koszul_dual(pres, opts, rep):
    aug = _aug(pres, opts)
    N = opts.max_degree
    dual = koszul_dual(aug, N)
    dims = dual.dims()
    rep.tables["dual dims"] = [dims.get(n, 0) for n in range(N + 1)]
    r = validate(dual)
    rep.checks.add("Koszul dual is a DG algebra", r.ok, _kinds(r))
    zero_d = all(not dual.d(x) for x in dual.basis)
    rep.info["zero differential"] = "yes" if zero_d else "no"
    try:
        trep, _ = tensor_algebra_comparison(dual)
        rep.info["isomorphic to T(V*[-1])"] = "yes" if trep.ok else "no"
    except (ValueError, ArithmeticError):
        rep.info["isomorphic to T(V*[-1])"] = "no"
    orep, oc = dual_opposite_comparison(aug, N)
    rep.checks.extend(oc)
    rep.checks.add("dual of opposite = opposite of dual via sigma", orep.ok, _kinds(orep))
    _verdict(rep, "computed")


def cmd_mc_check(pres, opts, rep):
    aug = _aug(pres, opts)
    bar = BarCoalgebra(aug, rep.window)
    mc = check_maurer_cartan(universal_twisting_cochain(bar), rep.window)
    rep.checks.add("Maurer-Cartan for τ", mc.ok,
                   "%d words" % mc.checked if mc.ok else "fails at %r" % (mc.word,))
    _verdict(rep, "Maurer-Cartan equation holds")


def cmd_resolve(pres, opts, rep):
    r = resolution_report(_aug(pres, opts), rep.window)
    rep.checks = r.checks
    rep.tables.update(r.tables)
    rep.verdict = r.verdict


def cmd_tor(pres, opts, rep):
    t = tor_obstruction(_aug(pres, opts), opts.max_n)
    rep.checks.add("obstruction applicable", t.applicable, t.verdict if not t.applicable else "")
    if t.applicable:
        rep.tables["Tor dims"] = t.dims
    rep.verdict = t.verdict


def _glued(pres, opts):
    s = pres.first("bimodule")
    N = pres.bimodule(s.name, opts.strict)
    return glue(N.left, N.right, N)


def cmd_glue(pres, opts, rep):
    ga = _glued(pres, opts)
    C = ga.C
    r = validate(C, exhaustive=True)
    rep.tables["C dims"] = C.dims()
    rep.info["C dim"] = C.dim
    rep.checks.add("glued algebra is a DG algebra", r.ok, _kinds(r))
    if not ga.N.basis:
        p = glued_product_check(ga)
        rep.checks.add("glue(A, B, 0) ≅ A×B", p.ok, _kinds(p))
    rep.info["products"] = {"%s·%s" % (_n(x), _n(y)): _vec_str(C.field, v)
                            for (x, y), v in C.table().items()}
    _verdict(rep, "glued algebra valid")


def _n(x):
    return "%s:%s" % x if isinstance(x, tuple) else str(x)


def _vec_str(field, v):
    return " + ".join("%s*%s" % (field.fmt(c), _n(x)) for x, c in v.items())


def cmd_diagonal_cone(pres, opts, rep):
    ga = _glued(pres, opts)
    c = glued_diagonal_cone(ga, rep.window)
    rep.checks.extend(c)
    inputs = _gluing_inputs_certified(ga)
    rep.info["smoothness inputs"] = "; ".join(c.line() for c in inputs)
    if c.ok and inputs.ok:
        rep.info["conclusion"] = ("smooth by gluing: A, B certified smooth, N certified perfect, "
                                  "cone quasi-isomorphism verified")
    else:
        rep.info["conclusion"] = "smoothness of the glued algebra not established"
    _verdict(rep, "diagonal is the cone of LInd(N) -> LInd(A) ⊕ LInd(B)")


def _gluing_inputs_certified(ga):
    """Certificates for A and B smooth and N perfect, available when A = B = k."""
    out = Checks()
    for label, X in (("A", ga.A), ("B", ga.B)):
        if X.dim == 1:
            r, _ = verify_free_resolution(trivial_resolution(X))
            out.add("%s smooth" % label, r.ok, "free resolution")
        else:
            out.add("%s smooth" % label, False, "no certificate available")
    N = ga.N
    if ga.A.dim == 1 and ga.B.dim == 1:
        ua, ub = next(iter(ga.A.unit)), next(iter(ga.B.unit))
        gens = [(n, N.degree[n], ua, ub) for n in N.basis]
        dgen = {n: {(ua, m, ub): c for m, c in N.d(n).items()} for n in N.basis}
        cert = FreeResolutionCertificate(N, gens, dgen, {n: {n: 1} for n in N.basis})
        r, _ = verify_free_resolution(cert)
        out.add("N perfect", r.ok, "free of rank %d" % len(N.basis))
    else:
        out.add("N perfect", False, "no certificate available")
    return out


def cmd_smooth_cert(pres, opts, rep):
    aug = _aug(pres, opts)
    try:
        cert = auto_filtration(aug, rep.window)
    except ValueError as e:
        rep.checks.add("filtration", False, str(e))
        _verdict(rep, "")
        return
    fc = verify_filtration_certificate(cert)
    rep.tables["filtration steps"] = len(cert.steps) - 1
    rep.tables["generators per step"] = [len(g) for g in cert.generators]
    rep.checks.extend(fc, "filtration: ")
    r, _ = verify_free_resolution(koszul_dual_resolution(cert))
    rep.checks.extend(r, "Koszul dual diagonal: ")
    _verdict(rep, "perfect (certified); smooth (certified up to window)")


def cmd_zigzag(pres, opts, rep):
    f = pres.chainmap()
    X = f.source
    if pres.of_kind("action"):
        phi = pres.action(None, opts.strict)
    else:
        from .algebra import DGAlgebraHom
        E = endomorphism_algebra(X)
        phi = DGAlgebraHom(E, endomorphism_algebra(X), {e: {e: 1} for e in E.basis})
    checks, C = check_zigzag(f, phi)
    rep.checks.extend(checks)
    rep.tables["zigzag dims"] = C.dims()
    _verdict(rep, "both projections are quasi-isomorphisms")


HANDLERS = {
    "validate": cmd_validate, "cohomology": cmd_cohomology, "bar": cmd_bar,
    "koszul-dual": cmd_koszul_dual, "mc-check": cmd_mc_check, "resolve": cmd_resolve,
    "tor": cmd_tor, "glue": cmd_glue, "diagonal-cone": cmd_diagonal_cone,
    "smooth-cert": cmd_smooth_cert, "zigzag": cmd_zigzag,
}
NEEDS_WINDOW = {"bar", "mc-check", "resolve", "smooth-cert"}


# -- entry point -----------------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="dgres", description="Computations with small DG algebras: "
                                 "bar constructions, Koszul duals, resolutions and smoothness.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("files", nargs="+")
    ap.add_argument("--window", help="degree window LO:HI (default %s)" % DEFAULT_WINDOW)
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--field", help="Q or Fp:<p>")
    ap.add_argument("--algebra", help="which algebra section to use")
    ap.add_argument("--strict", action="store_true")
    ap.add_argument("--out")
    ap.add_argument("--json", action="store_true")
    return ap


def _fix_negative_values(argv):
    """Let '--window -6:4' through argparse, which would read -6:4 as an option."""
    out = []
    it = iter(argv)
    for a in it:
        if a in ("--window", "--max-degree", "--max-n"):
            nxt = next(it, None)
            out.append("%s=%s" % (a, nxt) if nxt is not None else a)
        else:
            out.append(a)
    return out


def run(argv):
    """Returns (exit code, report or None, error message or None)."""
    ap = build_parser()
    opts = ap.parse_args(_fix_negative_values(argv))
    try:
        field = field_from_string(opts.field) if opts.field else None
    except ValueError as e:
        return 2, None, str(e)
    try:
        w = DegreeWindow.parse(opts.window) if opts.window else None
    except ValueError as e:
        return 2, None, "bad window %r: %s" % (opts.window, e)
    if opts.command in NEEDS_WINDOW and w is None:
        w = DegreeWindow.parse(DEFAULT_WINDOW)
    if opts.max_degree < 0 or opts.max_n < 0:
        return 2, None, "--max-degree and --max-n must be nonnegative"
    if w is not None and w.lo > 0:
        return 2, None, "window must contain degree 0 or lie below it"
    if opts.command == "resolve" and w.hi < 1:
        return 2, None, "resolve needs a window with hi >= 1"
    try:
        pres = None
        for path in opts.files:
            p = parse_file(path, field, opts.strict)
            if pres is None:
                pres = p
            else:
                if p.field != pres.field:
                    raise FieldMismatchError("field mismatch between input files")
                for name, s in p.sections.items():
                    if name in pres.sections:
                        raise InputError("section %r defined in two files" % name)
                    pres.sections[name] = s
        rep = Report(opts.command, opts.files, pres.field, w, argv)
        HANDLERS[opts.command](pres, opts, rep)
    except (ParseError, FieldMismatchError, InputError, OSError) as e:
        return 2, None, str(e)
    except (WindowError, AlgebraError) as e:
        return 2, None, str(e)
    return (0 if rep.ok else 1), rep, None


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    code, rep, err = run(argv)
    if err is not None:
        print("dgres: error: %s" % err, file=sys.stderr)
        return code
    opts = build_parser().parse_args(_fix_negative_values(argv))
    text = json.dumps(rep.as_dict(), indent=2, ensure_ascii=False) + "\n" if opts.json \
        else rep.text()
    sys.stdout.write(text)
    if opts.out:
        with open(opts.out, "w") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
