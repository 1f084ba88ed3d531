"""Command line front end: ``hopfgalois <command> FILE.hgx [options]``.

Exit codes: 0 every check passed, 1 a mathematical check failed (the report
carries the witness), 2 usage or parse error, 3 a search cap was exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import catalog
from .algebra import (DEFAULT_CAP, AxiomReport, base_algebra, check_algebra, check_hopf_axioms,
                      is_algebra_map)
from .cleft import extract_sigma, find_algebra_integral, find_total_integral, omega, omega_commutation_report, \
    phi_iso, transported_integral
from .cohomology import NONTRIVIAL, TRIVIAL, cocycle_classes_equal, h1, is_two_cocycle, \
    two_cocycle_trivial
from .errors import CapExceeded, HopfGaloisError, NotGalois, ParseError, UnsupportedField
from .galois import gamma_identities_report, galois_check, mu_action
from .hgx import emit_hgx, parse_hgx
from .picard import pic_galois_object, twist_action_lines, twist_module
from .report import FAIL, PASS, Section, UNKNOWN as UNKNOWN_STATUS, axiom_lines, emit_report

EXIT_OK, EXIT_MATH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Run:
    """Collects sections and the worst exit code seen so far."""

    def __init__(self, args):
        self.args = args
        self.sections = []
        self.code = EXIT_OK

    def bump(self, code):
        # cap exhaustion outranks a plain failure, which outranks success
        order = {EXIT_OK: 0, EXIT_MATH: 1, EXIT_CAP: 2}
        if order[code] > order[self.code]:
            self.code = code

    def add(self, section: Section):
        self.sections.append(section)
        if section.status == FAIL:
            self.bump(EXIT_MATH)
        elif section.status == UNKNOWN_STATUS:
            self.bump(EXIT_CAP)

    def guarded(self, title, fn):
        """Run ``fn(section)``; library errors become FAIL/UNKNOWN sections."""
        sec = Section(title)
        try:
            fn(sec)
        except CapExceeded as exc:
            sec.status = UNKNOWN_STATUS
            sec.add(f"cap exceeded: {exc}")
        except UnsupportedField as exc:
            sec.status = UNKNOWN_STATUS
            sec.add(f"unsupported: {exc}")
        except NotGalois as exc:
            sec.status = FAIL
            sec.add(f"FAIL not Galois: {exc}")
            if exc.witness is not None:
                sec.add(f"witness: {exc.witness}")
        except HopfGaloisError as exc:
            sec.status = FAIL
            sec.add(f"FAIL {exc}")
            witness = getattr(exc, "witness", None)
            if witness is not None:
                sec.add(f"witness: {witness}")
        self.add(sec)
        return sec


# --- helpers ---------------------------------------------------------------------------

def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _targets(doc, kinds, args):
    if args.object:
        if args.object not in doc.objects:
            raise UsageError(f"no object named {args.object!r}")
        if doc.kinds[args.object] not in kinds:
            raise UsageError(f"{args.object!r} is a {doc.kinds[args.object]}, expected {' or '.join(kinds)}")
        names = [args.object]
    else:
        names = [n for n in doc.objects if doc.kinds[n] in kinds]
    if getattr(args, "hopf", None):
        names = [n for n in names if getattr(doc.objects[n], "hopf", None) is not None
                 and doc.objects[n].hopf.name == args.hopf]
    if not names:
        raise UsageError(f"no {' or '.join(kinds)} object to work on")
    return names


def _split(text):
    return [p for p in text.split("; ") if p]


COMODULE_KINDS = ("comodule-algebra", "action")


# --- commands ----------------------------------------------------------------------------

def cmd_verify(run, doc):
    args = run.args
    kinds = ("hopf", "algebra", "comodule-algebra", "action", "character", "cocycle", "module")
    for name in _targets(doc, kinds, args):
        obj, kind = doc.objects[name], doc.kinds[name]

        def body(sec, obj=obj, kind=kind):
            if kind == "hopf":
                rep = check_hopf_axioms(obj)
            elif kind == "algebra":
                rep = AxiomReport()
                check_algebra(obj, rep)
            elif kind in COMODULE_KINDS:
                rep = obj.check()
            elif kind == "character":
                rep = AxiomReport()
                F = obj.hopf.field
                ok = is_algebra_map(obj.hopf, base_algebra(F), obj.values[:, None])
                rep.add_result("character is an algebra map", ok)
            elif kind == "cocycle":
                rep = AxiomReport()
                rep.add_result("normalized", obj.is_normal())
                v = is_two_cocycle(obj.B, obj.omega, obj, obj.hopf)
                rep.add_result("2-cocycle condition", bool(v), v.witness)
            else:
                rep = obj.check()
            sec.status = PASS if rep.passed else FAIL
            sec.lines.extend(axiom_lines(rep))
            sec.data["axioms"] = {r.name: bool(r.passed) for r in rep.results}

        run.guarded(f"verify {kind} {name}", body)


def _certificate_lines(cert):
    A, H = cert.A, cert.hopf
    lines = [f"dim A = {A.dim}", f"dim H = {H.dim}", f"dim B = {cert.coinvariants.dim}",
             "galois object: " + ("yes" if cert.is_galois_object else "no")]
    for h, lab in enumerate(H.labels):
        lines.append(f"gamma({lab}) = {cert.gamma_text(h)}")
    return lines


def cmd_galois(run, doc):
    for name in _targets(doc, COMODULE_KINDS, run.args):
        A = doc.objects[name]

        def body(sec, A=A):
            cert = galois_check(A)
            sec.lines.extend(_certificate_lines(cert))
            rep = gamma_identities_report(cert)
            sec.lines.extend(axiom_lines(rep))
            sec.status = PASS if rep.passed else FAIL
            sec.data.update({"dim_A": A.dim, "dim_B": cert.coinvariants.dim, "dim_H": A.hopf.dim,
                             "identities": {r.name: bool(r.passed) for r in rep.results}})

        run.guarded(f"galois {name}", body)


def cmd_cleft(run, doc):
    cap = run.args.cap
    for name in _targets(doc, COMODULE_KINDS, run.args):
        A = doc.objects[name]

        def body(sec, A=A):
            ti = find_total_integral(A, cap)
            if ti is None:
                sec.status = FAIL
                sec.add("FAIL no total integral exists (finite search exhausted)")
                return
            ti = ti.normalized()
            sec.add("total integral:")
            sec.lines.extend(f"  t: {x}" for x in _split(ti.describe()))
            Bl = ti.B.algebra
            om = omega(ti)
            H = A.hopf
            for h, hl in enumerate(H.labels):
                for j, jl in enumerate(Bl.labels):
                    sec.add(f"omega({hl} . {jl}) = {Bl.format(om[h, j])}")
            sig = extract_sigma(ti)
            sec.lines.extend(_split(sig.describe()))
            iso = phi_iso(ti)
            cp = iso.crossed_product
            rep = AxiomReport(list(cp.report.results) + list(iso.report.results))
            comm = omega_commutation_report(ti, om)
            if comm is not None:
                rep.results.extend(comm.results)
            else:
                sec.add("omega checks not applicable: H is not cocommutative or B is not commutative")
            back = extract_sigma(transported_integral(iso, ti))
            rep.add_result("sigma recovered from the crossed product", back == sig)
            sec.lines.extend(axiom_lines(rep))
            sec.status = PASS if rep.passed else FAIL
            sec.data["crossed_product_dim"] = cp.dim

        run.guarded(f"cleft {name}", body)


def _h1_lines(sec, res):
    sec.add(f"order {res.order}")
    for i, v in enumerate(res.representatives):
        sec.add(f"class {i}: {v.describe()}")
    sec.data["order"] = res.order


def _sigma_of(doc, name, cap):
    obj, kind = doc.objects[name], doc.kinds[name]
    if kind == "cocycle":
        v = is_two_cocycle(obj.B, obj.omega, obj, obj.hopf)
        if not v:
            raise HopfGaloisError(f"{v.note}; witness {v.witness}")
        return obj, None
    ti = find_total_integral(obj, cap)
    if ti is None:
        raise HopfGaloisError("not cleft: no total integral exists (finite search exhausted)")
    return extract_sigma(ti.normalized()), obj


def cmd_cohomology(run, doc):
    args = run.args
    cap = args.cap
    names = _targets(doc, COMODULE_KINDS + ("cocycle",), args)
    if args.degree == 1:
        for name in names:
            obj, kind = doc.objects[name], doc.kinds[name]

            def body(sec, obj=obj, kind=kind):
                if kind == "cocycle":
                    sec.add(f"coefficients: {obj.B.name or 'B'} with the given action")
                    res = h1(obj.hopf, obj.B, obj.omega, cap)
                else:
                    cert = galois_check(obj)
                    mu = mu_action(cert)
                    sec.add("coefficients: centre of the coinvariants with the Miyashita-Ulbrich action")
                    sec.add("action trivial: " + ("yes" if mu.is_trivial else "no"))
                    res = h1(obj.hopf, mu.center_algebra, mu.act, cap)
                _h1_lines(sec, res)
                if kind != "cocycle":
                    sec.add("base point: " + _base_point(obj, cap))


            run.guarded(f"cohomology degree 1 {name}", body)
        return
    found = []
    for name in names:
        def body(sec, name=name):
            sig, ctx = _sigma_of(doc, name, cap)
            sec.lines.extend(_split(sig.describe()))
            cls = two_cocycle_trivial(sig, ctx, cap)
            sec.add(f"class: {cls.status}")
            if cls.status == TRIVIAL:
                sec.add(f"witness: colinear algebra map {cls.witness.describe()}")
            elif cls.status == NONTRIVIAL:
                sec.add(f"certificate: {cls.certificate}")
            else:
                sec.status = UNKNOWN_STATUS
                sec.add(f"undecided: {cls.certificate}")
            sec.data["class"] = cls.status
            found.append((name, sig))

        run.guarded(f"cohomology degree 2 {name}", body)
    pairs = [(a, b) for i, a in enumerate(found) for b in found[i + 1:]
             if a[1].hopf is b[1].hopf or _same(a[1], b[1])]
    if pairs:
        sec = Section("cohomology class comparisons")
        for (na, sa), (nb, sb) in pairs:
            try:
                v = cocycle_classes_equal(sa, sb, cap)
            except HopfGaloisError as exc:
                sec.add(f"{na} vs {nb}: not comparable ({exc})")
                continue
            answer = {True: "equal", False: "different", None: "unknown"}[v.value]
            if v.value is None:
                sec.status = UNKNOWN_STATUS
            sec.add(f"{na} vs {nb}: {answer}")
        run.add(sec)


def _base_point(A, cap):
    """Whether an algebra integral exists, so that H^1 parametrises all of them."""
    try:
        found = find_algebra_integral(A, cap).found
    except CapExceeded:
        return "undecided (H^1 not matched against algebra integrals)"
    if found:
        return "algebra integral found (classes of algebra integrals correspond to H^1)"
    return "no algebra integral (H^1 not matched against algebra integrals)"


def _same(s1, s2):
    F = s1.field
    try:
        return (s1.hopf.dim == s2.hopf.dim and s1.B.dim == s2.B.dim
                and F.equal(s1.hopf.comult, s2.hopf.comult) and F.equal(s1.hopf.mult, s2.hopf.mult)
                and F.equal(s1.B.mult, s2.B.mult) and F.equal(s1.omega, s2.omega))
    except HopfGaloisError:
        return False


def cmd_picard(run, doc):
    cap = run.args.cap
    for name in _targets(doc, COMODULE_KINDS, run.args):
        A = doc.objects[name]

        def body(sec, A=A):
            cert = galois_check(A)
            pic = pic_galois_object(A, cert, cap)
            sec.add(f"order {pic.order}")
            sec.add(f"identity {pic.identity}")
            for i in range(pic.order):
                sec.add(f"element {i}: {pic.describe(i)}")
            sec.add("table:")
            for i, row in enumerate(pic.table):
                sec.add(f"  {i}: " + " ".join(str(x) for x in row))
            for i in range(pic.order):
                P = twist_module(A, pic.elements[i])
                for line in twist_action_lines(A, P):
                    sec.add(f"twist {i}: {line}")
            rep = pic.check()
            sec.lines.extend(axiom_lines(rep))
            sec.status = PASS if rep.passed else FAIL
            sec.data.update({"order": pic.order, "identity": pic.identity, "table": pic.table})

        run.guarded(f"picard {name}", body)


COMMANDS = {"verify": cmd_verify, "galois": cmd_galois, "cleft": cmd_cleft,
            "cohomology": cmd_cohomology, "picard": cmd_picard}


def cmd_builtin(args) -> bytes:
    if args.which == "trig":
        H, A, _ = catalog.builtin_trig()
        objs = [A.hopf, A]
        comment = "fourth root of 2 over the dual of the trigonometric coalgebra"
    else:
        F = catalog.as_field(None, args.p, args.d)
        a = F.parse(args.a)
        if args.which == "artin-schreier":
            H, A, _ = catalog.builtin_artin_schreier(args.p, args.d, a)
            comment = f"Artin-Schreier object y^q - y = {args.a} over GF({F.order})"
        else:
            if args.base == "matrix":
                B0 = catalog.matrix_algebra(F, 2)
            else:
                B0 = catalog.product_algebra(F, 2)
            H, A, _ = catalog.builtin_tensor_extension(B0, args.p, args.d, a)
            comment = f"{B0.name} tensor the Artin-Schreier object with a = {args.a} over GF({F.order})"
        objs = [H, A]
    return emit_hgx(objs, comment=comment).encode("utf-8")


# --- argument parsing ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="search/enumeration cap")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", help="write the report here instead of standard output")
    parser = _Parser(prog="hopfgalois", description="Exact Hopf-Galois computations on HGX files.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for cmd in COMMANDS:
        p = sub.add_parser(cmd, parents=[common])
        p.add_argument("file", help="HGX input ('-' for standard input)")
        p.add_argument("--object", help="work on this object only")
        p.add_argument("--hopf", help="only comodule algebras over this Hopf algebra")
        if cmd == "cohomology":
            p.add_argument("--degree", type=int, choices=(1, 2), required=True)
    b = sub.add_parser("builtin", parents=[common])
    b.add_argument("which", choices=("artin-schreier", "trig", "tensor-ext"))
    b.add_argument("--p", type=int, default=2)
    b.add_argument("--d", type=int, default=1)
    b.add_argument("--a", default="1", help="Artin-Schreier parameter, in field syntax")
    b.add_argument("--base", choices=("square", "matrix"), default="square",
                   help="B0 for tensor-ext: k x k or 2x2 matrices")
    return parser


def _execute(argv):
    """``(exit code, output bytes, --out path or None)``."""
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
        if args.cap < 1:
            raise UsageError("--cap must be positive")
        if args.command == "builtin":
            try:
                return EXIT_OK, cmd_builtin(args), args.out
            except (ValueError, HopfGaloisError) as exc:
                raise UsageError(str(exc)) from None
        doc = parse_hgx(_read(args.file))
        run = _Run(args)
        COMMANDS[args.command](run, doc)
        return run.code, emit_report(run.sections, args.format), args.out
    except ParseError as exc:
        text = "parse error\n" + "\n".join(str(d) for d in exc.diagnostics) + "\n"
        return EXIT_USAGE, text.encode(), None
    except UsageError as exc:
        return EXIT_USAGE, f"usage error: {exc}\n".encode(), None


def run_command(argv):
    """Run one command; returns ``(exit code, output bytes)``."""
    code, out, _ = _execute(list(argv))
    return code, out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    code, out, target = _execute(list(argv))
    if code == EXIT_USAGE:
        sys.stderr.write(out.decode())
    elif target:
        with open(target, "wb") as fh:
            fh.write(out)
    else:
        sys.stdout.buffer.write(out)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
