"""Command line frontend.

Exit codes: 0 when the answer is yes (or the command just reports), 1 when a
well-posed question has answer no, 2 on malformed input.

Algebra arguments are a file (Salamon or extended text, or JSON), an inline
Salamon string, or ``catalog:<name>``.  With a catalog algebra ``--j`` and
``--filtration`` may name stored structures and filtrations instead of files.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import MathematicalNegative, NilcxError, SamplerExhausted
from .fields import format_scalar, parse_scalar

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(NilcxError):
    pass


# ---------------------------------------------------------------------------
# input resolution
# ---------------------------------------------------------------------------

def _read_json(path: Path):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def load_algebra(arg: str, *, validate: bool = True):
    """Return ``(algebra, catalog_entry_or_None)``."""
    from .catalog import catalog_get
    from .lie import LieAlgebra
    from .notation import parse_algebra_text, parse_extended, parse_salamon

    if arg.startswith("catalog:"):
        entry = catalog_get(arg.split(":", 1)[1])
        return entry.algebra, entry
    path = Path(arg)
    if not path.exists():
        if arg.lstrip().startswith("("):
            return parse_salamon(arg.strip(), validate=validate), None
        raise InputError(f"no such file: {arg}")
    if path.suffix == ".json":
        data = _read_json(path)
        if "algebra" in data:
            data = data["algebra"]
        if "salamon" in data:
            return parse_salamon(data["salamon"], name=data.get("name"), validate=validate), None
        if "extended" in data:
            return parse_extended(data["extended"], name=data.get("name"), validate=validate), None
        return LieAlgebra.from_json(data, validate=validate), None
    return parse_algebra_text(path.read_text(encoding="utf-8"), name=path.stem, validate=validate), None


def load_structure(g, arg: str, entry=None):
    from .complex_structure import AlmostComplexStructure

    if entry is not None and arg in entry.structures:
        return entry.structure(arg)
    path = Path(arg)
    if not path.exists():
        known = f"; stored structures: {', '.join(entry.structures)}" if entry is not None else ""
        raise InputError(f"no such structure file: {arg}{known}")
    data = _read_json(path)
    return AlmostComplexStructure.from_json(g, data, name=data.get("name", path.stem))


def load_filtration(g, arg: str, entry=None):
    from .bundles import Filtration

    if entry is not None and arg in entry.filtrations:
        return Filtration.from_json(g, entry.filtrations[arg])
    path = Path(arg)
    if not path.exists():
        known = f"; stored filtrations: {', '.join(entry.filtrations)}" if entry is not None else ""
        raise InputError(f"no such filtration file: {arg}{known}")
    return Filtration.from_json(g, _read_json(path))


def parse_specialize(text: str | None):
    if text is None:
        return None
    name, sep, value = text.partition("=")
    if not sep or name.strip() != "t":
        raise InputError(f"--specialize expects t=<rational>, got {text!r}")
    q = parse_scalar(value.strip())
    if not isinstance(q, Fraction):
        raise InputError(f"--specialize needs a rational value, got {value!r}")
    return q


class Context:
    """Loaded inputs, with ``--specialize`` already applied."""

    def __init__(self, args):
        self.q = parse_specialize(args.specialize)
        self.g, self.entry = load_algebra(args.algebra, validate=getattr(args, "validate", True))
        self.g = self._spec(self.g)
        self.args = args

    def _spec(self, obj, **kw):
        if self.q is None or not obj.is_parametric():
            return obj
        return obj.specialize(self.q, **kw)

    def structure(self, arg):
        raw, _ = (load_algebra(self.args.algebra) if self.q is not None else (self.g, None))
        J = load_structure(raw, arg, self.entry)
        if self.q is not None and J.is_parametric():
            J = J.specialize(self.q, algebra=self.g)
        elif self.q is not None:
            J = type(J)(self.g, J.matrix, name=J.name)
        return J

    def filtration(self, arg):
        raw, _ = (load_algebra(self.args.algebra) if self.q is not None else (self.g, None))
        f = load_filtration(raw, arg, self.entry)
        if self.q is not None:
            f = f.specialize(self.q, algebra=self.g)
        return f

    def anchors(self) -> dict:
        if self.entry is None:
            return {}
        out = {"catalog_entry": self.entry.name}
        notes = self.entry.expected.get("notes")
        if notes:
            out["catalog_notes"] = notes
        if self.entry.origins:
            out["origins"] = self.entry.origins
        return out


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _vectors(space, names) -> list[str]:
    from .complex_structure import format_vector

    return [format_vector(b, names) for b in space.basis]


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_parse(args) -> int:
    from .lie import check_jacobi
    from .notation import parse_salamon, serialize_salamon

    g = parse_salamon(args.text, validate=False)
    rep = check_jacobi(g)
    brackets = g.bracket_list()
    payload = {"format": 1, "dim": g.dim, "brackets": brackets, "jacobi": rep.valid}
    lines = [f"dim {g.dim}"]
    for b in brackets:
        lines.append(f"[{g.names[b['i'] - 1]}, {g.names[b['j'] - 1]}] += {b['c']} {g.names[b['k'] - 1]}")
    if not brackets:
        lines.append("abelian")
    if rep.valid:
        payload["salamon"] = serialize_salamon(g)
        lines.append(f"normal form {payload['salamon']}")
    else:
        lines.append(f"Jacobi fails on {rep.witness_names(g)}")
    _emit(args, payload, lines)
    return EXIT_OK if rep.valid else EXIT_INPUT


def cmd_check(args) -> int:
    from .lie import check_jacobi, d_squared_vanishes

    args.validate = False
    ctx = Context(args)
    rep = check_jacobi(ctx.g)
    d2 = d_squared_vanishes(ctx.g)
    payload = {"jacobi": rep.valid, "d_squared_zero": d2, **ctx.anchors()}
    if not rep.valid:
        payload["witness"] = rep.witness_names(ctx.g)
    lines = [f"Jacobi identity: {'holds' if rep.valid else 'fails on ' + rep.witness_names(ctx.g)}",
             f"d^2 = 0: {'yes' if d2 else 'no'}"]
    _emit(args, payload, lines)
    return EXIT_OK if rep.valid else EXIT_NO


def cmd_series(args) -> int:
    from .lie import central_series, fingerprint, identify_small

    ctx = Context(args)
    s = central_series(ctx.g)
    fp = fingerprint(ctx.g)
    payload = {"step": s.step, "lower": list(fp.lower), "upper": list(fp.upper),
               "kind": identify_small(ctx.g),
               "descending": [_vectors(c, ctx.g.names) for c in s.descending],
               "ascending": [_vectors(c, ctx.g.names) for c in s.ascending], **ctx.anchors()}
    lines = [f"step {s.step} ({payload['kind']})",
             f"lower central dims {list(fp.lower)}",
             f"upper central dims {list(fp.upper)}"]
    for k, c in enumerate(s.descending[1:], 1):
        lines.append(f"C^{k} = <{', '.join(_vectors(c, ctx.g.names))}>")
    for k, c in enumerate(s.ascending[1:-1], 1):
        lines.append(f"Z_{k} = <{', '.join(_vectors(c, ctx.g.names))}>")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_cx(args) -> int:
    from .complex_structure import classify, commutator_and_centre_invariance, is_integrable, v_series

    ctx = Context(args)
    J = ctx.structure(args.j)
    names = ctx.g.names
    if not is_integrable(J):
        _emit(args, {"integrable": False, **ctx.anchors()}, ["J is not integrable"])
        return EXIT_NO
    cls = classify(J)
    inv = commutator_and_centre_invariance(J)
    vs = v_series(J)
    payload = {**cls.as_dict(), "commutator_invariant": inv["commutator"], "centre_invariant": inv["centre"],
               "v_series": [{"W": _vectors(w, names), "V": _vectors(v, names)} for w, v in vs], **ctx.anchors()}
    lines = ["J is integrable",
             f"abelian: {cls.abelian}, parallelisable: {cls.parallelisable}, nilpotent: {cls.nilpotent_J}",
             f"T-series dims {payload['t_series_dims']}",
             f"C_J-series dims {payload['cJ_series_dims']}",
             f"commutator J-invariant: {inv['commutator']}, centre J-invariant: {inv['centre']}"]
    for k, (w, v) in enumerate(vs):
        lines.append(f"V_{k + 1} = <{', '.join(_vectors(v, names))}>")
    _emit(args, payload, lines)
    return EXIT_OK


def _parse_pq(text: str):
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--pq expects p,q, got {text!r}") from None
    return p, q


def cmd_cohomology(args) -> int:
    from .cohomology import cohomology_table, de_rham_betti, dolbeault_dims, render_hodge
    from .errors import DimensionTooLarge

    ctx = Context(args)
    g = ctx.g
    J = ctx.structure(args.j) if args.j else None
    if args.pq:
        p, q = _parse_pq(args.pq)
        if J is None:
            if q != 0:
                raise InputError("--pq without --j reads p as a de Rham degree; use p,0")
            b = de_rham_betti(g, degrees=[p])[p]
            _emit(args, {"degree": p, "betti": b}, [f"b_{p} = {b}"])
            return EXIT_OK
        m = g.dim // 2
        if not (0 <= p <= m and 0 <= q <= m):
            raise InputError(f"bidegree ({p},{q}) outside 0..{m}")
        h = dolbeault_dims(J, cells=[(p, q)])[p][q]
        _emit(args, {"p": p, "q": q, "h": h}, [f"h^{{{p},{q}}} = {h}"])
        return EXIT_OK
    if g.dim > args.max_dim:
        raise DimensionTooLarge(f"full table for dimension {g.dim} exceeds --max-dim {args.max_dim}")
    table = cohomology_table(g, J, valued=J is not None and not args.no_valued)
    lines = [f"Betti numbers {table.betti}"]
    if table.hodge is not None:
        lines += ["Hodge numbers h^{p,q}:", render_hodge(table.hodge)]
    if table.valued_h01q is not None:
        lines.append(f"h^{{0,q}}(Theta) {table.valued_h01q}")
    for k, v in table.diagnostics.items():
        lines.append(f"{k}: {v}")
    _emit(args, {**table.to_json(), **ctx.anchors()}, lines)
    return EXIT_OK


def cmd_bundle(args) -> int:
    from .bundles import bundle_shape, check_series, propose_series

    ctx = Context(args)
    J = ctx.structure(args.j)
    if args.propose:
        prop = propose_series(J)
        payload = {**prop.as_dict(), **ctx.anchors()}
        lines = [f"proposed series: {prop.label}"]
        if prop.filtration is not None:
            lines.append(f"dims {prop.filtration.dims()}, verdict {prop.verdict.overall}")
            sh = bundle_shape(prop.filtration)
            lines.append(f"fibre {sh.fibre} (complex dim {sh.fibre_dim}), base {sh.base}")
        else:
            lines.append("no candidate passed; tried " + ", ".join(f"{t['label']} ({t['overall']})" for t in prop.tried))
        _emit(args, payload, lines)
        return EXIT_OK if prop.filtration is not None else EXIT_NO
    if not args.filtration:
        raise InputError("bundle needs --filtration or --propose")
    f = ctx.filtration(args.filtration)
    v = check_series(J, f)
    payload = {**v.as_dict(), "messages": v.messages(), "dims": f.dims(), **ctx.anchors()}
    if v.is_torus_bundle:
        payload["shape"] = bundle_shape(f).as_dict()
    lines = [f"filtration dims {f.dims()}", f"verdict: {v.overall}"] + v.messages()
    _emit(args, payload, lines)
    return EXIT_OK if v.is_torus_bundle else EXIT_NO


def _sampler(ctx, rng):
    """Catalog (or given) structures, random specializations of parametric ones, and conjugates."""
    from .automorphisms import family_sampler

    if ctx.args.j:
        structures = [ctx.structure(k) for k in ctx.args.j]
    elif ctx.entry is not None and ctx.entry.structures:
        structures = [ctx.structure(k) for k in ctx.entry.structures]
    else:
        raise InputError("stability needs at least one --j (or a catalog algebra with stored structures)")
    fixed = [J for J in structures if not J.is_parametric()]
    param = [J for J in structures if J.is_parametric()]

    def extra(r):
        J = r.choice(param)
        q = parse_scalar(f"{r.randint(-5, 5)}/{r.randint(1, 4)}")
        return J.specialize(q)

    pool = fixed + param
    draw = family_sampler(pool, rng, extra if param else None)
    first = list(pool)

    def sampler():
        # the stored structures themselves come first, then random ones
        return first.pop(0) if first else draw()

    return sampler


def cmd_stability(args) -> int:
    from .bundles import stability_sample

    ctx = Context(args)
    f = ctx.filtration(args.filtration)
    rng = random.Random(args.seed)
    rep = stability_sample(f, _sampler(ctx, rng), args.samples, principal=args.principal)
    payload = {**rep.as_dict(), "seed": args.seed, **ctx.anchors()}
    if rep.outcome == "counterexample":
        lines = [f"counterexample after {rep.samples} structures"] + rep.verdict.messages()
        J = rep.counterexample
        lines.append("matrix: " + json.dumps([[format_scalar(x) for x in r] for r in J.matrix]))
    else:
        lines = [f"{rep.samples} structures, no counterexample", rep.note]
    _emit(args, payload, lines)
    return EXIT_NO if rep.outcome == "counterexample" else EXIT_OK


def cmd_albanese(args) -> int:
    from .bundles import albanese_dimension

    ctx = Context(args)
    J = ctx.structure(args.j)
    w, a = albanese_dimension(J)
    payload = {"dim_alb": a, "w_dim": w.dim, "W": _vectors(w, ctx.g.names), **ctx.anchors()}
    _emit(args, payload, [f"dim W = {w.dim}", f"Albanese dimension {a}"])
    return EXIT_OK


def cmd_catalog(args) -> int:
    from .catalog import catalog_get, catalog_names, verify_all

    if args.action == "list":
        names = catalog_names()
        _emit(args, {"entries": names}, names)
        return EXIT_OK
    if args.action == "show":
        if not args.name:
            raise InputError("catalog show needs an entry name")
        e = catalog_get(args.name)
        d = e.to_json()
        lines = [f"{e.name}: {e.source}", f"dimension {e.algebra.dim}"]
        for k in e.structures:
            lines.append(f"structure {k} ({e.origins.get(k, '')})")
        for k in e.filtrations:
            lines.append(f"filtration {k}")
        if e.expected.get("notes"):
            lines.append(e.expected["notes"])
        _emit(args, d, lines)
        return EXIT_OK
    if args.action == "export":
        if not args.name or not args.dir:
            raise InputError("catalog export needs an entry name and a directory")
        e = catalog_get(args.name)
        out = Path(args.dir)
        out.mkdir(parents=True, exist_ok=True)
        written = [out / f"{e.name}.json"]
        written[0].write_text(json.dumps(e.algebra.to_json(), indent=2) + "\n")
        for k, J in e.structures.items():
            p = out / f"{k}.json"
            p.write_text(json.dumps(J.to_json(), indent=2) + "\n")
            written.append(p)
        for k, f in e.filtrations.items():
            p = out / f"{k}.json"
            p.write_text(json.dumps(e.filtration(k).to_json(), indent=2) + "\n")
            written.append(p)
        _emit(args, {"written": [str(p) for p in written]}, [str(p) for p in written])
        return EXIT_OK
    rep = verify_all([args.name] if args.name else None, cohomology=not args.no_cohomology)
    _emit(args, rep.to_json(), [rep.text()])
    return EXIT_OK if rep.ok else EXIT_NO


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand from overwriting a flag given before it
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print a JSON report")
    common.add_argument("--specialize", metavar="t=q", default=argparse.SUPPRESS,
                        help="substitute a rational value for the parameter t")

    p = argparse.ArgumentParser(prog="nilcx", description="Nilpotent Lie algebras with complex structures.",
                                parents=[common])
    p.add_argument("--version", action="version", version=f"nilcx {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, algebra=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if algebra:
            sp.add_argument("algebra", help="file, inline Salamon string, or catalog:<name>")
        sp.set_defaults(func=fn)
        return sp

    sp = add("parse", cmd_parse, "parse a Salamon string and list its brackets", algebra=False)
    sp.add_argument("text")
    add("check", cmd_check, "test the Jacobi identity")
    add("series", cmd_series, "central series and fingerprint")
    sp = add("cx", cmd_cx, "integrability, classification and V-series of J")
    sp.add_argument("--j", required=True)
    sp = add("cohomology", cmd_cohomology, "invariant de Rham and Dolbeault cohomology")
    sp.add_argument("--j", default=None)
    sp.add_argument("--pq", default=None, help="one cell p,q (with --j) or a de Rham degree p,0")
    sp.add_argument("--max-dim", type=int, default=18, help="refuse full tables above this dimension")
    sp.add_argument("--no-valued", action="store_true", help="skip the cohomology with values in T^{1,0}")
    sp = add("bundle", cmd_bundle, "check a torus bundle series")
    sp.add_argument("--j", required=True)
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--filtration", default=None)
    grp.add_argument("--propose", action="store_true", default=False)
    sp = add("stability", cmd_stability, "test a filtration against sampled structures")
    sp.add_argument("--filtration", required=True)
    sp.add_argument("--j", action="append", default=None, help="structure to sample around (repeatable)")
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--principal", action="store_true", default=False, help="require the principal conditions")
    sp = add("albanese", cmd_albanese, "dimension of the Albanese torus")
    sp.add_argument("--j", required=True)
    sp = add("catalog", cmd_catalog, "list, show, export or verify catalog entries", algebra=False)
    sp.add_argument("action", choices=["list", "show", "verify", "export"])
    sp.add_argument("name", nargs="?", default=None)
    sp.add_argument("dir", nargs="?", default=None, help="target directory for export")
    sp.add_argument("--no-cohomology", action="store_true", default=False)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    for flag, default in (("json", False), ("specialize", None)):
        if not hasattr(args, flag):
            setattr(args, flag, default)
    try:
        return args.func(args)
    except MathematicalNegative as exc:
        print(f"no: {exc}", file=sys.stderr)
        return EXIT_NO
    except SamplerExhausted as exc:
        print(f"sampler exhausted: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NilcxError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
