"""Command-line front end.

Exit codes: 0 ok, 1 validation failure or IMPOSSIBLE certificate,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .families import FAMILIES, FamilyError, build_family, example_catalog
from .formats import (
    FormatError,
    algebra_from_json,
    algebra_to_json,
    certificate_to_json,
    complex_eqns_from_json,
    data_from_json,
    data_to_json,
    dumps,
    load_json,
    matrix_from_json,
    matrix_to_json,
    pair_to_json,
    read_matrix,
)
from .forms import Endo, format_form, parse_form, pfaffian
from .lie import (
    Subspace,
    ce_diff,
    central_series,
    center,
    cohomology_dims,
    derived_algebra,
    validate_jacobi,
)
from .notation import RealifyError, SalamonError, parse_salamon, print_salamon, realify
from .redox import (
    CONDITION_NAMES,
    OxidationError,
    ReductionError,
    format_bracket_table,
    oxidation_labels,
    oxidize,
    OxidationData,
    reduce_with_basis,
    trivial_base,
)
from .scalar import format_scalar, parse_scalar
from .structures import (
    ascending_J_series,
    complex_structure_from_forms,
    complex_symplectic_existence,
    nijenhuis_check,
    standard_J,
    symplectic_existence,
    validate_complex_symplectic,
)

__all__ = ["main", "UsageError"]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input resolution
# ---------------------------------------------------------------------------


def _catalog_lookup(name: str):
    key = name.lower().replace(" ", "").replace("⊕", "+")
    for n, e in example_catalog().items():
        if n.lower().replace(" ", "") == key or n.lower().replace(" ", "").replace("+", "") == key:
            return e
    return None


def load_algebra(text: str, convention: str = "strict"):
    """(g, J or None, omega or None) from a file, a Salamon string or a catalog name."""
    p = Path(text)
    if p.is_file():
        obj = load_json(p)
        if isinstance(obj, dict) and "algebra" in obj:
            g = algebra_from_json(obj["algebra"])
            J = read_matrix_obj(obj.get("J"))
            om = parse_form(obj["omega"], g.dim) if obj.get("omega") else None
            return g, J, om
        if isinstance(obj, dict) and "d" in obj and "n" in obj:
            g, J = realify(complex_eqns_from_json(obj), name=p.stem)
            return g, J, None
        return algebra_from_json(obj), None, None
    if text.lstrip().startswith("("):
        return parse_salamon(text, convention=convention, check=False), None, None
    e = _catalog_lookup(text)
    if e is not None:
        return e.g, e.J, e.omega
    raise UsageError(f"not a file, Salamon string or catalog name: {text!r}")


def read_matrix_obj(obj):
    return None if obj is None else matrix_from_json(obj)


def load_J(arg: str | None, g, default):
    if arg is None:
        return default
    if arg == "standard":
        return standard_J(g.dim).J
    p = Path(arg)
    if p.is_file():
        return read_matrix(p)
    if arg.lower().startswith("forms:"):
        forms = [parse_form(t, g.dim) for t in arg[6:].split(";")]
        return complex_structure_from_forms(forms).J
    raise UsageError(f"--J: not a file, 'standard' or 'forms:...': {arg!r}")


def load_omega(arg: str | None, g, default):
    if arg is None:
        return default
    p = Path(arg)
    text = p.read_text().strip() if p.is_file() else arg
    form = parse_form(text, g.dim)
    if form.degree != 2:
        raise UsageError("--omega must be a 2-form")
    return form


def _emit(args, text_lines, structured):
    if args.format == "structured":
        out = dumps(structured)
    else:
        out = "".join(line + "\n" for line in text_lines)
    if getattr(args, "output", None):
        Path(args.output).write_text(dumps(structured) if args.format == "structured" else out)
    sys.stdout.write(out)


def _series_line(g) -> str:
    ser = central_series(g)
    if ser.nilpotent:
        return f"step {ser.nilpotency_step}, ascending type ({','.join(map(str, ser.ascending_type))})"
    return f"not nilpotent, upper central series dims ({','.join(map(str, ser.ascending_type))})"


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_parse(args) -> int:
    g, J, _ = load_algebra(args.input, args.convention)
    lines = [print_salamon(g, args.convention) if g.is_real() else "(complex structure constants)"]
    lines.append(f"dim {g.dim}")
    lines += format_bracket_table(g)
    if J is not None:
        lines.append("J = " + json.dumps(matrix_to_json(J)))
    st = {"salamon": lines[0], "algebra": algebra_to_json(g)}
    if J is not None:
        st["J"] = matrix_to_json(J)
    _emit(args, lines, st)
    return 0


def _validate(g, J, om):
    """Layered checks: Jacobi, then J, then omega.  Returns (ok, lines, dict)."""
    lines, st, ok = [], {}, True
    jr = validate_jacobi(g)
    if jr.ok:
        lines.append(f"Jacobi: ok, {_series_line(g)}")
    else:
        ok = False
        lines.append(f"Jacobi: FAILED at {len(jr.violations)} triples")
        for i, j, k, r in jr.violations:
            lines.append(f"  Jacobi identity fails for (e{i},e{j},e{k}): {_vec(r)}")
    st["jacobi"] = {"ok": jr.ok, "violations": [[i, j, k, _vec(r)] for i, j, k, r in jr.violations]}
    if not ok:
        return ok, lines, st
    if J is not None:
        sq = (J @ J) == -Endo.identity(g.dim)
        nr = nijenhuis_check(g, J) if sq else None
        if not sq:
            ok = False
            lines.append("J: FAILED, J^2 != -1")
        elif not nr.integrable:
            ok = False
            lines.append(f"J: FAILED, Nijenhuis tensor nonzero on {len(nr.violations)} basis pairs")
            for i, j, v in nr.violations[:20]:
                lines.append(f"  N_J(e{i},e{j}) = {_vec(v)}")
        else:
            lines.append("J: ok, integrable (Nijenhuis and (0,2)-part criteria agree)" if nr.routes_agree
                         else "J: integrable, but the two criteria DISAGREE")
        st["J"] = {"ok": bool(sq and nr and nr.integrable)}
    if om is not None and ok:
        if J is None:
            closed = not ce_diff(g, om)
            nondeg = bool(pfaffian(om)) if g.dim % 2 == 0 else False
            good = closed and nondeg
            lines.append("omega: ok, symplectic" if good else
                         f"omega: FAILED ({'not closed' if not closed else ''}{', ' if not closed and not nondeg else ''}{'degenerate' if not nondeg else ''})")
            st["omega"] = {"ok": good, "closed": closed, "nondegenerate": nondeg}
            ok = ok and good
        else:
            pr = validate_complex_symplectic(g, J, om)
            rep = pr.report
            if rep.ok:
                lines.append("omega: ok, complex symplectic (closed, non-degenerate, omega(JX,Y) = omega(X,JY))")
            else:
                ok = False
                names = {"closed": "d omega != 0", "nondegenerate": "omega degenerate",
                         "j_symmetric": "omega(JX,Y) != omega(X,JY)", "real": "complex coefficients"}
                lines.append("omega: FAILED, " + "; ".join(names.get(f, f) for f in rep.failures()))
                if rep.d_omega:
                    lines.append(f"  d omega = {format_form(rep.d_omega)}")
            st["omega"] = {"ok": rep.ok, "failures": rep.failures()}
    st["ok"] = ok
    return ok, lines, st


def _vec(v) -> str:
    return "(" + ",".join(format_scalar(x) for x in v) + ")"


def cmd_validate(args) -> int:
    g, J, om = load_algebra(args.input, args.convention)
    J = load_J(args.J, g, J)
    om = load_omega(args.omega, g, om)
    ok, lines, st = _validate(g, J, om)
    _emit(args, lines, st)
    return 0 if ok else 1


def cmd_analyze(args) -> int:
    g, J0_, _ = load_algebra(args.input, args.convention)
    J = load_J(args.J, g, J0_)
    jr = validate_jacobi(g)
    if not jr.ok:
        _emit(args, ["Jacobi: FAILED; run validate for the triples"], {"jacobi": False})
        return 1
    ser = central_series(g)
    z = center(g)
    coh = cohomology_dims(g, J)
    lines = [print_salamon(g) if g.is_real() else f"dim {g.dim}", _series_line(g),
             f"center dim {z.dim}", f"derived algebra dim {derived_algebra(g).dim}",
             f"betti numbers {coh.betti}"]
    st = {"dim": g.dim, "nilpotent": ser.nilpotent, "step": ser.nilpotency_step,
          "ascending_type": list(ser.ascending_type), "center_dim": z.dim, "betti": coh.betti}
    if J is not None:
        nr = nijenhuis_check(g, J)
        lines.append(f"J integrable: {nr.integrable}")
        st["J_integrable"] = nr.integrable
        if nr.integrable:
            js = ascending_J_series(g, J)
            lines.append(f"ascending J-series dims {js.dims}, {js.label}")
            lines.append(f"a1(J) = z ∩ Jz: {js.a1_matches_center}")
            st.update({"J_series": list(js.dims), "J_label": js.label, "a1_matches": js.a1_matches_center})
    _emit(args, lines, st)
    return 0


def _indices(text: str, dim: int) -> Subspace:
    try:
        idx = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"--ideal expects basis indices like 5,6: {text!r}") from None
    if not idx or any(not 1 <= k <= dim for k in idx):
        raise UsageError(f"--ideal indices out of range 1..{dim}")
    return Subspace.span_of(dim, idx)


def cmd_reduce(args) -> int:
    g, J, om = load_algebra(args.input, args.convention)
    J = load_J(args.J, g, J)
    om = load_omega(args.omega, g, om)
    if J is None or om is None:
        raise UsageError("reduce needs J and omega (from the input or --J/--omega)")
    pair = validate_complex_symplectic(g, J, om)
    if not pair.ok:
        _emit(args, ["input pair fails: " + ", ".join(pair.report.failures())], {"ok": False})
        return 1
    a = _indices(args.ideal, g.dim)
    try:
        red, C = reduce_with_basis(pair, a)
    except ReductionError as exc:
        _emit(args, [f"cannot reduce: {exc}"], {"ok": False, "reason": exc.reason})
        return 1
    lines = [f"reduced dim {red.g.dim}", print_salamon(red.g) if red.g.dim else "()",
             _series_line(red.g) if red.g.dim else "trivial", "omega = " + (format_form(red.omega) if red.g.dim else "0")]
    _emit(args, lines, {"ok": True, "pair": pair_to_json(red), "complement": [[format_scalar(x) for x in v] for v in C]})
    return 0


def _family_data(args):
    fid = args.family if "-" in args.family else f"{args.family}-{args.case}"
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise UsageError(f"--param expects name=value: {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = parse_scalar(v)
    return build_family(fid, params)


def cmd_oxidize(args) -> int:
    if args.family:
        if "-" not in args.family and not args.case:
            raise UsageError("--family needs --case (or use e.g. R4-ii)")
        data = _family_data(args)
    elif args.trivial:
        tau = tuple(parse_scalar(x) for x in (args.tau or "0,0").split(","))
        data = OxidationData(trivial_base(), tau=tau)
    elif args.input:
        data = data_from_json(load_json(args.input))
    else:
        raise UsageError("oxidize needs a data file, --family or --trivial")
    try:
        pair = oxidize(data, strict=True)
    except OxidationError as exc:
        lines = ["invalid oxidation data:"] + [f"  {CONDITION_NAMES[k]}" for k in exc.failed]
        _emit(args, lines, {"ok": False, "failed": list(exc.failed),
                            "conditions": [CONDITION_NAMES[k] for k in exc.failed]})
        return 1
    labels = oxidation_labels(data.n)
    lines = format_bracket_table(pair.g, labels) + [_series_line(pair.g), print_salamon(pair.g) if pair.g.dim else "()"]
    _emit(args, lines, {"ok": True, "pair": pair_to_json(pair), "data": data_to_json(data)})
    return 0


def cmd_certify(args) -> int:
    g, J, _ = load_algebra(args.input, args.convention)
    J = load_J(args.J, g, None)
    if g.dim % 2:
        raise UsageError("certify needs even dimension")
    if J is not None and g.dim % 4:
        raise UsageError("complex symplectic certificates need dimension divisible by 4")
    if not validate_jacobi(g).ok:
        raise UsageError("input is not a Lie algebra (Jacobi fails)")
    if J is not None:
        try:
            cert = complex_symplectic_existence(g, J)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        cert = symplectic_existence(g)
    lines = [cert.label, f"problem: {cert.problem}", f"polynomial: {cert.polynomial}"]
    if cert.witness is not None:
        lines.append(f"witness: {format_form(cert.witness)}")
    st = certificate_to_json(cert)
    _emit(args, lines, st)
    return 1 if cert.impossible else 0


def _grid(text: str | None):
    if not text:
        return None
    try:
        return [Fraction(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--grid expects comma-separated rationals: {text!r}") from None


def cmd_sweep(args) -> int:
    from .sweep import classify8_sweep

    fids = list(FAMILIES)
    if args.family:
        fids = [f for f in fids if f.split("-")[0] == args.family or f == args.family]
    if args.case:
        fids = [f for f in fids if f.split("-")[1] == args.case]
    if not fids:
        raise UsageError("no family matches --family/--case")
    rep = classify8_sweep(_grid(args.grid), fids, rows=args.rows, workers=args.workers)
    lines = []
    if args.rows:
        lines.append("family\tparams\tstep\ttype\tresult")
        lines += [r.text() for r in rep.rows]
        lines.append("")
    lines += rep.summary()
    _emit(args, lines, rep.to_dict())
    return 0 if rep.ok else 1


def cmd_examples(args) -> int:
    cat = example_catalog()
    names = [args.name] if args.name else list(cat)
    lines, st = [], {}
    for n in names:
        e = cat.get(n) or _catalog_lookup(n)
        if e is None:
            raise UsageError(f"unknown example {n!r}; known: {', '.join(cat)}")
        pr = e.pair
        status = "no omega" if pr is None else ("ok" if pr.ok else "FAILED")
        lines.append(f"{e.name}\t{print_salamon(e.g)}\t{_series_line(e.g)}\tcomplex symplectic: {status}")
        st[e.name] = {"salamon": print_salamon(e.g), "status": status,
                      "omega": format_form(e.omega) if e.omega is not None else None,
                      "J": matrix_to_json(e.J) if e.J is not None else None}
    _emit(args, lines, st)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cslie", description="Complex symplectic nilpotent Lie algebras: validation, reduction, oxidation.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, input_required=True):
        if input_required:
            sp.add_argument("input", help="algebra file, Salamon string or catalog name")
        sp.add_argument("--format", choices=("text", "structured"), default="text")
        sp.add_argument("--convention", choices=("strict", "bracket"), default="strict")
        sp.add_argument("--output", help="also write the output to this file")

    sp = sub.add_parser("parse", help="parse and print an algebra")
    common(sp)
    sp.set_defaults(run=cmd_parse)

    sp = sub.add_parser("validate", help="check Jacobi, then J, then omega")
    common(sp)
    sp.add_argument("--J", help="matrix file, 'standard', or 'forms:e1+(i)e2;...'")
    sp.add_argument("--omega", help="2-form, e.g. e14+e23")
    sp.set_defaults(run=cmd_validate)

    sp = sub.add_parser("analyze", help="series, center, cohomology, J-series")
    common(sp)
    sp.add_argument("--J")
    sp.set_defaults(run=cmd_analyze)

    sp = sub.add_parser("reduce", help="reduce by an isotropic J-invariant ideal")
    common(sp)
    sp.add_argument("--J")
    sp.add_argument("--omega")
    sp.add_argument("--ideal", required=True, help="basis indices spanning the ideal, e.g. 5,6")
    sp.set_defaults(run=cmd_reduce)

    sp = sub.add_parser("oxidize", help="build the oxidation from data")
    common(sp, input_required=False)
    sp.add_argument("input", nargs="?", help="oxidation data file")
    sp.add_argument("--family", help="h3R or R4 (or e.g. R4-ii)")
    sp.add_argument("--case", choices=("i", "ii", "iii", "iv", "v"))
    sp.add_argument("--param", action="append", help="name=value, repeatable")
    sp.add_argument("--trivial", action="store_true", help="oxidize the zero-dimensional base")
    sp.add_argument("--tau", help="t1,t2 for --trivial")
    sp.set_defaults(run=cmd_oxidize)

    sp = sub.add_parser("certify", help="decide existence of a (complex) symplectic form")
    common(sp)
    sp.add_argument("--J")
    sp.set_defaults(run=cmd_certify)

    sp = sub.add_parser("sweep", help="grid sweep over the oxidation-data families")
    common(sp, input_required=False)
    sp.add_argument("--grid", help="comma-separated values for every parameter (default -1,0,1)")
    sp.add_argument("--family", choices=("h3R", "R4"))
    sp.add_argument("--case", choices=("i", "ii", "iii", "iv", "v"))
    sp.add_argument("--rows", action="store_true", help="print one row per grid point")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(run=cmd_sweep)

    sp = sub.add_parser("examples", help="list the example catalog")
    common(sp, input_required=False)
    sp.add_argument("name", nargs="?")
    sp.set_defaults(run=cmd_examples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.run(args)
    except SalamonError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, FormatError, FamilyError, RealifyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
