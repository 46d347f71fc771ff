"""Structured-text (JSON) files for algebras, matrices, forms, data and certificates.

All scalars use the scalar text format of :func:`format_scalar`; indices
are 1-based.  Output is deterministic: keys in fixed order, brackets sorted.
"""

from __future__ import annotations

import json
from pathlib import Path

from .forms import AltForm, Endo, format_form, parse_form
from .lie import LieAlgebra
from .notation import complex_eqns_from_json, complex_eqns_to_json
from .poly import MultiPoly
from .redox import OxidationData, trivial_base
from .scalar import GaussianRational, format_scalar, parse_scalar
from .structures import Certificate, CSPair, validate_complex_symplectic

__all__ = [
    "FormatError",
    "dumps",
    "algebra_to_json",
    "algebra_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "read_matrix",
    "write_matrix_text",
    "covector_to_json",
    "covector_from_json",
    "pair_to_json",
    "pair_from_json",
    "data_to_json",
    "data_from_json",
    "certificate_to_json",
    "poly_to_json",
    "load_json",
    "complex_eqns_from_json",
    "complex_eqns_to_json",
]


class FormatError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _scalar(x) -> GaussianRational:
    try:
        return parse_scalar(str(x))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


# algebras ----------------------------------------------------------------


def algebra_to_json(g: LieAlgebra) -> dict:
    br = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            v = g.bracket_basis(i, j)
            target = {str(k + 1): format_scalar(c) for k, c in enumerate(v) if c}
            if target:
                br.append({"i": i + 1, "j": j + 1, "target": target})
    out = {"dim": g.dim, "scalar": "gaussian_rational", "brackets": br}
    if g.name:
        out["name"] = g.name
    return out


def algebra_from_json(obj) -> LieAlgebra:
    """Parse only; Jacobi is checked by the caller."""
    if not isinstance(obj, dict) or "dim" not in obj:
        raise FormatError("algebra file needs a 'dim' field")
    if obj.get("scalar", "gaussian_rational") != "gaussian_rational":
        raise FormatError(f"unsupported scalar type {obj.get('scalar')!r}")
    n = int(obj["dim"])
    br: dict = {}
    for entry in obj.get("brackets", []):
        i, j = int(entry["i"]), int(entry["j"])
        if not (1 <= i <= n and 1 <= j <= n):
            raise FormatError(f"bracket index out of range: [{i},{j}]")
        tgt = {int(k): _scalar(c) for k, c in entry.get("target", {}).items()}
        if any(not 1 <= k <= n for k in tgt):
            raise FormatError(f"target index out of range in [{i},{j}]")
        if (i, j) in br or (j, i) in br:
            raise FormatError(f"bracket [{i},{j}] given twice")
        br[(i, j)] = tgt
    return LieAlgebra(n, br, name=obj.get("name"))


# matrices and covectors ----------------------------------------------------


def matrix_to_json(M) -> list:
    rows = M.rows if isinstance(M, Endo) else M
    return [[format_scalar(GaussianRational.coerce(x)) for x in r] for r in rows]


def matrix_from_json(obj) -> Endo:
    if isinstance(obj, dict):
        obj = obj.get("J", obj.get("matrix"))
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise FormatError("matrix must be a list of rows")
    n = len(obj)
    if any(len(r) != n for r in obj):
        raise FormatError("matrix must be square")
    return Endo([[_scalar(x) for x in r] for r in obj])


def read_matrix(path) -> Endo:
    """A matrix from JSON, or from plain text with one whitespace-separated row per line."""
    text = Path(path).read_text()
    if text.lstrip().startswith(("[", "{")):
        return matrix_from_json(load_json(path))
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    return matrix_from_json(rows)


def write_matrix_text(M: Endo) -> str:
    return "".join(" ".join(format_scalar(x) for x in r) + "\n" for r in M.rows)


def covector_to_json(v) -> list:
    return [format_scalar(GaussianRational.coerce(x)) for x in v]


def covector_from_json(obj, n: int | None = None) -> tuple:
    if isinstance(obj, str):
        form = parse_form(obj, n)
        if form.degree != 1:
            raise FormatError(f"expected a 1-form, got {obj!r}")
        return form.as_covector()
    v = tuple(_scalar(x) for x in obj)
    if n is not None and len(v) != n:
        raise FormatError(f"covector of length {len(v)}, expected {n}")
    return v


# pairs and oxidation data ----------------------------------------------


def pair_to_json(p: CSPair) -> dict:
    return {"algebra": algebra_to_json(p.g), "J": matrix_to_json(p.J.J),
            "omega": format_form(p.omega) if p.g.dim else "0"}


def pair_from_json(obj) -> CSPair:
    g = algebra_from_json(obj["algebra"])
    if g.dim == 0:
        return trivial_base()
    J = matrix_from_json(obj["J"])
    om = parse_form(obj["omega"], g.dim) if isinstance(obj["omega"], str) else AltForm.from_matrix(
        [[_scalar(x) for x in r] for r in obj["omega"]])
    return validate_complex_symplectic(g, J, om)


def data_to_json(d: OxidationData) -> dict:
    out = {"base": pair_to_json(d.base)}
    if d.n:
        out["f1"] = matrix_to_json(d.f1)
        out["f2"] = matrix_to_json(d.f2)
    out.update({"S11": covector_to_json(d.S11), "S12": covector_to_json(d.S12),
                "S22": covector_to_json(d.S22), "tau": covector_to_json(d.tau)})
    if d.label:
        out["label"] = d.label
    return out


def data_from_json(obj) -> OxidationData:
    try:
        base = pair_from_json(obj["base"])
        n = base.g.dim
        f1 = matrix_from_json(obj["f1"]) if "f1" in obj else None
        f2 = matrix_from_json(obj["f2"]) if "f2" in obj else None
        cov = {k: covector_from_json(obj.get(k, ["0"] * n), n) for k in ("S11", "S12", "S22")}
        tau = tuple(_scalar(x) for x in obj.get("tau", ["0", "0"]))
    except KeyError as exc:
        raise FormatError(f"oxidation data is missing {exc}") from None
    if len(tau) != 2:
        raise FormatError("tau must have two entries")
    return OxidationData(base, f1, f2, cov["S11"], cov["S12"], cov["S22"], tau, label=obj.get("label"))


# certificates --------------------------------------------------------------


def poly_to_json(p: MultiPoly) -> dict:
    return {"variables": list(p.variables),
            "terms": [[list(e), format_scalar(c)] for e, c in p.sorted_terms()],
            "text": str(p)}


def certificate_to_json(c: Certificate) -> dict:
    out = {"result": c.label, "problem": c.problem,
           "basis": [format_form(b) for b in c.basis], "polynomial": poly_to_json(c.polynomial)}
    if c.point is not None:
        out["point"] = [format_scalar(GaussianRational.coerce(x)) for x in c.point]
    if c.witness is not None:
        out["witness"] = format_form(c.witness)
    if c.witness_complex is not None:
        out["witness_complex"] = format_form(c.witness_complex)
    return out
