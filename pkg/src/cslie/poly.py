"""Sparse multivariate polynomials with Gaussian rational coefficients."""

from __future__ import annotations

from typing import Mapping, Sequence

from .scalar import GaussianRational, ZERO, ONE, format_scalar

__all__ = ["MultiPoly", "poly_ops"]


class MultiPoly:
    """A polynomial as a map from exponent vectors to nonzero coefficients.

    ``variables`` is an ordered tuple of names; every exponent vector has
    one entry per variable.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError("exponent vector length does not match variables")
            c = GaussianRational.coerce(c)
            if c:
                clean[exps] = clean.get(exps, ZERO) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    # constructors -----------------------------------------------------

    @classmethod
    def const(cls, variables: Sequence[str], c) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        k = variables.index(name)
        exps = tuple(1 if i == k else 0 for i in range(len(variables)))
        return cls(variables, {exps: ONE})

    @classmethod
    def linear(cls, variables: Sequence[str], coeffs: Sequence) -> "MultiPoly":
        """sum coeffs[k] * variables[k]."""
        n = len(variables)
        terms = {}
        for k, c in enumerate(coeffs):
            exps = tuple(1 if i == k else 0 for i in range(n))
            terms[exps] = c
        return cls(variables, terms)

    # variable alignment -----------------------------------------------

    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        if variables == self.variables:
            return self
        idx = []
        for v in self.variables:
            if v not in variables:
                if any(e[self.variables.index(v)] for e in self.terms):
                    raise ValueError(f"variable {v!r} missing from target list")
                idx.append(None)
            else:
                idx.append(variables.index(v))
        out = {}
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for e, j in zip(exps, idx):
                if j is not None:
                    new[j] = e
            out[tuple(new)] = c
        return MultiPoly(variables, out)

    def _align(self, other: "MultiPoly"):
        if self.variables == other.variables:
            return self, other
        names = list(self.variables)
        for v in other.variables:
            if v not in names:
                names.append(v)
        return self.with_variables(names), other.with_variables(names)

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(self.variables, other)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        a, b = self._align(self._lift(other))
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return _raw(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = GaussianRational.coerce(other)
            if not c:
                return _raw(self.variables, {})
            return _raw(self.variables, {e: c * v for e, v in self.terms.items()})
        a, b = self._align(other)
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e, ZERO) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return _raw(a.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.const(self.variables, ONE)
        for _ in range(k):
            out = out * self
        return out

    # queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        k = self.variables.index(name)
        return max((e[k] for e in self.terms), default=-1)

    def eval(self, assignment: Mapping[str, object]) -> GaussianRational:
        missing = [
            v for i, v in enumerate(self.variables)
            if v not in assignment and any(e[i] for e in self.terms)
        ]
        if missing:
            raise KeyError(f"no value supplied for {missing}")
        vals = [
            GaussianRational.coerce(assignment[v]) if v in assignment else ZERO
            for v in self.variables
        ]
        total = ZERO
        for exps, c in self.terms.items():
            t = c
            for x, e in zip(vals, exps):
                if e:
                    t = t * x ** e
            total = total + t
        return total

    def substitute(self, name: str, value) -> "MultiPoly":
        """Set one variable to a scalar; the variable list is kept."""
        k = self.variables.index(name)
        value = GaussianRational.coerce(value)
        terms: dict = {}
        for exps, c in self.terms.items():
            e = exps[k]
            coeff = c * value ** e if e else c
            if not coeff:
                continue
            new = exps[:k] + (0,) + exps[k + 1:]
            s = terms.get(new, ZERO) + coeff
            if s:
                terms[new] = s
            else:
                terms.pop(new, None)
        return _raw(self.variables, terms)

    def coefficient_in(self, name: str, power: int) -> "MultiPoly":
        """Coefficient of name**power, as a polynomial in the other variables."""
        k = self.variables.index(name)
        terms = {}
        for exps, c in self.terms.items():
            if exps[k] == power:
                terms[exps[:k] + (0,) + exps[k + 1:]] = c
        return _raw(self.variables, terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            other = self._lift(other)
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # text -------------------------------------------------------------

    def sorted_terms(self):
        """Terms in canonical order: descending total degree, then lex."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), [-x for x in t[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.variables, exps) if e
            )
            cs = format_scalar(c)
            if not mono:
                piece = cs if not c.im or not c.re else f"({cs})"
            elif c == ONE:
                piece = mono
            elif c == -ONE:
                piece = "-" + mono
            elif c.im and c.re:
                piece = f"({cs})*{mono}"
            else:
                piece = f"{cs}*{mono}"
            parts.append(piece)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"MultiPoly({self})"


def _raw(variables, terms) -> MultiPoly:
    p = MultiPoly.__new__(MultiPoly)
    p.variables = tuple(variables)
    p.terms = terms
    return p


def poly_ops(p: MultiPoly, q, op: str):
    """add, mul, eval (q is an assignment mapping), or is_zero (q ignored)."""
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "eval":
        return p.eval(q)
    if op == "is_zero":
        return p.is_zero()
    raise ValueError(f"unknown operation {op!r}")
