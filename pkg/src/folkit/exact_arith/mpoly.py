"""Sparse multivariate polynomials with exact coefficients.

Terms are stored as ``{exponent tuple: coefficient}`` with no zero
coefficients. The normalizing term order is graded lexicographic with the
declared variable order (first variable largest).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import AllZero
from . import upoly
from .field import AlgElem, field_of_all, _format_term, _join_terms

Exp = tuple


def _norm_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


def grlex_key(e: Exp):
    return (sum(e), e)


class MPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: dict | None = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != n:
                        raise ValueError(f"exponent {e} does not match variables {self.vars}")
                    clean[e] = _norm_coeff(c)
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c, vars: Sequence[str]) -> "MPoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "MPoly":
        return cls(vars)

    @classmethod
    def one(cls, vars: Sequence[str]) -> "MPoly":
        return cls.const(Fraction(1), vars)

    @classmethod
    def var(cls, name: str, vars: Sequence[str]) -> "MPoly":
        vars = tuple(vars)
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    @classmethod
    def gens(cls, vars: Sequence[str]) -> tuple["MPoly", ...]:
        return tuple(cls.var(v, vars) for v in vars)

    @classmethod
    def monomial(cls, exp: Exp, vars: Sequence[str], c=Fraction(1)) -> "MPoly":
        return cls(vars, {tuple(exp): c})

    @classmethod
    def from_univariate(cls, coeffs: Sequence, var_index: int, vars: Sequence[str]) -> "MPoly":
        n = len(vars)
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[var_index] = k
                terms[tuple(e)] = c
        return cls(vars, terms)

    # -- basic queries -----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def ord(self):
        """Lowest total degree of a term; ``math.inf`` for the zero polynomial."""
        if not self.terms:
            return math.inf
        return min(sum(e) for e in self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def ord_in(self, i: int):
        if not self.terms:
            return math.inf
        return min(e[i] for e in self.terms)

    def coeff(self, exp: Exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def field(self):
        return field_of_all(self.terms.values())

    def sorted_terms(self) -> list[tuple[Exp, object]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exp, object]:
        if not self.terms:
            raise AllZero("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def homogeneous_part(self, d: int) -> "MPoly":
        return MPoly(self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def initial_form(self) -> "MPoly":
        return self.homogeneous_part(self.ord()) if self.terms else self

    def truncate(self, d: int) -> "MPoly":
        """Terms of total degree < d."""
        return MPoly(self.vars, {e: c for e, c in self.terms.items() if sum(e) < d})

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "MPoly | None":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction, AlgElem)):
            return MPoly.const(other, self.vars)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, AlgElem)):
            if not other:
                return MPoly(self.vars)
            return MPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                terms[e] = terms[e] + v if e in terms else v
        return MPoly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.one(self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, AlgElem)):
            inv = (Fraction(1) / other) if not isinstance(other, AlgElem) else other.inverse()
            return self * inv
        if isinstance(other, MPoly):
            q, r = self.divmod(other)
            if r:
                raise ArithmeticError("inexact polynomial division")
            return q
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, AlgElem)):
            return self == MPoly.const(other, self.vars)
        return NotImplemented

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def monic(self) -> "MPoly":
        if not self.terms:
            return self
        _, c = self.leading_term()
        return self / c

    def divmod(self, divisor: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Multivariate division by a single divisor in graded-lex order."""
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = divisor.leading_term()
        inv = lc.inverse() if isinstance(lc, AlgElem) else Fraction(1) / lc
        q: dict = {}
        rem: dict = {}
        p = dict(self.terms)
        while p:
            e = max(p, key=grlex_key)
            c = p[e]
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c * inv
                q[qe] = qc
                for de, dc in divisor.terms.items():
                    t = tuple(a + b for a, b in zip(qe, de))
                    v = p.get(t, 0) - qc * dc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
            else:
                rem[e] = c
                del p[e]
        return MPoly(self.vars, q), MPoly(self.vars, rem)

    def divides(self, other: "MPoly") -> bool:
        return not other.divmod(self)[1]

    # -- calculus and substitution -----------------------------------------
    def diff(self, var) -> "MPoly":
        i = var if isinstance(var, int) else self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return MPoly(self.vars, terms)

    def __call__(self, *values, zero=None):
        """Substitute ``values`` (numbers, polynomials, series ...) for the variables."""
        if len(values) != len(self.vars):
            raise ValueError(f"expected {len(self.vars)} values, got {len(values)}")
        powers: list[dict] = [{0: None} for _ in values]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                if k == 1:
                    cache[1] = values[i]
                else:
                    half = pw(i, k // 2)
                    r = half * half
                    if k % 2:
                        r = r * values[i]
                    cache[k] = r
            return cache[k]

        acc = zero
        for e, c in self.sorted_terms():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = pw(i, k) if term is None else term * pw(i, k)
            term = c if term is None else term * c
            acc = term if acc is None else acc + term
        if acc is None:
            return Fraction(0)
        return acc

    def evaluate(self, point: Sequence) -> object:
        return self(*point, zero=Fraction(0))

    def compose(self, subs: Sequence["MPoly"]) -> "MPoly":
        """Substitute polynomials (all over one variable list) for the variables."""
        target = subs[0].vars if subs else self.vars
        return self(*subs, zero=MPoly(target))

    def rename(self, vars: Sequence[str]) -> "MPoly":
        return MPoly(vars, self.terms)

    def to_univariate(self, i: int) -> list:
        """Coefficient list in variable ``i``; other variables must not occur."""
        out: list = []
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial is not univariate in the requested variable")
            while len(out) <= e[i]:
                out.append(Fraction(0))
            out[e[i]] = c
        return out

    def coeffs_in(self, i: int) -> dict[int, "MPoly"]:
        """View as a polynomial in variable ``i`` with polynomial coefficients."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = list(e)
            ne[i] = 0
            out.setdefault(k, {})[tuple(ne)] = c
        return {k: MPoly(self.vars, t) for k, t in out.items()}

    # -- printing ----------------------------------------------------------
    def __str__(self) -> str:
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            parts.append(_format_term(c, mono))
        return _join_terms(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


def mpoly_ord(p: MPoly):
    return p.ord()


def _content_in(p: MPoly, i: int) -> MPoly:
    g = MPoly(p.vars)
    for c in p.coeffs_in(i).values():
        g = mpoly_gcd(g, c)
        if g.is_constant():
            return MPoly.one(p.vars)
    return g


def _prem(a: MPoly, b: MPoly, i: int) -> MPoly:
    db = b.degree_in(i)
    lcb = b.coeffs_in(i)[db]
    r = a
    x = MPoly.var(a.vars[i], a.vars)
    while r and r.degree_in(i) >= db:
        dr = r.degree_in(i)
        lcr = r.coeffs_in(i)[dr]
        r = r * lcb - lcr * x ** (dr - db) * b
    return r


def mpoly_gcd(p: MPoly, q: MPoly) -> MPoly:
    """Greatest common divisor, monic in graded-lex order; gcd(p, 0) = monic(p)."""
    if p.vars != q.vars:
        raise ValueError("gcd of polynomials over different variables")
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    used = p.variables_used() | q.variables_used()
    if not p.variables_used() or not q.variables_used():
        # one side is a nonzero constant
        return MPoly.one(p.vars)
    # pull out the monomial gcd first; it is cheap and very common here
    n = len(p.vars)
    mon = tuple(min(min(e[j] for e in p.terms), min(e[j] for e in q.terms)) for j in range(n))
    if any(mon):
        m = MPoly.monomial(mon, p.vars)
        return (m * mpoly_gcd(p / m, q / m)).monic()
    i = min(used)
    if i not in p.variables_used() or i not in q.variables_used():
        # variable i occurs in only one of them: gcd divides every coefficient
        holder, other = (p, q) if i in p.variables_used() else (q, p)
        g = other
        for c in holder.coeffs_in(i).values():
            g = mpoly_gcd(g, c)
        return g.monic()
    cp, cq = _content_in(p, i), _content_in(q, i)
    cg = mpoly_gcd(cp, cq)
    a, b = p / cp, q / cq
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    while b and b.degree_in(i) > 0:
        r = _prem(a, b, i)
        a = b
        if r:
            b = r / _content_in(r, i)
        else:
            b = r
    if b:
        # the sequence reached a nonzero polynomial free of variable i: primitive gcd is 1
        prim = MPoly.one(p.vars)
    else:
        prim = a / _content_in(a, i)
    return (cg * prim).monic()


def univariate_from_coeffs(coeffs: Iterable, var: str = "x") -> MPoly:
    return MPoly.from_univariate(list(coeffs), 0, (var,))


def factor_univariate(p: MPoly, field=None) -> list[tuple[MPoly, int]]:
    """Factor a univariate polynomial into monic irreducibles over its coefficient field."""
    from .factor import factor_coeffs

    used = p.variables_used()
    if not p:
        raise AllZero("cannot factor the zero polynomial")
    if len(used) > 1:
        raise ValueError("factor_univariate needs a polynomial in one variable")
    i = next(iter(used)) if used else 0
    facs = factor_coeffs(p.to_univariate(i), field)
    return [(MPoly.from_univariate(f, i, p.vars), m) for f, m in facs]


__all__ = ["MPoly", "mpoly_ord", "mpoly_gcd", "factor_univariate", "grlex_key", "upoly"]
