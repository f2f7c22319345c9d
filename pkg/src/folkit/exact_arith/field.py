"""Rationals and towers of simple algebraic extensions.

Rational numbers are plain ``fractions.Fraction`` (ints are accepted wherever a
rational is). An extension ``K = k[a]/(m(a))`` is a :class:`NumberField`; its
elements are :class:`AlgElem` instances holding coordinates in the power basis
``1, a, ..., a^(d-1)`` with entries in ``k``. Elements of a subfield are
lifted automatically when mixed with elements of a field above them in the
same tower.
"""

from __future__ import annotations

import contextvars
from fractions import Fraction
from typing import Any, Sequence, Union

from ..errors import ExtensionDegreeExceeded, IncompatibleFields
from . import upoly

DEFAULT_EXTENSION_BOUND = 24

# Context-local so concurrent corpus runs can use different bounds.
extension_bound: contextvars.ContextVar[int] = contextvars.ContextVar(
    "extension_bound", default=DEFAULT_EXTENSION_BOUND
)


class Rationals:
    level = 0
    degree = 1
    absolute_degree = 1
    name = "QQ"

    @property
    def chain(self) -> tuple:
        return (self,)

    def contains(self, other) -> bool:
        return other is self

    def convert(self, x) -> Fraction:
        if isinstance(x, AlgElem):
            r = x.to_rational()
            if r is None:
                raise IncompatibleFields(f"{x} is not rational")
            return r
        return Fraction(x)

    __call__ = convert

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def describe(self) -> list[str]:
        return []

    def __repr__(self) -> str:
        return "QQ"


QQ = Rationals()

Field = Union[Rationals, "NumberField"]
Number = Union[int, Fraction, "AlgElem"]

_interned: dict = {}


class NumberField:
    """A simple extension ``base[a]/(minpoly)``; build with :meth:`extend`."""

    def __init__(self, base: Field, minpoly: Sequence[Any], name: str):
        self.base = base
        self.minpoly = tuple(minpoly)
        self.degree = len(self.minpoly) - 1
        self.level = base.level + 1
        self.absolute_degree = base.absolute_degree * self.degree
        self.name = name
        self._chain = base.chain + (self,)

    @classmethod
    def extend(cls, base: Field, minpoly: Sequence[Any], *, check: bool = True) -> "NumberField":
        """Adjoin a root of the irreducible polynomial ``minpoly`` (low -> high) to ``base``.

        Identical requests return the same field object so that independently
        computed values over the same extension can be compared.
        """
        mp = [base.convert(c) for c in upoly.monic([base.convert(c) for c in minpoly])]
        if len(mp) < 3:
            raise ValueError("an extension needs a minimal polynomial of degree >= 2")
        total = base.absolute_degree * (len(mp) - 1)
        bound = extension_bound.get()
        if total > bound:
            raise ExtensionDegreeExceeded(
                f"adjoining a root of degree {len(mp) - 1} gives total degree {total} > {bound}"
            )
        key = (id(base), tuple(mp))
        field = _interned.get(key)
        if field is not None:
            return field
        if check:
            from .factor import factor_coeffs

            facs = factor_coeffs(mp, base)
            if len(facs) != 1 or facs[0][1] != 1:
                raise ValueError(f"minimal polynomial {mp} is reducible over {base!r}")
        field = cls(base, mp, f"a{base.level + 1}")
        _interned[key] = field
        return field

    @property
    def chain(self) -> tuple:
        return self._chain

    def contains(self, other) -> bool:
        return other in self._chain

    @property
    def gen(self) -> "AlgElem":
        c = [self.base.zero()] * self.degree
        c[1] = self.base.one()
        return AlgElem(self, c)

    def zero(self) -> "AlgElem":
        return AlgElem(self, [self.base.zero()] * self.degree)

    def one(self) -> "AlgElem":
        c = [self.base.zero()] * self.degree
        c[0] = self.base.one()
        return AlgElem(self, c)

    def convert(self, x) -> "AlgElem":
        if isinstance(x, AlgElem):
            if x.field is self:
                return x
            if self.contains(x.field):
                lifted = self.base.convert(x)
            elif x.field.contains(self):
                r = x.in_subfield(self)
                if r is None:
                    raise IncompatibleFields(f"{x} does not lie in {self!r}")
                return r
            else:
                raise IncompatibleFields(f"{x.field!r} and {self!r} are not in one tower")
        else:
            lifted = self.base.convert(x)
        c = [self.base.zero()] * self.degree
        c[0] = lifted
        return AlgElem(self, c)

    __call__ = convert

    def describe(self) -> list[str]:
        """Human-readable definition of every generator in the tower."""
        below = self.base.describe()
        terms = []
        for i, c in enumerate(self.minpoly):
            if c:
                terms.append((i, c))
        poly = _format_poly(terms, self.name)
        return below + [f"{self.name}: root of {poly}"]

    def __repr__(self) -> str:
        return f"NumberField({self.name}, degree={self.absolute_degree})"


def _format_poly(terms, var: str) -> str:
    parts = []
    for i, c in sorted(terms, key=lambda t: -t[0]):
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        parts.append(_format_term(c, mono))
    return _join_terms(parts)


def _format_term(c, mono: str) -> tuple[bool, str]:
    """Return ``(negative, text)`` for ``c*mono`` with the sign pulled out when rational."""
    neg = False
    if isinstance(c, AlgElem):
        r = c.to_rational()
        if r is not None:
            c = r
    if not isinstance(c, AlgElem):
        c = Fraction(c)
        if c < 0:
            neg, c = True, -c
        if not mono:
            return neg, str(c)
        if c == 1:
            return neg, mono
        return neg, f"{c}*{mono}"
    text = f"({c})"
    return neg, text if not mono else f"{text}*{mono}"


def _join_terms(parts) -> str:
    if not parts:
        return "0"
    out = ""
    for k, (neg, text) in enumerate(parts):
        if k == 0:
            out = ("-" if neg else "") + text
        else:
            out += (" - " if neg else " + ") + text
    return out


def field_of(x) -> Field:
    return x.field if isinstance(x, AlgElem) else QQ


def common_field(*fields: Field) -> Field:
    top: Field = QQ
    for f in fields:
        if top.contains(f):
            continue
        if f.contains(top):
            top = f
        else:
            raise IncompatibleFields(f"{top!r} and {f!r} are not in one tower")
    return top


def field_of_all(values) -> Field:
    return common_field(*(field_of(v) for v in values))


def to_rational(x) -> Fraction | None:
    if isinstance(x, AlgElem):
        return x.to_rational()
    return Fraction(x)


class AlgElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Sequence[Any]):
        self.field = field
        self.coeffs = tuple(coeffs)

    # -- coercion ----------------------------------------------------------
    def _pair(self, other) -> tuple[NumberField, tuple, tuple] | None:
        if isinstance(other, AlgElem):
            if other.field is self.field:
                return self.field, self.coeffs, other.coeffs
            if self.field.contains(other.field):
                return self.field, self.coeffs, self.field.convert(other).coeffs
            if other.field.contains(self.field):
                return other.field, other.field.convert(self).coeffs, other.coeffs
            raise IncompatibleFields(f"{self.field!r} and {other.field!r} are not in one tower")
        if isinstance(other, (int, Fraction)):
            return self.field, self.coeffs, self.field.convert(other).coeffs
        return None

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return AlgElem(f, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.field, [-x for x in self.coeffs])

    def __sub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return AlgElem(f, [x - y for x, y in zip(a, b)])

    def __rsub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return AlgElem(f, [y - x for x, y in zip(a, b)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.field.zero()
            return AlgElem(self.field, [x * other for x in self.coeffs])
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return AlgElem(f, _reduce(upoly.mul(a, b), f))

    __rmul__ = __mul__

    def inverse(self) -> "AlgElem":
        if not self:
            raise ZeroDivisionError("inverse of zero in a number field")
        g, s, _ = upoly.xgcd(list(self.coeffs), list(self.field.minpoly))
        if len(g) != 1:
            raise ArithmeticError("minimal polynomial is not irreducible")
        return AlgElem(self.field, _reduce(s, self.field))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = Fraction(1) / Fraction(other)
            return AlgElem(self.field, [x * inv for x in self.coeffs])
        if isinstance(other, AlgElem):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- predicates --------------------------------------------------------
    def __bool__(self) -> bool:
        return any(bool(c) for c in self.coeffs)

    def __eq__(self, other) -> bool:
        try:
            pr = self._pair(other)
        except IncompatibleFields:
            return False
        if pr is None:
            return NotImplemented
        _, a, b = pr
        return all(x == y for x, y in zip(a, b))

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        if not any(bool(c) for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((id(self.field), self.coeffs))

    def to_rational(self) -> Fraction | None:
        if any(bool(c) for c in self.coeffs[1:]):
            return None
        c = self.coeffs[0]
        if isinstance(c, AlgElem):
            return c.to_rational()
        return Fraction(c)

    def in_subfield(self, sub: Field):
        """This element expressed in ``sub`` (a field below ours), or None."""
        if sub is self.field:
            return self
        if any(bool(c) for c in self.coeffs[1:]):
            return None
        c = self.coeffs[0]
        if sub is self.field.base:
            return c
        if isinstance(c, AlgElem):
            return c.in_subfield(sub)
        return sub.convert(c)

    def simplify(self):
        """Collapse to the smallest field of the tower containing this element."""
        r = self.to_rational()
        if r is not None:
            return r
        for f in self.field.chain[1:]:
            v = self.in_subfield(f)
            if v is not None:
                return v
        return self

    # -- printing ----------------------------------------------------------
    def __str__(self) -> str:
        terms = [(i, c) for i, c in enumerate(self.coeffs) if c]
        return _format_poly(terms, self.field.name)

    def __repr__(self) -> str:
        return f"AlgElem({self})"


def _reduce(p, field: NumberField) -> list:
    m = field.minpoly
    d = field.degree
    p = list(p)
    for k in range(len(p) - 1, d - 1, -1):
        c = p[k]
        if not c:
            continue
        for j in range(d):
            if m[j]:
                p[k - d + j] = p[k - d + j] - c * m[j]
    p = p[:d]
    zero = field.base.zero()
    return p + [zero] * (d - len(p))


def element_norm(x, down_to: Field | None = None):
    """Norm of ``x`` from its field to the field just below (or to ``down_to``)."""
    if not isinstance(x, AlgElem):
        return x
    K = x.field
    d = K.degree
    # columns of the multiplication-by-x matrix in the power basis
    cols = []
    basis = K.one()
    for _ in range(d):
        cols.append(list((x * basis).coeffs))
        basis = basis * K.gen
    rows = [[cols[j][i] for j in range(d)] for i in range(d)]
    n = determinant(rows)
    if down_to is not None and down_to is not K.base:
        return element_norm(n, down_to)
    return n


def determinant(rows):
    """Determinant by Gaussian elimination over an exact field."""
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0) * det
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        inv = 1 / p if isinstance(p, AlgElem) else Fraction(1) / p
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f = f * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det
