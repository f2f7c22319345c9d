"""Truncated Puiseux series in one parameter ``t``.

A series stores coefficients at integer exponents measured in units of
``t^(1/e)`` together with a *guaranteed order* ``prec``: every coefficient at
an exponent below ``prec`` is known exactly (absent means zero). ``prec`` is
``math.inf`` for exactly known series such as polynomials. Operations
propagate ``prec`` conservatively and never invent coefficients; asking for
information beyond ``prec`` raises :class:`PrecisionExhausted`.
"""

from __future__ import annotations

import contextvars
import math
from fractions import Fraction
from typing import Mapping

from ..errors import PrecisionExhausted
from .field import AlgElem

DEFAULT_WORKING_ORDER = 32

# Truncation used when an exact quotient is not a polynomial (t-units).
working_order: contextvars.ContextVar[int] = contextvars.ContextVar(
    "working_order", default=DEFAULT_WORKING_ORDER
)

INF = math.inf


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, AlgElem))


class PuiseuxSeries:
    __slots__ = ("coeffs", "e", "prec")

    def __init__(self, coeffs: Mapping[int, object] | None = None, e: int = 1, prec=INF):
        if e < 1:
            raise ValueError("ramification must be a positive integer")
        self.e = int(e)
        self.prec = prec
        clean = {}
        if coeffs:
            for k, c in coeffs.items():
                if c and k < prec:
                    clean[int(k)] = Fraction(c) if isinstance(c, int) else c
        self.coeffs = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def t(cls, e: int = 1) -> "PuiseuxSeries":
        return cls({e: Fraction(1)}, e)

    @classmethod
    def const(cls, c, e: int = 1, prec=INF) -> "PuiseuxSeries":
        return cls({0: c}, e, prec)

    @classmethod
    def monomial(cls, c, k: int, e: int = 1) -> "PuiseuxSeries":
        return cls({k: c}, e)

    @classmethod
    def from_list(cls, cs, e: int = 1, prec=INF) -> "PuiseuxSeries":
        return cls(dict(enumerate(cs)), e, prec)

    # -- queries -----------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.prec == INF

    def is_exact_zero(self) -> bool:
        return self.is_exact and not self.coeffs

    def low(self):
        """Smallest stored exponent (t^(1/e) units), ``prec`` if nothing is stored."""
        if self.coeffs:
            return min(self.coeffs)
        return self.prec

    def val(self):
        """Certified valuation in t^(1/e) units (``inf`` for exact zero)."""
        if self.coeffs:
            return min(self.coeffs)
        if self.is_exact:
            return INF
        raise PrecisionExhausted(
            f"no nonzero coefficient below guaranteed order {Fraction(self.prec, self.e)}"
        )

    def ord(self):
        """Least exponent in t units with a nonzero coefficient (a Fraction, or ``inf``)."""
        v = self.val()
        if v == INF:
            return INF
        return Fraction(v, self.e)

    def guaranteed_order(self):
        """``prec`` in t units."""
        return INF if self.prec == INF else Fraction(self.prec, self.e)

    def coefficient(self, k: int):
        if k >= self.prec:
            raise PrecisionExhausted(f"coefficient {k}/{self.e} beyond guaranteed order")
        return self.coeffs.get(k, Fraction(0))

    def leading(self):
        v = self.val()
        if v == INF:
            raise ValueError("exact zero series has no leading term")
        return v, self.coeffs[v]

    def degree(self):
        return max(self.coeffs) if self.coeffs else -1

    def items(self):
        return sorted(self.coeffs.items())

    def __bool__(self) -> bool:
        # truthiness means "not certified zero"
        return not self.is_exact_zero()

    # -- ramification handling ---------------------------------------------
    def with_ramification(self, e: int) -> "PuiseuxSeries":
        if e == self.e:
            return self
        if e % self.e:
            raise ValueError("new ramification must be a multiple of the old one")
        f = e // self.e
        prec = self.prec * f if self.prec != INF else INF
        return PuiseuxSeries({k * f: c for k, c in self.coeffs.items()}, e, prec)

    def _align(self, other: "PuiseuxSeries"):
        if self.e == other.e:
            return self, other
        e = self.e * other.e // math.gcd(self.e, other.e)
        return self.with_ramification(e), other.with_ramification(e)

    def normalized(self) -> "PuiseuxSeries":
        """Reduce the ramification to the smallest value compatible with the exponents."""
        g = self.e
        for k in self.coeffs:
            g = math.gcd(g, k)
        if g <= 1:
            return self
        prec = INF if self.prec == INF else self.prec // g + (1 if self.prec % g else 0)
        return PuiseuxSeries({k // g: c for k, c in self.coeffs.items()}, self.e // g, prec)

    def truncate(self, prec) -> "PuiseuxSeries":
        """Forget everything at exponents >= ``prec`` (stored units)."""
        return PuiseuxSeries(self.coeffs, self.e, min(self.prec, prec))

    def truncate_t(self, order) -> "PuiseuxSeries":
        return self.truncate(order * self.e)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, PuiseuxSeries):
            return other
        if _is_scalar(other):
            return PuiseuxSeries.const(other, self.e)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._align(o)
        coeffs = dict(a.coeffs)
        for k, c in b.coeffs.items():
            coeffs[k] = coeffs[k] + c if k in coeffs else c
        return PuiseuxSeries(coeffs, a.e, min(a.prec, b.prec))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries({k: -c for k, c in self.coeffs.items()}, self.e, self.prec)

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
        if _is_scalar(other):
            if not other:
                return PuiseuxSeries({}, self.e)
            return PuiseuxSeries({k: c * other for k, c in self.coeffs.items()}, self.e, self.prec)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b = self._align(other)
        if a.is_exact_zero() or b.is_exact_zero():
            return PuiseuxSeries({}, a.e)
        prec = min(a.prec + b.low(), b.prec + a.low())
        coeffs: dict = {}
        for k1, c1 in a.coeffs.items():
            for k2, c2 in b.coeffs.items():
                k = k1 + k2
                if k < prec:
                    v = c1 * c2
                    coeffs[k] = coeffs[k] + v if k in coeffs else v
        return PuiseuxSeries(coeffs, a.e, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = PuiseuxSeries.const(Fraction(1), self.e)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def shift(self, k: int) -> "PuiseuxSeries":
        """Multiply by t^(k/e)."""
        prec = self.prec + k if self.prec != INF else INF
        return PuiseuxSeries({j + k: c for j, c in self.coeffs.items()}, self.e, prec)

    def inverse(self) -> "PuiseuxSeries":
        return PuiseuxSeries.const(Fraction(1), self.e) / self

    def __truediv__(self, other):
        if _is_scalar(other):
            inv = other.inverse() if isinstance(other, AlgElem) else Fraction(1) / Fraction(other)
            return self * inv
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b = self._align(other)
        v, lead = b.leading()  # raises PrecisionExhausted if b is not certified nonzero
        if len(b.coeffs) == 1 and b.is_exact:
            inv = lead.inverse() if isinstance(lead, AlgElem) else Fraction(1) / lead
            return (a * inv).shift(-v)
        if a.is_exact_zero():
            return PuiseuxSeries({}, a.e)
        if a.is_exact and b.is_exact:
            q = _exact_quotient(a, b)
            if q is not None:
                return q
        rel = min(a.prec - a.low(), b.prec - v)
        if rel == INF:
            rel = working_order.get() * a.e
        start = a.low() - v
        prec = start + rel
        inv_lead = lead.inverse() if isinstance(lead, AlgElem) else Fraction(1) / lead
        rem = dict(a.coeffs)
        q: dict = {}
        k = start
        bterms = sorted(b.coeffs.items())
        while k < prec:
            c = rem.pop(k + v, None)
            if c:
                qc = c * inv_lead
                q[k] = qc
                for j, bc in bterms[1:]:
                    t = k + j
                    if t - v >= prec:
                        break
                    rem[t] = rem.get(t, 0) - qc * bc
            k += 1
        return PuiseuxSeries(q, a.e, prec)

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return PuiseuxSeries.const(other, self.e) / self
        return NotImplemented

    def deriv(self) -> "PuiseuxSeries":
        """d/dt; exponents and guaranteed order drop by one t-unit."""
        coeffs = {k - self.e: c * Fraction(k, self.e) for k, c in self.coeffs.items() if k}
        prec = self.prec - self.e if self.prec != INF else INF
        return PuiseuxSeries(coeffs, self.e, prec)

    def __eq__(self, other) -> bool:
        if _is_scalar(other):
            other = PuiseuxSeries.const(other, self.e)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b = self._align(other)
        return a.prec == b.prec and a.coeffs == b.coeffs

    def agrees_with(self, other: "PuiseuxSeries") -> bool:
        """Coefficients agree wherever both are known."""
        a, b = self._align(other)
        p = min(a.prec, b.prec)
        keys = {k for k in a.coeffs if k < p} | {k for k in b.coeffs if k < p}
        return all(a.coeffs.get(k, 0) == b.coeffs.get(k, 0) for k in keys)

    __hash__ = None  # type: ignore[assignment]

    def map_coeffs(self, fn) -> "PuiseuxSeries":
        return PuiseuxSeries({k: fn(c) for k, c in self.coeffs.items()}, self.e, self.prec)

    # -- printing ----------------------------------------------------------
    def format(self, var: str = "t") -> str:
        from .field import _format_term, _join_terms

        parts = []
        for k, c in self.items():
            ex = Fraction(k, self.e)
            if ex == 0:
                mono = ""
            elif ex == 1:
                mono = var
            elif ex.denominator == 1:
                mono = f"{var}^{ex.numerator}"
            else:
                mono = f"{var}^({ex})"
            parts.append(_format_term(c, mono))
        text = _join_terms(parts)
        if self.prec != INF:
            g = self.guaranteed_order()
            o = f"{var}^{g}" if g.denominator == 1 else f"{var}^({g})"
            text = f"{text} + O({o})" if parts else f"O({o})"
        return text

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"PuiseuxSeries({self})"


def _exact_quotient(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries | None:
    """a/b when both are exact and b divides a as Laurent polynomials, else None."""
    from . import upoly

    la, lb = a.low(), b.low()
    pa = [Fraction(0)] * (a.degree() - la + 1)
    for k, c in a.coeffs.items():
        pa[k - la] = c
    pb = [Fraction(0)] * (b.degree() - lb + 1)
    for k, c in b.coeffs.items():
        pb[k - lb] = c
    q, r = upoly.divmod_(pa, pb)
    if upoly.trim(r):
        return None
    return PuiseuxSeries({k + la - lb: c for k, c in enumerate(q)}, a.e)


def series_ord(s: PuiseuxSeries):
    return s.ord()


__all__ = ["PuiseuxSeries", "series_ord", "working_order", "DEFAULT_WORKING_ORDER", "INF"]
