"""Difference and differential operators with rational-function coefficients.

A difference operator is a finite sum of coefficients times integer shifts,
(A f)(x) = sum_j a_j(x) f(x+j); a differential operator is a finite sum of
coefficients times derivatives.  Both support exact composition, which is
what the factorization checks need: two operators are equal exactly when
their reduced coefficient maps coincide.
"""
from __future__ import annotations

from math import comb

from .exact import Poly, RatFunc


def _as_ratfunc(v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, Poly):
        return RatFunc(v)
    return RatFunc(Poly.constant(v))


class _OperatorBase:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cleaned = {}
        for key, val in dict(coeffs).items():
            val = _as_ratfunc(val)
            if not val.is_zero:
                cleaned[int(key)] = val
        self.coeffs = cleaned

    def coeff(self, key: int) -> RatFunc:
        return self.coeffs.get(key, RatFunc(Poly.zero()))

    def __eq__(self, other):
        if isinstance(other, type(self)):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.coeffs.items()))))

    def _binop(self, other, sub: bool):
        if isinstance(other, type(self)):
            out = dict(self.coeffs)
            for k, v in other.coeffs.items():
                out[k] = out.get(k, RatFunc(Poly.zero())) + (-v if sub else v)
            return type(self)(out)
        # a bare scalar/function acts as that multiple of the identity
        try:
            v = _as_ratfunc(other)
        except (TypeError, ValueError):
            return NotImplemented
        out = dict(self.coeffs)
        out[0] = out.get(0, RatFunc(Poly.zero())) + (-v if sub else v)
        return type(self)(out)

    def __add__(self, other):
        return self._binop(other, sub=False)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, sub=True)

    def __mul__(self, scalar):
        v = _as_ratfunc(scalar)
        return type(self)({k: c * v for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    @classmethod
    def identity(cls):
        return cls({0: RatFunc(Poly.one())})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs


class DifferenceOperator(_OperatorBase):
    """sum_j a_j(x) Sh_j with (Sh_j f)(x) = f(x+j)."""

    @classmethod
    def three_point(cls, hm1, h0, h1) -> "DifferenceOperator":
        return cls({-1: hm1, 0: h0, 1: h1})

    @property
    def hm1(self) -> RatFunc:
        return self.coeff(-1)

    @property
    def h0(self) -> RatFunc:
        return self.coeff(0)

    @property
    def h1(self) -> RatFunc:
        return self.coeff(1)

    def apply(self, p) -> RatFunc:
        out = RatFunc(Poly.zero())
        for j, a in self.coeffs.items():
            out = out + a * (p.shift(j) if isinstance(p, (Poly, RatFunc)) else _as_ratfunc(p).shift(j))
        return out

    def compose(self, other: "DifferenceOperator") -> "DifferenceOperator":
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                key = i + j
                term = a * b.shift(i)
                out[key] = out.get(key, RatFunc(Poly.zero())) + term
        return DifferenceOperator(out)

    __matmul__ = compose

    def __repr__(self):
        inner = ", ".join(f"{j}: {c}" for j, c in sorted(self.coeffs.items()))
        return f"DifferenceOperator({{{inner}}})"


class DifferentialOperator(_OperatorBase):
    """sum_i a_i(x) d^i/dx^i."""

    @classmethod
    def second_order(cls, a2, a1, a0) -> "DifferentialOperator":
        return cls({2: a2, 1: a1, 0: a0})

    @property
    def a2(self) -> RatFunc:
        return self.coeff(2)

    @property
    def a1(self) -> RatFunc:
        return self.coeff(1)

    @property
    def a0(self) -> RatFunc:
        return self.coeff(0)

    def apply(self, p) -> RatFunc:
        if isinstance(p, Poly):
            p = RatFunc(p)
        out = RatFunc(Poly.zero())
        for i, a in sorted(self.coeffs.items()):
            d = p
            for _ in range(i):
                d = d.derivative()
            out = out + a * d
        return out

    def compose(self, other: "DifferentialOperator") -> "DifferentialOperator":
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                # d^i (b g^(j)) = sum_t C(i,t) b^(i-t) g^(j+t)
                deriv = b
                derivs = [deriv]
                for _ in range(i):
                    deriv = deriv.derivative()
                    derivs.append(deriv)
                for t in range(i + 1):
                    key = j + t
                    term = a * comb(i, t) * derivs[i - t]
                    out[key] = out.get(key, RatFunc(Poly.zero())) + term
        return DifferentialOperator(out)

    __matmul__ = compose

    def __repr__(self):
        inner = ", ".join(f"{i}: {c}" for i, c in sorted(self.coeffs.items()))
        return f"DifferentialOperator({{{inner}}})"
