"""Exact scalars kept in factored form.

Norm and measure values mix rationals with Gamma factors at rational
arguments, non-integer rational powers, and exponentials.  Rather than
collapsing to floats, values are carried as

    rational * prod Gamma(g_i)^(e_i) * prod b_j^(q_j) * exp(t)

with everything rational and the e_i integers.  Construction canonicalizes:
Gamma factors at positive integers fold into the rational part, Gamma
factors whose arguments differ by integers cancel through rising
factorials, and powers with integer exponents fold in.  Exact signs are
available without any numeric step; numeric collapse lives in
:mod:`xoppak.numerics`.
"""
from __future__ import annotations

from .exact import (
    DomainError,
    PoleError,
    as_int,
    gamma_sign,
    is_integer,
    pochhammer,
    rat,
    rat_pow,
)


class FactoredScalar:
    __slots__ = ("rational", "gammas", "powers", "exp_arg")

    def __init__(self, rational=1, gammas=(), powers=(), exp_arg=0):
        rational = rat(rational)
        gdict = {}
        for arg, e in gammas:
            arg = rat(arg)
            e = int(e)
            if e:
                gdict[arg] = gdict.get(arg, 0) + e
        pdict = {}
        for base, e in powers:
            base = rat(base)
            e = rat(e)
            if e:
                pdict[base] = pdict.get(base, rat(0)) + e
        exp_arg = rat(exp_arg)

        # fold integer-argument gammas
        for arg in list(gdict):
            e = gdict[arg]
            if e == 0:
                del gdict[arg]
                continue
            if is_integer(arg):
                n = as_int(arg)
                if n > 0:
                    fact = rat(1)
                    for i in range(1, n):
                        fact *= i
                    rational *= rat_pow(fact, e)
                    del gdict[arg]
                elif e > 0:
                    raise PoleError(f"gamma factor at nonpositive integer {arg}")
                else:
                    # 1/Gamma at a pole is zero
                    rational = rat(0)
                    del gdict[arg]

        # cancel gammas whose arguments differ by integers
        if rational != 0 and gdict:
            groups = {}
            for arg in gdict:
                frac = arg - (arg.numerator // arg.denominator)
                groups.setdefault(frac, []).append(arg)
            for args in groups.values():
                if len(args) < 2:
                    continue
                args.sort()
                base_arg = args[0]
                for other in args[1:]:
                    e = gdict.pop(other)
                    m = as_int(other - base_arg)
                    p = pochhammer(base_arg, m)
                    if p == 0:
                        raise PoleError("pochhammer hit zero while reducing gamma factors")
                    rational *= rat_pow(p, e)
                    gdict[base_arg] = gdict.get(base_arg, 0) + e
                if gdict.get(base_arg) == 0:
                    del gdict[base_arg]

        # fold powers with integer exponents; validate the rest
        for base in list(pdict):
            e = pdict[base]
            if e == 0 or base == 1:
                del pdict[base]
                continue
            if base == 0:
                if e > 0:
                    rational = rat(0)
                    del pdict[base]
                else:
                    raise PoleError("zero base with negative exponent")
                continue
            if is_integer(e):
                rational *= rat_pow(base, as_int(e))
                del pdict[base]
            elif base < 0:
                raise DomainError(f"negative base {base} with non-integer exponent {e}")

        if rational == 0:
            gdict, pdict, exp_arg = {}, {}, rat(0)

        self.rational = rational
        self.gammas = tuple(sorted(gdict.items()))
        self.powers = tuple(sorted(pdict.items()))
        self.exp_arg = exp_arg

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_rational(cls, q):
        return cls(rational=q)

    @classmethod
    def gamma(cls, arg, e: int = 1):
        return cls(gammas=[(arg, e)])

    @classmethod
    def power(cls, base, e):
        return cls(powers=[(base, e)])

    @classmethod
    def exp_factor(cls, t):
        return cls(exp_arg=t)

    @classmethod
    def gamma_ratio(cls, top, bottom):
        """Gamma(top)/Gamma(bottom) as carriers (canonicalization may fold it)."""
        return cls(gammas=[(top, 1), (bottom, -1)])

    @classmethod
    def rising(cls, q, j: int):
        """(q)_j represented as Gamma(q+j)/Gamma(q)."""
        return cls.gamma_ratio(rat(q) + j, q)

    # -- queries -------------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return not self.gammas and not self.powers and self.exp_arg == 0

    def as_rational(self):
        if not self.is_rational:
            raise DomainError(f"uncancelled factors remain in {self}")
        return self.rational

    def sign(self) -> int:
        if self.rational == 0:
            return 0
        s = 1 if self.rational > 0 else -1
        for arg, e in self.gammas:
            if e % 2:
                s *= gamma_sign(arg)
        # surviving power bases are positive, exp factors are positive
        return s

    # -- arithmetic ----------------------------------------------------------

    def _combine(self, other, flip: bool):
        if not isinstance(other, FactoredScalar):
            other = FactoredScalar.from_rational(rat(other))
        if flip:
            if other.rational == 0:
                raise ZeroDivisionError("division by zero factored scalar")
            gammas = list(self.gammas) + [(a, -e) for a, e in other.gammas]
            powers = list(self.powers) + [(b, -e) for b, e in other.powers]
            return FactoredScalar(
                self.rational / other.rational, gammas, powers, self.exp_arg - other.exp_arg
            )
        gammas = list(self.gammas) + list(other.gammas)
        powers = list(self.powers) + list(other.powers)
        return FactoredScalar(
            self.rational * other.rational, gammas, powers, self.exp_arg + other.exp_arg
        )

    def __mul__(self, other):
        if not isinstance(other, FactoredScalar):
            try:
                other = FactoredScalar.from_rational(rat(other))
            except (ValueError, TypeError):
                return NotImplemented
        return self._combine(other, flip=False)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._combine(other, flip=True)

    def __rtruediv__(self, other):
        if not isinstance(other, FactoredScalar):
            other = FactoredScalar.from_rational(rat(other))
        return other._combine(self, flip=True)

    def __neg__(self):
        return FactoredScalar(-self.rational, self.gammas, self.powers, self.exp_arg)

    def __pow__(self, e: int):
        e = int(e)
        if e == 0:
            return FactoredScalar.from_rational(1)
        if e < 0:
            return FactoredScalar.from_rational(1) / self**-e
        return FactoredScalar(
            rat_pow(self.rational, e),
            [(a, ge * e) for a, ge in self.gammas],
            [(b, pe * e) for b, pe in self.powers],
            self.exp_arg * e,
        )

    def __eq__(self, other):
        if isinstance(other, FactoredScalar):
            return (
                self.rational == other.rational
                and self.gammas == other.gammas
                and self.powers == other.powers
                and self.exp_arg == other.exp_arg
            )
        try:
            q = rat(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.is_rational and self.rational == q

    def __hash__(self):
        return hash((self.rational, self.gammas, self.powers, self.exp_arg))

    def __repr__(self):
        parts = [str(self.rational)]
        for arg, e in self.gammas:
            parts.append(f"Gamma({arg})" + (f"^{e}" if e != 1 else ""))
        for base, e in self.powers:
            parts.append(f"({base})^({e})")
        if self.exp_arg != 0:
            parts.append(f"exp({self.exp_arg})")
        return "FactoredScalar[" + " * ".join(parts) + "]"
