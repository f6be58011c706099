"""Exact sparse multivariate polynomials and rational functions.

This is the coefficient kernel for the whole package.  Values are immutable,
coefficients are arbitrary-precision :class:`fractions.Fraction` (floats are
never used), and the zero test is decided by polynomial normal form of the
numerator, so it is sound and complete.

Representation
--------------
A monomial is a tuple of ``(Symbol, exponent)`` pairs, sorted by symbol name,
with all exponents positive.  A :class:`Polynomial` stores its terms as a
tuple of ``(monomial, coefficient)`` pairs in descending graded-lexicographic
order over the fixed symbol order; no stored coefficient is zero.  A
:class:`RationalExpr` is a pair of polynomials ``num/den`` normalized so that

* the denominator is not the zero polynomial,
* numerator and denominator share no monomial factor and no rational
  content (all coefficients are integers with overall gcd 1),
* the denominator's leading coefficient is positive.

Fractions are additionally collapsed when one polynomial exactly divides the
other; beyond that no multivariate gcd is attempted, since equality is
decided by cross-multiplication, which is complete without it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .errors import CyclicSubstitutionError, DivisionByZeroError, SubstitutionError
from .symbols import Symbol

Mono = tuple[tuple[Symbol, int], ...]
Scalar = Union[int, Fraction]

_EMPTY_MONO: Mono = ()


def _mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def _mono_key(m: Mono):
    # Ascending sort by this key yields descending graded-lex order.
    return (-_mono_degree(m), tuple((s.name, -e) for s, e in m))


def _mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        sa, ea = a[i]
        sb, eb = b[j]
        if sa.name == sb.name:
            out.append((sa, ea + eb))
            i += 1
            j += 1
        elif sa.name < sb.name:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_div(a: Mono, b: Mono) -> Optional[Mono]:
    """a / b, or None when b does not divide a."""
    if not b:
        return a
    out = []
    i = j = 0
    while j < len(b):
        if i >= len(a):
            return None
        sa, ea = a[i]
        sb, eb = b[j]
        if sa.name < sb.name:
            out.append(a[i])
            i += 1
        elif sa.name == sb.name:
            if ea < eb:
                return None
            if ea > eb:
                out.append((sa, ea - eb))
            i += 1
            j += 1
        else:
            return None
    out.extend(a[i:])
    return tuple(out)


def _mono_gcd(a: Mono, b: Mono) -> Mono:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        sa, ea = a[i]
        sb, eb = b[j]
        if sa.name == sb.name:
            out.append((sa, min(ea, eb)))
            i += 1
            j += 1
        elif sa.name < sb.name:
            i += 1
        else:
            j += 1
    return tuple(out)


class Polynomial:
    """Sparse multivariate polynomial over the rationals."""

    __slots__ = ("terms", "_hash")

    terms: tuple[tuple[Mono, Fraction], ...]

    def __init__(self, terms: Iterable[tuple[Mono, Fraction]] = ()):
        collected: dict[Mono, Fraction] = {}
        for mono, coeff in terms:
            if coeff:
                prev = collected.get(mono)
                total = coeff if prev is None else prev + coeff
                if total:
                    collected[mono] = total
                elif prev is not None:
                    del collected[mono]
        self.terms = tuple(sorted(collected.items(), key=lambda t: _mono_key(t[0])))
        self._hash = None

    @classmethod
    def _raw(cls, sorted_terms: tuple[tuple[Mono, Fraction], ...]) -> "Polynomial":
        p = object.__new__(cls)
        p.terms = sorted_terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        f = Fraction(value)
        if not f:
            return _P_ZERO
        return cls._raw(((_EMPTY_MONO, f),))

    @classmethod
    def variable(cls, sym: Symbol) -> "Polynomial":
        return cls._raw(((((sym, 1),), Fraction(1)),))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0])

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if self.is_constant():
            return self.terms[0][1]
        raise ValueError("not a constant polynomial")

    def leading_coefficient(self) -> Fraction:
        return self.terms[0][1] if self.terms else Fraction(0)

    def total_degree(self) -> int:
        return _mono_degree(self.terms[0][0]) if self.terms else 0

    def symbols(self) -> tuple[Symbol, ...]:
        seen: set[Symbol] = set()
        for mono, _ in self.terms:
            for s, _ in mono:
                seen.add(s)
        return tuple(sorted(seen))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(tuple((m, -c) for m, c in self.terms))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not self.terms:
            return other
        if not other.terms:
            return self
        acc = dict(self.terms)
        for mono, coeff in other.terms:
            prev = acc.get(mono)
            total = coeff if prev is None else prev + coeff
            if total:
                acc[mono] = total
            elif prev is not None:
                del acc[mono]
        return Polynomial._raw(tuple(sorted(acc.items(), key=lambda t: _mono_key(t[0]))))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.terms or not other.terms:
            return _P_ZERO
        acc: dict[Mono, Fraction] = {}
        for ma, ca in self.terms:
            for mb, cb in other.terms:
                m = _mono_mul(ma, mb)
                c = ca * cb
                prev = acc.get(m)
                total = c if prev is None else prev + c
                if total:
                    acc[m] = total
                elif prev is not None:
                    del acc[m]
        return Polynomial._raw(tuple(sorted(acc.items(), key=lambda t: _mono_key(t[0]))))

    def scale(self, factor: Fraction) -> "Polynomial":
        if not factor:
            return _P_ZERO
        return Polynomial._raw(tuple((m, c * factor) for m, c in self.terms))

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative exponent on Polynomial; use RationalExpr")
        result = _P_ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def derivative(self, sym: Symbol) -> "Polynomial":
        acc = []
        for mono, coeff in self.terms:
            for idx, (s, e) in enumerate(mono):
                if s is sym:
                    if e == 1:
                        new_mono = mono[:idx] + mono[idx + 1 :]
                    else:
                        new_mono = mono[:idx] + ((s, e - 1),) + mono[idx + 1 :]
                    acc.append((new_mono, coeff * e))
                    break
        return Polynomial(acc)

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-coefficient, gcd 1."""
        if not self.terms:
            return Fraction(1)
        num_gcd = 0
        den_lcm = 1
        for _, c in self.terms:
            num_gcd = math.gcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def monomial_content(self) -> Mono:
        if not self.terms:
            return _EMPTY_MONO
        acc = self.terms[0][0]
        for mono, _ in self.terms[1:]:
            if not acc:
                break
            acc = _mono_gcd(acc, mono)
        return acc

    def divide_monomial(self, mono: Mono) -> "Polynomial":
        if not mono:
            return self
        out = []
        for m, c in self.terms:
            q = _mono_div(m, mono)
            if q is None:
                raise ValueError("monomial does not divide every term")
            out.append((q, c))
        return Polynomial._raw(tuple(out))

    def div_exact(self, divisor: "Polynomial") -> Optional["Polynomial"]:
        """Exact polynomial quotient, or None when divisor does not divide self."""
        if divisor.is_zero():
            return None
        if self.is_zero():
            return _P_ZERO
        lead_mono, lead_coeff = divisor.terms[0]
        remainder = dict(self.terms)
        quotient: dict[Mono, Fraction] = {}
        while remainder:
            r_mono = min(remainder, key=_mono_key)
            q_mono = _mono_div(r_mono, lead_mono)
            if q_mono is None:
                return None
            q_coeff = remainder[r_mono] / lead_coeff
            quotient[q_mono] = quotient.get(q_mono, Fraction(0)) + q_coeff
            for m, c in divisor.terms:
                prod_mono = _mono_mul(q_mono, m)
                prev = remainder.get(prod_mono, Fraction(0))
                total = prev - q_coeff * c
                if total:
                    remainder[prod_mono] = total
                elif prod_mono in remainder:
                    del remainder[prod_mono]
        return Polynomial(quotient.items())

    def evaluate(self, point: Mapping[Symbol, Fraction]) -> Fraction:
        total = Fraction(0)
        for mono, coeff in self.terms:
            value = coeff
            for s, e in mono:
                if s not in point:
                    raise ValueError(f"no value given for symbol {s.name!r}")
                value *= Fraction(point[s]) ** e
            total += value
        return total

    def __repr__(self) -> str:
        return f"Polynomial<{_poly_str(self)}>"


_P_ZERO = Polynomial._raw(())
_P_ONE = Polynomial._raw(((_EMPTY_MONO, Fraction(1)),))


def _frac_str(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _mono_str(m: Mono) -> str:
    parts = []
    for s, e in m:
        parts.append(s.name if e == 1 else f"{s.name}^{e}")
    return "*".join(parts)


def _term_str(mono: Mono, coeff: Fraction, leading: bool) -> str:
    """One canonical term; `leading` terms carry their own sign."""
    mono_s = _mono_str(mono)
    mag = abs(coeff)
    if not mono_s:
        body = _frac_str(mag)
    elif mag == 1:
        body = mono_s
    else:
        body = f"{_frac_str(mag)}*{mono_s}"
    if leading:
        if coeff < 0:
            # "-u_x" is not grammatical; a leading negative symbol term is
            # printed with an explicit -1 factor so output stays parseable.
            if not mono_s:
                return f"-{body}"
            if mag == 1:
                return f"-1*{mono_s}"
            return f"-{body}"
        return body
    return ("-" if coeff < 0 else "+") + body


def _poly_str(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    pieces = [_term_str(p.terms[0][0], p.terms[0][1], leading=True)]
    for mono, coeff in p.terms[1:]:
        pieces.append(_term_str(mono, coeff, leading=False))
    return "".join(pieces)


def _normalize(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if den.is_zero():
        raise DivisionByZeroError("rational construction")
    if num.is_zero():
        return _P_ZERO, _P_ONE
    mc = _mono_gcd(num.monomial_content(), den.monomial_content())
    if mc:
        num = num.divide_monomial(mc)
        den = den.divide_monomial(mc)
    if not den.is_constant() and not num.is_constant():
        q = num.div_exact(den)
        if q is not None:
            num, den = q, _P_ONE
        else:
            q = den.div_exact(num)
            if q is not None:
                num, den = _P_ONE, q
    num_c = num.content()
    den_c = den.content()
    joint = Fraction(
        math.gcd(num_c.numerator, den_c.numerator),
        (num_c.denominator * den_c.denominator)
        // math.gcd(num_c.denominator, den_c.denominator),
    )
    if joint != 1:
        num = num.scale(1 / joint)
        den = den.scale(1 / joint)
    if den.leading_coefficient() < 0:
        num = -num
        den = -den
    return num, den


class RationalExpr:
    """Exact multivariate rational function; the universal scalar type."""

    __slots__ = ("num", "den", "_hash")

    num: Polynomial
    den: Polynomial

    def __init__(self, num: Polynomial, den: Polynomial = _P_ONE):
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _wrap(cls, num: Polynomial, den: Polynomial) -> "RationalExpr":
        r = object.__new__(cls)
        r.num, r.den = _normalize(num, den)
        r._hash = None
        return r

    @classmethod
    def from_scalar(cls, value: Scalar) -> "RationalExpr":
        return cls._wrap(Polynomial.constant(value), _P_ONE)

    @classmethod
    def from_symbol(cls, sym: Symbol) -> "RationalExpr":
        return cls._wrap(Polynomial.variable(sym), _P_ONE)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den == _P_ONE or self.den.is_constant()

    def equals(self, other) -> bool:
        """Mathematical equality, decided by cross-multiplication."""
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def symbols(self) -> tuple[Symbol, ...]:
        return tuple(sorted(set(self.num.symbols()) | set(self.den.symbols())))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "RationalExpr":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalExpr._wrap(self.num + other.num, self.den)
        return RationalExpr._wrap(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalExpr":
        r = object.__new__(RationalExpr)
        r.num, r.den = -self.num, self.den
        r._hash = None
        return r

    def __sub__(self, other) -> "RationalExpr":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalExpr":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RationalExpr":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalExpr._wrap(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalExpr":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZeroError("div")
        return RationalExpr._wrap(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalExpr":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "RationalExpr":
        if not isinstance(exponent, int):
            raise TypeError("exponent must be an integer")
        if exponent < 0:
            if self.is_zero():
                raise DivisionByZeroError("pow")
            return RationalExpr._wrap(self.den ** (-exponent), self.num ** (-exponent))
        return RationalExpr._wrap(self.num**exponent, self.den**exponent)

    # -- calculus ----------------------------------------------------------

    def derivative(self, sym: Symbol) -> "RationalExpr":
        dn = self.num.derivative(sym)
        if self.den == _P_ONE:
            return RationalExpr._wrap(dn, _P_ONE)
        dd = self.den.derivative(sym)
        if dd.is_zero():
            return RationalExpr._wrap(dn, self.den)
        return RationalExpr._wrap(dn * self.den - self.num * dd, self.den * self.den)

    def substitute(
        self, rules: Mapping[Symbol, "RationalExpr"], *, check: bool = True
    ) -> "RationalExpr":
        """Simultaneous substitution of symbols by rational expressions.

        With ``check`` on, a rule image mentioning any substituted symbol is
        rejected (cyclic rule set).  A substitution that makes the
        denominator identically zero always raises.
        """
        if not rules:
            return self
        images = {s: _coerce(v) for s, v in rules.items()}
        if check:
            keys = set(images)
            for s, image in images.items():
                bad = keys.intersection(image.symbols())
                if bad:
                    names = ", ".join(sorted(b.name for b in bad))
                    raise CyclicSubstitutionError(
                        f"image of {s.name!r} reintroduces substituted symbol(s) {names}"
                    )
        relevant = {s for s in images if s in set(self.symbols())}
        if not relevant:
            return self
        num_image = _poly_substitute(self.num, images)
        den_image = _poly_substitute(self.den, images)
        if den_image.is_zero():
            raise SubstitutionError("substitution makes the denominator identically zero")
        return num_image / den_image

    def evaluate(self, point: Mapping[Symbol, Fraction]) -> Fraction:
        den_v = self.den.evaluate(point)
        if not den_v:
            raise DivisionByZeroError("evaluate")
        return self.num.evaluate(point) / den_v

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        # Structural equality of canonical representations.  Use equals()
        # for mathematical equality of unreduced fractions.
        if isinstance(other, (int, Fraction)):
            other = RationalExpr.from_scalar(other)
        if not isinstance(other, RationalExpr):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        if self.den == _P_ONE:
            return _poly_str(self.num)
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def __repr__(self) -> str:
        return f"RationalExpr<{self}>"


def _poly_substitute(
    p: Polynomial, images: Mapping[Symbol, RationalExpr]
) -> RationalExpr:
    power_cache: dict[tuple[Symbol, int], RationalExpr] = {}

    def sym_power(s: Symbol, e: int) -> RationalExpr:
        key = (s, e)
        got = power_cache.get(key)
        if got is None:
            base = images.get(s)
            if base is None:
                base = RationalExpr.from_symbol(s)
            got = base**e
            power_cache[key] = got
        return got

    total = RationalExpr.from_scalar(0)
    for mono, coeff in p.terms:
        term = RationalExpr.from_scalar(coeff)
        for s, e in mono:
            term = term * sym_power(s, e)
        total = total + term
    return total


def _coerce(value) -> RationalExpr:
    if isinstance(value, RationalExpr):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalExpr.from_scalar(value)
    if isinstance(value, Symbol):
        return RationalExpr.from_symbol(value)
    if isinstance(value, Polynomial):
        return RationalExpr._wrap(value, _P_ONE)
    return NotImplemented


def coerce(value) -> RationalExpr:
    """Public coercion from int, Fraction, Symbol or Polynomial."""
    r = _coerce(value)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as a RationalExpr")
    return r


ZERO = RationalExpr.from_scalar(0)
ONE = RationalExpr.from_scalar(1)


def sym(name: str) -> RationalExpr:
    """Shorthand: the rational expression consisting of one named symbol."""
    return RationalExpr.from_symbol(Symbol(name))


# Operation-style entry points used by the verification drivers.

def arithmetic(a: RationalExpr, b: RationalExpr, op: str) -> RationalExpr:
    """Exact field operation; ``op`` is one of add, sub, mul, div."""
    a, b = coerce(a), coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZeroError("div")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_zero(a: RationalExpr) -> bool:
    return coerce(a).is_zero()


def partial_derivative(a: RationalExpr, s: Symbol) -> RationalExpr:
    return coerce(a).derivative(s)


def substitute(a: RationalExpr, rules: Mapping[Symbol, RationalExpr]) -> RationalExpr:
    return coerce(a).substitute(rules)
