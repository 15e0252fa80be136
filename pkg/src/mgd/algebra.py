"""Exact arithmetic for the state-sum engine.

Four small ring types, all immutable and hashable:

* :class:`Poly4` -- polynomials in Z[x, y, z, w] with integer
  coefficients; the home of the raw state sum.
* :class:`LaurentInt` -- Laurent polynomials Z[z, z^-1].
* :class:`LaurentRat` -- Laurent polynomials with dyadic rational
  coefficients (denominators restricted to powers of two).
* :class:`SqrtGauss` -- elements g * (sqrt2)^(-k) of Z[i][1/sqrt2],
  with g a Gaussian integer.

Evaluation maps from Poly4 into the three scalar/Laurent targets live
here too, since they are ring homomorphisms and belong with the rings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Exp4 = tuple[int, int, int, int]

_VARS = ("x", "y", "z", "w")


def _fmt_coeff_term(coeff, body: str) -> str:
    if body == "":
        return str(coeff)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{coeff}{body}"


def _join_terms(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class Poly4:
    """Sparse exact polynomial in Z[x, y, z, w].

    Terms map exponent 4-tuples (a, b, c, d) to nonzero integers; zero
    coefficients are never stored, so equality is plain dict equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exp4, int] | None = None):
        clean: dict[Exp4, int] = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff:
                    a, b, c, d = exp
                    clean[(a, b, c, d)] = clean.get((a, b, c, d), 0) + coeff
                    if not clean[(a, b, c, d)]:
                        del clean[(a, b, c, d)]
        self._terms = clean

    @classmethod
    def zero(cls) -> Poly4:
        return cls()

    @classmethod
    def one(cls) -> Poly4:
        return cls({(0, 0, 0, 0): 1})

    @classmethod
    def variable(cls, name: str) -> Poly4:
        i = _VARS.index(name)
        exp = [0, 0, 0, 0]
        exp[i] = 1
        return cls({tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Exp4, coeff: int = 1) -> Poly4:
        return cls({exp: coeff})

    def terms(self) -> dict[Exp4, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly4({(0, 0, 0, 0): other})
        if not isinstance(other, Poly4):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: Poly4 | int) -> Poly4:
        if isinstance(other, int):
            other = Poly4({(0, 0, 0, 0): other})
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            s = out.get(exp, 0) + coeff
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        p = Poly4.__new__(Poly4)
        p._terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> Poly4:
        p = Poly4.__new__(Poly4)
        p._terms = {exp: -c for exp, c in self._terms.items()}
        return p

    def __sub__(self, other: Poly4 | int) -> Poly4:
        return self + (-other if isinstance(other, Poly4) else -other)

    def __mul__(self, other: Poly4 | int) -> Poly4:
        if isinstance(other, int):
            if not other:
                return Poly4()
            p = Poly4.__new__(Poly4)
            p._terms = {exp: c * other for exp, c in self._terms.items()}
            return p
        out: dict[Exp4, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                s = out.get(exp, 0) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    del out[exp]
        p = Poly4.__new__(Poly4)
        p._terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly4:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly4.one()
        for _ in range(n):
            out = out * self
        return out

    def render(self) -> str:
        """Canonical text form: terms in descending lexicographic
        exponent order, e.g. ``2x^2 + 2xz``."""
        parts = []
        for exp in sorted(self._terms, reverse=True):
            body = ""
            for name, e in zip(_VARS, exp):
                if e == 1:
                    body += name
                elif e > 1:
                    body += f"{name}^{e}"
            parts.append(_fmt_coeff_term(self._terms[exp], body))
        return _join_terms(parts)

    def __repr__(self) -> str:
        return f"Poly4({self.render()})"


class LaurentInt:
    """Laurent polynomial in Z[z, z^-1], sparse over integer exponents."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff:
                    clean[exp] = clean.get(exp, 0) + coeff
                    if not clean[exp]:
                        del clean[exp]
        self._terms = clean

    @classmethod
    def zero(cls) -> LaurentInt:
        return cls()

    @classmethod
    def constant(cls, c: int) -> LaurentInt:
        return cls({0: c})

    @classmethod
    def z_power(cls, n: int) -> LaurentInt:
        return cls({n: 1})

    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentInt.constant(other)
        if not isinstance(other, LaurentInt):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: LaurentInt | int) -> LaurentInt:
        if isinstance(other, int):
            other = LaurentInt.constant(other)
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            s = out.get(exp, 0) + coeff
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        r = LaurentInt.__new__(LaurentInt)
        r._terms = out
        return r

    __radd__ = __add__

    def __neg__(self) -> LaurentInt:
        r = LaurentInt.__new__(LaurentInt)
        r._terms = {e: -c for e, c in self._terms.items()}
        return r

    def __sub__(self, other: LaurentInt | int) -> LaurentInt:
        if isinstance(other, int):
            other = LaurentInt.constant(other)
        return self + (-other)

    def __mul__(self, other: LaurentInt | int) -> LaurentInt:
        if isinstance(other, int):
            other = LaurentInt.constant(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                s = out.get(e1 + e2, 0) + c1 * c2
                if s:
                    out[e1 + e2] = s
                else:
                    del out[e1 + e2]
        r = LaurentInt.__new__(LaurentInt)
        r._terms = out
        return r

    __rmul__ = __mul__

    def render(self) -> str:
        """Terms by ascending exponent, e.g. ``2z^-1 + 3 + z^2``."""
        parts = []
        for exp in sorted(self._terms):
            body = "" if exp == 0 else ("z" if exp == 1 else f"z^{exp}")
            parts.append(_fmt_coeff_term(self._terms[exp], body))
        return _join_terms(parts)

    def __repr__(self) -> str:
        return f"LaurentInt({self.render()})"


def _require_dyadic(f: Fraction) -> Fraction:
    d = f.denominator
    while d % 2 == 0:
        d //= 2
    if d != 1:
        raise ValueError(f"non-dyadic coefficient {f}")
    return f


class LaurentRat:
    """Laurent polynomial with dyadic rational coefficients.

    Coefficients are `Fraction` values whose denominators are powers of
    two; `Fraction` keeps them in lowest terms automatically.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Fraction | int] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                f = Fraction(coeff)
                if f:
                    s = clean.get(exp, Fraction(0)) + f
                    if s:
                        clean[exp] = _require_dyadic(s)
                    else:
                        del clean[exp]
        self._terms = clean

    @classmethod
    def zero(cls) -> LaurentRat:
        return cls()

    @classmethod
    def constant(cls, c: Fraction | int) -> LaurentRat:
        return cls({0: Fraction(c)})

    @classmethod
    def from_laurent_int(cls, p: LaurentInt) -> LaurentRat:
        return cls({e: Fraction(c) for e, c in p.terms().items()})

    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentRat.constant(other)
        if isinstance(other, LaurentInt):
            other = LaurentRat.from_laurent_int(other)
        if not isinstance(other, LaurentRat):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: LaurentRat | int) -> LaurentRat:
        if isinstance(other, (int, Fraction)):
            other = LaurentRat.constant(other)
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            s = out.get(exp, Fraction(0)) + coeff
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        r = LaurentRat.__new__(LaurentRat)
        r._terms = out
        return r

    __radd__ = __add__

    def __neg__(self) -> LaurentRat:
        r = LaurentRat.__new__(LaurentRat)
        r._terms = {e: -c for e, c in self._terms.items()}
        return r

    def __sub__(self, other: LaurentRat | int) -> LaurentRat:
        if isinstance(other, (int, Fraction)):
            other = LaurentRat.constant(other)
        return self + (-other)

    def __mul__(self, other: LaurentRat | int | Fraction) -> LaurentRat:
        if isinstance(other, (int, Fraction)):
            other = LaurentRat.constant(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                s = out.get(e1 + e2, Fraction(0)) + c1 * c2
                if s:
                    out[e1 + e2] = s
                else:
                    del out[e1 + e2]
        r = LaurentRat.__new__(LaurentRat)
        r._terms = out
        return r

    __rmul__ = __mul__

    def render(self) -> str:
        parts = []
        for exp in sorted(self._terms):
            body = "" if exp == 0 else ("z" if exp == 1 else f"z^{exp}")
            parts.append(_fmt_coeff_term(self._terms[exp], body))
        return _join_terms(parts)

    def __repr__(self) -> str:
        return f"LaurentRat({self.render()})"


class SqrtGauss:
    """Exact element g * (sqrt2)^(-k) of Z[i][1/sqrt2].

    ``g`` is a Gaussian integer stored as (re, im) and ``k`` an integer.
    Canonical form: g == 0 forces k == 0; otherwise factors of 2 are
    pulled out of g two sqrt2's at a time until 2 does not divide g.
    Uniqueness follows since g*sqrt2 is never a Gaussian integer for
    such g, so equality is componentwise.

    Addition requires the two canonical exponents to agree mod 2; a sum
    with mismatched parity (e.g. 1 + 1/sqrt2) leaves the representable
    set and raises ValueError.  Every state-sum evaluation is a sum of
    monomial values of equal total degree, so this never triggers in
    invariant computations.
    """

    __slots__ = ("re", "im", "k")

    def __init__(self, re: int, im: int = 0, k: int = 0):
        while re % 2 == 0 and im % 2 == 0 and (re or im):
            re //= 2
            im //= 2
            k -= 2
        if not (re or im):
            k = 0
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "k", k)

    def __setattr__(self, *a):
        raise AttributeError("SqrtGauss is immutable")

    @classmethod
    def zero(cls) -> SqrtGauss:
        return cls(0, 0, 0)

    @classmethod
    def one(cls) -> SqrtGauss:
        return cls(1, 0, 0)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = SqrtGauss(other)
        if isinstance(other, complex):
            other = SqrtGauss(int(other.real), int(other.imag))
        if not isinstance(other, SqrtGauss):
            return NotImplemented
        return (self.re, self.im, self.k) == (other.re, other.im, other.k)

    def __hash__(self) -> int:
        return hash((self.re, self.im, self.k))

    def __add__(self, other: SqrtGauss | int) -> SqrtGauss:
        if isinstance(other, int):
            other = SqrtGauss(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if (self.k - other.k) % 2 != 0:
            raise ValueError(
                "sum leaves Z[i][1/sqrt2] normal form: "
                f"exponents {self.k} and {other.k} differ in parity"
            )
        k = max(self.k, other.k)
        s1 = 2 ** ((k - self.k) // 2)
        s2 = 2 ** ((k - other.k) // 2)
        return SqrtGauss(self.re * s1 + other.re * s2, self.im * s1 + other.im * s2, k)

    __radd__ = __add__

    def __neg__(self) -> SqrtGauss:
        return SqrtGauss(-self.re, -self.im, self.k)

    def __sub__(self, other: SqrtGauss | int) -> SqrtGauss:
        if isinstance(other, int):
            other = SqrtGauss(other)
        return self + (-other)

    def __mul__(self, other: SqrtGauss | int) -> SqrtGauss:
        if isinstance(other, int):
            other = SqrtGauss(other)
        return SqrtGauss(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.k + other.k,
        )

    __rmul__ = __mul__

    def render(self) -> str:
        """Display form ``a+bi / sqrt2^k`` with k shifted to be >= 0."""
        re, im, k = self.re, self.im, self.k
        while k < 0:
            re *= 2
            im *= 2
            k += 2
        if im == 0:
            g = str(re)
        elif re == 0:
            g = {1: "i", -1: "-i"}.get(im, f"{im}i")
        else:
            istr = {1: "+i", -1: "-i"}.get(im, f"{im:+}i")
            g = f"{re}{istr}"
        return f"{g} / sqrt2^{k}"

    def __repr__(self) -> str:
        return f"SqrtGauss({self.render()})"


# ---------------------------------------------------------------------------
# Evaluation maps out of Poly4.

def poly4_eval_laurent(p: Poly4) -> LaurentInt:
    """Evaluate at x=0, y=0, z=z, w=z^-1.

    Monomials containing x or y vanish; x^0 y^0 z^c w^d maps to z^(c-d).
    """
    out: dict[int, int] = {}
    for (a, b, c, d), coeff in p.terms().items():
        if a or b:
            continue
        e = c - d
        s = out.get(e, 0) + coeff
        if s:
            out[e] = s
        else:
            del out[e]
    return LaurentInt(out)


def poly4_eval_int(p: Poly4) -> int:
    """Evaluate at x=1, y=1, z=0, w=0."""
    total = 0
    for (a, b, c, d), coeff in p.terms().items():
        if c == 0 and d == 0:
            total += coeff
    return total


# i^c as a Gaussian integer (re, im)
_I_POW = ((1, 0), (0, 1), (-1, 0), (0, -1))


def poly4_eval_sqrtgauss(p: Poly4) -> SqrtGauss:
    """Evaluate at x = y = 1/sqrt2, z = i/sqrt2, w = -i/sqrt2.

    The monomial x^a y^b z^c w^d maps to i^c (-i)^d (sqrt2)^-(a+b+c+d).
    """
    total = SqrtGauss.zero()
    for (a, b, c, d), coeff in p.terms().items():
        pre, pim = _I_POW[c % 4]
        qre, qim = _I_POW[(-d) % 4]
        re = pre * qre - pim * qim
        im = pre * qim + pim * qre
        total = total + SqrtGauss(coeff * re, coeff * im, a + b + c + d)
    return total


def sqrtgauss_scale(v: SqrtGauss, t: int) -> SqrtGauss:
    """Multiply by ((1+i)/sqrt2)^t for any integer t."""
    if t >= 0:
        unit = SqrtGauss(1, 1, 1)
        steps = t
    else:
        unit = SqrtGauss(1, -1, 1)  # ((1+i)/sqrt2)^-1 = (1-i)/sqrt2
        steps = -t
    for _ in range(steps):
        v = v * unit
    return v


def poly4_eval_classical(p: Poly4) -> LaurentRat:
    """Substitute x = y = (z+z^-1)/2, z = (z-z^-1)/2, w = -(z-z^-1)/2."""
    half = Fraction(1, 2)
    u = LaurentRat({1: half, -1: half})        # (z+z^-1)/2
    v = LaurentRat({1: half, -1: -half})       # (z-z^-1)/2
    total = LaurentRat.zero()
    # cache powers; state sums have small homogeneous degree
    pow_u: dict[int, LaurentRat] = {0: LaurentRat.constant(1)}
    pow_v: dict[int, LaurentRat] = {0: LaurentRat.constant(1)}

    def upow(n: int) -> LaurentRat:
        while n not in pow_u:
            m = max(pow_u)
            pow_u[m + 1] = pow_u[m] * u
        return pow_u[n]

    def vpow(n: int) -> LaurentRat:
        while n not in pow_v:
            m = max(pow_v)
            pow_v[m + 1] = pow_v[m] * v
        return pow_v[n]

    for (a, b, c, d), coeff in p.terms().items():
        sign = -1 if d % 2 else 1
        term = upow(a + b) * vpow(c + d) * Fraction(coeff * sign)
        total = total + term
    return total
