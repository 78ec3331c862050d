"""Exact arithmetic: rationals, sparse multivariate polynomials, atom-factored
fractions, and thin helpers around ``flint.fmpq_mat``.

Rationals are :class:`fractions.Fraction`.  Matrices are ``flint.fmpq_mat``;
the helpers below convert at the boundary so that callers only ever see
``Fraction`` values.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Mapping, Sequence

import flint

Rational = Fraction


# --------------------------------------------------------------------------
# rationals
# --------------------------------------------------------------------------

def as_rational(x) -> Fraction:
    """Coerce ints, strings ``"p/q"``, Fractions and fmpq values to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floating-point values are not accepted; pass 'p/q' strings")
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise TypeError(f"cannot interpret {x!r} as an exact rational") from exc


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if any(c in s for c in ".eE"):
        raise ValueError(f"decimal notation not accepted: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc


def format_rational(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_fmpq(x) -> flint.fmpq:
    x = as_rational(x)
    return flint.fmpq(x.numerator, x.denominator)


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------

def identity_matrix(n: int) -> flint.fmpq_mat:
    m = flint.fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def matrix_from_rows(rows: Sequence[Sequence]) -> flint.fmpq_mat:
    n = len(rows)
    k = len(rows[0]) if n else 0
    return flint.fmpq_mat(n, k, [to_fmpq(v) for row in rows for v in row])


def matrix_rows(m: flint.fmpq_mat) -> list[list[Fraction]]:
    r, c = m.nrows(), m.ncols()
    flat = m.entries()
    return [[as_rational(flat[i * c + j]) for j in range(c)] for i in range(r)]


def matrix_column(m: flint.fmpq_mat, j: int) -> list[Fraction]:
    return [as_rational(m[i, j]) for i in range(m.nrows())]


def is_integral(m: flint.fmpq_mat) -> bool:
    return all(e.q == 1 for e in m.entries())


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

def _grlex_key(exp: tuple[int, ...]) -> tuple:
    return (sum(exp), exp)


@total_ordering
class Poly:
    """Sparse polynomial over the rationals in a fixed, ordered variable set.

    Terms map exponent tuples to nonzero Fractions.  Instances are immutable
    and hashable; equality is structural.
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], object] | None = None):
        self.variables = tuple(variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            n = len(self.variables)
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ValueError("exponent length does not match variable count")
                c = as_rational(c)
                if c:
                    clean[exp] = clean.get(exp, Fraction(0)) + c
                    if not clean[exp]:
                        del clean[exp]
        self._terms = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "Poly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], index: int) -> "Poly":
        exp = [0] * len(variables)
        exp[index] = 1
        return cls(variables, {tuple(exp): 1})

    @classmethod
    def _raw(cls, variables, terms) -> "Poly":
        p = cls.__new__(cls)
        p.variables = variables
        p._terms = terms
        p._hash = None
        return p

    # basic queries ------------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def used_variables(self) -> set[int]:
        return {i for e in self._terms for i, k in enumerate(e) if k}

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=_grlex_key)
        return exp, self._terms[exp]

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive with integer coefficients."""
        if not self._terms:
            return Fraction(0)
        from math import gcd

        lcm_den = 1
        for c in self._terms.values():
            lcm_den = lcm_den * c.denominator // gcd(lcm_den, c.denominator)
        g = 0
        for c in self._terms.values():
            g = gcd(g, abs(c.numerator * (lcm_den // c.denominator)))
        return Fraction(g, lcm_den)

    def monomial_gcd(self) -> tuple[int, ...]:
        if not self._terms:
            return (0,) * len(self.variables)
        exps = list(self._terms)
        return tuple(min(e[i] for e in exps) for i in range(len(self.variables)))

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != len(self.variables):
            raise ValueError("point length does not match variable count")
        pt = [as_rational(v) for v in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for v, k in zip(pt, exp):
                if k:
                    term *= v**k
            total += term
        return total

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Poly") -> None:
        if other.variables != self.variables:
            raise ValueError(f"variable-set mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.variables, as_rational(other))

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, Fraction(0)) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = as_rational(other)
            if not c:
                return Poly._raw(self.variables, {})
            return Poly._raw(self.variables, {e: v * c for e, v in self._terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, Fraction(0)) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly._raw(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divexact(self, divisor: "Poly") -> "Poly | None":
        """Quotient if ``divisor`` divides exactly, else None.

        A single polynomial is a Groebner basis of its ideal, so the division
        remainder vanishes exactly when the division is exact.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt_exp, lt_c = divisor.leading()
        rem = dict(self._terms)
        quot: dict[tuple[int, ...], Fraction] = {}
        while rem:
            exp = max(rem, key=_grlex_key)
            if any(a < b for a, b in zip(exp, lt_exp)):
                return None
            q_exp = tuple(a - b for a, b in zip(exp, lt_exp))
            q_c = rem[exp] / lt_c
            quot[q_exp] = q_c
            for e, c in divisor._terms.items():
                te = tuple(a + b for a, b in zip(e, q_exp))
                v = rem.get(te, Fraction(0)) - c * q_c
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return Poly._raw(self.variables, quot)

    # comparison / hashing ------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __lt__(self, other: "Poly") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return tuple((_grlex_key(e), c) for e, c in sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    # printing -------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp in sorted(self._terms, key=_grlex_key, reverse=True):
            c = self._terms[exp]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, exp) if k
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def region_variables(m: int, prefix: str = "b") -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, m + 1))


# --------------------------------------------------------------------------
# atom-factored fractions
# --------------------------------------------------------------------------

class AtomRegistry:
    """Session store of polynomials certified positive on the current region.

    The region variables themselves are registered on creation.  Atoms are
    stored primitive (integer coefficients, positive content removed), so the
    same positive polynomial is never registered twice.
    """

    def __init__(self, variables: Sequence[str]):
        self.variables = tuple(variables)
        self.atoms: list[Poly] = []
        self._index: dict[Poly, int] = {}
        for i in range(len(self.variables)):
            self._add(Poly.var(self.variables, i))

    def _add(self, p: Poly) -> int:
        if p in self._index:
            return self._index[p]
        self._index[p] = len(self.atoms)
        self.atoms.append(p)
        return self._index[p]

    def __len__(self) -> int:
        return len(self.atoms)

    def atom(self, idx: int) -> Poly:
        return self.atoms[idx]

    def index_of(self, p: Poly) -> int | None:
        return self._index.get(p)

    # construction helpers ---------------------------------------------------
    def const(self, c) -> "AtomFraction":
        return AtomFraction(self, Poly.constant(self.variables, c), ())

    def var(self, i: int) -> "AtomFraction":
        return AtomFraction(self, Poly.var(self.variables, i), ())

    def poly(self, p: Poly) -> "AtomFraction":
        return AtomFraction(self, p, ())

    def factor(self, p: Poly, *, register: bool) -> tuple[Fraction, list[int]]:
        """Split ``p`` as ``c * prod(atoms)``.

        Raises ValueError if an uncertified nonconstant factor remains and
        ``register`` is false.  With ``register`` the leftover is taken to be
        positive (times the sign of ``c``) and added to the registry.
        """
        if p.is_zero():
            raise ZeroDivisionError("cannot factor the zero polynomial")
        ids: list[int] = []
        mono = p.monomial_gcd()
        if any(mono):
            mpoly = Poly._raw(p.variables, {mono: Fraction(1)})
            p = p.divexact(mpoly)
            for i, k in enumerate(mono):
                ids.extend([i] * k)
        progress = True
        while progress and not p.is_constant():
            progress = False
            for idx, atom in enumerate(self.atoms):
                if atom.degree() < 1 or atom.degree() > p.degree():
                    continue
                q = p.divexact(atom)
                if q is not None:
                    ids.append(idx)
                    p = q
                    progress = True
                    break
        if p.is_constant():
            return p.constant_value(), sorted(ids)
        if not register:
            raise ValueError(f"factor {p} is not certified positive")
        # the atoms already split off are positive, so the leftover is too
        c = p.content()
        prim = p * (1 / c)
        ids.append(self._add(prim))
        return c, sorted(ids)

    def certify(self, x: "AtomFraction") -> "AtomFraction":
        """Declare ``x`` positive; its numerator is absorbed into atoms."""
        if x.registry is not self:
            raise ValueError("fraction belongs to another registry")
        c, ids = self.factor(x.numerator, register=True)
        if c <= 0:
            # prim leftover was registered with the wrong orientation
            raise ValueError(f"cannot certify {x}: sign of constant factor is {c}")
        num = Poly.constant(self.variables, c)
        for i in ids:
            num = num * self.atoms[i]
        return AtomFraction(self, num, x.den)


class AtomFraction:
    """Value ``numerator / prod(atoms[i] for i in den)`` over a registry.

    ``den`` is a sorted tuple of atom indices (a multiset).  No general GCD
    is computed; after every operation the numerator is trial-divided by the
    atoms present in the denominator.
    """

    __slots__ = ("registry", "numerator", "den")

    def __init__(self, registry: AtomRegistry, numerator: Poly, den: Iterable[int] = ()):
        self.registry = registry
        self.numerator = numerator
        self.den = tuple(sorted(den))
        if numerator.variables != registry.variables:
            raise ValueError("variable-set mismatch")
        n = len(registry)
        for i in self.den:
            if not 0 <= i < n:
                raise ValueError(f"atom {i} is not registered")

    # helpers ---------------------------------------------------------------
    def _wrap(self, other) -> "AtomFraction":
        if isinstance(other, AtomFraction):
            if other.registry is not self.registry:
                raise ValueError("fractions from different registries")
            return other
        if isinstance(other, Poly):
            return self.registry.poly(other)
        return self.registry.const(as_rational(other))

    def _atoms_poly(self, ids: Iterable[int]) -> Poly:
        p = Poly.constant(self.registry.variables, 1)
        for i in ids:
            p = p * self.registry.atoms[i]
        return p

    @staticmethod
    def _reduce(registry: AtomRegistry, num: Poly, den: Counter) -> "AtomFraction":
        if num.is_zero():
            return AtomFraction(registry, num, ())
        den = Counter(den)
        for idx in sorted(den):
            atom = registry.atoms[idx]
            while den[idx]:
                q = num.divexact(atom)
                if q is None:
                    break
                num = q
                den[idx] -= 1
        return AtomFraction(registry, num, den.elements())

    # arithmetic ------------------------------------------------------------
    def _addsub(self, other, sign: int) -> "AtomFraction":
        other = self._wrap(other)
        d1, d2 = Counter(self.den), Counter(other.den)
        lcm = d1 | d2
        n1 = self.numerator * self._atoms_poly((lcm - d1).elements())
        n2 = other.numerator * self._atoms_poly((lcm - d2).elements())
        return self._reduce(self.registry, n1 + n2 if sign > 0 else n1 - n2, lcm)

    def __add__(self, other) -> "AtomFraction":
        return self._addsub(other, 1)

    __radd__ = __add__

    def __sub__(self, other) -> "AtomFraction":
        return self._addsub(other, -1)

    def __rsub__(self, other) -> "AtomFraction":
        return self._wrap(other)._addsub(self, -1)

    def __neg__(self) -> "AtomFraction":
        return AtomFraction(self.registry, -self.numerator, self.den)

    def __mul__(self, other) -> "AtomFraction":
        other = self._wrap(other)
        return self._reduce(
            self.registry, self.numerator * other.numerator, Counter(self.den) + Counter(other.den)
        )

    __rmul__ = __mul__

    def invert(self) -> "AtomFraction":
        if self.numerator.is_zero():
            raise ZeroDivisionError("inversion of the zero polynomial")
        c, ids = self.registry.factor(self.numerator, register=False)
        num = self._atoms_poly(self.den) * (1 / c)
        return self._reduce(self.registry, num, Counter(ids))

    def __truediv__(self, other) -> "AtomFraction":
        return self * self._wrap(other).invert()

    def __rtruediv__(self, other) -> "AtomFraction":
        return self._wrap(other) * self.invert()

    def __pow__(self, k: int) -> "AtomFraction":
        if k < 0:
            return self.invert() ** (-k)
        result = self.registry.const(1)
        for _ in range(k):
            result = result * self
        return result

    # queries ---------------------------------------------------------------
    def denominator_poly(self) -> Poly:
        return self._atoms_poly(self.den)

    def denominator_atoms(self) -> list[Poly]:
        return [self.registry.atoms[i] for i in self.den]

    def is_polynomial(self) -> bool:
        return not self.den

    def evaluate(self, point: Sequence) -> Fraction:
        num = self.numerator.evaluate(point)
        den = Fraction(1)
        for i in self.den:
            den *= self.registry.atoms[i].evaluate(point)
        return num / den

    def used_variables(self) -> set[int]:
        out = set(self.numerator.used_variables())
        for i in self.den:
            out |= self.registry.atoms[i].used_variables()
        return out

    def same_value(self, other: "AtomFraction") -> bool:
        """Rational-function equality by cross multiplication."""
        other = self._wrap(other)
        return self.numerator * other.denominator_poly() == other.numerator * self.denominator_poly()

    def __eq__(self, other) -> bool:
        if isinstance(other, AtomFraction):
            return (
                self.registry is other.registry
                and self.numerator == other.numerator
                and self.den == other.den
            )
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.numerator, self.den))

    def __str__(self) -> str:
        if not self.den:
            return str(self.numerator)
        atoms = Counter(self.den)
        dparts = []
        for idx in sorted(atoms):
            a = str(self.registry.atoms[idx])
            if len(self.registry.atoms[idx]._terms) > 1:
                a = f"({a})"
            dparts.append(a if atoms[idx] == 1 else f"{a}^{atoms[idx]}")
        num = str(self.numerator)
        if len(self.numerator._terms) > 1:
            num = f"({num})"
        return f"{num}/{'*'.join(dparts) if len(dparts) == 1 else '(' + '*'.join(dparts) + ')'}"

    def __repr__(self) -> str:
        return f"AtomFraction({str(self)!r})"


def combine(xs: Sequence[AtomFraction], op: str, k: int | None = None) -> AtomFraction:
    """Functional front end: ``op`` in {add, sub, mul, invert, pow}."""
    if op == "add":
        out = xs[0]
        for x in xs[1:]:
            out = out + x
        return out
    if op == "sub":
        out = xs[0]
        for x in xs[1:]:
            out = out - x
        return out
    if op == "mul":
        out = xs[0]
        for x in xs[1:]:
            out = out * x
        return out
    if op == "invert":
        (x,) = xs
        return x.invert()
    if op == "pow":
        (x,) = xs
        if k is None:
            raise ValueError("pow needs an exponent")
        return x**k
    raise ValueError(f"unknown operation {op!r}")
