"""Sparse exact multivariate polynomials over the rationals or a prime field.

A polynomial is a dict mapping exponent tuples (one entry per ring variable)
to nonzero coefficients.  Rational coefficients are gmpy2.mpq (always in
lowest terms); prime-field coefficients are plain ints in [0, p).  Values are
immutable after construction and safe to share across threads.

The text grammar used everywhere (problem files, CLI, tests):
terms joined by `+`/`-`; a term is `coef*x1^2*x2` with `*` and `^` optional
where unambiguous; rational coefficients written `p/q`.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import (
    ParseError,
    RingMismatchError,
    SingularMatrixError,
    ZeroPolynomialError,
)

#: default verification prime (30 bits, 2**30 - 35)
DEFAULT_PRIME = 1073741789

#: machine-word bound for prime-field characteristics
PRIME_BOUND = 2**62


class CoefficientField:
    """The rationals (characteristic 0) or a prime field GF(p)."""

    __slots__ = ("kind", "char")

    def __init__(self, char: int = 0):
        if char == 0:
            self.kind = "rationals"
        else:
            if char < 2 or char >= PRIME_BOUND or not _is_prime(char):
                raise ValueError(f"characteristic must be 0 or a word-size prime, got {char}")
            self.kind = "prime-field"
        self.char = char

    def of_int(self, n: int):
        return n % self.char if self.char else mpq(n)

    def of_fraction(self, num: int, den: int):
        if self.char:
            if den % self.char == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {self.char}")
            return num * pow(den, -1, self.char) % self.char
        return mpq(num, den)

    def inv(self, c):
        if self.char:
            return pow(c, -1, self.char)
        return 1 / c

    def coeff_str(self, c) -> str:
        return str(c)

    def __eq__(self, other):
        return isinstance(other, CoefficientField) and self.char == other.char

    def __hash__(self):
        return hash(("CoefficientField", self.char))

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


QQ = CoefficientField(0)


def GF(p: int) -> CoefficientField:
    return CoefficientField(p)


# ---------------------------------------------------------------------------
# monomials: plain exponent tuples

def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple):
    """a / b as a monomial, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_divides(b: tuple, a: tuple) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: tuple) -> int:
    return sum(a)


class MonomialOrder:
    """A global monomial order: grevlex, lex, or a block elimination order.

    A block order compares the exponents of the variables in `block`
    lexicographically first, then the remaining variables by grevlex; any
    monomial involving a block variable exceeds every monomial that does not,
    so Groebner bases under it eliminate the block variables.
    """

    __slots__ = ("kind", "block")

    def __init__(self, kind: str, block: tuple = ()):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.block = tuple(block)

    def key(self, m: tuple):
        """Sort key: larger key = larger monomial."""
        if self.kind == "grevlex":
            return (sum(m), tuple(-e for e in reversed(m)))
        if self.kind == "lex":
            return m
        head = tuple(m[i] for i in self.block)
        rest = [e for i, e in enumerate(m) if i not in self.block]
        return (head, sum(rest), tuple(-e for e in reversed(rest)))

    def neg_key(self, m: tuple):
        """Elementwise negation of key(m): smaller neg_key = larger monomial."""
        if self.kind == "grevlex":
            return (-sum(m), tuple(reversed(m)))
        if self.kind == "lex":
            return tuple(-e for e in m)
        head = tuple(-m[i] for i in self.block)
        rest = [e for i, e in enumerate(m) if i not in self.block]
        return (head, -sum(rest), tuple(reversed(rest)))

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.block == other.block
        )

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        if self.kind == "block":
            return f"block{self.block}"
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(block_vars: Iterable[int]) -> MonomialOrder:
    """Order eliminating the given variable indices (they sort first, by lex)."""
    return MonomialOrder("block", tuple(block_vars))


# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")


class Ring:
    """Ring context: a coefficient field plus an ordered list of variable names."""

    __slots__ = ("field", "names", "nvars", "_name_index")

    def __init__(self, field: CoefficientField, names: Sequence[str]):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)
        if len(set(self.names)) != self.nvars:
            raise ValueError("duplicate variable names")
        self._name_index = {n: i for i, n in enumerate(self.names)}

    def __eq__(self, other):
        return isinstance(other, Ring) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}]"

    # -- constructors ------------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.of_int(c) if isinstance(c, int) else c
        if not c:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.of_int(1)})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        c = self.field.of_int(coeff) if isinstance(coeff, int) else coeff
        if not c:
            return self.zero()
        return Polynomial(self, {tuple(exps): c})

    def from_terms(self, terms: dict) -> "Polynomial":
        clean = {m: c for m, c in terms.items() if c}
        return Polynomial(self, clean)

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    # -- ring surgery ------------------------------------------------------

    def extend(self, extra_names: Sequence[str], front: bool = False) -> "Ring":
        names = (tuple(extra_names) + self.names) if front else (self.names + tuple(extra_names))
        return Ring(self.field, names)

    def drop(self, indices: Iterable[int]) -> "Ring":
        drop = set(indices)
        return Ring(self.field, [n for i, n in enumerate(self.names) if i not in drop])

    def to_field(self, field: CoefficientField) -> "Ring":
        return Ring(field, self.names)

    # -- parsing -----------------------------------------------------------

    def parse(self, text: str) -> "Polynomial":
        """Parse the polynomial grammar; raises ParseError on bad input."""
        tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ParseError(f"cannot tokenize {text[pos:]!r}")
                break
            pos = m.end()
            if m.group("num"):
                tokens.append(("num", m.group("num")))
            elif m.group("name"):
                tokens.append(("name", m.group("name")))
            else:
                tokens.append(("op", m.group("op")))
        if not tokens:
            raise ParseError("empty polynomial text")
        return self._parse_sum(tokens)

    def _parse_sum(self, tokens) -> "Polynomial":
        result = {}
        i = 0
        sign = 1
        first = True
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == "op" and val in "+-":
                sign = -1 if val == "-" else 1
                i += 1
                if i >= len(tokens):
                    raise ParseError("dangling sign")
            elif not first:
                raise ParseError(f"expected + or - before {val!r}")
            i, mono, coeff = self._parse_term(tokens, i)
            if sign < 0:
                coeff = -coeff
            if coeff:
                cur = result.get(mono)
                new = coeff if cur is None else cur + coeff
                if new:
                    result[mono] = new
                elif cur is not None:
                    del result[mono]
            sign = 1
            first = False
        return Polynomial(self, result)

    def _parse_term(self, tokens, i):
        coeff = self.field.of_int(1)
        exps = [0] * self.nvars
        saw_factor = False
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == "op" and val in "+-":
                break
            if kind == "op" and val == "*":
                i += 1
                continue
            if kind == "num":
                if "/" in val:
                    num, den = val.split("/")
                    coeff = coeff * self.field.of_fraction(int(num), int(den))
                else:
                    coeff = coeff * self.field.of_int(int(val))
                i += 1
                saw_factor = True
                continue
            if kind == "name":
                if val not in self._name_index:
                    raise ParseError(f"unknown variable {val!r} (ring has {self.names})")
                idx = self._name_index[val]
                power = 1
                i += 1
                if i < len(tokens) and tokens[i] == ("op", "^"):
                    i += 1
                    if i >= len(tokens) or tokens[i][0] != "num" or "/" in tokens[i][1]:
                        raise ParseError("exponent must be a non-negative integer")
                    power = int(tokens[i][1])
                    i += 1
                exps[idx] += power
                saw_factor = True
                continue
            raise ParseError(f"unexpected token {val!r}")
        if not saw_factor:
            raise ParseError("empty term")
        if self.field.char:
            coeff %= self.field.char
        return i, tuple(exps), coeff


class Polynomial:
    """Immutable sparse polynomial; `terms` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def order_at_origin(self):
        """Min total degree among terms; math.inf for the zero polynomial."""
        if not self.terms:
            return math.inf
        return min(sum(m) for m in self.terms)

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.of_int(0))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.ring.field.char
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            new = c if cur is None else cur + c
            if p:
                new %= p
            if new:
                out[m] = new
            elif cur is not None:
                del out[m]
        return Polynomial(self.ring, out)

    def __neg__(self) -> "Polynomial":
        p = self.ring.field.char
        if p:
            return Polynomial(self.ring, {m: (-c) % p for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.ring.field.char
        out = {}
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                prod = c1 * c2
                cur = out.get(m)
                new = prod if cur is None else cur + prod
                if p:
                    new %= p
                if new:
                    out[m] = new
                elif cur is not None:
                    del out[m]
        return Polynomial(self.ring, out)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        """Multiply by a field element (ints are coerced)."""
        field = self.ring.field
        if isinstance(c, int):
            c = field.of_int(c)
        if not c:
            return self.ring.zero()
        p = field.char
        if p:
            return Polynomial(self.ring, {m: (v * c) % p for m, v in self.terms.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- structure -----------------------------------------------------------

    def leading_term(self, order: MonomialOrder = GREVLEX):
        """(monomial, coefficient) maximal under `order`; error on zero."""
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        key = order.key
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def sorted_terms(self, order: MonomialOrder = GREVLEX, reverse: bool = True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    def differentiate(self, i: int) -> "Polynomial":
        """Formal partial derivative with respect to variable i."""
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range")
        p = self.ring.field.char
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            c2 = c * e % p if p else c * e
            if not c2:
                continue
            m2 = m[:i] + (e - 1,) + m[i + 1 :]
            out[m2] = c2
        return Polynomial(self.ring, out)

    def gradient(self) -> list:
        return [self.differentiate(i) for i in range(self.ring.nvars)]

    def evaluate(self, point: Sequence):
        """Evaluate at a point of field elements / ints."""
        field = self.ring.field
        pt = [field.of_int(c) if isinstance(c, int) else c for c in point]
        p = field.char
        total = field.of_int(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v = v * x**e
            total = total + v
        return total % p if p else total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute images[i] for variable i (images share one ring)."""
        ring = images[0].ring
        powers = [{0: ring.one()} for _ in range(self.ring.nvars)]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        out = ring.zero()
        for m, c in self.terms.items():
            term = ring.from_terms({(0,) * ring.nvars: c})
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def substitute_linear(self, matrix: Sequence[Sequence], translation: Sequence = None) -> "Polynomial":
        """Compose with the affine map x -> M x + t; M must be invertible."""
        n = self.ring.nvars
        field = self.ring.field
        rows = [[field.of_int(c) if isinstance(c, int) else c for c in row] for row in matrix]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("matrix shape must match the variable count")
        if not _invertible(rows, field):
            raise SingularMatrixError("coordinate-change matrix is singular")
        if translation is None:
            translation = [0] * n
        trans = [field.of_int(c) if isinstance(c, int) else c for c in translation]
        images = []
        for i in range(n):
            terms = {}
            for j in range(n):
                if rows[i][j]:
                    e = [0] * n
                    e[j] = 1
                    terms[tuple(e)] = rows[i][j]
            if trans[i]:
                terms[(0,) * n] = trans[i]
            images.append(Polynomial(self.ring, terms))
        return self.substitute(images)

    def translate(self, point: Sequence) -> "Polynomial":
        """Shift coordinates so that `point` moves to the origin: f(x + p)."""
        n = self.ring.nvars
        identity = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return self.substitute_linear(identity, point)

    def map_to_field(self, field: CoefficientField) -> "Polynomial":
        """Reinterpret coefficients in another field (rationals -> GF(p))."""
        ring = self.ring.to_field(field)
        out = {}
        for m, c in self.terms.items():
            if self.ring.field.char == 0 and field.char:
                num, den = int(c.numerator), int(c.denominator)
                c2 = field.of_fraction(num, den)
            elif self.ring.field.char == field.char:
                c2 = c
            else:
                raise ValueError("unsupported field conversion")
            if c2:
                out[m] = c2
        return Polynomial(ring, out)

    # -- text ----------------------------------------------------------------

    def to_text(self, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms(order):
            neg = (self.ring.field.char == 0 and c < 0)
            mag = -c if neg else c
            factors = []
            if mag != 1 or sum(m) == 0:
                factors.append(str(mag))
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.ring.names[i])
                elif e > 1:
                    factors.append(f"{self.ring.names[i]}^{e}")
            text = "*".join(factors)
            if not parts:
                parts.append(f"-{text}" if neg else text)
            else:
                parts.append(f"- {text}" if neg else f"+ {text}")
        return " ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"<{self.to_text()}>"


def _invertible(rows, field) -> bool:
    """Exact Gaussian elimination rank check (destructive on a copy)."""
    n = len(rows)
    m = [list(r) for r in rows]
    p = field.char
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            return False
        m[col], m[pivot] = m[pivot], m[col]
        inv = field.inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] * inv
                if p:
                    factor %= p
                for c in range(col, n):
                    m[r][c] = m[r][c] - factor * m[col][c]
                    if p:
                        m[r][c] %= p
    return True
