"""Groebner bases and the numerical invariants derived from them.

The engine is plain Buchberger with the normal pair-selection strategy,
Gebauer-Moeller pair elimination, and full auto-reduction; basis elements are
kept monic.  Hilbert series of homogeneous ideals are computed from the
leading-term ideal by the standard monomial-ideal recursion, which yields the
projective dimension, the degree of the top-dimensional part, and the Hilbert
polynomial.  Colength (vector-space dimension of the quotient) is counted from
the Groebner staircase.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from gmpy2 import mpq

from .errors import NonHomogeneousError
from .poly import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    Ring,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: no lead divides another, tails reduced.

    Generators are normalized canonically: monic over a prime field,
    primitive integer with positive leading coefficient over the rationals.
    """

    ring: Ring
    order: MonomialOrder
    polys: tuple

    @property
    def leads(self) -> tuple:
        return tuple(g.leading_term(self.order)[0] for g in self.polys)

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant() and bool(self.polys[0])

    def is_zero(self) -> bool:
        return not self.polys

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(f, self)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.order == other.order
            and self.polys == other.polys
        )

    def __hash__(self):
        return hash((self.ring, self.order, self.polys))


def _monic(f: Polynomial, order: MonomialOrder) -> Polynomial:
    _, c = f.leading_term(order)
    field = f.ring.field
    if field.char:
        if c == 1:
            return f
        return f.scale(field.inv(c))
    if c == 1:
        return f
    return f.scale(1 / c)


def _primitive(f: Polynomial, order: MonomialOrder) -> Polynomial:
    """Integer coefficients with content 1 and positive leading coefficient.

    Controls coefficient growth over the rationals; over a prime field this
    is plain monic normalization.
    """
    if f.ring.field.char:
        return _monic(f, order)
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // math.gcd(den, int(c.denominator))
    num = 0
    for c in f.terms.values():
        num = math.gcd(num, abs(int(c.numerator * den // c.denominator)))
    scale = mpq(den, num if num else 1)
    if f.leading_term(order)[1] < 0:
        scale = -scale
    return f.scale(scale) if scale != 1 else f


def _reduce_terms(f: Polynomial, reducers: list, order: MonomialOrder) -> Polynomial:
    """Full normal form of f against `reducers` = [(lead, 1/leadcoeff, terms)],
    sorted by preference."""
    ring = f.ring
    p = ring.field.char
    neg_key = order.neg_key
    work = dict(f.terms)
    out = {}
    heap = []
    keyed = {}
    for m in work:
        nk = neg_key(m)
        keyed[nk] = m
        heap.append(nk)
    heapq.heapify(heap)
    while heap:
        nk = heapq.heappop(heap)
        m = keyed.pop(nk)
        c = work.get(m)
        if not c:
            work.pop(m, None)
            continue
        gterms = None
        for lead, lcinv, gt in reducers:
            ok = True
            for x, y in zip(m, lead):
                if x < y:
                    ok = False
                    break
            if ok:
                glead = lead
                ginv = lcinv
                gterms = gt
                break
        if gterms is None:
            out[m] = c
            del work[m]
            continue
        u = tuple(x - y for x, y in zip(m, glead))
        del work[m]
        factor = c * ginv
        if p:
            factor %= p
        for tm, tc in gterms.items():
            if tm == glead:
                continue
            mm = tuple(x + y for x, y in zip(u, tm))
            delta = factor * tc
            cur = work.get(mm)
            new = -delta if cur is None else cur - delta
            if p:
                new %= p
            if new:
                if cur is None:
                    nk2 = neg_key(mm)
                    if nk2 not in keyed:
                        keyed[nk2] = mm
                        heapq.heappush(heap, nk2)
                work[mm] = new
            elif cur is not None:
                del work[mm]
    return Polynomial(ring, out)


def _prep(polys_with_leads, field) -> list:
    """Build sorted (lead, 1/leadcoeff, terms) reducer triples."""
    out = []
    for lead, f in polys_with_leads:
        out.append((lead, field.inv(f.terms[lead]), f.terms))
    out.sort(key=lambda t: (sum(t[0]), len(t[2])))
    return out


def normal_form(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """Remainder of f modulo the basis: no term divisible by a basis lead."""
    if f.ring != basis.ring:
        from .errors import RingMismatchError

        raise RingMismatchError(f"{f.ring} vs {basis.ring}")
    if not f.terms or not basis.polys:
        return f
    reducers = _prep(
        [(g.leading_term(basis.order)[0], g) for g in basis.polys], basis.ring.field
    )
    return _reduce_terms(f, reducers, basis.order)


def groebner_of(ring: Ring, gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens` in `ring`."""
    gens = [g for g in gens if g]
    if not gens:
        return GroebnerBasis(ring, order, ())
    key = order.key

    basis: list = []          # (lead, poly); append-only
    alive: list = []          # bools, per basis index
    pairs: list = []          # heap of (selection key, i, j, lcm)
    reducer_cache: list = []  # sorted [(lead, terms)] of the alive elements

    def reducers() -> list:
        if reducer_cache:
            return reducer_cache[0]
        view = _prep(
            [(lead, f) for i, (lead, f) in enumerate(basis) if alive[i]],
            ring.field,
        )
        reducer_cache.append(view)
        return view

    def add_element(f: Polynomial):
        # Gebauer-Moeller update, following Becker-Weispfenning's UPDATE
        f = _primitive(f, order)
        lead = f.leading_term(order)[0]
        new_idx = len(basis)
        lcms = {i: mono_lcm(li, lead) for i, (li, _) in enumerate(basis) if alive[i]}
        pending = sorted(lcms, key=lambda i: (sum(lcms[i]), key(lcms[i])))
        kept: list = []
        for pos, i in enumerate(pending):
            l = lcms[i]
            coprime = mono_mul(basis[i][0], lead) == l
            if not coprime:
                blocked = False
                for j in kept:
                    if mono_divides(lcms[j], l):
                        blocked = True
                        break
                if not blocked:
                    for j in pending[pos + 1 :]:
                        if mono_divides(lcms[j], l):
                            blocked = True
                            break
                if blocked:
                    continue
            kept.append(i)
        survivors = [i for i in kept if mono_mul(basis[i][0], lead) != lcms[i]]
        # prune old pairs whose lcm the new lead properly refines
        retained = []
        for entry in pairs:
            _, i, j, l = entry
            if (
                mono_divides(lead, l)
                and mono_lcm(basis[i][0], lead) != l
                and mono_lcm(basis[j][0], lead) != l
            ):
                continue
            retained.append(entry)
        pairs.clear()
        pairs.extend(retained)
        heapq.heapify(pairs)
        for i in survivors:
            l = lcms[i]
            heapq.heappush(pairs, ((sum(l), key(l)), i, new_idx, l))
        # retire basis elements whose lead the new lead divides
        for i, (li, _) in enumerate(basis):
            if alive[i] and mono_divides(lead, li):
                alive[i] = False
        basis.append((lead, f))
        alive.append(True)
        reducer_cache.clear()

    char = ring.field.char
    for g in sorted(gens, key=lambda f: (f.total_degree(), len(f.terms))):
        r = _reduce_terms(g, reducers(), order) if basis else g
        if r:
            add_element(r)

    while pairs:
        _, i, j, l = heapq.heappop(pairs)
        li, fi = basis[i]
        lj, fj = basis[j]
        ui = mono_div(l, li)
        uj = mono_div(l, lj)
        # cross-scaled S-polynomial keeps coefficients integral
        ci = fj.terms[lj]
        cj = fi.terms[li]
        terms = {}
        for tm, tc in fi.terms.items():
            v = tc * ci
            terms[mono_mul(ui, tm)] = v % char if char else v
        for tm, tc in fj.terms.items():
            mm = mono_mul(uj, tm)
            cur = terms.get(mm)
            delta = tc * cj
            new = -delta if cur is None else cur - delta
            if char:
                new %= char
            if new:
                terms[mm] = new
            elif cur is not None:
                del terms[mm]
        spoly = Polynomial(ring, terms)
        if not spoly:
            continue
        r = _reduce_terms(spoly, reducers(), order)
        if r:
            add_element(r)

    # auto-reduction: reduce every surviving element against the others,
    # twice, so tails are in normal form against the final lead set
    final = [basis[i][1] for i in range(len(basis)) if alive[i]]
    for _ in range(2):
        tagged = [(f.leading_term(order)[0], f) for f in final]
        tagged.sort(key=lambda t: (sum(t[0]), len(t[1].terms)))
        prepared = [(lead, ring.field.inv(f.terms[lead]), f.terms) for lead, f in tagged]
        reduced = []
        for idx, (lead, f) in enumerate(tagged):
            others = prepared[:idx] + prepared[idx + 1 :]
            r = _reduce_terms(f, others, order) if others else f
            if r:
                reduced.append(_primitive(r, order))
        final = reduced
    final.sort(key=lambda f: key(f.leading_term(order)[0]))
    return GroebnerBasis(ring, order, tuple(final))


# ---------------------------------------------------------------------------
# Hilbert series of homogeneous ideals


@dataclass(frozen=True)
class HilbertData:
    """Projective dimension, top-dimensional degree, and Hilbert polynomial.

    dimension is the projective dimension of V(I) (-1 when empty); degree is
    the length-weighted degree of the top-dimensional part; hilbert_polynomial
    lists exact rational coefficients, constant first.
    """

    dimension: int
    degree: int
    hilbert_polynomial: tuple

    def evaluate(self, t: int):
        return sum(c * t**i for i, c in enumerate(self.hilbert_polynomial))

    @property
    def arithmetic_genus(self):
        """(-1)^dim (HP(0) - 1); meaningful for projective schemes."""
        if self.dimension < 0:
            return None
        chi0 = self.evaluate(0)
        return (-1) ** self.dimension * (chi0 - 1)


def _minimalize(monos: list) -> list:
    out = []
    for m in sorted(monos, key=sum):
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _hilbert_numerator(gens: list, nvars: int) -> list:
    """Numerator of the Hilbert series of S/(gens) over (1-t)^nvars."""
    gens = _minimalize(gens)
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    simple = [g for g in gens if sum(1 for e in g if e) == 1]
    if len(simple) == len(gens):
        result = [1]
        for g in gens:
            d = sum(g)
            factor = [1] + [0] * (d - 1) + [-1]
            result = _poly_mul(result, factor)
        return result
    # pivot on the most frequent variable among the non-simple generators
    counts = [0] * nvars
    for g in gens:
        if sum(1 for e in g if e) > 1:
            for i, e in enumerate(g):
                if e:
                    counts[i] += 1
    j = counts.index(max(counts))
    pivot = tuple(1 if i == j else 0 for i in range(nvars))
    plus = [g for g in gens if g[j] == 0] + [pivot]
    colon = [g[:j] + (g[j] - 1,) + g[j + 1 :] if g[j] else g for g in gens]
    a = _hilbert_numerator(plus, nvars)
    b = _hilbert_numerator(colon, nvars)
    out = [0] * max(len(a), len(b) + 1)
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i + 1] += x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _binomial_poly(shift: int, k: int) -> list:
    """Coefficients of binom(t + shift, k) as a polynomial in t (constant first)."""
    result = [mpq(1)]
    for j in range(k):
        # multiply by (t + shift - j)
        factor0 = mpq(shift - j)
        new = [mpq(0)] * (len(result) + 1)
        for i, c in enumerate(result):
            new[i] += c * factor0
            new[i + 1] += c
        result = new
    inv = mpq(1, math.factorial(k))
    return [c * inv for c in result]


def hilbert_data(basis: GroebnerBasis) -> HilbertData:
    """Hilbert invariants of a homogeneous ideal from any Groebner basis of it."""
    ring = basis.ring
    for g in basis.polys:
        if not g.is_homogeneous():
            raise NonHomogeneousError(f"generator {g} is not homogeneous")
    n = ring.nvars
    if basis.is_unit():
        return HilbertData(dimension=-1, degree=0, hilbert_polynomial=(mpq(0),))
    leads = list(basis.leads)
    num = _hilbert_numerator(leads, n)
    # cancel (1 - t) factors: while N(1) = 0, replace N by its partial sums
    cancelled = 0
    coeffs = list(num)
    while sum(coeffs) == 0:
        carry = 0
        new = []
        for c in coeffs[:-1]:
            carry += c
            new.append(carry)
        coeffs = new or [0]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        cancelled += 1
        if not any(coeffs):
            break
    krull = n - cancelled
    if krull == 0:
        # Artinian quotient: projectively empty
        return HilbertData(dimension=-1, degree=0, hilbert_polynomial=(mpq(0),))
    degree = sum(coeffs)
    dim_proj = krull - 1
    hp = [mpq(0)] * (dim_proj + 1)
    for i, q in enumerate(coeffs):
        if q:
            part = _binomial_poly(-i + krull - 1, krull - 1)
            for k, c in enumerate(part):
                hp[k] += q * c
    return HilbertData(dimension=dim_proj, degree=int(degree), hilbert_polynomial=tuple(hp))


# ---------------------------------------------------------------------------
# staircase counts and dimensions (affine, from leading terms)


def colength(ideal_or_basis):
    """Vector-space dimension of the quotient ring (math.inf when V(I) is
    positive dimensional); accepts an Ideal or a GroebnerBasis."""
    basis = ideal_or_basis
    if hasattr(basis, "groebner"):
        basis = basis.groebner()
    return staircase_count(basis)


def staircase_count(basis: GroebnerBasis):
    """Number of monomials outside the leading-term ideal; math.inf if V(I)
    has positive affine dimension (some variable has no pure power lead)."""
    if basis.is_unit():
        return 0
    n = basis.ring.nvars
    if n == 0:
        return 1 if basis.is_zero() else 0
    leads = _minimalize(list(basis.leads))
    if not leads:
        return math.inf
    for i in range(n):
        if not any(sum(g) == g[i] and g[i] > 0 for g in leads):
            return math.inf
    count = 0
    origin = (0,) * n
    seen = {origin}
    queue = [origin]
    while queue:
        m = queue.pop()
        count += 1
        for i in range(n):
            m2 = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if m2 in seen:
                continue
            seen.add(m2)
            if not any(mono_divides(g, m2) for g in leads):
                queue.append(m2)
    return count


def standard_monomials(basis: GroebnerBasis) -> list:
    """The staircase monomial basis of the quotient (finite case only)."""
    n = basis.ring.nvars
    leads = _minimalize(list(basis.leads))
    out = []
    origin = (0,) * n
    seen = {origin}
    queue = [origin]
    while queue:
        m = queue.pop()
        out.append(m)
        for i in range(n):
            m2 = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if m2 in seen:
                continue
            seen.add(m2)
            if not any(mono_divides(g, m2) for g in leads):
                queue.append(m2)
    return sorted(out, key=GREVLEX.key)


def affine_dimension(basis: GroebnerBasis) -> int:
    """Krull dimension of the affine quotient ring, from the staircase.

    Equals the largest size of a variable subset S such that no leading
    monomial is supported inside S; -1 for the unit ideal.
    """
    if basis.is_unit():
        return -1
    n = basis.ring.nvars
    leads = _minimalize(list(basis.leads))
    if not leads:
        return n
    best = 0
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size <= best:
            continue
        ok = True
        for g in leads:
            if all((mask >> i) & 1 for i, e in enumerate(g) if e):
                ok = False
                break
        if ok:
            best = size
    return best
