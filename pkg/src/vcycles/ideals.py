"""Ideal-theoretic operations: quotient, saturation, elimination, powers,
membership, and seeded generic linear combinations.

Intersections and quotients go through the tag-variable elimination method
(eliminate t from t*I + (1-t)*J); saturation iterates single quotients until
the ideal stabilizes, returning the stabilization exponent.  Genericity is
replaced everywhere by seeded randomness plus a-posteriori checks at the use
sites, with resampling on failure.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Optional, Sequence

from .errors import GenericityError, RingMismatchError, StabilizationError
from .groebner import GroebnerBasis, groebner_of, normal_form
from .poly import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    Ring,
    elimination_order,
    mono_div,
    mono_mul,
)

#: coefficient bound for generic draws; resampled combinations stay in [-H, H]
GENERIC_COEFF_BOUND = 1000

#: resampling budget before a genericity failure is reported
RETRY_BUDGET = 8

_SATURATION_CAP = 64


class Rng:
    """Deterministic random stream (Mersenne Twister, `random.Random`).

    Identical seeds give identical draw sequences on every platform.  Streams
    are values: `split(tag)` derives an independent child stream via a
    splitmix-style mix of the seed and tag, never shared mutable state.
    """

    ALGORITHM = "mt19937"

    def __init__(self, seed: int):
        self.seed = seed & (2**64 - 1)
        self._random = random.Random(self.seed)

    def randint(self, lo: int, hi: int) -> int:
        return self._random.randint(lo, hi)

    def coefficient(self, bound: int = GENERIC_COEFF_BOUND) -> int:
        return self._random.randint(-bound, bound)

    def split(self, tag: int) -> "Rng":
        mixed = (self.seed ^ (tag * 0x9E3779B97F4A7C15)) & (2**64 - 1)
        mixed = (mixed ^ (mixed >> 30)) * 0xBF58476D1CE4E5B9 & (2**64 - 1)
        mixed = (mixed ^ (mixed >> 27)) * 0x94D049BB133111EB & (2**64 - 1)
        return Rng(mixed ^ (mixed >> 31))

    def __repr__(self):
        return f"Rng(seed={self.seed}, algorithm={self.ALGORITHM})"


class Ideal:
    """An ideal given by generators, with cached Groebner bases per order."""

    __slots__ = ("ring", "gens", "_bases")

    def __init__(self, ring: Ring, gens: Iterable[Polynomial] = ()):
        self.ring = ring
        clean = []
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"generator ring {g.ring} != {ring}")
            if g:
                clean.append(g)
        self.gens = tuple(clean)
        self._bases: dict = {}

    # -- basics --------------------------------------------------------------

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        basis = self._bases.get(order)
        if basis is None:
            basis = groebner_of(self.ring, list(self.gens), order)
            self._bases[order] = basis
        return basis

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        if any(g.is_constant() and g for g in self.gens):
            return True
        return bool(self.gens) and self.groebner().is_unit()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def contains(self, f: Polynomial) -> bool:
        if not f:
            return True
        if not self.gens:
            return False
        return self.groebner().contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return self.groebner().polys == other.groebner().polys

    def with_basis(self, basis: GroebnerBasis) -> "Ideal":
        """Ideal regenerated from a known Groebner basis (cached)."""
        ideal = Ideal(basis.ring, basis.polys)
        ideal._bases[basis.order] = basis
        return ideal

    def map_to_field(self, field) -> "Ideal":
        ring = self.ring.to_field(field)
        return Ideal(ring, [g.map_to_field(field) for g in self.gens])

    def __repr__(self):
        inside = ", ".join(g.to_text() for g in self.gens) or "0"
        return f"Ideal({inside})"


# ---------------------------------------------------------------------------
# generator-level constructions


def _check_same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring} vs {J.ring}")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    seen = list(I.gens)
    for g in J.gens:
        if g not in seen:
            seen.append(g)
    return Ideal(I.ring, seen)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    return Ideal(I.ring, [f * g for f in I.gens for g in J.gens])


def ideal_power(I: Ideal, t: int) -> Ideal:
    if t < 1:
        raise ValueError("power exponent must be positive")
    gens = []
    for combo in itertools.combinations_with_replacement(I.gens, t):
        g = combo[0]
        for h in combo[1:]:
            g = g * h
        gens.append(g)
    return Ideal(I.ring, gens)


def maximal_ideal_power(ring: Ring, t: int) -> list:
    """Generators of (x_1..x_n)^t: all monomials of total degree t."""
    out = []
    for combo in itertools.combinations_with_replacement(range(ring.nvars), t):
        e = [0] * ring.nvars
        for i in combo:
            e[i] += 1
        out.append(ring.monomial(e))
    return out


# ---------------------------------------------------------------------------
# elimination, intersection, quotient, saturation


def eliminate(I: Ideal, variables: Iterable[int]) -> Ideal:
    """I intersected with the subring omitting the given variables.

    The result is returned in the same ring; its generators do not involve
    the eliminated variables.
    """
    drop = sorted(set(variables))
    if not drop or not I.gens:
        return Ideal(I.ring, I.gens)
    order = elimination_order(drop)
    basis = I.groebner(order)
    kept = []
    for g in basis.polys:
        lead = g.leading_term(order)[0]
        if all(lead[i] == 0 for i in drop):
            kept.append(g)
    return Ideal(I.ring, kept)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by tag-variable elimination: eliminate t from t*I + (1-t)*J."""
    _check_same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, ())
    ring = I.ring
    ext = ring.extend(["@t"], front=True)
    t = ext.var(0)
    one = ext.one()

    def lift(f: Polynomial) -> Polynomial:
        return Polynomial(ext, {(0,) + m: c for m, c in f.terms.items()})

    gens = [t * lift(f) for f in I.gens] + [(one - t) * lift(g) for g in J.gens]
    extended = Ideal(ext, gens)
    elim = eliminate(extended, [0])
    back = []
    for g in elim.gens:
        back.append(Polynomial(ring, {m[1:]: c for m, c in g.terms.items()}))
    return Ideal(ring, back)


def _divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g when g divides f exactly (used on intersection generators)."""
    import heapq

    ring = f.ring
    p = ring.field.char
    order = GREVLEX
    neg_key = order.neg_key
    glead, gc = g.leading_term(order)
    ginv = ring.field.inv(gc)
    rest = dict(f.terms)
    out = {}
    heap = []
    keyed = {}
    for m in rest:
        nk = neg_key(m)
        keyed[nk] = m
        heap.append(nk)
    heapq.heapify(heap)
    while heap:
        nk = heapq.heappop(heap)
        m = keyed.pop(nk)
        c = rest.get(m)
        if not c:
            rest.pop(m, None)
            continue
        u = mono_div(m, glead)
        if u is None:
            raise ValueError("division is not exact")
        factor = c * ginv
        if p:
            factor %= p
        out[u] = factor
        for tm, tc in g.terms.items():
            mm = mono_mul(u, tm)
            cur = rest.get(mm)
            delta = factor * tc
            new = -delta if cur is None else cur - delta
            if p:
                new %= p
            if new:
                if cur is None:
                    nk2 = neg_key(mm)
                    if nk2 not in keyed:
                        keyed[nk2] = mm
                        heapq.heappush(heap, nk2)
                rest[mm] = new
            elif cur is not None:
                del rest[mm]
    return Polynomial(ring, out)


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """The ideal quotient I : J = {f : f*J ⊆ I}."""
    _check_same_ring(I, J)
    if J.is_zero():
        return Ideal(I.ring, [I.ring.one()])
    if I.is_zero():
        return Ideal(I.ring, ())
    if any(g.is_constant() for g in J.gens):
        return I  # a unit generator forces I : J = I
    result: Optional[Ideal] = None
    for g in J.gens:
        meet = intersect(I, Ideal(I.ring, [g]))
        part = Ideal(I.ring, [_divide_exact(f, g) for f in meet.gens])
        result = part if result is None else intersect(result, part)
    return result


def saturate(I: Ideal, J: Ideal) -> tuple:
    """(I : J^infinity, stabilization exponent), by iterated quotients."""
    _check_same_ring(I, J)
    if any(g.is_constant() for g in J.gens):
        return I, 0  # quotient by the unit ideal removes nothing
    current = I
    exponent = 0
    for _ in range(_SATURATION_CAP):
        nxt = quotient(current, J)
        if nxt is current or nxt.equals(current):
            return current, exponent
        current = nxt
        exponent += 1
    raise StabilizationError(
        f"saturation did not stabilize within {_SATURATION_CAP} quotient steps"
    )


def radical_contains(I: Ideal, f: Polynomial) -> bool:
    """f in the radical of I, by the t*f - 1 elimination trick."""
    if not f:
        return True
    ring = I.ring
    ext = ring.extend(["@t"], front=True)
    t = ext.var(0)

    def lift(g: Polynomial) -> Polynomial:
        return Polynomial(ext, {(0,) + m: c for m, c in g.terms.items()})

    gens = [lift(g) for g in I.gens] + [t * lift(f) - ext.one()]
    return Ideal(ext, gens).is_unit()


# ---------------------------------------------------------------------------
# seeded generic linear combinations


def _matrix_rank(rows: list, field) -> int:
    m = [[field.of_int(c) for c in row] for row in rows]
    p = field.char
    rank = 0
    ncols = len(m[0]) if m else 0
    col = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][col])
        for r in range(rank + 1, len(m)):
            if m[r][col]:
                factor = m[r][col] * inv
                if p:
                    factor %= p
                for c in range(col, ncols):
                    m[r][c] = m[r][c] - factor * m[rank][c]
                    if p:
                        m[r][c] %= p
        rank += 1
    return rank


def generic_combinations(
    gens: Sequence[Polynomial],
    count: int,
    rng: Rng,
    bound: int = GENERIC_COEFF_BOUND,
) -> list:
    """`count` random integer combinations of `gens` with full-rank rows.

    Coefficients are uniform in [-bound, bound]; the coefficient matrix is
    resampled (up to the retry budget) until its rows are independent over
    the coefficient field.
    """
    gens = list(gens)
    if not gens or all(not g for g in gens):
        raise GenericityError("no nonzero generators to combine")
    if count > len(gens):
        raise GenericityError(
            f"cannot draw {count} independent combinations of {len(gens)} generators"
        )
    ring = gens[0].ring
    for _ in range(RETRY_BUDGET):
        rows = [[rng.coefficient(bound) for _ in gens] for _ in range(count)]
        if _matrix_rank(rows, ring.field) == count:
            out = []
            for row in rows:
                s = ring.zero()
                for c, g in zip(row, gens):
                    if c:
                        s = s + g.scale(c)
                out.append(s)
            return out
    raise GenericityError("failed to draw a full-rank coefficient matrix")


def combination_rows(
    gens: Sequence[Polynomial], count: int, rng: Rng, bound: int = GENERIC_COEFF_BOUND
) -> tuple:
    """Like generic_combinations but also returns the coefficient rows."""
    gens = list(gens)
    if not gens or all(not g for g in gens):
        raise GenericityError("no nonzero generators to combine")
    ring = gens[0].ring
    for _ in range(RETRY_BUDGET):
        rows = [[rng.coefficient(bound) for _ in gens] for _ in range(count)]
        if _matrix_rank(rows, ring.field) == count:
            out = []
            for row in rows:
                s = ring.zero()
                for c, g in zip(row, gens):
                    if c:
                        s = s + g.scale(c)
                out.append(s)
            return out, rows
    raise GenericityError("failed to draw a full-rank coefficient matrix")


# ---------------------------------------------------------------------------
# chart helpers shared by the projective modules


def dehomogenize(f: Polynomial, chart_var: int, small_ring: Ring) -> Polynomial:
    """Set the chart variable to 1, mapping into the ring without it."""
    out = {}
    for m, c in f.terms.items():
        mm = m[:chart_var] + m[chart_var + 1 :]
        cur = out.get(mm)
        new = c if cur is None else cur + c
        if small_ring.field.char:
            new %= small_ring.field.char
        if new:
            out[mm] = new
        elif cur is not None:
            del out[mm]
    return Polynomial(small_ring, out)


def dehomogenize_ideal(I: Ideal, chart_var: int) -> Ideal:
    small = I.ring.drop([chart_var])
    return Ideal(small, [g for g in (dehomogenize(f, chart_var, small) for f in I.gens) if g])
