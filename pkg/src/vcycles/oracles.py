"""Independent verification paths that bypass the Groebner engine where
possible: Macaulay-matrix colength by exact row reduction, closed-form
intersection arithmetic for linear base loci and for the blown-up cubic
system, and map degrees by direct fiber counting.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from gmpy2 import mpq

from .errors import CapTooSmallError, DisagreementError, GenericityError
from .groebner import hilbert_data
from .ideals import Ideal, Rng, saturate, _matrix_rank
from .poly import GREVLEX, Polynomial, Ring
from .vogel import VogelProblem, base_locus, irrelevant_ideal


# ---------------------------------------------------------------------------
# Macaulay-matrix colength


def macaulay_colength(J: Ideal, degree_cap: int = 24):
    """Vector-space dimension of the quotient by row reduction alone.

    Builds the multiplication rows (generator times monomial) degree by
    degree and counts the monomials missed by the pivots.  The count is
    reported once a whole degree level is fully pivoted and the count below
    repeats; math.inf is returned when the per-degree complement has
    stabilized at a positive size; a still-shrinking complement at the cap
    raises CapTooSmallError.
    """
    gens = [g for g in J.gens if g]
    if not gens:
        return math.inf if J.ring.nvars else 1
    ring = J.ring
    n = ring.nvars
    field = ring.field
    neg_key = GREVLEX.neg_key
    pivots: dict = {}

    def insert(terms: dict):
        """Reduce a row against the pivots; install the residue if nonzero."""
        p = field.char
        work = dict(terms)
        while work:
            lead = min(work, key=neg_key)
            row = pivots.get(lead)
            if row is None:
                inv = field.inv(work[lead])
                if p:
                    monic = {m: (c * inv) % p for m, c in work.items()}
                else:
                    monic = {m: c * inv for m, c in work.items()}
                pivots[lead] = monic
                return lead
            factor = work.pop(lead)
            for m, c in row.items():
                if m == lead:
                    continue
                cur = work.get(m)
                delta = factor * c
                new = -delta if cur is None else cur - delta
                if p:
                    new %= p
                if new:
                    work[m] = new
                elif cur is not None:
                    del work[m]
        return None

    def monomials_of(total: int):
        for combo in itertools.combinations_with_replacement(range(n), total):
            e = [0] * n
            for i in combo:
                e[i] += 1
            yield tuple(e)

    complements = []
    standard_below = 0
    pending_report: Optional[int] = None
    for level in range(0, degree_cap + 1):
        rows = []
        for g in gens:
            d = g.total_degree()
            if d > level:
                continue
            for u in monomials_of(level - d):
                shifted = {
                    tuple(a + b for a, b in zip(m, u)): c for m, c in g.terms.items()
                }
                rows.append(shifted)
        rows.sort(key=lambda r: sum(abs(int(c.numerator)) + int(c.denominator) if not field.char else c for c in r.values()))
        for row in rows:
            insert(row)
        level_monos = list(monomials_of(level))
        missed = sum(1 for m in level_monos if m not in pivots)
        complements.append(missed)
        if missed == 0:
            if pending_report is None:
                pending_report = standard_below
            elif pending_report == standard_below:
                return standard_below
            else:
                pending_report = standard_below
        else:
            pending_report = None
        standard_below += missed
    if len(complements) >= 3 and complements[-1] and complements[-1] >= complements[-2] >= complements[-3] > 0:
        return math.inf
    raise CapTooSmallError(
        f"complement still shrinking at degree {degree_cap}: {complements[-4:]}"
    )


# ---------------------------------------------------------------------------
# exact truncated power series and the linear-base-locus closed form


@dataclass(frozen=True)
class SeriesTruncation:
    """Univariate power series with exact rational coefficients, truncated."""

    coefficients: tuple
    order: int

    @staticmethod
    def of(values: Sequence, order: int) -> "SeriesTruncation":
        coeffs = [mpq(v) for v in values[: order + 1]]
        coeffs += [mpq(0)] * (order + 1 - len(coeffs))
        return SeriesTruncation(tuple(coeffs), order)

    def __mul__(self, other: "SeriesTruncation") -> "SeriesTruncation":
        order = min(self.order, other.order)
        out = [mpq(0)] * (order + 1)
        for i, a in enumerate(self.coefficients[: order + 1]):
            if not a:
                continue
            for j, b in enumerate(other.coefficients[: order + 1 - i]):
                if b:
                    out[i + j] += a * b
        return SeriesTruncation(tuple(out), order)

    def power(self, k: int) -> "SeriesTruncation":
        result = SeriesTruncation.of([1], self.order)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "SeriesTruncation":
        if not self.coefficients[0]:
            raise ZeroDivisionError("series has no constant term")
        inv0 = 1 / mpq(self.coefficients[0])
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = mpq(0)
            for i in range(1, k + 1):
                acc += self.coefficients[i] * out[k - i] if i < len(self.coefficients) else 0
            out.append(-inv0 * acc)
        return SeriesTruncation(tuple(out), self.order)

    def coefficient(self, k: int):
        return self.coefficients[k]


def segre_discrepancy_linear(ambient_dim: int, base_dim: int, system_degree: int) -> int:
    """Discrepancy absorbed by a linear P^b base locus inside P^N for a
    system of degree-e forms: the t^b coefficient of (1+et)^N / (1+t)^(N-b)."""
    if base_dim >= ambient_dim:
        raise ValueError("the base locus must be a proper linear subspace")
    order = base_dim
    numerator = SeriesTruncation.of([1, system_degree], order).power(ambient_dim)
    denominator = SeriesTruncation.of([1, 1], order).power(ambient_dim - base_dim)
    series = numerator * denominator.inverse()
    value = series.coefficient(base_dim)
    if value.denominator != 1:
        raise AssertionError(f"non-integral Segre evaluation {value}")
    return int(value)


# ---------------------------------------------------------------------------
# the blown-up cubic system: closed-form record


@dataclass(frozen=True)
class BlowupRecord:
    points_blown_up: int
    bundle_degree: int      # 27 - k
    line_bundle_degree: int  # 3 - k, the proper transform of the line
    delta: int              # 7 - k
    map_degree: int         # always 20


def blowup_example(k: int) -> BlowupRecord:
    """Arithmetic of the cubics-through-a-line system pulled back to the
    blow-up of k generic points on the line; the discrepancy drops by one
    per point and goes negative past seven, while the map degree stays 20."""
    if not 0 <= k <= 12:
        raise ValueError("k must be between 0 and 12")
    record = BlowupRecord(
        points_blown_up=k,
        bundle_degree=27 - k,
        line_bundle_degree=3 - k,
        delta=7 - k,
        map_degree=20,
    )
    if record.bundle_degree - record.delta != record.map_degree:
        raise AssertionError("blow-up record is inconsistent")
    return record


# ---------------------------------------------------------------------------
# fiber counting


def fiber_degree(problem: VogelProblem, rng: Rng, base: Optional[Ideal] = None) -> int:
    """Degree of the map by counting one random fiber (twice).

    A random target point is chosen; the sections vanishing at it cut out
    the fiber together with the base locus, which is saturated away.  Two
    independent draws must agree.
    """
    ring = problem.ring
    n = problem.dimension
    if base is None:
        base = base_locus(problem)
    values = []
    for draw in range(2):
        child = rng.split(4099 + draw)
        value = _count_one_fiber(problem, child, base)
        values.append(value)
    if values[0] != values[1]:
        raise DisagreementError(f"fiber counts disagree: {values}")
    return values[0]


def _count_one_fiber(problem: VogelProblem, rng: Rng, base: Ideal) -> int:
    ring = problem.ring
    n = problem.dimension
    system = list(problem.system)
    k = len(system)
    for attempt in range(8):
        child = rng.split(attempt)
        target = [child.randint(-50, 50) for _ in range(k)]
        if not any(target):
            continue
        # move a nonzero coordinate last so the cross-scaled rows are exact
        last = max(i for i, q in enumerate(target) if q)
        rows = []
        for _ in range(n):
            a = [child.randint(-50, 50) for _ in range(k)]
            row = [target[last] * a[i] for i in range(k)]
            shift = sum(a[i] * target[i] for i in range(k))
            row[last] -= shift
            rows.append(row)
        if _matrix_rank(rows, ring.field) != n:
            continue
        sections = []
        for row in rows:
            s = ring.zero()
            for c, w in zip(row, system):
                if c:
                    s = s + w.scale(c)
            sections.append(s)
        cut = Ideal(ring, list(problem.variety.gens) + sections)
        cleared, _ = saturate(cut, base)
        fiber, _ = saturate(cleared, irrelevant_ideal(ring))
        if fiber.is_unit():
            continue
        data = hilbert_data(fiber.groebner())
        if data.dimension != 0:
            continue  # non-generic target: positive-dimensional fiber
        return data.degree
    raise GenericityError("no generic fiber found within the retry budget")
