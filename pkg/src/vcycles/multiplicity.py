"""Local multiplicities: colength at a point, Samuel multiplicity via generic
reduction, vanishing order along a linear subvariety, and closed-form models
of corank-one hypersurface singularities.

Localization at a rational point uses the maximal-ideal-power method: add
(x_1..x_n)^N after translating the point to the origin and grow N until the
colength stabilizes.  This is correct because the local quotient is Artinian,
so a large enough power lands in the ideal locally while killing every other
support globally.  Before the N-loop, isolation is tested by saturating away
the origin-supported part; a center that survives lies on a positive
dimensional component and the colength is infinite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DisagreementError, GenericityError, StabilizationError
from .groebner import (
    GroebnerBasis,
    affine_dimension,
    normal_form,
    groebner_of,
    staircase_count,
)
from .ideals import (
    GENERIC_COEFF_BOUND,
    Ideal,
    Rng,
    generic_combinations,
    ideal_power,
    saturate,
)
from .poly import GREVLEX, Polynomial, Ring

_N_CAP = 64


@dataclass(frozen=True)
class MultiplicityQuery:
    """A Samuel-multiplicity problem: ambient variety, target ideal, center.

    `local_dim` is the dimension of the local ring at the center: dim X for a
    point center, dim X - dim Z for a linear center Z.
    """

    ambient: Ideal
    target: tuple
    center: tuple = ()
    center_ideal: Optional[Ideal] = None
    local_dim: int = 0

    @property
    def ring(self) -> Ring:
        return self.ambient.ring


@dataclass(frozen=True)
class MultiplicityResult:
    """Computed multiplicity with the evidence that produced it."""

    value: object  # positive int or math.inf
    method: str    # generic-reduction | hilbert-samuel | closed-form
    trials: tuple  # (seed or t, raw colength) pairs
    stabilization_exponent: int = 0


def point_query(
    ambient: Ideal, target: Sequence[Polynomial], center: Sequence, local_dim: Optional[int] = None
) -> MultiplicityQuery:
    """Build a point-centered query; target generators must vanish at the center."""
    ring = ambient.ring
    field = ring.field
    pt = tuple(field.of_int(c) if isinstance(c, int) else c for c in center)
    for g in target:
        if g.evaluate(pt):
            raise ValueError(f"target generator {g} does not vanish at the center")
    if local_dim is None:
        local_dim = affine_dimension(ambient.groebner())
        if local_dim < 0:
            raise ValueError("ambient ideal is the unit ideal")
    return MultiplicityQuery(
        ambient=ambient, target=tuple(target), center=pt, local_dim=local_dim
    )


def linear_center_query(
    ambient: Ideal, target: Sequence[Polynomial], center_ideal: Ideal, local_dim: Optional[int] = None
) -> MultiplicityQuery:
    """Build a query centered along the linear subvariety V(center_ideal)."""
    for g in center_ideal.gens:
        if g.total_degree() > 1:
            raise ValueError("center ideal must be generated by affine-linear forms")
    if local_dim is None:
        dim_x = affine_dimension(ambient.groebner())
        n = ambient.ring.nvars
        rank = _linear_rank(center_ideal)
        dim_z = n - rank
        local_dim = dim_x - dim_z
    return MultiplicityQuery(
        ambient=ambient,
        target=tuple(target),
        center_ideal=center_ideal,
        local_dim=local_dim,
    )


# ---------------------------------------------------------------------------
# colength at a rational point


def colength_at_point(J: Ideal, point: Sequence):
    """Length of the localization of R/J at the point; math.inf when a
    positive-dimensional component passes through it; 0 off V(J)."""
    value, _ = _colength_at_point_exponent(J, point)
    return value


def _colength_at_point_exponent(J: Ideal, point: Sequence):
    ring = J.ring
    field = ring.field
    pt = [field.of_int(c) if isinstance(c, int) else c for c in point]
    if any(pt):
        moved = Ideal(ring, [g.translate(pt) for g in J.gens])
    else:
        moved = J
    return _colength_at_origin(moved)


def _colength_at_origin(J: Ideal):
    ring = J.ring
    if J.is_zero():
        return (math.inf, 0) if ring.nvars else (1, 0)
    basis = J.groebner()
    if basis.is_unit():
        return 0, 0
    globally_finite = staircase_count(basis) != math.inf
    if not globally_finite:
        # isolation test: saturate away the origin-supported part; if the
        # origin still lies on the leftover, a bigger component runs through it
        max_ideal = Ideal(ring, ring.gens())
        leftover, _ = saturate(J, max_ideal)
        leftover_basis = leftover.groebner()
        if not leftover_basis.is_unit():
            if all(not g.constant_coefficient() for g in leftover_basis.polys):
                return math.inf, 0
    max_deg = max(g.total_degree() for g in J.gens)
    n_power = max(2, 2 * max_deg)
    previous = None
    while n_power <= _N_CAP:
        count, power_inside = _colength_with_power(basis, n_power)
        if power_inside:
            # the whole power lies in the ideal: support is the origin alone
            # and the count is already the exact local value
            return count, n_power
        if count == previous:
            return count, n_power
        previous = count
        n_power *= 2
    raise StabilizationError(
        f"local colength did not stabilize with maximal-ideal powers up to {_N_CAP}"
    )


def _colength_with_power(basis: GroebnerBasis, n_power: int):
    """(colength of basis-ideal + (x_1..x_n)^n_power, power already inside?).

    The count is always finite."""
    ring = basis.ring
    n = ring.nvars
    # walk monomials level by level, carrying normal forms; zero normal forms
    # stay zero on all multiples and are pruned
    frontier = {(0,) * n: normal_form(ring.one(), basis)}
    for _ in range(n_power):
        nxt = {}
        for mono, nf in frontier.items():
            if not nf:
                continue
            for i in range(n):
                child = mono[:i] + (mono[i] + 1,) + mono[i + 1 :]
                if child in nxt:
                    continue
                shifted = Polynomial(
                    ring, {m[:i] + (m[i] + 1,) + m[i + 1 :]: c for m, c in nf.terms.items()}
                )
                nxt[child] = normal_form(shifted, basis)
        frontier = nxt
        if not frontier:
            break
    extras = []
    pivots = {}
    for nf in frontier.values():
        reduced = _row_reduce_into(nf, pivots)
        if reduced:
            extras.append(reduced)
    if not extras:
        return staircase_count(basis), True
    enlarged = groebner_of(ring, list(basis.polys) + extras)
    return staircase_count(enlarged), False


def _row_reduce_into(f: Polynomial, pivots: dict):
    """Reduce f against collected pivot rows; record and return the residue."""
    ring = f.ring
    p = ring.field.char
    terms = dict(f.terms)
    key = GREVLEX.key
    while terms:
        lead = max(terms, key=key)
        row = pivots.get(lead)
        if row is None:
            coeff = terms[lead]
            inv = ring.field.inv(coeff)
            if p:
                monic = {m: (c * inv) % p for m, c in terms.items()}
            else:
                monic = {m: c * inv for m, c in terms.items()}
            poly = Polynomial(ring, monic)
            pivots[lead] = poly
            return poly
        factor = terms[lead]
        for m, c in row.terms.items():
            cur = terms.get(m)
            delta = factor * c
            new = -delta if cur is None else cur - delta
            if p:
                new %= p
            if new:
                terms[m] = new
            elif cur is not None:
                del terms[m]
    return None


# ---------------------------------------------------------------------------
# Samuel multiplicity by generic reduction


def samuel_multiplicity(query: MultiplicityQuery, rng: Rng, trials: int = 3) -> MultiplicityResult:
    """Samuel multiplicity of the target ideal at the query's point center.

    Each trial draws `local_dim` generic combinations of the target
    generators and measures the local colength of ambient + combinations;
    the reported value is the minimum attained at least twice (non-generic
    draws can only overestimate).
    """
    if query.center_ideal is not None:
        return multiplicity_along_linear(query, rng, trials=trials)
    ring = query.ring
    budget = max(trials, 2) + 5
    results = []
    exponents = []
    for attempt in range(budget):
        child = rng.split(1009 + attempt)
        if query.local_dim == 0:
            combos = []
        else:
            combos = generic_combinations(query.target, query.local_dim, child)
        J = Ideal(ring, list(query.ambient.gens) + combos)
        value, exponent = _colength_at_point_exponent(J, query.center)
        results.append((child.seed, value))
        exponents.append(exponent)
        if len(results) < max(trials, 2):
            continue
        finite = [v for (_, v) in results if v != math.inf]
        if not finite:
            continue
        best = min(finite)
        if finite.count(best) >= 2:
            n_used = max(
                e for (s, v), e in zip(results, exponents) if v == best
            )
            return MultiplicityResult(
                value=best,
                method="generic-reduction",
                trials=tuple(results),
                stabilization_exponent=n_used,
            )
    finite = [v for (_, v) in results if v != math.inf]
    if not finite:
        raise GenericityError(
            "all trials had infinite colength: the center is not isolated in "
            "V(combinations) on the ambient variety (is local_dim right?)"
        )
    raise DisagreementError(
        f"generic-reduction trials did not agree after {budget} draws: {results}"
    )


def multiplicity_along_linear(
    query: MultiplicityQuery, rng: Rng, trials: int = 3
) -> MultiplicityResult:
    """Multiplicity along a linear center, by slicing through a random
    rational point of the center and delegating to the point case.

    Two independent slice points must agree; a disagreement marks the first
    point as non-generic, and one resampling round is attempted.
    """
    center = query.center_ideal
    if center is None:
        return samuel_multiplicity(query, rng, trials=trials)
    ring = query.ring
    n = ring.nvars
    particular, nullspace = _solve_linear(center)
    dim_z = len(nullspace)
    if dim_z == 0:
        point = particular
        return samuel_multiplicity(
            MultiplicityQuery(
                ambient=query.ambient,
                target=query.target,
                center=tuple(point),
                local_dim=query.local_dim,
            ),
            rng,
        )
    outcomes = []
    for round_idx in range(2):
        values = []
        for pick in range(2):
            child = rng.split(7717 + 31 * round_idx + pick)
            point = _random_point_on(particular, nullspace, child, ring)
            slices = _transversal_slices(center, point, child, ring)
            sliced = MultiplicityQuery(
                ambient=Ideal(ring, list(query.ambient.gens) + slices),
                target=query.target,
                center=tuple(point),
                local_dim=query.local_dim,
            )
            res = samuel_multiplicity(sliced, child.split(5), trials=trials)
            values.append(res)
        if values[0].value == values[1].value:
            merged = values[0].trials + values[1].trials
            return MultiplicityResult(
                value=values[0].value,
                method="generic-reduction",
                trials=merged,
                stabilization_exponent=max(
                    values[0].stabilization_exponent, values[1].stabilization_exponent
                ),
            )
        outcomes.append(tuple(v.value for v in values))
    raise DisagreementError(
        f"slice points disagreed twice along the linear center: {outcomes}"
    )


def _linear_rank(center: Ideal) -> int:
    ring = center.ring
    rows = []
    for g in center.gens:
        row = [0] * ring.nvars
        for m, c in g.terms.items():
            if sum(m) == 1:
                row[m.index(1)] = c
        rows.append(row)
    from .ideals import _matrix_rank

    return _matrix_rank(rows, ring.field) if rows else 0


def _solve_linear(center: Ideal):
    """Particular rational solution and nullspace basis of the linear system."""
    ring = center.ring
    field = ring.field
    n = ring.nvars
    rows = []
    rhs = []
    for g in center.gens:
        row = [field.of_int(0)] * n
        const = field.of_int(0)
        for m, c in g.terms.items():
            d = sum(m)
            if d == 0:
                const = const + c
            elif d == 1:
                row[m.index(1)] = c
            else:
                raise ValueError("center ideal is not affine-linear")
        rows.append(row)
        rhs.append(-const)
    # Gauss-Jordan
    p = field.char
    pivots = []
    r = 0
    for c in range(n):
        pivot = None
        for rr in range(r, len(rows)):
            if rows[rr][c]:
                pivot = rr
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        rhs[r], rhs[pivot] = rhs[pivot], rhs[r]
        inv = field.inv(rows[r][c])
        rows[r] = [(v * inv) % p if p else v * inv for v in rows[r]]
        rhs[r] = (rhs[r] * inv) % p if p else rhs[r] * inv
        for rr in range(len(rows)):
            if rr != r and rows[rr][c]:
                f = rows[rr][c]
                rows[rr] = [
                    (a - f * b) % p if p else a - f * b for a, b in zip(rows[rr], rows[r])
                ]
                rhs[rr] = (rhs[rr] - f * rhs[r]) % p if p else rhs[rr] - f * rhs[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for rr in range(r, len(rows)):
        if rhs[rr]:
            raise ValueError("center ideal has no rational point")
    particular = [field.of_int(0)] * n
    for i, c in enumerate(pivots):
        particular[c] = rhs[i]
    free = [c for c in range(n) if c not in pivots]
    nullspace = []
    for fc in free:
        vec = [field.of_int(0)] * n
        vec[fc] = field.of_int(1)
        for i, c in enumerate(pivots):
            vec[c] = -rows[i][fc]
        nullspace.append(vec)
    return particular, nullspace


def _random_point_on(particular, nullspace, rng: Rng, ring: Ring):
    field = ring.field
    point = list(particular)
    for vec in nullspace:
        c = field.of_int(rng.randint(-50, 50))
        point = [a + c * b for a, b in zip(point, vec)]
    if field.char:
        point = [v % field.char for v in point]
    return point


def _transversal_slices(center: Ideal, point, rng: Rng, ring: Ring):
    """dim Z random affine-linear forms through the point, transversal to Z."""
    from .ideals import _matrix_rank

    n = ring.nvars
    field = ring.field
    rank_z = _linear_rank(center)
    dim_z = n - rank_z
    base_rows = []
    for g in center.gens:
        row = [0] * n
        for m, c in g.terms.items():
            if sum(m) == 1:
                row[m.index(1)] = int(c) if field.char else c
        base_rows.append(row)
    for _ in range(8):
        coeff_rows = [[rng.randint(-50, 50) for _ in range(n)] for _ in range(dim_z)]
        combined = [list(r) for r in base_rows] + [list(r) for r in coeff_rows]
        if _matrix_rank(combined, field) == n:
            slices = []
            for row in coeff_rows:
                terms = {}
                const = field.of_int(0)
                for j, a in enumerate(row):
                    if a:
                        e = [0] * n
                        e[j] = 1
                        terms[tuple(e)] = field.of_int(a)
                        const = const - field.of_int(a) * point[j]
                if const:
                    terms[(0,) * n] = const
                slices.append(Polynomial(ring, terms))
            return slices
    raise GenericityError("failed to draw slices transversal to the linear center")


# ---------------------------------------------------------------------------
# vanishing order along a linear subvariety


def order_along(f: Polynomial, center: Ideal) -> int:
    """Largest t with f in center^t (containment via Groebner normal forms)."""
    if not f:
        return math.inf
    if not center.contains(f):
        raise ValueError("f does not vanish along the center")
    t = 1
    cap = f.total_degree() + 1
    while t <= cap:
        if not ideal_power(center, t + 1).contains(f):
            return t
        t += 1
    raise StabilizationError("vanishing order exceeded the degree cap")


# ---------------------------------------------------------------------------
# closed-form corank-one models


@dataclass(frozen=True)
class LocalModel:
    """Normal form x_1^2 + ... + x_{g-1}^2 + x_g^ell of an isolated double
    point whose Hessian has rank g-1."""

    dimension: int       # g
    hessian_rank: int    # must be g-1
    exponent: int        # ell >= 2

    def polynomial(self, ring: Ring) -> Polynomial:
        g = self.dimension
        f = ring.zero()
        for i in range(g - 1):
            f = f + ring.var(i) ** 2
        return f + ring.var(g - 1) ** self.exponent


@dataclass(frozen=True)
class LocalModelResult:
    value: int
    verified: bool


def local_model_multiplicity(model: LocalModel, verify: bool = False, rng: Optional[Rng] = None) -> LocalModelResult:
    """Multiplicity of the singular-locus scheme at the model's double point:
    equal to the exponent.  With verify=True the closed form is checked by a
    symbolic generic-reduction run on the model's Jacobian-type ideal."""
    g = model.dimension
    if model.hessian_rank != g - 1:
        raise ValueError(
            f"unsupported Hessian rank {model.hessian_rank} (the closed form needs g-1)"
        )
    if model.exponent < 2:
        raise ValueError("exponent must be at least 2")
    value = model.exponent
    if not verify:
        return LocalModelResult(value=value, verified=False)
    from .poly import QQ

    ring = Ring(QQ, [f"x{i+1}" for i in range(g)])
    theta = model.polynomial(ring)
    query = point_query(
        ambient=Ideal(ring, [theta]),
        target=theta.gradient(),
        center=(0,) * g,
        local_dim=g - 1,
    )
    result = samuel_multiplicity(query, rng or Rng(2024))
    if result.value != value:
        raise DisagreementError(
            f"closed form {value} disagrees with symbolic value {result.value}"
        )
    return LocalModelResult(value=value, verified=True)


# ---------------------------------------------------------------------------
# Hilbert-Samuel cross-check


def hilbert_samuel_multiplicity(query: MultiplicityQuery, T: Optional[int] = None) -> MultiplicityResult:
    """Samuel multiplicity from the Hilbert function h(t) = length(R/q^t).

    Computes h for t = 1..T, takes d-th finite differences of the tail, and
    reports the stabilized constant (leading coefficient times d!).
    """
    if query.center_ideal is not None:
        raise ValueError("Hilbert-Samuel path needs a point center")
    d = query.local_dim
    if T is None:
        T = d + 4
    if T < d + 2:
        raise ValueError(f"need T >= local_dim + 2 = {d + 2}")
    ring = query.ring
    target_ideal = Ideal(ring, list(query.target))
    values = []
    for t in range(1, T + 1):
        J = Ideal(ring, list(query.ambient.gens) + list(ideal_power(target_ideal, t).gens))
        c = colength_at_point(J, query.center)
        if c == math.inf:
            raise GenericityError("center is not isolated: Hilbert function is infinite")
        values.append(c)
    diffs = list(values)
    for _ in range(d):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    if len(diffs) < 2 or diffs[-1] != diffs[-2]:
        raise StabilizationError(
            f"Hilbert function tail not polynomial of degree {d} within T={T}: h={values}"
        )
    value = diffs[-1]
    if value < 1:
        raise StabilizationError(f"non-positive leading difference {value}; h={values}")
    return MultiplicityResult(
        value=value,
        method="hilbert-samuel",
        trials=tuple(enumerate(values, start=1)),
        stabilization_exponent=T,
    )
