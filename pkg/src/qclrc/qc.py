"""Quasi-cyclic codes and their constituent decomposition.

A quasi-cyclic code of index ell and length m*ell is given by generator
tuples of polynomials modulo x^m - 1.  Evaluating the generators at the
root attached to each irreducible factor of x^m - 1 yields one
constituent code per factor, a linear code of length ell over that
factor's extension field.  A trace construction maps constituent data
back to codewords, giving an explicit generator matrix.

Codewords are handled in two layouts: an m x ell array (rows indexed by
the cyclic shift, columns by the quasi-cyclic block) and a flat vector
of length m*ell in column-major order.  The defining symmetry rotates
every column of the array down by one row.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Sequence

from .algebra import FactorInfo, Factorization, Field, Poly, factor_unity, \
    field_trace
from .codes import (
    ENUM_BUDGET_DEFAULT,
    RANK_BUDGET_DEFAULT,
    CyclicCode,
    LinearCode,
    min_distance,
    rref,
    subcode_from_bz,
    subcode_distance,
)
from .errors import InternalConsistencyError

# tie enumeration and full subset listings stay exact up to this many
# nonzero constituents
MAX_SUBSET_FACTORS = 6


@dataclass(frozen=True)
class QCCode:
    """A quasi-cyclic code given by generator tuples over F_q[x]/(x^m-1).

    Each generator is an ell-tuple of polynomials of degree below m; the
    code is the module the tuples generate under multiplication by x
    (simultaneous cyclic shift of every column).
    """

    field: Field
    m: int
    ell: int
    generators: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        if self.m < 1 or self.ell < 1:
            raise ValueError("m and ell must be positive")
        for gen in self.generators:
            if len(gen) != self.ell:
                raise ValueError(
                    f"generator tuple length {len(gen)} != index {self.ell}")
            for a in gen:
                if a.field != self.field:
                    raise ValueError("generator entry over the wrong field")
                if a.degree >= self.m:
                    raise ValueError(
                        f"generator entry degree {a.degree} not below m="
                        f"{self.m}")


def qc_from_matrix_rows(field: Field, m: int, ell: int,
                        rows: Iterable[Sequence[int]]) -> QCCode:
    """Generator tuples read off flat codewords: column j of the array
    form becomes the polynomial sum of entries times x^row."""
    gens = []
    for row in rows:
        arr = unflatten(row, m, ell)
        gens.append(tuple(
            Poly(field, [arr[g][j] for g in range(m)]) for j in range(ell)))
    return QCCode(field, m, ell, tuple(gens))


@dataclass(frozen=True)
class ConstituentDecomposition:
    """Constituent codes of a quasi-cyclic code, one per factor of
    x^m - 1, aligned with the factorization order."""

    fact: Factorization
    ell: int
    constituents: tuple[LinearCode, ...]
    _dcache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.constituents) != self.fact.num_factors:
            raise ValueError(
                f"{len(self.constituents)} constituents for "
                f"{self.fact.num_factors} factors")
        for info, code in zip(self.fact.factors, self.constituents):
            if code.field != info.ext_field:
                raise ValueError(
                    f"constituent for factor {info.poly} is over the wrong "
                    f"field")
            if code.n != self.ell:
                raise ValueError(
                    f"constituent length {code.n} != index {self.ell}")

    @property
    def field(self) -> Field:
        return self.fact.field

    @property
    def m(self) -> int:
        return self.fact.m

    @property
    def n(self) -> int:
        return self.m * self.ell

    def dimension(self) -> int:
        return sum(c.k * info.degree
                   for c, info in zip(self.constituents, self.fact.factors))

    def nonzero_indices(self) -> tuple[int, ...]:
        """1-based indices of the factors with a nonzero constituent."""
        return tuple(i + 1 for i, c in enumerate(self.constituents)
                     if not c.is_zero())

    def constituent_distance(self, i: int, *,
                             enum_budget: int = ENUM_BUDGET_DEFAULT,
                             rank_budget: int = RANK_BUDGET_DEFAULT) -> int:
        """Minimum distance of the i-th (1-based) constituent, cached."""
        got = self._dcache.get(i)
        if got is None:
            got = self._dcache[i] = min_distance(
                self.constituents[i - 1], enum_budget=enum_budget,
                rank_budget=rank_budget)
        return got


def evaluate_constituents(code: QCCode,
                          fact: Factorization | None = None
                          ) -> ConstituentDecomposition:
    """Evaluate every generator entry at each factor's root.

    An entry evaluates to zero exactly when the factor divides it; the
    two conditions are cross-checked.  The row spans over the factor
    fields form the constituent codes.
    """
    if fact is None:
        fact = factor_unity(code.m, code.field)
    if fact.m != code.m or fact.field != code.field:
        raise ValueError("factorization does not match the code")
    constituents = []
    for info in fact.factors:
        rows = []
        for gen in code.generators:
            row = []
            for a in gen:
                val = info.eval(a)
                if (val == 0) != info.poly.divides(a):
                    raise InternalConsistencyError(
                        "evaluation and divisibility disagree at factor "
                        f"{info.poly}")
                row.append(val)
            rows.append(row)
        constituents.append(
            LinearCode.from_rows(info.ext_field, code.ell, rows))
    return ConstituentDecomposition(fact, code.ell, tuple(constituents))


def dimension_of(dec: ConstituentDecomposition) -> int:
    """Dimension over F_q: the sum of constituent dimensions weighted by
    factor degrees."""
    return dec.dimension()


# ---------------------------------------------------------------------------
# array layout


def flatten(array: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Column-major flattening: entry (g, j) lands at position j*m + g."""
    m = len(array)
    ell = len(array[0])
    return tuple(array[g][j] for j in range(ell) for g in range(m))


def unflatten(vec: Sequence[int], m: int, ell: int
              ) -> tuple[tuple[int, ...], ...]:
    """Inverse of flatten for an m x ell array."""
    if len(vec) != m * ell:
        raise ValueError(f"vector length {len(vec)} != {m}*{ell}")
    return tuple(tuple(vec[j * m + g] for j in range(ell)) for g in range(m))


def column_shift(array: Sequence[Sequence[int]]
                 ) -> tuple[tuple[int, ...], ...]:
    """Rotate every column down one row: the defining symmetry."""
    m = len(array)
    return tuple(tuple(array[(g - 1) % m]) for g in range(m))


def shift_invariance_check(rows: Iterable[Sequence[int]], ell: int,
                           field: Field) -> bool:
    """Whether the span of the rows is closed under the column rotation."""
    mat = [tuple(r) for r in rows]
    if not mat:
        return True
    n = len(mat[0])
    if n % ell != 0:
        raise ValueError(f"row length {n} is not a multiple of {ell}")
    m = n // ell
    code = LinearCode.from_rows(field, n, mat)
    for r in mat:
        shifted = flatten(column_shift(unflatten(r, m, ell)))
        if not code.contains(shifted):
            return False
    return True


# ---------------------------------------------------------------------------
# trace construction


def trace_codeword(dec: ConstituentDecomposition,
                   lambdas: Sequence[Sequence[int]]
                   ) -> tuple[tuple[int, ...], ...]:
    """The codeword array determined by one coefficient row per factor.

    Row i of ``lambdas`` is an ell-tuple over factor i's field and must
    lie in constituent i.  Entry (g, j) of the result is the sum over
    factors of the trace of lambda[i][j] times the factor root raised to
    m - g.
    """
    fact = dec.fact
    if len(lambdas) != fact.num_factors:
        raise ValueError(
            f"{len(lambdas)} coefficient rows for {fact.num_factors} factors")
    rows = [tuple(lam) for lam in lambdas]
    for code, info, lam in zip(dec.constituents, fact.factors, rows):
        if len(lam) != dec.ell:
            raise ValueError(
                f"coefficient row length {len(lam)} != index {dec.ell}")
        if not code.contains(lam):
            raise ValueError(
                f"coefficient row {lam} is not in the constituent of factor "
                f"{info.poly}")
    F = dec.field
    m = fact.m
    active = [(info, lam) for info, lam in zip(fact.factors, rows)
              if any(lam)]
    out = []
    for g in range(m):
        row = []
        for j in range(dec.ell):
            acc = 0
            for info, lam in active:
                if lam[j] == 0:
                    continue
                z = info.ext_field.mul(lam[j], info.root_power(m - g))
                acc = F.add(acc, field_trace(z, info.ext_field, F))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def generator_matrix(dec: ConstituentDecomposition
                     ) -> tuple[tuple[int, ...], ...]:
    """A full-rank k x (m*ell) generator matrix over the base field.

    For each factor, each reduced constituent row is scaled by the
    powers of the factor root that form a base-field basis of the factor
    field; each scaled row yields one trace codeword.  The rank is
    verified to equal the decomposition's dimension.
    """
    fact = dec.fact
    zero_rows: list[tuple[int, ...]] = [
        (0,) * dec.ell for _ in range(fact.num_factors)]
    out = []
    for i, (info, code) in enumerate(zip(fact.factors, dec.constituents)):
        E = info.ext_field
        for v in code.rows:
            for t in range(info.degree):
                rt = info.root_power(t)
                lam = tuple(E.mul(rt, x) for x in v)
                rows = list(zero_rows)
                rows[i] = lam
                out.append(flatten(trace_codeword(dec, rows)))
    k = dec.dimension()
    _, rank, _ = rref(out, dec.field)
    if rank != k:
        raise InternalConsistencyError(
            f"trace construction produced rank {rank}, expected {k}")
    return tuple(out)


def rebuild_code(dec: ConstituentDecomposition) -> LinearCode:
    """The decomposition's code as a plain linear code over F_q."""
    return LinearCode.from_rows(dec.field, dec.n, generator_matrix(dec))


# ---------------------------------------------------------------------------
# associated cyclic codes


def distance_sorted_order(dec: ConstituentDecomposition, *,
                          enum_budget: int = ENUM_BUDGET_DEFAULT,
                          rank_budget: int = RANK_BUDGET_DEFAULT
                          ) -> tuple[int, ...]:
    """Nonzero constituent indices sorted by distance descending, index
    ascending (the position order used by the distance bound)."""
    items = [(i, dec.constituent_distance(i, enum_budget=enum_budget,
                                          rank_budget=rank_budget))
             for i in dec.nonzero_indices()]
    items.sort(key=lambda t: (-t[1], t[0]))
    return tuple(i for i, _ in items)


@dataclass(frozen=True)
class AssociatedCodes:
    """Cyclic codes attached to subsets of the sorted constituents.

    ``order`` maps 1-based positions to 1-based factor indices; position
    1 carries the largest constituent distance.  ``subsets`` lists the
    position sets reported by the analyzer: every nonempty subset when
    there are at most MAX_SUBSET_FACTORS positions, otherwise the
    contiguous position ranges.
    """

    dec: ConstituentDecomposition
    order: tuple[int, ...]
    subsets: tuple[tuple[int, ...], ...]

    def factor_set(self, positions: Iterable[int]) -> frozenset[int]:
        pos = tuple(positions)
        for p in pos:
            if not 1 <= p <= len(self.order):
                raise ValueError(f"position {p} out of range")
        return frozenset(self.order[p - 1] for p in pos)

    def subcode(self, positions: Iterable[int]) -> CyclicCode:
        return subcode_from_bz(self.factor_set(positions), self.dec.fact)

    def distance(self, positions: Iterable[int], *,
                 enum_budget: int = ENUM_BUDGET_DEFAULT,
                 rank_budget: int = RANK_BUDGET_DEFAULT) -> int:
        return subcode_distance(self.dec.fact, self.factor_set(positions),
                                enum_budget=enum_budget,
                                rank_budget=rank_budget)


def associated_cyclic_codes(dec: ConstituentDecomposition, *,
                            order: tuple[int, ...] | None = None,
                            enum_budget: int = ENUM_BUDGET_DEFAULT,
                            rank_budget: int = RANK_BUDGET_DEFAULT
                            ) -> AssociatedCodes:
    """The sorted position order and the reported subset family.

    An explicit ``order`` (any permutation of the nonzero constituent
    indices, such as one produced by tie-breaking) overrides the default
    distance sort.
    """
    if order is None:
        order = distance_sorted_order(dec, enum_budget=enum_budget,
                                      rank_budget=rank_budget)
    elif sorted(order) != sorted(dec.nonzero_indices()):
        raise ValueError(
            "order is not a permutation of the nonzero constituent indices")
    h = len(order)
    if h <= MAX_SUBSET_FACTORS:
        subsets = [tuple(s) for w in range(1, h + 1)
                   for s in combinations(range(1, h + 1), w)]
    else:
        subsets = [tuple(range(s, e + 1))
                   for s in range(1, h + 1) for e in range(s, h + 1)]
    return AssociatedCodes(dec, order, tuple(subsets))
