"""Linear and cyclic codes over constructed fields.

Generator matrices are normalized to reduced row-echelon form, so two
codes are equal exactly when their stored matrices are equal.  Minimum
distance is computed exactly by one of two strategies (full codeword
enumeration, or a search for the smallest dependent column set of a
parity-check matrix), each guarded by an explicit budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .algebra import Factorization, Field, Poly
from .errors import InternalConsistencyError, ResourceLimitError

ENUM_BUDGET_DEFAULT = 1 << 24
RANK_BUDGET_DEFAULT = 10 ** 7

# numpy enumeration uses lookup tables up to this field order
_NUMPY_TABLE_MAX = 64
_CHUNK = 1 << 18


def rref(rows: Iterable[Sequence[int]], field: Field
         ) -> tuple[tuple[tuple[int, ...], ...], int, tuple[int, ...]]:
    """Reduced row-echelon form with leading ones.

    Returns (echelon rows including zero rows, rank, pivot columns).
    """
    mat = [list(r) for r in rows]
    if not mat:
        return (), 0, ()
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = field.inv(mat[r][c])
        if inv != 1:
            mat[r] = [field.mul(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [field.sub(a, field.mul(f, b))
                          for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat), r, tuple(pivots)


@dataclass(frozen=True)
class LinearCode:
    """A linear code of length n, stored as an RREF generator matrix.

    ``rows`` holds only the nonzero rows, so the dimension is len(rows).
    The zero code has an empty row tuple.
    """

    field: Field
    n: int
    rows: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def from_rows(cls, field: Field, n: int,
                  rows: Iterable[Sequence[int]]) -> "LinearCode":
        mat = [tuple(r) for r in rows]
        for r in mat:
            if len(r) != n:
                raise ValueError(f"row length {len(r)} != code length {n}")
            for v in r:
                if not 0 <= v < field.order:
                    raise ValueError(f"entry {v} outside field of order "
                                     f"{field.order}")
        ech, rank, piv = rref(mat, field)
        return cls(field, n, ech[:rank], piv)

    @classmethod
    def zero(cls, field: Field, n: int) -> "LinearCode":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: Field, n: int) -> "LinearCode":
        rows = tuple(tuple(1 if j == i else 0 for j in range(n))
                     for i in range(n))
        return cls(field, n, rows, tuple(range(n)))

    @property
    def k(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Residual of a vector after subtracting its pivot components."""
        F = self.field
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != 0:
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, vec: Sequence[int]) -> bool:
        if len(vec) != self.n:
            return False
        return all(v == 0 for v in self.reduce(vec))

    def dual(self) -> "LinearCode":
        """The code of vectors orthogonal to every generator row."""
        F = self.field
        n = self.n
        free = [c for c in range(n) if c not in self.pivots]
        basis = []
        for f in free:
            v = [0] * n
            v[f] = 1
            for row, p in zip(self.rows, self.pivots):
                v[p] = F.neg(row[f])
            basis.append(v)
        return LinearCode.from_rows(F, n, basis)

    def codewords(self):
        """Iterate all codewords (messages in base-q counting order)."""
        F = self.field
        q = F.order
        k = self.k
        for idx in range(q ** k):
            msg = []
            t = idx
            for _ in range(k):
                msg.append(t % q)
                t //= q
            word = [0] * self.n
            for coef, row in zip(msg, self.rows):
                if coef:
                    word = [F.add(w, F.mul(coef, r))
                            for w, r in zip(word, row)]
            yield tuple(word)


# ---------------------------------------------------------------------------
# minimum distance


def _enum_tables(field: Field) -> tuple[np.ndarray, np.ndarray]:
    q = field.order
    add = np.empty((q, q), dtype=np.uint8)
    mul = np.empty((q, q), dtype=np.uint8)
    for a in range(q):
        for b in range(q):
            add[a, b] = field.add(a, b)
            mul[a, b] = field.mul(a, b)
    return add, mul


def _min_weight_enum(code: LinearCode, limit: int) -> int:
    """Minimum weight by enumerating all q^k nonzero codewords."""
    F = code.field
    q = F.order
    k, n = code.k, code.n
    total = q ** k
    if F.is_prime:
        G = np.array(code.rows, dtype=np.int64)
        use_float = k * (q - 1) * (q - 1) < (1 << 50)
        Gf = G.astype(np.float64) if use_float else G
        best = n + 1
        for lo in range(1, total, _CHUNK):
            hi = min(lo + _CHUNK, total)
            idx = np.arange(lo, hi, dtype=np.int64)
            M = np.empty((hi - lo, k), dtype=np.int64)
            for i in range(k):
                M[:, i] = idx % q
                idx //= q
            if use_float:
                C = (M.astype(np.float64) @ Gf) % q
                w = np.count_nonzero(C, axis=1)
            else:
                C = (M @ G) % q
                w = np.count_nonzero(C, axis=1)
            best = min(best, int(w.min()))
            if best == 1:
                break
        return best
    if q <= _NUMPY_TABLE_MAX:
        add, mul = _enum_tables(F)
        G = np.array(code.rows, dtype=np.uint8)
        best = n + 1
        for lo in range(1, total, _CHUNK):
            hi = min(lo + _CHUNK, total)
            idx = np.arange(lo, hi, dtype=np.int64)
            M = np.empty((hi - lo, k), dtype=np.uint8)
            for i in range(k):
                M[:, i] = idx % q
                idx //= q
            C = np.zeros((hi - lo, n), dtype=np.uint8)
            for i in range(k):
                term = mul[M[:, i][:, None], G[i][None, :]]
                C = add[C, term]
            w = np.count_nonzero(C, axis=1)
            best = min(best, int(w.min()))
            if best == 1:
                break
        return best
    best = n + 1
    for word in code.codewords():
        w = sum(1 for v in word if v)
        if 0 < w < best:
            best = w
            if best == 1:
                break
    return best


def _dependent_mod_p(rows: list[tuple[int, ...]], p: int) -> bool:
    """Whether the rows are linearly dependent over the prime field F_p."""
    mat = [list(r) for r in rows]
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        row = mat[r] = [(inv * v) % p for v in mat[r]]
        for i in range(r + 1, len(mat)):
            f = mat[i][c]
            if f:
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], row)]
        r += 1
        if r == len(mat):
            return False
    return True


def _min_weight_parity(code: LinearCode, rank_budget: int) -> int:
    """Smallest w such that some w parity-check columns are dependent.

    Layers run in increasing w; before each layer the cumulative subset
    count is checked against the budget, so the search either completes
    exactly or rejects upfront, never mid-layer with a wrong answer.
    """
    F = code.field
    H = code.dual().rows
    rho = len(H)
    n = code.n
    cols = [tuple(row[j] for row in H) for j in range(n)]
    prime = F.is_prime
    checked = 0
    for w in range(1, rho + 2):
        checked += comb(n, w)
        if checked > rank_budget:
            raise ResourceLimitError(
                f"instance too large: parity-check search needs up to "
                f"{checked} subset-rank checks, budget is {rank_budget}")
        if prime:
            p = F.order
            for subset in combinations(range(n), w):
                if _dependent_mod_p([cols[j] for j in subset], p):
                    return w
        else:
            for subset in combinations(range(n), w):
                _, rank, _ = rref([cols[j] for j in subset], F)
                if rank < w:
                    return w
    raise InternalConsistencyError(
        "no dependent column set of size redundancy+1 exists")


def min_distance(code: LinearCode, *,
                 enum_budget: int = ENUM_BUDGET_DEFAULT,
                 rank_budget: int = RANK_BUDGET_DEFAULT,
                 strategy: str = "auto") -> int:
    """Exact minimum Hamming weight over the nonzero codewords.

    Strategy "auto" enumerates codewords when q^k fits the enumeration
    budget and otherwise searches for the smallest linearly dependent set
    of parity-check columns.  Weight counts nonzero symbols of the code's
    own alphabet.  The zero code is rejected; budget exhaustion raises
    ResourceLimitError rather than returning a wrong answer.
    """
    if strategy not in ("auto", "enumeration", "parity"):
        raise ValueError(f"unknown strategy: {strategy!r}")
    if code.k == 0:
        raise ValueError("zero code has no minimum distance")
    if code.k == code.n:
        return 1
    q = code.field.order
    fits_enum = q ** code.k <= enum_budget
    if strategy == "enumeration":
        if not fits_enum:
            raise ResourceLimitError(
                f"instance too large: {q}^{code.k} codewords exceed the "
                f"enumeration budget {enum_budget}")
        return _min_weight_enum(code, enum_budget)
    if strategy == "parity":
        return _min_weight_parity(code, rank_budget)
    if fits_enum:
        return _min_weight_enum(code, enum_budget)
    return _min_weight_parity(code, rank_budget)


def min_weight_codeword(code: LinearCode, *,
                        enum_budget: int = ENUM_BUDGET_DEFAULT
                        ) -> tuple[int, tuple[int, ...]]:
    """A codeword of minimum weight, found by enumeration.

    Returns (weight, word).  Intended for small codes (recovery vectors);
    enumeration beyond the budget is rejected.
    """
    if code.k == 0:
        raise ValueError("zero code has no minimum-weight codeword")
    if code.field.order ** code.k > enum_budget:
        raise ResourceLimitError(
            "instance too large for minimum-weight codeword enumeration")
    best_w = code.n + 1
    best = None
    for word in code.codewords():
        w = sum(1 for v in word if v)
        if 0 < w < best_w:
            best_w, best = w, word
            if w == 1:
                break
    assert best is not None
    return best_w, best


# ---------------------------------------------------------------------------
# cyclic codes


@dataclass(frozen=True)
class CyclicCode:
    """A cyclic code of length m given by a monic generator polynomial
    dividing x^m - 1.  Generator x^m - 1 itself encodes the zero code."""

    field: Field
    m: int
    gpoly: Poly

    @property
    def k(self) -> int:
        return self.m - self.gpoly.degree

    def linear_code(self) -> LinearCode:
        """Generator matrix rows x^t * g for t = 0..k-1."""
        g = list(self.gpoly.coeffs)
        rows = []
        for t in range(self.k):
            row = [0] * self.m
            for i, c in enumerate(g):
                row[t + i] = c
            rows.append(row)
        return LinearCode.from_rows(self.field, self.m, rows)

    def dual(self) -> "CyclicCode":
        """Cyclic dual: reciprocal of (x^m - 1)/g, normalized monic."""
        F = self.field
        xm1 = Poly.x_pow(F, self.m).sub(Poly.one(F))
        h, rem = xm1.divmod(self.gpoly)
        if not rem.is_zero():
            raise InternalConsistencyError("generator does not divide x^m-1")
        return CyclicCode(F, self.m, h.reciprocal().monic())

    def contains_poly(self, a: Poly) -> bool:
        return self.gpoly.divides(a) if not a.is_zero() else True


def cyclic_code(g: Poly, m: int) -> CyclicCode:
    """The cyclic code of length m generated by g; g must divide x^m - 1."""
    F = g.field
    xm1 = Poly.x_pow(F, m).sub(Poly.one(F))
    gm = g.monic() if not g.is_zero() else g
    if gm.is_zero() or not gm.divides(xm1):
        raise ValueError(f"generator does not divide x^{m} - 1")
    return CyclicCode(F, m, gm)


def cyclic_dual(code: CyclicCode) -> CyclicCode:
    return code.dual()


def subcode_from_bz(I: Iterable[int], fact: Factorization) -> CyclicCode:
    """The cyclic code whose dual's basic zero set is the negated factor
    roots selected by I (1-based factor indices into the factorization).

    The code is the cyclic dual of the code generated by the product of
    the minimal polynomials of the selected roots' inverses.
    """
    idx = sorted(set(I))
    if not idx:
        raise ValueError("empty index set")
    polys = []
    for i in idx:
        if not 1 <= i <= fact.num_factors:
            raise ValueError(f"factor index {i} out of range")
        u = fact.factors[i - 1].rep
        minpoly = fact.factor_by_member(-u % fact.m).poly
        if minpoly not in polys:
            polys.append(minpoly)
    g = Poly.one(fact.field)
    for p in polys:
        g = g.mul(p)
    return cyclic_code(g, fact.m).dual()


def subcode_distance(fact: Factorization, I: Iterable[int], *,
                     enum_budget: int = ENUM_BUDGET_DEFAULT,
                     rank_budget: int = RANK_BUDGET_DEFAULT) -> int:
    """Minimum distance of subcode_from_bz(I, fact), cached per index set."""
    key = frozenset(I)
    cache = fact._subcode_cache
    got = cache.get(key)
    if got is None:
        sub = subcode_from_bz(key, fact)
        got = cache[key] = min_distance(
            sub.linear_code(), enum_budget=enum_budget,
            rank_budget=rank_budget)
    return got
