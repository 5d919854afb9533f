"""Built-in reference cases.

Three decompositions with known bounds behavior, reachable by opaque ids
from the command line and the acceptance tests: a binary almost-optimal
code, the binary family whose two bounds keep a constant gap, and the
quinary family that turns optimal partway through its index set.
"""

from __future__ import annotations

from .algebra import factor_unity
from .codes import LinearCode
from .construct import exact_code
from .qc import ConstituentDecomposition

REFERENCE_IDS = ("4.1", "4.4", "4.6")


def _binary_almost_optimal() -> ConstituentDecomposition:
    """[21, 15] over F_2: distance bound one below the Singleton-type."""
    fact = factor_unity(7, 2)
    f1, f2, f3 = fact.factors
    c1 = LinearCode.from_rows(f1.ext_field, 3, [
        (f1.pack([1, 1, 1]), f1.pack([1, 1, 1]), f1.pack([1, 0, 1])),
        (0, f1.pack([1, 0, 1]), f1.pack([1, 0, 1]))])
    c2 = LinearCode.full(f2.ext_field, 3)
    c3 = LinearCode.zero(f3.ext_field, 3)
    return ConstituentDecomposition(fact, 3, (c1, c2, c3))


def _constant_gap_family() -> ConstituentDecomposition:
    """Family base over F_2 whose Singleton-type bound never moves."""
    fact = factor_unity(7, 2)
    f1, f2, f3 = fact.factors
    c1 = LinearCode.from_rows(f1.ext_field, 3, [(1, 0, 1), (0, 1, 1)])
    c2 = LinearCode.full(f2.ext_field, 3)
    c3 = LinearCode.zero(f3.ext_field, 3)
    return ConstituentDecomposition(fact, 3, (c1, c2, c3))


def _quinary_optimal_family() -> ConstituentDecomposition:
    """[77, 48] over F_5 whose extension family reaches optimality."""
    fact = factor_unity(11, 5)
    f1, f2, f3 = fact.factors
    c1 = exact_code(f1.ext_field, 7, 4, 3)
    c2 = exact_code(f2.ext_field, 7, 5, 2)
    c3 = exact_code(f3.ext_field, 7, 3, 4)
    return ConstituentDecomposition(fact, 7, (c1, c2, c3))


_BUILDERS = {
    "4.1": _binary_almost_optimal,
    "4.4": _constant_gap_family,
    "4.6": _quinary_optimal_family,
}


def reference_case(case_id: str) -> ConstituentDecomposition:
    """The decomposition behind a built-in reference id."""
    builder = _BUILDERS.get(case_id)
    if builder is None:
        raise ValueError(f"unknown reference case {case_id!r}; "
                         f"known ids: {', '.join(REFERENCE_IDS)}")
    return builder()
