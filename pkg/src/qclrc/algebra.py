"""Exact finite field and polynomial arithmetic.

Fields are prime fields F_p or towers of explicit quotient-ring extensions.
Elements are plain integers: the index of the element's coefficient vector
in base-q positional notation, where q is the order of the field one step
down.  Index 0 is zero and index 1 is one in every field, and the elements
of any field lower in the same tower are exactly the indices below its
order, so embedding along a tower is the identity on indices.

The module also builds cyclotomic cosets and the factorization of x^m - 1
into irreducible factors, one per coset, together with the extension field
and distinguished root attached to each factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InternalConsistencyError

# Log/antilog tables are built lazily for fields up to this order.
_TABLE_MAX = 1 << 16


def _prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n, by trial division."""
    out: list[int] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime(n: int) -> bool:
    return n >= 2 and _prime_factors(n) == [n]


class Field:
    """A finite field: F_p, or an extension of another Field by a modulus.

    Construct through :func:`make_prime_field`, :func:`make_field` or
    :func:`make_extension`; the constructor itself is internal.  Instances
    are immutable values (the only mutable state is an internal table
    cache); equality is structural on the modulus chain.
    """

    __slots__ = ("char", "base", "modulus", "order", "degree", "_sig",
                 "_exp", "_log", "_unity_ctx")

    def __init__(self, char: int, base: "Field | None",
                 modulus: "Poly | None"):
        self.char = char
        self.base = base
        self.modulus = modulus
        if base is None:
            self.order = char
            self.degree = 1
            self._sig: tuple = (char,)
        else:
            step = modulus.degree
            self.order = base.order ** step
            self.degree = base.degree * step
            self._sig = base._sig + (modulus.coeffs,)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._unity_ctx: dict[int, "_UnityContext"] = {}

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self._sig == other._sig

    def __hash__(self) -> int:
        return hash(self._sig)

    def __repr__(self) -> str:
        if self.degree == 1:
            return f"F({self.char})"
        return f"F({self.char}^{self.degree})"

    @property
    def is_prime(self) -> bool:
        return self.base is None

    @property
    def gen(self) -> int:
        """The distinguished generator: the class of x in the top quotient."""
        if self.base is None:
            raise ValueError("prime field has no extension generator")
        return self.base.order

    def elements(self) -> range:
        return range(self.order)

    # -- additive structure -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.char
        if p == 2:
            return a ^ b
        if self.base is None:
            return (a + b) % p
        # Addition is coefficientwise mod p at every tower level, which is
        # digitwise mod p on the base-p expansion of the packed index.
        out = 0
        place = 1
        while a or b:
            out += ((a + b) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a: int) -> int:
        p = self.char
        if p == 2 or a == 0:
            return a
        if self.base is None:
            return (-a) % p
        out = 0
        place = 1
        while a:
            out += ((p - a % p) % p) * place
            a //= p
            place *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    # -- multiplicative structure -------------------------------------------

    def mul(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.char
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        if self._exp is None and self.order <= _TABLE_MAX:
            self._build_tables()
        if self._exp is not None:
            n = self.order - 1
            return self._exp[(self._log[a] + self._log[b]) % n]
        return self._mul_raw(a, b)

    def _unpack(self, a: int) -> list[int]:
        """Coefficients of a over the base field, ascending, padded."""
        q = self.base.order
        step = self.modulus.degree
        out = [0] * step
        for i in range(step):
            out[i] = a % q
            a //= q
        return out

    def _pack(self, coeffs: Sequence[int]) -> int:
        q = self.base.order
        out = 0
        for c in reversed(coeffs):
            out = out * q + c
        return out

    def _mul_raw(self, a: int, b: int) -> int:
        """Schoolbook product of coefficient vectors, reduced by the modulus."""
        base = self.base
        step = self.modulus.degree
        av = self._unpack(a)
        bv = self._unpack(b)
        prod = [0] * (2 * step - 1)
        for i, ai in enumerate(av):
            if ai == 0:
                continue
            for j, bj in enumerate(bv):
                if bj:
                    prod[i + j] = base.add(prod[i + j], base.mul(ai, bj))
        mod = self.modulus.coeffs  # monic
        for i in range(len(prod) - 1, step - 1, -1):
            lead = prod[i]
            if lead == 0:
                continue
            prod[i] = 0
            for j in range(step):
                prod[i - step + j] = base.sub(
                    prod[i - step + j], base.mul(lead, mod[j]))
        return self._pack(prod[:step])

    def _build_tables(self) -> None:
        g = self.multiplicative_generator()
        n = self.order - 1
        exp = [1] * n
        for t in range(1, n):
            exp[t] = self._mul_raw(exp[t - 1], g) if self.base is not None \
                else (exp[t - 1] * g) % self.char
        log = [0] * self.order
        for t, v in enumerate(exp):
            log[v] = t
        self._exp = exp
        self._log = log

    def multiplicative_generator(self) -> int:
        """Smallest element (by index) of full multiplicative order."""
        n = self.order - 1
        if n == 1:
            return 1
        primes = _prime_factors(n)
        for cand in range(2, self.order):
            if all(self._pow_raw(cand, n // r) != 1 for r in primes):
                return cand
        raise InternalConsistencyError("no multiplicative generator found")

    def _pow_raw(self, a: int, e: int) -> int:
        out = 1
        mul = self._mul_raw if self.base is not None else \
            (lambda x, y: (x * y) % self.char)
        while e:
            if e & 1:
                out = mul(out, a)
            a = mul(a, a)
            e >>= 1
        return out

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.base is None:
            return pow(a, e, self.char)
        if a == 0:
            if e == 0:
                return 1
            return 0
        if self.base is not None and self._exp is None \
                and self.order <= _TABLE_MAX:
            self._build_tables()
        if self._exp is not None:
            n = self.order - 1
            return self._exp[(self._log[a] * e) % n]
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- tower relations ------------------------------------------------------

    def chain(self) -> list["Field"]:
        """The fields of this tower, prime field first, self last."""
        out: list[Field] = []
        f: Field | None = self
        while f is not None:
            out.append(f)
            f = f.base
        return out[::-1]

    def degree_over(self, sub: "Field") -> int:
        """Extension degree [self : sub]; sub must lie in this tower."""
        if sub not in self.chain():
            raise ValueError(f"{sub} is not a subfield of {self} in its tower")
        return self.degree // sub.degree


@lru_cache(maxsize=None)
def make_prime_field(p: int) -> Field:
    """The prime field F_p.

    Rejects composite p with a diagnostic.
    """
    if not _is_prime(p):
        raise ValueError(f"not prime: {p}")
    return Field(p, None, None)


_EXT_CACHE: dict[tuple, Field] = {}


def make_extension(base: Field, modulus: "Poly") -> Field:
    """The quotient field base[x] / <modulus>.

    The modulus must be monic and irreducible over ``base``.  The class of
    x is the distinguished generator of the result.  A degree-1 modulus
    x - c names no proper extension: the base field itself is returned
    (its root is c, recoverable from the modulus).
    """
    if modulus.field != base:
        raise ValueError("modulus is not a polynomial over the base field")
    if not modulus.is_monic():
        raise ValueError("modulus must be monic")
    if modulus.degree == 1:
        return base
    if not is_irreducible(modulus):
        raise ValueError(f"reducible modulus: {modulus}")
    key = (base._sig, modulus.coeffs)
    got = _EXT_CACHE.get(key)
    if got is None:
        got = _EXT_CACHE[key] = Field(base.char, base, modulus)
    return got


@lru_cache(maxsize=None)
def make_field(q: int) -> Field:
    """The field of order q = p^a, built deterministically.

    Prime q gives F_p; prime powers extend F_p by the lexicographically
    smallest irreducible polynomial of degree a.
    """
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    p = _prime_factors(q)[0] if not _is_prime(q) else q
    a = 0
    n = q
    while n % p == 0:
        n //= p
        a += 1
    if n != 1:
        raise ValueError(f"not a prime power: {q}")
    fp = make_prime_field(p)
    if a == 1:
        return fp
    return make_extension(fp, find_irreducible(fp, a))


def field_trace(z: int, sup: Field, sub: Field) -> int:
    """Trace of z from sup down to sub: the sum of z**(|sub|**t).

    Both fields must belong to one registered tower; the result is an
    element of ``sub`` (verified).
    """
    e = sup.degree_over(sub)
    s = sub.order
    acc = 0
    w = z
    for _ in range(e):
        acc = sup.add(acc, w)
        w = sup.pow(w, s)
    if acc >= sub.order:
        raise InternalConsistencyError(
            f"trace {acc} did not land in the subfield of order {sub.order}")
    return acc


class Poly:
    """Univariate polynomial over a Field, coefficients ascending by degree.

    Canonical form: trailing zero coefficients are stripped, so the leading
    coefficient is nonzero unless the polynomial is zero (empty tuple).
    Immutable and hashable.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[int]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        for c in cs:
            if not 0 <= c < field.order:
                raise ValueError(f"coefficient {c} outside field of order "
                                 f"{field.order}")
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def constant(cls, field: Field, c: int) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def x_pow(cls, field: Field, e: int) -> "Poly":
        return cls(field, (0,) * e + (1,))

    @classmethod
    def monic_from_index(cls, field: Field, degree: int, index: int) -> "Poly":
        """Monic polynomial of the given degree whose lower coefficients
        are the base-q digits of ``index`` (degree-0 digit first)."""
        q = field.order
        cs = []
        for _ in range(degree):
            cs.append(index % q)
            index //= q
        cs.append(1)
        return cls(field, cs)

    # -- structure --------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    # -- arithmetic ---------------------------------------------------------------

    def add(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def neg(self) -> "Poly":
        F = self.field
        return Poly(F, (F.neg(c) for c in self.coeffs))

    def sub(self, other: "Poly") -> "Poly":
        return self.add(other.neg())

    def mul(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, (F.mul(c, a) for a in self.coeffs))

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv(self.leading()))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        dlead = other.leading()
        dinv = F.inv(dlead)
        dd = other.degree
        quo = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = F.mul(c, dinv)
            quo[i - dd] = f
            for j, oc in enumerate(other.coeffs):
                rem[i - dd + j] = F.sub(rem[i - dd + j], F.mul(f, oc))
        return Poly(F, quo), Poly(F, rem)

    def mod(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def divides(self, other: "Poly") -> bool:
        return other.mod(self).is_zero()

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.mod(b)
        return a.monic() if not a.is_zero() else a

    def pow_mod(self, e: int, mod: "Poly") -> "Poly":
        out = Poly.one(self.field)
        base = self.mod(mod)
        while e:
            if e & 1:
                out = out.mul(base).mod(mod)
            base = base.mul(base).mod(mod)
            e >>= 1
        return out

    def reciprocal(self) -> "Poly":
        """Coefficient reversal: x^deg * p(1/x)."""
        return Poly(self.field, tuple(reversed(self.coeffs)))

    def eval_at(self, elem: int, target: Field | None = None) -> int:
        """Horner evaluation at an element of ``target`` (default: own field).

        Coefficients embed into ``target`` by index, which is valid when the
        coefficient field lies in target's tower.
        """
        F = target or self.field
        if F is not self.field and self.field not in F.chain():
            raise ValueError("coefficient field is not in the target tower")
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, elem), c)
        return acc


def is_irreducible(f: Poly) -> bool:
    """True iff a nonconstant polynomial has no nontrivial factor.

    Uses the distinct-degree sieve: f of degree n is irreducible iff
    gcd(x^(q^t) - x, f) is constant for every t up to n/2.
    """
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    F = f.field
    q = F.order
    x = Poly.x_pow(F, 1)
    r = x
    for _ in range(n // 2):
        r = r.pow_mod(q, f)
        if not r.sub(x).gcd(f).degree <= 0:
            return False
    return True


def find_irreducible(field: Field, degree: int) -> Poly:
    """Lexicographically smallest monic irreducible of the given degree.

    Monic candidates are scanned in base-q counting order of their lower
    coefficient vector; deterministic across runs.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    for index in range(field.order ** degree):
        cand = Poly.monic_from_index(field, degree, index)
        if is_irreducible(cand):
            return cand
    raise InternalConsistencyError(
        f"no irreducible of degree {degree} found over {field}")


@dataclass(frozen=True)
class CyclotomicCoset:
    """Orbit of an exponent under multiplication by q modulo m."""

    m: int
    rep: int
    members: tuple[int, ...]


def cyclotomic_cosets(m: int, q: int | Field) -> list[CyclotomicCoset]:
    """Partition of {0..m-1} into orbits under multiplication by q mod m.

    Sorted by smallest member (the representative); the coset of 0 is {0}
    and comes first.  Requires gcd(m, q) = 1.
    """
    qn = q.order if isinstance(q, Field) else q
    if m < 1:
        raise ValueError("m must be positive")
    if math.gcd(m, qn) != 1:
        raise ValueError(f"gcd(m, q) must be 1, got m={m}, q={qn}")
    seen = [False] * m
    out = []
    for r in range(m):
        if seen[r]:
            continue
        orbit = []
        v = r
        while not seen[v]:
            seen[v] = True
            orbit.append(v)
            v = (v * qn) % m
        out.append(CyclotomicCoset(m, r, tuple(sorted(orbit))))
    return out


class _UnityContext:
    """Splitting-field data for the m-th roots of unity over one field."""

    __slots__ = ("m", "field", "ext_degree", "splitting", "beta")

    def __init__(self, m: int, field: Field):
        self.m = m
        self.field = field
        q = field.order
        if math.gcd(m, q) != 1:
            raise ValueError(f"gcd(m, q) must be 1, got m={m}, q={q}")
        w = 1
        acc = q % m
        while acc != 1 % m:
            acc = (acc * q) % m
            w += 1
        self.ext_degree = w
        self.splitting = field if w == 1 else \
            make_extension(field, find_irreducible(field, w))
        big = self.splitting
        if m == 1:
            self.beta = 1
        else:
            g = big.multiplicative_generator()
            self.beta = big.pow(g, (big.order - 1) // m)
        if big.pow(self.beta, m) != 1:
            raise InternalConsistencyError("root of unity has wrong order")
        for r in _prime_factors(m):
            if m > 1 and big.pow(self.beta, m // r) == 1:
                raise InternalConsistencyError("root of unity has low order")


def unity_context(m: int, field: Field) -> _UnityContext:
    ctx = field._unity_ctx.get(m)
    if ctx is None:
        ctx = field._unity_ctx[m] = _UnityContext(m, field)
    return ctx


def minimal_polynomial(u: int, m: int, q: int | Field) -> Poly:
    """Minimal polynomial over F_q of the u-th power of the canonical
    primitive m-th root of unity: the product of (x - root^(u q^t)) over
    the cyclotomic coset of u.

    Every coefficient must descend to F_q; a failure to descend signals a
    broken tower and raises InternalConsistencyError.
    """
    field = q if isinstance(q, Field) else make_field(q)
    ctx = unity_context(m, field)
    big = ctx.splitting
    coset = {u % m}
    v = (u * field.order) % m
    while v not in coset:
        coset.add(v)
        v = (v * field.order) % m
    prod = Poly.one(big)
    for t in sorted(coset):
        root = big.pow(ctx.beta, t)
        prod = prod.mul(Poly(big, (big.neg(root), 1)))
    down = []
    for c in prod.coeffs:
        if c >= field.order:
            raise InternalConsistencyError(
                f"coefficient {c} of a factor of x^{m}-1 did not descend")
        down.append(c)
    return Poly(field, down)


@dataclass(frozen=True)
class FactorInfo:
    """One irreducible factor of x^m - 1 with its attached field data.

    ``ext_field`` realizes F_q adjoined the factor's root; ``root`` is that
    root's index inside ext_field (the class of x for factors of degree at
    least 2, the literal base-field root for linear factors).
    """

    poly: Poly
    coset: CyclotomicCoset
    rep: int
    ext_field: Field
    root: int
    _root_powers: dict[int, int] = dc_field(default_factory=dict, repr=False,
                                            compare=False)

    @property
    def degree(self) -> int:
        return self.poly.degree

    def pack(self, coeffs: Sequence[int]) -> int:
        """Element of ext_field with the given coefficients in the root."""
        q = self.poly.field.order
        out = 0
        for c in reversed(coeffs):
            out = out * q + c
        if out >= self.ext_field.order:
            raise ValueError("coefficient vector too long for this factor")
        return out

    def unpack(self, elem: int) -> tuple[int, ...]:
        """Coefficient vector of an ext_field element in the root."""
        q = self.poly.field.order
        out = []
        for _ in range(self.degree):
            out.append(elem % q)
            elem //= q
        return tuple(out)

    def eval(self, a: Poly) -> int:
        """Evaluate a(x) over F_q at this factor's root.

        Reduction of a mod the factor gives the coefficient vector of the
        value in the root; for linear factors this is Horner evaluation.
        """
        if self.degree == 1:
            return a.eval_at(self.root, self.ext_field)
        rem = a.mod(self.poly)
        return self.pack(rem.coeffs + (0,) * (self.degree - len(rem.coeffs)))

    def root_power(self, e: int) -> int:
        """The root raised to e, memoized."""
        e %= max(self.coset.m, 1)
        got = self._root_powers.get(e)
        if got is None:
            got = self._root_powers[e] = self.ext_field.pow(self.root, e)
        return got


@dataclass(frozen=True)
class Factorization:
    """The factorization of x^m - 1 over F_q, one factor per coset.

    Factors are ordered by nonzero representative ascending, with the
    x - 1 factor (representative 0) last.
    """

    m: int
    field: Field
    factors: tuple[FactorInfo, ...]
    _subcode_cache: dict = dc_field(default_factory=dict, repr=False,
                                    compare=False)

    @property
    def num_factors(self) -> int:
        return len(self.factors)

    def factor_by_member(self, exponent: int) -> FactorInfo:
        """The factor whose coset contains the given exponent mod m."""
        e = exponent % self.m
        for f in self.factors:
            if e in f.coset.members:
                return f
        raise InternalConsistencyError(f"exponent {e} not covered by cosets")


def factor_unity(m: int, q: int | Field) -> Factorization:
    """Factor x^m - 1 over F_q into irreducible polynomials.

    One factor per cyclotomic coset; the product is verified to equal
    x^m - 1 exactly.  The factor x - 1 carries the last index.
    """
    field = q if isinstance(q, Field) else make_field(q)
    cosets = cyclotomic_cosets(m, field)
    ctx = unity_context(m, field)
    ordered = [c for c in cosets if c.rep != 0] + \
        [c for c in cosets if c.rep == 0]
    infos = []
    for coset in ordered:
        poly = minimal_polynomial(coset.rep, m, field)
        if poly.degree != len(coset.members):
            raise InternalConsistencyError(
                f"factor degree {poly.degree} != coset size "
                f"{len(coset.members)}")
        if poly.degree == 1:
            ext = field
            root = field.neg(poly.coeffs[0])
        else:
            ext = make_extension(field, poly)
            root = ext.gen
        infos.append(FactorInfo(poly, coset, coset.rep, ext, root))
    prod = Poly.one(field)
    for info in infos:
        prod = prod.mul(info.poly)
    target = Poly.x_pow(field, m).sub(Poly.one(field))
    if prod != target:
        raise InternalConsistencyError(
            "product of cyclotomic factors is not x^m - 1")
    _ = ctx
    return Factorization(m, field, tuple(infos))
