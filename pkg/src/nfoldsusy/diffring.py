"""Exact differential polynomial ring over Q with a weight grading.

Generators are derivative symbols w_k^(m), u_k^(m), V+^(m), V-^(m), the
integration constants C_k and dimensionless parameters alpha/beta/gamma.
Every generator carries an integer weight (the negated power of length of
the physical quantity it stands for); the weight of w_k and u_k depends on
the ambient order N, so each polynomial records its ambient N and refuses
arithmetic across different ambients.

All coefficients are `fractions.Fraction`; there is no floating point in
this module or anywhere downstream of it.
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from .config import max_deriv_order


class Family(IntEnum):
    """Generator families, in canonical order."""

    W = 0
    U = 1
    VPLUS = 2
    VMINUS = 3
    C = 4
    PARAM = 5


# PARAM indices pack (group, subindex) as group * _PARAM_STRIDE + subindex.
_PARAM_GROUPS = ("alpha", "beta", "gamma")
_PARAM_STRIDE = 100


class DiffRingError(Exception):
    pass


class AmbientMismatchError(DiffRingError):
    pass


class ZeroPolynomialError(DiffRingError):
    pass


class InhomogeneousError(DiffRingError):
    """Raised when a weight is requested of a mixed-weight polynomial."""

    def __init__(self, offenders):
        self.offenders = offenders  # list of (monomial, weight)
        detail = ", ".join(f"{m} (weight {w})" for m, w in offenders[:6])
        super().__init__(f"polynomial is not weight-homogeneous: {detail}")


class DerivOrderError(DiffRingError):
    pass


class Generator(NamedTuple):
    family: Family
    index: int
    deriv: int = 0

    def weight(self, n: int) -> int:
        if self.family in (Family.W, Family.U):
            return n - self.index + self.deriv
        if self.family in (Family.VPLUS, Family.VMINUS):
            return 2 + self.deriv
        if self.family is Family.C:
            return 2 * (self.index + 1)
        return 0

    def derived(self) -> "Generator | None":
        """One derivative up, or None for constants (C, PARAM)."""
        if self.family in (Family.C, Family.PARAM):
            return None
        if self.deriv + 1 > max_deriv_order():
            raise DerivOrderError(
                f"derivative order {self.deriv + 1} exceeds the configured cap"
            )
        return Generator(self.family, self.index, self.deriv + 1)

    def is_constant(self) -> bool:
        return self.family in (Family.C, Family.PARAM)

    def base(self) -> "Generator":
        return Generator(self.family, self.index, 0)

    def token(self) -> str:
        primes = "'" * self.deriv
        if self.family is Family.W:
            return f"w{self.index}{primes}"
        if self.family is Family.U:
            return f"u{self.index}{primes}"
        if self.family is Family.VPLUS:
            return f"V+{primes}"
        if self.family is Family.VMINUS:
            return f"V-{primes}"
        if self.family is Family.C:
            return f"C{self.index}"
        group, sub = divmod(self.index, _PARAM_STRIDE)
        return f"{_PARAM_GROUPS[group]}{sub}"

    def __str__(self) -> str:
        return self.token()


def w(k: int, m: int = 0) -> Generator:
    return Generator(Family.W, k, m)


def u(k: int, m: int = 0) -> Generator:
    return Generator(Family.U, k, m)


def vplus(m: int = 0) -> Generator:
    return Generator(Family.VPLUS, 0, m)


def vminus(m: int = 0) -> Generator:
    return Generator(Family.VMINUS, 0, m)


def c(k: int) -> Generator:
    return Generator(Family.C, k, 0)


def alpha(k: int) -> Generator:
    return Generator(Family.PARAM, k, 0)


def beta(k: int) -> Generator:
    return Generator(Family.PARAM, _PARAM_STRIDE + k, 0)


def gamma(k: int) -> Generator:
    return Generator(Family.PARAM, 2 * _PARAM_STRIDE + k, 0)


def param_name(gen: Generator) -> str:
    if gen.family is not Family.PARAM:
        raise ValueError(f"{gen} is not a parameter generator")
    return gen.token()


_PARAM_BY_NAME = {"alpha": alpha, "beta": beta, "gamma": gamma}


def param_by_name(name: str) -> Generator:
    for prefix, ctor in _PARAM_BY_NAME.items():
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return ctor(int(name[len(prefix):]))
    raise ValueError(f"unknown parameter name {name!r}")


class Monomial:
    """Product of generator powers; exponents positive, factors sorted."""

    __slots__ = ("exps",)

    def __init__(self, exps: Iterable[tuple[Generator, int]] = ()):
        items = [(g, e) for g, e in exps if e != 0]
        if any(e < 0 for _, e in items):
            raise ValueError("negative exponent in monomial")
        items.sort(key=lambda p: p[0])
        self.exps: tuple[tuple[Generator, int], ...] = tuple(items)

    @classmethod
    def unit(cls) -> "Monomial":
        return _UNIT

    @classmethod
    def of(cls, gen: Generator, exp: int = 1) -> "Monomial":
        return cls([(gen, exp)])

    def is_unit(self) -> bool:
        return not self.exps

    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def weight(self, n: int) -> int:
        return sum(e * g.weight(n) for g, e in self.exps)

    def generators(self) -> Iterator[Generator]:
        return (g for g, _ in self.exps)

    def exponent(self, gen: Generator) -> int:
        for g, e in self.exps:
            if g == gen:
                return e
        return 0

    def is_constant(self) -> bool:
        """True when every factor is annihilated by the derivation."""
        return all(g.is_constant() for g, _ in self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        merged = dict(self.exps)
        for g, e in other.exps:
            merged[g] = merged.get(g, 0) + e
        return Monomial(merged.items())

    def divides(self, other: "Monomial") -> bool:
        it = dict(other.exps)
        return all(it.get(g, 0) >= e for g, e in self.exps)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        merged = dict(self.exps)
        for g, e in other.exps:
            have = merged.get(g, 0) - e
            if have < 0:
                raise ValueError(f"{other} does not divide {self}")
            merged[g] = have
        return Monomial(merged.items())

    def max_deriv(self) -> int:
        return max((g.deriv for g, _ in self.exps if not g.is_constant()), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self) -> int:
        return hash(self.exps)

    def __repr__(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(
            g.token() if e == 1 else f"{g.token()}^{e}" for g, e in self.exps
        )


_UNIT = Monomial()


def compare_monomials(a: Monomial, b: Monomial, n: int) -> int:
    """Graded order: weight first, then a higher power on an earlier
    generator wins.  Returns negative/zero/positive like a C comparator."""
    wa, wb = a.weight(n), b.weight(n)
    if wa != wb:
        return -1 if wa < wb else 1
    da, db = dict(a.exps), dict(b.exps)
    for g in sorted(set(da) | set(db)):
        ea, eb = da.get(g, 0), db.get(g, 0)
        if ea != eb:
            return 1 if ea > eb else -1
    return 0


def monomial_sort_key(n: int):
    return cmp_to_key(lambda a, b: compare_monomials(a, b, n))


Scalar = Union[int, Fraction]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class DiffPoly:
    """Sparse polynomial: monomial -> nonzero Fraction, plus the ambient N."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, Fraction] | None = None):
        self.n = n
        tidy: dict[Monomial, Fraction] = {}
        if terms:
            for m, q in terms.items():
                q = _as_fraction(q)
                if q:
                    tidy[m] = q
        self.terms = tidy

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "DiffPoly":
        return cls(n)

    @classmethod
    def constant(cls, n: int, q: Scalar) -> "DiffPoly":
        return cls(n, {Monomial.unit(): _as_fraction(q)})

    @classmethod
    def generator(cls, n: int, gen: Generator) -> "DiffPoly":
        return cls(n, {Monomial.of(gen): Fraction(1)})

    @classmethod
    def monomial(cls, n: int, mono: Monomial, coeff: Scalar = 1) -> "DiffPoly":
        return cls(n, {mono: _as_fraction(coeff)})

    # -- ring structure ----------------------------------------------------

    def _check_ambient(self, other: "DiffPoly") -> None:
        if self.n != other.n:
            raise AmbientMismatchError(
                f"ambient N mismatch: {self.n} vs {other.n}"
            )

    def _coerce(self, other) -> "DiffPoly | None":
        if isinstance(other, DiffPoly):
            self._check_ambient(other)
            return other
        if isinstance(other, (int, Fraction)):
            return DiffPoly.constant(self.n, other)
        return None

    def __add__(self, other) -> "DiffPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self.terms)
        for m, q in rhs.terms.items():
            s = out.get(m, Fraction(0)) + q
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return DiffPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "DiffPoly":
        return DiffPoly(self.n, {m: -q for m, q in self.terms.items()})

    def __sub__(self, other) -> "DiffPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> "DiffPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other) -> "DiffPoly":
        if isinstance(other, (int, Fraction)):
            q = _as_fraction(other)
            if not q:
                return DiffPoly.zero(self.n)
            return DiffPoly(self.n, {m: c * q for m, c in self.terms.items()})
        if not isinstance(other, DiffPoly):
            return NotImplemented
        self._check_ambient(other)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = ma * mb
                s = out.get(m, Fraction(0)) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return DiffPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DiffPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = DiffPoly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DiffPoly.constant(self.n, other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure queries -------------------------------------------------

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, key=monomial_sort_key(self.n), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading monomial")
        return max(self.terms, key=monomial_sort_key(self.n))

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def monic(self) -> "DiffPoly":
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        return self * (1 / lc)

    def base_generators(self) -> set[Generator]:
        return {g.base() for m in self.terms for g in m.generators()}

    def max_deriv(self) -> int:
        return max((m.max_deriv() for m in self.terms), default=0)

    def weight(self) -> int:
        """Common weight of a homogeneous polynomial."""
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no weight")
        weights = {m: m.weight(self.n) for m in self.terms}
        distinct = set(weights.values())
        if len(distinct) > 1:
            offenders = sorted(weights.items(), key=lambda p: p[1])
            raise InhomogeneousError([(m, wt) for m, wt in offenders])
        return distinct.pop()

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        return len({m.weight(self.n) for m in self.terms}) == 1

    def homogeneous_part(self, weight: int) -> "DiffPoly":
        return DiffPoly(
            self.n,
            {m: q for m, q in self.terms.items() if m.weight(self.n) == weight},
        )

    # -- derivation --------------------------------------------------------

    def derive(self, times: int = 1) -> "DiffPoly":
        """The ring derivation d/dq: Leibniz over monomials, each symbol's
        derivative order stepping up by one, constants to zero."""
        if times < 0:
            raise ValueError("cannot integrate by deriving a negative number of times")
        poly = self
        for _ in range(times):
            out: dict[Monomial, Fraction] = {}
            for mono, coeff in poly.terms.items():
                exps = dict(mono.exps)
                for gen, e in mono.exps:
                    dgen = gen.derived()
                    if dgen is None:
                        continue
                    bumped = dict(exps)
                    if e == 1:
                        del bumped[gen]
                    else:
                        bumped[gen] = e - 1
                    bumped[dgen] = bumped.get(dgen, 0) + 1
                    m2 = Monomial(bumped.items())
                    s = out.get(m2, Fraction(0)) + coeff * e
                    if s:
                        out[m2] = s
                    else:
                        out.pop(m2, None)
            poly = DiffPoly(self.n, out)
        return poly

    # -- substitution ------------------------------------------------------

    def substitute(self, sub: "Substitution") -> "DiffPoly":
        return sub.apply(self)

    def __repr__(self) -> str:
        from .formatting import format_poly

        return format_poly(self)


def replace_constants(poly: DiffPoly, images: Mapping[Generator, DiffPoly]) -> DiffPoly:
    """Replace integration-constant generators by polynomials.

    This is a plain algebra map, not a differential substitution: the
    replaced generators never carry derivatives, but their images may, so
    the result does not commute with the derivation (use it for on-shell
    eliminations like C_k -> J_k, never inside derivative-sensitive code).
    """
    n = poly.n
    for gen, img in images.items():
        if not gen.is_constant():
            raise ValueError(f"{gen} is not a constant generator")
        if img.n != n:
            raise AmbientMismatchError("replacement image has wrong ambient N")
    out = DiffPoly.zero(n)
    for mono, coeff in poly.terms.items():
        acc = DiffPoly.constant(n, coeff)
        for gen, e in mono.exps:
            img = images.get(gen)
            if img is None:
                acc = acc * DiffPoly.monomial(n, Monomial.of(gen, e))
            else:
                acc = acc * img**e
        out = out + acc
    return out


class Substitution:
    """Map from base generators to polynomials, extended to all derivative
    orders by the ring derivation (so it automatically commutes with it).

    Generators absent from the map are fixed.  Images of C and PARAM
    generators must be constants of the derivation.
    """

    def __init__(self, n: int, images: Mapping[Generator, DiffPoly]):
        self.n = n
        self.images: dict[Generator, DiffPoly] = {}
        for gen, img in images.items():
            if gen.deriv != 0:
                raise ValueError(f"substitution keys must be base generators, got {gen}")
            if not isinstance(img, DiffPoly):
                img = DiffPoly.constant(n, img)
            if img.n != n:
                raise AmbientMismatchError("substitution image has wrong ambient N")
            if gen.is_constant() and img.derive():
                raise ValueError(
                    f"image of constant generator {gen} must itself be constant"
                )
            self.images[gen] = img
        self._cache: dict[Generator, DiffPoly] = {}

    def image(self, gen: Generator) -> DiffPoly:
        got = self._cache.get(gen)
        if got is not None:
            return got
        base_img = self.images.get(gen.base())
        if base_img is None:
            img = DiffPoly.generator(self.n, gen)
        else:
            img = base_img.derive(gen.deriv)
        self._cache[gen] = img
        return img

    def apply(self, poly: DiffPoly) -> DiffPoly:
        if poly.n != self.n:
            raise AmbientMismatchError("substitution applied across ambient N")
        out = DiffPoly.zero(self.n)
        power_cache: dict[tuple[Generator, int], DiffPoly] = {}
        for mono, coeff in poly.terms.items():
            acc = DiffPoly.constant(self.n, coeff)
            for gen, e in mono.exps:
                key = (gen, e)
                pw = power_cache.get(key)
                if pw is None:
                    pw = self.image(gen) ** e
                    power_cache[key] = pw
                acc = acc * pw
            out = out + acc
        return out

    def is_weight_preserving(self) -> bool:
        for gen, img in self.images.items():
            if img.is_zero():
                continue
            try:
                if img.weight() != gen.weight(self.n):
                    return False
            except InhomogeneousError:
                return False
        return True

    def __repr__(self) -> str:
        parts = ", ".join(f"{g} -> {img!r}" for g, img in self.images.items())
        return f"Substitution({parts})"
