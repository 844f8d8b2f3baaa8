"""Total-derivative detection, integral-constant search, and membership in
the module generated by the constraints.

Everything here reduces to exact sparse linear algebra over Q on monomial
bases that the weight grading makes finite.  Certificates re-expand to
their targets by construction; a negative verdict is always relative to
the bounds used and the reports say so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .config import search_deriv_bound
from .diffop import DiffOperator
from .diffring import (
    DiffPoly,
    Family,
    Generator,
    Monomial,
    monomial_sort_key,
)
from .linalg import nullspace, solve
from .susy import ConditionSet


class ReductionError(Exception):
    pass


class SearchExhausted(ReductionError):
    """No multiplier combination in the searched basis integrates."""

    def __init__(self, message: str, bounds: dict):
        super().__init__(f"{message} (bounds: {bounds})")
        self.bounds = bounds


# -- monomial bases ------------------------------------------------------------


def monomial_basis(
    n: int,
    weight: int,
    gens: Iterable[Generator],
    max_deriv: int | None = None,
) -> list[Monomial]:
    """All monomials of exactly the given weight over the allowed base
    generators, derivative orders capped, in canonical ascending order."""
    if weight < 0:
        return []
    if weight == 0:
        return [Monomial.unit()]
    cap = search_deriv_bound() if max_deriv is None else max_deriv
    concrete: list[tuple[Generator, int]] = []
    for base in sorted({g.base() for g in gens}):
        if base.is_constant():
            wt = base.weight(n)
            if wt <= 0:
                raise ValueError(
                    f"generator {base} has nonpositive weight; basis would be infinite"
                )
            if wt <= weight:
                concrete.append((base, wt))
            continue
        for m in range(cap + 1):
            g = Generator(base.family, base.index, m)
            wt = g.weight(n)
            if wt <= 0:
                raise ValueError(
                    f"generator {g} has nonpositive weight; basis would be infinite"
                )
            if wt > weight:
                break
            concrete.append((g, wt))

    out: list[Monomial] = []

    def extend(idx: int, remaining: int, picked: list[tuple[Generator, int]]):
        if remaining == 0:
            out.append(Monomial(picked))
            return
        if idx == len(concrete):
            return
        g, wt = concrete[idx]
        top = remaining // wt
        for e in range(top, -1, -1):
            if e:
                extend(idx + 1, remaining - e * wt, picked + [(g, e)])
            else:
                extend(idx + 1, remaining, picked)

    extend(0, weight, [])
    out.sort(key=monomial_sort_key(n))
    return out


def _default_gens(polys: Iterable[DiffPoly]) -> list[Generator]:
    gens: set[Generator] = set()
    for p in polys:
        gens |= p.base_generators()
    return sorted(g for g in gens if g.family is not Family.PARAM)


# -- certificates --------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """Certificate that re-expands exactly to its target.

    ``total-derivative``: target = antiderivative'.
    ``ideal-member``: target = sum multipliers[(j, m)] * conditions[j]^(m).
    """

    kind: str
    target: DiffPoly
    antiderivative: DiffPoly | None = None
    multipliers: tuple[tuple[tuple[int, int], DiffPoly], ...] = ()
    conditions: tuple[tuple[int, DiffPoly], ...] = ()

    def __post_init__(self):
        if self.expansion() != self.target:
            raise ReductionError("certificate does not re-expand to its target")

    def expansion(self) -> DiffPoly:
        if self.kind == "total-derivative":
            assert self.antiderivative is not None
            return self.antiderivative.derive()
        conds = dict(self.conditions)
        acc = DiffPoly.zero(self.target.n)
        for (j, m), mult in self.multipliers:
            acc = acc + mult * conds[j].derive(m)
        return acc

    def to_dict(self) -> dict:
        from .formatting import poly_to_dict

        out = {"kind": self.kind}
        if self.antiderivative is not None:
            out["antiderivative"] = poly_to_dict(self.antiderivative)
        if self.multipliers:
            out["multipliers"] = [
                {"condition": j, "derivative": m, "factor": poly_to_dict(p)}
                for (j, m), p in self.multipliers
            ]
        return out


def antiderivative(p: DiffPoly) -> Decomposition | None:
    """Invert the derivation by exact linear solving over the basis one
    weight down, pure-constant monomials excluded; None when infeasible."""
    n = p.n
    if p.is_zero():
        return Decomposition("total-derivative", p, antiderivative=DiffPoly.zero(n))
    weight = p.weight()
    if weight < 1:
        return None
    cap = max(p.max_deriv() - 1, 0)
    basis = [
        b
        for b in monomial_basis(n, weight - 1, p.base_generators(), cap)
        if not b.is_constant()
    ]
    if not basis:
        return None
    columns = [DiffPoly.monomial(n, b).derive() for b in basis]
    sol = _solve_columns(n, columns, p)
    if sol is None:
        return None
    q = DiffPoly.zero(n)
    for x, b in zip(sol, basis):
        if x:
            q = q + DiffPoly.monomial(n, b, x)
    return Decomposition("total-derivative", p, antiderivative=q)


def _solve_columns(
    n: int, columns: Sequence[DiffPoly], target: DiffPoly
) -> list[Fraction] | None:
    row_index: dict[Monomial, int] = {}
    monos = set(target.terms)
    for col in columns:
        monos |= set(col.terms)
    for mono in sorted(monos, key=monomial_sort_key(n), reverse=True):
        row_index[mono] = len(row_index)
    rows: list[dict[int, Fraction]] = [{} for _ in row_index]
    for ci, col in enumerate(columns):
        for mono, q in col.terms.items():
            rows[row_index[mono]][ci] = q
    rhs = [Fraction(0)] * len(row_index)
    for mono, q in target.terms.items():
        rhs[row_index[mono]] = q
    return solve(rows, rhs, len(columns))


def _conditions_of(cs: ConditionSet | Sequence[tuple[int, DiffPoly]]):
    if isinstance(cs, ConditionSet):
        return [(k, p) for k, p in cs.items()]
    return list(cs)


def ideal_membership(
    target: DiffPoly,
    cs: ConditionSet | Sequence[tuple[int, DiffPoly]],
    gens: Iterable[Generator] | None = None,
    max_shift: int | None = None,
    max_deriv: int | None = None,
) -> Decomposition | None:
    """Decide membership of the target in the module generated by the
    conditions and their derivatives, multipliers drawn from monomial
    bases of the complementary weight."""
    conditions = _conditions_of(cs)
    n = target.n
    if target.is_zero():
        return Decomposition("ideal-member", target, conditions=tuple(conditions))
    weight = target.weight()
    pool = list(gens) if gens is not None else _default_gens(
        [target] + [p for _, p in conditions]
    )
    columns: list[DiffPoly] = []
    keys: list[tuple[int, int, Monomial]] = []
    for j, cond in conditions:
        if cond.is_zero():
            continue
        cw = cond.weight()
        shift_top = weight - cw
        if max_shift is not None:
            shift_top = min(shift_top, max_shift)
        derived = cond
        for m in range(shift_top + 1):
            for b in monomial_basis(n, weight - cw - m, pool, max_deriv):
                columns.append(DiffPoly.monomial(n, b) * derived)
                keys.append((j, m, b))
            if m < shift_top:
                derived = derived.derive()
    if not columns:
        return None
    sol = _solve_columns(n, columns, target)
    if sol is None:
        return None
    mults: dict[tuple[int, int], DiffPoly] = {}
    for x, (j, m, b) in zip(sol, keys):
        if x:
            cur = mults.get((j, m), DiffPoly.zero(n))
            mults[(j, m)] = cur + DiffPoly.monomial(n, b, x)
    return Decomposition(
        "ideal-member",
        target,
        multipliers=tuple(sorted(mults.items())),
        conditions=tuple(conditions),
    )


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    certificates: dict[int, Decomposition | None]
    bounds: dict

    def __bool__(self) -> bool:
        return self.equivalent


def op_equivalent(
    a: DiffOperator,
    b: DiffOperator,
    cs: ConditionSet | Sequence[tuple[int, DiffPoly]],
    gens: Iterable[Generator] | None = None,
    max_deriv: int | None = None,
) -> EquivalenceVerdict:
    """Two operators are equivalent when every coefficient of their
    difference lies in the constraint module."""
    diff = a - b
    if diff.is_zero():
        return EquivalenceVerdict(True, {}, {"max_shift": 0})
    max_shift = diff.order() + 2
    certificates: dict[int, Decomposition | None] = {}
    ok = True
    for order in sorted(diff.coeffs):
        cert = ideal_membership(
            diff.coefficient(order), cs, gens=gens, max_shift=max_shift,
            max_deriv=max_deriv,
        )
        certificates[order] = cert
        if cert is None:
            ok = False
    return EquivalenceVerdict(ok, certificates, {"max_shift": max_shift})


# -- reduction by integral relations -------------------------------------------


def reduce_by_relations(
    p: DiffPoly, relations: Sequence[DiffPoly]
) -> tuple[DiffPoly, list[DiffPoly]]:
    """Normal form of p modulo the relations, used as rewrite rules led by
    their leading monomials; returns (nf, quotients) with
    p = nf + sum quotients[i] * relations[i]."""
    n = p.n
    key = monomial_sort_key(n)
    lead = [(r.leading_monomial(), r.leading_coefficient()) for r in relations]
    quotients = [DiffPoly.zero(n) for _ in relations]
    work = p
    while True:
        hit = None
        for mono in sorted(work.terms, key=key, reverse=True):
            for i, (lm, lc) in enumerate(lead):
                if lm.divides(mono):
                    hit = (mono, i, lm, lc)
                    break
            if hit:
                break
        if hit is None:
            return work, quotients
        mono, i, lm, lc = hit
        factor = DiffPoly.monomial(n, mono / lm, work.terms[mono] / lc)
        quotients[i] = quotients[i] + factor
        work = work - factor * relations[i]


# -- integral-constant search ---------------------------------------------------


@dataclass(frozen=True)
class IntegralConstant:
    """J with d(J)/dq = sum_j L_j(condition_j) + sum_i M_i * relation_i.

    J is monic in its leading canonical monomial; the L_j are differential
    operators (order 0 under the multiplicative policy).
    """

    n: int
    k: int
    j_poly: DiffPoly
    multipliers: dict[int, DiffOperator]
    relation_multipliers: tuple[tuple[DiffPoly, DiffPoly], ...] = ()

    def residual(self, cs: ConditionSet | Sequence[tuple[int, DiffPoly]]) -> DiffPoly:
        conds = dict(_conditions_of(cs))
        acc = self.j_poly.derive()
        for j, op in self.multipliers.items():
            acc = acc - op.apply(conds[j])
        for rel, mult in self.relation_multipliers:
            acc = acc - mult * rel
        return acc


def search_integral(
    cs: ConditionSet,
    k: int,
    policy: str = "multiplicative",
    relations: Sequence[DiffPoly] = (),
    gens: Iterable[Generator] | None = None,
    max_deriv: int | None = None,
) -> IntegralConstant:
    """Find rational multiplier combinations making the conditions sum to
    a total derivative of weight 2k+3, then integrate.

    ``relations`` are established algebraic integrals (polynomials that
    vanish on shell, e.g. the defining relation of an earlier constant);
    candidate integrands are rewritten to normal form modulo them before
    the antiderivative solve, and the used multiples enter the
    certificate.  ``policy`` is ``multiplicative`` or ``first-order``.
    """
    if policy not in ("multiplicative", "first-order"):
        raise ValueError(f"unknown candidate policy {policy!r}")
    n = cs.n
    target_weight = 2 * k + 3
    conditions = [(j, p) for j, p in cs.items() if p]
    pool = list(gens) if gens is not None else _default_gens([p for _, p in conditions])

    columns: list[DiffPoly] = []
    quotient_cols: list[list[DiffPoly]] = []
    keys: list[tuple[int, int, Monomial]] = []
    for j, cond in conditions:
        cw = cond.weight()
        orders = (0,) if policy == "multiplicative" else (0, 1)
        for d in orders:
            mw = target_weight - cw - d
            if mw < 0:
                continue
            derived = cond.derive(d)
            for b in monomial_basis(n, mw, pool, max_deriv):
                raw = DiffPoly.monomial(n, b) * derived
                nf, quots = reduce_by_relations(raw, relations)
                columns.append(nf)
                quotient_cols.append(quots)
                keys.append((j, d, b))
    bounds = {
        "k": k,
        "policy": policy,
        "target_weight": target_weight,
        "candidates": len(columns),
        "max_deriv": search_deriv_bound() if max_deriv is None else max_deriv,
    }
    if not columns:
        raise SearchExhausted("no multiplier candidates at this weight", bounds)

    q_gens = set(pool)
    for rel in relations:
        q_gens |= rel.base_generators()
    cap = max(
        [c.max_deriv() for c in columns if c] + [0]
    )
    q_cap = max(cap - 1, 0)
    if max_deriv is not None:
        q_cap = min(q_cap, max_deriv)
    q_basis = [
        b
        for b in monomial_basis(n, target_weight - 1, q_gens, q_cap)
        if not b.is_constant()
    ]
    q_columns = [DiffPoly.monomial(n, b).derive() for b in q_basis]

    # Homogeneous system: candidate combination minus total derivative = 0.
    all_cols = columns + [-qc for qc in q_columns]
    row_index: dict[Monomial, int] = {}
    for col in all_cols:
        for mono in col.terms:
            row_index.setdefault(mono, len(row_index))
    rows: list[dict[int, Fraction]] = [{} for _ in row_index]
    for ci, col in enumerate(all_cols):
        for mono, qv in col.terms.items():
            rows[row_index[mono]][ci] = qv
    ncols = len(all_cols)
    rays = nullspace(rows, ncols)

    nmult = len(columns)
    candidates = []
    for ray in rays:
        mult_part = ray[:nmult]
        if not any(mult_part):
            continue
        j_poly = DiffPoly.zero(n)
        for x, b in zip(ray[nmult:], q_basis):
            if x:
                j_poly = j_poly + DiffPoly.monomial(n, b, x)
        if j_poly.is_zero():
            continue
        # Discard integrals that are already known constants on shell:
        # J reducing to a pure-constant polynomial under the relations
        # (e.g. the square of an earlier integral), or J lying in the
        # constraint module itself (e.g. the square of a condition).
        nf_j, _ = reduce_by_relations(j_poly, relations)
        if all(m.is_constant() for m in nf_j.terms):
            continue
        if ideal_membership(nf_j, conditions) is not None:
            continue
        score = (
            sum(1 for x in mult_part if x),
            sum(1 for x in ray if x),
            [str(x) for x in ray],
        )
        candidates.append((score, ray, j_poly))
    if not candidates:
        raise SearchExhausted("no combination integrates to a nonzero J", bounds)
    candidates.sort(key=lambda t: t[0])
    _, ray, j_poly = candidates[0]

    lc = j_poly.leading_coefficient()
    scale = Fraction(1) / lc
    j_poly = j_poly * scale
    mults: dict[int, DiffOperator] = {}
    rel_mults = [DiffPoly.zero(n) for _ in relations]
    for x, (j, d, b), quots in zip(ray[:nmult], keys, quotient_cols):
        if not x:
            continue
        coeff = DiffPoly.monomial(n, b, x * scale)
        cur = mults.get(j, DiffOperator.zero(n))
        mults[j] = cur + DiffOperator(n, {d: coeff})
        for i, qq in enumerate(quots):
            rel_mults[i] = rel_mults[i] - qq * (x * scale)
    result = IntegralConstant(
        n,
        k,
        j_poly,
        mults,
        tuple((rel, m) for rel, m in zip(relations, rel_mults) if m),
    )
    if result.residual(cs):
        raise ReductionError("integral certificate failed to re-expand")
    return result


# -- products of the supercharge components -------------------------------------


def apply_combo(
    combo: Mapping[int, Mapping[int, DiffPoly]],
    cs: ConditionSet | Sequence[tuple[int, DiffPoly]],
) -> DiffPoly:
    """Expand sum_j sum_p coeff * d^p(condition_j)."""
    conds = dict(_conditions_of(cs))
    n = next(iter(conds.values())).n
    acc = DiffPoly.zero(n)
    for j, powers in combo.items():
        for power, coeff in powers.items():
            acc = acc + coeff * conds[j].derive(power)
    return acc


@dataclass(frozen=True)
class ProductSide:
    residual: "DiffOperator"
    matches_display: dict[int, bool]
    equivalence: EquivalenceVerdict

    @property
    def passed(self) -> bool:
        return all(self.matches_display.values()) and bool(self.equivalence)


@dataclass(frozen=True)
class ProductReport:
    n: int
    preset: str
    sides: dict[str, ProductSide]

    @property
    def passed(self) -> bool:
        return all(side.passed for side in self.sides.values())


def verify_product(n: int, preset: str = "paper") -> ProductReport:
    """Check P-+ P+- = 2^n [(H +- + C0)^n + sum C_k (H +- + C0)^(n-k-1)]
    with the constants replaced by their integral polynomials, compare the
    exact residual against the displayed constraint combinations, and
    certify that every residual coefficient lies in the constraint module.
    """
    from . import goldens
    from .diffring import c as c_gen
    from .susy import (
        build_system,
        derive_conditions,
        eliminate_potentials,
        inverse_ansatz,
        preset_parameters,
    )

    if preset != "paper":
        # The displayed residual combinations and the recorded
        # representative shifts belong to the preferred parameter branch;
        # the alternative branch's integrals are validated separately.
        raise ValueError("product displays are recorded for the paper preset only")
    system = build_system(n, symbolic_potentials=False)
    cs = eliminate_potentials(derive_conditions(build_system(n)))
    inv = inverse_ansatz(n, preset_parameters(n, preset))
    j_w = {k: inv.apply(goldens.displayed_j(n, k, preset)) for k in range(1, n)}
    # The displayed residuals correspond to specific polynomial
    # representatives of the constants; recorded on-shell-zero shifts
    # reconcile the pulled-back integrals with that choice.
    for e in goldens.corpus().values():
        if e.kind == "jw-shift" and e.n == n:
            j_w[e.data["k"]] = j_w[e.data["k"]] + apply_combo(e.combo(), cs)

    c0 = DiffOperator.multiplication(DiffPoly.generator(n, c_gen(0)))
    combos = {
        e.data["product"]: e
        for e in goldens.corpus().values()
        if e.kind == "residual" and e.n == n
    }

    def mother(hpc: DiffOperator) -> DiffOperator:
        acc = hpc**n
        for k in range(1, n):
            acc = acc + DiffOperator.multiplication(j_w[k]) * hpc ** (n - k - 1)
        return acc.scale(2**n)

    sides: dict[str, ProductSide] = {}
    for name, left, right, ham in (
        ("minus", system.charge_plus, system.charge_minus, system.hamiltonian_minus),
        ("plus", system.charge_minus, system.charge_plus, system.hamiltonian_plus),
    ):
        residual = left * right - mother(ham + c0)
        expected: dict[int, DiffPoly] = {}
        for e in goldens.corpus().values():
            if e.kind != "residual" or e.n != n or e.data["product"] != name:
                continue
            if "combo_orders" in e.data:
                for order, combo in e.data["combo_orders"].items():
                    parsed = {
                        int(j): {int(p): goldens.parse(expr, n) for p, expr in pw.items()}
                        for j, pw in combo.items()
                    }
                    expected[int(order)] = apply_combo(parsed, cs)
            else:
                expected[e.data["order"]] = apply_combo(e.combo(), cs)
        matches = {}
        for order in sorted(set(expected) | set(residual.coeffs)):
            matches[order] = residual.coefficient(order) == expected.get(
                order, DiffPoly.zero(n)
            )
        verdict = op_equivalent(residual, DiffOperator.zero(n), cs)
        sides[name] = ProductSide(residual, matches, verdict)
    return ProductReport(n, preset, sides)
