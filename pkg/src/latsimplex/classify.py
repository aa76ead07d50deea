"""Bounded exhaustive searches over integer-sum residue groups.

The enumeration walks generator matrices that are doubly sorted (rows
strictly increasing, columns nondecreasing), which visits every group at
least once per coordinate-permutation class; canonical forms deduplicate the
results.  Denominators are unbounded in principle, so every report carries
its budget and is a bounded verification, never a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from . import _kernels
from .codes import simplex_code_group
from .errors import BudgetExceeded, HypothesesNotMet
from .groups import (
    CanonicalForm,
    LambdaGroup,
    _build,
    canonical_form,
    degree,
    f,
    greedy_support_cover,
    is_lattice_pyramid,
)

DEFAULT_NODE_BUDGET = 5_000_000


@dataclass(frozen=True)
class SearchBudget:
    e: int
    max_denominator: int
    max_generators: int
    max_order: int = 4096

    def __post_init__(self) -> None:
        if min(self.e, self.max_denominator, self.max_generators,
               self.max_order) <= 0:
            raise ValueError("budget fields must be positive")
        if self.max_order < self.max_denominator:
            raise ValueError("max_order must be at least max_denominator")

    def to_json(self) -> dict:
        return {"e": self.e, "maxDenominator": self.max_denominator,
                "maxGenerators": self.max_generators,
                "maxOrder": self.max_order}

    def banner(self) -> str:
        return ("bounded verification: exhaustive only over entry "
                f"denominators dividing {self.max_denominator}, at most "
                f"{self.max_generators} generators and closures of order at "
                f"most {self.max_order}; inconclusive beyond this budget")


@dataclass
class ClassificationReport:
    budget: SearchBudget
    target_degree: int
    require_full_support: bool
    require_non_pyramid: bool
    found: list[CanonicalForm]
    groups: list[LambdaGroup]
    counters: dict[str, int]
    complete: bool

    @property
    def banner(self) -> str:
        return self.budget.banner()

    def to_json(self) -> dict:
        return {
            "budget": self.budget.to_json(),
            "targetDegree": self.target_degree,
            "requireFullSupport": self.require_full_support,
            "requireNonPyramid": self.require_non_pyramid,
            "found": [cf.to_json() for cf in self.found],
            "counters": dict(self.counters),
            "complete": self.complete,
            "banner": self.banner,
        }


def enumerate_groups(budget: SearchBudget, s: int,
                     require_full_support: bool = False,
                     require_non_pyramid: bool = True,
                     prune: bool = True,
                     node_budget: int = DEFAULT_NODE_BUDGET
                     ) -> ClassificationReport:
    """All integer-sum groups of degree s within the budget, canonicalized.

    The walk grows subgroup chains one generator at a time.  New generator
    rows are enumerated nondecreasing within the column classes of the
    current generator matrix (any extension can be brought to that shape by
    a permutation fixing the walked prefix, so this meets every group up to
    coordinate permutation), and closure states are deduplicated by their
    exact element table together with the number of generators spent.  With
    ``prune`` on, a partial closure dies as soon as it violates the weight
    bound (wt <= 2s), exceeds height s or produces a non-integral
    coordinate sum (all inherited by supergroups); rows are also
    pre-screened against their sums with earlier generators, and untouched
    coordinates must stay reachable whenever full support is eventually
    required.
    """
    e, D = budget.e, budget.max_denominator
    max_w = 2 * s if prune else -1
    max_h = s * D if prune else -1
    counters = {"closuresExamined": 0, "prunedByWeight": 0,
                "prunedByDegree": 0, "prunedByOrder": 0,
                "prunedBySupport": 0, "dedupedStates": 0}
    found: dict[tuple, tuple[CanonicalForm, LambdaGroup]] = {}
    seen: dict[tuple, int] = {}
    zero_row = (0,) * e
    full_mask = (1 << e) - 1
    need_full = require_full_support or (require_non_pyramid and e > 1)
    nodes = 0

    def make_report(complete: bool) -> ClassificationReport:
        forms = sorted(found.values(), key=lambda fg: (fg[0].den, fg[0].table))
        return ClassificationReport(
            budget=budget, target_degree=s,
            require_full_support=require_full_support,
            require_non_pyramid=require_non_pyramid,
            found=[cf for cf, _ in forms],
            groups=[g for _, g in forms],
            counters=counters, complete=complete)

    def column_classes(rows_sel):
        if not rows_sel:
            return [(0, e)]
        classes = []
        start = 0
        prev = tuple(r[0] for r in rows_sel)
        for j in range(1, e):
            cur = tuple(r[j] for r in rows_sel)
            if cur != prev:
                classes.append((start, j - start))
                start = j
                prev = cur
        classes.append((start, e - start))
        return classes

    def candidate_rows(rows_sel, classes, forced_mask):
        """Nonzero rows nondecreasing within the prefix column classes.

        ``forced_mask`` marks coordinates the row must cover (the untouched
        class, once this is the only generator that can still reach them).
        Partial sums of the row and of row + earlier generator are pruned
        against the weight and height caps while the classes are filled; the
        per-class increments are tabulated up front so the walk over combos
        costs O(generators) per step.
        """
        k = len(rows_sel)
        per_class = []
        for start, length in classes:
            lo = 1 if (forced_mask >> start) & 1 else 0
            segs = [g[start:start + length] for g in rows_sel]
            combos = []
            for combo in combinations_with_replacement(range(lo, D), length):
                w = length - combo.count(0)
                tot = sum(combo)
                if prune and (w > max_w or tot > max_h):
                    continue
                deltas = []
                ok = True
                for seg in segs:
                    dw = 0
                    dh = 0
                    for a, v in zip(seg, combo):
                        sv = (a + v) % D
                        if sv:
                            dw += 1
                            dh += sv
                    if prune and (dw > max_w or dh > max_h):
                        ok = False
                        break
                    deltas.append((dw, dh))
                if ok:
                    combos.append((combo, w, tot, deltas))
            per_class.append((start, combos))

        out = []
        row = [0] * e
        pair_w = [0] * k
        pair_h = [0] * k
        gen_range = range(k)
        last = len(per_class)

        def rec(ci, weight, total):
            if ci == last:
                if weight and (not prune or total % D == 0):
                    out.append(tuple(row))
                return
            start, combos = per_class[ci]
            saved_w = pair_w[:]
            saved_h = pair_h[:]
            for combo, w, tot, deltas in combos:
                nw = weight + w
                nt = total + tot
                if prune and (nw > max_w or nt > max_h):
                    continue
                if prune and k:
                    ok = True
                    for j in gen_range:
                        a = saved_w[j] + deltas[j][0]
                        b = saved_h[j] + deltas[j][1]
                        if a > max_w or b > max_h:
                            ok = False
                            break
                        pair_w[j] = a
                        pair_h[j] = b
                    if not ok:
                        continue
                row[start:start + len(combo)] = combo
                rec(ci + 1, nw, nt)
            pair_w[:] = saved_w
            pair_h[:] = saved_h
        rec(0, 0, 0)
        return out

    def consider(rows_sel, elements):
        if any(sum(el) % D != 0 for el in elements):
            return
        if max(sum(el) for el in elements) != s * D:
            return
        gen_rows = list(rows_sel) if rows_sel else [zero_row]
        G = _build(e, D, gen_rows, list(elements))
        if require_full_support and not G.full_support:
            return
        if require_non_pyramid and is_lattice_pyramid(G):
            return
        cf = canonical_form(G)
        key = (cf.den, cf.table)
        if key not in found:
            found[key] = (cf, G)

    def walk(rows_sel, elements, union_mask):
        nonlocal nodes
        gens_used = len(rows_sel)
        gens_left = budget.max_generators - gens_used
        if gens_left <= 0:
            return
        if prune and need_full:
            missing = e - union_mask.bit_count()
            if missing > gens_left * max_w:
                counters["prunedBySupport"] += 1
                return
        forced = 0
        if prune and need_full and gens_left == 1:
            forced = full_mask & ~union_mask
        classes = column_classes(rows_sel)
        known = set(elements)
        for row in candidate_rows(rows_sel, classes, forced):
            if row in known:
                continue
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded("enumeration exceeded the node budget",
                                     partial_report=make_report(False))
            status, els = _kernels.extend_closure(
                elements, row, e, D, budget.max_order,
                max_weight=max_w, max_height_num=max_h,
                require_integral=prune)
            if status == _kernels.STATUS_WEIGHT:
                counters["prunedByWeight"] += 1
                continue
            if status == _kernels.STATUS_HEIGHT:
                counters["prunedByDegree"] += 1
                continue
            if status == _kernels.STATUS_TOO_LARGE:
                counters["prunedByOrder"] += 1
                continue
            # states are deduplicated by their exact element table; a repeat
            # only matters if it now arrives with more generator slots left
            key = tuple(els)
            prior = seen.get(key)
            if prior is not None and prior <= gens_used + 1:
                counters["dedupedStates"] += 1
                continue
            seen[key] = gens_used + 1
            counters["closuresExamined"] += 1
            mask = union_mask
            for i, a in enumerate(row):
                if a:
                    mask |= 1 << i
            consider(rows_sel + [row], els)
            walk(rows_sel + [row], els, mask)

    consider([], [zero_row])
    walk([], [zero_row], 0)
    return make_report(True)


@dataclass
class VerificationReport:
    suite: str
    parameter: int
    budget: SearchBudget
    status: str
    found: list[CanonicalForm]
    detail: str

    @property
    def banner(self) -> str:
        return self.budget.banner()

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "parameter": self.parameter,
            "budget": self.budget.to_json(),
            "status": self.status,
            "found": [cf.to_json() for cf in self.found],
            "detail": self.detail,
            "banner": self.banner,
        }


DEFAULT_MAIN1_BUDGETS = {
    0: SearchBudget(e=3, max_denominator=6, max_generators=3, max_order=512),
    1: SearchBudget(e=7, max_denominator=4, max_generators=3, max_order=2048),
}

DEFAULT_MAIN2_BUDGETS = {
    1: SearchBudget(e=3, max_denominator=6, max_generators=3, max_order=512),
    2: SearchBudget(e=7, max_denominator=4, max_generators=3, max_order=2048),
    3: SearchBudget(e=10, max_denominator=4, max_generators=4, max_order=4096),
}


def verify_main1(r: int, budget: SearchBudget | None = None,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> VerificationReport:
    """Uniqueness of the code group among maximal-dimension groups, bounded.

    Searches e = 2^(r+2)-1, degree 2^r, non-pyramid; passes when exactly the
    code group is found.  A budget too small to express the code group at
    all makes the run inconclusive rather than a failure.
    """
    if r not in (0, 1):
        raise ValueError("desk-scale verification supports r in {0, 1}")
    if budget is None:
        budget = DEFAULT_MAIN1_BUDGETS[r]
    expected_e = (1 << (r + 2)) - 1
    if budget.e != expected_e:
        raise ValueError(f"budget.e must be {expected_e} for r={r}")
    s = 1 << r
    report = enumerate_groups(budget, s, require_non_pyramid=True,
                              node_budget=node_budget)
    expected = canonical_form(simplex_code_group(r + 2))
    representable = (budget.max_denominator >= 2
                     and budget.max_generators >= r + 2
                     and budget.max_order >= (1 << (r + 2)))
    if report.found == [expected]:
        status = "pass"
        detail = "found exactly the simplex-code group"
    elif not representable:
        status = "inconclusive"
        detail = ("budget cannot express the simplex-code group; "
                  "nothing was found to contradict uniqueness")
    else:
        status = "fail"
        detail = f"found {len(report.found)} group(s); expected exactly one"
    return VerificationReport(suite="main1", parameter=r, budget=budget,
                              status=status, found=report.found, detail=detail)


def verify_main2(s: int, budget: SearchBudget | None = None,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> VerificationReport:
    """Half-integrality of every non-pyramid group at e = f(2s), bounded."""
    if budget is None:
        if s not in DEFAULT_MAIN2_BUDGETS:
            raise ValueError("default budgets cover s in {1, 2, 3}")
        budget = DEFAULT_MAIN2_BUDGETS[s]
    expected_e = f(2 * s)
    if budget.e != expected_e:
        raise ValueError(f"budget.e must be f(2s) = {expected_e} for s={s}")
    report = enumerate_groups(budget, s, require_non_pyramid=True,
                              node_budget=node_budget)
    bad = [cf for cf in report.found if cf.den > 2]
    if not bad:
        status = "pass"
        detail = (f"all {len(report.found)} found group(s) have entries "
                  "in {0, 1/2}")
    else:
        status = "fail"
        detail = f"{len(bad)} found group(s) have denominator above 2"
    return VerificationReport(suite="main2", parameter=s, budget=budget,
                              status=status, found=report.found, detail=detail)


@dataclass(frozen=True)
class BoundsCheck:
    """Clause-by-clause record for the dimension bounds of one group."""

    e: int
    s: int
    m: int
    f_m: int
    e_le_f_m: bool
    f_m_le_2m_minus_1: bool
    e_le_4s_minus_1: bool
    power_of_two_when_e_is_2m_minus_1: bool | None
    cover_length_when_e_is_f_m: bool | None

    @property
    def passed(self) -> bool:
        clauses = [self.e_le_f_m, self.f_m_le_2m_minus_1,
                   self.e_le_4s_minus_1,
                   self.power_of_two_when_e_is_2m_minus_1,
                   self.cover_length_when_e_is_f_m]
        return all(c for c in clauses if c is not None)

    def to_json(self) -> dict:
        return {
            "e": self.e, "s": self.s, "m": self.m, "fM": self.f_m,
            "eLeFM": self.e_le_f_m,
            "fMLe2MMinus1": self.f_m_le_2m_minus_1,
            "eLe4sMinus1": self.e_le_4s_minus_1,
            "powerOfTwoWhenExtremal": self.power_of_two_when_e_is_2m_minus_1,
            "coverLengthWhenTight": self.cover_length_when_e_is_f_m,
            "passed": self.passed,
        }


def check_bounds(G: LambdaGroup) -> BoundsCheck:
    """Dimension bounds for a non-pyramid integer-sum group of degree >= 1."""
    if not G.integer_sum:
        raise HypothesesNotMet("bounds need an integer-sum group")
    if is_lattice_pyramid(G):
        raise HypothesesNotMet("bounds apply to non-pyramids only")
    s = degree(G)
    if s < 1 or G.e < 3:
        raise HypothesesNotMet("bounds need degree >= 1 and e >= 3")
    m = 2 * s
    fm = f(m)
    power_clause = None
    if G.e == 2 * m - 1:
        power_clause = (m & (m - 1)) == 0
    cover_clause = None
    if G.e == fm:
        cover_clause = len(greedy_support_cover(G)) >= m.bit_length()
    return BoundsCheck(
        e=G.e, s=s, m=m, f_m=fm,
        e_le_f_m=G.e <= fm,
        f_m_le_2m_minus_1=fm <= 2 * m - 1,
        e_le_4s_minus_1=G.e <= 4 * s - 1,
        power_of_two_when_e_is_2m_minus_1=power_clause,
        cover_length_when_e_is_f_m=cover_clause,
    )


def support_cover_multiplicities(G: LambdaGroup) -> tuple[int, ...]:
    """How many nonzero elements support each coordinate."""
    counts = [0] * G.e
    for el in G.elements:
        if all(a == 0 for a in el):
            continue
        for i, a in enumerate(el):
            if a:
                counts[i] += 1
    return tuple(counts)
