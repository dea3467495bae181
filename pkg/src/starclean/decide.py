"""Decision procedures and brute-force checkers for *-cleanness.

The theory side turns the necessary conditions (structure, order-4 and
excluded-prime elements in the abelian factor, solvability of
X^2+Y^2+Z^2+1 = 0) plus the field-coefficient biconditional into Verdicts
with citation-tagged reasons and machine-checked certificates.  The brute
side enumerates or samples RG directly; cross-validation compares and
raises on any disagreement.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from . import _linalg, coeff, numtheory, witness as witness_mod
from .coeff import CoefficientRing, FiniteField, ModRing, RationalField
from .errors import BudgetError, CharDividesError, DiscrepancyError, PreconditionError
from .groupring import GroupRing, GroupRingElement, is_idempotent
from .groups import (
    FiniteGroup,
    InvolutionMap,
    SLCStructure,
    build_abelian,
    canonical_involution,
    element_orders,
)


class Status(Enum):
    STAR_CLEAN = "star-clean"
    NOT_STAR_CLEAN = "not-star-clean"
    UNKNOWN = "unknown"


@dataclass
class Reason:
    criterion: str
    citation: str
    data: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"criterion": self.criterion, "citation": self.citation, "data": self.data}


@dataclass
class Verdict:
    status: Status
    reasons: list[Reason] = dc_field(default_factory=list)
    certificates: list[dict] = dc_field(default_factory=list)

    def cited(self, tag: str) -> bool:
        return any(r.citation == tag for r in self.reasons)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "reasons": [r.to_json() for r in self.reasons],
            "certificates": self.certificates,
        }


@dataclass(frozen=True)
class Budget:
    """Enumeration policy.

    ``full_scan_limit`` caps exhaustive element scans (larger carriers get
    stratified sampling of ``sample_count`` elements); ``structure_limit``
    caps exhaustive idempotent/projection precomputation, with the sampled
    fallback drawing ``structure_samples`` candidates plus the full
    low-index-support stratum of at most ``low_support_limit`` candidates.
    """

    full_scan_limit: int = 1 << 23
    structure_limit: int = 500_000
    sample_count: int = 100_000
    structure_samples: int = 5_000
    low_support_limit: int = 10_000
    z_budget: int = 200_000
    height_bound: int = 8
    seed: int = 0


DEFAULT_BUDGET = Budget()


# --------------------------------------------------------------------------
# number theory entry point
# --------------------------------------------------------------------------

def exists_n_dividing(p: int) -> Optional[int]:
    """Least n with p | 2^n + 1, or None.

    Such n exists iff ord_p(2) is even, and then n = ord_p(2)/2 since
    2^(ord/2) is the nontrivial square root of 1 mod p.
    """
    if p == 2 or not numtheory.is_prime(p):
        raise PreconditionError(f"{p} is not an odd prime")
    order = numtheory.multiplicative_order(2, p)
    return order // 2 if order % 2 == 0 else None


# --------------------------------------------------------------------------
# brute force
# --------------------------------------------------------------------------

@dataclass
class BruteReport:
    property: str  # "clean" | "star-clean"
    result: Optional[bool]  # None = inconclusive within budget
    counterexample: Optional[GroupRingElement]
    mode: str  # "full" | "sampled"
    tested: int
    structure_size: int
    structure_full: bool
    notes: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "property": self.property,
            "result": self.result,
            "mode": self.mode,
            "tested": self.tested,
            "structure_size": self.structure_size,
            "structure_full": self.structure_full,
            "notes": self.notes,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_dict()
        return out


def _regrep_index(G: FiniteGroup) -> np.ndarray:
    # T[k, h] = k * h^-1, so that codes[T] is the left regular representation
    return G.mul[:, G.inverse]


def _is_unit_codes(RG: GroupRing, codes: np.ndarray, T: np.ndarray, memo: dict) -> bool:
    key = codes.tobytes()
    hit = memo.get(key)
    if hit is not None:
        return hit
    ring = RG.ring
    M = codes[T]
    if isinstance(ring, ModRing) or (isinstance(ring, FiniteField) and ring.k == 1):
        out = _linalg.is_invertible_codes(ring, M)
    else:
        out = _linalg.is_invertible(ring, M.tolist())
    if len(memo) < (1 << 21):
        memo[key] = out
    return out


def _counter_digits(counters: np.ndarray, q: int, width: int) -> np.ndarray:
    out = np.empty((counters.shape[0], width), dtype=np.int64)
    rem = counters.astype(np.int64).copy()
    for i in range(width):
        out[:, i] = rem % q
        rem //= q
    return out


def _batch_idempotent_filter(RG: GroupRing, candidates: np.ndarray) -> list[np.ndarray]:
    """Rows of `candidates` that are idempotent, via chunked convolution."""
    from .groupring import batch_convolve

    out = []
    vec = RG.ring.vec
    chunk = 4096
    if vec is not None:
        for start in range(0, candidates.shape[0], chunk):
            block = candidates[start : start + chunk]
            mask = (batch_convolve(RG, block, block) == block).all(axis=1)
            out.extend(block[mask])
    else:
        for row in candidates:
            alpha = RG.from_coeffs(RG.ring.decode(int(c)) for c in row)
            if is_idempotent(alpha):
                out.append(row.astype(np.int64))
    return out


_CANDIDATE_CHUNK = 65536


def _structured_candidates(
    RG: GroupRing,
    scatter,  # callable: value matrix (N, dims) -> code matrix (N, |G|)
    dims: int,
    budget: Budget,
    rng: np.random.Generator,
):
    """Candidate code matrices (chunked) over a `dims`-dimensional value
    space: full enumeration within budget, else the low-index-support
    stratum plus uniform random draws.  Returns (chunk iterator, full)."""
    q = RG.ring.order
    card = q**dims

    if card <= budget.structure_limit:
        def gen_full():
            for start in range(0, card, _CANDIDATE_CHUNK):
                counters = np.arange(start, min(card, start + _CANDIDATE_CHUNK), dtype=np.int64)
                yield scatter(_counter_digits(counters, q, dims))

        return gen_full(), True

    low = 1
    while low < dims and q ** (low + 1) <= budget.low_support_limit:
        low += 1

    def gen_sampled():
        counters = np.arange(q**low, dtype=np.int64)
        vals = np.zeros((counters.shape[0], dims), dtype=np.int64)
        vals[:, :low] = _counter_digits(counters, q, low)
        yield scatter(vals)
        yield scatter(rng.integers(0, q, size=(budget.structure_samples, dims)).astype(np.int64))

    return gen_sampled(), False


def projection_set(
    RG: GroupRing, sigma: InvolutionMap, budget: Budget = DEFAULT_BUDGET
) -> tuple[np.ndarray, bool]:
    """Projections of RG as sorted code rows, plus an exhaustiveness flag.

    Candidates are restricted to the sigma-symmetric subspace (projections
    satisfy alpha* = alpha, i.e. equal coefficients on each orbit of sigma).
    """
    if RG.ring.order is None:
        raise BudgetError("projection enumeration needs a finite ring")
    orbits = sigma.orbits()
    n = RG.group.order

    def scatter(vals: np.ndarray) -> np.ndarray:
        out = np.zeros((vals.shape[0], n), dtype=np.int64)
        for i, orbit in enumerate(orbits):
            for g in orbit:
                out[:, g] = vals[:, i]
        return out

    rng = np.random.default_rng(budget.seed)
    chunks, full = _structured_candidates(RG, scatter, len(orbits), budget, rng)
    rows = []
    for block in chunks:
        rows.extend(_batch_idempotent_filter(RG, block))
    uniq = sorted({tuple(int(v) for v in row) for row in rows})
    return np.array(uniq, dtype=np.int64).reshape(len(uniq), n), full


def idempotent_set(
    RG: GroupRing, budget: Budget = DEFAULT_BUDGET
) -> tuple[np.ndarray, bool]:
    """Idempotents of RG as sorted code rows, plus an exhaustiveness flag."""
    if RG.ring.order is None:
        raise BudgetError("idempotent enumeration needs a finite ring")
    n = RG.group.order
    rng = np.random.default_rng(budget.seed)
    chunks, full = _structured_candidates(RG, lambda vals: vals, n, budget, rng)
    rows = []
    for block in chunks:
        rows.extend(_batch_idempotent_filter(RG, block))
    uniq = sorted({tuple(int(v) for v in row) for row in rows})
    return np.array(uniq, dtype=np.int64).reshape(len(uniq), n), full


def _neg_rows(RG: GroupRing, rows: np.ndarray) -> np.ndarray:
    vec = RG.ring.vec
    if vec is not None:
        return vec.neg(rows)
    R = RG.ring
    return np.array(
        [[R.encode(R.neg(R.decode(int(c)))) for c in row] for row in rows],
        dtype=np.int64,
    )


def _decomposes(
    RG: GroupRing,
    codes: np.ndarray,
    neg_rows: np.ndarray,
    T: np.ndarray,
    memo: dict,
) -> bool:
    vec = RG.ring.vec
    for i in range(neg_rows.shape[0]):
        if vec is not None:
            diff = vec.add(codes, neg_rows[i])
        else:
            R = RG.ring
            diff = np.array(
                [
                    R.encode(R.add(R.decode(int(a)), R.decode(int(b))))
                    for a, b in zip(codes, neg_rows[i])
                ],
                dtype=np.int64,
            )
        if _is_unit_codes(RG, diff, T, memo):
            return True
    return False


def _element_stream(RG: GroupRing, budget: Budget):
    """(codes, mode): full counter order within budget, else stratified samples."""
    card = RG.element_count()
    n = RG.group.order
    q = RG.ring.order
    if card <= budget.full_scan_limit:
        def gen_full():
            chunk = 8192
            for start in range(0, card, chunk):
                counters = np.arange(start, min(card, start + chunk), dtype=np.int64)
                block = _counter_digits(counters, q, n)
                for row in block:
                    yield row
        return gen_full(), "full", card
    rng = np.random.default_rng(budget.seed)

    def gen_sampled():
        count = budget.sample_count
        sparse = count // 5  # stratum: small-support elements
        for _ in range(sparse):
            row = np.zeros(n, dtype=np.int64)
            size = int(rng.integers(1, 5))
            pos = rng.choice(n, size=size, replace=False)
            row[pos] = rng.integers(1, q, size=size)
            yield row
        for _ in range(count - sparse):
            yield rng.integers(0, q, size=n).astype(np.int64)

    return gen_sampled(), "sampled", budget.sample_count


def brute_star_clean(
    G: FiniteGroup,
    sigma: InvolutionMap,
    R: CoefficientRing,
    budget: Budget = DEFAULT_BUDGET,
) -> BruteReport:
    """Scan RG for an element with no unit + projection decomposition."""
    RG = GroupRing(G, R)
    projs, projs_full = projection_set(RG, sigma, budget)
    neg_rows = _neg_rows(RG, projs)
    T = _regrep_index(G)
    memo: dict = {}
    stream, mode, planned = _element_stream(RG, budget)
    tested = 0
    for codes in stream:
        tested += 1
        if not _decomposes(RG, codes, neg_rows, T, memo):
            alpha = RG.from_coeffs(R.decode(int(c)) for c in codes)
            if projs_full:
                return BruteReport(
                    "star-clean", False, alpha, mode, tested, projs.shape[0], True
                )
            return BruteReport(
                "star-clean",
                None,
                alpha,
                mode,
                tested,
                projs.shape[0],
                False,
                notes=["undecomposed element found, but projection set is sampled"],
            )
    result = True if mode == "full" else True
    notes = [] if mode == "full" else ["sampled scan: no counterexample in samples"]
    return BruteReport(
        "star-clean", result, None, mode, tested, projs.shape[0], projs_full, notes
    )


def brute_clean(
    G: FiniteGroup, R: CoefficientRing, budget: Budget = DEFAULT_BUDGET
) -> BruteReport:
    """Scan RG for an element with no unit + idempotent decomposition."""
    RG = GroupRing(G, R)
    idems, idems_full = idempotent_set(RG, budget)
    neg_rows = _neg_rows(RG, idems)
    T = _regrep_index(G)
    memo: dict = {}
    stream, mode, planned = _element_stream(RG, budget)
    tested = 0
    for codes in stream:
        tested += 1
        if not _decomposes(RG, codes, neg_rows, T, memo):
            alpha = RG.from_coeffs(R.decode(int(c)) for c in codes)
            if idems_full:
                return BruteReport(
                    "clean", False, alpha, mode, tested, idems.shape[0], True
                )
            return BruteReport(
                "clean",
                None,
                alpha,
                mode,
                tested,
                idems.shape[0],
                False,
                notes=["undecomposed element found, but idempotent set is sampled"],
            )
    notes = [] if mode == "full" else ["sampled scan: no counterexample in samples"]
    return BruteReport(
        "clean", True, None, mode, tested, idems.shape[0], idems_full, notes
    )


def element_star_clean(
    alpha: GroupRingElement,
    sigma: InvolutionMap,
    budget: Budget = DEFAULT_BUDGET,
) -> Optional[witness_mod.StarCleanDecomposition]:
    """First decomposition of alpha in deterministic projection order, or None.

    A None is conclusive only when the projection set was exhaustive; use
    :func:`projection_set` directly to check the flag.
    """
    RG = GroupRing(alpha.group, alpha.ring)
    projs, _ = projection_set(RG, sigma, budget)
    R = alpha.ring
    codes = np.array([R.encode(c) for c in alpha.coeffs], dtype=np.int64)
    neg_rows = _neg_rows(RG, projs)
    T = _regrep_index(alpha.group)
    memo: dict = {}
    vec = R.vec
    for i in range(projs.shape[0]):
        if vec is not None:
            diff = vec.add(codes, neg_rows[i])
        else:
            diff = np.array(
                [
                    R.encode(R.add(R.decode(int(a)), R.decode(int(b))))
                    for a, b in zip(codes, neg_rows[i])
                ],
                dtype=np.int64,
            )
        if _is_unit_codes(RG, diff, T, memo):
            q_el = RG.from_coeffs(R.decode(int(c)) for c in projs[i])
            u_el = RG.from_coeffs(R.decode(int(c)) for c in diff)
            return witness_mod.StarCleanDecomposition(u_el, q_el)
    return None


# --------------------------------------------------------------------------
# theory side
# --------------------------------------------------------------------------

_CASE_CITATION = {
    witness_mod.CASE_TYPE1: ("structure", "TheoremA.structure"),
    witness_mod.CASE_TYPE345: ("structure", "TheoremA.structure"),
    witness_mod.CASE_TYPE2_LARGE_M: ("structure", "TheoremA.structure"),
    witness_mod.CASE_ORDER4: ("order-4-element", "TheoremA.1"),
    witness_mod.CASE_EXCLUDED_PRIME: ("excluded-prime", "TheoremA.2"),
    witness_mod.CASE_THREE_SQUARES: ("equation-solvable", "TheoremA.equation"),
}


def necessary_conditions(
    S: SLCStructure, R: CoefficientRing, budget: Budget = DEFAULT_BUDGET
) -> Verdict:
    """The four necessary checks in order: G = Q8 x A, no order-4 element of
    A, no excluded-prime element of A, equation unsolvable in R.  Failures
    come with the matching constructive witness."""
    w = witness_mod.generate_witness(S, R, budget.height_bound, budget.z_budget)
    if w is coeff.UNKNOWN:
        return Verdict(
            Status.UNKNOWN,
            [
                Reason(
                    "equation-solvability-undetermined",
                    "TheoremA.equation",
                    {"ring": R.spec_string()},
                )
            ],
        )
    if w is None:
        return Verdict(
            Status.UNKNOWN,
            [
                Reason(
                    "necessary-conditions-hold",
                    "TheoremA.necessary",
                    {
                        "structure": "Q8 x A",
                        "abelian_factors": list(S.abelian),
                    },
                )
            ],
        )
    criterion, citation = _CASE_CITATION[w.case_tag]
    reasons = [Reason(criterion, citation, dict(w.data))]
    if (
        w.case_tag == witness_mod.CASE_EXCLUDED_PRIME
        and isinstance(R, RationalField)
        and w.data.get("p", 0) % 8 in (3, 5)
    ):
        reasons.append(
            Reason(
                "rational-excluded-prime",
                "CorollaryA.1",
                {"p": w.data["p"], "p_mod_8": w.data["p"] % 8},
            )
        )
    reasons.append(Reason("witness", "Lemma5.1", {"case": w.case_tag}))
    certs = [{"kind": "witness", **w.to_dict()}]
    if w.case_tag == witness_mod.CASE_THREE_SQUARES:
        certs.append({"kind": "three-squares", "triple": w.data["triple"], "ring": R.spec_string()})
    return Verdict(Status.NOT_STAR_CLEAN, reasons, certs)


@dataclass(frozen=True)
class PerlisWalkerDecomposition:
    """Components (d, multiplicity a_d, extension degree) of FA."""

    components: tuple[tuple[int, int, int], ...]

    def mass(self) -> int:
        return sum(a * deg for _, a, deg in self.components)

    def to_json(self) -> list[dict]:
        return [
            {"d": d, "multiplicity": a, "degree": deg}
            for d, a, deg in self.components
        ]


def perlis_walker(F: CoefficientRing, A: FiniteGroup) -> PerlisWalkerDecomposition:
    """Decomposition FA = sum over d of a_d F(zeta_d), for F rational or a
    finite field with char(F) coprime to |A|."""
    if not A.is_abelian():
        raise PreconditionError("A must be abelian")
    if isinstance(F, FiniteField):
        if A.order % F.char == 0:
            raise CharDividesError(f"char {F.char} divides |A| = {A.order}")
    elif not isinstance(F, RationalField):
        raise PreconditionError("coefficients must be Q or a finite field")
    orders = element_orders(A)
    counts: dict[int, int] = {}
    for o in orders.tolist():
        counts[o] = counts.get(o, 0) + 1
    comps = []
    for d in sorted(counts):
        if isinstance(F, RationalField):
            degree = numtheory.euler_phi(d)
        else:
            degree = numtheory.multiplicative_order(F.order % d, d) if d > 1 else 1
        count = counts[d]
        if count % degree != 0:
            raise AssertionError("order-count not divisible by extension degree")
        comps.append((d, count // degree, degree))
    return PerlisWalkerDecomposition(tuple(comps))


def theorem_c_decide(
    fields: Sequence[CoefficientRing],
    A: FiniteGroup,
    budget: Budget = DEFAULT_BUDGET,
) -> Verdict:
    """Semisimple-coefficient biconditional for G = Q8 x A: *-clean iff the
    equation has no solution in any F_i(zeta_d) for d an element order of A."""
    if not A.is_abelian():
        raise PreconditionError("A must be abelian")
    for F in fields:
        if not F.is_field:
            raise PreconditionError(f"{F!r} is not a field")
        if F.char and (8 * A.order) % F.char == 0:
            raise CharDividesError(f"char {F.char} divides |G| = {8 * A.order}")
    ds = sorted(set(element_orders(A).tolist()))
    reasons = []
    certs = []
    any_unknown = False
    solution_found = None
    for F in fields:
        for d in ds:
            E = coeff.extend_with_root(F, d)
            out = coeff.solve_three_squares(E, budget.height_bound)
            if isinstance(out, coeff.ThreeSquaresSolution):
                solution_found = (F, d, out)
                certs.append(
                    {
                        "kind": "three-squares",
                        "ring": E.spec_string(),
                        "component": {"field": F.spec_string(), "d": d},
                        "triple": out.as_strings(),
                    }
                )
                break
            if out is coeff.UNKNOWN:
                any_unknown = True
                reasons.append(
                    Reason(
                        "component-undetermined",
                        "TheoremC",
                        {"field": F.spec_string(), "d": d, "extension": E.spec_string()},
                    )
                )
        if solution_found:
            break
    if solution_found:
        F, d, out = solution_found
        reasons.insert(
            0,
            Reason(
                "equation-solvable-in-component",
                "TheoremC",
                {"field": F.spec_string(), "d": d},
            ),
        )
        return Verdict(Status.NOT_STAR_CLEAN, reasons, certs)
    if any_unknown:
        return Verdict(Status.UNKNOWN, reasons, certs)
    pw_data = []
    for F in fields:
        if not isinstance(F, (RationalField, FiniteField)):
            continue
        if F.char == 0 or A.order % F.char != 0:
            pw_data.append(
                {"field": F.spec_string(), "components": perlis_walker(F, A).to_json()}
            )
    reasons.append(
        Reason(
            "equation-unsolvable-in-all-components",
            "TheoremC",
            {"fields": [F.spec_string() for F in fields], "ds": ds},
        )
    )
    if pw_data:
        reasons.append(Reason("semisimple-decomposition", "PerlisWalker", {"data": pw_data}))
    return Verdict(Status.STAR_CLEAN, reasons, certs)


def theorem_b_decide(
    R: CoefficientRing, rank: int, clean_status: Optional[bool]
) -> Verdict:
    """Elementary-2-factor biconditional for G = Q8 x C2^rank: *-clean iff
    RG is clean and the equation has no solution in R.  ``clean_status`` is
    an input flag (or a brute result); None propagates to Unknown."""
    if rank < 0:
        raise PreconditionError("rank must be >= 0")
    out = coeff.solve_three_squares(R)
    if isinstance(out, coeff.ThreeSquaresSolution):
        return Verdict(
            Status.NOT_STAR_CLEAN,
            [Reason("equation-solvable", "TheoremB", {"rank": rank})],
            [
                {
                    "kind": "three-squares",
                    "ring": R.spec_string(),
                    "triple": out.as_strings(),
                }
            ],
        )
    if clean_status is False:
        return Verdict(
            Status.NOT_STAR_CLEAN,
            [Reason("not-clean", "TheoremB", {"rank": rank})],
        )
    if out is coeff.UNKNOWN or clean_status is None:
        missing = []
        if out is coeff.UNKNOWN:
            missing.append("equation solvability")
        if clean_status is None:
            missing.append("cleanness")
        return Verdict(
            Status.UNKNOWN,
            [Reason("undetermined", "TheoremB", {"missing": missing, "rank": rank})],
        )
    return Verdict(
        Status.STAR_CLEAN,
        [Reason("clean-and-equation-unsolvable", "TheoremB", {"rank": rank})],
    )


def direct_sum_reduce(verdicts: Sequence[Verdict]) -> Verdict:
    """Componentwise combinator: *-clean iff every component is."""
    if not verdicts:
        return Verdict(
            Status.STAR_CLEAN,
            [Reason("empty-sum", "Proposition2.6", {"degenerate": True})],
        )
    reasons = [Reason("direct-sum", "Proposition2.6", {"components": len(verdicts)})]
    certs = []
    for v in verdicts:
        certs.extend(v.certificates)
    if any(v.status is Status.NOT_STAR_CLEAN for v in verdicts):
        for v in verdicts:
            if v.status is Status.NOT_STAR_CLEAN:
                reasons.extend(v.reasons)
                break
        return Verdict(Status.NOT_STAR_CLEAN, reasons, certs)
    if all(v.status is Status.STAR_CLEAN for v in verdicts):
        return Verdict(Status.STAR_CLEAN, reasons, certs)
    return Verdict(Status.UNKNOWN, reasons, certs)


def decide_star_clean(
    S: SLCStructure | FiniteGroup,
    R: CoefficientRing,
    budget: Budget = DEFAULT_BUDGET,
) -> Verdict:
    """Full theory-side verdict for RG with the canonical involution."""
    if isinstance(S, FiniteGroup):
        return Verdict(
            Status.UNKNOWN,
            [
                Reason(
                    "not-slc",
                    "NotInScope",
                    {"reason": "group was not built from an SLC presentation"},
                )
            ],
        )
    nec = necessary_conditions(S, R, budget)
    if nec.status is Status.NOT_STAR_CLEAN:
        return nec
    if not S.is_q8_type():
        raise AssertionError("non-Q8 structures always fail a necessary condition")
    A = build_abelian(S.abelian)
    if R.is_field and (R.char == 0 or (8 * A.order) % R.char != 0):
        tc = theorem_c_decide([R], A, budget)
        verdict = Verdict(tc.status, nec.reasons + tc.reasons, tc.certificates)
        if tc.status is Status.STAR_CLEAN and isinstance(R, RationalField):
            if len(S.abelian) == 1 and numtheory.is_prime(S.abelian[0]) and S.abelian[0] % 8 == 7:
                verdict.reasons.append(
                    Reason(
                        "rational-prime-factor",
                        "CorollaryA.2",
                        {"p": S.abelian[0], "p_mod_8": 7},
                    )
                )
        return verdict
    return Verdict(Status.UNKNOWN, nec.reasons, nec.certificates)


# --------------------------------------------------------------------------
# cross-validation
# --------------------------------------------------------------------------

@dataclass
class CrossReport:
    group: str
    ring: str
    involution: str
    theory: Optional[Verdict]
    brute_star: BruteReport
    brute_clean_report: Optional[BruteReport]
    agreement: str
    timings: dict

    def to_json(self) -> dict:
        out = {
            "group": self.group,
            "ring": self.ring,
            "involution": self.involution,
            "theory": self.theory.to_json() if self.theory else None,
            "brute": {
                "star_clean": self.brute_star.to_json(),
            },
            "agreement": self.agreement,
            "timings": self.timings,
        }
        if self.brute_clean_report is not None:
            out["brute"]["clean"] = self.brute_clean_report.to_json()
        return out


def cross_validate(
    S: SLCStructure | FiniteGroup,
    sigma: InvolutionMap,
    R: CoefficientRing,
    budget: Budget = DEFAULT_BUDGET,
    include_clean: Optional[bool] = None,
) -> CrossReport:
    """Run theory and brute force on the same carrier and compare.

    Raises DiscrepancyError when a certified brute result contradicts a
    definite theory verdict (the theorems are proved: disagreement means an
    implementation bug).
    """
    G = S.group if isinstance(S, SLCStructure) else S
    timings = {}
    theory = None
    t0 = time.perf_counter()
    if isinstance(S, SLCStructure):
        canonical = canonical_involution(S)
        if np.array_equal(canonical.image, sigma.image):
            theory = decide_star_clean(S, R, budget)
    timings["theory_s"] = round(time.perf_counter() - t0, 6)

    t0 = time.perf_counter()
    brute_star = brute_star_clean(G, sigma, R, budget)
    timings["brute_star_s"] = round(time.perf_counter() - t0, 6)

    clean_report = None
    if include_clean is None:
        count = GroupRing(G, R).element_count()
        include_clean = count is not None and count <= 100_000
    if include_clean:
        t0 = time.perf_counter()
        clean_report = brute_clean(G, R, budget)
        timings["brute_clean_s"] = round(time.perf_counter() - t0, 6)

    if theory is None:
        agreement = "theory-not-applicable"
    elif theory.status is Status.UNKNOWN:
        agreement = "theory-unknown"
    elif brute_star.result is None:
        agreement = "brute-inconclusive"
    elif theory.status is Status.NOT_STAR_CLEAN and brute_star.result is False:
        agreement = "agree"
    elif theory.status is Status.STAR_CLEAN and brute_star.result is True:
        agreement = "agree" if brute_star.mode == "full" else "agree-sampled"
    elif theory.status is Status.NOT_STAR_CLEAN and brute_star.result is True:
        if brute_star.mode == "full" and brute_star.structure_full:
            raise DiscrepancyError(
                f"theory says not *-clean but full brute scan found all elements decomposable "
                f"({G.order=}, ring={R.spec_string()})"
            )
        agreement = "unconfirmed-sampled"
    else:  # theory star-clean, brute found a certified counterexample
        raise DiscrepancyError(
            f"theory says *-clean but brute force certified a counterexample "
            f"({G.order=}, ring={R.spec_string()})"
        )

    group_str = S.spec_string() if isinstance(S, SLCStructure) else f"order-{G.order}"
    return CrossReport(
        group=group_str,
        ring=R.spec_string(),
        involution="canonical"
        if isinstance(S, SLCStructure)
        and np.array_equal(canonical_involution(S).image, sigma.image)
        else "custom",
        theory=theory,
        brute_star=brute_star,
        brute_clean_report=clean_report,
        agreement=agreement,
        timings=timings,
    )
