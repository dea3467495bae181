"""Group-ring arithmetic RG with involution extension, idempotent/unit/
projection predicates, the central e/f splitting, and enumeration.

Elements are dense coefficient tuples indexed by group element.  Unit
testing goes through the left regular representation: alpha is a unit iff
its |G| x |G| coefficient matrix is invertible over R, which works over the
infinite coefficient rings as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import _linalg
from .coeff import CoefficientRing, Payload
from .errors import BudgetError, CarrierMismatchError, PreconditionError
from .groups import FiniteGroup, InvolutionMap, SLCStructure, Subgroup, quotient_group

DEFAULT_ENUM_BUDGET = 1 << 23


class GroupRingElement:
    """An element of RG as an immutable dense coefficient vector."""

    __slots__ = ("group", "ring", "coeffs", "_hash")

    def __init__(self, group: FiniteGroup, ring: CoefficientRing, coeffs):
        self.group = group
        self.ring = ring
        self.coeffs = tuple(coeffs)
        if len(self.coeffs) != group.order:
            raise CarrierMismatchError("coefficient vector length != group order")
        self._hash = None

    # -- plumbing ------------------------------------------------------------
    def _check(self, other: "GroupRingElement") -> None:
        if self.group is not other.group or self.ring != other.ring:
            raise CarrierMismatchError("elements live over different carriers")

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (
            self.group is other.group
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"<{self.to_string()} over {self.ring!r}>"

    def to_string(self) -> str:
        R = self.ring
        terms = []
        for g, c in enumerate(self.coeffs):
            if R.is_zero(c):
                continue
            name = self.group.names[g]
            cs = R.fmt(c)
            if name == "1":
                terms.append(cs)
            elif cs == "1":
                terms.append(name)
            else:
                terms.append(f"({cs})*{name}")
        return " + ".join(terms) if terms else "0"

    def to_dict(self) -> dict[str, str]:
        """JSON form {element_name: coefficient_string}, zeros omitted."""
        R = self.ring
        return {
            self.group.names[g]: R.fmt(c)
            for g, c in enumerate(self.coeffs)
            if not R.is_zero(c)
        }

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        R = self.ring
        return GroupRingElement(
            self.group, R, (R.add(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check(other)
        R = self.ring
        return GroupRingElement(
            self.group, R, (R.sub(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        R = self.ring
        return GroupRingElement(self.group, R, (R.neg(a) for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        R = self.ring
        mul = self.group.mul
        out = [R.zero] * self.group.order
        for g, cg in enumerate(self.coeffs):
            if R.is_zero(cg):
                continue
            row = mul[g]
            for h, ch in enumerate(other.coeffs):
                if R.is_zero(ch):
                    continue
                k = int(row[h])
                out[k] = R.add(out[k], R.mul(cg, ch))
        return GroupRingElement(self.group, R, out)

    def scale(self, r: Payload) -> "GroupRingElement":
        R = self.ring
        return GroupRingElement(self.group, R, (R.mul(r, c) for c in self.coeffs))

    def pow_int(self, e: int) -> "GroupRingElement":
        if e < 0:
            raise PreconditionError("negative powers need unit_inverse")
        ring_ctx = GroupRing(self.group, self.ring)
        out = ring_ctx.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def support(self) -> tuple[int, ...]:
        R = self.ring
        return tuple(g for g, c in enumerate(self.coeffs) if not R.is_zero(c))

    def is_zero(self) -> bool:
        R = self.ring
        return all(R.is_zero(c) for c in self.coeffs)

    def is_central(self) -> bool:
        """Commutes with every group element basis vector."""
        mul = self.group.mul
        R = self.ring
        for h in range(self.group.order):
            left = [None] * self.group.order
            right = [None] * self.group.order
            for g, c in enumerate(self.coeffs):
                left[int(mul[h, g])] = c
                right[int(mul[g, h])] = c
            if left != right:
                return False
        return True


# module-level aliases matching the operation names
def add(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a + b


def mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a * b


def neg(a: GroupRingElement) -> GroupRingElement:
    return -a


def scalar_mul(r: Payload, a: GroupRingElement) -> GroupRingElement:
    return a.scale(r)


@dataclass(eq=False)
class GroupRing:
    """Carrier pair (G, R) with element factories and counting."""

    group: FiniteGroup
    ring: CoefficientRing

    def zero(self) -> GroupRingElement:
        return GroupRingElement(self.group, self.ring, [self.ring.zero] * self.group.order)

    def one(self) -> GroupRingElement:
        return self.basis(self.group.identity)

    def basis(self, g: int) -> GroupRingElement:
        R = self.ring
        return GroupRingElement(
            self.group, R, (R.one if i == g else R.zero for i in range(self.group.order))
        )

    def from_coeffs(self, coeffs) -> GroupRingElement:
        return GroupRingElement(self.group, self.ring, coeffs)

    def from_dict(self, d: dict[str, Payload]) -> GroupRingElement:
        out = [self.ring.zero] * self.group.order
        for name, c in d.items():
            out[self.group.index_of(name)] = c
        return GroupRingElement(self.group, self.ring, out)

    def from_int_coeffs(self, coeffs) -> GroupRingElement:
        R = self.ring
        return GroupRingElement(self.group, R, (R.from_int(c) for c in coeffs))

    def element_count(self) -> Optional[int]:
        if self.ring.order is None:
            return None
        return self.ring.order ** self.group.order

    def random_element(self, rng) -> GroupRingElement:
        if self.ring.order is None:
            raise BudgetError("cannot sample from an infinite ring")
        R = self.ring
        return self.from_coeffs(
            R.decode(int(rng.integers(0, R.order))) for _ in range(self.group.order)
        )


# --------------------------------------------------------------------------
# involution extension and predicates
# --------------------------------------------------------------------------

def apply_involution(sigma: InvolutionMap, alpha: GroupRingElement) -> GroupRingElement:
    """Linear extension: sum of alpha_g * sigma(g)."""
    if sigma.group is not alpha.group:
        raise CarrierMismatchError("involution is on a different group")
    out = [alpha.ring.zero] * alpha.group.order
    for g, c in enumerate(alpha.coeffs):
        out[int(sigma.image[g])] = c
    return GroupRingElement(alpha.group, alpha.ring, out)


def is_idempotent(alpha: GroupRingElement) -> bool:
    return alpha * alpha == alpha


def is_projection(alpha: GroupRingElement, sigma: InvolutionMap) -> bool:
    return is_idempotent(alpha) and apply_involution(sigma, alpha) == alpha


def regular_representation(alpha: GroupRingElement) -> list[list[Payload]]:
    """Matrix of left multiplication by alpha in the group basis.

    Row k, column h holds the coefficient of alpha at k * h^-1, so that
    M @ vec(beta) = vec(alpha * beta).
    """
    G = alpha.group
    n = G.order
    inv = G.inverse
    mul_t = G.mul
    return [
        [alpha.coeffs[int(mul_t[k, int(inv[h])])] for h in range(n)] for k in range(n)
    ]


_regrep_rows = regular_representation


def is_unit(alpha: GroupRingElement) -> bool:
    return _linalg.is_invertible(alpha.ring, _regrep_rows(alpha))


def unit_inverse(alpha: GroupRingElement) -> Optional[GroupRingElement]:
    """Two-sided inverse recovered from the regular representation, or None."""
    G = alpha.group
    R = alpha.ring
    rhs = [R.one if k == G.identity else R.zero for k in range(G.order)]
    sol = _linalg.solve_column(R, _regrep_rows(alpha), rhs)
    if sol is None:
        return None
    beta = GroupRingElement(G, R, sol)
    if not (alpha * beta == GroupRing(G, R).one() and beta * alpha == GroupRing(G, R).one()):
        raise AssertionError("regular-representation inverse failed to verify")
    return beta


def regrep_det(alpha: GroupRingElement) -> Payload:
    return _linalg.det(alpha.ring, _regrep_rows(alpha))


# --------------------------------------------------------------------------
# the central splitting RG = R(G/<s>) + (RG)f
# --------------------------------------------------------------------------

@dataclass(eq=False)
class CentralIdempotentPair:
    """e = (1+s)/2 and f = (1-s)/2 for the SLC commutator generator s."""

    slc: SLCStructure
    ring: CoefficientRing
    e: GroupRingElement
    f: GroupRingElement

    def validate(self) -> None:
        one = GroupRing(self.slc.group, self.ring).one()
        zero = GroupRing(self.slc.group, self.ring).zero()
        ok = (
            is_idempotent(self.e)
            and is_idempotent(self.f)
            and self.e * self.f == zero
            and self.f * self.e == zero
            and self.e + self.f == one
            and self.e.is_central()
            and self.f.is_central()
        )
        if not ok:
            raise PreconditionError("central idempotent pair invariants fail")


def central_idempotents(S: SLCStructure, R: CoefficientRing) -> CentralIdempotentPair:
    RG = GroupRing(S.group, R)
    half = R.half
    e_coeffs = [R.zero] * S.group.order
    f_coeffs = [R.zero] * S.group.order
    e_coeffs[S.group.identity] = half
    e_coeffs[S.s] = half
    f_coeffs[S.group.identity] = half
    f_coeffs[S.s] = R.neg(half)
    return CentralIdempotentPair(S, R, RG.from_coeffs(e_coeffs), RG.from_coeffs(f_coeffs))


@dataclass(eq=False)
class SplitParts:
    """Image of alpha under RG = R(G/<s>) + (RG)f."""

    pair: CentralIdempotentPair
    quotient_group: FiniteGroup
    coset_map: np.ndarray
    reps: tuple[int, ...]
    e_part: GroupRingElement  # lives over the quotient group
    f_part: GroupRingElement  # lives over G, inside (RG)f

    def reassemble(self) -> GroupRingElement:
        S = self.pair.slc
        R = self.pair.ring
        RG = GroupRing(S.group, R)
        lift = RG.zero()
        coeffs = list(lift.coeffs)
        for q_idx, rep in enumerate(self.reps):
            coeffs[rep] = self.e_part.coeffs[q_idx]
        lifted = RG.from_coeffs(coeffs)
        return lifted * self.pair.e + self.f_part


def split(alpha: GroupRingElement, pair: CentralIdempotentPair) -> SplitParts:
    """e-part in quotient coordinates (coefficient of gH = alpha_g + alpha_gs)
    plus the f-component alpha*f."""
    S = pair.slc
    G = S.group
    R = pair.ring
    Q, coset_map = quotient_group(G, Subgroup(G, (G.identity, S.s)))
    reps: list[int] = [-1] * Q.order
    for g in range(G.order):
        q = int(coset_map[g])
        if reps[q] == -1 or g < reps[q]:
            reps[q] = g
    q_coeffs = [R.zero] * Q.order
    for g, c in enumerate(alpha.coeffs):
        q = int(coset_map[g])
        q_coeffs[q] = R.add(q_coeffs[q], c)
    e_part = GroupRingElement(Q, R, q_coeffs)
    f_part = alpha * pair.f
    return SplitParts(pair, Q, coset_map, tuple(reps), e_part, f_part)


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------

def _require_finite(RG: GroupRing) -> int:
    count = RG.element_count()
    if count is None:
        raise BudgetError(f"{RG.ring!r} is infinite; enumeration impossible")
    return count


def enumerate_elements(RG: GroupRing, budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[GroupRingElement]:
    """All of RG in counter order (identity coefficient varies fastest)."""
    count = _require_finite(RG)
    if count > budget:
        raise BudgetError(
            f"|R|^|G| = {count} exceeds budget {budget}", cardinality=count
        )
    R = RG.ring
    n = RG.group.order
    q = R.order
    for counter in range(count):
        rem = counter
        coeffs = []
        for _ in range(n):
            rem, code = rem // q, rem % q
            coeffs.append(R.decode(code))
        yield RG.from_coeffs(coeffs)


def enumerate_units(RG: GroupRing, budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[GroupRingElement]:
    for alpha in enumerate_elements(RG, budget):
        if is_unit(alpha):
            yield alpha


def enumerate_idempotents(RG: GroupRing, budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[GroupRingElement]:
    for alpha in enumerate_elements(RG, budget):
        if is_idempotent(alpha):
            yield alpha


def enumerate_projections(
    RG: GroupRing, sigma: InvolutionMap, budget: int = DEFAULT_ENUM_BUDGET
) -> Iterator[GroupRingElement]:
    """Projections streamed over the sigma-symmetric subspace only."""
    count = _require_finite(RG)  # also validates finiteness
    orbits = sigma.orbits()
    R = RG.ring
    sym_count = R.order ** len(orbits)
    if sym_count > budget:
        raise BudgetError(
            f"|R|^orbits = {sym_count} exceeds budget {budget}", cardinality=sym_count
        )
    n = RG.group.order
    q = R.order
    for counter in range(sym_count):
        rem = counter
        coeffs = [R.zero] * n
        for orbit in orbits:
            rem, code = rem // q, rem % q
            val = R.decode(code)
            for g in orbit:
                coeffs[g] = val
        alpha = RG.from_coeffs(coeffs)
        if is_idempotent(alpha):
            yield alpha


# --------------------------------------------------------------------------
# batched helpers on int-code matrices (used by the brute-force module)
# --------------------------------------------------------------------------

def batch_convolve(RG: GroupRing, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row-wise group-ring products of paired rows of A and B (code matrices)."""
    vec = RG.ring.vec
    if vec is None:
        raise BudgetError(f"{RG.ring!r} has no vectorised arithmetic")
    mul_t = RG.group.mul
    out = np.zeros_like(A)
    for g in range(RG.group.order):
        col = A[:, g]
        if not col.any():
            continue
        perm = mul_t[g]
        out[:, perm] = vec.add(out[:, perm], vec.mul(col[:, None], B))
    return out


def batch_idempotent_mask(RG: GroupRing, C: np.ndarray) -> np.ndarray:
    return (batch_convolve(RG, C, C) == C).all(axis=1)
