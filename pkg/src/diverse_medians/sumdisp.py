"""k medians maximizing sum dispersion.

Three engines share this module: a closed-form construction over the tie
structure (exact medians), a budgeted density-greedy for approximate medians
(modification ops sorted by gain/cost, longest feasible prefix assigned by a
cost-greedy pass), and a pairwise-sum greedy over an enumerated pool for
instances whose diameter is too small for the density analysis to bite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import (
    Budget,
    CandidateSet,
    CapExceeded,
    FrequencyTable,
    MedianContext,
    ValidationError,
    Word,
)
from .oracle import (
    DEFAULT_LIMITS,
    EnumerationLimits,
    enumerate_approx_medians,
    pairwise_hamming_matrix,
)


@dataclass(frozen=True)
class ModOp:
    """One modification step: set candidate #target_count's symbol at index to symbol.

    majority_count is how many candidates still hold the column majority
    symbol just before this op runs; the op's sum-dispersion gain is
    majority_count - target_count, and its density is gain per unit cost
    (zero-cost ops count as infinitely dense).
    """

    index: int
    symbol: str
    target_count: int
    majority_count: int
    cost: int

    @property
    def gain(self) -> int:
        return self.majority_count - self.target_count

    @property
    def density(self) -> Fraction | None:
        """Exact density, or None for the infinite (zero-cost) case."""
        if self.cost == 0:
            return None
        return Fraction(self.gain, self.cost)


@dataclass(frozen=True)
class OpList:
    ops: tuple[ModOp, ...]
    preprocessed: bool = True

    def prefix(self, j: int) -> tuple[ModOp, ...]:
        return self.ops[:j]

    def __len__(self) -> int:
        return len(self.ops)


def sum_dispersion_exact_k(ctx: MedianContext, freq: FrequencyTable, k: int) -> CandidateSet:
    """k exact medians with maximum sum dispersion, by balanced tie layout.

    Per tie index the k symbols are spread as evenly as possible over the
    majority set: k mod g symbols appear floor(k/g)+1 times, the rest
    floor(k/g) times. Even spreading maximizes k^2 - sum of squared counts.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    columns: list[list[str]] = []
    for gamma in freq.majority_sets:
        g = len(gamma)
        base, q = divmod(k, g)
        col: list[str] = []
        for pos, a in enumerate(gamma):  # alphabet order; first q get the extra
            col.extend([a] * (base + 1 if pos < q else base))
        columns.append(col)
    members = [tuple(col[j] for col in columns) for j in range(k)]
    return CandidateSet.from_members(freq, members)


def build_oplist(ctx: MedianContext, k: int) -> OpList:
    """All useful modification ops, densest first.

    Per index we walk the k slots: with majority_count copies of the column
    majority left, the best conversion is the symbol with maximum density
    (ties: cheaper cost, then alphabet order; zero-cost ops compare by gain).
    Slots stop as soon as no conversion gains anything, which also dedupes
    (index, majority_count) pairs — each keeps only its max-density op.

    The global order is density descending, then cost ascending, then index,
    symbol, target_count. Within one index the recorded finite densities
    strictly decrease, so the global sort never reorders a per-index chain.
    """
    alpha_pos = {a: j for j, a in enumerate(ctx.alphabet)}
    ops: list[ModOp] = []
    for i in range(ctx.d):
        others = [a for a in ctx.alphabet if a != ctx.w[i]]
        counts = {a: 0 for a in others}
        for ell in range(k, 0, -1):
            best: tuple | None = None
            for a in others:
                gain = ell - (counts[a] + 1)
                if gain < 1:
                    continue
                c = ctx.per_char_cost[i][a]
                # rank: zero-cost tier first; inside a tier larger density wins,
                # then smaller cost, then alphabet order
                if c == 0:
                    key = (0, -gain, 0, alpha_pos[a])
                else:
                    key = (1, -Fraction(gain, c), c, alpha_pos[a])
                if best is None or key < best[0]:
                    best = (key, a, c, gain)
            if best is None:
                break  # gains only shrink from here
            _, a, c, _ = best
            counts[a] += 1
            ops.append(
                ModOp(index=i, symbol=a, target_count=counts[a], majority_count=ell, cost=c)
            )

    def sort_key(op: ModOp):
        if op.cost == 0:
            dens_rank: tuple = (0, Fraction(0))
        else:
            dens_rank = (1, -op.density)
        return (*dens_rank, op.cost, op.index, alpha_pos[op.symbol], op.target_count)

    ops.sort(key=sort_key)
    return OpList(ops=tuple(ops))


def cost_greedy_assign(
    ctx: MedianContext, budget: Budget, k: int, prefix: Sequence[ModOp]
) -> tuple[CandidateSet, bool]:
    """Realize an op-list prefix on k candidate strings, cheapest seats first.

    h[(a,i)] counts how many candidates the prefix wants carrying symbol a at
    index i. Pairs are processed by ascending per-symbol cost; each assigns
    its h cheapest still-unmodified-at-i candidates whose budget survives the
    surcharge. Falling short on any pair flags the prefix infeasible.
    """
    h: dict[tuple[str, int], int] = {}
    for op in prefix:
        key = (op.symbol, op.index)
        h[key] = h.get(key, 0) + 1

    members = [list(ctx.w) for _ in range(k)]
    weights = [0] * k  # deviation above opt, per candidate
    feasible = True
    order = sorted(h, key=lambda ai: (ctx.per_char_cost[ai[1]][ai[0]], ai[1], ai[0]))
    for a, i in order:
        c = ctx.per_char_cost[i][a]
        ranked = sorted(
            (y for y in range(k) if members[y][i] == ctx.w[i] and budget.within(weights[y] + c)),
            key=lambda y: (weights[y], y),
        )
        take = ranked[: h[(a, i)]]
        if len(take) < h[(a, i)]:
            feasible = False
        for y in take:
            members[y][i] = a
            weights[y] += c
    cands = CandidateSet.from_members(ctx.freq, [tuple(m) for m in members])
    return cands, feasible


def sum_dispersion_approx_k(
    ctx: MedianContext, budget: Budget, k: int, *, linear_scan: bool = False
) -> tuple[CandidateSet, int]:
    """k approximate medians with (near-)maximum sum dispersion.

    Binary-searches the longest feasible prefix of the op list (the empty
    prefix is always feasible). linear_scan=True instead walks prefixes from
    longest to shortest, for instances where the feasibility monotonicity the
    binary search relies on is in doubt.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    oplist = build_oplist(ctx, k)
    m = len(oplist)

    def probe(j: int) -> tuple[CandidateSet, bool]:
        return cost_greedy_assign(ctx, budget, k, oplist.prefix(j))

    if linear_scan:
        for j in range(m, -1, -1):
            cands, ok = probe(j)
            if ok:
                break
    else:
        lo, hi = 0, m
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if probe(mid)[1]:
                lo = mid
            else:
                hi = mid - 1
        cands, _ = probe(lo)
    return cands, cands.sum_dispersion()


def sum_dispersion_small_dstar(
    ctx: MedianContext, budget: Budget, k: int, candidates: Sequence[Word]
) -> CandidateSet:
    """Greedy pairwise-sum pick of k pool members (duplicates fill shortfalls).

    Farthest-pair matching while two or more seats remain, then single
    insertions maximizing the summed distance to the chosen set. Half the
    optimum on every pool small enough to check exhaustively; no stronger
    claim is made.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    pool = list(candidates)
    if not pool:
        raise ValidationError("candidate pool is empty")
    if len(pool) == 1 or k == 1:
        return CandidateSet.from_members(ctx.freq, [pool[0]] * k)

    dmat = pairwise_hamming_matrix(pool).astype(np.int64)
    p = len(pool)
    avail = np.ones(p, dtype=bool)
    chosen: list[int] = []
    while k - len(chosen) >= 2 and avail.sum() >= 2:
        sub = np.where(avail[:, None] & avail[None, :], dmat, -1)
        flat = int(np.argmax(sub))  # row-major: first (lexicographic) maximum
        i, j = divmod(flat, p)
        if i == j:  # single available point left with itself; bail to insertion
            break
        chosen.extend(sorted((i, j)))
        avail[i] = avail[j] = False
    while len(chosen) < k:
        gains = dmat[:, chosen].sum(axis=1)
        chosen.append(int(np.argmax(gains)))  # duplicates allowed: argmax over all
    return CandidateSet.from_members(ctx.freq, [pool[i] for i in chosen])


DISPATCH_GUARANTEES = {
    "density": "value >= (1 - delta) * optimum",
    "enumeration": "value >= optimum / 2",
    "density_fallback": "pool enumeration over cap; density value >= (1 - 4/D*) * optimum",
}


def sum_dispersion_dispatch(
    ctx: MedianContext,
    budget: Budget,
    k: int,
    delta: Fraction,
    *,
    limits: EnumerationLimits = DEFAULT_LIMITS,
) -> tuple[CandidateSet, str]:
    """Pick the right engine from the pool diameter: density when D* >= 4/delta.

    Returns the candidate set and the strategy tag (a DISPATCH_GUARANTEES
    key). Enumeration that blows the candidate cap falls back to the density
    engine with its unconditional (1 - 4/D*) bound.
    """
    from .diameter import approx_diameter_pair

    if not 0 < delta:
        raise ValidationError("delta must be positive")
    dstar = approx_diameter_pair(ctx, budget).diameter
    if Fraction(dstar) >= Fraction(4) / Fraction(delta):
        cands, _ = sum_dispersion_approx_k(ctx, budget, k)
        return cands, "density"
    try:
        pool = enumerate_approx_medians(ctx, budget, limits)
    except CapExceeded:
        cands, _ = sum_dispersion_approx_k(ctx, budget, k)
        return cands, "density_fallback"
    return sum_dispersion_small_dstar(ctx, budget, k, pool), "enumeration"


def make_distinct(ctx: MedianContext, cands: CandidateSet) -> tuple[CandidateSet, bool]:
    """Optional post-pass: force pairwise-distinct members via tie indices.

    Stamps each member with a distinct bit pattern over ceil(log2 k) tie
    indices (majority symbol vs. first alternative — both cost 0, so every
    cost class is preserved). Returns (cands, False) untouched when the tie
    structure is too small to address k distinct patterns.
    """
    k = cands.k
    need = max(0, (k - 1).bit_length())
    ties = [i for i, gamma in enumerate(ctx.freq.majority_sets) if len(gamma) >= 2]
    if len(ties) < need:
        return cands, False
    stamp = ties[:need]
    members = []
    for j, member in enumerate(cands.members):
        word = list(member)
        for b, i in enumerate(stamp):
            gamma = ctx.freq.majority_sets[i]
            alt = next(a for a in gamma if a != ctx.w[i])
            word[i] = alt if (j >> b) & 1 else ctx.w[i]
        members.append(tuple(word))
    return CandidateSet.from_members(ctx.freq, members), True
