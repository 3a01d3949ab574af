"""Two maximally distant (approximate) medians.

The exact case reads the answer off the tie structure. The approximate case
sorts indices by deviation weight, fills two greedy budgets, and patches the
boundary with a minimum-difference partition when that lets one more index
join the pair's combined deviation set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Budget, FrequencyTable, MedianContext, Word


@dataclass(frozen=True)
class DiameterResult:
    pair: tuple[Word, Word]
    diameter: int
    costs: tuple[int, int]
    branch: str  # "exact" | "greedy_SR" | "partitioned_T1T2"


@dataclass(frozen=True)
class PartitionResult:
    parts: tuple[tuple[int, ...], tuple[int, ...]]
    sums: tuple[int, int]

    @property
    def diff(self) -> int:
        return abs(self.sums[0] - self.sums[1])


def exact_diameter_pair(ctx: MedianContext, freq: FrequencyTable) -> DiameterResult:
    """Most distant pair of exact medians: w vs. w flipped on every tie index.

    Flipping any subset of tie indices to alternative majority symbols stays
    an exact median, so the diameter is simply the number of tie indices.
    """
    z = list(ctx.w)
    ties = 0
    for i, gamma in enumerate(freq.majority_sets):
        if len(gamma) >= 2:
            ties += 1
            z[i] = next(a for a in gamma if a != ctx.w[i])  # alphabet order
    return DiameterResult(
        pair=(ctx.w, tuple(z)),
        diameter=ties,
        costs=(ctx.opt, ctx.opt),
        branch="exact",
    )


def min_diff_partition(T: Sequence[int], weights: Sequence[int]) -> PartitionResult:
    """Split T into two parts with minimum weight-sum difference.

    Classic subset-sum DP over target floor(total/2); one bitset row per item
    is kept so the achieving subset can be walked back. weights[j] belongs to
    index T[j].
    """
    items = list(T)
    ws = [int(x) for x in weights]
    if len(items) != len(ws):
        raise ValueError("weights must align with T")
    if any(x < 0 for x in ws):
        raise ValueError("weights must be nonnegative")
    total = sum(ws)
    target = total // 2
    keep = (1 << (target + 1)) - 1  # sums beyond the target never help
    rows = [1]
    for x in ws:
        rows.append((rows[-1] | (rows[-1] << x)) & keep)
    best = rows[-1].bit_length() - 1  # largest achievable sum <= target
    part1: list[int] = []
    cur = best
    for j in range(len(items), 0, -1):
        if rows[j - 1] >> cur & 1:
            continue  # same sum reachable without item j-1
        part1.append(items[j - 1])
        cur -= ws[j - 1]
    part1.reverse()
    chosen = set(part1)
    part2 = [i for i in items if i not in chosen]
    return PartitionResult(parts=(tuple(part1), tuple(part2)), sums=(best, total - best))


def _deviate(ctx: MedianContext, indices: Iterable[int]) -> Word:
    word = list(ctx.w)
    for i in indices:
        word[i] = ctx.w_hat[i]
    return tuple(word)


def approx_diameter_pair(ctx: MedianContext, budget: Budget) -> DiameterResult:
    """Most distant pair of (1+eps)-approximate medians.

    Indices are sorted by second-choice weight (ascending, ties by index).
    S then R greedily absorb a prefix each while staying within the budget;
    the two deviation sets are disjoint, so the diameter is |S| + |R| — or
    |S| + |R| + 1 when the next index can be folded in by re-partitioning
    S + R + next into two budget-respecting halves.
    """
    d = ctx.d
    order = sorted(range(d), key=lambda i: (ctx.weight[i], i))

    def greedy_prefix(start: int) -> tuple[list[int], int]:
        chosen: list[int] = []
        acc = 0
        for pos in range(start, d):
            i = order[pos]
            if not budget.within(acc + ctx.weight[i]):
                break
            chosen.append(i)
            acc += ctx.weight[i]
        return chosen, acc

    S, sum_s = greedy_prefix(0)
    R, sum_r = greedy_prefix(len(S))
    taken = len(S) + len(R)

    if taken < d:
        nxt = order[taken]
        T = S + R + [nxt]
        total = sum_s + sum_r + ctx.weight[nxt]
        if budget.within(total, mult=2):
            part = min_diff_partition(T, [ctx.weight[i] for i in T])
            if budget.within(part.sums[0]) and budget.within(part.sums[1]):
                y = _deviate(ctx, part.parts[0])
                z = _deviate(ctx, part.parts[1])
                return DiameterResult(
                    pair=(y, z),
                    diameter=len(T),
                    costs=(ctx.opt + part.sums[0], ctx.opt + part.sums[1]),
                    branch="partitioned_T1T2",
                )

    y = _deviate(ctx, S)
    z = _deviate(ctx, R)
    return DiameterResult(
        pair=(y, z),
        diameter=taken,
        costs=(ctx.opt + sum_s, ctx.opt + sum_r),
        branch="greedy_SR",
    )
