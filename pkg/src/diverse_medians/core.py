"""Foundational types and exact arithmetic for string datasets and medians.

Everything downstream (diameter pairs, dispersion maximizers, LP rounding,
oracles) builds on the objects here: the dataset, per-index frequency tables,
the most-frequent-character string ``w`` and its second-choice companion,
the optimal objective value ``opt``, exact rational deviation budgets, and
candidate sets with cached costs and per-index character counts.

All budget comparisons are exact integer comparisons (cross-multiplied
rationals); no float ever decides feasibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Symbol = str
Word = tuple[Symbol, ...]


class ValidationError(ValueError):
    """Invalid dataset, parameters, or strings."""


class CapExceeded(RuntimeError):
    """An enumeration or DP would exceed its configured size cap."""


class InfeasibleError(RuntimeError):
    """No feasible solution (e.g. every rounding trial filtered out)."""


def as_word(s: Sequence[Symbol] | str) -> Word:
    """Normalize a plain string or symbol sequence to a tuple of symbols."""
    if isinstance(s, tuple):
        return s
    return tuple(s)


def word_str(word: Word) -> str:
    """Join a word for display when all symbols are single characters."""
    return "".join(word)


@dataclass(frozen=True)
class Dataset:
    """n strings of uniform length d over an ordered alphabet."""

    strings: tuple[Word, ...]
    alphabet: tuple[Symbol, ...]
    n: int
    d: int
    alphabet_inferred: bool = False

    @classmethod
    def from_strings(
        cls,
        strings: Iterable[Sequence[Symbol] | str],
        alphabet: Sequence[Symbol] | None = None,
    ) -> "Dataset":
        words = tuple(as_word(s) for s in strings)
        if not words:
            raise ValidationError("empty dataset: at least one string required")
        d = len(words[0])
        if d < 1:
            raise ValidationError("strings must have length >= 1")
        for idx, word in enumerate(words):
            if len(word) != d:
                raise ValidationError(
                    f"ragged dataset: string {idx + 1} has length {len(word)}, expected {d}"
                )
        if alphabet is not None:
            alpha = tuple(alphabet)
            if len(set(alpha)) != len(alpha):
                raise ValidationError("alphabet contains duplicate symbols")
            allowed = set(alpha)
            for idx, word in enumerate(words):
                for sym in word:
                    if sym not in allowed:
                        raise ValidationError(
                            f"string {idx + 1} uses symbol {sym!r} outside the declared alphabet"
                        )
            inferred = False
        else:
            # Inferred alphabet: first-occurrence order, documented in output.
            seen: dict[Symbol, None] = {}
            for word in words:
                for sym in word:
                    if sym not in seen:
                        seen[sym] = None
            alpha = tuple(seen)
            inferred = True
        return cls(strings=words, alphabet=alpha, n=len(words), d=d,
                   alphabet_inferred=inferred)


@dataclass(frozen=True)
class FrequencyTable:
    """Per-index symbol counts and majority sets.

    ``majority_sets[i]`` lists every symbol attaining the maximum count at
    index i, in global symbol order; ties there are what make multiple exact
    medians possible.
    """

    counts: tuple[dict[Symbol, int], ...]
    majority_sets: tuple[tuple[Symbol, ...], ...]
    n: int
    d: int
    alphabet: tuple[Symbol, ...]

    def count(self, i: int, a: Symbol) -> int:
        return self.counts[i].get(a, 0)

    def direct_cost(self, word: Word) -> int:
        """Median objective of `word` straight from the definition.

        Sum over indices of (n - count of word's symbol there); this is the
        double-sum Sum_x H(x, word) folded by columns and is deliberately
        independent of the offset formula in median_cost.
        """
        return sum(self.n - self.counts[i].get(word[i], 0) for i in range(self.d))

    @property
    def tie_set(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.d) if len(self.majority_sets[i]) >= 2)


@dataclass(frozen=True)
class MedianContext:
    """The mfc string w, its second-choice companion, opt, and deviation costs."""

    dataset: Dataset
    freq: FrequencyTable
    w: Word
    w_hat: Word
    opt: int
    # weight[i] = count(w_i) - count(w_hat_i), the cheapest nonzero deviation at i
    # (0 exactly on tie indices).
    weight: tuple[int, ...]
    # per_char_cost[i][a] = count(w_i) - count(a) for every alphabet symbol a != w_i.
    per_char_cost: tuple[dict[Symbol, int], ...]

    @property
    def n(self) -> int:
        return self.dataset.n

    @property
    def d(self) -> int:
        return self.dataset.d

    @property
    def alphabet(self) -> tuple[Symbol, ...]:
        return self.dataset.alphabet

    def char_cost(self, i: int, a: Symbol) -> int:
        """Objective increase from placing symbol a at index i instead of w_i."""
        if a == self.w[i]:
            return 0
        return self.per_char_cost[i][a]


def build_context(dataset: Dataset) -> MedianContext:
    """Build frequency tables, w, the second-choice string, opt, and costs.

    Tie-breaks everywhere use the dataset's alphabet order, so the result is
    deterministic. When an index is unanimous (count n), the second choice is
    fixed to the first other alphabet symbol; its weight n can never be picked
    up by any budgeted greedy, it just keeps the structure total.
    """
    order = {a: j for j, a in enumerate(dataset.alphabet)}
    counts: list[dict[Symbol, int]] = []
    majority: list[tuple[Symbol, ...]] = []
    w: list[Symbol] = []
    w_hat: list[Symbol] = []
    weight: list[int] = []
    per_char: list[dict[Symbol, int]] = []
    for i in range(dataset.d):
        col: dict[Symbol, int] = {}
        for word in dataset.strings:
            col[word[i]] = col.get(word[i], 0) + 1
        col = dict(sorted(col.items(), key=lambda kv: order[kv[0]]))
        counts.append(col)
        best = max(col.values())
        gamma_i = tuple(a for a in col if col[a] == best)
        majority.append(gamma_i)
        wi = gamma_i[0]
        w.append(wi)
        # Second choice: max count among the other symbols (count 0 allowed),
        # ties again by alphabet order.
        rest_best = 0
        for a, c in col.items():
            if a != wi and c > rest_best:
                rest_best = c
        if rest_best > 0:
            hat = next(a for a, c in col.items() if a != wi and c == rest_best)
        else:
            if len(dataset.alphabet) < 2:
                raise ValidationError(
                    "alphabet needs at least 2 symbols to define a second choice"
                )
            hat = next(a for a in dataset.alphabet if a != wi)
        w_hat.append(hat)
        weight.append(best - rest_best)
        per_char.append({a: best - col.get(a, 0) for a in dataset.alphabet if a != wi})
    freq = FrequencyTable(
        counts=tuple(counts),
        majority_sets=tuple(majority),
        n=dataset.n,
        d=dataset.d,
        alphabet=dataset.alphabet,
    )
    opt = sum(dataset.n - counts[i][w[i]] for i in range(dataset.d))
    return MedianContext(
        dataset=dataset,
        freq=freq,
        w=tuple(w),
        w_hat=tuple(w_hat),
        opt=opt,
        weight=tuple(weight),
        per_char_cost=tuple(per_char),
    )


def context_from_strings(
    strings: Iterable[Sequence[Symbol] | str],
    alphabet: Sequence[Symbol] | None = None,
) -> MedianContext:
    return build_context(Dataset.from_strings(strings, alphabet))


@dataclass(frozen=True)
class Budget:
    """Exact rational deviation budget eps paired with its integer threshold.

    A deviation weight W (= cost - opt) satisfies the budget iff
    threshold_den * W <= threshold_num, i.e. W <= eps * opt exactly.
    """

    epsilon: Fraction
    opt: int
    threshold_num: int  # p * opt
    threshold_den: int  # q

    @classmethod
    def make(cls, epsilon: Fraction | int | str, opt: int) -> "Budget":
        eps = Fraction(epsilon)
        if eps < 0:
            raise ValidationError("epsilon must be nonnegative")
        if opt < 0:
            raise ValidationError("opt must be nonnegative")
        return cls(
            epsilon=eps,
            opt=opt,
            threshold_num=eps.numerator * opt,
            threshold_den=eps.denominator,
        )

    def within(self, weight: int, mult: int = 1) -> bool:
        """Exact test weight <= mult * eps * opt (mult=2 for the doubled budget)."""
        return self.threshold_den * weight <= mult * self.threshold_num

    @property
    def floor(self) -> int:
        """Largest integer weight that satisfies the budget."""
        return self.threshold_num // self.threshold_den


def hamming(s: Word | str, t: Word | str) -> int:
    s, t = as_word(s), as_word(t)
    if len(s) != len(t):
        raise ValidationError(f"length mismatch: {len(s)} vs {len(t)}")
    return sum(1 for a, b in zip(s, t) if a != b)


def sum_dispersion(members: Sequence[Word | str]) -> int:
    """Sum of pairwise Hamming distances over an (ordered) multiset."""
    words = [as_word(m) for m in members]
    total = 0
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            total += hamming(words[i], words[j])
    return total


def min_dispersion(members: Sequence[Word | str]) -> int:
    """Minimum pairwise Hamming distance; duplicates yield 0."""
    words = [as_word(m) for m in members]
    if len(words) < 2:
        raise ValidationError("min_dispersion needs at least 2 members")
    best = None
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            h = hamming(words[i], words[j])
            if best is None or h < best:
                best = h
                if best == 0:
                    return 0
    return best


def median_cost(ctx: MedianContext, s: Word | str) -> int:
    """Objective of s via the offset formula: opt plus per-deviation costs."""
    word = as_word(s)
    if len(word) != ctx.d:
        raise ValidationError(f"length mismatch: {len(word)} vs d={ctx.d}")
    total = ctx.opt
    for i, a in enumerate(word):
        if a != ctx.w[i]:
            try:
                total += ctx.per_char_cost[i][a]
            except KeyError:
                raise ValidationError(f"symbol {a!r} at index {i} not in alphabet") from None
    return total


def is_approx_median(ctx: MedianContext, budget: Budget, s: Word | str) -> bool:
    return budget.within(median_cost(ctx, s) - ctx.opt)


def is_exact_median(ctx: MedianContext, s: Word | str) -> bool:
    word = as_word(s)
    return len(word) == ctx.d and all(
        word[i] in ctx.freq.majority_sets[i] for i in range(ctx.d)
    )


@dataclass(frozen=True)
class CandidateSet:
    """Ordered multiset of k candidate strings with cached costs and counts.

    char_counts[i] maps each symbol appearing at index i to the number of
    members carrying it; per index the values sum to k. Duplicate members are
    legal (several constructions use them on purpose).
    """

    members: tuple[Word, ...]
    costs: tuple[int, ...]
    char_counts: tuple[dict[Symbol, int], ...]

    @classmethod
    def from_members(cls, freq: FrequencyTable, members: Sequence[Word | str]) -> "CandidateSet":
        words = tuple(as_word(m) for m in members)
        if not words:
            raise ValidationError("candidate set needs at least one member")
        for word in words:
            if len(word) != freq.d:
                raise ValidationError("candidate length mismatch")
        counts: list[dict[Symbol, int]] = []
        for i in range(freq.d):
            col: dict[Symbol, int] = {}
            for word in words:
                col[word[i]] = col.get(word[i], 0) + 1
            counts.append(col)
        costs = tuple(freq.direct_cost(word) for word in words)
        return cls(members=words, costs=costs, char_counts=tuple(counts))

    @property
    def k(self) -> int:
        return len(self.members)

    def sum_dispersion(self) -> int:
        # Column identity: pairs differing at i = (k^2 - sum of squared counts)/2;
        # always an integer since sum of counts = k and l^2 = l (mod 2).
        k = self.k
        total = 0
        for col in self.char_counts:
            total += (k * k - sum(c * c for c in col.values())) // 2
        return total

    def min_dispersion(self) -> int:
        return min_dispersion(self.members)
