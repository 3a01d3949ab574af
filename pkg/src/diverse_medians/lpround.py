"""LP rounding pipeline for min dispersion over approximate medians.

A string assignment problem: per candidate r and index i, pick one of the k
most frequent characters. The integer program maximizes t with the pairwise
difference counts constrained to >= 2t; its LP relaxation is solved once, and
bipartite dependent rounding turns each candidate's fractional row-stochastic
matrix into a 0/1 pick while preserving marginals exactly in expectation and
row sums exactly always.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .core import (
    Budget,
    CandidateSet,
    InfeasibleError,
    MedianContext,
    ValidationError,
    Word,
    median_cost,
)
from .mindisp import SampleConfig

_SNAP = 1e-9  # entries this close to 0/1 are considered integral
_ROW_TOL = 1e-6  # acceptable row-sum drift on input matrices


@dataclass(frozen=True)
class IlpModel:
    """The assignment program: variables u_{rij}, z_{(r,rhat)ij}, objective t.

    ranked_chars[i][j] is the (j+1)-th most frequent character at index i
    (ties by alphabet order, j=0 is the column majority); costs[i][j] is its
    deviation weight, zero at j=0 and nondecreasing in j.
    """

    k: int
    d: int
    opt: int
    epsilon: Fraction
    ranked_chars: tuple[tuple[str, ...], ...]
    costs: tuple[tuple[int, ...], ...]

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(combinations(range(self.k), 2))

    @property
    def n_u(self) -> int:
        return self.k * self.d * self.k

    @property
    def n_z(self) -> int:
        return len(self.pairs) * self.d * self.k

    @property
    def n_vars(self) -> int:
        return self.n_u + self.n_z + 1

    def u_index(self, r: int, i: int, j: int) -> int:
        return (r * self.d + i) * self.k + j

    def z_index(self, p: int, i: int, j: int) -> int:
        return self.n_u + (p * self.d + i) * self.k + j

    @property
    def t_index(self) -> int:
        return self.n_vars - 1

    def constraint_count(self) -> int:
        """Closed form: 2k cost rows + kd simplex rows + 4*C(k,2)*d*k
        linearizations + C(k,2) dispersion rows."""
        npairs = len(self.pairs)
        return 2 * self.k + self.k * self.d + 4 * npairs * self.d * self.k + npairs

    def to_matrices(self):
        """Dense (c, A_ub, b_ub, A_eq, b_eq, bounds) for a minimizing solver."""
        k, d = self.k, self.d
        pairs = self.pairs
        n = self.n_vars
        slack = float(self.epsilon * self.opt)

        rows_ub = 2 * k + 4 * len(pairs) * d * k + len(pairs)
        a_ub = np.zeros((rows_ub, n))
        b_ub = np.zeros(rows_ub)
        row = 0
        for r in range(k):  # deviation window: 0 <= sum u*c <= eps*opt
            for i in range(d):
                for j in range(k):
                    a_ub[row, self.u_index(r, i, j)] = float(self.costs[i][j])
                    a_ub[row + 1, self.u_index(r, i, j)] = -float(self.costs[i][j])
            b_ub[row] = slack
            b_ub[row + 1] = 0.0  # lower half is vacuous but part of the model
            row += 2
        for p, (r, rr) in enumerate(pairs):
            for i in range(d):
                for j in range(k):
                    zi = self.z_index(p, i, j)
                    ur, urr = self.u_index(r, i, j), self.u_index(rr, i, j)
                    a_ub[row, zi], a_ub[row, ur], a_ub[row, urr] = 1, -1, -1
                    a_ub[row + 1, zi], a_ub[row + 1, ur], a_ub[row + 1, urr] = -1, -1, 1
                    a_ub[row + 2, zi], a_ub[row + 2, ur], a_ub[row + 2, urr] = -1, 1, -1
                    a_ub[row + 3, zi], a_ub[row + 3, ur], a_ub[row + 3, urr] = 1, 1, 1
                    b_ub[row + 3] = 2.0
                    row += 4
        for p in range(len(pairs)):  # 2t - sum z <= 0
            a_ub[row, self.t_index] = 2.0
            for i in range(d):
                for j in range(k):
                    a_ub[row, self.z_index(p, i, j)] = -1.0
            row += 1
        assert row == rows_ub

        a_eq = np.zeros((k * d, n))
        b_eq = np.ones(k * d)
        for r in range(k):
            for i in range(d):
                for j in range(k):
                    a_eq[r * d + i, self.u_index(r, i, j)] = 1.0

        c = np.zeros(n)
        c[self.t_index] = -1.0  # maximize t
        bounds = [(0.0, 1.0)] * (self.n_u + self.n_z) + [(0.0, float(d))]
        return c, a_ub, b_ub, a_eq, b_eq, bounds

    def dump(self) -> str:
        """Sparse triplet text: one `section row col value` line per nonzero,
        then `rhs_ub`/`rhs_eq`/`obj` entries. For debugging."""
        c, a_ub, b_ub, a_eq, b_eq, _ = self.to_matrices()
        out = [f"# vars={self.n_vars} ub_rows={len(b_ub)} eq_rows={len(b_eq)}"]
        for name, mat in (("ub", a_ub), ("eq", a_eq)):
            for r, col in zip(*np.nonzero(mat)):
                out.append(f"{name} {r} {col} {mat[r, col]:g}")
        out.extend(f"rhs_ub {r} {v:g}" for r, v in enumerate(b_ub))
        out.extend(f"rhs_eq {r} {v:g}" for r, v in enumerate(b_eq))
        out.extend(f"obj {i} {v:g}" for i, v in enumerate(c) if v)
        return "\n".join(out)


@dataclass(frozen=True)
class FractionalAssignment:
    """Per candidate r, a d-by-k row-stochastic matrix of relaxed u values."""

    matrices: tuple[np.ndarray, ...]

    def per_candidate(self, r: int) -> np.ndarray:
        return self.matrices[r]


def build_ilp(ctx: MedianContext, budget: Budget, k: int) -> IlpModel:
    """Rank the top-k characters per index and assemble the program."""
    if k < 2:
        raise ValidationError("k must be >= 2")
    if k > len(ctx.alphabet):
        raise ValidationError(
            f"k={k} exceeds the alphabet size {len(ctx.alphabet)}; "
            "per-index character ranks would be undefined"
        )
    alpha_pos = {a: j for j, a in enumerate(ctx.alphabet)}
    ranked: list[tuple[str, ...]] = []
    costs: list[tuple[int, ...]] = []
    for i in range(ctx.d):
        others = sorted(
            (a for a in ctx.alphabet if a != ctx.w[i]),
            key=lambda a: (-ctx.freq.count(i, a), alpha_pos[a]),
        )
        chars = (ctx.w[i],) + tuple(others[: k - 1])
        ranked.append(chars)
        costs.append(tuple(ctx.freq.count(i, ctx.w[i]) - ctx.freq.count(i, a) for a in chars))
    return IlpModel(
        k=k, d=ctx.d, opt=ctx.opt, epsilon=budget.epsilon,
        ranked_chars=tuple(ranked), costs=tuple(costs),
    )


def _solve_lp(c, a_ub, b_ub, a_eq, b_eq, bounds) -> np.ndarray:
    """Internal LP capability: dense model in, optimal primal out (1e-7 tol)."""
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=bounds,
                  method="highs")
    if res.status == 2:
        # The all-majority assignment (u_{ri1}=1, z=0, t=0) satisfies every
        # constraint, so infeasibility means the model was built wrong.
        raise InfeasibleError(f"LP reported infeasible: {res.message}")
    if res.status != 0:
        raise RuntimeError(f"LP solver did not converge: {res.message}")
    return res.x


def solve_lp_relaxation(model: IlpModel) -> tuple[FractionalAssignment, float]:
    """Optimal fractional assignment and lp_value = 2 * t-tilde.

    The all-majority assignment is always feasible, so failure is a solver
    problem, not a model one.
    """
    x = _solve_lp(*model.to_matrices())
    mats = []
    for r in range(model.k):
        m = np.empty((model.d, model.k))
        for i in range(model.d):
            for j in range(model.k):
                m[i, j] = x[model.u_index(r, i, j)]
        mats.append(m)
    return FractionalAssignment(matrices=tuple(mats)), 2.0 * float(x[model.t_index])


def _fractional_walk(mask: np.ndarray) -> list[tuple[int, int]]:
    """A cycle, or a maximal path, over the strictly fractional entries.

    Vertices are rows (d side) and columns (k side); entries are edges. Rows
    always carry 0 or >= 2 fractional entries (their sums are integral), so
    degree-1 vertices — and hence path endpoints — live on the column side,
    which has no sum to preserve.
    """
    d, k = mask.shape
    row_adj = [list(np.nonzero(mask[i])[0]) for i in range(d)]
    col_adj = [list(np.nonzero(mask[:, j])[0]) for j in range(k)]

    start = None  # prefer a degree-1 column: forces the maximal-path case
    for j in range(k):
        if len(col_adj[j]) == 1:
            start = ("c", j)
            break
    if start is None:
        for i in range(d):
            if row_adj[i]:
                start = ("r", i)
                break
    assert start is not None

    used: set[tuple[int, int]] = set()
    seen_at: dict[tuple[str, int], int] = {start: 0}
    walk: list[tuple[int, int]] = []
    vertex = start
    while True:
        side, idx = vertex
        nxt = None
        if side == "r":
            for j in row_adj[idx]:
                if (idx, j) not in used:
                    nxt = ("c", j)
                    edge = (idx, j)
                    break
        else:
            for i in col_adj[idx]:
                if (i, idx) not in used:
                    nxt = ("r", i)
                    edge = (i, idx)
                    break
        if nxt is None:
            return walk  # maximal path: stuck at a degree-exhausted vertex
        used.add(edge)
        walk.append(edge)
        if nxt in seen_at:
            return walk[seen_at[nxt]:]  # closed a cycle; drop the tail
        seen_at[nxt] = len(walk)
        vertex = nxt


def dependent_round(frac: Sequence[Sequence[float]] | np.ndarray, seed) -> np.ndarray:
    """Round a row-stochastic matrix to one 1 per row, preserving marginals.

    Repeatedly picks a cycle or maximal path among fractional entries, splits
    it into the two alternating matchings, and shifts mass one way or the
    other with the probabilities that keep every entry's expectation fixed.
    Each step lands at least one entry on 0 or 1. Row sums never move (paths
    end on the column side), so the output has exactly one 1 per row.
    """
    arr = np.array(frac, dtype=float)
    if arr.ndim != 2 or arr.shape[1] < 1:
        raise ValidationError("expected a 2-D matrix")
    sums = arr.sum(axis=1)
    if np.any(np.abs(sums - 1.0) > _ROW_TOL):
        raise ValidationError("matrix rows must each sum to 1")
    arr /= sums[:, None]
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    while True:
        arr[np.abs(arr) <= _SNAP] = 0.0
        arr[np.abs(arr - 1.0) <= _SNAP] = 1.0
        mask = (arr > 0.0) & (arr < 1.0)
        if not mask.any():
            break
        walk = _fractional_walk(mask)
        m1, m2 = walk[0::2], walk[1::2]
        up1 = min(1.0 - arr[e] for e in m1)
        down2 = min((arr[e] for e in m2), default=np.inf)
        alpha = min(up1, down2)
        down1 = min(arr[e] for e in m1)
        up2 = min((1.0 - arr[e] for e in m2), default=np.inf)
        beta = min(down1, up2)
        if rng.random() < beta / (alpha + beta):
            for e in m1:
                arr[e] += alpha
            for e in m2:
                arr[e] -= alpha
        else:
            for e in m1:
                arr[e] -= beta
            for e in m2:
                arr[e] += beta
    return arr.astype(np.int64)


def _decode(model: IlpModel, rounded: np.ndarray) -> Word:
    word = []
    for i in range(model.d):
        j = int(np.nonzero(rounded[i])[0][0])
        word.append(model.ranked_chars[i][j])
    return tuple(word)


def z_from_rounded(u_r: np.ndarray, u_rhat: np.ndarray) -> int:
    """Sum of the z values the linearization constraints force for integral u.

    For 0/1 picks the four inequalities pin z_{ij} = u_{rij} XOR u_{r̂ij}, so
    the sum is twice the number of indices where the two candidates pick
    different ranks (= twice their Hamming distance, ranks naming distinct
    characters).
    """
    return int(np.abs(u_r - u_rhat).sum())


@dataclass(frozen=True)
class LpReport:
    lp_value: float
    regime_plausible: bool
    trials: int
    kept: int
    chosen_trial: int


def lp_min_dispersion(
    ctx: MedianContext,
    budget: Budget,
    k: int,
    delta: Fraction,
    eta: Fraction,
    seed: int,
) -> tuple[CandidateSet, LpReport]:
    """Solve the relaxation once, round N = ceil(log2(1/eta)) times, keep the
    best trial whose members all cost at most (1+eps+delta)*opt (exact check).

    Raises InfeasibleError when no trial passes the cost filter; the caller
    (dispatcher) falls back to the sampler. The report says whether the
    guarantee's t* precondition was even plausible on this instance.
    """
    from .mindisp import _lp_plausible, tstar_upper_bound

    delta, eta = Fraction(delta), Fraction(eta)
    cfg = SampleConfig(k=k, delta=delta, eta=eta, seed=seed)  # validates ranges
    model = build_ilp(ctx, budget, k)
    frac, lp_value = solve_lp_relaxation(model)

    cap = (1 + budget.epsilon + delta) * ctx.opt  # exact rational threshold
    kept: list[tuple[int, list[Word], int]] = []
    for trial in range(cfg.trials):
        picks = [dependent_round(frac.matrices[r], seed=[seed, trial, r])
                 for r in range(k)]
        members = [_decode(model, u) for u in picks]
        if all(Fraction(median_cost(ctx, s)) <= cap for s in members):
            # min dispersion read off the recomputed z values (sum z = 2 * dist)
            val = min(z_from_rounded(a, b) for a, b in combinations(picks, 2)) // 2
            kept.append((trial, members, val))
    plausible = _lp_plausible(tstar_upper_bound(ctx, budget), delta, k, ctx.d)
    if not kept:
        raise InfeasibleError(
            f"none of {cfg.trials} rounding trials met the (1+eps+delta) cost cap"
        )
    best_trial, best_members, best_val = -1, None, -1
    for trial, members, val in kept:
        if val > best_val:
            best_trial, best_members, best_val = trial, members, val
    report = LpReport(
        lp_value=lp_value,
        regime_plausible=plausible,
        trials=cfg.trials,
        kept=len(kept),
        chosen_trial=best_trial,
    )
    return CandidateSet.from_members(ctx.freq, best_members), report
