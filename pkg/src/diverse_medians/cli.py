"""Command-line front end: dataset ingestion, strategy dispatch, JSON output.

One run produces one JSON document (schema "diverse-medians/1") on standard
output, or at --output. Diagnostics go to standard error only. Identical
(config, seed, input) triples produce byte-identical documents; wall time is
therefore only embedded when --timing asks for it.

Exit codes: 0 success, 2 validation error, 3 enumeration/state cap exceeded,
4 infeasible or solver nonconvergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    Budget,
    CandidateSet,
    CapExceeded,
    Dataset,
    InfeasibleError,
    MedianContext,
    ValidationError,
    Word,
    build_context,
    median_cost,
    word_str,
)
from .diameter import approx_diameter_pair, exact_diameter_pair
from .lpround import lp_min_dispersion
from .mindisp import (
    APPROX_GUARANTEES,
    EXACT_GUARANTEES,
    bound_certificate,
    greedy_dispersion,
    min_disp_dp_approx,
    min_disp_dp_exact,
    min_dispersion_dispatch_approx,
    min_dispersion_dispatch_exact,
    plotkin_bound,
    sample_approx_medians,
    sample_exact_medians,
    SampleConfig,
)
from .oracle import (
    DEFAULT_LIMITS,
    EnumerationLimits,
    brute_diameter,
    brute_max_code_size,
    brute_mindp_k,
    brute_sumdp_k,
    enumerate_approx_medians,
    enumerate_exact_medians,
)
from .sumdisp import (
    DISPATCH_GUARANTEES,
    sum_dispersion_dispatch,
    sum_dispersion_exact_k,
    sum_dispersion_small_dstar,
)

SCHEMA = "diverse-medians/1"

OBJECTIVES = ("median", "diameter", "sum-dispersion", "min-dispersion", "bound", "oracle")
STRATEGIES = ("auto", "dp", "greedy", "sample", "lp", "exact-construction")
FORMATS = ("lines", "fasta", "csv")
ORACLE_OPS = ("exact-medians", "approx-medians", "diameter", "sumdp", "mindp",
              "max-code-size")

# Which strategies make sense per objective; anything else is a mismatch.
ALLOWED_STRATEGIES = {
    "median": ("auto",),
    "diameter": ("auto",),
    "sum-dispersion": ("auto", "exact-construction", "greedy"),
    "min-dispersion": ("auto", "dp", "greedy", "sample", "lp"),
    "bound": ("auto",),
    "oracle": ("auto",),
}


@dataclass(frozen=True)
class RunConfig:
    input: str | None
    format: str
    objective: str
    epsilon: Fraction
    k: int
    delta: Fraction
    eta: Fraction
    strategy: str
    seed: int
    alphabet: tuple[str, ...] | None
    output: str | None
    timing: bool
    t: int | None
    sizes: tuple[int, ...] | None
    oracle_op: str | None
    limits: EnumerationLimits
    max_states: int


def parse_rational(text: str) -> Fraction:
    """Exact rational from "p/q" or a decimal literal ("0.25" -> 1/4)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational number: {text!r}") from exc


def _parse_alphabet(text: str) -> tuple[str, ...]:
    """Comma-separated symbol list, or one symbol per character."""
    if "," in text:
        symbols = tuple(s for s in (c.strip() for c in text.split(",")) if s)
    else:
        symbols = tuple(text)
    if not symbols:
        raise ValidationError("empty alphabet")
    return symbols


# ---------------------------------------------------------------------------
# ingestion


def _ingest_lines(text: str) -> list[tuple[int, str]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if line:
            rows.append((lineno, line))
    return rows


def _ingest_fasta(text: str) -> list[tuple[str, str]]:
    records: list[tuple[str, list[str]]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            records.append((line[1:].strip() or f"record {len(records) + 1}", []))
        else:
            if not records:
                raise ValidationError("sequence data before the first '>' header")
            records[-1][1].append(line)
    return [(name, "".join(chunks)) for name, chunks in records]


def _ingest_csv(text: str, alphabet: tuple[str, ...] | None) -> list[list[str]]:
    rows = [[cell.strip() for cell in row] for row in csv.reader(text.splitlines())
            if any(cell.strip() for cell in row)]
    if not rows:
        return rows
    # Header heuristic: drop row 1 when it can't be data — either a cell falls
    # outside the explicit alphabet while later rows don't, or (inferred
    # alphabet) some first-row cell never appears again anywhere.
    if len(rows) > 1:
        first, rest = rows[0], rows[1:]
        if alphabet is not None:
            allowed = set(alphabet)
            if any(c not in allowed for c in first) and all(
                c in allowed for row in rest for c in row
            ):
                rows = rest
        else:
            seen_later = {c for row in rest for c in row}
            if any(c not in seen_later for c in first):
                rows = rest
    return rows


def ingest(path: str, fmt: str, alphabet: tuple[str, ...] | None = None) -> Dataset:
    """Read a dataset file. Ragged inputs are rejected naming the offender."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc

    if fmt == "lines":
        rows = _ingest_lines(text)
        if not rows:
            raise ValidationError(f"{path}: no data lines")
        width = len(rows[0][1])
        for lineno, line in rows:
            if len(line) != width:
                raise ValidationError(
                    f"{path}: line {lineno} has length {len(line)}, expected {width}"
                )
        strings: Sequence = [line for _, line in rows]
    elif fmt == "fasta":
        records = _ingest_fasta(text)
        if not records:
            raise ValidationError(f"{path}: no FASTA records")
        width = len(records[0][1])
        for name, seq in records:
            if not seq:
                raise ValidationError(f"{path}: record {name!r} is empty")
            if len(seq) != width:
                raise ValidationError(
                    f"{path}: record {name!r} has length {len(seq)}, expected {width}"
                )
        strings = [seq for _, seq in records]
    elif fmt == "csv":
        rows2 = _ingest_csv(text, alphabet)
        if not rows2:
            raise ValidationError(f"{path}: no data rows")
        width = len(rows2[0])
        for idx, row in enumerate(rows2, start=1):
            if len(row) != width:
                raise ValidationError(
                    f"{path}: row {idx} has {len(row)} cells, expected {width}"
                )
        strings = [tuple(row) for row in rows2]
    else:
        raise ValidationError(f"unknown format {fmt!r}")

    return Dataset.from_strings(strings, alphabet=alphabet)


# ---------------------------------------------------------------------------
# document assembly


def _render_word(word: Word, joined: bool):
    return word_str(word) if joined else list(word)


def _fraction_str(x: Fraction) -> str:
    return str(Fraction(x))


def _revalidate(ctx: MedianContext, members: Sequence[Word], cap: Fraction) -> list[int]:
    """Recompute every member's cost from scratch and enforce its cost class."""
    costs = []
    for s in members:
        c = median_cost(ctx, s)
        if Fraction(c) > cap:
            raise RuntimeError(
                f"internal error: emitted string costs {c}, above its declared cap {cap}"
            )
        costs.append(c)
    return costs


def _cost_cap(tag: str, ctx: MedianContext, budget: Budget, delta: Fraction) -> tuple[Fraction, str]:
    """(exact cap, human label) for the cost class a strategy tag promises."""
    one_plus_eps = (1 + budget.epsilon) * ctx.opt
    caps = {
        "exact": (Fraction(ctx.opt), "cost == opt"),
        "approx": (one_plus_eps, "cost <= (1+eps)*opt"),
        "mix": ((1 + 2 * budget.epsilon) * ctx.opt, "cost <= (1+2*eps)*opt"),
        "lp": ((1 + budget.epsilon + delta) * ctx.opt, "cost <= (1+eps+delta)*opt"),
    }
    return caps[tag]


def run(config: RunConfig) -> dict:
    """Execute one configured run and return the result document as a dict."""
    if config.objective not in OBJECTIVES:
        raise ValidationError(f"unknown objective {config.objective!r}")
    if config.strategy not in ALLOWED_STRATEGIES[config.objective]:
        raise ValidationError(
            f"strategy {config.strategy!r} does not apply to objective "
            f"{config.objective!r}; allowed: {', '.join(ALLOWED_STRATEGIES[config.objective])}"
        )

    doc: dict = {
        "schema": SCHEMA,
        "config": {
            "input": config.input,
            "format": config.format,
            "objective": config.objective,
            "epsilon": _fraction_str(config.epsilon),
            "k": config.k,
            "delta": _fraction_str(config.delta),
            "eta": _fraction_str(config.eta),
            "strategy": config.strategy,
            "seed": config.seed,
            "alphabet": list(config.alphabet) if config.alphabet else None,
            "t": config.t,
            "sizes": list(config.sizes) if config.sizes else None,
            "oracle_op": config.oracle_op,
        },
    }

    # bound with explicit sizes, and the max-code-size oracle, need no dataset
    if config.objective == "bound" and config.sizes is not None:
        if config.t is None:
            raise ValidationError("objective=bound requires --t")
        b = sum(Fraction(g - 1, g) for g in config.sizes)
        doc["certificates"] = {
            "alphabet_sizes": list(config.sizes),
            "plotkin_sum": _fraction_str(b),
            "t": config.t,
            "max_code_size": plotkin_bound(config.sizes, config.t),
        }
        doc["objective_value"] = doc["certificates"]["max_code_size"]
        doc["guarantee"] = "any code with pairwise distance >= t has at most this many words (null = bound inapplicable)"
        return doc
    if config.objective == "oracle" and config.oracle_op == "max-code-size":
        if config.sizes is None or config.t is None:
            raise ValidationError("oracle max-code-size requires --sizes and --t")
        value = brute_max_code_size(config.sizes, config.t, config.limits)
        doc["objective_value"] = value
        doc["guarantee"] = "exhaustive search; exact maximum code size"
        return doc

    if config.input is None:
        raise ValidationError(f"objective={config.objective} requires --input")
    dataset = ingest(config.input, config.format, config.alphabet)
    ctx = build_context(dataset)
    budget = Budget.make(config.epsilon, ctx.opt)
    joined = all(len(a) == 1 for a in dataset.alphabet)

    doc["dataset"] = {
        "n": dataset.n,
        "d": dataset.d,
        "alphabet": list(dataset.alphabet),
        "alphabet_inferred": dataset.alphabet_inferred,
    }
    doc["opt"] = ctx.opt
    doc["w"] = _render_word(ctx.w, joined)

    if config.objective == "median":
        doc["strings"] = [_render_word(ctx.w, joined)]
        doc["costs"] = _revalidate(ctx, [ctx.w], Fraction(ctx.opt))
        doc["objective_value"] = ctx.opt
        doc["guarantee"] = "exact optimum: per-index majority minimizes the distance sum"
        return doc

    if config.objective == "diameter":
        if config.epsilon == 0:
            res = exact_diameter_pair(ctx, ctx.freq)
            cap, cls = _cost_cap("exact", ctx, budget, config.delta)
            doc["guarantee"] = f"exact diameter over exact medians; {cls}"
        else:
            res = approx_diameter_pair(ctx, budget)
            cap, cls = _cost_cap("approx", ctx, budget, config.delta)
            doc["guarantee"] = (
                f"exact diameter over (1+eps)-approximate medians "
                f"(branch: {res.branch}); {cls}"
            )
        doc["strings"] = [_render_word(s, joined) for s in res.pair]
        doc["costs"] = _revalidate(ctx, list(res.pair), cap)
        doc["dstar"] = res.diameter
        doc["objective_value"] = res.diameter
        doc["branch"] = res.branch
        return doc

    if config.objective == "sum-dispersion":
        if config.strategy == "exact-construction":
            cands = sum_dispersion_exact_k(ctx, ctx.freq, config.k)
            tag = "exact-construction"
            guarantee = "exact optimum sumDp over exact medians"
            cap, cls = _cost_cap("exact", ctx, budget, config.delta)
        elif config.strategy == "greedy":
            pool = enumerate_approx_medians(ctx, budget, config.limits)
            cands = sum_dispersion_small_dstar(ctx, budget, config.k, pool)
            tag = "greedy"
            guarantee = "farthest-pair + max-gain insertion; value >= optimum / 2"
            cap, cls = _cost_cap("approx", ctx, budget, config.delta)
        else:
            cands, tag = sum_dispersion_dispatch(
                ctx, budget, config.k, config.delta, limits=config.limits
            )
            guarantee = DISPATCH_GUARANTEES[tag]
            cap, cls = _cost_cap("approx", ctx, budget, config.delta)
        doc["strings"] = [_render_word(s, joined) for s in cands.members]
        doc["costs"] = _revalidate(ctx, cands.members, cap)
        doc["objective_value"] = cands.sum_dispersion()
        doc["strategy_tag"] = tag
        doc["guarantee"] = f"{guarantee}; {cls}"
        return doc

    if config.objective == "min-dispersion":
        exact_regime = config.epsilon == 0
        lp_report = None
        if config.strategy == "auto":
            if exact_regime:
                cands, tag, guarantee = min_dispersion_dispatch_exact(
                    ctx.freq, config.k, config.delta, config.eta, config.seed,
                    max_states=config.max_states, limits=config.limits,
                )
            else:
                cands, tag, guarantee = min_dispersion_dispatch_approx(
                    ctx, budget, config.k, config.delta, config.eta, config.seed,
                    lp_enabled=False, max_states=config.max_states,
                    limits=config.limits,
                )
        elif config.strategy == "dp":
            if exact_regime:
                _, cands = min_disp_dp_exact(ctx.freq, config.k,
                                             max_states=config.max_states)
                tag, guarantee = "dp", EXACT_GUARANTEES["dp"]
            else:
                _, cands = min_disp_dp_approx(ctx, budget, config.k,
                                              max_states=config.max_states)
                tag, guarantee = "dp", APPROX_GUARANTEES["dp"]
        elif config.strategy == "greedy":
            if exact_regime:
                pool = enumerate_exact_medians(ctx.freq, config.limits)
                tag, guarantee = "greedy", EXACT_GUARANTEES["greedy"]
            else:
                pool = enumerate_approx_medians(ctx, budget, config.limits)
                tag, guarantee = "greedy", APPROX_GUARANTEES["greedy"]
            cands = greedy_dispersion(pool, config.k, ctx.freq)
        elif config.strategy == "sample":
            cfg = SampleConfig(k=config.k, delta=config.delta, eta=config.eta,
                               seed=config.seed)
            if exact_regime:
                cands, _ = sample_exact_medians(ctx.freq, cfg)
                tag, guarantee = "sample", EXACT_GUARANTEES["sample"]
            else:
                cands, _ = sample_approx_medians(ctx, budget, cfg)
                tag, guarantee = "sample", APPROX_GUARANTEES["sample"]
        else:  # lp
            cands, lp_report = lp_min_dispersion(
                ctx, budget, config.k, config.delta, config.eta, config.seed
            )
            tag, guarantee = "lpround", APPROX_GUARANTEES["lpround"]

        if exact_regime and tag in ("dp", "greedy", "sample"):
            cap, cls = _cost_cap("exact", ctx, budget, config.delta)
        elif tag in ("sample", "sample_fallback"):
            cap, cls = _cost_cap("mix", ctx, budget, config.delta)
        elif tag == "lpround":
            cap, cls = _cost_cap("lp", ctx, budget, config.delta)
        else:
            cap, cls = _cost_cap("approx", ctx, budget, config.delta)
        doc["strings"] = [_render_word(s, joined) for s in cands.members]
        doc["costs"] = _revalidate(ctx, cands.members, cap)
        doc["objective_value"] = cands.min_dispersion()
        doc["strategy_tag"] = tag
        doc["guarantee"] = f"{guarantee}; {cls}"
        cert = bound_certificate(ctx, budget, t=cands.min_dispersion())
        doc["certificates"] = {
            "alphabet_sizes": list(cert.alphabet_sizes),
            "plotkin_sum": _fraction_str(cert.plotkin_sum),
            "t": cert.t,
            "max_code_size": cert.max_code_size,
            "tstar_upper": _fraction_str(cert.tstar_upper),
        }
        if lp_report is not None:
            doc["lp_report"] = {
                "lp_value": lp_report.lp_value,
                "regime_plausible": lp_report.regime_plausible,
                "trials": lp_report.trials,
                "kept": lp_report.kept,
                "chosen_trial": lp_report.chosen_trial,
            }
        return doc

    if config.objective == "bound":
        if config.t is None:
            raise ValidationError("objective=bound requires --t")
        cert = bound_certificate(ctx, budget, config.t)
        doc["certificates"] = {
            "alphabet_sizes": list(cert.alphabet_sizes),
            "plotkin_sum": _fraction_str(cert.plotkin_sum),
            "t": cert.t,
            "max_code_size": cert.max_code_size,
            "tstar_upper": _fraction_str(cert.tstar_upper),
        }
        doc["objective_value"] = cert.max_code_size
        doc["guarantee"] = "code-size cap at pairwise distance >= t (null = bound inapplicable); tstar_upper caps achievable minDp"
        return doc

    # oracle (max-code-size handled above)
    if config.oracle_op is None:
        raise ValidationError("objective=oracle requires --oracle-op")
    if config.oracle_op not in ORACLE_OPS:
        raise ValidationError(f"unknown oracle op {config.oracle_op!r}")
    if config.oracle_op == "exact-medians":
        pool = enumerate_exact_medians(ctx.freq, config.limits)
        doc["strings"] = [_render_word(s, joined) for s in pool]
        doc["objective_value"] = len(pool)
    elif config.oracle_op == "approx-medians":
        pool = enumerate_approx_medians(ctx, budget, config.limits)
        doc["strings"] = [_render_word(s, joined) for s in pool]
        doc["objective_value"] = len(pool)
    else:
        pool = enumerate_approx_medians(ctx, budget, config.limits)
        doc["pool_size"] = len(pool)
        if config.oracle_op == "diameter":
            doc["objective_value"] = brute_diameter(pool, config.limits)
        elif config.oracle_op == "sumdp":
            doc["objective_value"] = brute_sumdp_k(pool, config.k, config.limits)
        else:
            doc["objective_value"] = brute_mindp_k(pool, config.k, config.limits)
    doc["guarantee"] = "exhaustive search; exact value"
    return doc


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="diverse-medians",
        description="Hamming medians and diverse near-median string sets.",
    )
    p.add_argument("--input", "-i", help="dataset file")
    p.add_argument("--format", choices=FORMATS, default="lines",
                   help="input format (default: lines)")
    p.add_argument("--objective", required=True, choices=OBJECTIVES)
    p.add_argument("--epsilon", default="0", metavar="P/Q",
                   help="approximation budget, rational or decimal (default 0)")
    p.add_argument("--k", type=int, default=2, help="solution set size (default 2)")
    p.add_argument("--delta", default="1/4", metavar="P/Q",
                   help="dispersion slack parameter (default 1/4)")
    p.add_argument("--eta", default="1/8", metavar="P/Q",
                   help="failure probability for sampled strategies (default 1/8)")
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--seed", type=int, default=0, help="64-bit RNG seed (default 0)")
    p.add_argument("--alphabet",
                   help="explicit symbols: one per character, or comma-separated")
    p.add_argument("--output", "-o", help="write the document here instead of stdout")
    p.add_argument("--timing", action="store_true",
                   help="embed wall time in the document (breaks byte-identity)")
    p.add_argument("--t", type=int, help="distance threshold for bound/oracle runs")
    p.add_argument("--sizes", metavar="G1,G2,...",
                   help="per-index alphabet sizes for bound/max-code-size runs")
    p.add_argument("--max-candidates", type=int, default=DEFAULT_LIMITS.max_candidates,
                   help="enumeration cap on candidate pools")
    p.add_argument("--max-tuples", type=int, default=DEFAULT_LIMITS.max_tuples,
                   help="cap on brute-force tuple combinations")
    p.add_argument("--max-states", type=int, default=DEFAULT_LIMITS.max_states,
                   help="cap on DP state space")
    p.add_argument("--oracle-op", choices=ORACLE_OPS,
                   help="which brute-force computation to run (objective=oracle)")
    return p


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    sizes = None
    if args.sizes is not None:
        try:
            sizes = tuple(int(x) for x in args.sizes.split(",") if x.strip())
        except ValueError as exc:
            raise ValidationError(f"bad --sizes: {args.sizes!r}") from exc
        if not sizes:
            raise ValidationError("empty --sizes")
    if not -(2 ** 63) <= args.seed < 2 ** 64:
        raise ValidationError("seed does not fit in 64 bits")
    if args.k < 1:
        raise ValidationError("k must be >= 1")
    limits = EnumerationLimits(
        max_candidates=args.max_candidates,
        max_tuples=args.max_tuples,
        max_states=args.max_states,
    )
    return RunConfig(
        input=args.input,
        format=args.format,
        objective=args.objective,
        epsilon=parse_rational(args.epsilon),
        k=args.k,
        delta=parse_rational(args.delta),
        eta=parse_rational(args.eta),
        strategy=args.strategy,
        seed=args.seed,
        alphabet=_parse_alphabet(args.alphabet) if args.alphabet else None,
        output=args.output,
        timing=args.timing,
        t=args.t,
        sizes=sizes,
        oracle_op=args.oracle_op,
        limits=limits,
        max_states=args.max_states,
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        config = _config_from_args(args)
        doc = run(config)
    except ValidationError as exc:
        print(f"diverse-medians: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"diverse-medians: {exc}", file=sys.stderr)
        print("hint: raise --max-candidates/--max-tuples/--max-states, or pick "
              "--strategy sample", file=sys.stderr)
        return 3
    except (InfeasibleError, RuntimeError) as exc:
        print(f"diverse-medians: {exc}", file=sys.stderr)
        return 4
    elapsed = time.perf_counter() - started
    if config.timing:
        doc["wall_time_s"] = round(elapsed, 6)
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"diverse-medians: {config.objective} done in {elapsed:.3f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
