"""Command-line entry point.

Exit codes: 0 success, 1 property violated, 2 usage or parse error,
3 capacity or budget exhausted.  Big integers are serialized as decimal
strings in JSON output.  XBIFIX_PRECISION_BITS sets the default working
precision for root finding.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import sys
from datetime import datetime, timezone

import click

from . import __version__
from .bounds import (
    asymptotic_probe,
    bilotta_size,
    bounds_report,
    target_ratio,
    upper_bound,
    variance_formula,
)
from .clique import build_graph, max_clique
from .construction import best_size, generate_direct
from .fibonacci import DEFAULT_PRECISION_BITS, fib, find_alpha
from .sim import SimConfig, run_sim
from .words import (
    CapacityError,
    CodeFormatError,
    NONEXPANDABLE_CAP,
    find_violation,
    format_code,
    is_nonexpandable,
    read_code,
    verify_code,
    write_code,
)

EXIT_VIOLATION = 1
EXIT_CAPACITY = 3


def _default_bits() -> int:
    return int(os.environ.get("XBIFIX_PRECISION_BITS", DEFAULT_PRECISION_BITS))


def _write_manifest(out_path: str, command: str, parameters: dict, seeds=None) -> None:
    with open(out_path, "rb") as fh:
        digest = hashlib.sha256(fh.read()).hexdigest()
    manifest = {
        "command": command,
        "parameters": parameters,
        "version": __version__,
        "seeds": seeds,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "outputs": {os.path.basename(out_path): {"sha256": digest}},
    }
    with open(out_path + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


@click.group()
@click.version_option(__version__)
def main():
    """Construct, verify, count and bound cross-bifix-free codes."""


@main.command()
@click.option("--n", type=int, required=True, help="word length")
@click.option("--k", type=int, required=True, help="leading zero-run length")
@click.option("--q", type=int, default=2, show_default=True, help="alphabet size")
@click.option("--out", type=click.Path(dir_okay=False), help="output file (with manifest)")
def gen(n, k, q, out):
    """Generate the zero-run code for (n, k, q)."""
    try:
        code = generate_direct(n, k, q)
    except CapacityError as exc:
        click.echo(f"capacity: {exc}", err=True)
        raise SystemExit(EXIT_CAPACITY)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if out:
        write_code(code, out)
        _write_manifest(out, "gen", {"n": n, "k": k, "q": q})
        click.echo(f"wrote {len(code)} words to {out}")
    else:
        click.echo(format_code(code), nl=False)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def best(n, q, as_json):
    """Best construction size over all k."""
    try:
        record = best_size(n, q)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if as_json:
        click.echo(json.dumps(record.to_json_dict()))
    else:
        k = "-" if record.best_k is None else record.best_k
        click.echo(f"S({n},{q}) = {record.size}  (k = {k})")


@main.command("fib")
@click.option("--k", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True)
def fib_cmd(k, q, n):
    """Weighted k-step Fibonacci value F_{k,q}(n)."""
    try:
        click.echo(fib(k, q, n))
    except ValueError as exc:
        raise click.UsageError(str(exc))


@main.command()
@click.option("--k", type=int, required=True)
@click.option("--q", type=int, required=True)
@click.option("--bits", type=int, default=None, help="working precision bits")
@click.option("--json", "as_json", is_flag=True)
def alpha(k, q, bits, as_json):
    """Dominant root alpha(k, q) of the growth polynomial."""
    bits = bits or _default_bits()
    try:
        est = find_alpha(k, q, bits)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    digits = max(int(bits * math.log10(2)) - 2, 6)
    import mpmath

    with mpmath.mp.workprec(bits + 16):
        if as_json:
            click.echo(
                json.dumps(
                    {
                        "k": k,
                        "q": q,
                        "precision_bits": bits,
                        "alpha": mpmath.nstr(est.alpha, digits),
                        "bracket": [
                            mpmath.nstr(est.lo, digits),
                            mpmath.nstr(est.hi, digits),
                        ],
                    }
                )
            )
        else:
            click.echo(mpmath.nstr(est.alpha, digits))


@main.command()
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--n-max", type=int, default=30, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.option("--markdown", is_flag=True)
@click.option(
    "--clique-upto",
    type=int,
    default=0,
    show_default=True,
    help="also compute exact optima up to this length",
)
def table(q, n_max, as_json, markdown, clique_upto):
    """Per-length size table: earlier construction, this construction,
    best k, and the variance upper bound."""
    rows = []
    for n in range(3, n_max + 1):
        if n == 3 and q != 2:
            continue
        rep = bounds_report(n, q)
        optimal = None
        if clique_upto and n <= clique_upto:
            optimal = max_clique(build_graph(n, q)).size
        rows.append(
            {
                "n": n,
                "bilotta": str(rep.bilotta) if rep.bilotta is not None else None,
                "size": str(rep.construction_size),
                "best_k": rep.best_k,
                "upper_bound_floor": str(rep.upper_bound.numerator // rep.upper_bound.denominator),
                "optimal": str(optimal) if optimal is not None else None,
            }
        )
    if as_json:
        click.echo(json.dumps({"q": q, "rows": rows}))
        return
    header = ["n", "B(n)", f"S(n,{q})", "k", "bound", "C(n,q)"]
    fmt_rows = [
        [
            str(r["n"]),
            r["bilotta"] or "-",
            r["size"],
            str(r["best_k"]) if r["best_k"] is not None else "-",
            r["upper_bound_floor"],
            r["optimal"] or "",
        ]
        for r in rows
    ]
    widths = [max(len(h), *(len(row[i]) for row in fmt_rows)) for i, h in enumerate(header)]
    if markdown:
        click.echo("| " + " | ".join(h.ljust(w) for h, w in zip(header, widths)) + " |")
        click.echo("|" + "|".join("-" * (w + 2) for w in widths) + "|")
        for row in fmt_rows:
            click.echo("| " + " | ".join(c.ljust(w) for c, w in zip(row, widths)) + " |")
    else:
        click.echo("  ".join(h.rjust(w) for h, w in zip(header, widths)))
        for row in fmt_rows:
            click.echo("  ".join(c.rjust(w) for c, w in zip(row, widths)))


@main.command()
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--k-min", type=int, default=4, show_default=True)
@click.option("--k-max", type=int, required=True)
@click.option("--c", type=float, default=None, help="scaling constant; default q/(q-1)")
@click.option("--json", "as_json", is_flag=True)
def probe(q, k_min, k_max, c, as_json):
    """Asymptotic ratio diagnostics along n(k) = ceil(c * alpha**k)."""
    try:
        rows = asymptotic_probe(q, range(k_min, k_max + 1), c=c)
    except CapacityError as exc:
        click.echo(f"capacity: {exc}", err=True)
        raise SystemExit(EXIT_CAPACITY)
    target = target_ratio(q)
    if as_json:
        click.echo(
            json.dumps(
                {
                    "q": q,
                    "target": target,
                    "rows": [
                        {"k": r.k, "n": r.n, "size": str(r.size), "ratio": r.ratio}
                        for r in rows
                    ],
                }
            )
        )
        return
    click.echo(f"target (q-1)/(q e) = {target:.6f}")
    for r in rows:
        click.echo(f"k={r.k:3d}  n={r.n:7d}  ratio={r.ratio:.6f}")


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--q", type=int, default=2, show_default=True)
@click.option("--budget", type=float, default=None, help="time budget in seconds")
@click.option("--long", "long_run", is_flag=True, help="allow lengths beyond the desk-scale cap")
@click.option("--witness-out", type=click.Path(dir_okay=False))
def clique(n, q, budget, long_run, witness_out):
    """Exact maximum cross-bifix-free code size by clique search."""
    if q == 2 and n > 14 and not long_run:
        raise click.UsageError(
            f"n={n} exceeds the desk-scale range (14); pass --long to run anyway "
            "(runtime may be hours)"
        )
    try:
        graph = build_graph(n, q)
    except CapacityError as exc:
        click.echo(f"capacity: {exc}", err=True)
        raise SystemExit(EXIT_CAPACITY)
    result = max_clique(graph, time_budget=budget)
    status = "optimal" if result.optimal else "lower bound only (budget exhausted)"
    click.echo(
        f"C({n},{q}) {'=' if result.optimal else '>='} {result.size}  [{status}; "
        f"{result.nodes_explored} nodes, {result.wall_time:.2f}s]"
    )
    if witness_out:
        write_code(result.witness, witness_out)
        _write_manifest(
            witness_out,
            "clique",
            {"n": n, "q": q, "budget": budget, "optimal": result.optimal},
        )
    if not result.optimal:
        raise SystemExit(EXIT_CAPACITY)


@main.command()
@click.option("--code", "code_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--trials", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-stream", type=int, default=1_000_000, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def sim(code_file, trials, seed, max_stream, as_json):
    """Simulate time-to-first-match of the code in a uniform stream."""
    try:
        code = read_code(code_file)
    except CodeFormatError as exc:
        raise click.UsageError(str(exc))
    try:
        cfg = SimConfig(code=code, trials=trials, seed=seed, max_stream=max_stream)
    except ValueError as exc:
        click.echo(f"invalid code: {exc}", err=True)
        raise SystemExit(EXIT_VIOLATION)
    stats = run_sim(cfg)
    predicted = variance_formula(code.n, code.q, len(code))
    if as_json:
        click.echo(
            json.dumps(
                {
                    "n": code.n,
                    "q": code.q,
                    "M": len(code),
                    "trials": trials,
                    "seed": seed,
                    "samples": stats.samples,
                    "mean": stats.mean,
                    "variance": stats.variance,
                    "min": stats.min,
                    "max": stats.max,
                    "truncated": stats.truncated,
                    "predicted_variance": predicted,
                }
            )
        )
    else:
        click.echo(
            f"samples={stats.samples} mean={stats.mean:.3f} "
            f"variance={stats.variance:.3f} (predicted {predicted:.3f}) "
            f"min={stats.min} max={stats.max} truncated={stats.truncated}"
        )


@main.command()
@click.argument("code_file", type=click.Path(exists=True, dir_okay=False))
def verify(code_file):
    """Verify a code file: cross-bifix-free and nonexpandable."""
    try:
        code = read_code(code_file)
    except CodeFormatError as exc:
        raise click.UsageError(str(exc))
    if not verify_code(code):
        w1, w2, seg = find_violation(code)
        seg_str = "".join(str(s) for s in seg)
        click.echo(
            f"cross-bifix-free: no (prefix {seg_str!r} of {w1.to_digits()} "
            f"is a suffix of {w2.to_digits()})"
        )
        raise SystemExit(EXIT_VIOLATION)
    line = "cross-bifix-free: yes"
    if code.q**code.n <= NONEXPANDABLE_CAP:
        verdict = "yes" if is_nonexpandable(code) else "no"
        line += f"; nonexpandable: {verdict}"
    else:
        line += "; nonexpandable: not checked (instance too large)"
    click.echo(line)


if __name__ == "__main__":
    main()
