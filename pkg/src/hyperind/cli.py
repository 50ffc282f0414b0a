"""Command-line entry point: ``hyperind <command> ...``.

Exit codes: 0 ok, 1 assertion failure, 2 usage, 3 I/O or parse error,
4 enumeration budget exceeded.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import sys
from pathlib import Path

import click

from hyperind import bounds, generators, oracle, shearer
from hyperind._io import atomic_write_text
from hyperind.hypercore import (
    HgParseError,
    Hypergraph,
    find_triangles,
    format_hg,
    has_independent_neighborhoods,
    induced,
    intersection_profile,
    is_linear,
    max_r_degree,
    read_hg,
)

EXIT_ASSERTION, EXIT_USAGE, EXIT_IO, EXIT_BUDGET = 1, 2, 3, 4

seed_option = click.option(
    "--seed", type=click.IntRange(0, 2**64 - 1), default=0, envvar="HYPERIND_SEED", show_default=True,
    help="PRNG seed (env HYPERIND_SEED).",
)
out_option = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
                          help="Write to this file instead of stdout.")


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    raise click.exceptions.Exit(code)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except HgParseError as exc:
            _fail(EXIT_IO, f"parse error: {exc}")
        except OSError as exc:
            _fail(EXIT_IO, str(exc))
        except oracle.BudgetExceeded as exc:
            _fail(EXIT_BUDGET, f"budget exceeded: {exc}")
        except ValueError as exc:
            _fail(EXIT_USAGE, str(exc))

    return wrapper


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def emit(text: str, out: Path | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        atomic_write_text(out, text)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _fmt(v) for k, v in row.items()})
    return buf.getvalue()


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return ";".join(map(str, v))
    return v


def _emit_rows(rows: list[dict], fmt: str, out: Path | None) -> None:
    emit(rows_to_csv(rows) if fmt == "csv" else dumps(rows if len(rows) != 1 else rows[0]), out)


def _summary(h: Hypergraph) -> dict:
    return {"uniformity": h.uniformity, "n": h.n, "m": h.m, "max_r_degree": max_r_degree(h)}


@click.group()
def main():
    """Independent sets in uniform hypergraphs with bounded r-degree."""


# -- gen -------------------------------------------------------------------


@main.group()
def gen():
    """Generate an instance in .hg format."""


def _write_instance(h: Hypergraph, out: Path | None) -> None:
    summary = _summary(h)
    if out is None:
        click.echo(format_hg(h), nl=False)
        click.echo(json.dumps(summary), err=True)
    else:
        atomic_write_text(out, format_hg(h))
        click.echo(json.dumps({**summary, "path": str(out)}))


@gen.command("steiner")
@click.option("--n", type=int, default=7, show_default=True)
@click.option("--r", type=int, default=2, show_default=True)
@click.option("--fixture", type=click.Choice(generators.FIXTURES), default=None,
              help="Emit a bundled Steiner system instead of generating one.")
@click.option("--max-failures", type=int, default=None, help="Consecutive rejections before stopping (default 50n).")
@seed_option
@out_option
@handle_errors
def gen_steiner(n, r, fixture, max_failures, seed, out):
    """Random greedy partial Steiner (n, r+1, r)-system."""
    h = generators.load_fixture(fixture) if fixture else generators.gen_partial_steiner(n, r, seed, max_failures)
    _write_instance(h, out)


@gen.command("blowup")
@click.option("--base", type=click.Path(dir_okay=False, path_type=Path), required=True)
@click.option("--d", type=int, required=True)
@out_option
@handle_errors
def gen_blowup(base, d, out):
    """Blow every vertex of a partial Steiner system up into d vertices."""
    _write_instance(generators.gen_blowup(generators.BlowupSpec(read_hg(base), d)), out)


@gen.command("random")
@click.option("--n", type=int, required=True)
@click.option("--u", "uniformity", type=int, required=True)
@click.option("--p", type=float, required=True)
@seed_option
@out_option
@handle_errors
def gen_random(n, uniformity, p, seed, out):
    """Binomial random uniform hypergraph."""
    _write_instance(generators.gen_random(n, uniformity, p, seed), out)


@gen.command("star")
@click.option("--r", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--l", type=int, default=0, show_default=True)
@out_option
@handle_errors
def gen_star(r, k, l, out):
    """Star gadget: centre 0 with k disjoint r-sets and l isolated vertices."""
    _write_instance(generators.gen_star_gadget(r, k, l)[0], out)


@gen.command("t-r")
@click.option("--r", type=int, required=True)
@out_option
@handle_errors
def gen_t_r(r, out):
    """The forbidden r-graph T_r."""
    _write_instance(generators.gen_t_r(r), out)


# -- stats / clean / alpha -------------------------------------------------


def stats_report(h: Hypergraph) -> dict:
    return {
        **_summary(h),
        "linear": is_linear(h),
        "triangles": len(find_triangles(h)),
        "intersection_profile": intersection_profile(h),
        "independent_neighborhoods": has_independent_neighborhoods(h),
    }


@main.command()
@click.argument("file", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@out_option
@handle_errors
def stats(file, fmt, out):
    """Structural statistics of an instance."""
    report = stats_report(read_hg(file))
    if fmt == "csv":
        profile = report.pop("intersection_profile")
        report.update({f"pairs_meeting_in_{i}": c for i, c in profile.items()})
    _emit_rows([report], fmt, out)


@main.command()
@click.argument("file", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--p", type=float, default=None, help="Sampling probability (default: the proof's choice).")
@click.option("--hg-out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Also write the cleaned subgraph H[Y] here.")
@seed_option
@out_option
@handle_errors
def clean(file, p, hg_out, seed, out):
    """Random subset followed by cleanup to a linear triangle-free subgraph."""
    h = read_hg(file)
    if p is None:
        p = shearer.params_for(h, seed).p
    report = shearer.cleanup(h, shearer.random_subset(h, p, seed))
    sub, labels = induced(h, report.kept)
    payload = {
        "p": p,
        "seed": seed,
        **report.to_dict(),
        "kept": list(report.kept),
        "linear": is_linear(sub),
        "triangle_free": not find_triangles(sub),
    }
    if hg_out is not None:
        atomic_write_text(hg_out, format_hg(sub))
    emit(dumps(payload), out)


@main.command()
@click.argument("file", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--mode", type=click.Choice(["exact", "greedy", "pipeline"]), default="exact", show_default=True)
@click.option("--restarts", type=click.IntRange(1), default=20, show_default=True)
@click.option("--p", type=float, default=None, help="Pipeline sampling probability override.")
@click.option("--b", type=float, default=None, help="Pipeline weight cap override.")
@click.option("--max-vertices", type=click.IntRange(1), default=26, show_default=True,
              help="Exact solver vertex limit.")
@click.option("--max-sets", type=click.IntRange(1), default=2**20, show_default=True,
              help="Pipeline: enumeration cap for exact expectations before falling back to Monte Carlo.")
@seed_option
@out_option
@handle_errors
def alpha(file, mode, restarts, p, b, max_vertices, max_sets, seed, out):
    """Independence number: exact, greedy, or the full sampling pipeline."""
    h = read_hg(file)
    budget = oracle.EnumerationBudget(max_vertices, max_sets)
    if mode == "exact":
        payload = oracle.alpha_exact(h, budget).to_dict()
    elif mode == "greedy":
        payload = shearer.greedy_alpha(h, seed, restarts).to_dict()
    else:
        params = shearer.params_for(h, seed, p=p, b=b)
        limit = min(max_vertices, shearer.EXACT_LIMIT)
        payload = shearer.run_pipeline(
            h, params, restarts=restarts, exact_limit=limit,
            budget=oracle.EnumerationBudget(limit, max_sets),
        ).to_report()
    emit(dumps(payload), out)


# -- verify ----------------------------------------------------------------


def _finish(target: str, checks: list[dict], out: Path | None) -> None:
    failing = [c for c in checks if not c["passed"]]
    payload = {"target": target, "passed": not failing, "checks": checks,
               "first_failure": failing[0]["name"] if failing else None}
    emit(dumps(payload), out)
    if failing:
        c = failing[0]
        click.echo(f"FAIL {c['name']}: value={c['value']!r} bound={c['bound']!r}", err=True)
        raise click.exceptions.Exit(EXIT_ASSERTION)


def _check(name: str, value, bound, passed: bool) -> dict:
    return {"name": name, "value": value, "bound": bound, "passed": bool(passed)}


@main.group()
def verify():
    """Run an invariant suite; exit 1 on the first violated tolerance."""


@verify.command("lemma3")
@click.option("--k", type=click.IntRange(0), required=True)
@click.option("--q", type=float, required=True)
@click.option("--b", type=float, required=True)
@click.option("--tol", type=float, default=0.02, show_default=True)
@out_option
@handle_errors
def verify_lemma3(k, q, b, tol, out):
    """Truncated binomial mean against its limit min(qk, b)."""
    s, limit = bounds.lemma3_sum(k, q, b)
    rel = abs(s - limit) / limit
    _finish("lemma3", [_check(f"relative_gap(k={k},q={q},b={b})", rel, tol, rel <= tol)], out)


@verify.command("weights")
@click.option("--r", "rs", type=int, multiple=True, default=(2,), show_default=True)
@click.option("--kmax", type=click.IntRange(0), default=4, show_default=True)
@click.option("--lmax", type=click.IntRange(0), default=3, show_default=True)
@click.option("--b", "bs", type=float, multiple=True, default=(1.0, 2.0, 4.0, 8.0), show_default=True)
@click.option("--tol", type=float, default=1e-12, show_default=True)
@out_option
@handle_errors
def verify_weights(rs, kmax, lmax, bs, tol, out):
    """Closed-form conditional weight against gadget enumeration."""
    checks = []
    for r in rs:
        for k in range(kmax + 1):
            closed = {b: shearer.closed_conditional_weight(r, k, b) for b in bs}
            for l in range(lmax + 1):
                for b in bs:
                    brute = oracle.brute_conditional_weight(r, k, l, b)
                    rel = abs(brute - closed[b]) / abs(closed[b])
                    checks.append(_check(f"r={r},k={k},l={l},b={b}", rel, tol, rel <= tol))
    _finish("weights", checks, out)


@verify.command("conditions")
@click.option("--n", type=float, required=True)
@click.option("--d", type=float, default=1.0, show_default=True)
@click.option("--r", type=int, default=2, show_default=True)
@click.option("--threshold", type=float, default=shearer.DEFAULT_THRESHOLD, show_default=True)
@out_option
@handle_errors
def verify_conditions(n, d, r, threshold, out):
    """Numeric ratios of the parameter inequalities at the proof's p and b."""
    n = int(n)
    report = shearer.check_conditions(shearer.choose_parameters(n, d, r), threshold=threshold)
    checks = [_check(name, ratio, threshold, math.isfinite(ratio) and ratio <= threshold)
              for name, ratio in report.ratios().items()]
    _finish("conditions", checks, out)


@verify.command("first-moment")
@click.option("--n", type=float, required=True)
@click.option("--r", type=int, required=True)
@click.option("--d", type=float, required=True)
@click.option("--epsilon", type=float, default=0.1, show_default=True)
@out_option
@handle_errors
def verify_first_moment(n, r, d, epsilon, out):
    """Expected number of independent x-sets is below one (log E < 0)."""
    rep = bounds.first_moment(int(n), r, d, epsilon)
    _finish("first-moment", [_check("logE", rep.logE, 0.0, rep.logE < 0)], out)


@verify.command("constants")
@click.option("--r", "rs", type=int, multiple=True, default=tuple(range(2, 65)))
@click.option("--tol", type=float, default=1e-10, show_default=True)
@out_option
@handle_errors
def verify_constants(rs, tol, out):
    """Round trip of the constant formula."""
    checks = []
    for r in rs:
        res = bounds.c_r_round_trip_residual(r)
        checks.append(_check(f"round_trip(r={r})", res, tol, res <= tol))
    _finish("constants", checks, out)


# -- tables ------------------------------------------------------------------


@main.command()
@click.option("--r-min", type=click.IntRange(2), default=2, show_default=True)
@click.option("--r-max", type=click.IntRange(2), default=64, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="csv", show_default=True)
@out_option
@handle_errors
def constants(r_min, r_max, fmt, out):
    """Table of c_r, c_r e / r and (r+1)!^(1/r)."""
    rows = []
    for r in range(r_min, r_max + 1):
        rep = bounds.c_r_constant(r)
        rows.append({
            "r": r,
            "c_r": rep.c_r,
            "c_r_e_over_r": rep.c_r_asymptote_ratio,
            "upper_constant": rep.upper_constant,
            "ratio": rep.c_r / rep.upper_constant,
        })
    _emit_rows(rows, fmt, out)


@main.command()
@click.option("--r", type=click.IntRange(2), required=True)
@click.option("--t", "ts", type=click.IntRange(3), multiple=True, required=True)
@click.option("--c", type=float, default=None, help="Override the lower-bound constant.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="csv", show_default=True)
@out_option
@handle_errors
def ramsey(r, ts, c, fmt, out):
    """Explicit upper bound on R(T_r, K_t^(r))."""
    rows = []
    for t in ts:
        d = bounds.ramsey_upper(r, t, c).to_dict()
        d.pop("formula")
        rows.append(d)
    _emit_rows(rows, fmt, out)


@main.command("first-moment")
@click.option("--n", type=float, required=True)
@click.option("--r", type=int, required=True)
@click.option("--d", type=float, required=True)
@click.option("--epsilon", type=float, default=0.1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@out_option
@handle_errors
def first_moment(n, r, d, epsilon, fmt, out):
    """Log expected count of independent x-sets in the random hypergraph."""
    _emit_rows([bounds.first_moment(int(n), r, d, epsilon).to_dict()], fmt, out)


if __name__ == "__main__":
    sys.exit(main())
