"""Command-line client for the experiment service.

Commands call the bundled service in process by default; pass --server to
talk to a running instance instead.  Exit status: 0 for a clean run, 1 when
the run completed but flagged disagreements, 2 for usage or config errors.
"""

from __future__ import annotations

import asyncio
import csv
import json
import sys

import click
import httpx

from .linalg import DEFAULT_ENUM_CAP


def _request(server: str | None, path: str, payload: dict) -> dict:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            resp = client.post(path, json=payload)
    else:
        from .service import app

        async def go():
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(transport=transport, base_url="http://nilforms.local", timeout=600.0) as client:
                return await client.post(path, json=payload)

        resp = asyncio.run(go())
    if resp.status_code in (400, 422):
        raise click.UsageError(_error_detail(resp))
    resp.raise_for_status()
    return resp.json()


def _error_detail(resp: httpx.Response) -> str:
    try:
        detail = resp.json().get("detail")
    except ValueError:
        detail = None
    if isinstance(detail, list):
        return "; ".join(str(item.get("msg", item)) for item in detail)
    return str(detail) if detail else resp.text


def _load_json_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read {path}: {exc}") from None


def _resolve_nt(n, t, input_data):
    if input_data is not None:
        n = n if n is not None else input_data.get("n")
        t = t if t is not None else input_data.get("t")
    if n is None or t is None:
        raise click.UsageError("--n and --t are required (or provide them via --input)")
    return n, t


def _emit(report: dict, fmt: str) -> int:
    if fmt == "json":
        click.echo(json.dumps(report, indent=2, sort_keys=True))
    elif fmt == "csv":
        _emit_csv(report)
    else:
        _emit_table(report)
    return 1 if report.get("verdict") == "flagged" else 0


def _emit_table(report: dict) -> None:
    kind = report["kind"]
    if kind == "thresholds":
        _emit_threshold_rows(report["records"])
    elif kind == "plucker":
        _emit_plucker_table(report["records"][0])
    else:
        click.echo(f"kind:    {kind}")
        for name, value in sorted(report.get("prediction", {}).items()):
            click.echo(f"predict: {name} = {value}")
        for name, value in sorted(report.get("aggregate", {}).items()):
            click.echo(f"result:  {name} = {value}")
    click.echo(f"verdict: {report['verdict']}")
    for flag in report.get("flags", []):
        click.echo(f"flag:    {flag}")


def _emit_threshold_rows(rows: list) -> None:
    header = ("n", "n0", "t0", "absence_below", "guaranteed_at_or_above", "corollary_bound")
    table = [header] + [
        tuple(str(row[key]) if row[key] is not None else "-" for key in header) for row in rows
    ]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for r in table:
        click.echo("  ".join(cell.ljust(width) for cell, width in zip(r, widths)).rstrip())


def _emit_plucker_table(result: dict) -> None:
    click.echo(f"subspace: dim {result['k']} of Q^{result['n']}")
    click.echo(f"grassmannian_dim: {result['grassmannian_dim']}")
    for idx, value in zip(result["index_sets"], result["coords"]):
        label = ",".join(str(i) for i in idx)
        click.echo(f"p[{label}] = {value}")
    click.echo(f"relations_ok: {result['relations_ok']}")
    click.echo(f"round_trip: {result['round_trip']}")


def _emit_csv(report: dict) -> None:
    writer = csv.writer(sys.stdout)
    kind = report["kind"]
    if kind == "thresholds":
        header = ("n", "n0", "t0", "absence_below", "guaranteed_at_or_above", "corollary_bound")
        writer.writerow(header)
        for row in report["records"]:
            writer.writerow([row[key] if row[key] is not None else "" for key in header])
        return
    if kind == "plucker":
        result = report["records"][0]
        writer.writerow(("indices", "coordinate"))
        for idx, value in zip(result["index_sets"], result["coords"]):
            writer.writerow((" ".join(str(i) for i in idx), value))
        return
    writer.writerow(("metric", "value"))
    for name, value in sorted(report.get("aggregate", {}).items()):
        writer.writerow((name, value))
    writer.writerow(("verdict", report["verdict"]))


format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["table", "json", "csv"]),
    default="table",
    show_default=True,
    help="Output format.",
)
server_option = click.option(
    "--server",
    default=None,
    metavar="URL",
    help="Base URL of a running service; default runs in process.",
)


@click.group()
def main():
    """Exact experiments on alternating form tuples and their nilpotent groups."""


@main.command()
@click.option("--n", type=int, default=None, help="Ambient dimension.")
@click.option("--t", type=int, default=None, help="Number of forms.")
@click.option("--trials", type=int, default=None, help="Trial count (default 100, or 1 with --input).")
@click.option("--bound", type=int, default=20, show_default=True, help="Entry bound for sampled tuples.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), default=None, help="Fixed form-tuple JSON file.")
@format_option
@server_option
@click.pass_context
def center(ctx, n, t, trials, bound, seed, jobs, input_path, fmt, server):
    """Compare computed center dimensions against the generic prediction."""
    data = _load_json_file(input_path) if input_path else None
    n, t = _resolve_nt(n, t, data)
    payload = {
        "n": n,
        "t": t,
        "trials": trials if trials is not None else (1 if data else 100),
        "bound": bound,
        "seed": seed,
        "jobs": jobs,
        "input_tuple": data,
    }
    ctx.exit(_emit(_request(server, "/experiments/center", payload), fmt))


@main.command()
@click.option("--n", type=int, default=None, help="Ambient dimension.")
@click.option("--t", type=int, default=None, help="Number of forms.")
@click.option("--trials", type=int, default=None, help="Trial count (default 100, or 1 with --input).")
@click.option("--bound", type=int, default=20, show_default=True)
@click.option("--prime", type=int, default=None, help="Prime for the exhaustive oracle; omit to skip it.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--restarts", type=int, default=8, show_default=True, help="Greedy search restarts.")
@click.option("--enum-cap", type=int, default=DEFAULT_ENUM_CAP, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), default=None)
@format_option
@server_option
@click.pass_context
def abelian(ctx, n, t, trials, bound, prime, seed, restarts, enum_cap, jobs, input_path, fmt, server):
    """Probe isotropic-subspace dimensions against the generic bounds."""
    data = _load_json_file(input_path) if input_path else None
    n, t = _resolve_nt(n, t, data)
    payload = {
        "n": n,
        "t": t,
        "trials": trials if trials is not None else (1 if data else 100),
        "bound": bound,
        "prime": prime,
        "seed": seed,
        "restarts": restarts,
        "enum_cap": enum_cap,
        "jobs": jobs,
        "input_tuple": data,
    }
    ctx.exit(_emit(_request(server, "/experiments/abelian", payload), fmt))


@main.command()
@click.option("--n", type=int, default=None, help="Ambient dimension.")
@click.option("--t", type=int, default=None, help="Number of forms.")
@click.option("--n0", type=int, required=True, help="Target quotient V-dimension.")
@click.option("--t0", type=int, required=True, help="Target quotient derived dimension.")
@click.option("--trials", type=int, default=None, help="Trial count (default 100, or 1 with --input).")
@click.option("--bound", type=int, default=20, show_default=True)
@click.option("--prime", type=int, default=None, help="Prime for exhaustive-fp; default picks per trial.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--strategy",
    type=click.Choice(["exhaustive-fp", "randomized-q"]),
    default="exhaustive-fp",
    show_default=True,
)
@click.option("--search-trials", type=int, default=200, show_default=True, help="Samples per trial for randomized-q.")
@click.option("--enum-cap", type=int, default=DEFAULT_ENUM_CAP, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), default=None)
@format_option
@server_option
@click.pass_context
def ms(ctx, n, t, n0, t0, trials, bound, prime, seed, strategy, search_trials, enum_cap, jobs, input_path, fmt, server):
    """Search for small-quotient witness subspaces and compare against thresholds."""
    data = _load_json_file(input_path) if input_path else None
    n, t = _resolve_nt(n, t, data)
    payload = {
        "n": n,
        "t": t,
        "n0": n0,
        "t0": t0,
        "trials": trials if trials is not None else (1 if data else 100),
        "bound": bound,
        "prime": prime,
        "seed": seed,
        "strategy": strategy,
        "search_trials": search_trials,
        "enum_cap": enum_cap,
        "jobs": jobs,
        "input_tuple": data,
    }
    ctx.exit(_emit(_request(server, "/experiments/ms", payload), fmt))


@main.command()
@click.option("--n", "n_max", type=int, required=True, help="Largest n in the table.")
@click.option("--n0", "n0_max", type=int, default=None, help="Largest n0 (default: same as --n).")
@format_option
@server_option
@click.pass_context
def thresholds(ctx, n_max, n0_max, fmt, server):
    """Print the threshold table for the small-quotient property."""
    payload = {"n_max": n_max, "n0_max": n0_max if n0_max is not None else n_max}
    ctx.exit(_emit(_request(server, "/thresholds", payload), fmt))


@main.command()
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True, help='JSON file {"ambient": n, "basis": [[...], ...]}.')
@format_option
@server_option
@click.pass_context
def plucker(ctx, input_path, fmt, server):
    """Embed a rational subspace, check the relations, and recover its basis."""
    data = _load_json_file(input_path)
    if not isinstance(data, dict) or "ambient" not in data or "basis" not in data:
        raise click.UsageError('input must be a JSON object {"ambient": n, "basis": [[...], ...]}')
    payload = {"ambient": data["ambient"], "basis": data["basis"]}
    ctx.exit(_emit(_request(server, "/plucker", payload), fmt))


@main.command("group-check")
@click.option("--n", type=int, default=None, help="Ambient dimension.")
@click.option("--t", type=int, default=None, help="Number of forms.")
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--bound", type=int, default=5, show_default=True, help="Entry bound for a sampled presentation.")
@click.option("--exp-bound", type=int, default=9, show_default=True, help="Exponent range for sampled elements.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), default=None)
@format_option
@server_option
@click.pass_context
def group_check(ctx, n, t, trials, bound, exp_bound, seed, jobs, input_path, fmt, server):
    """Exercise group arithmetic and the rational-completion bridge exactly."""
    data = _load_json_file(input_path) if input_path else None
    n, t = _resolve_nt(n, t, data)
    payload = {
        "n": n,
        "t": t,
        "trials": trials,
        "bound": bound,
        "exp_bound": exp_bound,
        "seed": seed,
        "jobs": jobs,
        "input_tuple": data,
    }
    ctx.exit(_emit(_request(server, "/group-check", payload), fmt))


@main.command("example-quaternion")
@click.option("--trials", "minor_points", type=int, default=200, show_default=True, help="Random points for the minor identity.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--restarts", type=int, default=20, show_default=True)
@format_option
@server_option
@click.pass_context
def example_quaternion(ctx, minor_points, seed, restarts, fmt, server):
    """Reproduce the quaternionic 3-tuple and its field-sensitive isotropy."""
    payload = {"minor_points": minor_points, "seed": seed, "restarts": restarts}
    ctx.exit(_emit(_request(server, "/example/quaternion", payload), fmt))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
