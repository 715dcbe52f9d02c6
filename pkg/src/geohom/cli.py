"""Command-line front end.

Exit codes: 0 = YES (or success), 1 = NO, 2 = bad input, 3 = limit reached.
"""
from __future__ import annotations

import os
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import click

from .config import METHODS, RunConfig
from .generators import gen_convexfat_3sat, geometry_audit, h5_target, parse_dimacs
from .geometry import Scene, render_svg
from .run import (
    COST_METHODS,
    WitnessError,
    auto_select,
    record_for,
    records_csv,
    solve,
    solve_weighted,
)
from .solver import InstanceFile
from .solver.instance import format_rational
from .target import (
    TargetGraph,
    build_associated_bipartite,
    find_predator,
    is_strong_split,
    max_reflexive_clique,
    reflexive_partition,
)
from .weighted import encode_max_cut, encode_vertex_cover, gen_mchom_vc_triangles

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_LIMIT = 0, 1, 2, 3


class CliError(click.ClickException):
    exit_code = EXIT_ERROR


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from None


def _target(path: str) -> TargetGraph:
    try:
        return TargetGraph.loads(_read(path))
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None


def _instance(path: str) -> InstanceFile:
    try:
        return InstanceFile.loads(_read(path))
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None


def _scene(path: str) -> Scene:
    try:
        return Scene.loads(_read(path))
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None


def _config(method: str, node_limit: int, time_limit: float | None, **extra) -> RunConfig:
    try:
        return RunConfig(method=method, node_limit=node_limit, time_limit=time_limit, **extra).with_env()
    except ValueError as exc:
        raise CliError(str(exc)) from None


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """List homomorphisms on geometric intersection graphs."""


# ----------------------------------------------------------------- analyze-h


@main.command("analyze-h")
@click.argument("target", type=click.Path(dir_okay=False))
def analyze_h(target: str) -> None:
    """Print the structure of a target graph."""
    H = _target(target)
    R, I = reflexive_partition(H)
    order = {lab: i for i, lab in enumerate(H.labels)}
    size, clique = max_reflexive_clique(H)
    pred = find_predator(H)
    assoc = build_associated_bipartite(H)
    click.echo(f"vertices {H.size} edges {len(H.edges())}")
    click.echo("reflexive " + " ".join(sorted(R, key=order.get)))
    click.echo("irreflexive " + " ".join(sorted(I, key=order.get)))
    click.echo(f"mrc {size} " + " ".join(sorted(clique, key=order.get)))
    click.echo("predator " + ("none" if pred is None else " ".join(pred)))
    click.echo(f"strong-split {'yes' if is_strong_split(H) else 'no'}")
    click.echo(f"H* vertices {assoc.hstar.size} edges {len(assoc.hstar.edges())}")


# --------------------------------------------------------------------- solve


def _witness_line(labels) -> str:
    return "witness " + " ".join(labels)


@main.command("solve")
@click.argument("target", type=click.Path(dir_okay=False))
@click.argument("instance", type=click.Path(dir_okay=False))
@click.option("--scene", "scene_path", type=click.Path(dir_okay=False), help="Scene file (overrides the instance's scene line).")
@click.option("--method", type=click.Choice(METHODS), default="auto", show_default=True)
@click.option("--witness/--no-witness", default=False, help="Print the coloring on YES.")
@click.option("--encode", type=click.Choice(["vc", "maxcut"]), help="Encode the instance graph; TARGET is ignored.")
@click.option("--budget", type=str, help="Budget for cost problems (overrides the file).")
@click.option("--node-limit", type=int, default=0, show_default=True, help="0 means unlimited.")
@click.option("--time-limit", type=float, help="Seconds.")
@click.option("--c-area", type=str, default="2", show_default=True)
@click.option("--base-n", type=int, default=12, show_default=True)
@click.option("--r-max", type=str, default="2", show_default=True)
@click.option("--deg-preset", type=click.Choice(["default", "representation-aware"]), default="default")
@click.option("--record", type=click.Path(dir_okay=False), help="Write a one-row bench CSV here.")
def solve_cmd(
    target, instance, scene_path, method, witness, encode, budget, node_limit, time_limit,
    c_area, base_n, r_max, deg_preset, record,
) -> None:
    """Decide a list-homomorphism or cost instance.

    Exit status 0 for YES, 1 for NO, 2 for bad input, 3 when a limit stops
    the search.
    """
    try:
        cfg = _config(
            method, node_limit, time_limit, c_area=Fraction(c_area), base_n=base_n,
            r_max=Fraction(r_max), deg_preset=deg_preset,
        )
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(str(exc)) from None
    f = _instance(instance)
    if budget is not None:
        try:
            f.budget = Fraction(budget)
        except (ValueError, ZeroDivisionError):
            raise CliError(f"bad budget {budget!r}") from None
    if encode:
        _solve_encoded(f, encode, cfg, witness)
        return
    H = _target(target)
    try:
        inst = f.bind(H)
    except ValueError as exc:
        raise CliError(f"{instance}: {exc}") from None
    if f.weighted or method in COST_METHODS:
        _solve_cost(H, f, cfg, witness)
        return
    scene = None
    src = scene_path or (str(Path(instance).parent / f.scene) if f.scene else None)
    if src is not None:
        scene = _scene(src)
        if len(scene) != inst.n:
            raise CliError("scene and instance disagree on the number of vertices")
    chosen = auto_select(H, inst, scene, cfg) if method == "auto" else method
    try:
        res = solve(inst, scene, cfg, chosen)
    except (ValueError, WitnessError) as exc:
        raise CliError(str(exc)) from None
    click.echo(res.verdict)
    click.echo(f"method {chosen} nodes {res.stats.nodes}")
    if witness and res.answer:
        click.echo(_witness_line(res.witness_labels(H)))
    if record:
        _write(record, records_csv([record_for(Path(instance).name, inst, scene, chosen, None, res.stats.nodes, res.verdict)]))
    sys.exit(EXIT_LIMIT if res.answer is None else EXIT_YES if res.answer else EXIT_NO)


def _report_cost(res, H: TargetGraph, budget, witness: bool) -> None:
    if res.timed_out:
        click.echo("TIMEOUT")
        sys.exit(EXIT_LIMIT)
    ok = res.value is not None and (budget is None or res.value <= budget)
    click.echo("YES" if ok else "NO")
    click.echo("min " + ("none" if res.value is None else format_rational(res.value)))
    click.echo(f"method {res.method} nodes {res.stats.nodes}")
    if witness and res.witness is not None:
        click.echo(_witness_line(H.labels[c] for c in res.witness))
    sys.exit(EXIT_YES if ok else EXIT_NO)


def _solve_cost(H: TargetGraph, f: InstanceFile, cfg: RunConfig, witness: bool) -> None:
    try:
        res = solve_weighted(H, f, cfg, cfg.method)
    except (ValueError, KeyError, WitnessError) as exc:
        raise CliError(str(exc)) from None
    _report_cost(res, H, f.budget, witness)


def _solve_encoded(f: InstanceFile, encode: str, cfg: RunConfig, witness: bool) -> None:
    from .weighted import solve_mincost, solve_whom
    from .solver import Stats

    g = f.graph()
    stats = Stats.with_limits(cfg.node_limit, cfg.time_limit)
    if encode == "vc":
        g, H, costs = encode_vertex_cover(g)
        res = solve_mincost(g, H, costs, None, cfg, stats)
    else:
        g, H, costs = encode_max_cut(g)
        res = solve_whom(g, H, costs, None, cfg, stats)
    _report_cost(res, H, f.budget, witness)


# ----------------------------------------------------------------------- gen


@main.group()
def gen() -> None:
    """Generate hardness instances."""


def _relative(path: str, start: str) -> str:
    return os.path.relpath(Path(path).resolve(), Path(start).resolve().parent)


@gen.command("convexfat")
@click.argument("cnf", type=click.Path(dir_okay=False))
@click.option("-o", "--scene-out", required=True, type=click.Path(dir_okay=False))
@click.option("-i", "--instance-out", required=True, type=click.Path(dir_okay=False))
@click.option("-t", "--target-out", type=click.Path(dir_okay=False), help="Also write the target graph.")
@click.option("--render", type=click.Path(dir_okay=False), help="Also write an SVG picture.")
def gen_convexfat(cnf, scene_out, instance_out, target_out, render) -> None:
    """Triangle instance over H5 that is satisfiable iff the 3-CNF is."""
    try:
        formula = parse_dimacs(_read(cnf))
    except ValueError as exc:
        raise CliError(f"{cnf}: {exc}") from None
    scene, inst = gen_convexfat_3sat(formula)
    report = geometry_audit(scene, inst)
    if not report:
        raise CliError(f"generated scene failed its audit: {report}")
    f = InstanceFile.from_instance(inst)
    f.scene = _relative(scene_out, instance_out)
    _write(scene_out, scene.dumps())
    _write(instance_out, f.dumps())
    if target_out:
        _write(target_out, h5_target().dumps())
    if render:
        _write(render, render_svg(scene, {i: "".join(sorted(f.lists[i])) for i in range(inst.n)}))
    click.echo(f"objects {len(scene)} vars {formula.num_vars} clauses {len(formula.clauses)}")


@gen.command("vc")
@click.argument("graph", type=click.Path(dir_okay=False))
@click.argument("k", type=str)
@click.option("-o", "--scene-out", required=True, type=click.Path(dir_okay=False))
@click.option("-i", "--instance-out", required=True, type=click.Path(dir_okay=False))
@click.option("-t", "--target-out", type=click.Path(dir_okay=False), help="Also write the target graph.")
@click.option("--render", type=click.Path(dir_okay=False), help="Also write an SVG picture.")
def gen_vc(graph, k, scene_out, instance_out, target_out, render) -> None:
    """Triangle cost instance over the reflexive C4 encoding vertex cover <= K.

    GRAPH uses the instance format (header and edge lines).
    """
    try:
        budget = Fraction(k)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad budget {k!r}") from None
    g = _instance(graph).graph()
    scene, inst, r_max = gen_mchom_vc_triangles(g, budget)
    H = inst.target
    f = InstanceFile(inst.graph.n, inst.graph.edges())
    f.scene = _relative(scene_out, instance_out)
    for v, row in enumerate(inst.costs.vcost):
        for c, q in enumerate(row):
            if q:
                f.vcost[(v, H.labels[c])] = q
    f.budget = budget
    _write(scene_out, scene.dumps())
    _write(instance_out, f.dumps())
    if target_out:
        _write(target_out, H.dumps())
    if render:
        _write(render, render_svg(scene))
    click.echo(f"objects {len(scene)} vertices {g.n} edges {g.m} r_max {format_rational(r_max)}")


# --------------------------------------------------------------------- bench


@main.command("bench")
@click.argument("corpus", required=False, type=click.Path(file_okay=False))
@click.option("-m", "--method", "methods", multiple=True, type=click.Choice(METHODS), help="Repeatable; default auto.")
@click.option("--scaling", is_flag=True, help="Run the built-in fat-versus-brute scaling family.")
@click.option("--no-time", is_flag=True, help="Leave the wall-time column empty (byte-stable output).")
@click.option("-j", "--parallel", type=int, default=1, show_default=True)
@click.option("--node-limit", type=int, default=0, show_default=True)
@click.option("--time-limit", type=float)
@click.option("-o", "--out", type=click.Path(dir_okay=False), help="CSV destination (default stdout).")
def bench_cmd(corpus, methods, scaling, no_time, parallel, node_limit, time_limit, out) -> None:
    """Benchmark a corpus of *.inst files, or the scaling family."""
    from .run import bench
    from .scaling import scaling_report

    cfg = _config("auto", node_limit, time_limit)
    try:
        cfg = replace(cfg, parallelism=parallel)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    status = EXIT_YES
    if scaling:
        report = scaling_report(cfg=cfg, timed=not no_time)
        text = report.csv()
        click.echo(report.summary(), err=True)
        status = EXIT_YES if report.ok else EXIT_NO
    elif corpus is None:
        raise CliError("give a corpus directory or --scaling")
    else:
        text = bench(corpus, methods or ("auto",), cfg, timed=not no_time)
    if out:
        _write(out, text)
    else:
        click.echo(text, nl=False)
    sys.exit(status)


# -------------------------------------------------------------------- render


@main.command("render")
@click.argument("scene", type=click.Path(dir_okay=False))
@click.option("-o", "--out", required=True, type=click.Path(dir_okay=False))
@click.option("--instance", type=click.Path(dir_okay=False), help="Label objects with their lists.")
def render_cmd(scene, out, instance) -> None:
    """Draw a scene as SVG."""
    s = _scene(scene)
    notes = {}
    if instance:
        f = _instance(instance)
        notes = {v: "".join(labels) for v, labels in f.lists.items() if v < len(s)}
    _write(out, render_svg(s, notes))
    click.echo(f"objects {len(s)}")


if __name__ == "__main__":  # pragma: no cover
    main()
