"""Command line: ``lindim analyze|sweep|cremona|oracle|froberg|cones``."""

from __future__ import annotations

import json
import sys
from dataclasses import replace

import click

from .baselocus import enumerate_base_cycles
from .cohomology import cohomology_table, cones_h0, cones_h1, euler_characteristic, h1_contributions
from .core import EmptySystemError, LinearSystem, MultiIndex, ScopeError, canonicalize, parse_mults
from .dimensions import ContainmentPolicy, dimension_report, n3_condition
from .froberg import froberg_prediction, truncated_series
from .oracle import OracleConfig, apolarity_dimension, cycle_multiplicity_probe, interpolation_dimension
from .oracle.dimension import default_seed
from .picard import PicardClass, cremona, cremona_reduce, weyl_base_locus
from .sweep import CHECKS, DEFAULT_CHECKS, PRESETS, ResultCache, SweepSpec, run_sweep


def _system(n: int, d: int, mults: str) -> LinearSystem:
    try:
        return canonicalize(n, d, parse_mults(mults))
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def _range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition(":")
        return int(lo), int(hi or lo)
    except ValueError as exc:
        raise click.BadParameter(f"expected LO:HI, got {text!r}") from exc


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(obj, indent=2, default=str))
    else:
        _table(obj)


def _table(obj: dict, indent: int = 0) -> None:
    pad = " " * indent
    width = max((len(str(k)) for k in obj), default=0)
    for k, v in obj.items():
        if isinstance(v, dict):
            click.echo(f"{pad}{k}:")
            _table(v, indent + 2)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            click.echo(f"{pad}{k}:")
            for item in v:
                click.echo(f"{pad}  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        else:
            click.echo(f"{pad}{str(k).ljust(width)}  {v}")


def _config(seed: int | None, trials: int, prime_bits: int = 62) -> OracleConfig:
    return OracleConfig(prime_bits=prime_bits, trials=trials, seed=default_seed() if seed is None else seed)


system_options = [
    click.option("-n", "n", type=int, required=True, help="ambient dimension"),
    click.option("-d", "d", type=int, required=True, help="degree"),
    click.option("-m", "--mults", default="", help="multiplicities: 5,5,4 or 3x9 or 5^3,4"),
]


def with_system(f):
    for opt in reversed(system_options):
        f = opt(f)
    return f


format_option = click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="table")
seed_option = click.option("--seed", type=int, default=None, help="oracle seed (default: $LINDIM_SEED or 0)")
trials_option = click.option("--trials", type=int, default=3, show_default=True)
policy_option = click.option("--policy", type=click.Choice([p.value for p in ContainmentPolicy]),
                             default=ContainmentPolicy.DELETION.value, show_default=True)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Linear expected dimension and speciality of linear systems with multiple points."""


@main.command()
@with_system
@click.option("--oracle", "use_oracle", is_flag=True, help="measure the actual dimension")
@seed_option
@trials_option
@policy_option
@click.option("--depth", type=int, default=None, help="list Weyl-orbit base divisors up to this many moves")
@format_option
def analyze(n, d, mults, use_oracle, seed, trials, policy, depth, fmt):
    """Dimensions, linear base locus and (in scope) cohomology of one system."""
    L = _system(n, d, mults)
    oracle = interpolation_dimension(L, _config(seed, trials)) if use_oracle else None
    report = dimension_report(L, oracle.dim if oracle else None, ContainmentPolicy(policy))
    out = {"system": str(L), "dimensions": report.to_json()}
    if oracle:
        out["oracle"] = oracle.to_json()
    out["base_locus"] = enumerate_base_cycles(L).to_json()
    try:
        out["cohomology"] = cohomology_table(L).to_json()
        out["h1_contributions"] = {str(r): v for r, v in h1_contributions(L).items()}
    except (ScopeError, EmptySystemError) as exc:
        click.echo(f"note: cohomology table not applicable: {exc}", err=True)
        out["euler_characteristic"] = euler_characteristic(L)
    if L.s >= L.n + 3:
        out["b_condition"] = n3_condition(L).to_json()
    if all(m <= L.d for m in L.mults):
        out["froberg_prediction"] = froberg_prediction(L)
    if depth is not None and L.s >= L.n + 1:
        out["weyl_base_locus"] = [c.to_json() for c in weyl_base_locus(PicardClass.from_system(L), depth)]
    _emit(out, fmt)


@main.command()
@click.option("--preset", type=click.Choice(sorted(PRESETS)), default=None)
@click.option("--n-range", default="3:3", help="LO:HI")
@click.option("--d-range", default="3:8", help="LO:HI")
@click.option("--mult", type=int, default=3, help="homogeneous multiplicity")
@click.option("--s-range", default=None, help="LO:HI; omitted means grow s until the system is empty")
@click.option("--checks", default=None, help=f"comma list from {','.join(CHECKS)}")
@click.option("--cache", "cache_path", type=click.Path(dir_okay=False), default=None)
@click.option("--workers", type=int, default=1, show_default=True)
@seed_option
@trials_option
@policy_option
@format_option
def sweep(preset, n_range, d_range, mult, s_range, checks, cache_path, workers, seed, trials, policy, fmt):
    """Run a family of systems through the oracle; exit 1 if any asserted check fails."""
    try:
        if preset:
            spec = PRESETS[preset]
            if checks:
                spec = replace(spec, checks=tuple(checks.split(",")))
        else:
            spec = SweepSpec(
                "custom", _range(n_range), _range(d_range), mult=mult,
                s_range=_range(s_range) if s_range else None,
                checks=tuple(checks.split(",")) if checks else DEFAULT_CHECKS,
            )
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    try:
        cache = ResultCache(cache_path) if cache_path else None
        summary = run_sweep(spec, _config(seed, trials), ContainmentPolicy(policy), cache, workers)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if fmt == "json":
        for rec in summary.records:
            click.echo(json.dumps(rec.to_json()))
        click.echo(json.dumps({"summary": summary.to_json()}))
    else:
        click.echo(f"{'system':<28}{'vdim':>8}{'ldim':>8}{'dim':>8}  classification")
        for rec in summary.records:
            r = rec.report
            click.echo(f"{str(r.system):<28}{r.vdim:>8}{r.ldim:>8}{rec.oracle.dim:>8}  {r.classification.value}")
        _table(summary.to_json())
    sys.exit(1 if summary.violations else 0)


@main.command("cremona")
@with_system
@click.option("--base", default=None, help="apply one move at these 1-based points instead of reducing")
@format_option
def cremona_cmd(n, d, mults, base, fmt):
    """Cremona-reduce a system, printing every move."""
    L = _system(n, d, mults)
    A = PicardClass.from_system(L)
    if base:
        try:
            out = {"start": A.to_json(), "result": cremona(A, parse_mults(base)).to_json()}
        except (ValueError, IndexError) as exc:
            raise click.BadParameter(str(exc)) from exc
    else:
        out = cremona_reduce(A).to_json()
    _emit(out, fmt)


@main.command("oracle")
@with_system
@click.option("--method", type=click.Choice(["interpolation", "apolarity", "both"]), default="interpolation")
@click.option("--prime-bits", type=int, default=62, show_default=True)
@click.option("--probe", default=None, help="1-based indices of a cycle to probe, e.g. 1,2")
@seed_option
@trials_option
@format_option
def oracle_cmd(n, d, mults, method, prime_bits, probe, seed, trials, fmt):
    """Actual dimension over a random prime field."""
    L = _system(n, d, mults)
    try:
        cfg = _config(seed, trials, prime_bits)
        out = {"system": str(L)}
        if method in ("interpolation", "both"):
            out["interpolation"] = interpolation_dimension(L, cfg).to_json()
        if method in ("apolarity", "both"):
            out["apolarity"] = apolarity_dimension(L, cfg).to_json()
        if probe:
            I = MultiIndex.of(*parse_mults(probe))
            out["probe"] = {"indices": list(I.indices), "multiplicity": cycle_multiplicity_probe(L, I, cfg)}
    except (ValueError, IndexError) as exc:
        raise click.BadParameter(str(exc)) from exc
    _emit(out, fmt)


@main.command("froberg")
@click.option("-n", "n", type=int, required=True)
@click.option("--degrees", default=None, help="generator degrees, e.g. 2,2")
@click.option("-D", "D", type=int, default=None, help="expansion order")
@click.option("-d", "d", type=int, default=None, help="with -m: use the apolar generators of L_{n,d}(m)")
@click.option("-m", "--mults", default=None)
@format_option
def froberg_cmd(n, degrees, D, d, mults, fmt):
    """Raw and truncated series coefficients."""
    try:
        if mults is not None or d is not None:
            if d is None:
                raise ValueError("-m needs -d")
            L = canonicalize(n, d, parse_mults(mults or ""))
            series = truncated_series(n, [d + 1 - m for m in L.mults], d if D is None else D)
            out = {"system": str(L), **series.to_json(), "prediction": froberg_prediction(L)}
        else:
            if degrees is None or D is None:
                raise ValueError("give --degrees and -D, or -d and -m")
            out = truncated_series(n, parse_mults(degrees), D).to_json()
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc
    _emit(out, fmt)


@main.command("cones")
@click.option("-n", "n", type=int, required=True)
@click.option("-d", "d", type=int, required=True)
@click.option("-s", "s", type=int, required=True)
@format_option
def cones_cmd(n, d, s, fmt):
    """h^0 and h^1 of degree-d cones with s points of multiplicity d."""
    try:
        out = {"n": n, "d": d, "s": s, "h0": cones_h0(n, d, s), "h1": cones_h1(n, d, s)}
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc
    _emit(out, fmt)


if __name__ == "__main__":
    main()
