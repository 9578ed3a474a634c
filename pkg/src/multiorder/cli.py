"""Batch-experiment command line.

Every subcommand reads an optional flat key=value config file; any flag
given on the command line overrides the file.  Batch commands write a
line-delimited JSON report (stdout or --out) and print a one-line human
summary on stderr.  Exit codes: 0 all expectations met, 1 expectation
failures or runtime errors, 2 usage/config errors.
"""

from __future__ import annotations

import sys

import click

from .experiments import (
    ExperimentConfig,
    bhr_run,
    entropy_run,
    identity_suite,
    invariance_run,
    lemma_check,
    load_config_file,
)
from .groups import get_group
from .orders import HorizonError, order_metric, read_window, window_to_lines, write_window
from .reports import render_rational
from .samplers import get_sampler


def _build_config(config_path: str | None, overrides: dict) -> ExperimentConfig:
    mapping: dict[str, str] = {}
    if config_path:
        try:
            mapping.update(load_config_file(config_path))
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    for key, value in overrides.items():
        if value is not None:
            mapping[key] = str(value)
    try:
        return ExperimentConfig.from_mapping(mapping)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _emit_report(report, out: str | None) -> None:
    if out:
        report.write(out)
    else:
        click.echo(report.body_text(), nl=False)
    click.echo(report.summary_text(), err=True)
    sys.exit(0 if report.ok else 1)


def _common_options(fn):
    fn = click.option(
        "--config", "config_path", type=click.Path(exists=True), default=None,
        help="Flat key=value config file; flags override it.",
    )(fn)
    fn = click.option("--out", "-o", default=None, help="Report path (default: stdout).")(fn)
    return fn


def _batch_options(fn):
    fn = _common_options(fn)
    for name in ("--group", "--family", "--seeds", "--element", "--configuration"):
        fn = click.option(name, default=None)(fn)
    for name in (
        "--window-radius", "--n-elements", "--element-radius", "--reindex-span",
        "--iterate-k", "--box-radius", "--horizon", "--depth", "--alphabet",
        "--pattern-radius", "--n-samples", "--block-len", "--controls", "--base-seed",
    ):
        fn = click.option(name, type=int, default=None)(fn)
    fn = click.option("--swap-probability", type=float, default=None)(fn)
    return fn


def _run_batch(runner, config_path, out, **flags):
    cfg = _build_config(config_path, {k.replace("_", "-"): v for k, v in flags.items()})
    try:
        report = runner(cfg)
    except (ValueError, HorizonError) as exc:
        raise click.ClickException(str(exc)) from exc
    _emit_report(report, out)


@click.group()
def main():
    """Order calculus on countable groups: sampling, identities, asymptotic pairs."""


@main.command("sample-order")
@click.option("--group", "group_name", default="Z", show_default=True)
@click.option("--family", default="dirac-standard-Z", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--radius", type=int, default=16, show_default=True)
@click.option("--swap-probability", type=float, default=0.5, show_default=True)
@click.option("--out", "-o", default=None, help="Order window file (default: stdout).")
def cmd_sample_order(group_name, family, seed, radius, swap_probability, out):
    """Sample an order and emit its window file for bi(-radius..radius)."""
    group = get_group(group_name)
    kwargs = {"swap_probability": swap_probability} if family == "pair-swap-Z" else {}
    try:
        sampler = get_sampler(family, group, **kwargs)
        window = sampler.sample(seed).window(-radius, radius)
    except (ValueError, HorizonError) as exc:
        raise click.ClickException(str(exc)) from exc
    if out:
        write_window(window, out)
    else:
        click.echo("\n".join(window_to_lines(window)))


@main.command("act")
@click.option("--group", "group_name", required=True)
@click.option("--order", "order_path", required=True, type=click.Path(exists=True))
@click.option("--element", required=True, help="Element encoding, e.g. '1,-2'.")
@click.option("--out", "-o", default=None)
def cmd_act(group_name, order_path, element, out):
    """Act on an order window file by a group element; emit the result."""
    group = get_group(group_name)
    try:
        window = read_window(group, order_path)
        acted = window.act(group.parse(element))
    except (ValueError, HorizonError) as exc:
        raise click.ClickException(str(exc)) from exc
    if out:
        write_window(acted, out)
    else:
        click.echo("\n".join(window_to_lines(acted)))


@main.command("metric")
@click.option("--group", "group_name", required=True)
@click.option("--order-a", "path_a", required=True, type=click.Path(exists=True))
@click.option("--order-b", "path_b", required=True, type=click.Path(exists=True))
@click.option("--depth", type=int, default=8, show_default=True)
def cmd_metric(group_name, path_a, path_b, depth):
    """Truncated order-space distance of two order window files."""
    group = get_group(group_name)
    try:
        value, bound = order_metric(
            read_window(group, path_a), read_window(group, path_b), depth
        )
    except (ValueError, HorizonError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"{render_rational(value)} (±{render_rational(bound)})")


@main.command("identity-suite")
@_batch_options
def cmd_identity_suite(config_path, out, **flags):
    """Equivariance, reindexing and successor-orbit identity suites."""
    _run_batch(identity_suite, config_path, out, **flags)


@main.command("bhr-run")
@click.option("--csv", "csv_path", default=None,
              help="Also write plot-ready profile rows (seed,k,value,bound).")
@_batch_options
def cmd_bhr_run(config_path, out, csv_path, **flags):
    """Desk-scale asymptotic-pair existence run (expected 100% certified)."""
    cfg = _build_config(config_path, {k.replace("_", "-"): v for k, v in flags.items()})
    try:
        report = bhr_run(cfg)
    except (ValueError, HorizonError) as exc:
        raise click.ClickException(str(exc)) from exc
    if csv_path:
        with open(csv_path, "w", encoding="ascii") as fh:
            fh.write("seed,k,value,bound,value_float\n")
            for record in report.records:
                if "seed" not in record or "profile" not in record:
                    continue
                for k, value, bound in record["profile"]:
                    num, den = value.split("/")
                    fh.write(
                        f"{record['seed']},{k},{value},{bound},{int(num) / int(den)}\n"
                    )
    _emit_report(report, out)


@main.command("lemma-check")
@_batch_options
def cmd_lemma_check(config_path, out, **flags):
    """Tail-translation detector precision/recall with metric crosschecks."""
    _run_batch(lemma_check, config_path, out, **flags)


@main.command("invariance")
@_batch_options
def cmd_invariance(config_path, out, **flags):
    """Empirical invariance (total variation) of a sampler family."""
    _run_batch(invariance_run, config_path, out, **flags)


@main.command("entropy")
@_batch_options
def cmd_entropy(config_path, out, **flags):
    """Block entropy along sampled orders for i.i.d. and constant sources."""
    _run_batch(entropy_run, config_path, out, **flags)


if __name__ == "__main__":
    main()
