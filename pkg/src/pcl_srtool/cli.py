import logging
from pathlib import Path

import rich_click as click
from rich.console import Console
from rich.table import Table

from . import api
from .errors import DataError
from .explorer import DescentConfig
from .harness.evaluate import METRICS
from .image import ChannelMode, EvalProtocol
from .losses import DEFAULT_WEIGHTS, LOSS_PRESETS, AdversarialForm, DctConfig, DctMode, DctNorm, LossWeights
from .metrics.niqe import DEFAULT_PATCH_SIZE
from .report import aggregate_payload, dumps, loss_payload

log = logging.getLogger(__name__)

click.rich_click.SHOW_ARGUMENTS = True

banner = """
╔══════════════════════════╗
║    P C L   S R T O O L   ║
╚══════════════════════════╝
"""

stderr = Console(stderr=True)


class WeightsType(click.ParamType):
    name = "wc,wd,wdct,wadv"

    def convert(self, value, param, ctx):
        if isinstance(value, LossWeights):
            return value
        try:
            return LossWeights.parse(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


WEIGHTS = WeightsType()


def _dct_options():
    """DCT configuration options decorator."""

    def decorator(f):
        f = click.option("--dct-norm", type=click.Choice([n.value for n in DctNorm]), default=DctNorm.UNNORMALIZED.value, help="DCT scaling")(f)
        f = click.option("--dct-block", type=click.Choice([m.value for m in DctMode]), default=DctMode.FULL.value, help="Whole-image or blockwise 8x8 DCT")(f)
        return f

    return decorator


def _channel_option(f):
    return click.option("--channel", type=click.Choice([c.value for c in ChannelMode]), default=ChannelMode.LUMA.value, help="Y luma or RGB")(f)


def _dct_config(dct_norm: str, dct_block: str) -> DctConfig:
    return DctConfig(normalization=DctNorm(dct_norm), mode=DctMode(dct_block))


def _show_means(aggregate) -> None:
    table = Table(title=f"{aggregate.dataset} ({len(aggregate.per_image)} images)")
    for metric in METRICS:
        table.add_column(metric.upper(), justify="right")
    mean = aggregate_payload(aggregate)["mean"]
    table.add_row(*("-" if mean[m] is None else f"{mean[m]:.4f}" for m in METRICS))
    stderr.print(table)


@click.group(name="main")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging")
def main(verbose: bool):
    stderr.print(banner, style="green", highlight=False)
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


@main.command()
@click.option("--hr", "hr_dir", required=True, type=click.Path(file_okay=False, path_type=Path), help="HR reference directory")
@click.option("--sr", "sr_dir", required=True, type=click.Path(file_okay=False, path_type=Path), help="SR output directory")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Directory for the report (JSON goes to stdout without it)")
@click.option("--scale", type=click.IntRange(min=1), default=api.DEFAULT_SCALE, show_default=True, help="Upscaling factor")
@click.option("--border", type=click.IntRange(min=0), default=api.DEFAULT_BORDER, show_default=True, help="Pixels discarded per side")
@_channel_option
@click.option("--niqe-model", type=click.Path(dir_okay=False, path_type=Path), default=None, help="NIQE model file")
@click.option("--ma-scores", type=click.Path(dir_okay=False, path_type=Path), default=None, help="image_id,score CSV of Ma scores")
@click.option("--name", default=None, help="Dataset name (defaults to the SR directory name)")
@click.option("--format", "fmt", type=click.Choice([f.value for f in api.ReportFormat]), default="json", help="Report format")
def evaluate(hr_dir, sr_dir, out, scale, border, channel, niqe_model, ma_scores, name, fmt):
    """Evaluate an SR directory against its HR references."""
    protocol = EvalProtocol(scale=scale, border_discard=border, channel_mode=ChannelMode(channel))
    aggregate = api.run_evaluate(hr_dir, sr_dir, protocol, niqe_model, ma_scores, name)
    _show_means(aggregate)

    report_format = api.ReportFormat(fmt)
    if out is None and report_format is api.ReportFormat.JSON:
        click.echo(dumps(aggregate_payload(aggregate)), nl=False)
    else:
        report_path = api.write_report(aggregate, report_format, out or Path.cwd())
        log.info(f"Report written: {report_path}")
    if aggregate.failures:
        failed = ", ".join(image_id for image_id, _ in aggregate.failures)
        raise DataError(f"{len(aggregate.failures)} pair(s) failed: {failed}")
    log.info("✅ Evaluation completed")


@main.command()
@click.option("--hr", "hr_path", required=True, type=click.Path(dir_okay=False, path_type=Path), help="HR image")
@click.option("--sr", "sr_path", required=True, type=click.Path(dir_okay=False, path_type=Path), help="SR image")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="JSON file (stdout without it)")
@click.option("--weights", type=WEIGHTS, default=DEFAULT_WEIGHTS.label(), show_default=True, help="Loss weights")
@click.option("--d", "d", type=float, default=None, help="Discriminator output on the SR image")
@click.option("--d-form", type=click.Choice([f.value for f in AdversarialForm]), default=AdversarialForm.PROBABILITY.value, help="Whether --d is a probability or a logit")
@_channel_option
@_dct_options()
def losses(hr_path, sr_path, out, weights, d, d_form, channel, dct_norm, dct_block):
    """Compute the perceptual content losses of one HR/SR pair."""
    report = api.run_losses(hr_path, sr_path, weights, _dct_config(dct_norm, dct_block), ChannelMode(channel), d, AdversarialForm(d_form))
    text = dumps(loss_payload(report, hr_path, sr_path))
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text, encoding="utf-8")
        log.info(f"✅ Losses written: {out}")


@main.command()
@click.option("--hr", "hr_dir", required=True, type=click.Path(file_okay=False, path_type=Path), help="HR directory")
@click.option("--scale", type=click.IntRange(min=2), default=api.DEFAULT_SCALE, show_default=True, help="Downscaling factor")
@click.option("--out", required=True, type=click.Path(file_okay=False, path_type=Path), help="Output directory")
def bicubic(hr_dir, scale, out):
    """Generate the bicubic down/up baseline of an HR directory."""
    written = api.run_bicubic(hr_dir, scale, out)
    log.info(f"✅ Bicubic baseline completed: {written} images in {out}")


@main.command(name="pd-sweep")
@click.option("--hr", "hr_path", required=True, type=click.Path(dir_okay=False, path_type=Path), help="HR image")
@click.option("--start", "start_path", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Start image (bicubic baseline without it)")
@click.option("--weights", "weight_list", type=WEIGHTS, multiple=True, help="Weight setting, repeatable")
@click.option("--preset", "presets", type=click.Choice(list(LOSS_PRESETS)), multiple=True, help="Named weight setting, repeatable")
@click.option("--scale", type=click.IntRange(min=2), default=api.DEFAULT_SCALE, show_default=True, help="Baseline factor")
@click.option("--steps", type=click.IntRange(min=1), default=DescentConfig.max_steps, show_default=True, help="Maximum descent steps")
@_channel_option
@_dct_options()
@click.option("--niqe-model", type=click.Path(dir_okay=False, path_type=Path), default=None, help="NIQE model file")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=Path.cwd(), help="Output directory")
def pd_sweep(hr_path, start_path, weight_list, presets, scale, steps, channel, dct_norm, dct_block, niqe_model, out):
    """Trace the perception-distortion trade-off over loss weight settings."""
    settings = list(weight_list) + [LOSS_PRESETS[p] for p in presets]
    if not settings:
        raise click.UsageError("give at least one --weights or --preset")
    result, sweep_path = api.run_sweep(
        hr_path,
        settings,
        start_path,
        scale,
        DescentConfig(max_steps=steps),
        _dct_config(dct_norm, dct_block),
        ChannelMode(channel),
        niqe_model,
        out,
    )
    log.info(f"✅ Sweep completed: {sweep_path}")
    if result.failures:
        log.warning(f"  Failed points: {result.failures}")


@main.command(name="niqe-fit")
@click.option("--corpus", required=True, type=click.Path(file_okay=False, path_type=Path), help="Directory of pristine images")
@click.option("--patch-size", type=click.IntRange(min=8), default=DEFAULT_PATCH_SIZE, show_default=True, help="Patch side in pixels")
@click.option("--out", required=True, type=click.Path(dir_okay=False, path_type=Path), help="Model file")
def niqe_fit(corpus, patch_size, out):
    """Fit a NIQE model on a pristine corpus."""
    model = api.run_niqe_fit(corpus, patch_size, out)
    if model.is_degenerate:
        log.warning("  The fitted covariance is rank deficient")
    log.info(f"✅ NIQE model written: {out}")
