#!/usr/bin/env python3

"""
Formatting utilities for the EOFP toolkit

Every report has two renderings: Rich tables for people and line-oriented
key=value text for scripts (``--machine``). Both are built from the
service DTOs only.
"""

from collections.abc import Sequence

from rich.table import Table

from ..core.float_codec import bit_string, decompose
from ..core.model_store import ContainerKind
from ..models.quant import EXPONENT_BIAS
from ..models.reports import EpochRecord, EvaluationResult, SizeReport
from ..services.dtos import InspectResult, QuantizeResult, TrainingOutcome
from ..training.sweep import SweepTable

BAR_CHAR = "█"


def describe_kind(kind: ContainerKind, n: int) -> str:
    """One-line description of a container kind."""
    if kind is ContainerKind.RAW:
        return "unquantized, n=0"
    if kind is ContainerKind.MANTISSA:
        return f"mantissa-quantized, n={n}, exponent stage skipped"
    return f"EOFP, n={n}"


def format_pct(value: float) -> str:
    return f"{value:.2f}%"


def size_report_table(report: SizeReport) -> Table:
    """Size of the model at each stage, as in the compression summary."""
    table = Table(title="Model size", show_header=True, header_style="bold bright_blue")
    table.add_column("Stage", style="bright_cyan")
    table.add_column("Bits/param", justify="right")
    table.add_column("Size (KB)", justify="right")
    table.add_column("Rounded (KB)", justify="right")
    table.add_column("Of original", justify="right")

    table.add_row(
        "Full precision", "32", f"{report.full_precision_kb:,.1f}", f"{report.full_precision_kb_int:,}", "100.00%"
    )
    table.add_row(
        "Mantissa-quantized",
        str(32 - report.n),
        f"{report.mantissa_quantized_kb:,.1f}",
        f"{report.mantissa_quantized_kb_int:,}",
        format_pct(report.mantissa_fraction_pct),
    )
    table.add_row(
        "Mantissa+exponent",
        str(report.exponent_stage_bits),
        f"{report.exponent_quantized_kb:,.1f}",
        f"{report.exponent_quantized_kb_int:,}",
        format_pct(report.final_fraction_pct),
    )
    table.caption = (
        f"{report.parameter_count:,} parameters, n={report.n}, len={report.length}; "
        f"ratio {report.compression_ratio:.2f}x / {report.total_compression_ratio:.2f}x"
    )
    return table


def size_report_lines(report: SizeReport) -> list[str]:
    return [
        f"parameters={report.parameter_count}",
        f"n={report.n}",
        f"len={report.length}",
        f"full_kb={report.full_precision_kb_int}",
        f"mantissa_kb={report.mantissa_quantized_kb_int}",
        f"final_kb={report.exponent_quantized_kb_int}",
        f"full_kb_exact={report.full_precision_kb:.1f}",
        f"mantissa_kb_exact={report.mantissa_quantized_kb:.1f}",
        f"final_kb_exact={report.exponent_quantized_kb:.1f}",
        f"mantissa_fraction_pct={report.mantissa_fraction_pct:.2f}",
        f"final_fraction_pct={report.final_fraction_pct:.2f}",
        f"compression_ratio={report.compression_ratio:.2f}",
        f"total_compression_ratio={report.total_compression_ratio:.2f}",
    ]


def quantize_lines(result: QuantizeResult) -> list[str]:
    lines = [
        f"output={result.output_path}",
        f"bits={result.spec.bit_width}",
        f"mode={result.spec.mode.value}",
        f"exponent_stage={'yes' if result.exponent_stage else 'no'}",
        f"tensors={result.tensor_count}",
        f"bytes={result.bytes_written}",
    ]
    if result.exponent_range is not None:
        lines.append(f"range={result.exponent_range}")
    if result.report is not None:
        lines.extend(size_report_lines(result.report))
    else:
        lines.append(f"parameters={result.parameter_count}")
    return lines


def inspect_table(result: InspectResult) -> Table:
    table = Table(title=f"{result.path.name}", show_header=True, header_style="bold bright_blue")
    table.add_column("Field", style="bright_cyan")
    table.add_column("Value")

    table.add_row("Format", describe_kind(result.kind, result.n))
    table.add_row("Version", str(result.version))
    table.add_row("Tensors", str(len(result.shapes)))
    table.add_row("Shapes", ", ".join("x".join(map(str, s)) or "scalar" for s in result.shapes) or "-")
    table.add_row("Parameters", f"{result.parameter_count:,}")
    table.add_row("File size", f"{result.file_size:,} bytes")
    table.add_row("{max, min, len}", str(result.exponent_range) if result.exponent_range else "-")
    return table


def inspect_lines(result: InspectResult) -> list[str]:
    lines = [
        f"kind={result.kind.value}",
        f"description={describe_kind(result.kind, result.n)}",
        f"version={result.version}",
        f"n={result.n}",
        f"tensors={len(result.shapes)}",
    ]
    for i, shape in enumerate(result.shapes):
        lines.append(f"shape.{i}={'x'.join(map(str, shape))}")
    lines.append(f"parameters={result.parameter_count}")
    lines.append(f"file_bytes={result.file_size}")
    if result.exponent_range is not None:
        lines.append(f"range={result.exponent_range}")
        lines.append(f"max={result.exponent_range.max_exp}")
        lines.append(f"min={result.exponent_range.min_exp}")
        lines.append(f"len={result.exponent_range.length}")
    lines.append(f"hist.zero={result.zero_count}")
    lines.extend(f"hist.{exp}={count}" for exp, count in result.histogram.items())
    return lines


def histogram_lines(histogram: dict[int, int], zero_count: int, bar_width: int = 40) -> list[str]:
    """
    Text histogram of log2 parameter magnitudes.

    One row per exponent from the largest to the smallest, then a row for
    exact zeros; bar lengths are scaled to the largest bucket.
    """
    rows = [(f"{exp:>5}", count) for exp, count in sorted(histogram.items(), reverse=True)]
    rows.append((" zero", zero_count))
    peak = max((count for _, count in rows), default=0)
    lines = ["log2|p|  count"]
    for label, count in rows:
        bar = BAR_CHAR * (round(count * bar_width / peak) if peak else 0)
        if count and not bar:
            bar = "▏"
        lines.append(f"{label} {count:>9}  {bar}")
    return lines


def bit_layout_table(value: float) -> Table:
    """Bit pattern and fields of one float32 value, MSB first."""
    fields = decompose(value)
    bits = bit_string(value)
    table = Table(title=f"float32 {value!r}", show_header=True, header_style="bold bright_blue")
    table.add_column("Field", style="bright_cyan")
    table.add_column("Bits")
    table.add_column("Value", justify="right")
    table.add_row("sign", bits[0], str(fields.sign))
    table.add_row("exponent", bits[1:9], f"{fields.exponent} (2^{fields.exponent - EXPONENT_BIAS})")
    table.add_row("mantissa", bits[9:], str(fields.mantissa))
    return table


def bit_layout_lines(value: float) -> list[str]:
    fields = decompose(value)
    bits = bit_string(value)
    return [
        f"value={value!r}",
        f"bits={bits}",
        f"sign={fields.sign}",
        f"exponent={fields.exponent}",
        f"unbiased_exponent={fields.exponent - EXPONENT_BIAS}",
        f"mantissa={fields.mantissa}",
    ]


def history_table(history: Sequence[EpochRecord]) -> Table:
    table = Table(title="Training history", show_header=True, header_style="bold bright_blue")
    table.add_column("Epoch", justify="right", style="bright_cyan")
    table.add_column("Train MSE", justify="right")
    table.add_column("Val MSE", justify="right")
    table.add_column("Val SNR (dB)", justify="right")
    for record in history:
        table.add_row(
            str(record.epoch),
            f"{record.train_mse:.6g}",
            f"{record.val_mse:.6g}",
            f"{record.val_snr_db:.2f}",
        )
    return table


def evaluation_lines(evaluation: EvaluationResult) -> list[str]:
    return [
        f"val_mse={evaluation.mse!r}",
        f"output_snr_db={evaluation.output_snr_db!r}",
        f"input_snr_db={evaluation.input_snr_db!r}",
        f"snr_improvement_db={evaluation.snr_improvement_db!r}",
    ]


def training_lines(outcome: TrainingOutcome) -> list[str]:
    run = outcome.run
    lines = [
        f"seed={run.seed}",
        f"epochs={run.epochs}",
        f"n={'none' if run.n is None else run.n}",
        f"mode={run.mode.value}",
    ]
    lines.extend(evaluation_lines(outcome.evaluation))
    if outcome.exponent_stage_mse_delta is not None:
        lines.append(f"exponent_stage_mse_delta={outcome.exponent_stage_mse_delta!r}")
    if outcome.history_path is not None:
        lines.append(f"history={outcome.history_path}")
    if outcome.model_path is not None:
        lines.append(f"model={outcome.model_path}")
    return lines


def sweep_table(table: SweepTable) -> Table:
    """Bit-width rows, one column group per rounding mode."""
    modes = list(dict.fromkeys(cell.mode for cell in table.cells))
    widths = list(dict.fromkeys(cell.bit_width for cell in table.cells))
    masked = any(cell.post_training for cell in table.cells)
    out = Table(
        title=f"Bit-width sweep ({len(table.seeds)} seeds)",
        show_header=True,
        header_style="bold bright_blue",
    )
    out.add_column("Bits", justify="right", style="bright_cyan")
    out.add_column("n", justify="right")
    for mode in modes:
        out.add_column(f"{mode.value} MSE", justify="right")
        out.add_column(f"{mode.value} ΔSNR (dB)", justify="right")
        out.add_column(f"{mode.value} loss (dB)", justify="right")
        if masked:
            out.add_column(f"{mode.value} post-training loss (dB)", justify="right")
    for bits in widths:
        row = [str(bits), str(32 - bits)]
        for mode in modes:
            cell = table.cell(bits, mode)
            row.extend(
                [f"{cell.val_mse:.6g}", f"{cell.snr_improvement_db:.2f}", f"{cell.degradation_db:+.2f}"]
            )
            if masked:
                loss = cell.post_training_degradation_db
                row.append("-" if loss is None else f"{loss:+.2f}")
        out.add_row(*row)
    return out


def sweep_lines(table: SweepTable) -> list[str]:
    lines = [f"seeds={','.join(map(str, table.seeds))}"]
    for cell in table.cells:
        prefix = f"cell.{cell.bit_width}.{cell.mode.value}"
        lines.append(f"{prefix}.val_mse={cell.val_mse!r}")
        lines.append(f"{prefix}.snr_improvement_db={cell.snr_improvement_db!r}")
        lines.append(f"{prefix}.degradation_db={cell.degradation_db!r}")
        if cell.post_training:
            lines.append(f"{prefix}.post_training_snr_improvement_db={cell.post_training_snr_improvement_db!r}")
            lines.append(f"{prefix}.post_training_degradation_db={cell.post_training_degradation_db!r}")
    return lines
