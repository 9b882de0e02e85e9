#!/usr/bin/env python3

"""
Model file commands for the EOFP toolkit

Contains quantize, dequantize, inspect and size-report.
"""

import argparse
from pathlib import Path

from ..core.model_store import size_report
from ..exceptions import UsageError, ValidationError
from ..models.quant import FLOAT_BITS, MANTISSA_BITS, QuantMode, QuantSpec
from ..services.model_service import ModelService
from ..ui.adapter import UIProtocol
from ..ui.formatters import (
    bit_layout_lines,
    bit_layout_table,
    describe_kind,
    histogram_lines,
    inspect_lines,
    inspect_table,
    quantize_lines,
    size_report_lines,
    size_report_table,
)
from .base import BaseCommand, CommandResult

MIN_BITS = FLOAT_BITS - MANTISSA_BITS


def _bit_width(value: str) -> int:
    """argparse type for --bits: remaining bit width 9..32."""
    try:
        bits = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if not MIN_BITS <= bits <= FLOAT_BITS:
        raise argparse.ArgumentTypeError(f"bit width must be in [{MIN_BITS}, {FLOAT_BITS}], got {bits}")
    return bits


def _float32(value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None


class QuantizeCommand(BaseCommand):
    """Handle quantize: mantissa (and optionally exponent) quantization of a model file."""

    def get_name(self) -> str:
        return "quantize"

    def get_description(self) -> str:
        return "Quantize a model file and write it packed"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("input", type=Path, help="Model file (raw format)")
        parser.add_argument(
            "--bits", type=_bit_width, required=True, metavar="N",
            help="Remaining bit width per parameter (32 - n), 9..32",
        )
        parser.add_argument("--chop", action="store_true", help="Chop the dropped bits instead of rounding")
        parser.add_argument(
            "--no-exponent-stage", action="store_true", help="Keep 8-bit exponents (skip exponent quantization)"
        )
        parser.add_argument("-o", "--output", type=Path, help="Output path (default: INPUT with .eofp suffix)")

    def execute(self, args: argparse.Namespace, ui: UIProtocol) -> CommandResult:
        spec = QuantSpec.from_bit_width(args.bits, QuantMode.CHOP if args.chop else QuantMode.CONDITIONAL)
        output = args.output or self.config.default_output(args.input, self.config.packed_suffix)
        if Path(output).resolve() == Path(args.input).resolve():
            raise UsageError("output path equals input path; pass -o")

        service = ModelService(self.config)
        result = service.quantize_file(args.input, output, spec, exponent_stage=not args.no_exponent_stage)

        if self.machine_output(args):
            self.emit_lines(ui, quantize_lines(result))
        else:
            stage = "mantissa+exponent" if result.exponent_stage else "mantissa only"
            ui.show_success(
                f"Wrote {result.output_path} ({result.bytes_written:,} bytes, "
                f"{result.spec.bit_width}-bit {result.spec.mode.value}, {stage})"
            )
            if result.exponent_range is not None:
                ui.show_info(f"{{max, min, len}} = {result.exponent_range}")
            if result.report is not None:
                ui.show_table(size_report_table(result.report))
        return CommandResult.ok(data=result)


class DequantizeCommand(BaseCommand):
    """Handle dequantize: decode any container back to raw float32."""

    def get_name(self) -> str:
        return "dequantize"

    def get_description(self) -> str:
        return "Decode a packed model file to the raw full-precision format"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("input", type=Path, help="Packed model file")
        parser.add_argument("-o", "--output", type=Path, help="Output path (default: INPUT with .raw suffix)")

    def execute(self, args: argparse.Namespace, ui: UIProtocol) -> CommandResult:
        output = args.output or self.config.default_output(args.input, self.config.raw_suffix)
        if Path(output).resolve() == Path(args.input).resolve():
            raise UsageError("output path equals input path; pass -o")

        result = ModelService(self.config).dequantize_file(args.input, output)

        if self.machine_output(args):
            self.emit_lines(
                ui,
                [
                    f"output={result.output_path}",
                    f"source_kind={result.source_kind.value}",
                    f"n={result.n}",
                    f"tensors={result.tensor_count}",
                    f"parameters={result.parameter_count}",
                    f"bytes={result.bytes_written}",
                ],
            )
        else:
            ui.show_success(
                f"Wrote {result.output_path} ({result.parameter_count:,} parameters from "
                f"{describe_kind(result.source_kind, result.n)})"
            )
        return CommandResult.ok(data=result)


class InspectCommand(BaseCommand):
    """Handle inspect: header fields, exponent range and log2 histogram."""

    def get_name(self) -> str:
        return "inspect"

    def get_description(self) -> str:
        return "Show header fields, {max, min, len} and the log2 magnitude histogram"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("path", type=Path, nargs="?", help="Model file of any kind")
        parser.add_argument(
            "--bits-of", type=_float32, metavar="VALUE", help="Show the float32 bit layout of VALUE instead"
        )

    def execute(self, args: argparse.Namespace, ui: UIProtocol) -> CommandResult:
        machine = self.machine_output(args)
        if args.bits_of is not None:
            if args.path is not None:
                raise UsageError("pass either a model path or --bits-of, not both")
            if machine:
                self.emit_lines(ui, bit_layout_lines(args.bits_of))
            else:
                ui.show_table(bit_layout_table(args.bits_of))
            return CommandResult.ok()
        if args.path is None:
            raise UsageError("a model path or --bits-of VALUE is required")

        result = ModelService(self.config).inspect_file(args.path)
        if machine:
            self.emit_lines(ui, inspect_lines(result))
        else:
            ui.emit(describe_kind(result.kind, result.n))
            ui.show_table(inspect_table(result))
            self.emit_lines(
                ui, histogram_lines(result.histogram, result.zero_count, self.config.histogram_bar_width)
            )
        return CommandResult.ok(data=result)


class SizeReportCommand(BaseCommand):
    """Handle size-report: stage sizes for a parameter count without a model file."""

    def get_name(self) -> str:
        return "size-report"

    def get_description(self) -> str:
        return "Print model sizes per quantization stage for P parameters"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--params", type=int, required=True, metavar="P", help="Parameter count")
        parser.add_argument("--bits", type=_bit_width, required=True, metavar="N", help="Remaining bit width")
        parser.add_argument("--len", type=int, required=True, dest="length", metavar="L", help="Exponent code length")

    def execute(self, args: argparse.Namespace, ui: UIProtocol) -> CommandResult:
        try:
            report = size_report(args.params, FLOAT_BITS - args.bits, args.length)
        except ValidationError as e:
            raise UsageError(str(e)) from e
        if self.machine_output(args):
            self.emit_lines(ui, size_report_lines(report))
        else:
            ui.show_table(size_report_table(report))
        return CommandResult.ok(data=report)
