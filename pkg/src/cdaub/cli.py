"""Command-line front end: ``cdaub <subcommand> ...``.

Data goes to ``--output`` (stdout when omitted); human-readable summaries
go to stderr.  Exit status: 0 success, 2 usage error, 1 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

import numpy as np

from . import closed_form, daub_reference, inharmonic, scalogram, sine_fit, spectrum
from .errors import DaubletError
from .model import SumOfSines
from .waveform import SampledWaveform, fmt


class UsageError(Exception):
    pass


def _family_order(text: str) -> int:
    m = re.fullmatch(r"c?db(\d+)", text.strip().lower())
    if not m:
        raise argparse.ArgumentTypeError(f"expected a family like db4, got {text!r}")
    return int(m.group(1))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(n: int):
    def parse(text: str) -> list[float]:
        try:
            vals = [float(x) for x in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}") from None
        if len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
        return vals

    return parse


def _load_model(path: str, flag: str) -> SumOfSines:
    try:
        return SumOfSines.read_json(path)
    except OSError as exc:
        raise UsageError(f"{flag}: cannot read {path}: {exc.strerror}") from None
    except DaubletError as exc:
        raise UsageError(f"{flag}: {path}: {exc}") from None


def _load_wave(path: str, flag: str) -> SampledWaveform:
    try:
        return SampledWaveform.read_csv(path)
    except OSError as exc:
        raise UsageError(f"{flag}: cannot read {path}: {exc.strerror}") from None
    except DaubletError as exc:
        raise UsageError(f"{flag}: {path}: {exc}") from None


def _model_from(args) -> SumOfSines:
    if getattr(args, "preset", None):
        try:
            return closed_form.preset(args.preset)
        except DaubletError as exc:
            raise UsageError(f"--preset: {exc}") from None
    return _load_model(args.model, "--model")


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- subcommands ---------------------------------------------------------------


def cmd_gen(args) -> None:
    wave = daub_reference.reference_waveform(args.family, args.kind, args.levels)
    _emit(wave.to_csv(), args.output)


def cmd_fit(args) -> None:
    if args.target:
        target = _load_wave(args.target, "--target")
        family = None
    else:
        target = daub_reference.reference_waveform(args.family, args.kind, args.levels)
        family = f"db{args.family}"
    init = None
    if args.init != "auto":
        init = _load_model(args.init, "--init")
        if len(init) != args.terms:
            raise UsageError(f"--init: model has {len(init)} terms but --terms is {args.terms}")
    support = (len(target) - 1) * target.dt if args.target is None else None
    model, report = sine_fit.lm_fit(
        target, args.terms, init=init, options=sine_fit.FitOptions(max_iters=args.max_iters), support_T=support
    )
    model = SumOfSines(model.terms, model.support_T, family=family or (init.family if init else None), kind=args.kind)
    _emit(model.to_json(), args.output)
    _say(
        f"r_squared={fmt(report.r_squared)} rmse={fmt(report.rmse)} "
        f"iterations={report.iterations} converged={str(report.converged).lower()}"
    )


def cmd_eval(args) -> None:
    model = _model_from(args)
    if args.dt is None:
        args.dt = model.support_T / 1024
    wave = closed_form.sample_gated(model, args.dt)
    _emit(wave.to_csv(), args.output)
    order = None
    if model.family:
        m = re.fullmatch(r"c?db(\d+)", model.family)
        order = int(m.group(1)) if m else None
    if order is not None and model.kind in ("wavelet", "scaling") and model.support_T == 2 * order - 1:
        ref = daub_reference.reference_waveform(order, model.kind, args.levels)
        g = sine_fit.goodness(model, _drop_endpoint(ref))
        peak = float(np.max(np.abs(ref.values)))
        gap = float(np.max(np.abs(closed_form.eval_gated(model, ref.times) - ref.values)))
        _say(
            f"vs cascade db{order} {model.kind} J={args.levels}: r_squared={fmt(g.r_squared)} "
            f"rmse={fmt(g.rmse)} max_abs_over_peak={fmt(gap / peak)}"
        )


def _drop_endpoint(wave: SampledWaveform) -> SampledWaveform:
    # the closing grid point t = T lies outside the half-open gate
    return SampledWaveform(wave.t0, wave.dt, wave.values[:-1])


def cmd_spectrum(args) -> None:
    model = _model_from(args)
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    if args.omega_max is not None and not args.omega_max > 0:
        raise UsageError("--omega-max must be positive")
    if args.method == "dft":
        wave = closed_form.sample_gated(model, model.support_T / args.samples)
        grid = spectrum.dft_oracle(wave, args.pad * len(wave))
        hi = args.omega_max if args.omega_max is not None else 3.0 * float(np.max(np.abs(model.b)))
        grid = grid.restrict(0.0, hi)
    else:
        grid = spectrum.evaluate(model, args.method, spectrum.default_grid(model, args.omega_max, args.points))
    lo, hi = args.eq16_band
    deviation = spectrum.eq16_deviation(model, lo, hi)
    if args.format == "json":
        doc = {
            "method": args.method,
            "eq16_relative_l2": {"band": [lo, hi], "value": deviation},
            "omega": [float(w) for w in grid.omegas],
            "magnitude": [float(v) for v in grid.magnitude],
        }
        if not grid.magnitude_only:
            doc["real"] = [float(v.real) for v in grid.values]
            doc["imag"] = [float(v.imag) for v in grid.values]
        _emit(json.dumps(doc, indent=1) + "\n", args.output)
    else:
        _emit(grid.to_csv(), args.output)
    _say(f"eq16 relative L2 distance to exact |spectrum| on [{fmt(lo)}, {fmt(hi)}]: {fmt(deviation)}")


def cmd_inharm(args) -> None:
    model = _model_from(args).sorted_by_frequency()
    if args.k_assignment is not None and len(args.k_assignment) != len(model):
        raise UsageError(f"--k-assignment: {len(args.k_assignment)} entries for {len(model)} terms")
    try:
        rows = inharmonic.inharmonic_table(model, args.k_assignment)
    except DaubletError as exc:
        raise UsageError(f"--k-assignment: {exc}") from None
    _emit(inharmonic.table_to_csv(rows), args.output)


def _parse_scales(text: str, signal: SampledWaveform, Fc: float) -> scalogram.ScaleGrid:
    if text == "auto":
        return scalogram.default_scales(signal, Fc)
    m = re.fullmatch(r"log:([^:]+):([^:]+):(\d+)", text)
    try:
        if m:
            return scalogram.ScaleGrid(np.geomspace(float(m[1]), float(m[2]), int(m[3])), signal.dt)
        return scalogram.ScaleGrid([float(x) for x in text.split(",")], signal.dt)
    except (ValueError, DaubletError) as exc:
        raise UsageError(f"--scales: {exc}") from None


def cmd_cwt(args) -> None:
    if args.signal:
        signal = _load_wave(args.signal, "--signal")
    else:
        f1, f2, dur, dt = args.two_tone
        try:
            signal = scalogram.two_tone_signal(f1, f2, dur, dt)
        except DaubletError as exc:
            raise UsageError(f"--two-tone: {exc}") from None
    try:
        kernel = closed_form.preset(args.preset)
    except DaubletError as exc:
        raise UsageError(f"--preset: {exc}") from None
    try:
        Fc = float(args.fc)
    except ValueError:
        if args.fc not in ("dominant_term", "dft_peak"):
            raise UsageError(f"--fc: expected dominant_term, dft_peak or a number, got {args.fc!r}") from None
        Fc = scalogram.center_frequency(kernel, args.fc)
    if not Fc > 0:
        raise UsageError("--fc must be positive")
    scales = _parse_scales(args.scales, signal, Fc)
    gram = scalogram.cwt(signal, scales, kernel)
    report = scalogram.detect_tones(gram, Fc, min(args.count, gram.scales.size), sampling_dt=scales.sampling_dt)
    if args.output:
        _emit(scalogram.scalogram_to_csv(gram), args.output)
    if args.tones or not args.output:
        _emit(report.to_json(), args.tones)
    flag = "" if report.complete else f" (only {len(report.tones)} of {args.count} found)"
    _say("tones: " + ", ".join(fmt(t.frequency) for t in report.tones) + flag)


def cmd_tables(args) -> None:
    keys = [
        (f, k)
        for f, k in closed_form.PRESET_KEYS
        if (args.family is None or f == args.family) and (args.kind is None or k == args.kind)
    ]
    if args.format == "json":
        docs = []
        for f, k in keys:
            rows = closed_form.preset_text_rows(f, k)
            docs.append(
                {
                    "family": f,
                    "kind": k,
                    "support": int(closed_form.preset(f, k).support_T),
                    "sha256": closed_form.preset_checksum(f, k),
                    "terms": [{"a": a, "b": b, "c": c} for a, b, c in rows],
                }
            )
        _emit(json.dumps(docs, indent=1) + "\n", args.output)
        return
    lines = ["family,kind,k,a,b,c"]
    sums = []
    for f, k in keys:
        for i, (a, b, c) in enumerate(closed_form.preset_text_rows(f, k), 1):
            lines.append(f"{f},{k},{i},{a},{b},{c}")
        sums.append(f"# sha256 {f}-{k} {closed_form.preset_checksum(f, k)}")
    _emit("\n".join(lines + sums) + "\n", args.output)


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt_cls = argparse.ArgumentDefaultsHelpFormatter
    p = argparse.ArgumentParser(prog="cdaub", description="Closed-form Daubechies wavelet toolkit.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    def add(name, help_):
        sp = sub.add_parser(name, help=help_, description=help_, formatter_class=fmt_cls)
        sp.add_argument("-o", "--output", default=None, help="output file (stdout if omitted)")
        return sp

    presets = [f"{f}-{k}" for f, k in closed_form.PRESET_KEYS]

    sp = add("gen", "cascade-algorithm waveform as CSV (t,value)")
    sp.add_argument("--family", type=_family_order, required=True, help="db1 .. db10")
    sp.add_argument("--kind", choices=("wavelet", "scaling"), default="wavelet", help="waveform kind")
    sp.add_argument("--levels", type=int, default=10, help="dyadic levels J (1..14)")
    sp.set_defaults(func=cmd_gen)

    sp = add("fit", "Levenberg-Marquardt sum-of-sines fit, written as a JSON model")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", type=_family_order, default=None, help="fit the cascade waveform of this dbN")
    src.add_argument("--target", default=None, help="fit a waveform CSV instead of a cascade waveform")
    sp.add_argument("--kind", choices=("wavelet", "scaling"), default="wavelet", help="waveform kind")
    sp.add_argument("--levels", type=int, default=10, help="cascade levels J for the target")
    sp.add_argument("--terms", type=int, default=None, help="number of sine terms K (default 8 wavelet, 10 scaling)")
    sp.add_argument("--init", default="auto", help="'auto' (spectral peaks) or a JSON model file")
    sp.add_argument("--max-iters", type=int, default=sine_fit.FitOptions.max_iters, help="iteration cap")
    sp.set_defaults(func=cmd_fit)

    sp = add("eval", "sample a gated closed-form model as CSV (t,value)")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=presets, help="shipped coefficient set")
    src.add_argument("--model", help="JSON model file")
    sp.add_argument("--dt", type=float, default=None, help="sampling step (default T/1024)")
    sp.add_argument("--levels", type=int, default=10, help="cascade levels J for the comparison report")
    sp.set_defaults(func=cmd_eval)

    sp = add("spectrum", "spectrum of a gated model as CSV (omega,real,imag,magnitude)")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=presets, help="shipped coefficient set")
    src.add_argument("--model", help="JSON model file")
    sp.add_argument("--method", choices=("exact", "eq16", "dft"), default="exact", help="spectrum evaluator")
    sp.add_argument("--omega-max", type=float, default=None, help="upper end of the grid (default 3*max b)")
    sp.add_argument("--points", type=int, default=spectrum.DEFAULT_POINTS, help="grid points for exact/eq16")
    sp.add_argument("--samples", type=int, default=1 << 14, help="dft: samples across the support")
    sp.add_argument("--pad", type=int, default=4, help="dft: zero-padding factor")
    sp.add_argument("--eq16-band", type=_float_list(2), default=[0.5, 12.0], help="band for the eq16 deviation report")
    sp.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    sp.set_defaults(func=cmd_spectrum)

    sp = add("inharm", "deviation of sorted frequencies from the harmonic grid, as CSV")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=presets, help="shipped coefficient set")
    src.add_argument("--model", help="JSON model file")
    sp.add_argument("--k-assignment", type=_int_list, default=None, help="comma-separated k per term (default: nearest)")
    sp.set_defaults(func=cmd_inharm)

    sp = add("cwt", "closed-form CWT scalogram and tone detection")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--signal", help="waveform CSV (t,value)")
    src.add_argument("--two-tone", type=_float_list(4), metavar="F1,F2,DUR,DT", help="build sin(2pi f1 t)+sin(2pi f2 t)")
    sp.add_argument("--preset", choices=presets, default="db4-wavelet", help="kernel")
    sp.add_argument("--scales", default="auto", help="'auto' (64 log-spaced), 'log:MIN:MAX:NUM' or a comma list")
    sp.add_argument("--fc", default="dominant_term", help="centre frequency: dominant_term, dft_peak or a number")
    sp.add_argument("--count", type=int, default=2, help="number of tones to report")
    sp.add_argument("--tones", default=None, help="tone report JSON file (stdout when no --output)")
    sp.set_defaults(func=cmd_cwt)

    sp = add("tables", "the shipped coefficient presets, verbatim, with sha256 checksums")
    sp.add_argument("--family", choices=closed_form.FAMILIES, default=None, help="restrict to one family")
    sp.add_argument("--kind", choices=closed_form.KINDS, default=None, help="restrict to one kind")
    sp.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    sp.set_defaults(func=cmd_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    if args.command == "fit" and args.terms is None:
        args.terms = 8 if args.kind == "wavelet" else 10
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cdaub {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except DaubletError as exc:
        print(f"cdaub {args.command}: numeric failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
