# Copyright 2026 The wgsq-lib Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""wgsq command line.

    wgsq modes      guided-mode count and n_eff against top width
    wgsq qpm        poling period and SH tuning curve
    wgsq squeeze    squeezing / anti-squeezing at given pump powers
    wgsq fit        fit (η, a) to a measured pump sweep
    wgsq trace      LO phase-scanned zero-span analyzer trace
    wgsq freqsweep  measured squeezing against sideband frequency
    wgsq spectrum   parametric fluorescence spectrum and HWHM

CSV goes to ``--out`` or stdout. Reports go to stdout when ``--out`` is
given and to stderr otherwise.

Exit codes: 0 success, 2 usage, 3 parse or config error, 4 numerical or
model error, 5 file I/O error.
"""

import argparse
import contextlib
import csv
import logging
import os
import sys

import numpy as np

from wgsq import homodyne, modesolver, qpm, spectrum, squeezer
from wgsq.config import build_run_config, read_config
from wgsq.exceptions import (
    ConfigError,
    InconsistentBudgetError,
    ParseError,
    UsageError,
    WgsqException,
)
from wgsq.extractors.pump_sweep import PumpSweepCsv
from wgsq.materials import get_material, load_materials
from wgsq.units import hz_to_thz, mw_to_w, um_to_nm, w_to_mw

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_NUMERICAL = 4
EXIT_IO = 5


def _fmt(value, spec=".10g"):
    return format(float(value), spec)


@contextlib.contextmanager
def _output(args):
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as f:
            yield csv.writer(f, lineterminator="\n")
    else:
        yield csv.writer(sys.stdout, lineterminator="\n")


def _report(args, line):
    print(line, file=sys.stdout if args.out else sys.stderr)


def _run_config(args, subcommand, overrides=None):
    doc = read_config(args.config)
    return build_run_config(subcommand, doc, overrides=overrides, seed=args.seed)


def cmd_modes(args):
    cfg = _run_config(
        args,
        "modes",
        {
            "wavelength_um": args.wavelength,
            "widths_um": args.widths,
            "geometry.resolution": args.resolution,
            "field_dir": args.field_dir,
        },
    )
    section = cfg.section
    if not section.widths_um:
        raise UsageError("width list is empty")

    geom = section.geometry
    geometry = geom.build(cfg.materials_file)
    sweep = modesolver.mode_count_sweep(
        geometry,
        section.wavelength_um,
        section.widths_um,
        resolution=geom.resolution,
        padding=geom.padding_um,
        n_modes=section.n_modes,
        workers=section.workers,
    )

    with _output(args) as writer:
        writer.writerow(
            ["top_width_um", "n_guided"]
            + ["n_eff_{}".format(i + 1) for i in range(section.n_modes)]
        )
        for width, _, modes in sweep:
            cells = [_fmt(mode.effective_index, ".10f") for mode in modes]
            cells += [""] * (section.n_modes - len(modes))
            writer.writerow([_fmt(width, ".4f"), len(modes)] + cells)

    if section.field_dir:
        os.makedirs(section.field_dir, exist_ok=True)
        for width, grid, modes in sweep:
            for mode in modes:
                path = os.path.join(
                    section.field_dir,
                    "mode_w{:.3f}_m{}.txt".format(width, mode.order_label),
                )
                modesolver.write_mode_field(path, grid, mode)

    if args.summary:
        single = [width for width, _, modes in sweep if len(modes) == 1]
        multi = [width for width, _, modes in sweep if len(modes) >= 2]
        _report(
            args,
            "single-mode up to {} μm, multimode from {} μm".format(
                max(single) if single else "-", min(multi) if multi else "-"
            ),
        )


def cmd_qpm(args):
    cfg = _run_config(
        args,
        "qpm",
        {"wavelength_um": args.wavelength, "device_length_m": args.length},
    )
    section = cfg.section
    geom = section.geometry
    geometry = geom.build(cfg.materials_file)

    lam = section.wavelength_um
    span = section.span_nm * 1e-3
    fundamental = modesolver.dispersion_sweep(
        geometry,
        np.linspace(lam - span, lam + span, section.table_points),
        resolution=geom.resolution,
        padding=geom.padding_um,
    )
    second_harmonic = modesolver.dispersion_sweep(
        geometry,
        np.linspace(0.5 * (lam - span), 0.5 * (lam + span), section.table_points),
        resolution=geom.resolution,
        padding=geom.padding_um,
    )
    spec = qpm.spec_from_tables(fundamental, second_harmonic, lam, section.device_length_m)

    wavelengths = np.linspace(lam - span, lam + span, section.points)
    curve = qpm.tuning_curve(spec, (fundamental, second_harmonic), wavelengths)

    with _output(args) as writer:
        writer.writerow(["wavelength_nm", "normalized_efficiency"])
        for wavelength, value in zip(um_to_nm(wavelengths), curve):
            writer.writerow([_fmt(wavelength, ".4f"), _fmt(value, ".8f")])

    _report(args, "poling_period_um = {:.4f}".format(spec.poling_period))
    _report(args, "device_length_m = {:.4g}".format(spec.device_length))
    _report(args, "design_wavelength_um = {:.4f}".format(spec.fundamental_wavelength))
    _report(args, "fwhm_nm = {:.4f}".format(um_to_nm(qpm.curve_fwhm(wavelengths, curve))))
    if section.sh_power_uw is not None:
        efficiency = qpm.sh_efficiency_normalized(
            mw_to_w(section.fundamental_power_mw), section.sh_power_uw * 1e-6
        )
        _report(
            args,
            "sh_efficiency = {:.4g} /W = {:.1f} %/W".format(
                efficiency.per_watt, efficiency.percent_per_watt
            ),
        )


def cmd_squeeze(args):
    cfg = _run_config(
        args,
        "squeeze",
        {
            "squeezer.eta": args.eta,
            "squeezer.a_percent_per_watt": args.a_pct,
            "pump_mw": args.pump_mw,
        },
    )
    section = cfg.section
    params = section.squeezer.params()
    if section.budget is not None:
        eta = squeezer.eta_from_budget(section.budget.budget())
        logger.info("eta %.4f from loss budget", eta)
        params = squeezer.SqueezerParams(eta=eta, a=params.a)

    if not section.pump_mw:
        raise UsageError("pump power list is empty")

    squeezing, antisqueezing = squeezer.model_curve(params, mw_to_w(section.pump_mw))
    with _output(args) as writer:
        writer.writerow(["pump_mw", "squeezing_db", "antisqueezing_db"])
        for row in zip(section.pump_mw, squeezing, antisqueezing):
            writer.writerow([_fmt(row[0], ".4f"), _fmt(row[1], ".6f"), _fmt(row[2], ".6f")])

    if args.summary:
        _report(
            args,
            "eta = {:.4f}, a = {:.1f} %/W, floor = {:.2f} dB".format(
                params.eta, params.a_percent_per_watt, squeezer.squeezing_floor_db(params.eta)
            ),
        )


def cmd_fit(args):
    cfg = _run_config(args, "fit", {"sweep_csv": args.sweep, "l_hd": args.l_hd})
    section = cfg.section
    if not section.sweep_csv:
        raise UsageError("no sweep file given (--sweep or fit.sweep_csv)")

    extracted = PumpSweepCsv.extract(section.sweep_csv)
    result = squeezer.fit_squeezer(extracted.records, max_iterations=section.max_iterations)
    params = result.params
    errors = result.standard_errors

    _report(args, "eta = {:.4f} +/- {:.4f}".format(params.eta, errors[0]))
    _report(
        args,
        "a = {:.1f} %/W +/- {:.1f}".format(params.a_percent_per_watt, errors[1] * 100.0),
    )
    _report(args, "rms_residual_db = {:.4f}".format(result.rms_db))
    _report(
        args,
        "covariance_diag = {:.4g}, {:.4g}".format(*np.diag(result.covariance)),
    )
    try:
        l_wg = squeezer.infer_waveguide_loss(params.eta, section.l_hd)
        _report(args, "l_wg = {:.4f} (l_hd = {:.4f})".format(l_wg, section.l_hd))
    except InconsistentBudgetError as err:
        _report(args, "l_wg = inconsistent ({})".format(err))

    powers_mw = np.linspace(0.0, section.curve_max_mw, section.curve_points)
    squeezing, antisqueezing = squeezer.model_curve(params, mw_to_w(powers_mw))
    with _output(args) as writer:
        writer.writerow(["pump_mw", "squeezing_db", "antisqueezing_db"])
        for row in zip(powers_mw, squeezing, antisqueezing):
            writer.writerow([_fmt(row[0], ".4f"), _fmt(row[1], ".6f"), _fmt(row[2], ".6f")])


def cmd_trace(args):
    cfg = _run_config(args, "trace", {"pump_mw": args.pump_mw, "scan.duration": args.duration})
    section = cfg.section
    trace = homodyne.phase_scan_trace(
        section.squeezer.params(),
        mw_to_w(section.pump_mw),
        section.scan,
        section.analyzer,
        seed=cfg.seed,
    )

    with _output(args) as writer:
        writer.writerow(["time_s", "power_dbm"])
        for t, p in zip(trace.time, trace.power_dbm):
            writer.writerow([_fmt(t, ".6f"), _fmt(p, ".4f")])

    if args.summary:
        relative = trace.relative_db()
        _report(
            args,
            "min {:+.2f} dB, max {:+.2f} dB relative to shot ({:.1f} dBm)".format(
                relative.min(), relative.max(), section.analyzer.shot_level_dbm
            ),
        )


def cmd_freqsweep(args):
    detector = None
    if args.corner_mhz is not None:
        detector = {"type": "two_pole", "corner_hz": args.corner_mhz * 1e6}
    cfg = _run_config(args, "freqsweep", {"pump_mw": args.pump_mw, "detector": detector})
    section = cfg.section
    frequencies = np.linspace(section.start_mhz, section.stop_mhz, section.points) * 1e6
    sweep = homodyne.measured_squeezing_vs_frequency(
        section.squeezer.params(),
        mw_to_w(section.pump_mw),
        section.detector.build(),
        section.circuit_noise.build(),
        frequencies,
        analyzer=section.analyzer,
    )

    with _output(args) as writer:
        writer.writerow(
            ["freq_hz", "squeezing_db", "antisqueezing_db", "shot_dbm", "circuit_dbm"]
        )
        for row in zip(
            sweep.frequencies,
            sweep.squeezing_db,
            sweep.antisqueezing_db,
            sweep.shot_dbm,
            sweep.circuit_dbm,
        ):
            writer.writerow([_fmt(row[0], ".6e")] + [_fmt(v, ".4f") for v in row[1:]])

    if args.summary:
        limit = homodyne.threshold_frequency(sweep, section.threshold_db)
        _report(
            args,
            "squeezing beyond {:.1f} dB up to {}".format(
                section.threshold_db,
                "-" if limit is None else "{:.0f} MHz".format(limit * 1e-6),
            ),
        )


def _spectrum_dispersion(section, materials_file, g0):
    center = section.center_thz * 1e12
    if section.beta2 is not None:
        beta2 = section.beta2
    elif section.target_hwhm_thz is not None:
        beta2 = spectrum.beta2_for_hwhm(section.target_hwhm_thz * 1e12, section.length_m, g0)
        logger.info("beta2 %.4g s^2/m calibrated to %.3g THz", beta2, section.target_hwhm_thz)
    else:
        extra = load_materials(materials_file) if materials_file else None
        return spectrum.dispersion_from_material(
            get_material(section.material, extra),
            section.length_m,
            center_frequency=center,
            beta4=section.beta4,
            max_detuning=section.span_thz * 1e12,
        )
    return spectrum.DispersionLocal(
        beta2=beta2,
        beta4=section.beta4,
        length=section.length_m,
        center_frequency=center,
        max_detuning=section.span_thz * 1e12,
    )


def cmd_spectrum(args):
    cfg = _run_config(
        args,
        "spectrum",
        {
            "pump_mw": args.pump_mw,
            "beta2": args.beta2,
            "target_hwhm_thz": args.target_hwhm_thz,
            "osa_resolution_nm": args.osa,
        },
    )
    section = cfg.section
    a = section.squeezer.params().a
    g0 = float(np.sqrt(a * mw_to_w(section.pump_mw)))
    disp = _spectrum_dispersion(section, cfg.materials_file, g0)

    detunings = spectrum.detuning_grid(section.span_thz * 1e12, section.points)
    gain = spectrum.bogoliubov_gain(g0, disp, detunings)
    result = spectrum.fluorescence_spectrum(gain, section.osa_resolution_nm)

    peak = result.psd.max()
    psd = result.psd / peak if peak > 0 else result.psd
    with _output(args) as writer:
        writer.writerow(["optical_freq_thz", "psd_rel"])
        for f, p in zip(hz_to_thz(result.optical_frequencies), psd):
            writer.writerow([_fmt(f, ".6f"), _fmt(p, ".8e")])

    if args.summary:
        hwhm = spectrum.hwhm_bandwidth(result)
        _report(args, "HWHM {:#.3g} THz".format(hz_to_thz(hwhm)))


def _float_list(text):
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated numbers: {}".format(text))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--out", help="CSV output path (default: stdout)")
    common.add_argument("--seed", type=int, help="random seed for simulated noise")
    common.add_argument("--summary", action="store_true", help="print a one-line summary")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="wgsq", description="Waveguide squeezed-light design and analysis"
    )
    sub = parser.add_subparsers(dest="subcommand")

    p = sub.add_parser("modes", parents=[common], help="mode count against top width")
    p.add_argument("--wavelength", type=float, help="μm")
    p.add_argument("--widths", type=_float_list, help="comma-separated top widths, μm")
    p.add_argument("--resolution", type=float, help="cells per μm")
    p.add_argument("--field-dir", help="write mode fields to this directory")
    p.set_defaults(func=cmd_modes)

    p = sub.add_parser("qpm", parents=[common], help="poling period and tuning curve")
    p.add_argument("--wavelength", type=float, help="μm")
    p.add_argument("--length", type=float, help="device length, m")
    p.set_defaults(func=cmd_qpm)

    p = sub.add_parser("squeeze", parents=[common], help="squeezing against pump power")
    p.add_argument("--eta", type=float)
    p.add_argument("--a-pct", type=float, help="SH efficiency, %%/W")
    p.add_argument("--pump-mw", type=_float_list, help="comma-separated powers, mW")
    p.set_defaults(func=cmd_squeeze)

    p = sub.add_parser("fit", parents=[common], help="fit a measured pump sweep")
    p.add_argument("--sweep", help="pump_mw,squeezing_db,antisqueezing_db CSV")
    p.add_argument("--l-hd", type=float, help="detection loss")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("trace", parents=[common], help="phase-scanned analyzer trace")
    p.add_argument("--pump-mw", type=float)
    p.add_argument("--duration", type=float, help="s")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("freqsweep", parents=[common], help="squeezing against sideband frequency")
    p.add_argument("--pump-mw", type=float)
    p.add_argument("--corner-mhz", type=float, help="two-pole detector corner, MHz")
    p.set_defaults(func=cmd_freqsweep)

    p = sub.add_parser("spectrum", parents=[common], help="fluorescence spectrum and HWHM")
    p.add_argument("--pump-mw", type=float)
    p.add_argument("--beta2", type=float, help="s^2/m")
    p.add_argument("--target-hwhm-thz", type=float)
    p.add_argument("--osa", type=float, help="analyzer resolution, nm")
    p.set_defaults(func=cmd_spectrum)

    return parser


def configure_logging(verbosity):
    level = logging.WARNING - 10 * min(verbosity, 2)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if getattr(args, "func", None) is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    configure_logging(args.verbose)

    try:
        args.func(args)
    except UsageError as err:
        print("wgsq: usage error: {}".format(err), file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ConfigError) as err:
        print("wgsq: {}".format(err), file=sys.stderr)
        return EXIT_CONFIG
    except WgsqException as err:
        print("wgsq: {}: {}".format(type(err).__name__, err), file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as err:
        print("wgsq: {}".format(err), file=sys.stderr)
        return EXIT_IO

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
