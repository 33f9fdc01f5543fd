"""Batch command-line front door.

Subcommands: classify a set file, build a construction, run spacing-shift
analyses (return-set, nuv-check, mixing-report), compute cover-complexity
profiles, and run the built-in verification suite.  Identical invocations
produce byte-identical structured output; text output may add timings.

Exit codes: 0 success, 1 verdict or assertion failure, 2 input error.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .constructions import CONSTRUCTION_KINDS, ConstructionSpec, build_construction
from .covers import auto_cover, complexity_profile, parse_cover_text
from .errors import SpacingLabError
from .families import Detector, ScaleParams, classify
from .intset import WindowedSet, format_set_text, parse_set_text
from .spacing import SpacingShift, Word, decomposition_agrees, mixing_evidence, return_set
from .suite import DEFAULT_SEED, run_suite

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_INPUT = 2


def _parse_window(text: str) -> tuple[int, int]:
    lo_text, sep, hi_text = text.partition(":")
    if not sep:
        raise ValueError(f"window must look like lo:hi, got {text!r}")
    return int(lo_text), int(hi_text)


def _load_set(path: str) -> WindowedSet:
    return parse_set_text(Path(path).read_text())


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_classify(args) -> int:
    s = _load_set(args.set_file)
    if args.window:
        s = s.restrict(*_parse_window(args.window))
    scales = ScaleParams(
        thick_run=args.thick_L,
        syndetic_gap=args.syndetic_g,
        ps_run=args.ps_L,
        delta_order=args.delta_m,
        ip_arity=args.ip_k,
        search_bound=args.bound,
    )
    report = classify(s, scales, source=args.set_file)
    if args.format == "text":
        yn = {True: "yes", False: "no"}
        text = (
            f"{args.set_file}: window {report.window[0]}..{report.window[1]}, "
            f"{report.member_count} members\n"
            f"  thick(L={scales.thick_run})={yn[report.thick]}"
            f" syndetic(g={scales.syndetic_gap})={yn[report.syndetic]}"
            f" ps(L={scales.ps_run})={yn[report.piecewise_syndetic]}"
            f" ts={yn[report.thickly_syndetic]}\n"
            f"  density [{report.density.lower_estimate}, {report.density.upper_estimate}]"
            f" delta={report.delta_witness or 'none'} ip={report.ip_witness or 'none'}"
            f" progressive={yn[report.progressive_chunks is not None]}\n")
    else:
        text = report.to_text()
    _emit(text, args.output)
    return EXIT_OK


def _cmd_construct(args) -> int:
    params = []
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"--param expects k=v, got {item!r}")
        params.append((key, value))
    window = _parse_window(args.window) if args.window else None
    spec = ConstructionSpec(args.kind, tuple(params), window)
    out, post = build_construction(spec)
    header = [f"# construct {spec.kind}"]
    header += [f"# param {k}={v}" for k, v in spec.params]
    header += [f"# postcondition {name}={'pass' if ok else 'FAIL'}"
               for name, ok in sorted(post.items())]
    _emit("\n".join(header) + "\n" + format_set_text(out), args.output)
    return EXIT_OK if all(post.values()) else EXIT_VERDICT


def _cmd_spacing_return_set(args) -> int:
    shift = SpacingShift(_load_set(args.p))
    window = (_parse_window(args.window) if args.window
              else (-(shift.n_max - len(args.u) - len(args.v)),
                    shift.n_max - len(args.u) - len(args.v)))
    rs = return_set(shift, Word(args.u), Word(args.v), window)
    _emit(format_set_text(rs), args.output)
    return EXIT_OK


def _random_distance_set(rng: random.Random, n: int) -> WindowedSet:
    density = rng.uniform(0.1, 0.9)
    bits = 0
    for i in range(n):
        if rng.random() < density:
            bits |= 1 << i
    return WindowedSet(1, n, bits)


def _cmd_spacing_nuv_check(args) -> int:
    if args.p:
        shifts = [(args.p, SpacingShift(_load_set(args.p)))]
    else:
        rng = random.Random(args.seed)
        shifts = [(f"random-{i:02d}", SpacingShift(_random_distance_set(rng, 2000)))
                  for i in range(args.random)]
    mismatches = 0
    pairs = 0
    for name, shift in shifts:
        margin = shift.n_max - 2 * args.max_word_len
        window = (-margin, margin)
        words = shift.language_words(args.max_word_len)
        for u in words:
            for v in words:
                pairs += 1
                if not decomposition_agrees(shift, u, v, window):
                    mismatches += 1
                    sys.stdout.write(f"MISMATCH p={name} u={u.symbols} v={v.symbols}\n")
    sys.stdout.write(f"nuv-check: pairs={pairs} mismatches={mismatches}\n")
    return EXIT_OK if mismatches == 0 else EXIT_VERDICT


def _cmd_spacing_mixing_report(args) -> int:
    shift = SpacingShift(_load_set(args.p))
    detector = Detector.parse(args.detector)
    window = _parse_window(args.window) if args.window else None
    report = mixing_evidence(shift, detector, args.max_word_len, window)
    _emit(report.to_text(), args.output)
    return EXIT_OK if report.all_pass else EXIT_VERDICT


def _cmd_covers_profile(args) -> int:
    shift = SpacingShift(_load_set(args.p))
    if args.cover == "auto":
        cover = auto_cover(shift)
    else:
        cover = parse_cover_text(shift, Path(args.cover).read_text())
    if args.seq == "all":
        sequence = range(0, args.n_max)
    else:
        sequence = [n for n in _load_set(args.seq).members() if n >= 0]
    profile = complexity_profile(shift, cover, sequence, args.n_max,
                                 solver_cap=args.solver_cap)
    _emit(profile.to_text(), args.output)
    return EXIT_OK


def _cmd_suite(args) -> int:
    result = run_suite(seed=args.seed)
    text = result.to_structured_text() if args.format == "structured" else result.to_text()
    _emit(text, args.output)
    return EXIT_OK if result.all_pass else EXIT_VERDICT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spacinglab",
        description="Windowed integer-set families and spacing-shift analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="run the detector battery on a set file")
    p.add_argument("set_file")
    p.add_argument("--window", help="restrict to lo:hi before classifying")
    p.add_argument("--thick-L", type=int, default=25, dest="thick_L")
    p.add_argument("--syndetic-g", type=int, default=10, dest="syndetic_g")
    p.add_argument("--ps-L", type=int, default=200, dest="ps_L")
    p.add_argument("--delta-m", type=int, default=3, dest="delta_m")
    p.add_argument("--ip-k", type=int, default=3, dest="ip_k")
    p.add_argument("--bound", type=int, default=100)
    p.add_argument("--format", choices=("text", "structured"), default="structured")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("construct", help="emit a gallery construction as a set file")
    p.add_argument("kind", choices=CONSTRUCTION_KINDS)
    p.add_argument("--param", action="append", metavar="k=v")
    p.add_argument("--window", help="target window lo:hi")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_construct)

    spacing = sub.add_parser("spacing", help="spacing-shift analyses")
    spacing_sub = spacing.add_subparsers(dest="spacing_command", required=True)

    p = spacing_sub.add_parser("return-set", help="compute N(U, V) on a window")
    p.add_argument("--p", required=True, help="distance-set file (window [1, N])")
    p.add_argument("--u", required=True, help="binary word")
    p.add_argument("--v", required=True, help="binary word")
    p.add_argument("--window", help="translate window lo:hi")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_spacing_return_set)

    p = spacing_sub.add_parser(
        "nuv-check",
        help="assert return sets match their decomposition beyond the overlap bound")
    p.add_argument("--p", help="distance-set file; omit to use random sets")
    p.add_argument("--random", type=int, default=50, help="number of random sets")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-word-len", type=int, default=5, dest="max_word_len")
    p.set_defaults(func=_cmd_spacing_nuv_check)

    p = spacing_sub.add_parser("mixing-report", help="detector evidence over word pairs")
    p.add_argument("--p", required=True)
    p.add_argument("--detector", required=True,
                   help="thick:L=20 | syndetic:g=3 | ps:g=2,L=50 | ts:g=2,L=50 "
                        "| cofinite:n0=30 | nonempty")
    p.add_argument("--max-word-len", type=int, default=4, dest="max_word_len")
    p.add_argument("--window")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_spacing_mixing_report)

    covers = sub.add_parser("covers", help="cover-complexity analyses")
    covers_sub = covers.add_subparsers(dest="covers_command", required=True)

    p = covers_sub.add_parser("profile", help="minimal-subcover profile along a sequence")
    p.add_argument("--p", required=True)
    p.add_argument("--cover", default="auto", help="cover file or `auto`")
    p.add_argument("--seq", default="all", help="`all` or a set file")
    p.add_argument("--n-max", type=int, default=5, dest="n_max")
    p.add_argument("--solver-cap", type=int, default=64, dest="solver_cap")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_covers_profile)

    p = sub.add_parser("suite", help="run the built-in verification battery")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_suite)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpacingLabError, OSError, ValueError) as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
