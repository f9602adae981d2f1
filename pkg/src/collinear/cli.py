"""Command-line interface exposing the library operations as subcommands.

Complex numbers are passed as "RE,IM" decimal pairs (use --c=-1,2 for
negative real parts).  Exit codes: 0 success, 2 domain error, 3 resource
error, 4 numerical error.  The worker pool size comes from --threads,
falling back to the COLLINEAR_THREADS environment variable (0 = auto);
thread count never changes output bytes.
"""

import argparse
import json
import os
import sys

from . import attractor, certify, connectivity, geometry, polyroots, raster
from .errors import DomainError, NumericalError, ResourceLimitError


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad complex literal {text!r}: {exc}")


def _parse_window(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected 4 comma-separated bounds, got {text!r}")
    return tuple(float(p) for p in parts)


def _parse_size(text: str) -> tuple:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad size {text!r} (expected WxH): {exc}")


def _parse_coeffs(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad coefficient list {text!r}: {exc}")


_OVERLAY_ALIASES = {
    "x": "x_region",
    "annulus": "annulus",
    "outer": "outer_disk",
    "unit": "unit_disk",
    "real": "real_axis",
}


def _parse_overlays(text: str) -> tuple:
    names = []
    for token in text.split(","):
        token = token.strip()
        if token not in _OVERLAY_ALIASES:
            raise argparse.ArgumentTypeError(
                f"--overlay: unknown overlay {token!r} (choose from {sorted(_OVERLAY_ALIASES)})"
            )
        names.append(_OVERLAY_ALIASES[token])
    return tuple(names)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collinear",
        description="Collinear fractal attractors, locus membership, covering "
        "geometry, interior certification and rendering.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled operations")
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker pool size (0 = auto); default from COLLINEAR_THREADS or 1",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("attractor", help="render or dump an attractor point cloud")
    p.add_argument("--c", type=_parse_complex, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("ppm", "png", "csv"), default="csv")
    p.add_argument("--size", type=_parse_size, default=(600, 600))
    p.add_argument("--window", type=_parse_window, default=None)

    p = sub.add_parser("locus", help="render the connectedness locus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=_parse_window, default=None,
                   help="re_min,re_max,im_min,im_max (default [-(n+0.5), n+0.5]^2)")
    p.add_argument("--size", type=_parse_size, default=(600, 600))
    p.add_argument("--depth", type=int, default=connectivity.DEFAULT_GRID_DEPTH)
    p.add_argument("--rigorous", action="store_true")
    p.add_argument("--overlay", type=_parse_overlays, default=())
    p.add_argument("--out", required=True)
    p.add_argument("--grid-out", default=None, help="also dump the binary verdict grid")

    p = sub.add_parser("classify", help="classify one parameter point")
    p.add_argument("--c", type=_parse_complex, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-depth", type=int, default=connectivity.DEFAULT_MAX_DEPTH)
    p.add_argument("--rigorous", action="store_true", default=True)
    p.add_argument("--fast", dest="rigorous", action="store_false")

    p = sub.add_parser("mhat", help="sample polynomial-zero locus points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**4)
    p.add_argument("--out", required=True)

    p = sub.add_parser("covering", help="covering predicate and geometric check")
    p.add_argument("--c", type=_parse_complex, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=128)

    p = sub.add_parser("certify", help="certify an interior locus point")
    p.add_argument("--c", type=_parse_complex, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coeffs", type=_parse_coeffs, default=None)
    p.add_argument("--auto-degree", type=int, default=None)

    p = sub.add_parser("bounds", help="closed-form locus bounds at a point")
    p.add_argument("--c", type=_parse_complex, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("threshold", help="lens-covers-outer-disk inequality")
    p.add_argument("--n", type=int, required=True)

    return parser


def _thread_count(args) -> int:
    if args.threads is not None:
        count = args.threads
    else:
        count = int(os.environ.get("COLLINEAR_THREADS", "1"))
    if count == 0:
        count = os.cpu_count() or 1
    if count < 1:
        raise DomainError(f"--threads must be >= 0, got {count}")
    return count


def _cmd_attractor(args) -> int:
    window = args.window
    if window is None:
        r = attractor.hull_radius(args.c, args.n) * 1.05
        window = (-r, r, -r, r)
    if args.format == "csv":
        depth = args.depth if args.depth is not None else 8
        cloud = attractor.attractor_points(args.c, args.n, depth)
        if args.out:
            attractor.dump_points_csv(cloud.points, args.out)
            print(args.out)
        else:
            for z in cloud.points:
                print(f"{z.real:.17g},{z.imag:.17g}")
        return 0
    if not args.out:
        raise DomainError("--out is required for --format ppm/png")
    job = raster.RasterJob(
        kind="attractor", n=args.n, window=window,
        width=args.size[0], height=args.size[1], c=args.c, depth=args.depth,
    )
    image = raster.render(job, threads=_thread_count(args))
    raster.write_image(image, args.out, format=args.format)
    print(args.out)
    return 0


def _cmd_locus(args) -> int:
    window = args.window
    if window is None:
        r = args.n + 0.5
        window = (-r, r, -r, r)
    job = raster.RasterJob(
        kind="locus", n=args.n, window=window,
        width=args.size[0], height=args.size[1], depth=args.depth,
        overlays=args.overlay, mode="rigorous" if args.rigorous else "fast",
    )
    image = raster.render(job, threads=_thread_count(args))
    fmt = "png" if str(args.out).lower().endswith(".png") else "ppm"
    raster.write_image(image, args.out, format=fmt)
    if args.grid_out:
        grid = connectivity.classify_grid(
            args.n, window, (args.size[0], args.size[1]),
            max_depth=args.depth, mode=job.mode, threads=_thread_count(args),
        )
        connectivity.save_grid(grid, args.grid_out)
    print(args.out)
    return 0


def _cmd_classify(args) -> int:
    verdict = connectivity.classify(
        args.c, args.n, max_depth=args.max_depth,
        mode="rigorous" if args.rigorous else "fast",
    )
    print(json.dumps(verdict.to_dict()))
    return 0


def _cmd_mhat(args) -> int:
    points = polyroots.mhat_sample(
        args.n, args.max_degree, budget=args.budget, seed=args.seed
    )
    polyroots.write_roots_jsonl(points, args.out)
    print(args.out)
    return 0


def _cmd_covering(args) -> int:
    predicate = geometry.covering_predicate(args.c, args.n)
    check = geometry.covering_check_geometric(args.c, args.n, grid_points=args.grid)
    print(json.dumps({
        "predicate": predicate,
        "geometric_check": check,
        "s": geometry.coverage_sum(args.c),
        "n": args.n,
    }))
    return 0


def _cmd_certify(args) -> int:
    if (args.coeffs is None) == (args.auto_degree is None):
        raise DomainError("pass exactly one of --coeffs or --auto-degree")
    if args.coeffs is not None:
        word = polyroots.CoeffWord(args.n, args.coeffs)
    else:
        word = polyroots.in_mhat(args.c, args.n, args.auto_degree, tol=1e-6)
        if word is None:
            raise DomainError(
                f"--auto-degree: no polynomial witness of degree <= {args.auto_degree} near c"
            )
    cert = certify.certify_interior(args.c, args.n, word)
    print(json.dumps(cert.to_dict()))
    return 0


def _cmd_bounds(args) -> int:
    report = geometry.bounds(args.c, args.n)
    print(json.dumps({
        "in_annulus": report.in_annulus,
        "outside_outer": report.outside_outer,
        "antenna": report.antenna,
    }))
    return 0


def _cmd_threshold(args) -> int:
    print(json.dumps(geometry.threshold_inequality(args.n)))
    return 0


_COMMANDS = {
    "attractor": _cmd_attractor,
    "locus": _cmd_locus,
    "classify": _cmd_classify,
    "mhat": _cmd_mhat,
    "covering": _cmd_covering,
    "certify": _cmd_certify,
    "bounds": _cmd_bounds,
    "threshold": _cmd_threshold,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
