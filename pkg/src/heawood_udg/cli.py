"""Command-line surface: solve, roots, verify, render, incidence.

Exit status: 0 on success, 1 on an acceptance-relevant mismatch (wrong
embedding or root count, failing certificate), 2 on usage errors.
Coordinates serialize as decimal strings, never binary floats, so output
stays diffable at any precision.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import charpoly, refdata, solver, verify
from .chain import dump_candidates, load_candidates
from .geom import RealContext
from .incidence import build_heawood_incidence
from .render import RenderStyle, render_svg

EXPECTED_EMBEDDINGS = 11


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heawood-udg",
        description="Unit-distance embeddings of the Heawood graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="find all embeddings")
    p_solve.add_argument("--grid", type=int, default=20000, help="sweep grid points")
    p_solve.add_argument("--digits", type=int, default=60, help="final working precision")
    p_solve.add_argument("--json", type=Path, default=None, help="write embeddings JSON here")
    p_solve.add_argument("--svg", type=Path, default=None, help="write one SVG per embedding here")

    p_roots = sub.add_parser("roots", help="isolate and refine the coordinate polynomial's real roots")
    p_roots.add_argument("--digits", type=int, default=20, help="root refinement digits")

    p_verify = sub.add_parser("verify", help="certify embeddings from a JSON file")
    p_verify.add_argument("--json", type=Path, required=True, help="embeddings JSON to certify")
    p_verify.add_argument("--seed-tables", type=Path, default=None, help="override the reference tables file")

    p_render = sub.add_parser("render", help="render embeddings from a JSON file to SVG")
    p_render.add_argument("--json", type=Path, required=True, help="embeddings JSON to render")
    p_render.add_argument("--svg", type=Path, required=True, help="output directory")
    p_render.add_argument("--scale", type=float, default=200.0, help="pixels per unit length")

    sub.add_parser("incidence", help="print the line triples and flag list as JSON")
    return parser


def _stages_for(digits: int) -> tuple:
    return (30, digits) if digits > 30 else (digits,)


def _cmd_solve(args) -> int:
    config = solver.SolveConfig(grid_points=args.grid, precision_stages=_stages_for(args.digits))
    embeddings = solver.solve_all(config)
    text = dump_candidates(embeddings)
    if args.json is not None:
        args.json.write_text(text)
    else:
        sys.stdout.write(text)
    if args.svg is not None:
        _write_svgs(embeddings, args.svg, RenderStyle())
    print(f"found={len(embeddings)} expected={EXPECTED_EMBEDDINGS}")
    return 0 if len(embeddings) == EXPECTED_EMBEDDINGS else 1


def _cmd_roots(args) -> int:
    poly = charpoly.charpoly_xl4()
    intervals = charpoly.isolate_real_roots(poly)
    ctx = RealContext(max(args.digits + 5, 15))
    rows = []
    for iv in intervals:
        root = charpoly.refine_root(poly, iv, args.digits)
        rows.append(
            {
                "lo": f"{iv.lo.numerator}/{iv.lo.denominator}",
                "hi": f"{iv.hi.numerator}/{iv.hi.denominator}",
                "root": ctx.nstr(root, args.digits),
            }
        )
    print(json.dumps(rows, indent=2))
    print(f"found={len(rows)} expected={EXPECTED_EMBEDDINGS}")
    return 0 if len(rows) == EXPECTED_EMBEDDINGS else 1


def _cmd_verify(args) -> int:
    embeddings = load_candidates(args.json.read_text())
    tables = refdata.reference_tables(args.seed_tables)
    poly = charpoly.charpoly_xl4()
    inc = build_heawood_incidence()
    certificates = [verify.certify(e, poly, inc, tables) for e in embeddings]
    print(json.dumps([c.to_json_dict() for c in certificates], indent=2))
    return 0 if certificates and all(c.passes for c in certificates) else 1


def _write_svgs(embeddings, directory: Path, style: RenderStyle) -> list:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for k, emb in enumerate(embeddings, start=1):
        path = directory / f"embedding_{k:02d}.svg"
        path.write_text(render_svg(emb, style=style))
        paths.append(path)
    return paths


def _cmd_render(args) -> int:
    embeddings = load_candidates(args.json.read_text())
    paths = _write_svgs(embeddings, args.svg, RenderStyle(scale=args.scale))
    print(f"wrote {len(paths)} SVG files to {args.svg}")
    return 0


def _cmd_incidence(_args) -> int:
    inc = build_heawood_incidence()
    payload = {
        "lines": {str(ln): sorted(str(p) for p in pts) for ln, pts in sorted(inc.lines.items())},
        "flags": [[str(p), str(ln)] for p, ln in sorted(inc.flags)],
    }
    print(json.dumps(payload, indent=2))
    return 0


def run(argv=None) -> int:
    """Dispatch a CLI invocation; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    handlers = {
        "solve": _cmd_solve,
        "roots": _cmd_roots,
        "verify": _cmd_verify,
        "render": _cmd_render,
        "incidence": _cmd_incidence,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
