"""Command line front end: one executable for every library operation.

Exit codes are uniform across subcommands: 0 success (or "realizable"),
1 negative verdict (unrealizable, verification failure, no embedding found),
2 input error, 3 configured bound exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from .embedding import Face, embedding_from_obj, embedding_to_obj
from .generators import (
    gen_cycle_story,
    gen_flags,
    gen_nested_triangles,
    gen_no_supporting,
    gen_path_story,
    gen_random_story,
    gen_sp_unrealizable,
    gen_sunflower_reduction,
    make_sunflower,
)
from .render import drawing_problem, render_reroutes, render_story, write_svg
from .solver import (
    LayerBoundExceededError,
    WindowNotPlanarError,
    certificate_problem,
    certificate_to_obj,
    certificate_from_obj,
    find_supporting_embedding,
    min_k,
    realize,
    supporting_certificate,
)
from .special import ContainsK5Error, Reroute, RerouteRealization, one_reroute_realize
from .story import GraphStory, story_from_obj, story_to_document

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_BOUND = 3


class _InputError(Exception):
    pass


def _read_document(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    p = Path(path)
    if not p.is_file():
        raise _InputError(f"no such file: {path}")
    return p.read_text()


def _read_story(path: str) -> GraphStory:
    try:
        obj = json.loads(_read_document(path))
        return story_from_obj(obj)
    except (json.JSONDecodeError, ValueError) as exc:
        raise _InputError(f"bad story file {path}: {exc}") from exc


def _read_points(path: str):
    try:
        raw = json.loads(_read_document(path))
        return [(x, y) for x, y in raw]
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise _InputError(f"bad point file {path}: {exc}") from exc


def _write_out(out: str | None, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


# --------------------------------------------------------------------------
# reroute realization files: a certificate document plus a reroute log

def _face_to_obj(f: Face) -> dict:
    return {
        "walks": [[list(d) for d in w] for w in f.walks],
        "isolated": list(f.isolated),
    }


def _face_from_obj(obj) -> Face:
    return Face(
        walks=tuple(tuple((int(a), int(b)) for a, b in w) for w in obj["walks"]),
        isolated=tuple(int(x) for x in obj["isolated"]),
    )


def reroutes_to_document(real: RerouteRealization) -> str:
    obj = {
        "story": json.loads(story_to_document(real.story)),
        "steps": [embedding_to_obj(emb) for emb in real.steps],
        "reroutes": [
            {
                "step": r.step,
                "edge": list(r.edge),
                "source": _face_to_obj(r.source),
                "target": _face_to_obj(r.target),
            }
            for r in real.reroutes
        ],
    }
    return json.dumps(obj, indent=2) + "\n"


def reroutes_from_obj(obj) -> RerouteRealization:
    story = story_from_obj(obj["story"])
    steps = tuple(embedding_from_obj(rec) for rec in obj["steps"])
    log = tuple(
        Reroute(
            step=int(r["step"]),
            edge=(int(r["edge"][0]), int(r["edge"][1])),
            source=_face_from_obj(r["source"]),
            target=_face_from_obj(r["target"]),
        )
        for r in obj["reroutes"]
    )
    return RerouteRealization(story, steps, log)


# --------------------------------------------------------------------------
# subcommands

def _cmd_check(args) -> int:
    story = _read_story(args.story)
    try:
        cert = realize(story, max_layer=args.max_layer)
    except WindowNotPlanarError as exc:
        _emit(args, {"realizable": False, "reason": str(exc)},
              f"unrealizable: {exc}")
        return EXIT_NO
    stats = {
        "n": story.n,
        "omega": story.omega,
        "k": story.k,
        "edges": len(story.edges),
        "windows": story.n - min(story.omega, story.n) + 1,
    }
    if cert is None:
        _emit(args, {"realizable": False, **stats},
              f"unrealizable  n={story.n} omega={story.omega} k={story.k}")
        return EXIT_NO
    _emit(args, {"realizable": True, **stats},
          f"realizable  n={story.n} omega={story.omega} k={story.k} "
          f"windows={stats['windows']}")
    return EXIT_OK


def _cmd_solve(args) -> int:
    story = _read_story(args.story)
    try:
        cert = realize(story, max_layer=args.max_layer)
    except WindowNotPlanarError as exc:
        print(f"unrealizable: {exc}", file=sys.stderr)
        return EXIT_NO
    if cert is None:
        print("unrealizable", file=sys.stderr)
        return EXIT_NO
    _write_out(args.out, json.dumps(certificate_to_obj(cert), indent=2) + "\n")
    return EXIT_OK


def _cmd_min_k(args) -> int:
    story = _read_story(args.story)
    try:
        best = min_k(story, args.k_max, max_layer=args.max_layer)
    except WindowNotPlanarError as exc:
        _emit(args, {"min_k": None, "reason": str(exc)},
              f"unrealizable for every k: {exc}")
        return EXIT_NO
    if best is None:
        _emit(args, {"min_k": None, "k_max": args.k_max},
              f"unrealizable for all k <= {args.k_max}")
        return EXIT_NO
    _emit(args, {"min_k": best}, str(best))
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        obj = json.loads(_read_document(args.certificate))
    except json.JSONDecodeError as exc:
        raise _InputError(f"bad certificate file {args.certificate}: {exc}")
    story = _read_story(args.story) if args.story else None
    if isinstance(obj, dict) and "reroutes" in obj:
        try:
            real = reroutes_from_obj(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise _InputError(f"bad reroute file {args.certificate}: {exc}")
        if story is None:
            story = real.story
        frames = render_reroutes(real, seed=args.seed)
        problem = drawing_problem(story, frames, reroutes=real.reroutes)
    else:
        try:
            cert = certificate_from_obj(obj)
        except ValueError as exc:
            raise _InputError(f"bad certificate file {args.certificate}: {exc}")
        if story is None:
            story = cert.story
        problem = certificate_problem(story, cert)
    if problem is not None:
        _emit(args, {"valid": False, "problem": problem}, f"invalid: {problem}")
        return EXIT_NO
    _emit(args, {"valid": True}, "certificate ok")
    return EXIT_OK


def _cmd_render(args) -> int:
    try:
        obj = json.loads(_read_document(args.certificate))
    except json.JSONDecodeError as exc:
        raise _InputError(f"bad certificate file {args.certificate}: {exc}")
    points = _read_points(args.points) if args.points else None
    try:
        if isinstance(obj, dict) and "reroutes" in obj:
            real = reroutes_from_obj(obj)
            story, log = real.story, real.reroutes
            frames = render_reroutes(real, points=points, seed=args.seed)
        else:
            cert = certificate_from_obj(obj)
            story, log = cert.story, ()
            frames = render_story(story, cert, points=points, seed=args.seed)
    except (KeyError, TypeError, ValueError) as exc:
        raise _InputError(f"bad certificate file {args.certificate}: {exc}")
    problem = drawing_problem(story, frames, reroutes=log)
    if problem is not None:
        print(f"rendering failed its own check: {problem}", file=sys.stderr)
        return EXIT_NO
    written = write_svg(frames, args.out)
    print(f"wrote {len(written)} files to {args.out}")
    return EXIT_OK


def _cmd_reroute1(args) -> int:
    story = _read_story(args.story)
    try:
        real = one_reroute_realize(story)
    except ContainsK5Error as exc:
        print(f"unrealizable with one reroute: {exc}", file=sys.stderr)
        return EXIT_NO
    except ValueError as exc:
        raise _InputError(str(exc))
    _write_out(args.out, reroutes_to_document(real))
    if args.out is not None:
        print(f"realized with {len(real.reroutes)} reroute(s)")
    return EXIT_OK


def _cmd_supporting(args) -> int:
    story = _read_story(args.story)
    try:
        phi = find_supporting_embedding(story, max_vertices=args.max_vertices)
    except ValueError as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    if phi is None:
        _emit(args, {"supporting": None}, "no supporting embedding")
        return EXIT_NO
    if args.out is not None:
        cert = supporting_certificate(story, phi)
        _write_out(args.out,
                   json.dumps(certificate_to_obj(cert), indent=2) + "\n")
    _emit(args, {"supporting": embedding_to_obj(phi)},
          "supporting embedding found")
    return EXIT_OK


def _random_sunflower(seed: int):
    import random

    rng = random.Random(seed)
    base = list(range(1, 7))
    common = {(1, 2), (3, 4), (5, 6)}
    spare = [
        (u, v)
        for i, u in enumerate(base)
        for v in base[i + 1:]
        if (u, v) not in common
    ]
    rng.shuffle(spare)
    sizes = sorted((rng.randint(1, 4) for _ in range(3)), reverse=True)
    privates, at = [], 0
    for size in sizes:
        privates.append(spare[at:at + size])
        at += size
    return make_sunflower(base, common, *privates)


def _cmd_generate(args) -> int:
    fam = args.family
    try:
        if fam == "path":
            story = gen_path_story(args.n, args.omega, k=args.k)
        elif fam == "cycle":
            story = gen_cycle_story(args.n, args.omega, k=args.k)
        elif fam == "random":
            story = gen_random_story(args.n, args.omega, args.p, args.seed,
                                     k=args.k)
        elif fam == "flags":
            story = gen_flags(args.omega)
            if args.k:
                story = replace(story, k=args.k)
        elif fam == "nested-triangles":
            story = gen_nested_triangles(args.height, k=args.k)
        elif fam == "sp-unrealizable":
            story = gen_sp_unrealizable(args.omega)
        elif fam == "no-supporting":
            story = gen_no_supporting()
        elif fam == "sunflower":
            story = gen_sunflower_reduction(_random_sunflower(args.seed),
                                            k=args.k)
        else:
            raise _InputError(f"unknown family: {fam}")
    except ValueError as exc:
        raise _InputError(str(exc))
    _write_out(args.out, story_to_document(story))
    return EXIT_OK


def _cmd_bench(args) -> int:
    sizes = []
    for tok in args.sizes.split(","):
        tok = tok.strip()
        if tok:
            try:
                sizes.append(int(tok))
            except ValueError:
                raise _InputError(f"bad size: {tok}")
    if not sizes:
        raise _InputError("no sizes given")
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["family", "n", "omega", "k", "realizable", "seconds"])
    for n in sizes:
        story = gen_path_story(n, args.omega, k=args.k)
        t0 = time.perf_counter()
        cert = realize(story, max_layer=args.max_layer)
        dt = time.perf_counter() - t0
        writer.writerow(
            ["path", n, args.omega, args.k, cert is not None, f"{dt:.4f}"]
        )
    _write_out(args.out, buf.getvalue())
    return EXIT_OK


# --------------------------------------------------------------------------
# argument plumbing

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="storyplan",
        description="Sliding-window planar drawings of graph stories.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, *, fmt=True):
        p.add_argument("--threads", type=int, default=1, metavar="N",
                       help="worker budget; execution is sequential, the "
                            "flag is accepted for interface stability")
        if fmt:
            p.add_argument("--format", choices=("json", "text"),
                           default="text", help="output format")

    def bounds(p):
        p.add_argument("--max-layer", type=int, default=None, metavar="M",
                       help="abort when a solver layer exceeds M states")

    p = sub.add_parser("check", help="decide realizability of a story")
    p.add_argument("story", help="story file (JSON), - for stdin")
    common(p)
    bounds(p)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("solve", help="emit an embedding-sequence certificate")
    p.add_argument("story")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    common(p, fmt=False)
    bounds(p)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("min-k", help="smallest workable number of spare points")
    p.add_argument("story")
    p.add_argument("--k-max", type=int, default=3, metavar="K",
                   help="largest k tried (default 3)")
    common(p)
    bounds(p)
    p.set_defaults(fn=_cmd_min_k)

    p = sub.add_parser("verify", help="re-check a certificate from scratch")
    p.add_argument("certificate")
    p.add_argument("story", nargs="?", default=None,
                   help="story file to check against (default: the one "
                        "embedded in the certificate)")
    p.add_argument("--seed", type=int, default=0,
                   help="point seed when verifying a reroute realization")
    common(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("render", help="draw every step as SVG")
    p.add_argument("certificate")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--points", default=None,
                   help="JSON file with [x, y] pairs, exactly omega+k of them")
    p.add_argument("--seed", type=int, default=0)
    common(p, fmt=False)
    p.set_defaults(fn=_cmd_render)

    p = sub.add_parser("reroute1",
                       help="realize a window-5 story, one redraw per step")
    p.add_argument("story")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    common(p, fmt=False)
    p.set_defaults(fn=_cmd_reroute1)

    p = sub.add_parser("supporting",
                       help="search one embedding realizing the whole story")
    p.add_argument("story")
    p.add_argument("--out", default=None,
                   help="also write the restriction certificate here")
    p.add_argument("--max-vertices", type=int, default=12,
                   help="enumeration cap (default 12)")
    common(p)
    p.set_defaults(fn=_cmd_supporting)

    p = sub.add_parser("generate", help="emit a named story instance")
    p.add_argument("family",
                   choices=("path", "cycle", "random", "flags",
                            "nested-triangles", "sp-unrealizable",
                            "no-supporting", "sunflower"))
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--omega", type=int, default=5)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--height", type=int, default=3,
                   help="tower height for nested-triangles")
    p.add_argument("--p", type=float, default=0.5,
                   help="edge probability for the random family")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    common(p, fmt=False)
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("bench",
                       help="runtime vs n on path stories, CSV output")
    p.add_argument("--omega", type=int, default=5)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--sizes", default="40,80,160",
                   help="comma-separated story sizes (default 40,80,160)")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    common(p, fmt=False)
    bounds(p)
    p.set_defaults(fn=_cmd_bench)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LayerBoundExceededError as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
