"""Command-line interface: ``boxrep analyze|verify|build|boxicity|fixture``.

Exit codes: 0 pass, 1 verification or construction failure, 2 budget
exhausted, 3 input error.
"""

from __future__ import annotations

import argparse
import functools
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import builders, families
from .boxmodel import (
    BoxRepresentation,
    is_strict,
    rep_from_json,
    rep_to_json,
    segments_from_json,
    segments_to_json,
    verify,
    verify_segment_rep,
)
from .graph import Graph, format_graph, induced_subgraph, parse_graph
from .oracle import OracleFailure, exact_boxicity, grid_boxicity, rep_in_dimension
from .search import DEFAULT_BUDGET, BudgetExhausted
from .surface import (
    GenusZeroError,
    PlanarizingCollection,
    edge_width,
    euler_genus,
    face_width,
    find_planarizing_collection,
    format_rotation,
    frame,
    parse_rotation,
)

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3

CONSTRUCTIONS = ("lemma-tech", "segment-5pd", "torus", "seven-box", "five-box", "deletion")


class InputError(ValueError):
    pass


@dataclass
class RunManifest:
    command: list[str]
    inputs: dict[str, str]
    tie_break: str = "lowest-id"
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    outputs: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=1) + "\n"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _parse(kind: str, path: str):
    text = _read(path)
    try:
        if kind == "graph":
            return parse_graph(text)
        if kind == "rotation":
            return parse_rotation(text)
        if kind == "rep":
            return rep_from_json(text)
        if kind == "segments":
            return segments_from_json(text)
        return json.loads(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def cmd_analyze(args: argparse.Namespace) -> int:
    e = _parse("rotation", args.embedding)
    g = e.graph
    out = [f"vertices: {g.n}", f"edges: {g.m}", f"faces: {len(e.faces)}"]
    try:
        genus = euler_genus(e)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out.append(f"euler_genus: {genus}")
    try:
        out.append(f"edge_width: {edge_width(e)}")
        out.append(f"face_width: {face_width(e)}")
    except GenusZeroError:
        out.append("edge_width: undefined (genus 0)")
        out.append("face_width: undefined (genus 0)")
    ta = builders.triangle_face_audit(e)
    out += ["triangles_" + line.replace("non-", "non_", 1) for line in ta.lines()]
    print("\n".join(out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _verify_files(rep_path: str, graph_path: str, strict: bool, segments: bool) -> list[str]:
    g = _parse("graph", graph_path)
    rep = _parse("segments" if segments else "rep", rep_path)
    try:
        if segments:
            problems = verify_segment_rep(rep, g).lines()
        else:
            problems = verify(rep, g).lines()
            if strict:
                problems += is_strict(rep).lines()
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return problems


def cmd_verify(args: argparse.Namespace) -> int:
    problems = _verify_files(args.rep, args.graph, args.strict, args.segments)
    for line in problems:
        print(line, file=sys.stderr)
    print("ok" if not problems else f"FAILED: {len(problems)} violation(s)")
    return EXIT_OK if not problems else EXIT_FAIL


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------


def _reindex(rep: BoxRepresentation, g: Graph) -> tuple[BoxRepresentation, Graph]:
    """Renumber a representation on a vertex subset to ``0..k-1``."""
    sub, idmap = induced_subgraph(g, rep.boxes)
    meta = dict(rep.metadata)
    meta["original_ids"] = [v for v, _ in sorted(idmap.items(), key=lambda kv: kv[1])]
    return BoxRepresentation(rep.d, {idmap[v]: b for v, b in rep.boxes.items()}, meta), sub


def _collection(args: argparse.Namespace, e) -> PlanarizingCollection:
    if args.collection:
        doc = _parse("json", args.collection)
        try:
            return PlanarizingCollection(tuple(tuple(c) for c in doc["cycles"]), int(doc.get("min_distance", 4)))
        except (KeyError, TypeError) as exc:
            raise InputError(f"{args.collection}: bad collection record ({exc})") from None
    fr = frame(e)
    found = find_planarizing_collection(fr.embedding, 4, args.budget)
    if found is None:
        raise InputError("no planarizing collection at distance 4; pass --collection")
    back = {i: v for v, i in fr.idmap.items()}
    return PlanarizingCollection(tuple(tuple(back[v] for v in c) for c in found.cycles), found.min_distance)


def _build(args: argparse.Namespace):
    """Run one construction; returns (representation, graph, inputs, segments?)."""
    extender = builders.corner_extender
    if args.grid is not None:
        extender = functools.partial(builders.corner_extender, grid=args.grid)
    oracles = builders.Oracles(extender=extender, budget=args.budget)
    name = args.construction
    if name == "lemma-tech":
        doc = _parse("json", args.inputs[0])
        try:
            k, plen = int(doc["k"]), int(doc["path_len"])
            nbrs = {int(j): [int(i) for i in ns] for j, ns in doc.get("nbrs", {}).items()}
            t = Fraction(str(doc.get("t", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{args.inputs[0]}: bad neighbour table ({exc})") from None
        try:
            rep = builders.lemma_tech_rep(k, plen, nbrs, t)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        return rep, builders.lemma_tech_graph(k, plen, nbrs), False
    if name == "segment-5pd":
        g = _parse("graph", args.inputs[0])
        try:
            return builders.segment_rep_5pd(g), g, True
        except ValueError as exc:
            raise InputError(str(exc)) from None
    e = _parse("rotation", args.inputs[0])
    try:
        if name == "torus":
            return builders.torus_six_box(e, oracles), e.graph, False
        if name in ("seven-box", "five-box"):
            inp = builders.LocallyPlanarInput(e, _collection(args, e))
            fn = builders.seven_box_locally_planar if name == "seven-box" else builders.five_box_locally_planar
            return fn(inp, oracles), e.graph, False
        if name == "deletion":
            if len(args.inputs) < 2:
                raise InputError("deletion needs an embedding and a partition file")
            doc = _parse("json", args.inputs[1])
            try:
                part = builders.DeletionPartition.make(doc["A"], doc["paths"], doc["X"], doc["outer"])
            except (KeyError, TypeError) as exc:
                raise InputError(f"{args.inputs[1]}: bad partition record ({exc})") from None
            rep = builders.genus_deletion_5box(e, part, oracles)
            rep, g = _reindex(rep, e.graph)
            return rep, g, False
    except (GenusZeroError, builders.BuildError, OracleFailure):
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    raise InputError(f"unknown construction {name!r}")  # pragma: no cover - argparse restricts


def cmd_build(args: argparse.Namespace) -> int:
    rep, g, segments = _build(args)
    out = Path(args.out or f"{args.construction}.rep.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    graph_path = out.with_name(out.name + ".graph")
    audit_path = out.with_name(out.name + ".audit")
    manifest_path = out.with_name(out.name + ".manifest.json")
    out.write_text(segments_to_json(rep) if segments else rep_to_json(rep), encoding="utf-8")
    graph_path.write_text(format_graph(g), encoding="utf-8")
    problems = _verify_files(str(out), str(graph_path), False, segments)
    audit = [str(x) for x in rep.metadata.get("audit", rep.metadata.get("steps", []))]
    audit.append("verify: ok" if not problems else f"verify: {len(problems)} violation(s)")
    audit_path.write_text("\n".join(audit) + "\n", encoding="utf-8")
    manifest = RunManifest(
        command=["build", args.construction, *args.inputs],
        inputs={p: _digest(p) for p in args.inputs + ([args.collection] if args.collection else [])},
        budget=args.budget,
        workers=args.workers,
        outputs=[str(out), str(graph_path), str(audit_path)],
    )
    manifest_path.write_text(manifest.to_json(), encoding="utf-8")
    for line in problems:
        print(line, file=sys.stderr)
    dim = 3 if segments else rep.d
    print(f"{args.construction}: d={dim} -> {out}")
    return EXIT_OK if not problems else EXIT_FAIL


# ---------------------------------------------------------------------------
# boxicity
# ---------------------------------------------------------------------------


def _probe(payload: tuple[str, int, int]) -> tuple[int, str | None]:
    text, d, budget = payload
    rep = rep_in_dimension(parse_graph(text), d, budget)
    return d, None if rep is None else rep_to_json(rep)


def cmd_boxicity(args: argparse.Namespace) -> int:
    g = _parse("graph", args.graph)
    witness: BoxRepresentation | None
    if g.is_complete():
        value, witness = 0, exact_boxicity(g, args.max_d).witness
    elif args.workers > 1:
        text = format_graph(g)
        with ProcessPoolExecutor(args.workers) as pool:
            found = dict(pool.map(_probe, [(text, d, args.budget) for d in range(1, args.max_d + 1)]))
        hits = sorted(d for d, r in found.items() if r is not None)
        value = hits[0] if hits else None
        witness = rep_from_json(found[value]) if hits else None
    else:
        engine = grid_boxicity if args.engine == "grid" else exact_boxicity
        try:
            res = engine(g, args.max_d, args.budget)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        value, witness = res.value, res.witness
    if value is None:
        print(f"boxicity: > {args.max_d}")
        return EXIT_OK
    print(f"boxicity: {value}")
    if args.out and witness is not None:
        Path(args.out).write_text(rep_to_json(witness), encoding="utf-8")
    return EXIT_OK


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


def cmd_fixture(args: argparse.Namespace) -> int:
    name = args.name
    out = Path(args.out)
    if name == "k7":
        out.write_text(format_rotation(families.k7_torus()), encoding="utf-8")
    elif name.startswith("torus-grid:"):
        try:
            r, c = (int(x) for x in name.split(":", 1)[1].split("x"))
            e = families.torus_grid(r, c)
        except ValueError as exc:
            raise InputError(f"bad grid size in {name!r}: {exc}") from None
        out.write_text(format_rotation(e), encoding="utf-8")
    elif name == "deletion":
        e, part = families.torus_deletion_instance()
        out.write_text(format_rotation(e), encoding="utf-8")
        doc = {"A": sorted(part.A), "X": sorted(part.X), "paths": [list(p) for p in part.paths], "outer": sorted(part.outer)}
        out.with_name(out.name + ".partition.json").write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    elif name == "k6-minus-pm":
        g = Graph.from_edges(6, [(i, j) for i in range(6) for j in range(i + 1, 6) if j != i + 3])
        out.write_text(format_graph(g), encoding="utf-8")
    else:
        raise InputError(f"unknown fixture {name!r}")
    print(f"wrote {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--workers", type=int, default=1, help="parallel oracle workers")
    common.add_argument("--grid", type=int, default=None, help="cap on fresh grid values per gap")
    common.add_argument("--out", default=None, help="output path")

    p = argparse.ArgumentParser(prog="boxrep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    a = sub.add_parser("analyze", parents=[common], help="genus, widths and triangles of an embedding")
    a.add_argument("embedding")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="check a representation file against a graph")
    v.add_argument("rep")
    v.add_argument("graph")
    v.add_argument("--strict", action="store_true")
    v.add_argument("--segments", action="store_true")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("build", parents=[common], help="run a construction")
    b.add_argument("construction", choices=CONSTRUCTIONS)
    b.add_argument("inputs", nargs="+")
    b.add_argument("--collection", default=None, help="planarizing collection (JSON)")
    b.set_defaults(func=cmd_build)

    x = sub.add_parser("boxicity", parents=[common], help="exact boxicity of a small graph")
    x.add_argument("graph")
    x.add_argument("--max-d", type=int, default=3)
    x.add_argument("--engine", choices=("assign", "grid"), default="assign")
    x.set_defaults(func=cmd_boxicity)

    f = sub.add_parser("fixture", help="write an example input file")
    f.add_argument("name", help="k7 | torus-grid:RxC | deletion | k6-minus-pm")
    f.add_argument("--out", required=True)
    f.set_defaults(func=cmd_fixture)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (builders.BuildError, OracleFailure) as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
