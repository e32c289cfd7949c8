"""Command line: ``topoinc <subcommand> ...``; every report is JSON on stdout.

Exit codes: 0 success, 1 domain or input error, 2 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .complex import TopoModel
from .errors import BudgetExceeded, DomainError
from .homeo import canonical, embedding
from .invariants import p_spectrum
from .render import RenderOptions, to_svg
from .sequences import BitSeqSpec, MSetSpec, reflect_equiv, shift_equiv
from .spaces import KINDS, SpaceSpec, build, decode_A, decode_g, theorem_check

SCHEMA = "topoinc/1"


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for budget errors here
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliConfig:
    command: str
    args: argparse.Namespace


def _loads(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(
            f"malformed JSON in {what}: {exc.msg} at line {exc.lineno} column {exc.colno} (char {exc.pos})"
        ) from exc


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from exc
    return _loads(text, path)


def _load_model(path: str) -> TopoModel:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise DomainError(f"{path} does not hold a model object")
    return TopoModel.from_json(data)


def _load_seq(path: str) -> BitSeqSpec:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise DomainError(f"{path} does not hold a sequence object")
    return BitSeqSpec.from_json(data)


def space_from_params(kind: str, params: dict) -> SpaceSpec:
    if not isinstance(params, dict):
        raise DomainError("--params must be a JSON object")
    if kind == "A":
        if "M" not in params:
            raise DomainError('A needs params {"M": [...]}')
        return SpaceSpec("A", M=MSetSpec.of(params["M"]))
    if "g" not in params or "K" not in params:
        raise DomainError(f'{kind} needs params {{"g": ..., "K": ...}}')
    K = params["K"]
    if not isinstance(K, int) or isinstance(K, bool):
        raise DomainError(f"K must be an integer, got {K!r}")
    g = params["g"]
    g = BitSeqSpec.from_window(g, K) if isinstance(g, str) else BitSeqSpec.from_json(g)
    return SpaceSpec(kind, g=g, K=K)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _report(payload: dict) -> dict:
    return {"schema": SCHEMA, **payload}


def cmd_build(a) -> dict:
    spec = space_from_params(a.space, _loads(a.params, "--params"))
    model = build(spec)
    text = _dump(model.to_json())
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        return _report({
            "out": a.out,
            "space": spec.to_json(),
            "vertices": len(model.vertices),
            "edges": len(model.edges),
            "path_components": len(model.components),
            "topological_components": len(model.topological_components),
        })
    return model.to_json()


def cmd_spectrum(a) -> dict:
    return _report(p_spectrum(_load_model(a.model)).to_json())


def cmd_decode(a) -> dict:
    model = _load_model(a.model)
    if model.kind == "A" or model.kind is None:
        return _report({"M": list(decode_A(model).values)})
    return _report(decode_g(model))


def cmd_compare(a) -> dict:
    m1, m2 = _load_model(a.m1), _load_model(a.m2)
    if a.mode == "homeo":
        ok, wit = canonical.is_homeomorphic(m1, m2)
        return _report({"homeomorphic": ok, "witness": canonical.witness_to_json(wit)})
    ok, wit = embedding.embeds(m1, m2, budget=a.budget)
    conservative = any(e.cls == "sine" for m in (m1, m2) for e in m.edges.values())
    return _report({
        "embeds": ok,
        "witness": embedding.witness_to_json(wit),
        "conservative": conservative,
    })


def cmd_seq_equiv(a) -> dict:
    s1, s2 = _load_seq(a.s1), _load_seq(a.s2)
    return _report({"shift": shift_equiv(s1, s2), "reflect": reflect_equiv(s1, s2)})


def cmd_theorem(a) -> dict:
    params = _loads(a.params, "--params")
    if not isinstance(params, dict):
        raise DomainError("--params must be a JSON object")
    try:
        return _report(theorem_check(a.which, params, budget=a.budget))
    except KeyError as exc:
        raise DomainError(f"missing theorem parameter {exc.args[0]!r}") from exc


def cmd_render(a) -> dict:
    model = _load_model(a.model)
    viewport = None
    if a.viewport:
        viewport = tuple(float(v) for v in a.viewport.split(","))
        if len(viewport) != 4:
            raise DomainError("--viewport needs xmin,ymin,xmax,ymax")
    opts = RenderOptions(
        cap=a.cap,
        samples_per_period=a.samples,
        stroke_width=a.stroke_width,
        viewport=viewport,
        compress=not a.no_compress,
    )
    svg = to_svg(model, opts)
    with open(a.svg, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return _report({"svg": a.svg, "paths": svg.count("<path"), "options": opts.to_json()})


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="topoinc", description="Finite models of incomparable plane continua.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    b = sub.add_parser("build", help="assemble a construction window")
    b.add_argument("--space", required=True, choices=KINDS)
    b.add_argument("--params", required=True, help='JSON, e.g. {"M":[4,6]} or {"g":"100","K":1}')
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("spectrum", help="deletion-count spectrum")
    s.add_argument("model")
    s.set_defaults(func=cmd_spectrum)

    d = sub.add_parser("decode", help="recover M or the U/H word")
    d.add_argument("model")
    d.set_defaults(func=cmd_decode)

    c = sub.add_parser("compare", help="homeomorphism or embedding test")
    c.add_argument("m1")
    c.add_argument("m2")
    c.add_argument("--mode", choices=("homeo", "embed"), default="homeo")
    c.add_argument("--budget", type=int, default=None, help="node budget for embed")
    c.set_defaults(func=cmd_compare)

    q = sub.add_parser("seq-equiv", help="shift and reflection equivalence")
    q.add_argument("s1")
    q.add_argument("s2")
    q.set_defaults(func=cmd_seq_equiv)

    t = sub.add_parser("theorem", help="finite-window theorem checks")
    t.add_argument("which", choices=("t1", "t2"))
    t.add_argument("--params", required=True)
    t.add_argument("--budget", type=int, default=None)
    t.set_defaults(func=cmd_theorem)

    r = sub.add_parser("render", help="write an SVG drawing")
    r.add_argument("model")
    r.add_argument("--svg", required=True)
    r.add_argument("--cap", type=int, default=40)
    r.add_argument("--samples", type=int, default=24)
    r.add_argument("--stroke-width", type=float, default=0.01)
    r.add_argument("--viewport")
    r.add_argument("--no-compress", action="store_true")
    r.set_defaults(func=cmd_render)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = make_parser().parse_args(argv)
        config = CliConfig(args.command, args)
        out = config.args.func(config.args)
    except BudgetExceeded as exc:
        stdout.write(_dump(_report({"error": "budget", "message": str(exc)})) + "\n")
        return 2
    except DomainError as exc:
        stdout.write(_dump(_report({"error": "domain", "message": str(exc)})) + "\n")
        return 1
    stdout.write(_dump(out) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
