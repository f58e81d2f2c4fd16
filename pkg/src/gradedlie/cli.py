"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad input or parameters,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import ModelId, build_model, enumerate_models, is_filiform
from .cohomology import SAMPLING_POLICY, cocycle_spaces, enumerate_graded_linear_extensions
from .errors import GradedLieError, InputError, InvariantViolation, MCSyntaxError
from .exactlin import format_scalar
from .invariants import (
    DEFAULT_SEED,
    center,
    characteristic_sequence,
    graded_certificate,
    has_abelian_direct_factor,
    infer_weights,
    nilindex,
    series_dims,
)
from .liecore import LieAlgebra, from_json, jacobi_defects, to_json
from .mcdsl import parse_mc, render_mc
from .verify import verify_catalog

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def load_algebra(path: str) -> LieAlgebra:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if p.suffix == ".json" or (p.suffix != ".mc" and text.lstrip().startswith("{")):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
        return from_json(doc)
    return parse_mc(text)


def _vec(v) -> str:
    return "(" + ", ".join(format_scalar(c) for c in v) + ")"


def _emit(args, doc: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))


def _weights(args, g: LieAlgebra):
    if getattr(args, "weights", None):
        try:
            return tuple(int(w) for w in args.weights.split(","))
        except ValueError:
            raise InputError(f"bad weight list {args.weights!r}") from None
    return g.weights if g.weights is not None else infer_weights(g)


def cmd_build(args) -> int:
    g = build_model(args.model)
    if args.format == "mc":
        sys.stdout.write(render_mc(g))
    else:
        print(json.dumps(to_json(g), indent=2))
    return EXIT_OK


def cmd_parse(args) -> int:
    g = load_algebra(args.file)
    sys.stdout.write(render_mc(g))
    bad = jacobi_defects(g)
    for d in bad:
        print(f"# jacobi defect at {d.triple}: {_vec(d.defect)}")
    if not bad:
        print("# jacobi: ok")
    return EXIT_FAIL if bad else EXIT_OK


def cmd_invariants(args) -> int:
    g = load_algebra(args.file)
    dims = series_dims(g)
    cs, witness = characteristic_sequence(g, args.seed)
    doc = {
        "dim": g.dim,
        "series_dims": list(dims),
        "nilindex": nilindex(g),
        "center_dim": len(center(g)),
        "char_seq": list(cs),
        "witness": [format_scalar(c) for c in witness],
        "split": has_abelian_direct_factor(g),
    }
    _emit(args, doc, [
        f"dim: {g.dim}",
        f"lower central series dims: {list(dims)}",
        f"nilindex: {doc['nilindex']}",
        f"center dim: {doc['center_dim']}",
        f"characteristic sequence: {cs}",
        f"witness: {_vec(witness)}",
        f"split (abelian direct factor): {doc['split']}",
    ])
    return EXIT_OK


def cmd_check_graded(args) -> int:
    g = load_algebra(args.file)
    weights = _weights(args, g)
    if weights is None:
        print("no weights given and none can be inferred by homogeneity")
        return EXIT_FAIL
    ok = graded_certificate(g, weights)
    print(f"weights: {list(weights)}")
    print(f"graded certificate: {'pass' if ok else 'fail'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_h2(args) -> int:
    g = load_algebra(args.file)
    z2, b2, h2 = cocycle_spaces(g)
    doc = {"z2": len(z2), "b2": len(b2), "h2": h2}
    _emit(args, doc, [f"dim Z2: {len(z2)}", f"dim B2: {len(b2)}", f"dim H2: {h2}"])
    return EXIT_OK


def cmd_extensions(args) -> int:
    g = load_algebra(args.file)
    weights = _weights(args, g)
    if weights is None:
        raise InputError("no weights given and none can be inferred by homogeneity")
    found = enumerate_graded_linear_extensions(g, weights, args.seed, max_weight=args.max_weight)
    doc = {
        "candidates": [
            {
                "weight": c.new_weight,
                "cocycle": str(c.cocycle),
                "dim": c.extension.dim,
                "char_seq": list(c.char_seq),
                "series_dims": list(c.series),
                "h2": c.h2,
            }
            for c in found
        ],
        "sampling_policy": SAMPLING_POLICY,
    }
    lines = [f"{len(found)} candidate(s)"]
    for c in found:
        lines.append(
            f"  weight {c.new_weight}: {c.cocycle}  char seq {c.char_seq}, "
            f"series {list(c.series)}, h2 {c.h2}"
        )
    lines.append(f"sampling policy: {SAMPLING_POLICY}")
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.dim < 3:
        raise InputError("dimension must be at least 3")
    models = enumerate_models(args.dim)
    doc = {
        "dim": args.dim,
        "count": len(models),
        "models": [{"id": str(m), "filiform": is_filiform(m)} for m in models],
    }
    lines = [f"{m}{'  filiform' if is_filiform(m) else ''}" for m in models]
    lines.append(f"count: {len(models)}")
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_catalog(
        args.max_dim,
        seed=args.seed,
        jacobi_max_dim=args.jacobi_max_dim,
        ext_max_dim=args.ext_max_dim,
        jobs=args.jobs,
    )
    sys.stdout.write(report.render(args.json))
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedlie",
        description="Naturally graded nilpotent Lie algebras with linear characteristic sequence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a catalog model, e.g. 'L(7;1,3)' or 'VQ(5)'")
    p.add_argument("model")
    p.add_argument("--format", choices=("json", "mc"), default="json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("parse", help="parse structure equations, echo canonical form")
    p.add_argument("file")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("invariants", help="series, nilindex, center, characteristic sequence")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("check-graded", help="natural grading certificate")
    p.add_argument("file")
    p.add_argument("--weights", help="comma-separated weights (default: from file or inferred)")
    p.set_defaults(func=cmd_check_graded)

    p = sub.add_parser("h2", help="dimensions of Z2, B2, H2 with trivial coefficients")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_h2)

    p = sub.add_parser("extensions", help="graded central extensions keeping a linear sequence")
    p.add_argument("file")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--weights")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_extensions)

    p = sub.add_parser("enumerate", help="all catalog models of one dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-paper", help="full verification pipeline")
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jacobi-max-dim", type=int, default=None, help="Jacobi-only grid bound (default max(24, max-dim))")
    p.add_argument("--ext-max-dim", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MCSyntaxError as exc:
        print(f"error: {getattr(args, 'file', '<input>')}:{exc.line}:{exc.column}: {exc.reason}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (GradedLieError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
