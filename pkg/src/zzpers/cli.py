"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 refusal or failed verification,
3 internal inconsistency (a decomposition that fails its own check).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .colimit import check_all
from .decompose import DecompositionBug, decompose
from .generate import gen_adversarial, gen_decomposable
from .persmod import Decomposition, PersModule, ShapeMismatch, TorsionVertex
from .poset import parse_shape_spec
from .verify import verify_decomposition

EXIT_OK, EXIT_INPUT, EXIT_REFUSED, EXIT_BUG = 0, 1, 2, 3


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _load_module(path: str) -> PersModule:
    obj = _read_json(path)
    try:
        return PersModule.from_json(obj)
    except TorsionVertex:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_decomposition(path: str) -> Decomposition:
    obj = _read_json(path)
    try:
        return Decomposition.from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _refusal_json(rep) -> dict:
    cond, torsion = rep.first_failure
    return {"refusal": {"x": rep.x, "y": rep.y, "condition": cond, "torsion": list(torsion)},
            "pair": rep.to_json()}


def _torsion_json(exc: TorsionVertex) -> dict:
    return {"refusal": {"x": exc.vertex, "y": exc.vertex, "condition": "C1",
                        "torsion": list(exc.torsion)},
            "message": str(exc)}


def cmd_pcc(args) -> int:
    m = _load_module(args.input)
    report = check_all(m)
    sys.stdout.write(_dump(report.to_json()))
    return EXIT_OK if report.ok else EXIT_REFUSED


def _run_decompose(path: str):
    m = _load_module(path)
    out = decompose(m, verify=False)
    if not out.ok:
        return m, out, EXIT_REFUSED
    if not verify_decomposition(m, out.decomposition).ok:
        raise DecompositionBug("decomposition failed verification")
    return m, out, EXIT_OK


def cmd_decompose(args) -> int:
    m, out, code = _run_decompose(args.input)
    if code:
        sys.stdout.write(_dump(_refusal_json(out.refusal)))
        return code
    payload = _dump(out.decomposition.to_json())
    if args.out:
        Path(args.out).write_text(payload)
        sys.stdout.write(_dump({"bars": out.barcode.to_json()}))
    else:
        sys.stdout.write(payload)
    return EXIT_OK


def cmd_barcode(args) -> int:
    m, out, code = _run_decompose(args.input)
    if code:
        sys.stdout.write(_dump(_refusal_json(out.refusal)))
        return code
    if args.ascii:
        text = out.barcode.ascii(m.n)
        sys.stdout.write(text + "\n" if text else "")
    else:
        sys.stdout.write(_dump({"bars": out.barcode.to_json()}))
    return EXIT_OK


def cmd_verify(args) -> int:
    m = _load_module(args.module)
    d = _load_decomposition(args.decomposition)
    try:
        report = verify_decomposition(m, d)
    except ShapeMismatch as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(_dump(report.to_json()))
    return EXIT_OK if report.ok else EXIT_REFUSED


def _sidecar(path: Path) -> Path:
    return path.with_name(path.stem + ".barcode.json")


def cmd_gen(args) -> int:
    try:
        shape = parse_shape_spec(args.shape)
    except ValueError as exc:
        raise InputError(f"--shape: {exc}") from None
    out = Path(args.out)
    if args.adversarial:
        m = gen_adversarial(args.seed, shape, args.max_rank, args.entry_bound)
        out.write_text(_dump(m.to_json()))
        return EXIT_OK
    if args.bars < 1:
        raise InputError("--bars must be at least 1")
    m, bc = gen_decomposable(args.seed, shape, args.bars, args.max_rank, args.scramble)
    out.write_text(_dump(m.to_json()))
    _sidecar(out).write_text(_dump({"bars": bc.to_json()}))
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    from .selfcheck import run_selfcheck

    failed = run_selfcheck(verbose=args.verbose)
    return EXIT_REFUSED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zzpers",
                                description="Interval decompositions of integer zigzag modules.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("pcc", help="check the four colimit conditions for every pair")
    s.add_argument("input")
    s.set_defaults(func=cmd_pcc)

    s = sub.add_parser("decompose", help="decompose a module into interval summands")
    s.add_argument("input")
    s.add_argument("-o", "--out", help="write the decomposition here (default: stdout)")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("barcode", help="decompose and print only the bars")
    s.add_argument("input")
    s.add_argument("--ascii", action="store_true", help="plain-text bar listing")
    s.set_defaults(func=cmd_barcode)

    s = sub.add_parser("verify", help="check a decomposition against its module")
    s.add_argument("module")
    s.add_argument("decomposition")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="generate a random instance")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--shape", required=True, help="comma-separated fwd/bwd edge list")
    s.add_argument("--bars", type=int, default=4)
    s.add_argument("--max-rank", type=int, default=None)
    s.add_argument("--scramble", type=int, default=2)
    s.add_argument("--adversarial", action="store_true")
    s.add_argument("--entry-bound", type=int, default=3)
    s.add_argument("-o", "--out", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("selfcheck", help="run the embedded golden corpus")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and args.adversarial and args.max_rank is None:
        args.max_rank = 3
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TorsionVertex as exc:
        sys.stdout.write(_dump(_torsion_json(exc)))
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except DecompositionBug as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_BUG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
