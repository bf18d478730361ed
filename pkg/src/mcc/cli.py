"""``mcc`` command line.

Exit codes: 0 success, 1 invariant violation, 2 input error, 3 no proven
basis and no oracle fallback (for ``basis``: the set B is independent only).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

import numpy as np

from . import checks
from .errors import MCCError, ParseError
from .genmatrix import BasisSource, encode, format_csv, format_text, to_matrix
from .gf import FieldSpec
from .ideal import Code, enumeration_cap
from .idealbasis import STRATEGIES, build_staircase, select_representatives
from .qring import RingSpec
from .sepasdar import Status, build_B, decide_status

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_INPUT = 2
EXIT_NO_BASIS = 3

log = logging.getLogger("mcc")


class InputError(Exception):
    pass


@dataclass
class CodeSpecFile:
    field: FieldSpec
    ring: RingSpec
    generator_text: list[str]
    code: Code


def load_spec_text(text: str, source: str = "<spec>") -> CodeSpecFile:
    """Parse the JSON document ``{"field": {...}, "rho": [...], "generators": [...]}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{source}: top level must be a JSON object")
    for key in ("field", "rho", "generators"):
        if key not in doc:
            raise InputError(f"{source}: missing key {key!r}")
    fdoc = doc["field"]
    try:
        if isinstance(fdoc, int):
            field = FieldSpec.of_order(fdoc)
        elif "q" in fdoc and "p" not in fdoc:
            field = FieldSpec.of_order(int(fdoc["q"]))
        else:
            field = FieldSpec(int(fdoc["p"]), int(fdoc.get("m", 1)), fdoc.get("modulus"))
        rho = doc["rho"]
        if not isinstance(rho, list) or not rho or not all(isinstance(r, int) for r in rho):
            raise InputError(f"{source}: rho must be a nonempty list of integers")
        ring = RingSpec(field, rho)
    except (MCCError, ValueError, TypeError, KeyError) as exc:
        raise InputError(f"{source}: {exc}") from None
    gens_text = doc["generators"]
    if not isinstance(gens_text, list) or not all(isinstance(g, str) for g in gens_text):
        raise InputError(f"{source}: generators must be a list of strings")
    gens = []
    for i, g in enumerate(gens_text):
        try:
            gens.append(ring.parse(g))
        except ParseError as exc:
            caret = " " * exc.pos + "^"
            raise InputError(f"{source}: generators[{i}]: {exc}\n  {g}\n  {caret}") from None
    return CodeSpecFile(field, ring, gens_text, Code(ring, gens))


def load_spec(path: str) -> CodeSpecFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return load_spec_text(text, path)


def _sepasdar(code: Code, strategy: str):
    sb = build_staircase(code)
    reps = select_representatives(sb, strategy)
    return sb, decide_status(build_B(reps), code, reps)


def cmd_params(args, out) -> int:
    spec = load_spec(args.specfile)
    code = spec.code
    print(f"n={spec.ring.n} dim={code.dimension}", file=out)
    q, k = spec.field.q, code.dimension
    if q**k <= enumeration_cap():
        print(f"|I|={q**k}", file=out)
    return EXIT_OK


def cmd_basis(args, out) -> int:
    spec = load_spec(args.specfile)
    code = spec.code
    sb, basis = _sepasdar(code, args.strategy)
    chosen = basis.representatives.reps
    print(f"n={spec.ring.n} dim={code.dimension} strategy={args.strategy}", file=out)
    for k, layer in enumerate(sb.layers):
        for e in layer:
            mark = "*" if chosen[k] is e else " "
            a = "(" + ",".join(map(str, e.a)) + ")"
            print(f"{mark} layer k={k} a={a} : {e.poly}", file=out)
    for i, m in enumerate(basis.members):
        shift = "(" + ",".join(map(str, m.shift)) + ")"
        print(f"B[{i}] k={m.k} shift={shift} : {m.poly}", file=out)
    print(f"status={basis.status.value} |B|={len(basis.members)} dim={basis.expected_dim}", file=out)
    return EXIT_OK if basis.status is Status.PROVEN else EXIT_NO_BASIS


def _generator_matrix(spec: CodeSpecFile, strategy: str, fallback: bool, standardize: bool):
    code = spec.code
    _, basis = _sepasdar(code, strategy)
    if basis.status is Status.PROVEN:
        return to_matrix(basis.polynomials(), BasisSource.SEPASDAR, spec.ring, standardize)
    if not fallback:
        return None
    return to_matrix(code.oracle_basis, BasisSource.ORACLE, spec.ring, standardize)


def cmd_genmatrix(args, out) -> int:
    spec = load_spec(args.specfile)
    G = _generator_matrix(spec, args.strategy, args.fallback_oracle, args.rref)
    if G is None:
        print("no proven basis (|B| < dim); rerun with --fallback-oracle", file=sys.stderr)
        return EXIT_NO_BASIS
    print(f"# basis: {G.basis_source.value} rows={G.rows} cols={G.cols}", file=sys.stderr)
    out.write(format_csv(G) if args.format == "csv" else format_text(G))
    return EXIT_OK


def _parse_message(field: FieldSpec, tokens: list[str]):
    msg = []
    for tok in tokens:
        tok = tok.strip()
        try:
            if tok.startswith("("):
                digits = [int(d) for d in tok.strip("()").split(",")]
                if len(digits) > field.m:
                    raise ValueError(tok)
                msg.append(field.from_digits(digits))
            else:
                msg.append(int(tok) % field.p)
        except ValueError:
            raise InputError(f"bad message symbol {tok!r}") from None
    return msg


def cmd_encode(args, out) -> int:
    spec = load_spec(args.specfile)
    G = _generator_matrix(spec, args.strategy, args.fallback_oracle, False)
    if G is None:
        print("no proven basis (|B| < dim); rerun with --fallback-oracle", file=sys.stderr)
        return EXIT_NO_BASIS
    tokens = [t for chunk in args.message for t in chunk.split()]
    msg = _parse_message(spec.field, tokens)
    if len(msg) != G.rows:
        raise InputError(f"message has {len(msg)} symbols, code dimension is {G.rows}")
    print(encode(G, msg), file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.specfile is None and not args.corpus:
        raise InputError("give a spec file or --corpus")
    fault = args.inject_fault
    if args.specfile is not None:
        spec = load_spec(args.specfile)
        rng = np.random.default_rng(args.seed)
        results, members, status = checks.check_code(spec.code, args.strategy, rng, fault=fault)
        for r in results:
            print(f"{'ok  ' if r.ok else 'FAIL'} {r.name} {r.detail}".rstrip(), file=out)
        print(f"status={status.value} |B|={len(members)} dim={spec.code.dimension}", file=out)
        failed = next((r for r in results if not r.ok), None)
        if failed is not None:
            print(f"invariant violated: {failed.name}", file=out)
            return EXIT_INVARIANT
        return EXIT_OK

    reports = checks.run_corpus(args.seed, args.count, args.strategy, workers=args.workers, fault=fault)
    failed = [r for r in reports if not r.ok]
    for r in failed:
        bad = r.first_failure()
        print(f"FAIL case {r.index} [{bad.name}] {r.label}: {bad.detail}", file=out)
    proven = sum(r.status is Status.PROVEN for r in reports)
    rate = proven / len(reports) if reports else 0.0
    print(
        f"cases={len(reports)} passed={len(reports) - len(failed)} proven={proven} proven_rate={rate:.4f}",
        file=out,
    )
    if failed:
        print(f"invariant violated: {failed[0].first_failure().name}", file=out)
        return EXIT_INVARIANT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strategy", choices=STRATEGIES, default="min_a_lex")

    parser = argparse.ArgumentParser(prog="mcc", description="Generator matrices of multicyclic codes.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", parents=[common], help="length, dimension and size of the code")
    p.add_argument("specfile")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("basis", parents=[common], help="staircase layers and the set B")
    p.add_argument("specfile")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("genmatrix", parents=[common], help="write the generator matrix")
    p.add_argument("specfile")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--fallback-oracle", action="store_true", help="use the RREF basis when B is not a basis")
    p.add_argument("--rref", action="store_true", help="emit the reduced row echelon form of G")
    p.set_defaults(func=cmd_genmatrix)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("specfile", nargs="?")
    p.add_argument("--corpus", action="store_true", help="check the seeded random corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--inject-fault", choices=("independence",), default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("encode", parents=[common], help="encode a message")
    p.add_argument("specfile")
    p.add_argument("message", nargs="+", help="dim symbols: integers or digit tuples like (1,0)")
    p.add_argument("--fallback-oracle", action="store_true")
    p.set_defaults(func=cmd_encode)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INPUT
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
