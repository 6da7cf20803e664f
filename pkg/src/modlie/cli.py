"""Command-line surface: build, inspect, identify, and verify algebras.

Plain-text line protocol with JSON-syntax algebra files; all output is
deterministic so runs can be diffed.  Exit codes: 0 success, 1 domain
errors (bad files, unknown labels, failed verification), 2 usage errors.
The environment variable LIE_SMALL_BUDGET overrides the sweep budgets.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .fields import FieldError, make_field
from .liealg import (AlgebraError, BudgetError, JacobiError,
                     derivation_algebra, from_json, to_json)
from .catalog import CatalogError, build, parse_label
from .classify import (ClassifyError, catalog_fingerprint, enumerate_classes,
                       expected_count, fingerprint, identify, iso_oracle)


def _field(args):
    return make_field(args.p, args.m)


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return from_json(fh.read())
    except OSError as exc:
        raise AlgebraError(f"cannot read {path}: {exc}") from exc


def cmd_list(args) -> int:
    F = _field(args)
    labels = enumerate_classes(F, args.dim)
    for lab in labels:
        print(lab)
    exp = expected_count(F.p, F.order, args.dim)
    verdict = "MATCH" if exp == len(labels) else "MISMATCH"
    print(f"classes {len(labels)} expected {exp} {verdict}")
    return 0 if verdict == "MATCH" else 1


def cmd_build(args) -> int:
    F = _field(args)
    L = build(parse_label(F, args.label), F)
    text = to_json(L)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_identify(args) -> int:
    L = _load(args.file)
    try:
        print(identify(L))
        return 0
    except ClassifyError as exc:
        print(f"identification failed: {exc}", file=sys.stderr)
        print(fingerprint(L).to_json(), file=sys.stderr)
        return 1


def cmd_invariants(args) -> int:
    L = _load(args.file)
    print(fingerprint(L).to_json())
    return 0


def cmd_derivations(args) -> int:
    L = _load(args.file)
    der = derivation_algebra(L)
    text = to_json(der.algebra)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"dimension {der.dim}")
    return 0


def cmd_verify(args) -> int:
    F = _field(args)
    dims = [args.dim] if args.dim else [3, 4, 5, 6]
    failed = False
    print(f"field GF({F.p}^{F.m}) order {F.order}")
    for dim in dims:
        labels = enumerate_classes(F, dim)
        fps = {}
        jacobi_ok = True
        sep_ok = True
        for lab in labels:
            try:
                fp = catalog_fingerprint(F, lab)
            except (JacobiError, AlgebraError) as exc:
                print(f"  dim {dim}: {lab} FAILED to build: {exc}")
                jacobi_ok = False
                continue
            if fp in fps:
                print(f"  dim {dim}: fingerprint collision {lab} vs {fps[fp]}")
                sep_ok = False
            fps[fp] = lab
        exp = expected_count(F.p, F.order, dim)
        verdict = "MATCH" if exp == len(labels) else "MISMATCH"
        ok = jacobi_ok and sep_ok and verdict == "MATCH"
        failed = failed or not ok
        print(f"  dim {dim}: classes {len(labels):3d} expected {exp:3d} "
              f"{verdict:8s} jacobi {'OK' if jacobi_ok else 'FAIL'} "
              f"separation {'OK' if sep_ok else 'FAIL'}")
    return 1 if failed else 0


def cmd_isotest(args) -> int:
    A = _load(args.file1)
    B = _load(args.file2)
    w = iso_oracle(A, B, args.budget)
    print(w.verdict)
    if w.matrix is not None:
        for r in range(w.matrix.rows):
            print(" ".join(repr(e) for e in w.matrix.row(r)))
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="modlie",
        description="Exact construction and classification of small "
                    "nonsolvable Lie algebras over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_field_args(p):
        p.add_argument("--p", type=int, required=True, help="characteristic")
        p.add_argument("--m", type=int, default=1, help="extension degree")

    p = sub.add_parser("list", help="enumerate class labels for a dimension")
    add_field_args(p)
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("build", help="construct a class and emit its file")
    add_field_args(p)
    p.add_argument("--label", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("identify", help="class label of an algebra file")
    p.add_argument("file")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("invariants", help="fingerprint of an algebra file")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("derivations", help="derivation algebra of a file")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_derivations)

    p = sub.add_parser("verify", help="full acceptance sweep for a field")
    add_field_args(p)
    p.add_argument("--dim", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("isotest", help="isomorphism test between two files")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_isotest)
    return ap


def run(argv: Optional[list[str]] = None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (FieldError, AlgebraError, JacobiError, CatalogError,
            ClassifyError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
