"""Command-line front end.

Exit codes: 0 success, 1 malformed input or file error, 2 model fails
validation, 3 a TPIC violation (or a failed sweep assertion), 64 usage error.
"""
from __future__ import annotations

import argparse
import collections
import json
import sys

from .errors import (InconsistentPresentationError, InvariantViolation, MalformedModelError,
                     NotSpinCError, PerIndexError, PreconditionError,
                     UnsupportedInputError)
from .examples import NAMED_MODELS, enumerate_valid_models
from .forms2 import Z2SymForm, solve_diagonal
from .grouptransfer import (FiniteGroupTable, IndexTwoData, abelianization, build_semidirect,
                            transfer_index2)
from .modelfile import load_model, reports_to_json, save_model
from .periodindex import NonMember, Regime, membership, solve_ex, tpic_report

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_TPIC, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _ReportedUsageError(UsageError):
    """Already printed by the parser."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _ReportedUsageError(message)


def _bits(text, n=None):
    text = text.strip()
    if not text or any(c not in "01" for c in text):
        raise UsageError(f"expected a bit string, got {text!r}")
    if n is not None and len(text) != n:
        raise UsageError(f"expected {n} bits, got {len(text)}")
    return tuple(int(c) for c in text)


def _fmt(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


def _pair(text):
    try:
        n, k = (int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"expected n,k, got {text!r}") from None
    return n, k


def _load(path):
    m = load_model(path)
    rep = m.validation
    if not rep:
        for v in rep.violations:
            print(f"FAIL {v}")
        return m, False
    return m, True


# -- subcommands ---------------------------------------------------------------


def cmd_validate(args):
    m, ok = _load(args.file)
    if not ok:
        return EXIT_INVALID
    kind = "spin^c" if m.is_spin_c else "not spin^c"
    print(f"OK: {m.name or args.file} ({kind}, dim W = {m.dim_W})")
    return EXIT_OK


def _report_line(r):
    if r.index is not None:
        ind = f"ind {r.index}"
    else:
        ind = "ind in {" + ", ".join(map(str, r.index_interval)) + "}"
    tpic = {True: "TPIC HOLDS", False: "TPIC FAILS", None: "TPIC UNDECIDED"}[r.tpic_holds]
    line = f"alpha {_fmt(r.alpha)}: per {r.period}, {ind}, {r.regime.value}, {tpic}"
    if r.certificate is not None:
        line += f", e_x = {_fmt(r.certificate)}"
    return line


def cmd_report(args):
    m, ok = _load(args.file)
    if not ok:
        return EXIT_INVALID
    reports = tpic_report(m)
    if args.json:
        sys.stdout.write(reports_to_json(m, reports))
    else:
        kind = "spin^c" if m.is_spin_c else "not spin^c"
        print(f"model {m.name or args.file} ({kind})")
        for r in reports:
            print(_report_line(r))
    return EXIT_TPIC if any(r.tpic_holds is False for r in reports) else EXIT_OK


def cmd_solve_ex(args):
    m, ok = _load(args.file)
    if not ok:
        return EXIT_INVALID
    x = _bits(args.x, m.dim_W)
    try:
        e = solve_ex(m, x)
    except NotSpinCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"e_x = {_fmt(e)}")
    return EXIT_OK


def cmd_membership(args):
    m, ok = _load(args.file)
    if not ok:
        return EXIT_INVALID
    x = _bits(args.x, m.dim_W)
    res = membership(m, x)
    if isinstance(res, NonMember):
        print(f"NON_MEMBER: beta(x^2) = {_fmt(res.functional)} on V is not in beta(x) H^2")
    else:
        print(f"MEMBER: e = {_fmt(res)}")
    return EXIT_OK


def cmd_diag_solve(args):
    rows = [r for r in args.matrix.replace(";", ",").split(",") if r.strip()]
    mat = [_bits(r) for r in rows]
    if any(len(r) != len(mat) for r in mat):
        raise UsageError("matrix must be square")
    d = solve_diagonal(Z2SymForm(tuple(mat)))
    print("d = " + "".join(map(str, d)))
    return EXIT_OK


def _group_from_args(args) -> FiniteGroupTable:
    if args.semidirect:
        return build_semidirect(*_pair(args.semidirect))
    try:
        table = json.loads(args.table)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--table is not JSON: {exc}") from None
    return FiniteGroupTable(table)


def cmd_abelianize(args):
    G = _group_from_args(args)
    ab = abelianization(G)
    print(f"order {G.order}, [G,G] of order {len(ab.commutator)}")
    print(f"G_ab = {ab.group}")
    for name, g in sorted(G.generators.items()):
        print(f"  {name} -> {_fmt(ab.image[g])}")
    return EXIT_OK


def cmd_transfer(args):
    n, k = _pair(args.semidirect)
    G = build_semidirect(n, k)
    data = IndexTwoData(G, {"a": 0, "b": 1})
    tr = transfer_index2(data)
    g = G.parse_word(args.element)
    img = tr.of_element(g)
    h = tr.as_element_of_G(img)
    order = G.element_order(h)
    status = "zero" if order == 1 else "nonzero"
    print(f"transfer({G.labels[g]}) = {G.labels[h]} in H_ab = {tr.target.group}, "
          f"order {order}, {status}")
    return EXIT_OK


def cmd_emit(args):
    m = NAMED_MODELS[args.name]()
    save_model(m, args.output)
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_sweep(args):
    try:
        factors = sorted({int(f) for f in args.factors.split(",") if f.strip()})
    except ValueError:
        raise UsageError(f"bad --factors {args.factors!r}") from None
    counts = collections.Counter()
    regimes = collections.Counter()
    failures = []
    for m in enumerate_valid_models(args.max_dim, factors):
        counts["models"] += 1
        counts["spin_c"] += m.is_spin_c
        for r in tpic_report(m, check_x_independence=False):
            regimes[r.regime.value] += 1
            if r.tpic_holds is False:
                counts["tpic_fails"] += 1
        if args.assert_theorem_1_3 and m.is_spin_c:
            for xm in range(1 << m.dim_W):
                x = m.wvec(xm)
                try:
                    solve_ex(m, x)
                    if isinstance(membership(m, x), NonMember):
                        raise InvariantViolation("NON_MEMBER on a spin^c model")
                except PerIndexError as exc:
                    failures.append((counts["models"], x, str(exc)))
    print(f"models {counts['models']}, spin^c {counts['spin_c']}, "
          f"classes failing TPIC {counts['tpic_fails']}")
    for reg in Regime:
        print(f"  {reg.value}: {regimes[reg.value]}")
    if args.assert_theorem_1_3:
        if failures:
            for f in failures[:20]:
                print(f"FAIL model #{f[0]} x = {_fmt(f[1])}: {f[2]}")
            return EXIT_TPIC
        print("spin^c membership holds for every x in every spin^c model")
    return EXIT_OK


def build_parser():
    p = _Parser(prog="perindex", description="Period and index of Brauer classes on 6-manifold models.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check model invariants")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("report", help="period/index report for every torsion class")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("solve-ex", help="e_x with beta(x^2) = beta(x) e_x (spin^c models)")
    s.add_argument("file")
    s.add_argument("--x", required=True, help="bit string over the W basis")
    s.set_defaults(func=cmd_solve_ex)

    s = sub.add_parser("membership", help="is beta(x^2) in beta(x) H^2?")
    s.add_argument("file")
    s.add_argument("--x", required=True)
    s.set_defaults(func=cmd_membership)

    forms = sub.add_parser("forms").add_subparsers(dest="forms_command", required=True)
    s = forms.add_parser("diag-solve", help="least d with A d = diag(A) over GF(2)")
    s.add_argument("--matrix", required=True, help="rows as bit strings, e.g. 11,11")
    s.set_defaults(func=cmd_diag_solve)

    group = sub.add_parser("group").add_subparsers(dest="group_command", required=True)
    s = group.add_parser("abelianize")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--semidirect", metavar="N,K")
    src.add_argument("--table", help="multiplication table as JSON rows, identity 0")
    s.set_defaults(func=cmd_abelianize)
    s = group.add_parser("transfer", help="transfer to the index-2 cyclic subgroup <a>")
    s.add_argument("--semidirect", metavar="N,K", required=True)
    s.add_argument("--element", required=True, help="word in a, b such as a^2")
    s.set_defaults(func=cmd_transfer)

    ex = sub.add_parser("examples").add_subparsers(dest="examples_command", required=True)
    s = ex.add_parser("emit")
    s.add_argument("--name", required=True, choices=sorted(NAMED_MODELS))
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_emit)
    s = ex.add_parser("sweep")
    s.add_argument("--max-dim", type=int, required=True)
    s.add_argument("--factors", required=True, help="comma-separated, e.g. 2,4")
    s.add_argument("--assert-theorem-1-3", action="store_true",
                   help="check spin^c membership for every x of every spin^c model")
    s.set_defaults(func=cmd_sweep)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        if not isinstance(exc, _ReportedUsageError):
            print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MalformedModelError, InconsistentPresentationError, PreconditionError,
            UnsupportedInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())
