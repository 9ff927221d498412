"""Command-line surface: describe, verify, contract, classify.

Every command reads a group spec (JSON file or inline JSON) or a
dimension N, runs the corresponding library routines and emits either a
JSON report or a human-readable text one.  All output is deterministic:
the only randomness is the seeded choice of rational evaluation points
for the Yang-Baxter check, so identical (options, seed) pairs produce
byte-identical output.

Exit codes: 0 success, 1 verification failure or obstructed
contraction, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
import random

from .scalars import Coeff, C_ONE, render_pm
from .ckcore import GroupSpec, J_of, generating_matrix, rho, r_tilde
from . import hopf
from .contraction import (AdmissibilityFailure, NonLinearConstraint,
                          RelationVerdict, contract_group,
                          eliminate_generators)
from . import classify

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class InputError(Exception):
    """Bad command-line input (maps to exit code 2)."""


# ---------------------------------------------------------------------------
# Input / output plumbing.

def load_spec(text) -> GroupSpec:
    """Spec from a file path or an inline JSON object string."""
    if text is None:
        raise InputError("this command needs --spec")
    data = text
    if not text.lstrip().startswith("{"):
        if not os.path.exists(text):
            raise InputError("spec file not found: %s" % text)
        with open(text) as fh:
            data = fh.read()
    try:
        return GroupSpec.from_json(data)
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError("invalid spec: %s" % exc)


def emit(args, report: dict, text_lines) -> None:
    if args.format == "json":
        out = json.dumps(report, indent=2, sort_keys=True,
                         ensure_ascii=True) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _matrix_rows(M, render=None):
    render = render or (lambda x: x.render())
    return [[render(M.entries[i][k]) for k in range(M.cols)]
            for i in range(M.rows)]


# ---------------------------------------------------------------------------
# describe

def cmd_describe(args) -> int:
    spec = load_spec(args.spec)
    report = {
        "command": "describe",
        "spec": spec.to_json(),
        "J": render_pm(J_of(spec)),
        "rho": [str(x) for x in rho(spec.N)],
        "generating_matrix": _matrix_rows(generating_matrix(spec)),
    }
    lines = ["spec: %r" % spec, "J = %s" % report["J"],
             "rho = (%s)" % ", ".join(report["rho"]), "U(j; sigma):"]
    for row in report["generating_matrix"]:
        lines.append("  [ " + " | ".join(row) + " ]")
    if spec.nil_set:
        pat = classify.pattern_of(spec).render_rows()
        report["pattern"] = pat
        lines.append("pattern:")
        lines.extend("  " + r for r in pat)
    emit(args, report, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def _rational_point(rng, nparams):
    """Small exact rational point, nonzero everywhere."""
    def frac():
        return Coeff(Fraction(rng.randint(1, 40), rng.randint(1, 40)))
    return frac(), [frac() for _ in range(nparams)]


def _numeric_matrix(M, t_val, j_vals):
    return [[M.entries[i][k].evaluate(t_val, j_vals)
             for k in range(M.cols)] for i in range(M.rows)]


def _embed(R, N, left, right):
    """Lift an N^2 x N^2 numeric matrix to legs (left, right) of three."""
    zero = Coeff()
    dim = N ** 3
    out = [[zero] * dim for _ in range(dim)]
    axes = (left, right)
    spectator = ({0, 1, 2} - set(axes)).pop()
    for row in range(dim):
        a = [row // (N * N), (row // N) % N, row % N]
        for col in range(dim):
            b = [col // (N * N), (col // N) % N, col % N]
            if a[spectator] != b[spectator]:
                continue
            v = R[a[axes[0]] * N + a[axes[1]]][b[axes[0]] * N + b[axes[1]]]
            if v:
                out[row][col] = v
    return out


def _matmul(A, B):
    n = len(A)
    zero = Coeff()
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k in range(n):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            row = out[i]
            for j in range(n):
                if Bk[j]:
                    row[j] = row[j] + a * Bk[j]
    return out


def yang_baxter_check(spec, rng, points, perturb=None):
    """Check R12 R13 R23 = R23 R13 R12 at seeded rational points.

    Returns None on success, else the (point, row-triple) of the first
    failing entry.  ``perturb`` is a 1-based (i, k) entry of R that gets
    an additive +1 before the check; it exists as a negative-control
    hook and must make the check fail.
    """
    N = spec.N
    R = r_tilde(spec)
    for pt in range(points):
        t_val, j_vals = _rational_point(rng, spec.nparams)
        Rn = _numeric_matrix(R, t_val, j_vals)
        if perturb:
            i, k = perturb
            Rn[i - 1][k - 1] = Rn[i - 1][k - 1] + C_ONE
        R12 = _embed(Rn, N, 0, 1)
        R13 = _embed(Rn, N, 0, 2)
        R23 = _embed(Rn, N, 1, 2)
        lhs = _matmul(_matmul(R12, R13), R23)
        rhs = _matmul(_matmul(R23, R13), R12)
        for row in range(N ** 3):
            for col in range(N ** 3):
                if lhs[row][col] != rhs[row][col]:
                    triple = (row // (N * N) + 1, (row // N) % N + 1,
                              row % N + 1)
                    return {"point": pt, "triple": list(triple),
                            "column": col + 1}
    return None


def _suite(name, failures):
    return {"name": name, "status": "FAIL" if failures else "PASS",
            "detail": failures}


def cmd_verify(args) -> int:
    spec = load_spec(args.spec)
    rng = random.Random(args.seed)
    perturb = None
    if args.perturb:
        try:
            i, k = (int(x) for x in args.perturb.split(","))
        except ValueError:
            raise InputError("--perturb wants 'row,col'")
        perturb = (i, k)

    suites = []
    suites.append(_suite("coassociativity",
                         [str(f) for f in hopf.check_coassociativity(spec)]))
    suites.append(_suite("counit",
                         [str(f) for f in hopf.check_counit(spec)]))
    suites.append(_suite(
        "antipode-factorization",
        [str(f) for f in hopf.check_antipode_factorization(spec)]))

    closed = hopf.antipode_closed_form(spec)
    direct = hopf.antipode_matrix(spec)
    mism = ["u(%d,%d)" % (i + 1, k + 1)
            for i in range(spec.N) for k in range(spec.N)
            if closed.entries[i][k] != direct.entries[i][k]]
    suites.append(_suite("antipode-closed-form", mism))

    ones = [C_ONE] * spec.nparams
    Rn = _numeric_matrix(r_tilde(spec), C_ONE, ones)
    off = ["(%d,%d)" % (i + 1, k + 1)
           for i in range(spec.N ** 2) for k in range(spec.N ** 2)
           if Rn[i][k] != (C_ONE if i == k else Coeff())]
    suites.append(_suite("r-matrix-at-unit", off))

    ybe = yang_baxter_check(spec, rng, args.points, perturb)
    suites.append(_suite("yang-baxter", [ybe] if ybe else []))

    ok = all(s["status"] == "PASS" for s in suites)
    report = {"command": "verify", "spec": spec.to_json(),
              "seed": args.seed, "points": args.points,
              "suites": suites, "status": "PASS" if ok else "FAIL"}
    lines = ["verify %r (seed=%d, points=%d)"
             % (spec, args.seed, args.points)]
    for s in suites:
        lines.append("%-24s %s" % (s["name"], s["status"]))
        for d in s["detail"]:
            lines.append("    %s" % (json.dumps(d, sort_keys=True)
                                     if isinstance(d, dict) else d))
    lines.append("overall: %s" % report["status"])
    emit(args, report, lines)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# contract

def _verdict_counts(cg):
    counts = {RelationVerdict.ADMISSIBLE: 0, RelationVerdict.TRIVIAL: 0,
              RelationVerdict.INADMISSIBLE: 0}
    for v in cg.verdicts():
        counts[v.kind] += 1
    return counts


def _surviving(cg):
    out = []
    for v in cg.verdicts():
        if v.kind == RelationVerdict.ADMISSIBLE and v.poly:
            out.append("%s: %s" % (v.tag, v.poly.render()))
    return out


def cmd_contract(args) -> int:
    spec = load_spec(args.spec)
    if not spec.nil_set:
        raise InputError("contract needs at least one nilpotent parameter")
    cg = contract_group(spec)
    try:
        cg = eliminate_generators(cg)
    except NonLinearConstraint:
        pass

    label = classify._LABELS.get(
        (spec.N, spec.sigma, tuple(sorted(spec.nil_set))))
    counts = _verdict_counts(cg)
    report = {
        "command": "contract",
        "spec": spec.to_json(),
        "label": label,
        "J": render_pm(cg.J),
        "verdicts": counts,
        "inadmissible": [v.tag for v in cg.inadmissible()],
        "eliminations": {"u%d%d" % g: p.render()
                         for g, p in sorted(cg.eliminations.items())},
        "relations": _surviving(cg),
        "coproduct": _matrix_rows(cg.coproduct),
        "antipode": {"u%d%d" % ab: p.render()
                     for ab, p in sorted(cg.antipode.items())},
        "antipode_regular": ["u(%d,%d)" % ab
                             for ab in sorted(cg.antipode_regular)],
        "antipode_failures": ["u(%d,%d)" % ab
                              for ab in sorted(cg.antipode_failures)],
    }
    obstructed = bool(report["inadmissible"] or cg.antipode_failures)
    report["status"] = "FAIL" if obstructed else "PASS"

    lines = ["contract %r%s" % (spec, " [%s]" % label if label else ""),
             "J = %s" % report["J"],
             "verdicts: %d admissible, %d trivial, %d inadmissible"
             % (counts["admissible"], counts["trivial"],
                counts["inadmissible"])]
    if report["eliminations"]:
        lines.append("eliminated generators:")
        lines.extend("  %s = %s" % kv
                     for kv in sorted(report["eliminations"].items()))
    lines.append("surviving relations:")
    lines.extend("  " + r for r in report["relations"])
    if report["antipode_regular"]:
        lines.append("antipode entries regular but not Laurent: "
                     + ", ".join(report["antipode_regular"]))
    if obstructed:
        lines.append("OBSTRUCTED: inadmissible=%s antipode_failures=%s"
                     % (report["inadmissible"],
                        report["antipode_failures"]))
    emit(args, report, lines)
    return EXIT_FAIL if obstructed else EXIT_OK


# ---------------------------------------------------------------------------
# classify

def cmd_classify(args) -> int:
    if args.n is None:
        raise InputError("classify needs --n")
    try:
        data = classify.catalog_json(args.n, classical=args.classical)
    except ValueError as exc:
        raise InputError(str(exc))
    data["command"] = "classify"
    lines = ["classify %d%s -> %d classes"
             % (args.n, " (classical shadow)" if args.classical else "",
                data["class_count"])]
    for c in data["classes"]:
        lines.append("%-16s J=%-8s members=%d"
                     % (c["label"], c["J"], len(c["members"])))
        lines.extend("    " + r for r in c["pattern"])
    emit(args, data, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ckq",
        description="Quantum Cayley-Klein orthogonal groups: construct, "
                    "verify, contract and classify.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, needs_spec=False, needs_n=False):
        if needs_spec:
            p.add_argument("--spec", help="spec JSON file or inline JSON")
        if needs_n:
            p.add_argument("--n", type=int, help="matrix dimension N")
        p.add_argument("--format", choices=("json", "text"),
                       default="text")
        p.add_argument("--out", help="write the report to this path")

    p = sub.add_parser("describe", help="print generating matrix, J, rho "
                                        "and nilpotent pattern")
    common(p, needs_spec=True)
    p.set_defaults(fn=cmd_describe)

    p = sub.add_parser("verify", help="run the verification suites")
    common(p, needs_spec=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=int, default=3,
                   help="number of rational evaluation points")
    p.add_argument("--perturb", metavar="ROW,COL",
                   help="negative-control hook: add 1 to this R entry")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("contract", help="contract the group and solve "
                                        "linear constraints")
    common(p, needs_spec=True)
    p.set_defaults(fn=cmd_contract)

    p = sub.add_parser("classify", help="enumerate contraction classes")
    common(p, needs_n=True)
    p.add_argument("--classical", action="store_true",
                   help="ignore J (pattern-only classification)")
    p.set_defaults(fn=cmd_classify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_INPUT
    except AdmissibilityFailure as exc:
        sys.stderr.write("obstructed contraction: %s\n" % exc)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
