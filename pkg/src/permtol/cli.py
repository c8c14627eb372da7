"""Command-line front end.

Files may be passed as options (``--lattice L.lat -T a.tol``) or as
``key=value`` words (``lattice=L.lat T=a.tol``).

Exit status: 0 success, 1 a mathematical negative or verification violation,
2 bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import amicability, engine, lattice, tolerance
from .dot import to_dot

KEYWORDS = {"lattice", "T", "S", "a", "b", "n", "out"}


class InputError(Exception):
    pass


def _normalise(argv):
    out = []
    for word in argv:
        key, sep, value = word.partition("=")
        if sep and key in KEYWORDS and not word.startswith("-"):
            out.extend([f"--{key}", value])
        else:
            out.append(word)
    return out


def _read(path):
    try:
        return Path(path).read_text()
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_lattice(args):
    if not args.lattice:
        raise InputError("a lattice file is required (--lattice or lattice=...)")
    try:
        return lattice.parse_lattice(_read(args.lattice))
    except lattice.LatticeError as exc:
        raise InputError(f"{args.lattice}: {type(exc).__name__}: {exc}") from None


def _load_relation(L, path, label, required=True):
    if not path:
        if required:
            raise InputError(f"tolerance {label} is required (--{label} or {label}=...)")
        return None
    try:
        return tolerance.parse_relation(_read(path), L.n)
    except tolerance.RelationError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_two_uniform(L, path, label):
    R = _load_relation(L, path, label)
    try:
        tolerance.require_tolerance(L, R)
    except tolerance.NotATolerance as exc:
        raise InputError(f"{path}: NotATolerance: {exc}") from None
    if not tolerance.is_two_uniform(L, R):
        raise InputError(f"{path}: NotTwoUniform: blocks "
                         + " ".join(map(str, tolerance.blocks(L, R))))
    return R


# -- subcommands --------------------------------------------------------------------

def cmd_check_tolerance(args, out):
    L = _load_lattice(args)
    R = _load_relation(L, args.T, "T")
    failure = tolerance.compatibility_failure(L, R)
    if failure is not None:
        p, q, op, missing = failure
        out(f"NOT A TOLERANCE: pairs {p} and {q} force {missing} under {op}")
        return 1
    out("TOLERANCE")
    out("CONGRUENCE" if tolerance.is_transitive(R) else "NOT A CONGRUENCE")
    out("2-UNIFORM" if tolerance.is_two_uniform(L, R) else "NOT 2-UNIFORM")
    return 0


def cmd_blocks(args, out):
    L = _load_lattice(args)
    R = _load_relation(L, args.T, "T")
    try:
        found = tolerance.blocks(L, R)
    except tolerance.NotATolerance as exc:
        raise InputError(f"{args.T}: NotATolerance: {exc}") from None
    out(" ".join(map(str, found)))
    return 0


def _role_line(r):
    lo = "-" if r.lower_neighbour is None else r.lower_neighbour
    hi = "-" if r.upper_neighbour is None else r.upper_neighbour
    kinds = [k for k, flag in (("top", r.is_top), ("bottom", r.is_bottom)) if flag]
    return f"{r.element}: lower={lo} upper={hi} {'+'.join(kinds)}"


def cmd_classify(args, out):
    L = _load_lattice(args)
    T = _load_two_uniform(L, args.T, "T")
    if not args.S:
        for r in amicability.classify(L, T):
            out(_role_line(r))
        return 0
    S = _load_two_uniform(L, args.S, "S")
    for r in amicability.two_fold_roles(L, T, S):
        out(f"{r.element}: two-fold-top={r.top.value} two-fold-bottom={r.bottom.value}")
    return 0


def _report_amicability(L, T, S, out):
    violations = amicability.amicability_violations(L, T, S)
    out("AMICABLE" if not violations else "NOT AMICABLE")
    for v in violations:
        out(str(v))
    return not violations


def cmd_amicable(args, out):
    L = _load_lattice(args)
    T = _load_two_uniform(L, args.T, "T")
    S = _load_two_uniform(L, args.S, "S")
    return 0 if _report_amicability(L, T, S, out) else 1


def cmd_permutes(args, out):
    L = _load_lattice(args)
    T = _load_two_uniform(L, args.T, "T")
    S = _load_two_uniform(L, args.S, "S")
    ts, st = tolerance.compose(T, S), tolerance.compose(S, T)
    perm = ts.rows == st.rows
    out("PERMUTING" if perm else "NOT PERMUTING")
    for x, y in (ts - st).pairs():
        out(f"in-TS-not-ST ({x},{y})")
    for x, y in (st - ts).pairs():
        out(f"in-ST-not-TS ({x},{y})")
    amic = _report_amicability(L, T, S, out)
    if amic != perm:
        out("THEOREM VIOLATION: amicability and permutability disagree")
    return 0 if perm and amic else 1


def cmd_witness(args, out):
    L = _load_lattice(args)
    T = _load_two_uniform(L, args.T, "T")
    S = _load_two_uniform(L, args.S, "S")
    a, b = args.a, args.b
    if a is None or b is None:
        raise InputError("witness needs a and b")
    if not (0 <= a < L.n and 0 <= b < L.n):
        raise InputError(f"elements must lie in [0, {L.n})")
    if (a, b) not in tolerance.compose(T, S):
        raise InputError(f"NotInProduct: ({a},{b}) is not in T∘S")
    us = engine.middle_elements(L, T, S, a, b) if args.all_u else [None]
    status = 0
    oracle = engine.brute_force_witnesses(L, T, S, a, b)
    for u in us:
        try:
            trace = engine.construct_witness(L, T, S, a, b, u=u)
        except engine.NotAmicable as exc:
            out(f"NOT AMICABLE: {exc}")
            status = 1
            continue
        for line in trace.lines():
            out(line)
        d = trace.result_d
        ok = (a, d) in S and (d, b) in T and d in oracle
        out("witness-check " + ("ok" if ok else "FAILED"))
        status = status or (0 if ok else 1)
    return status


def cmd_enumerate_tolerances(args, out):
    L = _load_lattice(args)
    for R in tolerance.enumerate_two_uniform(L):
        tag = " congruence" if tolerance.is_transitive(R) else ""
        out(" ".join(f"{x}-{y}" for x, y in R.edges()) + tag)
    return 0


def cmd_enumerate_lattices(args, out):
    if args.n is None:
        raise InputError("enumerate-lattices needs n")
    if not 1 <= args.n <= lattice.MAX_ENUMERATION_SIZE:
        raise InputError(f"n must lie in [1, {lattice.MAX_ENUMERATION_SIZE}]")
    found = lattice.enumerate_lattices(args.n)
    if args.out_dir:
        Path(args.out_dir).mkdir(parents=True, exist_ok=True)
    for i, L in enumerate(found):
        h = lattice.canonical_hex(L)
        out(f"{h} " + " ".join(f"{x}-{y}" for x, y in L.cover_pairs))
        if args.out_dir:
            (Path(args.out_dir) / f"n{args.n}_{i:03d}.lat").write_text(lattice.format_lattice(L))
    out(f"count={len(found)}")
    return 0


def cmd_verify(args, out):
    if not 2 <= args.max_n <= lattice.MAX_ENUMERATION_SIZE:
        raise InputError(f"--max-n must lie in [2, {lattice.MAX_ENUMERATION_SIZE}]")
    if args.max_n == 8 and not args.allow_8:
        raise InputError("--max-n 8 needs --allow-8")
    report = engine.run_catalog(args.max_n, all_u=args.all_u, workers=args.jobs)
    for line in report.lines():
        out(line)
    if args.report:
        from .plotting import plot_catalog_summary
        plot_catalog_summary(report, Path(args.report).with_suffix(".png"))
    return 0 if report.ok else 1


def cmd_export_dot(args, out):
    L = _load_lattice(args)
    T = _load_relation(L, args.T, "T", required=False)
    S = _load_relation(L, args.S, "S", required=False)
    for path, R in ((args.T, T), (args.S, S)):
        if R is not None and not tolerance.is_tolerance(L, R):
            raise InputError(f"{path}: NotATolerance")
    text = to_dot(L, T, S)
    if args.out:
        Path(args.out).write_text(text)
    else:
        for line in text.splitlines():
            out(line)
    if args.png:
        from .plotting import plot_hasse
        plot_hasse(L, T, S, path=args.png)
    return 0


COMMANDS = {
    "check-tolerance": cmd_check_tolerance,
    "blocks": cmd_blocks,
    "classify": cmd_classify,
    "amicable": cmd_amicable,
    "permutes": cmd_permutes,
    "witness": cmd_witness,
    "enumerate-tolerances": cmd_enumerate_tolerances,
    "enumerate-lattices": cmd_enumerate_lattices,
    "verify": cmd_verify,
    "export-dot": cmd_export_dot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permtol", description="2-uniform tolerances on finite lattices")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lattice", help="lattice file (n, then 'i j' cover lines)")
    common.add_argument("-T", "--T", dest="T", help="tolerance file ('i j' lines)")
    common.add_argument("-S", "--S", dest="S", help="second tolerance file")
    common.add_argument("--report", help="also write the textual output to this path")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "witness":
            p.add_argument("--a", type=int)
            p.add_argument("--b", type=int)
            p.add_argument("--all-u", action="store_true", help="run every middle element u")
        elif name == "enumerate-lattices":
            p.add_argument("--n", type=int)
            p.add_argument("--out-dir", help="write each lattice to a .lat file here")
        elif name == "verify":
            p.add_argument("--max-n", type=int, default=6)
            p.add_argument("--all-u", action="store_true")
            p.add_argument("--jobs", type=int, default=1)
            p.add_argument("--allow-8", action="store_true", help="permit --max-n 8")
        elif name == "export-dot":
            p.add_argument("--out", "-o", help="DOT output path (default: stdout)")
            p.add_argument("--png", help="also render a matplotlib figure to this path")
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_normalise(argv))
    lines = []

    def out(line):
        lines.append(line)
        print(line)

    try:
        status = COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.report:
        Path(args.report).write_text("\n".join(lines) + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
