"""Command-line entry point.

Every command writes one report.  JSON reports are an envelope
``{"command", "seed", "results": [...]}`` with keys in a fixed order; big
exact integers are decimal strings.  CSV reports have a fixed header per
command (see ``CSV_FIELDS``).  Exit status is 0 when every verdict holds,
1 when some bound is violated (a counterexample file is written), 2 on
errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys

from . import algebra_closure as ac
from .commutant import commutant_basis, commutant_dimension_formula, shifted_commutant_dimensions, verify_shifted_commutant_bound
from .errors import AdmissibilityError
from .exact_core import DEFAULT_SIZE_CAP, check_size, load_family, load_matrix, loads_json
from .families import FamilySpec, build_family, derive_seed, random_commuting_family, tightness_search
from .spectral import is_nilpotent, jordan_matrix, jordan_type, partitions, rank_sequence

CSV_FIELDS = {
    "jordan-type": [("partition", "partition"), ("rank_sequence", "rank_sequence")],
    "commutant": [("n", "n"), ("dim", "dim"), ("jordan_type", "jordan_type"), ("formula_dim", "formula_dim")],
    "algebra-dim": [("n", "n"), ("l", "l"), ("dim", "dim")],
    "search": [
        ("n", "n"), ("l", "l"), ("dim", "dim"), ("ratio", "ratio_display"), ("evaluations", "evaluations"),
        ("violation", "violation"), ("spec", "spec"),
    ],
    "verify-lemma4": [
        ("n", "n"), ("partition", "partition"), ("m", "m"), ("dim", "dim"),
        ("bound_num", "bound_numerator"), ("bound_den", "bound_denominator"), ("holds", "holds"),
    ],
    "verify-lemma2": [
        ("trial", "trial"), ("seed", "seed"), ("n", "n"), ("l", "l"), ("construction", "construction"),
        ("dim", "dim"), ("lhs", "lhs"), ("rhs", "rhs"), ("holds", "holds"),
    ],
    "bounds": [
        ("n", "n"), ("index", "index"), ("new_squared", "new_squared"), ("new_approx", "new_approx"),
        ("bernstein", "bernstein"), ("new_smaller", "new_smaller"), ("crossover_index", "crossover_index"),
    ],
    "split": [
        ("n", "n"), ("l", "l"), ("x_star", "x_star"), ("f_min", "f_min"), ("f_min_approx", "f_min_approx"),
        ("bound_approx", "bound_approx"), ("x0_approx", "x0_approx"), ("x0_integral", "x0_integral"),
        ("exceeds", "exceeds"),
    ],
}


class CommandFailed(Exception):
    """A verdict was false; carries the counterexample payload."""

    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


def parse_range(text, lo=1):
    """``"a-b"``, ``"a,b,c"`` or ``"a"`` -> sorted list of ints, all >= lo."""
    values = set()
    for chunk in str(text).split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        a, sep, b = chunk.partition("-")
        try:
            if sep:
                values.update(range(int(a), int(b) + 1))
            else:
                values.add(int(a))
        except ValueError:
            raise ValueError(f"bad range {text!r}") from None
    if not values:
        raise ValueError(f"empty range {text!r}")
    if min(values) < lo:
        raise ValueError(f"range {text!r} must be >= {lo}")
    return sorted(values)


# ---------------------------------------------------------------------------
# Report emission

def _csv_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return " ".join(str(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    if value is None:
        return ""
    return str(value)


def render_report(results, fmt="json", command="", seed=0):
    if not results:
        raise ValueError("refusing to write an empty report")
    if fmt == "json":
        envelope = {"command": command, "seed": seed, "results": results}
        return json.dumps(envelope, indent=2) + "\n"
    if fmt == "csv":
        fields = CSV_FIELDS.get(command)
        if fields is None:
            raise ValueError(f"no CSV layout for command {command!r}")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([name for name, _ in fields])
        for row in results:
            writer.writerow([_csv_cell(row.get(key)) for _, key in fields])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(results, fmt="json", path=None, command="", seed=0):
    """Render and write a report; nothing is written for empty results."""
    text = render_report(results, fmt, command, seed)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def _write_counterexample(args, payload):
    path = args.counterexample
    if path is None:
        path = (args.output + ".counterexample.json") if args.output and args.output != "-" else "counterexample.json"
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    print(f"bound violated; counterexample written to {path}", file=sys.stderr)


# ---------------------------------------------------------------------------
# Commands

def cmd_jordan_type(args):
    A = load_matrix(args.matrix)
    return [{"partition": jordan_type(A).to_json(), "rank_sequence": rank_sequence(A)}]


def cmd_commutant(args):
    A = load_matrix(args.matrix)
    cb = commutant_basis(A, args.size_cap)
    row = {"n": A.n, "dim": cb.dim}
    if is_nilpotent(A):
        p = jordan_type(A)
        row["jordan_type"] = p.to_json()
        row["formula_dim"] = commutant_dimension_formula(p)
    row["basis"] = [B.to_json() for B in cb.basis]
    return [row]


def cmd_algebra_dim(args):
    family = load_family(args.family)
    check_size(family.n, args.size_cap)
    algebra = ac.generated_algebra_basis(family)
    return [{"n": family.n, "l": family.l, "dim": algebra.dim, "basis": [B.to_json() for B in algebra.basis]}]


def _bound_row(family, trial=None, seed=None, construction=None):
    report = ac.verify_commuting_algebra_bound(family)
    row = {}
    if trial is not None:
        row.update(trial=trial, seed=str(seed), construction=construction)
    row.update(
        n=family.n,
        l=family.l,
        dim=report.quantity,
        lhs=str(report.lhs),
        rhs=str(report.rhs),
        holds=report.holds,
        ratio=report.approx.get("ratio"),
    )
    return row, report


def cmd_verify_lemma2(args):
    if not args.random:
        if args.family is None:
            raise AdmissibilityError("verify-lemma2 needs a family file or --random")
        family = load_family(args.family)
        check_size(family.n, args.size_cap)
        row, report = _bound_row(family)
        if not report.holds:
            raise CommandFailed({"family": family.to_json(), "report": report.to_json()})
        return [row]
    n_values = parse_range(args.n)
    l_values = parse_range(args.l)
    check_size(max(n_values), args.size_cap)
    rows, failures = [], []
    for trial in range(args.trials):
        seed = derive_seed(args.seed, trial)
        rng = random.Random(seed)
        n, l = rng.choice(n_values), rng.choice(l_values)
        family, spec = random_commuting_family(n, l, seed)
        row, report = _bound_row(family, trial, seed, spec.construction)
        rows.append(row)
        if not report.holds:
            failures.append({"spec": spec.to_json(), "family": family.to_json(), "report": report.to_json()})
    if failures:
        raise CommandFailed({"failures": failures, "rows": rows})
    return rows


def cmd_verify_lemma4(args):
    check_size(args.n_max, args.size_cap)
    rows, failures = [], []
    for n in range(1, args.n_max + 1):
        for p in partitions(n):
            dims = shifted_commutant_dimensions(jordan_matrix(p), args.size_cap)
            for m in range(1, n + 1):
                report = verify_shifted_commutant_bound(p, m, dims[m])
                d = report.details
                row = {
                    "n": n,
                    "partition": d["partition"],
                    "m": m,
                    "dim": report.quantity,
                    "bound_numerator": d["bound_numerator"],
                    "bound_denominator": d["bound_denominator"],
                    "holds": report.holds,
                    "certificate": d["certificate"],
                }
                rows.append(row)
                if not report.holds:
                    failures.append({"matrix": jordan_matrix(p).to_json(), "row": row})
    if failures:
        raise CommandFailed({"failures": failures, "rows": rows})
    return rows


def cmd_bounds(args):
    rows = []
    for n in parse_range(args.n):
        for index in parse_range(args.index):
            new = ac.hecke_bound_new(n, index)
            cmp = ac.compare_hecke_bounds(n, index)
            old = ac.hecke_bound_bernstein(n, index) if n <= ac.BERNSTEIN_MAX_N else None
            rows.append({
                "n": n,
                "index": index,
                "new_squared": str(new.squared),
                "new_approx": new.display,
                "bernstein": None if old is None else str(old),
                "new_smaller": cmp.new_smaller,
                "crossover_index": cmp.crossover_index,
            })
    return rows


def cmd_split(args):
    return [ac.split_report(n, l) for n in parse_range(args.n) for l in parse_range(args.l)]


def cmd_gen(args):
    with open(args.spec) as fh:
        spec = FamilySpec.from_json(loads_json(fh.read(), args.spec))
    return build_family(spec, args.size_cap).to_json()


def cmd_search(args):
    check_size(args.n, args.size_cap)
    record = tightness_search(args.n, args.l, args.budget, args.seed)
    if record.violation:
        raise CommandFailed({"record": record.to_json(), "family": build_family(record.spec).to_json()})
    return [record.to_json()]


COMMANDS = {
    "jordan-type": cmd_jordan_type,
    "commutant": cmd_commutant,
    "algebra-dim": cmd_algebra_dim,
    "verify-lemma2": cmd_verify_lemma2,
    "verify-lemma4": cmd_verify_lemma4,
    "bounds": cmd_bounds,
    "split": cmd_split,
    "gen": cmd_gen,
    "search": cmd_search,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", default=None, help="report path (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0, help="master RNG seed")
    common.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP)
    common.add_argument("--counterexample", default=None, help="where to write a counterexample on violation")

    parser = argparse.ArgumentParser(prog="admissibility", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jordan-type", parents=[common], help="Jordan type of a nilpotent matrix")
    p.add_argument("matrix")
    p = sub.add_parser("commutant", parents=[common], help="basis of {B : AB = BA}")
    p.add_argument("matrix")
    p = sub.add_parser("algebra-dim", parents=[common], help="dimension of the generated unital algebra")
    p.add_argument("family")
    p = sub.add_parser("verify-lemma2", parents=[common], help="commuting-family dimension bound")
    p.add_argument("family", nargs="?")
    p.add_argument("--random", action="store_true")
    p.add_argument("--n", default="1-8")
    p.add_argument("--l", default="1-4")
    p.add_argument("--trials", type=int, default=1000)
    p = sub.add_parser("verify-lemma4", parents=[common], help="m * dim span{A^m B} <= n^2 over all Jordan types")
    p.add_argument("--n-max", type=int, required=True)
    p = sub.add_parser("bounds", parents=[common], help="new vs Bernstein bounds on dim V^K")
    p.add_argument("--n", default="2-6")
    p.add_argument("--index", default="2,10,100")
    p = sub.add_parser("split", parents=[common], help="integer minimum of l n^2/x + x^l")
    p.add_argument("--n", default="1-100")
    p.add_argument("--l", default="1-6")
    p = sub.add_parser("gen", parents=[common], help="family JSON from a family spec")
    p.add_argument("spec")
    p = sub.add_parser("search", parents=[common], help="hill-climbing search for tight families")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--budget", type=int, default=100)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        results = COMMANDS[args.command](args)
        if args.command == "gen":
            text = json.dumps(results, indent=2) + "\n"
            if args.output and args.output != "-":
                with open(args.output, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
        else:
            emit_report(results, args.format, args.output, args.command, args.seed)
        return 0
    except CommandFailed as failed:
        rows = failed.payload.get("rows")
        if rows:
            emit_report(rows, args.format, args.output, args.command, args.seed)
        _write_counterexample(args, failed.payload)
        return 1
    except (AdmissibilityError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
