"""Command line front end: ``sensync scan|verify|special|classes``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad rule set, bad size range, unwritable output).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from .rule import TABLE_88, classes
from .schedule import expected_count, size_cap

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CSV_COLUMNS = (
    "rule", "n", "num_dynamics", "num_classes", "sensitivity_num",
    "sensitivity_den", "sensitivity_float", "class", "closed_form_match",
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def parse_rules(spec: str) -> list[int]:
    """Comma list of Wolfram numbers and named sets.

    Names: ``all`` (0..255), ``reps88``, ``nonmax19``, ``table1:<I|II|III|IV>``.
    """
    from .sensitivity import CLASS_MEMBERS, NONMAX_19

    out: set[int] = set()
    for token in filter(None, (t.strip() for t in spec.split(","))):
        if token == "all":
            out.update(range(256))
        elif token == "reps88":
            out.update(TABLE_88)
        elif token == "nonmax19":
            out.update(NONMAX_19)
        elif token.startswith("table1:"):
            cls = token.split(":", 1)[1].upper()
            if cls not in CLASS_MEMBERS:
                raise UsageError(f"unknown class {cls!r} in {token!r}")
            out.update(CLASS_MEMBERS[cls])
        else:
            try:
                w = int(token)
            except ValueError:
                raise UsageError(f"bad rule token {token!r}") from None
            if not 0 <= w <= 255:
                raise UsageError(f"rule {w} outside 0..255")
            out.add(w)
    if not out:
        raise UsageError("empty rule set")
    return sorted(out)


def parse_range(spec: str) -> list[int]:
    lo, sep, hi = spec.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad size range {spec!r}; expected N or A..B") from None
    if a > b:
        raise UsageError(f"empty size range {spec!r}")
    if a < 3 or b > size_cap():
        raise UsageError(f"size range {spec!r} outside 3..{size_cap()}")
    return list(range(a, b + 1))


def read_config(path: str | None) -> dict[str, str]:
    """Optional ``key=value`` file; ``#`` starts a comment."""
    if not path:
        return {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    conf = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"bad config line {line!r}")
        conf[key.strip()] = value.strip()
    return conf


def _output_path(out: str | None, outdir: str | None) -> Path | None:
    if out is None:
        return None
    p = Path(out)
    if outdir and not p.is_absolute():
        p = Path(outdir) / p
    return p


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


# ---------------------------------------------------------------------------
# scan


@dataclass(frozen=True)
class ScanRow:
    rule: int
    n: int
    num_dynamics: int
    num_classes: int
    sensitivity_num: int
    sensitivity_den: int
    sensitivity_float: str
    klass: str
    closed_form_match: str

    def as_dict(self) -> dict:
        d = asdict(self)
        d["class"] = d.pop("klass")
        return {k: d[k] for k in CSV_COLUMNS}


def scan_rows(rules, sizes, jobs: int | None = 1) -> list[ScanRow]:
    from .sensitivity import classify, closed_form, count_distinct_dynamics

    rows = []
    for w in sorted(rules):
        for n in sorted(sizes):
            d = count_distinct_dynamics(w, n, jobs=jobs)
            u = expected_count(n)
            value = Fraction(d, u)
            cf = closed_form(w, n)
            match = "not_covered" if not cf else ("yes" if cf.num_dynamics == d else "no")
            rows.append(
                ScanRow(w, n, d, u, value.numerator, value.denominator,
                        f"{float(value):.6f}", classify(w, n), match)
            )
    return rows


def format_rows(rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.as_dict() for r in rows], indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(r.as_dict())
    return buf.getvalue()


def cmd_scan(args) -> int:
    rules = parse_rules(args.rules)
    sizes = parse_range(args.n)
    rows = scan_rows(rules, sizes, jobs=args.jobs)
    _write(_output_path(args.out, args.outdir), format_rows(rows, args.format))
    if args.out:
        print(f"wrote {len(rows)} rows", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


class Report:
    def __init__(self):
        self.failures = 0

    def check(self, label: str, expected, actual) -> bool:
        ok = expected == actual
        tag = "PASS" if ok else "FAIL"
        detail = f"= {actual}" if ok else f"expected {expected}, got {actual}"
        print(f"{tag}  {label:<48} {detail}")
        self.failures += not ok
        return ok


def _suite_counts(rep: Report):
    from .oracle import enumerate_ordered_partitions
    from .schedule import enumerate_valid_labelings, label_of

    for n in range(3, 9):
        labs = {lab.code for lab in enumerate_valid_labelings(n)}
        rep.check(f"valid labelings n={n}", expected_count(n), len(labs))
        if n <= 6:
            via = {label_of(d).code for d in enumerate_ordered_partitions(n)}
            rep.check(f"labelings of all ordered partitions n={n}", True, via == labs)


def _suite_table1(rep: Report):
    from .sensitivity import NONMAX_19, THRESHOLDS, closed_form, count_distinct_dynamics

    for w in NONMAX_19:
        for n in range(max(3, THRESHOLDS[w]), 9):
            rep.check(f"rule {w} n={n} |D|", closed_form(w, n).num_dynamics,
                      count_distinct_dynamics(w, n))


def _suite_lucas(rep: Report):
    from .oracle import cyclic_word_sum
    from .sensitivity import count_distinct_dynamics, lucas_bisection

    for n in range(1, 13):
        rep.check(f"cyclic word sum n={n}", lucas_bisection(n), cyclic_word_sum(n))
    for n in range(5, 8):
        rep.check(f"rule 8 n={n} |D| + 2^n", lucas_bisection(n),
                  count_distinct_dynamics(8, n) + 2**n)


def _suite_special(rep: Report):
    from .special import find_special_pairs

    cases = [(128, n, 10) for n in (7, 8)] + [(162, n, 1) for n in range(3, 9)] + [(160, 9, 12)]
    for w, n, c in cases:
        s = find_special_pairs(w, n)
        rep.check(f"rule {w} n={n} special pairs", c * n, len(s))
        rep.check(f"rule {w} n={n} pairs disjoint", True, s.disjoint)
        rep.check(f"rule {w} n={n} one differing arc", True,
                  all(len(p.differing_arcs) == 1 for p in s))


def _suite_oracle(rep: Report):
    from .oracle import naive_dynamics_count
    from .sensitivity import count_distinct_dynamics

    for n in (4, 5):
        bad = [w for w in TABLE_88 if naive_dynamics_count(w, n) != count_distinct_dynamics(w, n)]
        rep.check(f"oracle vs enumeration, 88 rules, n={n}", [], bad)


SUITES = {
    "counts": _suite_counts,
    "table1": _suite_table1,
    "lucas": _suite_lucas,
    "special": _suite_special,
    "oracle": _suite_oracle,
}


def cmd_verify(args) -> int:
    rep = Report()
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        print(f"== {name}")
        SUITES[name](rep)
    print(f"{rep.failures} failure(s)")
    return EXIT_FAIL if rep.failures else EXIT_OK


# ---------------------------------------------------------------------------
# special / classes


def cmd_special(args) -> int:
    from .special import find_special_pairs

    if not 3 <= args.n <= size_cap():
        raise UsageError(f"n={args.n} outside 3..{size_cap()}")
    result = find_special_pairs(args.rule, args.n)
    path = _output_path(args.out, args.outdir)
    if path is not None:
        _write(path, result.to_json() + "\n")
    print(len(result))
    if not result.disjoint:
        sizes = ", ".join(f"{k}:{v}" for k, v in sorted(result.class_sizes.items()))
        print(f"dynamics class sizes {sizes}", file=sys.stderr)
    return EXIT_OK


def cmd_classes(args) -> int:
    table = classes()
    for rep, members in table.items():
        print(f"{rep}: {' '.join(map(str, sorted(members)))} (size {len(members)})")
    if tuple(table) != TABLE_88:
        print(f"class representatives differ from the reference list ({len(table)} found)",
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sensync", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="key=value file (ncap, outdir)")
    p.add_argument("--ncap", type=int, help="largest ring size accepted")
    p.add_argument("--outdir", help="directory for relative output paths")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes for sweeps (default: all cores)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scan", help="sensitivity table over rules x sizes")
    s.add_argument("--rules", required=True)
    s.add_argument("--n", required=True, help="size or inclusive range A..B")
    s.add_argument("--out")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_scan)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=(*SUITES, "all"))
    v.set_defaults(func=cmd_verify)

    sp = sub.add_parser("special", help="find special pairs")
    sp.add_argument("--rule", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_special)

    c = sub.add_parser("classes", help="list the 88 rule classes")
    c.set_defaults(func=cmd_classes)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        conf = read_config(args.config)
        ncap = args.ncap if args.ncap is not None else conf.get("ncap")
        if ncap is not None:
            os.environ["SENSYNC_NCAP"] = str(ncap)
            size_cap()
        if args.outdir is None:
            args.outdir = conf.get("outdir")
        if args.jobs is None:
            args.jobs = int(conf["jobs"]) if "jobs" in conf else os.cpu_count() or 1
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"sensync: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
