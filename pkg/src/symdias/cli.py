"""Command-line driver: one subcommand per reproduction, checked against golden data.

Exit status is 0 when every computed value agrees with the shipped reference
values (or ``--no-golden`` is given), 1 on a mismatch (a diff goes to stderr),
and 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import exactlinalg as xl
from . import golden, pipeline
from .dias import check_loday_axioms, dias_sort_key, enum_dias, format_poly
from .expansion import (
    PATTERNS,
    check_jordan_dialgebra_identities,
    collapsed_basis,
    collapsed_matrix,
    expand,
    expansion_matrix,
)
from .magma import LETTERS, ParseError, enum_association_types, enum_multilinear, parse, to_string
from .symrep import format_decomposition, partition_label

PRIME_ENV = "SYMDIAS_PRIME"
FORMATS = ("text", "csv", "json")

log = logging.getLogger("symdias")


@dataclass
class RunConfig:
    prime: int = xl.DEFAULT_PRIME
    degree: int = 0
    pattern: str | None = None
    fmt: str = "text"
    workers: int = 1
    golden: bool = True

    def __post_init__(self):
        if not xl.is_prime(self.prime) or self.prime == 2:
            raise ValueError(f"--prime must be an odd prime, got {self.prime}")
        if self.prime <= self.degree:
            raise ValueError(f"prime {self.prime} must exceed the degree {self.degree}")
        if self.pattern is not None and self.pattern not in PATTERNS:
            raise ValueError(f"unknown pattern {self.pattern!r}")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.workers < 1:
            raise ValueError("--workers must be positive")


@dataclass
class Report:
    """What a subcommand produced: text lines, one CSV table, and a JSON payload."""

    lines: list = field(default_factory=list)
    header: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return golden.dumps(self.data) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(self.header)
            writer.writerows(self.rows)
            return buf.getvalue()
        return "\n".join(self.lines) + "\n"


# -- subcommands ---------------------------------------------------------------


def cmd_expand(text: str, multilinear: bool, cmp: golden.Comparison) -> Report:
    tree = parse(text, LETTERS, multilinear=multilinear)
    poly = expand(tree)
    terms = sorted(poly.items(), key=lambda kv: dias_sort_key(kv[0]))
    rep = Report(header=["center", "word", "coefficient"])
    rep.lines.append(f"X({to_string(tree)}) = {format_poly(poly)}")
    rep.lines.append(f"{len(poly)} terms, coefficient sum {sum(poly.values())}")
    for m, c in terms:
        rep.rows.append([m.center, "".join(LETTERS[a] for a in m.word), c])
    rep.data = {
        "monomial": to_string(tree),
        "terms": [[c, "".join(LETTERS[a] for a in m.word), m.center] for m, c in terms],
    }
    key = to_string(tree)
    ref = golden.load("expansions")["expansions"]
    if key in ref:
        cmp.check(f"expansion {key}", ref[key], rep.data["terms"])
    elif key == "(ab)c":
        cmp.check("expansion (ab)c", golden.load("example3")["expansion"], format_poly(poly))
    return rep


def cmd_rank(cfg: RunConfig, cmp: golden.Comparison) -> Report:
    n = cfg.degree
    if not 3 <= n <= 6:
        raise ValueError("rank supports degrees 3 to 6")
    E = expansion_matrix(n)
    rank = xl.rank_mod(E, cfg.prime)
    nullity = E.shape[1] - rank
    rep = Report(header=["degree", "rows", "columns", "rank", "nullity", "prime"])
    rep.rows.append([n, E.shape[0], E.shape[1], rank, nullity, cfg.prime])
    rep.lines.append(f"degree {n}: expansion matrix {E.shape[0]} x {E.shape[1]} over GF({cfg.prime})")
    rep.lines.append(f"rank {rank} / {E.shape[1]} columns, nullity {nullity}")
    rep.data = {"degree": n, "shape": list(E.shape), "rank": rank, "nullity": nullity, "prime": cfg.prime}
    cmp.check("shape", [n * _fact(n), _double_fact(2 * n - 3)], list(E.shape))
    if n == 3:
        ref = golden.load("example3")
        cmp.check("transposed matrix", ref["transpose"], E.T.tolist())
        cmp.check("rank", ref["rank"], rank)
    elif n == 4:
        ref = golden.load("submatrix4")
        sub = E[[r - 1 for r in ref["rows"]]]
        cmp.check("submatrix", ref["matrix"], sub.tolist())
        cmp.check("submatrix rank", ref["rank"], xl.rank_mod(sub, cfg.prime))
        cmp.check("nullity", 0, nullity)
    elif n == 5:
        ref = golden.load("degree5")
        rows = [i + 1 for i in xl.lex_first_row_basis(E, cfg.prime)]
        rep.lines.append("lexicographically first row basis: " + _ranges(rows))
        rep.data["lex_first_rows"] = rows
        cmp.check("rank", ref["rank"], rank)
        cmp.check("lex-first rows", ref["lex_first_rows"], rows)
    else:
        ref = golden.load("degree6")
        cmp.check("rank", ref["rank"], rank)
        cmp.check("nullity", ref["nullity"], nullity)
    return rep


def cmd_degree6(cfg: RunConfig, cmp: golden.Comparison) -> Report:
    if cfg.pattern:
        return _degree6_pattern(cfg.pattern, cmp)
    ref = golden.load("degree6")
    res, rows = pipeline.degree6_integer_identities(cfg.prime)
    classes = sorted({int(v) for v in np.unique(res.nullspace)})
    char, dec, _ = pipeline.degree6_module(cfg.prime, rows=rows)
    rep = Report(header=["row", "nonzero", "entries"])
    rep.lines.append(f"degree 6: expansion matrix {res.shape[0]} x {res.shape[1]} over GF({cfg.prime})")
    rep.lines.append(f"rank {res.rank}, nullity {res.nullity}")
    rep.lines.append(f"{len(classes)} residue classes in the nullspace")
    rep.lines.append("integer rows (scale 4): row, nonzero count, distinct entries")
    table = []
    for i, r in enumerate(rows, 1):
        entries = sorted({int(v) for v in r})
        nz = sum(1 for v in r if v)
        table.append({"row": i, "nonzero": nz, "entries": entries})
        rep.rows.append([i, nz, " ".join(map(str, entries))])
        rep.lines.append(f"  {i}  {nz:4d}  {', '.join(map(str, entries))}")
    rep.lines.append(f"character {char}")
    rep.lines.append(f"decomposition {format_decomposition(dec)}")
    rep.data = {
        "prime": cfg.prime, "rank": res.rank, "nullity": res.nullity,
        "residue_classes": classes, "reconstructed": table,
        "character": char, "decomposition": [[list(lam), m] for lam, m in dec],
    }
    cmp.check("rank", ref["rank"], res.rank)
    cmp.check("nullity", ref["nullity"], res.nullity)
    if cfg.prime == ref["prime"]:
        cmp.check("residue classes", ref["residue_classes"], classes)
    else:
        cmp.skip("residue classes", f"reference computed mod {ref['prime']}")
    cmp.check("reconstructed rows", ref["reconstructed"], table)
    cmp.check("character", ref["character"], char)
    cmp.check("decomposition", ref["decomposition"], rep.data["decomposition"])
    return rep


def _degree6_pattern(pattern: str, cmp: golden.Comparison) -> Report:
    ref = golden.load(pattern)
    E = collapsed_matrix(pattern)
    cols = collapsed_basis(pattern)[0]
    ids = pipeline.degree6_nonlinear(pattern)
    rank = E.shape[1] - len(ids)
    names = [_mono(t) for t in cols]
    rep = Report(header=names)
    rep.lines.append(f"pattern {pattern}: collapsed matrix {E.shape[0]} x {E.shape[1]}")
    rep.lines.append(xl.ExactMatrix(E.tolist(), "ZZ").to_text().rstrip("\n"))
    rep.lines.append(f"rank {rank}, nullity {len(ids)}")
    rep.lines.append("LLL-reduced identities:")
    for f in ids:
        rep.lines.append(f"  {f.format()}")
        rep.rows.append(list(f.coeffs))
    rep.data = {
        "pattern": pattern, "matrix": E.tolist(), "columns": names, "rank": rank,
        "nullity": len(ids), "identities": [list(f.coeffs) for f in ids],
        "formatted": [f.format() for f in ids],
    }
    cmp.check("collapsed matrix", ref["E"], E.tolist())
    basis = [list(f.coeffs) for f in ids]
    known = [list(pipeline.parse_identity(t, pattern).coeffs) for t in ref["identities"]]
    cmp.check("reference identities in lattice", [True] * len(known),
              [bool(basis) and xl.in_lattice(v, basis) for v in known])
    cmp.check("lattice equality", True, bool(basis) and xl.same_lattice(known, basis))
    return rep


def cmd_degree7(cfg: RunConfig, cmp: golden.Comparison) -> Report:
    ref = golden.load("degree7")
    table = pipeline.degree7_table(cfg.prime, cfg.workers)
    rep = Report(header=["partition", "dim", "rank_S", "rank_SC", "rank_N", "new"])
    labels = [partition_label(r.partition) for r in table.reports]
    width = max(len(s) for s in labels) + 1
    rep.lines.append(f"degree 7 over GF({cfg.prime})")
    rep.lines.append(f"{'lambda':<{width}} {'dim':>4} {'S':>5} {'SC':>5} {'N':>5} {'new':>4}")
    for lab, r in zip(labels, table.reports):
        rep.rows.append([lab, r.dim, r.rank_S, r.rank_SC, r.rank_N, r.new])
        rep.lines.append(f"{lab:<{width}} {r.dim:>4} {r.rank_S:>5} {r.rank_SC:>5} {r.rank_N:>5} {r.new:>4}")
    dec = format_decomposition(table.decomposition())
    rep.lines.append(f"new identities: dimension {table.total_new} = {dec}")
    rows = table.rows()
    rep.data = {
        "prime": cfg.prime,
        "partitions": [list(r.partition) for r in table.reports],
        "dims": [r.dim for r in table.reports],
        "rank_S": rows["rank(S)"], "rank_SC": rows["rank(SC)"], "rank_N": rows["rank(N)"],
        "new": rows["new"], "total": table.total_new, "decomposition": dec,
        "contained": all(r.contained for r in table.reports),
    }
    cmp.check("partitions", ref["partitions"], rep.data["partitions"])
    for key in ("rank_S", "rank_SC", "rank_N", "new", "total", "decomposition"):
        cmp.check(key, ref[key], rep.data[key])
    cmp.check("consequences lie in the nullspace", True, rep.data["contained"])
    return rep


def cmd_selftest(cfg: RunConfig, cmp: golden.Comparison) -> Report:
    """Fast checks (a few seconds): counts, axioms, low degrees and the two patterns."""
    rep = Report(header=["check", "status"])
    before = len(cmp.checks)
    for n in range(3, 8):
        cmp.check(f"free commutative monomials, degree {n}", _double_fact(2 * n - 3), len(enum_multilinear(n)))
        cmp.check(f"diassociative monomials, degree {n}", n * _fact(n), len(enum_dias(n)))
    cmp.check("association types 1..7", [1, 1, 1, 2, 3, 6, 11],
              [len(enum_association_types(n)) for n in range(1, 8)])
    for name, (cases, bad) in check_loday_axioms(4).items():
        cmp.check(f"Loday: {name} ({cases} cases)", 0, bad)
    for name, nonzero in check_jordan_dialgebra_identities().items():
        cmp.check(f"Jordan dialgebra: {name}", 0, nonzero)
    for n in (3, 4):
        cmp_n = golden.Comparison()
        cmd_rank(RunConfig(cfg.prime, n), cmp_n)
        cmp.checks.extend((f"rank {n}: {c[0]}",) + c[1:] for c in cmp_n.checks)
    for pattern in PATTERNS:
        cmp_p = golden.Comparison()
        _degree6_pattern(pattern, cmp_p)
        cmp.checks.extend((f"{pattern}: {c[0]}",) + c[1:] for c in cmp_p.checks)
    for name, ok, _, _ in cmp.checks[before:]:
        status = "skip" if ok is None else "pass" if ok else "FAIL"
        rep.rows.append([name, status])
        rep.lines.append(f"{status:4}  {name}")
    rep.data = {name: (None if ok is None else bool(ok)) for name, ok, _, _ in cmp.checks[before:]}
    return rep


# -- helpers -------------------------------------------------------------------


def _fact(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def _double_fact(n: int) -> int:
    out = 1
    for k in range(n, 0, -2):
        out *= k
    return out


def _mono(t) -> str:
    return to_string(t, "xy").replace("(xx)", "x^2")


def _ranges(xs) -> str:
    out, i = [], 0
    while i < len(xs):
        j = i
        while j + 1 < len(xs) and xs[j + 1] == xs[j] + 1:
            j += 1
        out.append(str(xs[i]) if i == j else f"{xs[i]}-{xs[j]}")
        i = j + 1
    return ", ".join(out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=None,
                        help=f"modulus for modular elimination (default ${PRIME_ENV} or {xl.DEFAULT_PRIME})")
    common.add_argument("--format", choices=FORMATS, default="text", dest="fmt")
    common.add_argument("--workers", type=int, default=1, help="processes for per-partition jobs")
    common.add_argument("--no-golden", action="store_true", help="skip comparison with reference values")
    common.add_argument("-v", "--verbose", action="store_true", help="log timings to stderr")

    parser = argparse.ArgumentParser(prog="symdias", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("expand", parents=[common], help="expand a commutative monomial")
    p.add_argument("monomial", help="parenthesized monomial such as ((ab)c)d")
    p.add_argument("--multilinear", action="store_true", help="reject repeated variables")
    p = sub.add_parser("rank", parents=[common], help="rank of the multilinear expansion matrix")
    p.add_argument("--degree", type=int, required=True)
    p = sub.add_parser("degree6", parents=[common], help="degree-6 identities")
    p.add_argument("--pattern", choices=sorted(PATTERNS), default=None)
    sub.add_parser("degree7", parents=[common], help="degree-7 table by partition")
    sub.add_parser("selftest", parents=[common], help="quick consistency checks")
    return parser


def _resolve_prime(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(PRIME_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"${PRIME_ENV} is not an integer: {env!r}") from None
    return xl.DEFAULT_PRIME


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    degree = {"rank": getattr(args, "degree", 0), "degree6": 6, "degree7": 7}.get(args.command, 0)
    try:
        cfg = RunConfig(prime=_resolve_prime(args.prime), degree=degree,
                        pattern=getattr(args, "pattern", None), fmt=args.fmt,
                        workers=args.workers, golden=not args.no_golden)
        cmp = golden.Comparison()
        start = time.perf_counter()
        if args.command == "expand":
            rep = cmd_expand(args.monomial, args.multilinear, cmp)
        elif args.command == "rank":
            rep = cmd_rank(cfg, cmp)
        elif args.command == "degree6":
            rep = cmd_degree6(cfg, cmp)
        elif args.command == "degree7":
            rep = cmd_degree7(cfg, cmp)
        else:
            rep = cmd_selftest(cfg, cmp)
        log.info("%s finished in %.2f s", args.command, time.perf_counter() - start)
    except (ParseError, ValueError) as exc:
        print(f"symdias: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(rep.render(cfg.fmt))
    if not cfg.golden:
        return 0
    log.info("%s", cmp.summary())
    if not cmp.ok:
        print(cmp.diff(), file=sys.stderr)
        print(cmp.summary(), file=sys.stderr)
        return 1
    return 0
