"""Command line front end.

Four subcommands: ``bch`` prints the series terms grade by grade, ``symbch``
does the same for the symmetric product exp(X/2) exp(Y) exp(X/2),
``identities`` prints the commutator basis and identity list for one grade,
and ``table`` reproduces the published term-count table next to the counts
this build computes.  Formats: plain text, JSON (rationals as "p/q" strings,
never floats), and LaTeX (nested brackets or the comma-list shorthand
[X,X,Y,X,Y]).  Output is deterministic: identical flags give byte-identical
documents.

Exit codes: 0 success, 1 usage error, 2 verification failure (--verify
cross-checks the permutation-sum series against the two independent oracle
routes before printing and refuses to emit anything on a mismatch).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from bchnest import __version__
from bchnest.identities import (
    REFERENCE_COUNTS,
    IdentityReport,
    apply_rules,
    compact_bch_term,
    compact_reduce,
    full_reduce,
    identities_and_basis,
    lifted_identities,
    lifted_rules,
    relation_rules,
    table_counts,
)
from bchnest.series import (
    bch_term,
    bch_term_dynkin,
    log_product_words,
    symmetric_bch_term,
)
from bchnest.terms import Leaves, LieExpr, expand_lie

GRADE_CAP = 10
GENERATORS = "XYZWVUTSRQ"
REGIMES = ("none", "grade4", "grade6", "full", "compact")
FORMATS = ("text", "json", "latex")
TABLE_ROWS = ("dim", "none", "grade4", "grade6", "compact", "symmetric")


class VerificationError(Exception):
    """Raised when --verify finds the oracle routes disagreeing."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for verification
    # failures here, so remap.
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _leaf_names(leaves: Leaves) -> list[str]:
    return [GENERATORS[i] for i in leaves]


def _coeff_str(c: Fraction) -> str:
    return str(c)


def _bracket(leaves: Leaves, style: str = "nested") -> str:
    names = _leaf_names(leaves)
    if len(names) == 1:
        return names[0]
    if style == "flat":
        return "[" + ",".join(names) + "]"
    out = names[-1]
    for name in reversed(names[:-1]):
        out = f"[{name},{out}]"
    return out


def _signed_join(pieces: list[tuple[Fraction, str]]) -> str:
    """Join (coefficient, symbol) pieces into '+/-' separated text."""
    if not pieces:
        return "0"
    chunks = []
    for i, (c, sym) in enumerate(pieces):
        mag = abs(c)
        body = sym if mag == 1 else f"{_coeff_str(mag)} {sym}"
        if i == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f" {'+' if c > 0 else '-'} {body}")
    return "".join(chunks)


def series_text(expr: LieExpr, style: str = "nested") -> str:
    return _signed_join(
        [(c, _bracket(leaves, style)) for leaves, c in expr.sorted_terms()]
    )


def _latex_mag(mag: Fraction) -> str:
    if mag == 1:
        return ""
    if mag.denominator == 1:
        return f"{mag.numerator}\\,"
    return f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}\\,"


def series_latex(expr: LieExpr, style: str = "nested") -> str:
    terms = expr.sorted_terms()
    if not terms:
        return "0"
    chunks = []
    for i, (leaves, c) in enumerate(terms):
        body = _latex_mag(abs(c)) + _bracket(leaves, style)
        if i == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f" {'+' if c > 0 else '-'} {body}")
    return "".join(chunks)


def series_json_doc(expr: LieExpr, meta: dict) -> dict:
    return {
        "meta": meta,
        "terms": [
            {"leaves": _leaf_names(leaves), "coeff": _coeff_str(c)}
            for leaves, c in expr.sorted_terms()
        ],
    }


def render_series_json(expr: LieExpr, meta: dict) -> str:
    return json.dumps(series_json_doc(expr, meta), indent=2) + "\n"


def parse_series_json(text: str) -> tuple[dict, LieExpr]:
    """Inverse of render_series_json: returns (meta, expression)."""
    doc = json.loads(text)
    terms = {}
    for entry in doc["terms"]:
        leaves = tuple(GENERATORS.index(name) for name in entry["leaves"])
        terms[leaves] = Fraction(entry["coeff"])
    return doc["meta"], LieExpr(terms)


def _identity_order(ident: LieExpr) -> list[tuple[Leaves, Fraction]]:
    # Dependent commutator (the lex-greatest, normalized to +1) first.
    return sorted(ident.terms.items(), key=lambda kv: kv[0], reverse=True)


def identity_text(ident: LieExpr, style: str = "nested") -> str:
    pieces = [(c, _bracket(leaves, style)) for leaves, c in _identity_order(ident)]
    return _signed_join(pieces) + " = 0"


def reduced_term(m: int, nvars: int, regime: str) -> LieExpr:
    """One grade of the plain series under the requested reduction."""
    if nvars != 2:
        return bch_term(m, nvars)
    if regime == "compact" and m >= 2:
        return compact_bch_term(m)
    e = bch_term(m, 2)
    if m < 2 or regime == "none":
        return e
    if regime == "grade4":
        return apply_rules(e, lifted_rules(m, 4))
    if regime == "grade6":
        return apply_rules(e, lifted_rules(m, 6))
    if regime == "full":
        return full_reduce(e, m)
    return e


def reduced_symmetric_term(m: int, regime: str) -> LieExpr:
    """One grade of the symmetric series under the requested reduction.

    The full and compact regimes assemble from compacted plain inputs; a
    shorter starting representation is worth having because the canonical
    basis rewrite is only kept when it does not enlarge the expression.
    """
    if regime in ("full", "compact") and m >= 2:
        e = symmetric_bch_term(m, phi=compact_bch_term)
        if not e:
            return e
        return full_reduce(e, m) if regime == "full" else compact_reduce(e, m)
    e = symmetric_bch_term(m)
    if m < 2 or regime == "none" or not e:
        return e
    if regime == "grade4":
        return apply_rules(e, lifted_rules(m, 4))
    if regime == "grade6":
        return apply_rules(e, lifted_rules(m, 6))
    return e


def run_verification(max_m: int) -> None:
    """Cross-check the three series routes; raise on any mismatch."""
    for m in range(1, min(max_m, 6) + 1):
        phi = expand_lie(bch_term(m, 2))
        dyn = expand_lie(bch_term_dynkin(m))
        words = log_product_words(m, 2)
        if (phi - dyn) or (phi - words):
            raise VerificationError(
                f"series routes disagree at grade {m}; refusing to print"
            )


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _series_document(args: argparse.Namespace, symmetric: bool) -> str:
    letter = "Psi" if symmetric else "Phi"
    variant = "symmetric" if symmetric else "plain"
    nvars = 2 if symmetric else args.vars

    def term(m: int) -> LieExpr:
        if symmetric:
            return reduced_symmetric_term(m, args.regime)
        return reduced_term(m, nvars, args.regime)

    if args.format == "json":
        meta = {
            "grade": args.grade,
            "vars": nvars,
            "regime": args.regime,
            "variant": variant,
            "version": __version__,
        }
        return render_series_json(term(args.grade), meta)
    lines = []
    for m in range(1, args.grade + 1):
        if args.format == "latex":
            body = series_latex(term(m), args.latex_style)
            lines.append(f"\\{letter}_{{{m}}} = {body} \\\\")
        else:
            lines.append(f"{letter}_{m} = {series_text(term(m))}")
    return "\n".join(lines) + "\n"


def cmd_bch(args: argparse.Namespace) -> str:
    return _series_document(args, symmetric=False)


def cmd_symbch(args: argparse.Namespace) -> str:
    return _series_document(args, symmetric=True)


def _novel_count(report: IdentityReport) -> int:
    # Identities beyond the span of ad-prefix lifts from lower grades; the
    # published per-grade identity counts quote exactly these.
    lifted_rank = len(relation_rules(lifted_identities(report.grade)))
    return len(report.identities) - lifted_rank


def _identities_json(report: IdentityReport) -> dict:
    return {
        "meta": {
            "grade": report.grade,
            "vars": 2,
            "version": __version__,
        },
        "commutators": [_leaf_names(c) for c in report.commutators],
        "basis": [_leaf_names(c) for c in report.basis],
        "novel": _novel_count(report),
        "identities": [
            [
                {"leaves": _leaf_names(leaves), "coeff": _coeff_str(c)}
                for leaves, c in _identity_order(ident)
            ]
            for ident in report.identities
        ],
    }


def _identities_header(report: IdentityReport) -> str:
    return (
        f"grade {report.grade}: {len(report.commutators)} commutators, "
        f"basis {len(report.basis)}, identities {len(report.identities)} "
        f"({_novel_count(report)} beyond lifts from lower grades)"
    )


def cmd_identities(args: argparse.Namespace) -> str:
    report = identities_and_basis(args.grade)
    if args.format == "json":
        return json.dumps(_identities_json(report), indent=2) + "\n"
    if args.format == "latex":
        style = args.latex_style
        lines = [f"% {_identities_header(report)}"]
        lines += [f"{_bracket(c, style)} \\\\" for c in report.basis]
        lines += [f"{identity_text(i, style)} \\\\" for i in report.identities]
        return "\n".join(lines) + "\n"
    lines = [
        _identities_header(report),
        "basis:",
    ]
    lines += [f"  {_bracket(c)}" for c in report.basis]
    lines.append("identities:")
    lines += [f"  {identity_text(i)}" for i in report.identities]
    return "\n".join(lines) + "\n"


def _table_rows(max_m: int, rows: tuple[str, ...]) -> dict[str, dict]:
    out = {}
    for row in rows:
        if row == "dim":
            computed = tuple(
                len(identities_and_basis(m).basis) for m in range(2, max_m + 1)
            )
        elif row == "symmetric":
            computed = table_counts(max_m, "compact", variant="symmetric")
        else:
            computed = table_counts(max_m, row)
        published = REFERENCE_COUNTS[row][: max_m - 1]
        out[row] = {
            "computed": computed,
            "published": published,
            "match": computed == published,
        }
    return out


def cmd_table(args: argparse.Namespace) -> str:
    rows = TABLE_ROWS if args.row == "all" else (args.row,)
    data = _table_rows(args.max_grade, rows)
    if args.format == "json":
        doc = {
            "meta": {
                "max_grade": args.max_grade,
                "version": __version__,
            },
            "rows": {
                row: {
                    "computed": list(info["computed"]),
                    "published": list(info["published"]),
                    "match": info["match"],
                }
                for row, info in data.items()
            },
        }
        return json.dumps(doc, indent=2) + "\n"
    head = f"terms per grade, m = 2..{args.max_grade}"
    sep = " & " if args.format == "latex" else "   "
    eol = " \\\\" if args.format == "latex" else ""
    lines = [head if args.format == "text" else f"% {head}"]
    for row, info in data.items():
        computed = ",".join(map(str, info["computed"]))
        published = ",".join(map(str, info["published"]))
        flag = "ok" if info["match"] else "DIFFERS"
        lines.append(
            f"{row:<9s}{sep}computed {computed}{sep}published {published}"
            f"{sep}{flag}{eol}"
        )
    return "\n".join(lines) + "\n"


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format", choices=FORMATS, default="text", help="output format"
    )
    p.add_argument(
        "--latex-style",
        choices=("nested", "flat"),
        default="nested",
        help="bracket rendering: [X,[Y,[X,Y]]] or the [X,Y,X,Y] shorthand",
    )
    p.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    p.add_argument(
        "--verify",
        action="store_true",
        help="cross-check the series against both oracle routes first",
    )
    p.add_argument(
        "--unsafe-grade",
        action="store_true",
        help=f"allow grades above {GRADE_CAP} (cost grows combinatorially)",
    )


def build_parser() -> _Parser:
    parser = _Parser(
        prog="bchnest",
        description="Exact Baker-Campbell-Hausdorff series in right-nested "
        "commutators, with identity discovery and term-count reduction.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bch = sub.add_parser("bch", help="series terms of log(exp X exp Y)")
    p_bch.add_argument("--grade", type=int, required=True, help="highest grade")
    p_bch.add_argument(
        "--vars", type=int, default=2, help="number of generators (default 2)"
    )
    p_bch.add_argument(
        "--regime",
        choices=REGIMES,
        default="none",
        help="identity reduction applied to each grade (two generators only)",
    )
    _add_common(p_bch)

    p_sym = sub.add_parser(
        "symbch", help="series terms of log(exp(X/2) exp Y exp(X/2))"
    )
    p_sym.add_argument("--grade", type=int, required=True, help="highest grade")
    p_sym.add_argument(
        "--regime", choices=REGIMES, default="none", help="identity reduction"
    )
    _add_common(p_sym)

    p_id = sub.add_parser(
        "identities", help="commutator basis and identities at one grade"
    )
    p_id.add_argument("--grade", type=int, required=True, help="grade (at least 2)")
    _add_common(p_id)

    p_tab = sub.add_parser(
        "table", help="published term-count table next to computed counts"
    )
    p_tab.add_argument(
        "--max-grade", type=int, default=GRADE_CAP, help="last grade (default 10)"
    )
    p_tab.add_argument(
        "--row",
        choices=("all",) + TABLE_ROWS,
        default="all",
        help="single row to print (default: all rows)",
    )
    _add_common(p_tab)
    return parser


def _doc_grade(args: argparse.Namespace) -> int:
    return args.grade if hasattr(args, "grade") else args.max_grade


def _validate(parser: _Parser, args: argparse.Namespace) -> None:
    grade = _doc_grade(args)
    if grade < 1:
        parser.error("grade must be at least 1")
    if grade > GRADE_CAP and not args.unsafe_grade:
        parser.error(
            f"grade {grade} exceeds the default cap {GRADE_CAP}; "
            "pass --unsafe-grade to proceed"
        )
    if args.command == "bch":
        if not 2 <= args.vars <= len(GENERATORS):
            parser.error(f"--vars must be between 2 and {len(GENERATORS)}")
        if args.vars != 2 and args.regime != "none":
            parser.error("identity regimes are defined for two generators only")
    if args.command == "identities" and grade < 2:
        parser.error("identities need grade at least 2")
    if args.command == "table" and grade < 2:
        parser.error("the table starts at grade 2")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    grade = _doc_grade(args)
    if grade > GRADE_CAP:
        print(
            f"warning: grade {grade} is above the published range; time and "
            "memory grow combinatorially",
            file=sys.stderr,
        )
    try:
        if args.verify:
            run_verification(grade)
        handler = {
            "bch": cmd_bch,
            "symbch": cmd_symbch,
            "identities": cmd_identities,
            "table": cmd_table,
        }[args.command]
        _emit(handler(args), args.output)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
