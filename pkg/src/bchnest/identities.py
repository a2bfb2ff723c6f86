"""Identity discovery among right-nested commutators by exact elimination.

At grade m there are 2^(m-2) canonical two-letter right-nested commutators,
but they span a smaller space: expanding each into associative words gives a
matrix whose vanishing row combinations are linear identities.  Exact
Gauss-Jordan elimination on the expansion matrix augmented with an identity
block yields, in one pass, a commutator basis (the lexicographically first
independent subset), the complete identity list, and the reduced matrix pair
used by the worked fixtures.

The expansion of a commutator with j X's only touches words with j X's, so
the matrix is block diagonal by letter multidegree; elimination runs per
block and the global reduced form is reassembled by pivot column.  That cuts
the grade-10 run from minutes to seconds without changing any output.

Rewrite machinery re-expresses series terms over a basis, either with the
full grade-m identity set or with the fixed grade-4/grade-6 tail rules whose
ad-prefixed lifts reproduce the published reduced rows, and a budgeted
deterministic search looks for representations with fewer nonzero terms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Sequence

from bchnest.series import bch_term, symmetric_bch_term
from bchnest.terms import (
    Leaves,
    LieExpr,
    ONE,
    Word,
    ZERO,
    expand_lie,
    expand_nested,
)

# Published term counts for grades 2..10, used as reference rows by the table
# command and pinned by the acceptance tests.  "dim" is the dimension of the
# grade-m homogeneous component on two letters; "hall" and "lyndon" are
# classical-basis counts included for comparison only (this package never
# constructs those bases); the remaining rows are right-nested counts with no
# identities applied, with the grade-4 / grade-6 tail rules applied, with the
# budgeted compaction search, and for the symmetric product.  The symmetric
# row is published through m=9; its m=10 entry is 0 because even-grade terms
# of the symmetric product vanish identically.
REFERENCE_COUNTS: dict[str, tuple[int, ...]] = {
    "dim": (1, 2, 3, 6, 9, 18, 30, 56, 99),
    "hall": (1, 2, 1, 6, 6, 18, 24, 56, 86),
    "lyndon": (1, 2, 1, 6, 5, 18, 17, 55, 55),
    "none": (1, 2, 1, 8, 7, 32, 31, 96, 97),
    "grade4": (1, 2, 1, 6, 5, 24, 23, 78, 78),
    "grade6": (1, 2, 1, 6, 4, 18, 17, 67, 65),
    "compact": (1, 2, 1, 6, 4, 18, 13, 38, 52),
    "symmetric": (0, 2, 0, 6, 0, 18, 0, 42, 0),
}

TABLE_MODES = ("none", "grade4", "grade6", "full", "compact")

_COMPACT_BUDGET = 10000


def enumerate_nested(m: int) -> tuple[Leaves, ...]:
    """All canonical grade-m right-nested commutators on {X, Y}, lex order.

    The innermost pair is pinned to (X, Y); the 2^(m-2) prefixes range over
    all words.  Appending the fixed suffix preserves lexicographic order.
    """
    if m < 2:
        raise ValueError(f"grade must be at least 2, got {m}")
    return tuple(prefix + (0, 1) for prefix in product((0, 1), repeat=m - 2))


@dataclass(frozen=True)
class ExactMatrix:
    """Dense rational matrix with labeled columns.

    The first len(word_columns) columns are expansion coefficients per word;
    the remaining columns form the augmented block, one per commutator in
    comm_labels (which also labels the rows of the unreduced matrix).
    """

    rows: tuple[tuple[Fraction, ...], ...]
    word_columns: tuple[Word, ...]
    comm_labels: tuple[Leaves, ...]

    def __post_init__(self) -> None:
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError(f"ragged rows: widths {sorted(widths)}")


def gauss_jordan(matrix: ExactMatrix) -> ExactMatrix:
    """Unique reduced row-echelon form over the rationals.

    First-nonzero-column pivoting, leading entries normalized to 1, full
    back-elimination; zero rows sink to the bottom.  Column labels carry over
    unchanged.
    """
    rows = [list(r) for r in matrix.rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(ncols):
        sel = next((r for r in range(pivot_row, nrows) if rows[r][col]), None)
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        pr = rows[pivot_row]
        inv = ONE / pr[col]
        if inv != 1:
            for j in range(col, ncols):
                if pr[j]:
                    pr[j] *= inv
        for r in range(nrows):
            if r == pivot_row:
                continue
            f = rows[r][col]
            if f:
                target = rows[r]
                for j in range(col, ncols):
                    if pr[j]:
                        target[j] -= f * pr[j]
        pivot_row += 1
        if pivot_row == nrows:
            break
    return ExactMatrix(
        rows=tuple(tuple(r) for r in rows),
        word_columns=matrix.word_columns,
        comm_labels=matrix.comm_labels,
    )


@dataclass(frozen=True, eq=False)
class IdentityReport:
    """Everything the elimination learns about one grade.

    basis is the lex-first independent subset of the enumeration; identities
    are normalized to coefficient +1 on their dependent commutator (the
    lex-greatest of each identity's support) and expand to zero, which is
    checked at construction time.  matrix is the expansion matrix with the
    augmented identity block; rref is its reduced form.
    """

    grade: int
    commutators: tuple[Leaves, ...]
    basis: tuple[Leaves, ...]
    identities: tuple[LieExpr, ...]
    matrix: ExactMatrix
    rref: ExactMatrix


def _block_rref_rows(
    idxs: Sequence[int],
    comms: tuple[Leaves, ...],
    expansions: dict[Leaves, dict[Word, Fraction]],
    col_index: dict[Word, int],
    total_cols: int,
    n_words: int,
) -> list[tuple[int, tuple[Fraction, ...]]]:
    """RREF one multidegree block, padded to global width.

    Returns (global pivot column, row) pairs; the caller interleaves blocks
    by pivot column to recover the unique global reduced form.
    """
    words = sorted({w for i in idxs for w in expansions[comms[i]]})
    local = ExactMatrix(
        rows=tuple(
            tuple(expansions[comms[i]].get(w, ZERO) for w in words)
            + tuple(ONE if j == k else ZERO for k in range(len(idxs)))
            for j, i in enumerate(idxs)
        ),
        word_columns=tuple(words),
        comm_labels=tuple(comms[i] for i in idxs),
    )
    reduced = gauss_jordan(local)
    out = []
    for row in reduced.rows:
        lead = next((j for j, v in enumerate(row) if v), None)
        # The augmented block makes every row independent; no zero rows.
        if lead is None:
            raise RuntimeError("zero row in augmented elimination")
        global_row = [ZERO] * total_cols
        for j, v in enumerate(row):
            if not v:
                continue
            if j < len(words):
                global_row[col_index[words[j]]] = v
            else:
                global_row[n_words + idxs[j - len(words)]] = v
        if lead < len(words):
            pivot = col_index[words[lead]]
        else:
            pivot = n_words + idxs[lead - len(words)]
        out.append((pivot, tuple(global_row)))
    return out


@lru_cache(maxsize=None)
def identities_and_basis(m: int) -> IdentityReport:
    """Discover the commutator basis and all linear identities at grade m."""
    comms = enumerate_nested(m)
    expansions = {c: expand_nested(c).terms for c in comms}
    all_words = sorted({w for e in expansions.values() for w in e})
    col_index = {w: i for i, w in enumerate(all_words)}
    n = len(comms)
    n_words = len(all_words)
    total_cols = n_words + n

    matrix = ExactMatrix(
        rows=tuple(
            tuple(expansions[c].get(w, ZERO) for w in all_words)
            + tuple(ONE if j == i else ZERO for j in range(n))
            for i, c in enumerate(comms)
        ),
        word_columns=tuple(all_words),
        comm_labels=comms,
    )

    blocks: dict[int, list[int]] = {}
    for i, c in enumerate(comms):
        blocks.setdefault(c.count(0), []).append(i)

    basis: list[Leaves] = []
    identities: list[LieExpr] = []
    rref_rows: list[tuple[int, tuple[Fraction, ...]]] = []
    for key in sorted(blocks):
        idxs = blocks[key]
        # In-order sparse elimination: walk the block's commutators in lex
        # order, keeping each row that brings a new pivot word and recording
        # a combination over earlier commutators whenever a row vanishes.
        pivots: list[tuple[Word, dict[Word, Fraction], dict[Leaves, Fraction]]] = []
        for i in idxs:
            c = comms[i]
            row = dict(expansions[c])
            combo: dict[Leaves, Fraction] = {c: ONE}
            for lead, prow, pcombo in pivots:
                f = row.get(lead)
                if not f:
                    continue
                for w, v in prow.items():
                    acc = row.get(w, ZERO) - f * v
                    if acc:
                        row[w] = acc
                    else:
                        row.pop(w, None)
                for l2, v in pcombo.items():
                    acc = combo.get(l2, ZERO) - f * v
                    if acc:
                        combo[l2] = acc
                    else:
                        combo.pop(l2, None)
            if row:
                lead = min(row)
                inv = ONE / row[lead]
                pivots.append(
                    (
                        lead,
                        {w: v * inv for w, v in row.items()},
                        {l2: v * inv for l2, v in combo.items()},
                    )
                )
                basis.append(c)
            else:
                # combo keeps coefficient 1 on c itself; the rest is
                # supported on lex-earlier basis commutators.
                identities.append(LieExpr._from_clean(combo))
        rref_rows.extend(
            _block_rref_rows(idxs, comms, expansions, col_index, total_cols, n_words)
        )

    for ident in identities:
        if expand_lie(ident):
            raise RuntimeError(f"identity fails to expand to zero: {ident!r}")
    if len(basis) + len(identities) != n:
        raise RuntimeError("basis/identity split lost rows")

    basis.sort()
    identities.sort(key=lambda e: max(e.terms))
    rref_rows.sort(key=lambda pr: pr[0])
    rref = ExactMatrix(
        rows=tuple(r for _, r in rref_rows),
        word_columns=tuple(all_words),
        comm_labels=comms,
    )
    return IdentityReport(
        grade=m,
        commutators=comms,
        basis=tuple(basis),
        identities=tuple(identities),
        matrix=matrix,
        rref=rref,
    )


Rules = dict[Leaves, dict[Leaves, Fraction]]


def relation_rules(
    relations: Iterable[LieExpr],
    priority: Callable[[Leaves], object] | None = None,
) -> Rules:
    """Turn vanishing combinations into substitution rules pivot -> rest.

    Runs exact elimination over the relations with columns visited in
    decreasing `priority` (default: plain lexicographic order, so the
    lex-greatest commutator of each independent relation gets rewritten in
    terms of earlier ones).  The outcome depends only on the span of the
    relations and the priority, not on their order.  Rule right-hand sides
    never mention pivots, so a single substitution pass fully reduces any
    expression.
    """
    if priority is None:
        priority = lambda leaves: leaves
    remaining = [dict(r.terms) for r in relations if r.terms]
    universe = sorted({l for r in remaining for l in r}, key=priority, reverse=True)
    pivot_rows: dict[Leaves, dict[Leaves, Fraction]] = {}
    for col in universe:
        if not remaining:
            break
        pick = next((r for r in remaining if col in r), None)
        if pick is None:
            continue
        remaining = [r for r in remaining if r is not pick]
        inv = ONE / pick[col]
        if inv != 1:
            for k in pick:
                pick[k] *= inv
        for row in remaining:
            f = row.get(col)
            if not f:
                continue
            for k, v in pick.items():
                acc = row.get(k, ZERO) - f * v
                if acc:
                    row[k] = acc
                else:
                    row.pop(k, None)
        for prow in pivot_rows.values():
            f = prow.get(col)
            if not f:
                continue
            for k, v in pick.items():
                acc = prow.get(k, ZERO) - f * v
                if acc:
                    prow[k] = acc
                else:
                    prow.pop(k, None)
        pivot_rows[col] = pick
    return {
        col: {l: -v for l, v in prow.items() if l != col}
        for col, prow in pivot_rows.items()
    }


def apply_rules(expr: LieExpr, rules: Rules) -> LieExpr:
    """Substitute every ruled commutator; assumes rule RHSs are pivot-free."""
    out: dict[Leaves, Fraction] = {}
    for leaves, c in expr.terms.items():
        rhs = rules.get(leaves)
        if rhs is None:
            acc = out.get(leaves, ZERO) + c
            if acc:
                out[leaves] = acc
            else:
                out.pop(leaves, None)
        else:
            for l2, c2 in rhs.items():
                acc = out.get(l2, ZERO) + c * c2
                if acc:
                    out[l2] = acc
                else:
                    out.pop(l2, None)
    return LieExpr._from_clean(out)


@lru_cache(maxsize=None)
def _report_rules(m: int) -> Rules:
    # Prefer eliminating exactly the non-basis commutators, so rewritten
    # expressions land on report.basis.
    report = identities_and_basis(m)
    dependent = set(report.commutators) - set(report.basis)
    return relation_rules(
        report.identities,
        priority=lambda lv: (1 if lv in dependent else 0, lv),
    )


def rewrite_in_basis(expr: LieExpr, report: IdentityReport) -> LieExpr:
    """Express a homogeneous LieExpr over the report's commutator basis."""
    if not expr:
        return expr
    if expr.grade() != report.grade:
        raise ValueError(
            f"expression grade {expr.grade()} does not match report grade "
            f"{report.grade}"
        )
    return apply_rules(expr, _report_rules(report.grade))


# Tail rewrite rules behind the grade-4 / grade-6 reduction regimes.  Each
# entry maps a trailing leaf pattern to an equivalent combination of same
# grade tails; ad-prefixing by arbitrary leaves lifts them to any grade.
# The grade-4 rule is the unique grade-4 identity; the grade-6 rules are the
# three grade-6 identities that are not lifts of it, oriented (solved for
# the tail on the left) the way that reproduces the published reduced rows.
# Their correctness is checked against word expansions on first use.
_TAIL_RULES_4: dict[Leaves, tuple[tuple[Leaves, Fraction], ...]] = {
    (1, 0, 0, 1): (((0, 1, 0, 1), ONE),),
}
_TAIL_RULES_6: dict[Leaves, tuple[tuple[Leaves, Fraction], ...]] = {
    (0, 0, 0, 1, 0, 1): (
        ((0, 1, 0, 0, 0, 1), Fraction(2)),
        ((1, 0, 0, 0, 0, 1), Fraction(-1)),
    ),
    (0, 0, 1, 1, 0, 1): (
        ((0, 1, 0, 1, 0, 1), Fraction(3)),
        ((1, 0, 0, 1, 0, 1), Fraction(-3)),
        ((1, 1, 0, 0, 0, 1), Fraction(1)),
    ),
    (1, 0, 1, 1, 0, 1): (
        ((1, 1, 0, 1, 0, 1), Fraction(1, 2)),
        ((0, 1, 1, 1, 0, 1), Fraction(1, 2)),
    ),
}


@lru_cache(maxsize=None)
def _checked_tail_rules(regime_grade: int) -> tuple[dict, ...]:
    """Tail rule tables for a regime, word-expansion-checked once."""
    if regime_grade not in (4, 6):
        raise ValueError(f"regime grade must be 4 or 6, got {regime_grade}")
    tables = (_TAIL_RULES_4,) if regime_grade == 4 else (_TAIL_RULES_4, _TAIL_RULES_6)
    for table in tables:
        for tail, rhs in table.items():
            diff = expand_nested(tail)
            for other, coeff in rhs:
                diff = diff - expand_nested(other) * coeff
            if diff:
                raise RuntimeError(f"tail rule for {tail} is not an identity")
    return tables


def _cascade_tail(
    leaves: Leaves, tables: tuple[dict, ...]
) -> dict[Leaves, Fraction] | None:
    """Fully rewrite one commutator through the tail rules; None if stable.

    A rewrite can enable exactly one follow-up (the grade-4 rule may create
    a grade-6 tail), so the worklist stays tiny.
    """
    replaced = False
    out: dict[Leaves, Fraction] = {}
    stack = [(leaves, ONE)]
    while stack:
        t, c = stack.pop()
        rhs = None
        for table in tables:
            for tail, rule in table.items():
                if len(t) >= len(tail) and t[-len(tail):] == tail:
                    rhs = [(t[: -len(tail)] + s, mult) for s, mult in rule]
                    break
            if rhs is not None:
                break
        if rhs is None:
            acc = out.get(t, ZERO) + c
            if acc:
                out[t] = acc
            else:
                out.pop(t, None)
        else:
            replaced = True
            stack.extend((t2, c * mult) for t2, mult in rhs)
    return out if replaced else None


@lru_cache(maxsize=None)
def lifted_rules(m: int, regime_grade: int) -> Rules:
    """Substitution rules for grade m from the grade-4 / grade-6 tail rules.

    Every grade-m commutator whose tail matches a rule is mapped to its
    fully cascaded replacement, so one ``apply_rules`` pass reproduces the
    fixpoint of repeated tail rewriting.  regime_grade is 4 or 6; at m below
    the regime grade the higher rules simply never match.
    """
    tables = _checked_tail_rules(regime_grade)
    rules: Rules = {}
    for comm in enumerate_nested(m):
        rhs = _cascade_tail(comm, tables)
        if rhs is not None:
            rules[comm] = rhs
    return rules


@lru_cache(maxsize=None)
def lifted_identities(m: int) -> tuple[LieExpr, ...]:
    """All grade-m ad-prefix lifts of identities found at lower grades.

    Bracketing a vanishing combination under m-g extra leaves keeps it
    vanishing and right-nested, so each grade-g identity yields 2^(m-g)
    grade-m ones.  Their span is what "already known below grade m" means;
    identities outside it are genuinely new at grade m.
    """
    if m < 2:
        raise ValueError(f"grade must be at least 2, got {m}")
    lifts = []
    for g in range(2, m):
        for ident in identities_and_basis(g).identities:
            for prefix in product((0, 1), repeat=m - g):
                lifts.append(
                    LieExpr._from_clean(
                        {prefix + leaves: c for leaves, c in ident.terms.items()}
                    )
                )
    return tuple(lifts)


def _rank(expr: LieExpr) -> tuple:
    # Deterministic comparison key: fewer terms wins, ties broken by the
    # sorted term list itself.
    return (len(expr), expr.sorted_terms())


def _dict_rank(terms: dict[Leaves, Fraction]) -> tuple:
    return (len(terms), sorted(terms.items()))


def _subtract_move(
    terms: dict[Leaves, Fraction], rel: dict[Leaves, Fraction], f: Fraction
) -> dict[Leaves, Fraction]:
    out = dict(terms)
    for l2, v in rel.items():
        acc = out.get(l2, ZERO) - f * v
        if acc:
            out[l2] = acc
        else:
            out.pop(l2, None)
    return out


def _descend(
    terms: dict[Leaves, Fraction],
    rels: Sequence[dict[Leaves, Fraction]],
    meter: list[int],
    budget: int,
) -> dict[Leaves, Fraction]:
    # Steepest descent on single-relation moves t -> t - (t_c / r_c) * r,
    # each of which zeroes one shared term.  The meter counts adopted
    # candidate representations, not probed moves.
    current = terms
    current_rank = _dict_rank(current)
    while meter[0] < budget:
        best = None
        best_rank = current_rank
        for rel in rels:
            for leaves, rc in rel.items():
                coeff = current.get(leaves)
                if coeff is None:
                    continue
                move = _subtract_move(current, rel, coeff / rc)
                move_rank = _dict_rank(move)
                if move_rank < best_rank:
                    best, best_rank = move, move_rank
        if best is None:
            break
        meter[0] += 1
        current, current_rank = best, best_rank
    return current


def _sample_bases(
    start: dict[Leaves, Fraction],
    rels: Sequence[dict[Leaves, Fraction]],
    meter: list[int],
    budget: int,
    rng: random.Random,
) -> dict[Leaves, Fraction]:
    # Rewrite onto bases drawn at random: a shuffled priority picks which
    # commutators get eliminated, and each resulting representation is
    # polished by descent.  Samples representations far apart in move
    # distance, which the local walk cannot reach.
    best = dict(start)
    best_rank = _dict_rank(best)
    start_expr = LieExpr._from_clean(dict(start))
    rel_exprs = [LieExpr._from_clean(dict(r)) for r in rels]
    support = sorted({l2 for r in rels for l2 in r})
    while meter[0] < budget:
        meter[0] += 1
        perm = list(support)
        rng.shuffle(perm)
        pri = {lv: i for i, lv in enumerate(perm)}
        rules = relation_rules(rel_exprs, priority=pri.__getitem__)
        cand = _descend(
            dict(apply_rules(start_expr, rules).terms), rels, meter, budget
        )
        cand_rank = _dict_rank(cand)
        if cand_rank < best_rank:
            best, best_rank = cand, cand_rank
    return best


def _anneal(
    start: dict[Leaves, Fraction],
    rels: Sequence[dict[Leaves, Fraction]],
    meter: list[int],
    budget: int,
    rng: random.Random,
) -> dict[Leaves, Fraction]:
    # Random walk that tolerates slightly larger intermediates, polishing
    # with descent whenever it ties the best and restarting from the best
    # whenever it drifts too long without improving on it.
    best = _descend(start, rels, meter, budget)
    best_rank = _dict_rank(best)
    current = dict(best)
    drift = 0
    while meter[0] < budget:
        meter[0] += 1
        rel = rels[rng.randrange(len(rels))]
        shared = [l2 for l2 in rel if l2 in current]
        if not shared:
            drift += 1
            if drift > 300:
                current = dict(best)
                drift = 0
            continue
        leaves = shared[rng.randrange(len(shared))]
        move = _subtract_move(current, rel, current[leaves] / rel[leaves])
        delta = len(move) - len(current)
        if delta <= 0 or (delta == 1 and rng.random() < 0.35) or (
            delta == 2 and rng.random() < 0.05
        ):
            current = move
            if len(current) <= len(best):
                settled = _descend(current, rels, meter, budget)
                settled_rank = _dict_rank(settled)
                if settled_rank < best_rank:
                    best, best_rank = settled, settled_rank
                    current = dict(best)
                    drift = 0
        drift += 1
        if drift > 300:
            current = dict(best)
            drift = 0
    return best


def compact_reduce(expr: LieExpr, m: int, budget: int = _COMPACT_BUDGET) -> LieExpr:
    """Budgeted search for a same-element representation with fewer terms.

    Identities never mix letter multidegrees, so the search space splits
    into independent blocks by X-count.  Per block, the search seeds with
    the best block of the global candidates (the input, the basis rewrite,
    both tail-rule regimes, and a largest-coefficient-first elimination),
    then runs steepest-descent single-relation moves followed by a seeded
    random walk that may pass through slightly larger representations.
    Deterministic for fixed inputs; exact; makes no optimality claim.
    """
    if not expr:
        return expr
    if m < 2:
        return expr
    if expr.grade() != m:
        raise ValueError(f"expression grade {expr.grade()} != {m}")
    report = identities_and_basis(m)
    if not report.identities:
        return expr

    seeds = [expr, rewrite_in_basis(expr, report)]
    for rg in (4, 6):
        seeds.append(apply_rules(expr, lifted_rules(m, rg)))
    weights = {leaves: abs(c) for leaves, c in expr.terms.items()}
    greedy = relation_rules(
        report.identities, priority=lambda lv: (weights.get(lv, ZERO), lv)
    )
    seeds.append(apply_rules(expr, greedy))

    rel_blocks: dict[int, list[dict[Leaves, Fraction]]] = {}
    for ident in report.identities:
        key = max(ident.terms).count(0)
        rel_blocks.setdefault(key, []).append(dict(ident.terms))

    blocks: dict[int, list[dict[Leaves, Fraction]]] = {}
    for seed in seeds:
        split: dict[int, dict[Leaves, Fraction]] = {}
        for leaves, c in seed.terms.items():
            split.setdefault(leaves.count(0), {})[leaves] = c
        for key, part in split.items():
            blocks.setdefault(key, []).append(part)

    out: dict[Leaves, Fraction] = {}
    total_rels = sum(len(rel_blocks.get(k, ())) for k in blocks)
    for key in sorted(blocks):
        cands = blocks[key]
        # Seeds represent the same element, so their blocks agree up to
        # identities and the per-block minimum is a valid choice.
        best = min(cands, key=_dict_rank)
        rels = rel_blocks.get(key)
        if rels:
            share = max(1, budget * len(rels) // max(1, total_rels))
            meter = [0]
            rng = random.Random(m * 1009 + key)
            best = _sample_bases(best, rels, meter, share * 3 // 5, rng)
            best = _anneal(best, rels, meter, share, rng)
        out.update(best)
    return LieExpr._from_clean(out)


@lru_cache(maxsize=None)
def compact_bch_term(m: int) -> LieExpr:
    """The plain grade-m series term after the compaction search."""
    if m == 1:
        return bch_term(1, 2)
    return compact_reduce(bch_term(m, 2), m)


def full_reduce(expr: LieExpr, m: int) -> LieExpr:
    """Rewrite over the grade's basis unless that enlarges the expression.

    The basis representation is canonical but not always the shorter one:
    assembling the symmetric series from compacted inputs can beat it.
    Applying the full identity set as a reduction keeps whichever is
    smaller, preferring the canonical form on ties.
    """
    if not expr:
        return expr
    cand = rewrite_in_basis(expr, identities_and_basis(m))
    return cand if len(cand) <= len(expr) else expr


def table_counts(
    max_m: int, mode: str, variant: str = "plain"
) -> tuple[int, ...]:
    """Nonzero-term counts for grades 2..max_m under one reduction mode.

    Modes: none (raw assembly), grade4 / grade6 (tail-rule rewrites), full
    (rewrite over the grade's own basis), compact (budgeted search).  The
    symmetric variant counts terms of the symmetric product instead; its
    compact mode assembles from compacted plain terms before reducing.
    """
    if mode not in TABLE_MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if variant not in ("plain", "symmetric"):
        raise ValueError(f"unknown variant {variant!r}")
    if max_m < 2:
        raise ValueError(f"max grade must be at least 2, got {max_m}")
    counts = []
    for m in range(2, max_m + 1):
        if variant == "plain":
            e = compact_bch_term(m) if mode == "compact" else bch_term(m, 2)
        elif mode == "compact":
            e = compact_reduce(symmetric_bch_term(m, phi=compact_bch_term), m)
        elif mode == "full":
            e = symmetric_bch_term(m, phi=compact_bch_term)
        else:
            e = symmetric_bch_term(m)
        if mode == "grade4":
            e = apply_rules(e, lifted_rules(m, 4))
        elif mode == "grade6":
            e = apply_rules(e, lifted_rules(m, 6))
        elif mode == "full":
            e = full_reduce(e, m)
        counts.append(len(e))
    return tuple(counts)
