"""Core term algebra: associative words and right-nested commutators.

Generators are small integers (0 = X, 1 = Y in the two-variable case).  A word
is a tuple of generators; an ``AssocPoly`` maps words to exact ``Fraction``
coefficients and represents an element of the free associative algebra.  A
right-nested commutator [a1,[a2,...,[a_{k-1},ak]...]] is identified with its
leaf tuple (a1,...,ak), and a ``LieExpr`` maps leaf tuples to coefficients.

Canonical form, enforced on every stored bracket: the innermost pair must be
strictly ascending.  A bracket whose innermost pair is equal is zero and is
never stored; one with a descending innermost pair equals minus the swapped
bracket.  Deeper linear relations (Jacobi and its consequences) are
deliberately *not* normalized away here -- discovering them is the identity
engine's job.

A single-leaf "bracket" is allowed as a degenerate grade-1 case so that the
grade-1 series term X + Y lives in ``LieExpr``; it is exempt from the
innermost-pair rule.

All coefficients are ``fractions.Fraction``; nothing in this package ever
touches floats.  Instances are treated as immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Generator = int
Word = tuple[int, ...]
Leaves = tuple[int, ...]
Scalar = Union[Fraction, int]

ZERO = Fraction(0)
ONE = Fraction(1)


def _merged(a: dict, b: Mapping, sign: int) -> dict:
    """a + sign*b as term maps, dropping exact zeros."""
    out = dict(a)
    for key, coeff in b.items():
        c = out.get(key, ZERO) + (coeff if sign > 0 else -coeff)
        if c:
            out[key] = c
        else:
            out.pop(key, None)
    return out


class AssocPoly:
    """Polynomial in non-commuting generators: a finite map word -> Fraction.

    The zero polynomial is the empty map; zero coefficients are never stored.
    The empty word () acts as the multiplicative unit and appears only in
    inhomogeneous intermediates such as truncated exponential series.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | None = None):
        clean: dict[Word, Fraction] = {}
        if terms:
            for word, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    clean[tuple(word)] = c
        self.terms = clean

    @classmethod
    def _from_clean(cls, terms: dict[Word, Fraction]) -> "AssocPoly":
        # Trusted constructor: keys already tuples, no zero values.
        poly = object.__new__(cls)
        poly.terms = terms
        return poly

    @classmethod
    def zero(cls) -> "AssocPoly":
        return cls._from_clean({})

    @classmethod
    def unit(cls) -> "AssocPoly":
        return cls._from_clean({(): ONE})

    def coeff(self, word: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(word), ZERO)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AssocPoly):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "AssocPoly") -> "AssocPoly":
        if not isinstance(other, AssocPoly):
            return NotImplemented
        return AssocPoly._from_clean(_merged(self.terms, other.terms, +1))

    def __sub__(self, other: "AssocPoly") -> "AssocPoly":
        if not isinstance(other, AssocPoly):
            return NotImplemented
        return AssocPoly._from_clean(_merged(self.terms, other.terms, -1))

    def __neg__(self) -> "AssocPoly":
        return AssocPoly._from_clean({w: -c for w, c in self.terms.items()})

    def __mul__(self, scalar: Scalar) -> "AssocPoly":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        s = Fraction(scalar)
        if not s:
            return AssocPoly._from_clean({})
        return AssocPoly._from_clean({w: c * s for w, c in self.terms.items()})

    __rmul__ = __mul__

    def concat(self, other: "AssocPoly", max_grade: int | None = None) -> "AssocPoly":
        """Bilinear word concatenation, dropping words longer than max_grade."""
        out: dict[Word, Fraction] = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                if max_grade is not None and len(u) + len(v) > max_grade:
                    continue
                w = u + v
                c = out.get(w, ZERO) + cu * cv
                if c:
                    out[w] = c
                else:
                    out.pop(w, None)
        return AssocPoly._from_clean(out)

    def homogeneous_part(self, grade: int) -> "AssocPoly":
        return AssocPoly._from_clean(
            {w: c for w, c in self.terms.items() if len(w) == grade}
        )

    def is_homogeneous(self) -> bool:
        grades = {len(w) for w in self.terms}
        return len(grades) <= 1 and grades != {0}

    def grade(self) -> int:
        """Common word length; raises on zero or inhomogeneous polynomials."""
        grades = {len(w) for w in self.terms}
        if len(grades) != 1:
            raise ValueError(f"not homogeneous: grades {sorted(grades)}")
        return grades.pop()

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        """Terms in canonical output order: by grade, then lexicographically."""
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self) -> str:
        inner = ", ".join(f"{w}: {c}" for w, c in self.sorted_terms())
        return f"AssocPoly({{{inner}}})"


def canonicalize(leaves: Leaves, coeff: Scalar) -> tuple[Leaves, Fraction] | None:
    """Normalize a raw right-nested bracket to canonical form.

    Only the innermost pair is inspected: equal pair -> None (the bracket is
    zero), descending pair -> swapped leaves with negated coefficient,
    ascending pair -> unchanged.  Requires at least two leaves; degenerate
    single-leaf terms never participate in canonicalization.
    """
    if len(leaves) < 2:
        raise ValueError("canonicalize needs a bracket with >= 2 leaves")
    a, b = leaves[-2], leaves[-1]
    if a == b:
        return None
    c = Fraction(coeff)
    if a > b:
        return leaves[:-2] + (b, a), -c
    return leaves, c


def _is_canonical(leaves: Leaves) -> bool:
    return len(leaves) == 1 or leaves[-2] < leaves[-1]


class LieExpr:
    """Linear combination of canonical right-nested commutators.

    Keys are leaf tuples; every stored key must already be canonical (strictly
    ascending innermost pair, or a degenerate single leaf).  Use ``from_raw``
    to build from brackets that may need normalization.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Leaves, Scalar] | None = None):
        clean: dict[Leaves, Fraction] = {}
        if terms:
            for leaves, coeff in terms.items():
                key = tuple(leaves)
                if not key:
                    raise ValueError("empty leaf tuple")
                if not _is_canonical(key):
                    raise ValueError(f"non-canonical bracket {key}; use from_raw")
                c = Fraction(coeff)
                if c:
                    clean[key] = c
        self.terms = clean

    @classmethod
    def _from_clean(cls, terms: dict[Leaves, Fraction]) -> "LieExpr":
        expr = object.__new__(cls)
        expr.terms = terms
        return expr

    @classmethod
    def zero(cls) -> "LieExpr":
        return cls._from_clean({})

    @classmethod
    def from_raw(cls, pairs: Iterable[tuple[Leaves, Scalar]]) -> "LieExpr":
        """Canonicalize and merge raw (leaves, coeff) pairs."""
        out: dict[Leaves, Fraction] = {}
        for leaves, coeff in pairs:
            key = tuple(leaves)
            if len(key) == 1:
                norm: tuple[Leaves, Fraction] | None = (key, Fraction(coeff))
            else:
                norm = canonicalize(key, coeff)
            if norm is None:
                continue
            key, c = norm
            acc = out.get(key, ZERO) + c
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        return cls._from_clean(out)

    def coeff(self, leaves: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(leaves), ZERO)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieExpr):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "LieExpr") -> "LieExpr":
        if not isinstance(other, LieExpr):
            return NotImplemented
        return LieExpr._from_clean(_merged(self.terms, other.terms, +1))

    def __sub__(self, other: "LieExpr") -> "LieExpr":
        if not isinstance(other, LieExpr):
            return NotImplemented
        return LieExpr._from_clean(_merged(self.terms, other.terms, -1))

    def __neg__(self) -> "LieExpr":
        return LieExpr._from_clean({k: -c for k, c in self.terms.items()})

    def __mul__(self, scalar: Scalar) -> "LieExpr":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        s = Fraction(scalar)
        if not s:
            return LieExpr._from_clean({})
        return LieExpr._from_clean({k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def is_homogeneous(self) -> bool:
        grades = {len(k) for k in self.terms}
        return len(grades) <= 1

    def grade(self) -> int:
        grades = {len(k) for k in self.terms}
        if len(grades) != 1:
            raise ValueError(f"not homogeneous: grades {sorted(grades)}")
        return grades.pop()

    def sorted_terms(self) -> list[tuple[Leaves, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}: {c}" for k, c in self.sorted_terms())
        return f"LieExpr({{{inner}}})"


def expand_nested(leaves: Leaves) -> AssocPoly:
    """Word expansion of one right-nested commutator.

    Works inside out: [g, P] expands to g*P - P*g, so a k-leaf bracket yields
    at most 2^(k-1) words, all of length k.
    """
    leaves = tuple(leaves)
    if not leaves:
        raise ValueError("empty leaf tuple")
    poly: dict[Word, Fraction] = {(leaves[-1],): ONE}
    for g in reversed(leaves[:-1]):
        nxt: dict[Word, Fraction] = {}
        for w, c in poly.items():
            left = (g,) + w
            cl = nxt.get(left, ZERO) + c
            if cl:
                nxt[left] = cl
            else:
                nxt.pop(left, None)
            right = w + (g,)
            cr = nxt.get(right, ZERO) - c
            if cr:
                nxt[right] = cr
            else:
                nxt.pop(right, None)
        poly = nxt
    return AssocPoly._from_clean(poly)


def expand_lie(expr: LieExpr) -> AssocPoly:
    """Word expansion of a LieExpr (linear in the terms)."""
    out: dict[Word, Fraction] = {}
    for leaves, coeff in expr.terms.items():
        for w, c in expand_nested(leaves).terms.items():
            acc = out.get(w, ZERO) + coeff * c
            if acc:
                out[w] = acc
            else:
                out.pop(w, None)
    return AssocPoly._from_clean(out)


def right_bracketing(poly: AssocPoly) -> LieExpr:
    """Replace each word a1...ak by the bracket [a1,[a2,...[a_{k-1},ak]...]].

    For a homogeneous Lie element P of grade m this returns an expression
    whose word expansion is m*P (the Dynkin-Specht-Wever projection, up to
    the factor m).  Grade-1 words map to degenerate single-leaf terms.
    """
    if not poly.is_homogeneous():
        raise ValueError("right_bracketing needs a homogeneous polynomial")
    return LieExpr.from_raw(poly.terms.items())
