"""Diagonal quadratic forms and their basic algebra.

A form is a field descriptor plus a nonempty tuple of nonzero diagonal
entries ``<a1,...,an>``.  Everything downstream (deciders, suites, the CLI)
consumes diagonal data only; Gram matrices exist at the boundary and are
diagonalised on arrival.  Entry order is never canonicalised — isometry is
a decided relation, not tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    Degenerate,
    FieldMismatch,
    NotSymmetric,
    UnsupportedField,
    ZeroElement,
)
from .fields import Element, FieldDesc, LaurentExt, QuadExt, Rationals


@dataclass(frozen=True)
class QForm:
    """A nondegenerate diagonal quadratic form of positive dimension."""

    field: FieldDesc
    entries: tuple

    def __post_init__(self):
        if not self.entries:
            raise ZeroElement("forms must have positive dimension")
        for a in self.entries:
            if self.field.is_zero(a):
                raise ZeroElement("diagonal entries must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return f"<{', '.join(self.field.format(a) for a in self.entries)}>"


def diag(F: FieldDesc, entries: Sequence[Element]) -> QForm:
    return QForm(F, tuple(entries))


def same_field(*forms: QForm) -> FieldDesc:
    F = forms[0].field
    for q in forms[1:]:
        if q.field != F:
            raise FieldMismatch(
                f"{q.field.spec_string()} does not match {F.spec_string()}"
            )
    return F


def orth_sum(p: QForm, q: QForm) -> QForm:
    same_field(p, q)
    return QForm(p.field, p.entries + q.entries)


def tensor(p: QForm, q: QForm) -> QForm:
    F = same_field(p, q)
    return QForm(F, tuple(F.mul(a, b) for a in p.entries for b in q.entries))


def scale(q: QForm, a: Element) -> QForm:
    F = q.field
    if F.is_zero(a):
        raise ZeroElement("cannot scale a form by zero")
    return QForm(F, tuple(F.mul(a, b) for b in q.entries))


def neg(q: QForm) -> QForm:
    return QForm(q.field, tuple(q.field.neg(a) for a in q.entries))


def determinant(q: QForm) -> Element:
    """Square class of the product of the entries."""
    F = q.field
    d = F.one()
    for a in q.entries:
        d = F.mul(d, a)
    return F.square_class(d)


def discriminant(q: QForm) -> Element:
    """Signed determinant (-1)^(n(n-1)/2) * det, as a square class."""
    F = q.field
    d = F.one()
    for a in q.entries:
        d = F.mul(d, a)
    if (q.dim * (q.dim - 1) // 2) % 2:
        d = F.neg(d)
    return F.square_class(d)


def signature(q: QForm) -> int:
    if not isinstance(q.field, Rationals):
        raise UnsupportedField("signature requires a form over the rationals")
    return sum(1 if a > 0 else -1 for a in q.entries)


def hyperbolic_form(F: FieldDesc, planes: int) -> QForm:
    if planes < 1:
        raise ZeroElement("forms must have positive dimension")
    return QForm(F, (F.one(), F.neg(F.one())) * planes)


def pfister_expand(F: FieldDesc, slots: Sequence[Element]) -> QForm:
    """<1,a1> x ... x <1,an>; the empty product is <1>."""
    q = QForm(F, (F.one(),))
    for a in slots:
        q = tensor(q, QForm(F, (F.one(), a)))
    return q


def evaluate(q: QForm, v: Sequence[Element]) -> Element:
    """q(v) = sum a_i v_i^2."""
    F = q.field
    if len(v) != q.dim:
        raise ZeroElement(f"vector length {len(v)} != dim {q.dim}")
    acc = F.zero()
    for a, x in zip(q.entries, v):
        acc = F.add(acc, F.mul(a, F.mul(x, x)))
    return acc


def normalized(q: QForm) -> QForm:
    """Entries replaced by their canonical square-class representatives."""
    F = q.field
    if isinstance(F, QuadExt):
        return q  # no square-class machinery over quadratic extensions
    return QForm(F, tuple(F.square_class(a) for a in q.entries))


def diagonalize(F: FieldDesc, gram: Sequence[Sequence[Element]]) -> tuple[QForm, tuple]:
    """Diagonalise a symmetric Gram matrix by congruence.

    Returns ``(form, P)`` with ``P^T G P`` diagonal; ``P`` is returned as a
    tuple of rows so the caller can replay the congruence.  A zero diagonal
    pivot is repaired by the basis change ``e_i <- e_i + e_j`` (valid away
    from characteristic 2).
    """
    if isinstance(F, LaurentExt):
        raise UnsupportedField(
            "diagonalisation needs division; build forms over Laurent "
            "towers diagonally instead"
        )
    n = len(gram)
    M = [[gram[i][j] for j in range(n)] for i in range(n)]
    if any(len(row) != n for row in M):
        raise NotSymmetric("matrix is not square")
    for i in range(n):
        for j in range(i):
            if not F.is_zero(F.sub(M[i][j], M[j][i])):
                raise NotSymmetric(f"entries ({i},{j}) and ({j},{i}) differ")

    # columns of P express the new basis in the old coordinates
    P = [[F.one() if i == j else F.zero() for j in range(n)] for i in range(n)]

    def add_col(dst: int, src: int, c: Element) -> None:
        for r in range(n):
            M[r][dst] = F.add(M[r][dst], F.mul(c, M[r][src]))
        for r in range(n):
            M[dst][r] = F.add(M[dst][r], F.mul(c, M[src][r]))
        for r in range(n):
            P[r][dst] = F.add(P[r][dst], F.mul(c, P[r][src]))

    def swap_cols(i: int, j: int) -> None:
        for r in range(n):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        M[i], M[j] = M[j], M[i]
        for r in range(n):
            P[r][i], P[r][j] = P[r][j], P[r][i]

    for k in range(n):
        if F.is_zero(M[k][k]):
            pivot = next(
                (i for i in range(k + 1, n) if not F.is_zero(M[i][i])), None
            )
            if pivot is not None:
                swap_cols(k, pivot)
            else:
                off = next(
                    (
                        (i, j)
                        for i in range(k, n)
                        for j in range(i + 1, n)
                        if not F.is_zero(M[i][j])
                    ),
                    None,
                )
                if off is None:
                    raise Degenerate("Gram matrix has determinant zero")
                i, j = off
                add_col(i, j, F.one())  # new diagonal entry 2*M[i][j]
                if i != k:
                    swap_cols(k, i)
        piv = M[k][k]
        for j in range(k + 1, n):
            if not F.is_zero(M[k][j]):
                add_col(j, k, F.neg(F.div(M[k][j], piv)))

    entries = [M[i][i] for i in range(n)]
    if any(F.is_zero(a) for a in entries):
        raise Degenerate("Gram matrix has determinant zero")
    return QForm(F, tuple(entries)), tuple(tuple(row) for row in P)


def format_form(q: QForm) -> str:
    """Form-expression syntax with canonical square-free entries where the
    field provides them."""
    try:
        q = normalized(q)
    except UnsupportedField:
        pass
    return "<" + ",".join(q.field.format(a) for a in q.entries) + ">"


def rational_subfield_entries(q: QForm) -> tuple[Fraction, ...] | None:
    """For a form over Q(sqrt a) whose entries all lie in Q, the rational
    entries; otherwise None."""
    F = q.field
    if not isinstance(F, QuadExt):
        return None
    out = []
    for (u, v) in q.entries:
        if not F.base.is_zero(v):
            return None
        out.append(Fraction(u))
    return tuple(out)
