"""Independent ground-truth oracles for the verification suites.

Every decider in this package reasons through invariants: square classes,
Hilbert symbols, residue forms, signatures.  The oracles here deliberately
avoid that machinery and recompute answers from first principles —
exhaustive vector enumeration over prime fields, representation counts,
plane-splitting on Gram matrices, height-bounded integer search over the
rationals, polynomial-vector search over Laurent series fields, and
coordinate arithmetic in quadratic extensions.  A disagreement between an
oracle and a decider therefore always separates two genuinely different
computations, never two copies of the same one.

Conventions
-----------
* Prime-field oracles are exact and two-sided (they enumerate or count the
  whole space); they accept forms over :class:`~wittkit.fields.PrimeField`
  only and raise :class:`~wittkit.errors.UnsupportedField` otherwise.
* The rational, Laurent, and quadratic-extension searches are one-sided:
  a witness returned is an exact, independently verified zero; ``None``
  only means the bounded search found nothing.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .errors import UnsupportedField, UnsupportedInput
from .fields import (
    LaurentExt,
    PrimeField,
    Rationals,
    fraction_sqrt,
    nonresidue,
)
from .forms import QForm, evaluate, orth_sum

__all__ = [
    "fp_isotropy_witness",
    "fp_gram_isotropy_witness",
    "fp_witt_index",
    "fp_value_counts",
    "fp_value_counts_enumerated",
    "fp_isometric",
    "fp_subform",
    "fp_class_forms",
    "rational_isotropy_witness",
    "laurent_isotropy_witness",
    "quadext_sqrt",
    "quadext_evaluate",
    "quadext_isotropy_witness",
    "diagonal_polynomial",
    "restricts_to",
]


# --------------------------------------------------------------------------
# prime fields: exhaustive enumeration and representation counts
# --------------------------------------------------------------------------


def _prime_field_of(q: QForm) -> PrimeField:
    if not isinstance(q.field, PrimeField):
        raise UnsupportedField(
            f"this oracle enumerates prime fields only, not {q.field.spec_string()}"
        )
    return q.field


def fp_isotropy_witness(q: QForm) -> tuple[int, ...] | None:
    """Exhaustive isotropy search over a prime field.

    Enumerates every projective point of F_p^n, grouped by the highest
    nonzero coordinate (which is normalised to 1), and returns the first
    nonzero vector with q(v) = 0, or None after exhausting the space.
    """
    F = _prime_field_of(q)
    p = F.p
    ents = [e % p for e in q.entries]
    tables = [[(a * x * x) % p for x in range(p)] for a in ents]
    for top in range(q.dim):
        head = tables[:top]
        base_val = tables[top][1]
        if base_val == 0:
            return (0,) * top + (1,) + (0,) * (q.dim - top - 1)
        for prefix in itertools.product(range(p), repeat=top):
            s = base_val
            for tab, x in zip(head, prefix):
                s += tab[x]
            if s % p == 0:
                return prefix + (1,) + (0,) * (q.dim - top - 1)
    return None


def fp_gram_isotropy_witness(
    F: PrimeField, gram: Sequence[Sequence[int]]
) -> tuple[int, ...] | None:
    """Exhaustive isotropy search for an arbitrary symmetric Gram matrix.

    Same projective enumeration as :func:`fp_isotropy_witness`, but for the
    quadratic map v -> v^T M v of a (not necessarily diagonal) symmetric
    matrix M over F_p.
    """
    p = F.p
    n = len(gram)
    M = [[gram[i][j] % p for j in range(n)] for i in range(n)]
    for top in range(n):
        for prefix in itertools.product(range(p), repeat=top):
            v = prefix + (1,)
            s = 0
            for i in range(top + 1):
                vi = v[i]
                if vi == 0:
                    continue
                row = M[i]
                s += row[i] * vi * vi
                for j in range(i):
                    s += 2 * row[j] * vi * v[j]
            if s % p == 0:
                return prefix + (1,) + (0,) * (n - top - 1)
    return None


def _fp_nullspace(p: int, rows: list[list[int]], n: int) -> list[list[int]]:
    """Basis of the common null space of the given row vectors over F_p."""
    mat = [[x % p for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][col] % p != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][col], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] % p != 0:
                c = mat[i][col]
                mat[i] = [(a - c * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        vec = [0] * n
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-mat[i][fc]) % p
        basis.append(vec)
    return basis


def fp_witt_index(q: QForm) -> int:
    """Witt index over a prime field by explicit plane splitting.

    Repeatedly finds an isotropic vector v of the current Gram matrix by
    exhaustive search, pairs it with a vector w of nonzero polar product,
    and restricts the form to the orthogonal complement of span(v, w) via
    Gaussian elimination.  The number of planes split off is the Witt
    index.  No square-class or determinant reasoning is involved.
    """
    F = _prime_field_of(q)
    p = F.p
    n = q.dim
    M = [[0] * n for _ in range(n)]
    for i, a in enumerate(q.entries):
        M[i][i] = a % p
    index = 0
    while len(M) >= 2:
        m = len(M)
        v = fp_gram_isotropy_witness(F, M)
        if v is None:
            break
        Mv = [sum(M[i][j] * v[j] for j in range(m)) % p for i in range(m)]
        k = next(i for i in range(m) if Mv[i] != 0)
        basis = _fp_nullspace(p, [Mv, list(M[k])], m)
        prods = [[sum(M[r][s] * b[s] for s in range(m)) % p for r in range(m)] for b in basis]
        M = [
            [sum(bi[r] * pj[r] for r in range(m)) % p for pj in prods]
            for bi in basis
        ]
        index += 1
    return index


def fp_value_counts(q: QForm) -> tuple[int, ...]:
    """Representation counts (#{v : q(v) = c})_{c in F_p}, computed by
    additive convolution of the single-variable counts, one entry at a
    time.  Cost O(dim * p^2); agrees with literal enumeration of p^dim
    vectors (see :func:`fp_value_counts_enumerated`)."""
    F = _prime_field_of(q)
    p = F.p
    counts = [0] * p
    counts[0] = 1
    for a in q.entries:
        single = [0] * p
        for x in range(p):
            single[(a * x * x) % p] += 1
        new = [0] * p
        for c1, n1 in enumerate(counts):
            if n1 == 0:
                continue
            for c2, n2 in enumerate(single):
                if n2:
                    new[(c1 + c2) % p] += n1 * n2
        counts = new
    return tuple(counts)


def fp_value_counts_enumerated(q: QForm, limit: int = 250_000) -> tuple[int, ...]:
    """Representation counts by literal enumeration of all p^dim vectors.

    Exists to cross-validate :func:`fp_value_counts`; refuses spaces larger
    than ``limit`` vectors.
    """
    F = _prime_field_of(q)
    p = F.p
    if p**q.dim > limit:
        raise UnsupportedInput(
            f"literal enumeration of {p}^{q.dim} vectors exceeds the limit {limit}"
        )
    counts = [0] * p
    for v in itertools.product(range(p), repeat=q.dim):
        counts[sum(a * x * x for a, x in zip(q.entries, v)) % p] += 1
    return tuple(counts)


def fp_isometric(q1: QForm, q2: QForm) -> bool:
    """Isometry over a prime field by comparing representation counts.

    Nondegenerate diagonal forms of equal dimension over F_p fall into
    exactly two isometry classes, and the two classes have different
    representation counts, so equality of the count vectors is a complete
    isometry test — one that never looks at determinants or square classes.
    """
    if q1.field != q2.field:
        return False
    if q1.dim != q2.dim:
        return False
    return fp_value_counts(q1) == fp_value_counts(q2)


def fp_class_forms(F: PrimeField, dim: int) -> tuple[QForm, ...]:
    """One representative per isometry class of nondegenerate dimension-
    ``dim`` forms over F_p: all-ones, and all-ones with one nonresidue."""
    if dim <= 0:
        raise UnsupportedInput("dimension must be positive")
    ns = nonresidue(F.p)
    return (
        QForm(F, (1,) * dim),
        QForm(F, (1,) * (dim - 1) + (ns,)),
    )


def fp_subform(r: QForm, q: QForm) -> bool:
    """Subform test over a prime field via representation counts.

    r embeds isometrically into q iff r plus one of the two isometry
    classes of the complementary dimension has the counts of q.
    """
    if r.field != q.field:
        return False
    F = _prime_field_of(q)
    if r.dim > q.dim:
        return False
    if r.dim == q.dim:
        return fp_isometric(r, q)
    return any(
        fp_isometric(orth_sum(r, comp), q)
        for comp in fp_class_forms(F, q.dim - r.dim)
    )


# --------------------------------------------------------------------------
# rationals: height-bounded integer vector search
# --------------------------------------------------------------------------


def _integer_weights(q: QForm) -> list[int]:
    ents = [Fraction(e) for e in q.entries]
    lcm = 1
    for e in ents:
        lcm = lcm * e.denominator // math.gcd(lcm, e.denominator)
    return [int(e * lcm) for e in ents]


def _shell(height: int, length: int):
    """All integer vectors of given length with sup-norm exactly ``height``."""
    rng = range(-height, height + 1)
    for v in itertools.product(rng, repeat=length):
        if max(abs(x) for x in v) == height:
            yield v


def rational_isotropy_witness(
    q: QForm, *, height: int = 200, budget: int = 4000
) -> tuple[Fraction, ...] | None:
    """Height-bounded search for a nontrivial rational zero of q.

    Clears denominators and works with integer weights a_1..a_n.  First
    checks every coordinate pair (complete in dimension 2: <a_i, a_j> is
    isotropic iff -a_i*a_j is a square).  Then sweeps integer shells of
    growing sup-norm for all but one coordinate and solves the remaining
    coordinate exactly: a_k x^2 = s has a rational root iff s*a_k is a
    perfect square.  Every returned witness is verified exactly; ``None``
    after exhausting the budget proves nothing (one-sided for dim >= 3).
    """
    if not isinstance(q.field, Rationals):
        raise UnsupportedField("the integer-search oracle works over Q only")
    n = q.dim
    if n < 2:
        return None
    a = _integer_weights(q)

    def _checked(vec: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        assert any(vec), "oracle produced the zero vector"
        assert sum(e * x * x for e, x in zip(a, vec)) == 0
        return vec

    for i in range(n):
        for j in range(i + 1, n):
            m = -a[i] * a[j]
            if m >= 0:
                t = math.isqrt(m)
                if t * t == m:
                    vec = [Fraction(0)] * n
                    vec[i] = Fraction(t)
                    vec[j] = Fraction(abs(a[i]))
                    if t == 0:
                        continue
                    return _checked(tuple(vec))
    spent = 0
    for h in range(1, height + 1):
        for prefix in _shell(h, n - 1):
            for k in range(n):
                spent += 1
                rest = 0
                it = iter(prefix)
                for pos in range(n):
                    if pos == k:
                        continue
                    x = next(it)
                    rest += a[pos] * x * x
                target = -rest * a[k]
                if target >= 0:
                    t = math.isqrt(target)
                    if t * t == target:
                        xk = Fraction(t, abs(a[k]))
                        vec = []
                        it = iter(prefix)
                        for pos in range(n):
                            vec.append(xk if pos == k else Fraction(next(it)))
                        if any(vec):
                            return _checked(tuple(vec))
                if spent >= budget:
                    return None
    return None


# --------------------------------------------------------------------------
# Laurent series: exact polynomial-vector search
# --------------------------------------------------------------------------


def laurent_isotropy_witness(q: QForm, *, rng, trials: int = 300, coeff_height: int = 2):
    """Randomised search for a zero of q with truncated-series coordinates.

    Coordinates are monomials w*x^e (mostly) or short polynomials with small
    base-field coefficients; evaluation is exact Laurent arithmetic, so any
    witness returned is a genuine zero.  Monomial vectors dominate because a
    zero then only needs the coefficient sums of a few colliding exponents
    to vanish, which random draws hit at a workable rate.  One-sided.
    """
    F = q.field
    if not isinstance(F, LaurentExt):
        raise UnsupportedField("this oracle searches Laurent series fields only")
    base = F.base

    def draw_coeff(nonzero: bool = False):
        if isinstance(base, PrimeField):
            return base.from_int(rng.randrange(1 if nonzero else 0, base.p))
        if isinstance(base, Rationals):
            lo = 1 if nonzero else -coeff_height
            c = Fraction(rng.randint(lo, coeff_height))
            return -c if nonzero and rng.random() < 0.5 else c
        raise UnsupportedField(
            f"no coefficient sampler for base field {base.spec_string()}"
        )

    for trial in range(trials):
        vec = []
        nonzero = False
        for _ in range(q.dim):
            if rng.random() < 0.25:
                vec.append(F.zero())
                continue
            if trial % 4 == 3:
                coeffs = tuple(draw_coeff() for _ in range(rng.randint(1, 3)))
                elt = F.make(rng.randint(0, 1), coeffs)
            else:
                elt = F.monomial(draw_coeff(nonzero=True), rng.randint(0, 1))
            if not F.is_zero(elt):
                nonzero = True
            vec.append(elt)
        if not nonzero:
            continue
        if F.is_zero(evaluate(q, tuple(vec))):
            return tuple(vec)
    return None


# --------------------------------------------------------------------------
# quadratic extensions Q(sqrt a): coordinate search with exact square roots
# --------------------------------------------------------------------------


def quadext_sqrt(
    a: Fraction, z: tuple[Fraction, Fraction]
) -> tuple[Fraction, Fraction] | None:
    """Exact square root of ``z = c + e*sqrt(a)`` in Q(sqrt a), or None.

    For e = 0: z is a square iff c or c/a is a rational square.  For
    e != 0: writing (u + v*sqrt(a))^2 = z forces u^2 to be a root of
    t^2 - c t + a e^2/4, so c^2 - a e^2 must be a rational square s^2 and
    one of (c +- s)/2 a rational square u^2; then v = e/(2u).
    """
    c, e = Fraction(z[0]), Fraction(z[1])
    a = Fraction(a)
    if c == 0 and e == 0:
        return (Fraction(0), Fraction(0))
    if e == 0:
        t = fraction_sqrt(c)
        if t is not None:
            return (t, Fraction(0))
        t = fraction_sqrt(c / a)
        if t is not None:
            return (Fraction(0), t)
        return None
    s = fraction_sqrt(c * c - a * e * e)
    if s is None:
        return None
    for usq in ((c + s) / 2, (c - s) / 2):
        u = fraction_sqrt(usq)
        if u is not None and u != 0:
            v = e / (2 * u)
            assert u * u + a * v * v == c and 2 * u * v == e
            return (u, v)
    return None


def quadext_evaluate(
    entries: Sequence[Fraction],
    a: Fraction,
    vec: Sequence[tuple[Fraction, Fraction]],
) -> tuple[Fraction, Fraction]:
    """Value of the diagonal form with the given rational entries at a
    vector of Q(sqrt a) coordinates, as (rational part, coefficient of
    sqrt(a)).  Pure Fraction arithmetic, independent of the field layer."""
    A = Fraction(0)
    B = Fraction(0)
    for w, (u, v) in zip(entries, vec):
        A += w * (u * u + a * v * v)
        B += w * 2 * u * v
    return (A, B)


def quadext_isotropy_witness(
    entries: Sequence[Fraction],
    a: Fraction,
    *,
    height: int = 2,
    budget: int = 20_000,
) -> tuple[tuple[Fraction, Fraction], ...] | None:
    """Bounded search for a nontrivial zero of <entries> over Q(sqrt a).

    All but one coordinate run over pairs (u_j, v_j) of integers of
    sup-norm up to ``height``; the remaining coordinate is solved exactly
    with :func:`quadext_sqrt`.  Complete for binary forms (the prefix
    (1, 0) reduces to the square test); one-sided beyond that.  Witnesses
    are verified with :func:`quadext_evaluate` before being returned.
    """
    ents = [Fraction(e) for e in entries]
    a = Fraction(a)
    n = len(ents)
    if n < 2:
        return None
    spent = 0
    for h in range(1, height + 1):
        for flat in _shell(h, 2 * (n - 1)):
            prefix = [(Fraction(flat[2 * i]), Fraction(flat[2 * i + 1])) for i in range(n - 1)]
            if all(u == 0 and v == 0 for u, v in prefix):
                continue
            for k in range(n):
                spent += 1
                A = Fraction(0)
                B = Fraction(0)
                it = iter(prefix)
                for pos in range(n):
                    if pos == k:
                        continue
                    u, v = next(it)
                    w = ents[pos]
                    A += w * (u * u + a * v * v)
                    B += w * 2 * u * v
                w = quadext_sqrt(a, (-A / ents[k], -B / ents[k]))
                if w is not None:
                    vec = []
                    it = iter(prefix)
                    for pos in range(n):
                        vec.append(w if pos == k else next(it))
                    value = quadext_evaluate(ents, a, vec)
                    assert value == (0, 0)
                    return tuple(vec)
                if spent >= budget:
                    return None
    return None


# --------------------------------------------------------------------------
# symbolic substitution
# --------------------------------------------------------------------------


def diagonal_polynomial(q: QForm) -> dict[int, object]:
    """The polynomial of a diagonal form as a map {variable index: coefficient},
    i.e. q(x_1, .., x_n) = sum coeff_i * x_i^2, dropping zero coefficients
    (there are none for nondegenerate forms)."""
    return {i: e for i, e in enumerate(q.entries) if not q.field.is_zero(e)}


def restricts_to(big: QForm, small: QForm) -> bool:
    """Whether substituting 0 for the trailing variables of ``big`` yields
    exactly the polynomial of ``small`` — the polynomial identity behind
    the subform relation, checked coefficient-wise on the symbolic
    representation rather than through any isometry machinery."""
    if big.field != small.field or big.dim < small.dim:
        return False
    F = big.field
    poly = {
        i: c for i, c in diagonal_polynomial(big).items() if i < small.dim
    }
    target = diagonal_polynomial(small)
    if poly.keys() != target.keys():
        return False
    return all(F.is_zero(F.sub(poly[i], target[i])) for i in poly)
