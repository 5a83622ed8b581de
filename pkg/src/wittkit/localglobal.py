"""Complete deciders: isotropy, Witt index, isometry, subform, G/H membership.

Field dispatch
--------------
* prime and finite residue fields — closed forms from (dim, det);
* the rationals — local-global machinery (Hilbert symbols, Hasse
  invariants, local anisotropic dimensions at the finitely many relevant
  places);
* Laurent extensions — residue splitting: q ≃ q0 ⊥ x·q1 with unit residue
  forms, index and isometry computed componentwise and recursively;
* quadratic extensions Q(sqrt d), forms with rational entries — closed
  invariant criteria (below);
* rational function fields — constant entries delegate to the base field;
  genuinely polynomial entries are served by the residue machinery in
  :mod:`wittkit.funcfield`.

Why the relevant places suffice over Q
--------------------------------------
The global Witt index is the minimum of the local ones, and that minimum
is attained on {infinity, 2, odd p dividing some entry's square-free
part}: at any other place the form is unimodular, so its local index is
at least floor(dim/2) - 1, with the deficit occurring exactly when the
twisted determinant (-1)^(dim/2)·det is a local non-square — and every
prime in that determinant's support is already a relevant place, where
the same failure costs at least as much.

Quadratic extensions
--------------------
For K = Q(sqrt d) and q with rational entries, a place of K above v is
either a copy of Q_v (d a square at v) or a genuine quadratic extension,
and every quaternion algebra over Q_v is split by every quadratic
extension of Q_v; hence for dim >= 3 the non-split places impose no
condition at all.  This yields closed criteria for isotropy and
hyperbolicity over K.  The explicit witness search (some b with
<b,-db> embedding into q) is kept for Witt-plane extraction and is
cross-validated against the invariant route by the test suites.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InconsistentInvariants, UnsupportedField, ZeroElement
from .fields import (
    QQ,
    Element,
    FieldDesc,
    GFExt,
    LaurentExt,
    PrimeField,
    QuadExt,
    RatFuncExt,
    Rationals,
    is_prime,
    poly_deg,
    s_square_classes,
    support,
)
from .forms import (
    QForm,
    evaluate,
    hyperbolic_form,
    neg,
    orth_sum,
    rational_subfield_entries,
    same_field,
    signature,
    tensor,
)

# ---------------------------------------------------------------------------
# places
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealPlace:
    def __repr__(self) -> str:
        return "oo"


@dataclass(frozen=True)
class PadicPlace:
    p: int

    def __repr__(self) -> str:
        return str(self.p)


Place = RealPlace | PadicPlace

REAL = RealPlace()


@dataclass(frozen=True)
class LocalData:
    """Classifying invariants of a rational form at one place."""

    dim: int
    det: int  # square-free representative of the determinant class
    hasse: int
    signature: int | None  # real place only


@dataclass(frozen=True)
class WittDecomposition:
    index: int
    anisotropic_part: QForm | None


# ---------------------------------------------------------------------------
# Hilbert symbols and Hasse invariants over Q
# ---------------------------------------------------------------------------


def _padic_split(a: Fraction, p: int) -> tuple[int, int]:
    """(valuation, unit-part residue data): for odd p the unit part mod p;
    for p = 2 the unit part mod 8."""
    num, den = a.numerator, a.denominator
    alpha = 0
    while num % p == 0:
        num //= p
        alpha += 1
    while den % p == 0:
        den //= p
        alpha -= 1
    m = p if p != 2 else 8
    return alpha, num * den % m


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def hilbert_symbol(a, b, v: Place) -> int:
    """(a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over
    the completion at v."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ZeroElement("Hilbert symbol needs nonzero arguments")
    return _hilbert_classes(
        Fraction(QQ.square_class(a)), Fraction(QQ.square_class(b)), v
    )


@functools.lru_cache(maxsize=None)
def _hilbert_classes(a: Fraction, b: Fraction, v: Place) -> int:
    if isinstance(v, RealPlace):
        return -1 if a < 0 and b < 0 else 1
    p = v.p
    if p == 2:
        alpha, u = _padic_split(a, 2)
        beta, w = _padic_split(b, 2)
        e = _eps(u) * _eps(w) + alpha * _omega(w) + beta * _omega(u)
        return -1 if e % 2 else 1
    alpha, u = _padic_split(a, p)
    beta, w = _padic_split(b, p)
    sign = 1
    if alpha % 2 and beta % 2:
        sign *= _legendre(-1, p)
    if beta % 2:
        sign *= _legendre(u, p)
    if alpha % 2:
        sign *= _legendre(w, p)
    return sign


def _eps(m: int) -> int:
    """(u-1)/2 mod 2 for an odd unit with residue m mod 8."""
    return 1 if m % 4 == 3 else 0


def _omega(m: int) -> int:
    """(u^2-1)/8 mod 2 for an odd unit with residue m mod 8."""
    return 1 if m % 8 in (3, 5) else 0


def _rational_entries(q: QForm) -> tuple[Fraction, ...]:
    if not isinstance(q.field, Rationals):
        raise UnsupportedField(
            f"local invariants need a form over Q, got {q.field.spec_string()}"
        )
    return tuple(Fraction(a) for a in q.entries)


def hasse_invariant(q: QForm, v: Place) -> int:
    """prod_{i<j} (a_i, a_j)_v, in closed form (linear in the dimension).

    The product collapses by bimultiplicativity: writing a_i = p^(x_i) u_i
    at an odd place, only the count of odd-valuation entries and each
    unit's residue symbol survive; at 2, only the epsilon/omega residues
    mod 8 do.  (The naive pairwise product is exercised against this in
    the tests.)
    """
    return _hasse_cached(q, v)


@functools.lru_cache(maxsize=None)
def _hasse_cached(q: QForm, v: Place) -> int:
    entries = _rational_entries(q)
    if isinstance(v, RealPlace):
        nneg = sum(1 for a in entries if a < 0)
        return -1 if (nneg * (nneg - 1) // 2) % 2 else 1
    p = v.p
    if p == 2:
        splits = [_padic_split(a, 2) for a in entries]
        e_total = sum(_eps(u) for _, u in splits)
        om_total = sum(_omega(u) for _, u in splits)
        acc = e_total * (e_total - 1) // 2
        for alpha, u in splits:
            acc += alpha * (om_total - _omega(u))
        return -1 if acc % 2 else 1
    splits = [_padic_split(a, p) for a in entries]
    k = sum(alpha % 2 for alpha, _ in splits)
    sign = _legendre(-1, p) if (k * (k - 1) // 2) % 2 else 1
    for alpha, u in splits:
        e = k - alpha % 2
        if e % 2:
            sign *= _legendre(u, p)
    return sign


def relevant_places(*qs: QForm, extra: Iterable[Element] = ()) -> list[Place]:
    """infinity, 2, and every odd prime dividing the square-free part of an
    entry (or of an extra element)."""
    odd: set[int] = set()
    for q in qs:
        for a in q.entries:
            odd |= support(QQ, Fraction(a))
    for a in extra:
        odd |= support(QQ, Fraction(a))
    return [REAL, PadicPlace(2)] + [PadicPlace(p) for p in sorted(odd)]


def local_data(q: QForm, v: Place) -> LocalData:
    entries = _rational_entries(q)
    det = QQ.one()
    for a in entries:
        det *= a
    return LocalData(
        dim=q.dim,
        det=QQ.square_class(det),
        hasse=hasse_invariant(q, v),
        signature=signature(q) if isinstance(v, RealPlace) else None,
    )


def local_anisotropic_dim(q: QForm, v: Place) -> int:
    """Dimension of the anisotropic kernel of q over the completion at v.

    p-adic case: scan r = dim mod 2, ..., min(4, dim); the residual
    invariants after stripping (dim-r)/2 planes are anisotropically
    realizable for exactly one admissible r, by the classification of
    forms over Q_p by (dim, det, hasse).
    """
    entries = _rational_entries(q)
    if isinstance(v, RealPlace):
        return abs(signature(q))
    d = q.dim
    det = Fraction(1)
    for a in entries:
        det *= a
    D = Fraction(QQ.square_class(det))
    s = hasse_invariant(q, v)
    for r in range(d % 2, min(4, d) + 1, 2):
        k = (d - r) // 2
        D_an = Fraction(QQ.square_class(D if k % 2 == 0 else -D))
        s_an = s
        if (k * (k - 1) // 2) % 2:
            s_an *= _hilbert_classes(Fraction(-1), Fraction(-1), v)
        if k % 2:
            s_an *= _hilbert_classes(D_an, Fraction(-1), v)
        if r == 0:
            ok = _is_local_square(D_an, v) and s_an == 1
        elif r == 1:
            ok = s_an == 1
        elif r == 2:
            ok = not _is_local_square(-D_an, v)
        elif r == 3:
            ok = s_an == -_hilbert_classes(Fraction(-1), -D_an, v)
        else:
            ok = _is_local_square(D_an, v) and s_an == -_hilbert_classes(
                Fraction(-1), Fraction(-1), v
            )
        if ok:
            return r
    raise RuntimeError("p-adic classification scan fell through (bug)")


# ---------------------------------------------------------------------------
# isotropy
# ---------------------------------------------------------------------------


def is_isotropic(q: QForm) -> bool:
    """Does q represent zero nontrivially?"""
    F = q.field
    if isinstance(F, (PrimeField, GFExt)):
        if q.dim >= 3:
            return True
        if q.dim == 1:
            return False
        return F.is_square(F.neg(F.mul(q.entries[0], q.entries[1])))
    if isinstance(F, Rationals):
        return _rational_isotropic(q)
    if isinstance(F, LaurentExt):
        q0, q1 = laurent_split(q)
        return (q0 is not None and is_isotropic(q0)) or (
            q1 is not None and is_isotropic(q1)
        )
    if isinstance(F, RatFuncExt):
        return is_isotropic(_ratfunc_constant_descent(q))
    if isinstance(F, QuadExt):
        return _quadext_isotropic(q)
    raise UnsupportedField(f"isotropy over {F.spec_string()}")


def _rational_isotropic(q: QForm) -> bool:
    entries = _rational_entries(q)
    d = q.dim
    if d == 1:
        return False
    if d == 2:
        return QQ.is_square(-entries[0] * entries[1])
    indefinite = any(a > 0 for a in entries) and any(a < 0 for a in entries)
    if d >= 5:
        # Q_p never obstructs in dim >= 5; only the real place can.
        return indefinite
    if not indefinite:
        return False
    return all(
        local_anisotropic_dim(q, v) <= d - 2
        for v in relevant_places(q)
        if not isinstance(v, RealPlace)
    )


# ---------------------------------------------------------------------------
# Laurent residue splitting
# ---------------------------------------------------------------------------


def laurent_split(q: QForm) -> tuple[QForm | None, QForm | None]:
    """q ≃ q0 ⊥ x·q1 over base((x)) with unit residue forms over the base;
    either part may be absent."""
    F = q.field
    assert isinstance(F, LaurentExt)
    even, odd = [], []
    for a in q.entries:
        v = F.valuation(a)
        (even if v % 2 == 0 else odd).append(F.residue(a))
    return (
        QForm(F.base, tuple(even)) if even else None,
        QForm(F.base, tuple(odd)) if odd else None,
    )


def _laurent_lift(F: LaurentExt, q: QForm | None, e: int) -> QForm | None:
    if q is None:
        return None
    return QForm(F, tuple(F.monomial(c, e) for c in q.entries))


def _ratfunc_constant_descent(q: QForm) -> QForm:
    F = q.field
    assert isinstance(F, RatFuncExt)
    consts = []
    for a in q.entries:
        if len(a.num) > 1 or len(a.den) > 1:
            raise UnsupportedField(
                "isotropy over a rational function field with non-constant "
                "entries is decided through the residue machinery"
            )
        consts.append(F.base.div(a.num[0], a.den[0]))
    return QForm(F.base, tuple(consts))


def _ratfunc_lift(F: RatFuncExt, q: QForm | None) -> QForm | None:
    if q is None:
        return None
    return QForm(F, tuple(F.from_base(c) for c in q.entries))


# ---------------------------------------------------------------------------
# Witt index and decomposition
# ---------------------------------------------------------------------------


def witt_index(q: QForm) -> int:
    F = q.field
    if isinstance(F, (PrimeField, GFExt)):
        return _finite_witt_index(q)
    if isinstance(F, Rationals):
        return _rational_witt_index(q)
    if isinstance(F, LaurentExt):
        q0, q1 = laurent_split(q)
        return (witt_index(q0) if q0 else 0) + (witt_index(q1) if q1 else 0)
    if isinstance(F, RatFuncExt):
        return witt_index(_ratfunc_constant_descent(q))
    if isinstance(F, QuadExt):
        return _quadext_decompose(q)[0]
    raise UnsupportedField(f"Witt index over {F.spec_string()}")


def _finite_witt_index(q: QForm) -> int:
    F = q.field
    d = q.dim
    det = F.one()
    for a in q.entries:
        det = F.mul(det, a)
    if d % 2:
        return (d - 1) // 2
    target = F.one() if (d // 2) % 2 == 0 else F.neg(F.one())
    return d // 2 if F.square_class(det) == F.square_class(target) else d // 2 - 1


@functools.lru_cache(maxsize=None)
def _rational_witt_index(q: QForm) -> int:
    return min(
        (q.dim - local_anisotropic_dim(q, v)) // 2 for v in relevant_places(q)
    )


def witt_decompose(q: QForm) -> WittDecomposition:
    """q ≃ anisotropic_part ⊥ index·<1,-1>."""
    F = q.field
    if isinstance(F, (PrimeField, GFExt)):
        return _finite_witt_decompose(q)
    if isinstance(F, Rationals):
        return _rational_witt_decompose(q)
    if isinstance(F, LaurentExt):
        q0, q1 = laurent_split(q)
        w0 = witt_decompose(q0) if q0 else WittDecomposition(0, None)
        w1 = witt_decompose(q1) if q1 else WittDecomposition(0, None)
        a0 = _laurent_lift(F, w0.anisotropic_part, 0)
        a1 = _laurent_lift(F, w1.anisotropic_part, 1)
        an = orth_sum(a0, a1) if a0 and a1 else a0 or a1
        return WittDecomposition(w0.index + w1.index, an)
    if isinstance(F, RatFuncExt):
        w = witt_decompose(_ratfunc_constant_descent(q))
        return WittDecomposition(w.index, _ratfunc_lift(F, w.anisotropic_part))
    if isinstance(F, QuadExt):
        i, an = _quadext_decompose(q)
        return WittDecomposition(i, an)
    raise UnsupportedField(f"Witt decomposition over {F.spec_string()}")


def _finite_witt_decompose(q: QForm) -> WittDecomposition:
    F = q.field
    i = _finite_witt_index(q)
    d = q.dim
    if 2 * i == d:
        return WittDecomposition(i, None)
    det = F.one()
    for a in q.entries:
        det = F.mul(det, a)
    det_an = F.square_class(det if i % 2 == 0 else F.neg(det))
    if d - 2 * i == 1:
        return WittDecomposition(i, QForm(F, (det_an,)))
    return WittDecomposition(i, QForm(F, (F.one(), det_an)))


def _rational_witt_decompose(q: QForm) -> WittDecomposition:
    i = _rational_witt_index(q)
    if i == 0:
        return WittDecomposition(0, q)
    if 2 * i == q.dim:
        return WittDecomposition(i, None)
    an = form_from_invariants(**_residual_invariants(q, i))
    if is_isotropic(an):
        raise RuntimeError("reconstructed anisotropic part is isotropic (bug)")
    return WittDecomposition(i, an)


def _residual_invariants(q: QForm, k: int) -> dict:
    """Invariants of q with k hyperbolic planes stripped."""
    entries = _rational_entries(q)
    det = Fraction(1)
    for a in entries:
        det *= a
    det_an = Fraction(QQ.square_class(det if k % 2 == 0 else -det))
    hasse = {}
    for v in relevant_places(q):
        if isinstance(v, RealPlace):
            continue
        s = hasse_invariant(q, v)
        if (k * (k - 1) // 2) % 2:
            s *= _hilbert_classes(Fraction(-1), Fraction(-1), v)
        if k % 2:
            s *= _hilbert_classes(det_an, Fraction(-1), v)
        if s == -1:
            hasse[v] = -1
    return {
        "dim": q.dim - 2 * k,
        "det": det_an,
        "hasse": hasse,
        "sig": signature(q),
    }


def is_hyperbolic(q: QForm) -> bool:
    if q.dim % 2:
        return False
    if isinstance(q.field, QuadExt):
        # Invariant route; witt_index over a quadratic extension would
        # additionally extract explicit planes, which is wasted work here.
        return _quadext_hyperbolic(q)
    return witt_index(q) == q.dim // 2


# ---------------------------------------------------------------------------
# isometry and subforms
# ---------------------------------------------------------------------------


def is_isometric(q1: QForm, q2: QForm) -> bool:
    F = same_field(q1, q2)
    if q1.dim != q2.dim:
        return False
    if isinstance(F, (PrimeField, GFExt)):
        d1 = F.one()
        d2 = F.one()
        for a in q1.entries:
            d1 = F.mul(d1, a)
        for a in q2.entries:
            d2 = F.mul(d2, a)
        return F.square_class(d1) == F.square_class(d2)
    if isinstance(F, Rationals):
        det1 = Fraction(1)
        det2 = Fraction(1)
        for a in q1.entries:
            det1 *= Fraction(a)
        for a in q2.entries:
            det2 *= Fraction(a)
        if QQ.square_class(det1) != QQ.square_class(det2):
            return False
        if signature(q1) != signature(q2):
            return False
        places = relevant_places(q1, q2)
        return all(
            hasse_invariant(q1, v) == hasse_invariant(q2, v)
            for v in places
            if not isinstance(v, RealPlace)
        )
    if isinstance(F, LaurentExt):
        # The parity split is not canonical for isotropic forms (a scaled
        # hyperbolic plane x*H is isometric to H across the split), so
        # isometry is decided by Witt cancellation: equal dimensions and a
        # hyperbolic difference.
        return is_hyperbolic(orth_sum(q1, neg(q2)))
    if isinstance(F, RatFuncExt):
        return is_isometric(
            _ratfunc_constant_descent(q1), _ratfunc_constant_descent(q2)
        )
    if isinstance(F, QuadExt):
        return _quadext_hyperbolic(orth_sum(q1, neg(q2)))
    raise UnsupportedField(f"isometry over {F.spec_string()}")


def is_subform(r: QForm, q: QForm) -> bool:
    """Is q ≃ r ⊥ r' for some r'?  Decided by i(q ⊥ -r) >= dim r, which is
    equivalent by Witt cancellation."""
    same_field(r, q)
    if r.dim > q.dim:
        return False
    return witt_index(orth_sum(q, neg(r))) >= r.dim


def witt_complement(q: QForm, r: QForm) -> QForm | None:
    """A form c with q ≃ r ⊥ c, given is_subform(r, q); None when the
    dimensions match.  c is realized from the Witt class of q ⊥ -r padded
    with hyperbolic planes."""
    same_field(r, q)
    target = q.dim - r.dim
    if target == 0:
        return None
    w = witt_decompose(orth_sum(q, neg(r)))
    an = w.anisotropic_part
    have = an.dim if an else 0
    if have > target or (target - have) % 2:
        raise ValueError("witt_complement needs is_subform(r, q) to hold")
    pad = (target - have) // 2
    if pad == 0:
        return an
    h = hyperbolic_form(q.field, pad)
    return orth_sum(an, h) if an else h


# ---------------------------------------------------------------------------
# value sets: D, G, H
# ---------------------------------------------------------------------------


def in_G(a: Element, q: QForm) -> bool:
    """a a similarity factor: aq ≃ q, decided via <1,-a> ⊗ q hyperbolic."""
    F = q.field
    if F.is_zero(a):
        raise ZeroElement("0 is never a similarity factor")
    return is_hyperbolic(tensor(QForm(F, (F.one(), F.neg(a))), q))


def in_H(a: Element, q: QForm) -> bool:
    """a in D(q)·D(q), decided via <1,-a> ⊗ q isotropic."""
    F = q.field
    if F.is_zero(a):
        raise ZeroElement("0 is not an H-value")
    return is_isotropic(tensor(QForm(F, (F.one(), F.neg(a))), q))


def random_element(F: FieldDesc, rng: random.Random, height: int = 30) -> Element:
    """A small random element (possibly zero); used for vector sampling."""
    if isinstance(F, Rationals):
        return Fraction(rng.randint(-height, height))
    if isinstance(F, PrimeField):
        return rng.randrange(F.p)
    if isinstance(F, GFExt):
        n = poly_deg(F.modulus)
        return F.make([rng.randrange(F.p) for _ in range(n)])
    if isinstance(F, QuadExt):
        return (
            Fraction(rng.randint(-height, height)),
            Fraction(rng.randint(-height, height)),
        )
    if isinstance(F, LaurentExt):
        return F.make(
            0,
            (
                random_element(F.base, rng, height),
                random_element(F.base, rng, height),
            ),
        )
    if isinstance(F, RatFuncExt):
        return F.from_base(random_element(F.base, rng, height))
    raise UnsupportedField(f"sampling over {F.spec_string()}")


def sample_D(
    q: QForm, budget: int = 50, rng: random.Random | None = None, height: int = 30
) -> list[Element]:
    """Square classes of nonzero represented values found on `budget`
    random bounded-height vectors."""
    rng = rng if rng is not None else random.Random(0)
    F = q.field
    out: list[Element] = []
    seen = set()
    for _ in range(budget):
        v = [random_element(F, rng, height) for _ in range(q.dim)]
        val = evaluate(q, v)
        if F.is_zero(val):
            continue
        try:
            val = F.square_class(val)
        except UnsupportedField:
            pass
        if val not in seen:
            seen.add(val)
            out.append(val)
    return out


def sample_H(
    q: QForm, budget: int = 50, rng: random.Random | None = None, height: int = 30
) -> list[Element]:
    """Pairwise products of sampled D-values (H = D·D)."""
    rng = rng if rng is not None else random.Random(0)
    F = q.field
    d_vals = sample_D(q, budget, rng, height)
    out: list[Element] = []
    seen = set()
    for x, y in itertools.combinations_with_replacement(d_vals, 2):
        val = F.mul(x, y)
        try:
            val = F.square_class(val)
        except UnsupportedField:
            pass
        if val not in seen:
            seen.add(val)
            out.append(val)
    return out


# ---------------------------------------------------------------------------
# realizing invariants over Q
# ---------------------------------------------------------------------------


def _is_local_square(t: Fraction, v: Place) -> bool:
    if isinstance(v, RealPlace):
        return t > 0
    alpha, m = _padic_split(t, v.p)
    if alpha % 2:
        return False
    if v.p == 2:
        return m % 8 == 1
    return _legendre(m, v.p) == 1


def _aux_primes(excluded: frozenset[int]) -> Iterable[int]:
    n = 3
    while True:
        if n not in excluded and is_prime(n):
            yield n
        n += 2


def form_from_invariants(
    dim: int,
    det,
    hasse: Mapping[Place, int] | None = None,
    sig: int = 0,
) -> QForm:
    """A diagonal form over Q with the given dimension, determinant class,
    finite Hasse signs (+1 where omitted), and signature.

    Raises InconsistentInvariants when no such form exists; the result is
    verified by recomputing all invariants before it is returned.
    """
    det = Fraction(det)
    if det == 0:
        raise ZeroElement("determinant must be nonzero")
    if dim < 1:
        raise InconsistentInvariants("dimension must be positive")
    det = Fraction(QQ.square_class(det))
    hmap: dict[Place, int] = {}
    for v, s in (hasse or {}).items():
        if s not in (1, -1):
            raise InconsistentInvariants(f"hasse sign {s!r} is not +-1")
        if isinstance(v, RealPlace):
            continue  # validated against the signature below
        if s == -1:
            hmap[v] = -1

    if abs(sig) > dim or (sig - dim) % 2:
        raise InconsistentInvariants(
            f"signature {sig} impossible in dimension {dim}"
        )
    nneg = (dim - sig) // 2
    if (det < 0) != (nneg % 2 == 1):
        raise InconsistentInvariants(
            "determinant sign contradicts the signature"
        )
    s_real = -1 if (nneg * (nneg - 1) // 2) % 2 else 1
    given_real = (hasse or {}).get(REAL)
    if given_real is not None and given_real != s_real:
        raise InconsistentInvariants(
            "real Hasse sign contradicts the signature"
        )
    parity = s_real * functools.reduce(lambda x, y: x * y, hmap.values(), 1)
    if parity != 1:
        raise InconsistentInvariants("Hasse signs violate reciprocity")
    if dim == 1 and hmap:
        raise InconsistentInvariants("dim-1 forms have trivial Hasse signs")
    if dim == 2:
        for v in set(hmap) | {PadicPlace(p) for p in support(QQ, det)} | {
            PadicPlace(2)
        }:
            if hmap.get(v, 1) == -1 and _is_local_square(-det, v):
                raise InconsistentInvariants(
                    f"no binary form: -det is a square at {v} but the "
                    "Hasse sign is -1 there"
                )

    entries = _realize(dim, det, hmap, sig)
    q = QForm(QQ, tuple(entries))
    _verify_realization(q, dim, det, hmap, sig)
    return q


def _verify_realization(
    q: QForm, dim: int, det: Fraction, hmap: dict, sig: int
) -> None:
    prod = Fraction(1)
    for a in q.entries:
        prod *= a
    ok = (
        q.dim == dim
        and Fraction(QQ.square_class(prod)) == det
        and signature(q) == sig
    )
    if ok:
        for v in relevant_places(q, extra=[det]) + list(hmap):
            if isinstance(v, RealPlace):
                continue
            if hasse_invariant(q, v) != hmap.get(v, 1):
                ok = False
                break
    if not ok:
        raise RuntimeError("invariant realization failed verification (bug)")


def _realize(dim: int, det: Fraction, hmap: dict, sig: int) -> list[Fraction]:
    if dim == 1:
        return [det]
    if dim == 2:
        return _realize_binary(det, hmap, sig)
    if dim >= 4 or not _needs_search(det, hmap, sig):
        a1 = Fraction(-1) if sig < 0 else Fraction(1)
        rest = _peel(dim, det, hmap, sig, a1)
        return [a1] + rest
    # dim 3 with a constrained binary residual: search a1
    S = {2} | support(QQ, det) | {v.p for v in hmap if v.p != 2}
    for a1 in _candidate_scalars(S):
        if abs(sig - (1 if a1 > 0 else -1)) > 2:
            continue
        try:
            rest = _peel(3, det, hmap, sig, a1)
            return [a1] + rest
        except InconsistentInvariants:
            continue
    raise RuntimeError("dim-3 peeling search exhausted (bug)")


def _needs_search(det: Fraction, hmap: dict, sig: int) -> bool:
    # Peeling +-1 off a dim-3 instance leaves det' = +-det; the binary
    # existence condition only ever bites when -det' is somewhere a local
    # square with Hasse sign -1, so try the cheap peel first and fall back
    # to a search when it fails.
    try:
        a1 = Fraction(-1) if sig < 0 else Fraction(1)
        _peel(3, det, hmap, sig, a1, dry_run=True)
        return False
    except InconsistentInvariants:
        return True


def _peel(
    dim: int,
    det: Fraction,
    hmap: dict,
    sig: int,
    a1: Fraction,
    dry_run: bool = False,
) -> list[Fraction]:
    det2 = Fraction(QQ.square_class(det * a1))
    sig2 = sig - (1 if a1 > 0 else -1)
    places = (
        {PadicPlace(2)}
        | set(hmap)
        | {PadicPlace(p) for p in support(QQ, det) | support(QQ, a1)}
    )
    hmap2 = {}
    for v in places:
        s = hmap.get(v, 1) * _hilbert_classes(
            Fraction(QQ.square_class(a1)), det2, v
        )
        if s == -1:
            hmap2[v] = -1
    if dim - 1 == 2:
        # binary existence: -det2 locally square forces +1 Hasse
        for v in set(hmap2) | {PadicPlace(p) for p in support(QQ, det2)} | {
            PadicPlace(2)
        }:
            if hmap2.get(v, 1) == -1 and _is_local_square(-det2, v):
                raise InconsistentInvariants("binary residual is unrealizable")
        if dry_run:
            return []
        return _realize_binary(det2, hmap2, sig2)
    if dry_run:
        return []
    return _realize(dim - 1, det2, hmap2, sig2)


def _candidate_scalars(S: set[int]) -> Iterable[Fraction]:
    base = s_square_classes(QQ, sorted(S - {2}) + [2])
    yield from (Fraction(b) for b in base)
    for count, ell in enumerate(_aux_primes(frozenset(S))):
        if count >= 200:
            return
        yield from (Fraction(b * ell) for b in base)


def _realize_binary(det: Fraction, hmap: dict, sig: int) -> list[Fraction]:
    """<a, a*det> with (a, -det)_v = s_v everywhere and the right signs."""
    target_nneg = (2 - sig) // 2
    S = {2} | support(QQ, det) | {v.p for v in hmap if v.p != 2}
    mdet = Fraction(QQ.square_class(-det))
    for a in _candidate_scalars(S):
        signs = (1 if a > 0 else -1) + (1 if a * det > 0 else -1)
        if signs != sig:
            continue
        places = (
            {PadicPlace(2), REAL}
            | set(hmap)
            | {PadicPlace(p) for p in support(QQ, det) | support(QQ, a)}
        )
        good = True
        for v in places:
            want = hmap.get(v, 1)
            if isinstance(v, RealPlace):
                want = -1 if target_nneg == 2 else 1
            if _hilbert_classes(Fraction(QQ.square_class(a)), mdet, v) != want:
                good = False
                break
        if good:
            return [a, Fraction(QQ.square_class(a * det))]
    raise RuntimeError("binary realization search exhausted (bug)")


# ---------------------------------------------------------------------------
# quadratic extensions Q(sqrt d), rational entries
# ---------------------------------------------------------------------------


def _quadext_parts(q: QForm) -> tuple[QuadExt, QForm]:
    F = q.field
    assert isinstance(F, QuadExt)
    rat = rational_subfield_entries(q)
    if rat is None:
        raise UnsupportedField(
            "deciders over Q(sqrt d) support forms with rational entries; "
            "this form has entries genuinely involving sqrt d"
        )
    return F, QForm(QQ, rat)


def _quadext_isotropic(q: QForm) -> bool:
    F, q0 = _quadext_parts(q)
    d = Fraction(F.a)
    if q.dim == 1:
        return False
    if q.dim == 2:
        t = Fraction(QQ.square_class(-Fraction(q0.entries[0]) * q0.entries[1]))
        return t == 1 or t == d
    if d > 0 and abs(signature(q0)) == q.dim:
        return False
    if q.dim >= 5:
        return True
    return all(
        local_anisotropic_dim(q0, v) <= q.dim - 2
        for v in relevant_places(q0, extra=[d])
        if not isinstance(v, RealPlace) and _is_local_square(d, v)
    )


def _quadext_hyperbolic(q: QForm) -> bool:
    F, q0 = _quadext_parts(q)
    d = Fraction(F.a)
    if q.dim % 2:
        return False
    m = q.dim // 2
    det = Fraction(1)
    for a in q0.entries:
        det *= a
    t = Fraction(QQ.square_class(det if m % 2 == 0 else -det))
    if t != 1 and t != d:
        return False
    if d > 0 and signature(q0) != 0:
        return False
    want_exp = (m * (m - 1) // 2) % 2
    for v in relevant_places(q0, extra=[d]):
        if isinstance(v, RealPlace) or not _is_local_square(d, v):
            continue
        want = (
            _hilbert_classes(Fraction(-1), Fraction(-1), v) if want_exp else 1
        )
        if hasse_invariant(q0, v) != want:
            return False
    return True


def _quadext_witness(g: QForm, d: Fraction) -> Fraction:
    """b with <b, -db> a subform of g over Q, for g anisotropic over Q but
    isotropic over Q(sqrt d).

    The primary domain (signed square-class products over the combined
    support) covers almost every instance; one auxiliary prime is enough
    to hit any remaining local square-class pattern, so exhaustion means
    a bug, not a hard instance.
    """
    S = {2}
    for a in g.entries:
        S |= support(QQ, Fraction(a))
    S |= support(QQ, d)
    pos = all(a > 0 for a in g.entries)
    neg_ = all(a < 0 for a in g.entries)

    def try_b(b: Fraction) -> bool:
        if pos and (b < 0 or -d * b < 0):
            return False
        if neg_ and (b > 0 or -d * b > 0):
            return False
        probe = orth_sum(g, QForm(QQ, (Fraction(-b), Fraction(d * b))))
        return _rational_witt_index(probe) >= 2

    for b in _candidate_scalars(S):
        if try_b(b):
            return b
    raise RuntimeError(
        "invariant route found isotropy but no binary witness (bug)"
    )


def _quadext_decompose(q: QForm) -> tuple[int, QForm | None]:
    F, q0 = _quadext_parts(q)
    d = Fraction(F.a)
    w = _rational_witt_decompose(q0)
    index = w.index
    g = w.anisotropic_part
    while g is not None and _quadext_isotropic(QForm(F, _embed(F, g))):
        b = _quadext_witness(g, d)
        index += 1
        if g.dim == 2:
            g = None
        else:
            g = witt_complement(g, QForm(QQ, (b, Fraction(QQ.square_class(-d * b)))))
    if g is None:
        return index, None
    return index, QForm(F, _embed(F, g))


def _embed(F: QuadExt, q: QForm) -> tuple:
    return tuple(F.embed(a) for a in q.entries)
