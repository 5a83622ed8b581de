"""Decisions over function fields of quadrics.

The driving question: given quadratic forms q and p over F, does q become
hyperbolic over the function field F(p) of the projective quadric p = 0?
No complete algorithm is known, so :func:`hyperbolic_over_ff` runs a
first-match-wins ladder — degenerate function fields, hyperbolic inputs,
isotropic quadrics (purely transcendental extensions), complete low-dimension
theory (conics, p similar to q, Pfister neighbors), certified refutations
(binary divisibility forced by specialization, sampled H-value obstructions),
a bounded sufficiency search, and finally an honest Unknown.  Every Yes and
No carries a replayable certificate.

Alongside the ladder live the supporting computations:

* :func:`witt_index_over_quad_ext` — the Witt index of a rational form over
  Q(√a), by invariant-level plane extraction (no vectors over the extension
  are ever materialized);
* :func:`first_residue` / :func:`second_residue` — the residue forms of a
  form over F(x) at the infinite place and at a monic irreducible π, the
  two halves of the exact-sequence criterion: q is hyperbolic over F(x)
  exactly when every residue is hyperbolic over its residue field
  (:func:`ratfunc_hyperbolic` packages the full decision);
* :func:`check_specialization_necessity` — randomized necessary-condition
  testing: values p(v) of the normalized quadric form must be similarity
  factors of q whenever q is hyperbolic over F(p).
"""

from __future__ import annotations

import itertools
import random
import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .decision import (
    AlreadyHyperbolic,
    Decision,
    HObstruction,
    InvariantObstruction,
    PfisterFactor,
    PurelyTranscendental,
    QuadExtDivisibility,
    ResidueComputation,
    TwoDimDivisibilityObstruction,
    no,
    unknown,
    yes,
)
from .errors import (
    NonMonic,
    NotSquareFree,
    SquareArgument,
    UnsupportedField,
    UnsupportedInput,
)
from .fields import (
    QQ,
    Element,
    FieldDesc,
    GFExt,
    LaurentExt,
    PrimeField,
    QuadExt,
    RatFunc,
    RatFuncExt,
    Rationals,
    poly_deg,
    poly_divmod,
    poly_eval,
    poly_format,
    poly_is_irreducible,
    poly_is_monic,
    poly_is_squarefree,
    poly_mod,
    poly_trim,
)
from .forms import (
    QForm,
    diag,
    determinant,
    evaluate,
    format_form,
    hyperbolic_form,
    normalized,
    same_field,
    scale,
)
from .localglobal import (
    in_G,
    is_hyperbolic,
    is_isometric,
    is_isotropic,
    random_element,
    sample_H,
    witt_decompose,
    witt_index,
)
from .pfister import (
    PfisterSpec,
    complete_to_pfister,
    divide_by_pfister,
    neighbor_of,
    similar_to_pfister,
)

__all__ = [
    "hyperbolic_over_ff",
    "witt_index_over_quad_ext",
    "first_residue",
    "second_residue",
    "residue_places",
    "ratfunc_hyperbolic",
    "SpecializationReport",
    "check_specialization_necessity",
]


# ---------------------------------------------------------------------------
# the main decision ladder
# ---------------------------------------------------------------------------


def hyperbolic_over_ff(
    q: QForm,
    p: QForm,
    *,
    h_budget: int = 50,
    search_budget: int = 400,
    seed: int = 0,
) -> Decision:
    """Does q become hyperbolic over the function field F(p)?

    First match wins:

    1. dim p = 1 or p ≃ H — the function field is F itself (a quadric with
       at most a rational point's worth of geometry adds nothing);
    2. q already hyperbolic — stays hyperbolic over every extension;
    3. p isotropic — F(p)/F is purely transcendental, and hyperbolicity
       descends, so the answer is the base answer (No, past branch 2);
    4. dim p = 2, p anisotropic — complete theory: F(p) is the quadratic
       extension F(√a) for a = −p₁p₂, whose kernel is the ⟨1,−a⟩-multiples;
    5. p similar to q — complete: q vanishes over its own function field
       exactly when q is similar to a Pfister form;
    6. p a recognized Pfister neighbor of π — complete: the kernel of
       F(p)/F is exactly the π-multiples;
    7. certified refutations: (a) every binary diagonal-pair subform β of p
       forces ⟨1, β₁β₂⟩-divisibility of q (specializing the quadric shrinks
       nothing), (b) sampled H-values of p must be similarity factors of q;
    8. bounded sufficiency search for a 3-fold π with scale(p,c) ⊆ π —
       isotropy transfers along subforms, so any hit makes q ≃ π⊗r
       sufficient; for dim p ∈ {5,6,7} the embedding also certifies p as a
       neighbor, making a division failure a refutation;
    9. Unknown.

    ``h_budget`` bounds the H-value sampling of branch 7b, ``search_budget``
    the completion searches of branches 6 and 8; ``seed`` makes the sampling
    deterministic — identical inputs and seed give identical Decisions.
    """
    F = same_field(q, p)
    _require_base_tower(F)
    rng = random.Random(f"{seed}:hyp-over")

    # (1) degenerate function field: F(p) = F
    if p.dim == 1 or (p.dim == 2 and is_isometric(p, hyperbolic_form(F, 1))):
        if is_hyperbolic(q):
            return yes(AlreadyHyperbolic())
        return no(
            InvariantObstruction(
                "the function field of this quadric is F itself, and q is "
                "not hyperbolic over F"
            )
        )

    # (2) nothing to do
    if is_hyperbolic(q):
        return yes(AlreadyHyperbolic())

    # (3) rational point on the quadric: purely transcendental extension
    if is_isotropic(p):
        return no(PurelyTranscendental())

    # (4) anisotropic conic: quadratic extension, complete kernel theory
    if p.dim == 2:
        prod = F.mul(p.entries[0], p.entries[1])
        div = _witt_divide(q, PfisterSpec(F, (F.square_class(prod),)))
        if div.is_yes:
            a = F.square_class(F.neg(prod))
            return yes(QuadExtDivisibility(a, div.certificate.quotient))
        if div.is_no:
            return no(TwoDimDivisibilityObstruction(p))
        return unknown()

    # (5) same function field: p similar to q
    if p.dim == q.dim:
        c = _similarity_scalar(p, q)
        if c is not None:
            dec = similar_to_pfister(q)
            if dec.is_yes:
                return yes(dec.certificate)
            if dec.is_no:
                return no(
                    InvariantObstruction(
                        "p is similar to q, and a form is hyperbolic over "
                        "its own function field exactly when it is similar "
                        f"to a Pfister form; {dec.certificate.text}"
                    )
                )
            return unknown()

    # (6) recognized Pfister neighbor: complete kernel theory
    nb = neighbor_of(p, budget=search_budget)
    if nb.is_yes:
        spec = nb.certificate.spec
        div = _witt_divide(q, spec)
        if div.is_yes:
            return div
        if div.is_no:
            return no(
                InvariantObstruction(
                    f"p is a neighbor of {spec}, so the forms killed by "
                    f"F(p) are exactly the {spec}-multiples, and q is not "
                    f"one: {div.certificate.text}"
                )
            )
        return unknown()

    # (7a) binary specializations force divisibility
    for i, j in itertools.combinations(range(p.dim), 2):
        prod = F.mul(p.entries[i], p.entries[j])
        div = _witt_divide(q, PfisterSpec(F, (F.square_class(prod),)))
        if div.is_no:
            return no(
                TwoDimDivisibilityObstruction(
                    diag(F, [p.entries[i], p.entries[j]])
                )
            )

    # (7b) sampled H-values must be similarity factors
    for a in sample_H(p, h_budget, rng):
        try:
            if not in_G(a, q):
                return no(HObstruction(a))
        except UnsupportedField:
            continue

    # (8) bounded sufficiency search through 3-fold embeddings
    if 4 <= p.dim <= 7:
        found = complete_to_pfister(p, 3, search_budget)
        if found is not None:
            spec, _ = found
            div = _witt_divide(q, spec)
            if div.is_yes:
                return div
            if div.is_no and p.dim >= 5:
                # dim p > ½·8, so the embedding makes p a genuine neighbor
                # and the kernel statement is two-sided.
                return no(
                    InvariantObstruction(
                        f"p embeds into {spec} as a neighbor, so only "
                        f"{spec}-multiples die over F(p), and q is not one: "
                        f"{div.certificate.text}"
                    )
                )

    # (9)
    return unknown()


def _witt_divide(q: QForm, spec: PfisterSpec) -> Decision:
    """Witt-level divisibility: is the Witt class of q a spec-multiple?

    The function-field kernel statements live in the Witt ring, so the exact
    tensor factorization is applied to the anisotropic kernel of q — a form
    like ⟨c, cu⟩ ⊥ ⟨1,−1⟩ is a Witt-level ⟨1,u⟩-multiple even though no
    form-level factorization exists.  A Yes carries a quotient r with
    q ≃ spec⊗r ⊥ k×⟨1,−1⟩ where 2k = dim q − 2ⁿ·dim r.
    """
    try:
        w = witt_decompose(q)
    except UnsupportedField:
        return unknown()
    kern = w.anisotropic_part
    if kern is None:
        # hyperbolic: the zero Witt class divides by everything
        return divide_by_pfister(q, spec)
    dec = divide_by_pfister(kern, spec)
    if dec.is_yes:
        return yes(PfisterFactor(spec, dec.certificate.quotient))
    if dec.is_no:
        return no(
            InvariantObstruction(
                f"the anisotropic kernel {format_form(kern)} is not a "
                f"{spec}-multiple ({dec.certificate.text})"
            )
        )
    return dec


def _require_base_tower(F: FieldDesc) -> None:
    base = F
    while isinstance(base, LaurentExt):
        base = base.base
    if not isinstance(base, (Rationals, PrimeField, GFExt)):
        raise UnsupportedField(
            f"hyperbolic_over_ff over {F.spec_string()}: supported bases are "
            "the rationals and finite fields, possibly under Laurent towers"
        )


def _similarity_scalar(p: QForm, q: QForm) -> Element | None:
    """Some c with p ≃ c·q, or None.

    In odd dimension the determinant ratio forces the only possible c.  In
    even dimension the pairwise entry products are tried; a similarity whose
    scalar lies outside those classes is missed, which is sound — the caller
    falls through to strictly weaker branches.
    """
    F = p.field
    cands: list = []
    if p.dim % 2:
        try:
            cands.append(F.square_class(F.mul(determinant(p), determinant(q))))
        except UnsupportedField:
            pass
    for a in p.entries:
        for b in q.entries:
            try:
                c = F.square_class(F.mul(a, b))
            except UnsupportedField:
                c = F.mul(a, b)
            if c not in cands:
                cands.append(c)
    for c in cands:
        if is_isometric(p, scale(q, c)):
            return c
    return None


# ---------------------------------------------------------------------------
# Witt indices over quadratic extensions
# ---------------------------------------------------------------------------


def witt_index_over_quad_ext(q: QForm, a) -> int:
    """i(q over Q(√a)) for a rational form q and a non-square a.

    Plane extraction happens at the invariant level: the quadratic-extension
    isotropy decider repeatedly finds b with ⟨b, −ab⟩ ⊆ q and strips it via
    reconstructed invariants; no coordinates over Q(√a) are ever touched.
    """
    if not isinstance(q.field, Rationals):
        raise UnsupportedField("quadratic-extension indices over the rationals only")
    a = Fraction(a)
    if QQ.is_square(a):
        raise SquareArgument(f"{a} is a square; Q(sqrt {a}) = Q")
    K = QuadExt(QQ, a)
    return witt_index(QForm(K, tuple(K.embed(e) for e in q.entries)))


# ---------------------------------------------------------------------------
# residues over rational function fields
# ---------------------------------------------------------------------------


def _require_ratfunc(q: QForm) -> RatFuncExt:
    if not isinstance(q.field, RatFuncExt):
        raise UnsupportedField("residues need a form over a rational function field")
    return q.field


def _entry_polys(q: QForm) -> list[tuple]:
    """Entries as square-free polynomials (ascending coefficients).

    The residue maps are Witt-class maps computed on representatives, so
    entries must come normalized: polynomial (trivial denominator) and
    square-free.  ``normalized(q)`` produces exactly that shape.
    """
    F = q.field
    B = F.base
    out = []
    for x in q.entries:
        if poly_deg(x.den) != 0:
            raise NotSquareFree(
                f"entry {F.format(x)} is not a polynomial; normalize entries "
                "to square-free polynomials first"
            )
        if not poly_is_squarefree(B, x.num):
            raise NotSquareFree(f"entry {F.format(x)} has a repeated factor")
        out.append(x.num)
    return out


def _coerce_poly(B: FieldDesc, pi) -> tuple:
    if isinstance(pi, RatFunc):
        if poly_deg(pi.den) != 0:
            raise UnsupportedInput("a place must be a polynomial, not a ratio")
        return pi.num
    coeffs = []
    for c in pi:
        coeffs.append(B.from_int(c) if isinstance(c, int) else c)
    return poly_trim(B, tuple(coeffs))


def _as_place(B: FieldDesc, pi) -> tuple:
    pi = _coerce_poly(B, pi)
    if poly_deg(pi) < 1:
        raise UnsupportedInput("a place must have degree at least 1")
    if not poly_is_monic(pi):
        raise NonMonic("places are monic irreducible polynomials")
    if not _poly_irreducible(B, pi):
        raise UnsupportedInput(
            f"{poly_format(B, pi, 'x')} is reducible; residues live at "
            "irreducible places"
        )
    return pi


def _poly_irreducible(B: FieldDesc, f: tuple) -> bool:
    if isinstance(B, PrimeField):
        return poly_is_irreducible(B, f)
    return _to_sympy(B, f).is_irreducible


def _to_sympy(B: FieldDesc, coeffs: tuple):
    import sympy

    x = sympy.Symbol("x")
    desc = list(reversed(coeffs))
    if isinstance(B, PrimeField):
        return sympy.Poly([int(c) for c in desc], x, modulus=B.p)
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in map(Fraction, desc)],
        x,
        domain="QQ",
    )


def _monic_irreducible_factors(B: FieldDesc, f: tuple) -> list[tuple]:
    """Monic irreducible factors of positive degree (ascending coefficients)."""
    if poly_deg(f) < 1:
        return []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        _, factors = _to_sympy(B, f).factor_list()
    out = []
    for g, _mult in factors:
        if g.degree() < 1:
            continue
        asc = list(reversed(g.all_coeffs()))
        if isinstance(B, PrimeField):
            coeffs = poly_trim(B, tuple(int(c) % B.p for c in asc))
        else:
            coeffs = poly_trim(B, tuple(Fraction(c.p, c.q) for c in asc))
        lc = coeffs[-1]
        if not B.is_zero(B.sub(lc, B.one())):
            inv = B.inv(lc)
            coeffs = tuple(B.mul(inv, c) for c in coeffs)
        out.append(coeffs)
    return out


def residue_places(q: QForm) -> list[tuple]:
    """The monic irreducible polynomials dividing some entry of q — the only
    places where a second residue can be nonzero.  Deterministic order:
    by degree, then by printed form."""
    F = _require_ratfunc(q)
    B = F.base
    seen = {}
    for f in _entry_polys(q):
        for g in _monic_irreducible_factors(B, f):
            seen[g] = True
    return sorted(seen, key=lambda g: (poly_deg(g), poly_format(B, g, F.var)))


def second_residue(q: QForm, pi) -> QForm | None:
    """The residue form of q at the place π: entries with odd π-valuation,
    divided by π and reduced into the residue field F[x]/(π).

    Returns None when no entry has odd valuation (the residue is the zero
    form, trivially hyperbolic).  Residue fields: F itself for linear π; a
    finite extension for deg π ≥ 2 over a prime field; unsupported (number
    fields) for deg π ≥ 2 over the rationals.
    """
    F = _require_ratfunc(q)
    B = F.base
    entries = _entry_polys(q)
    pi = _as_place(B, pi)
    parts = []
    for f in entries:
        quo, rem = poly_divmod(B, f, pi)
        if rem:
            continue  # square-free entries have π-valuation 0 or 1
        parts.append(quo)
    if not parts:
        return None
    if poly_deg(pi) == 1:
        root = B.neg(pi[0])
        return QForm(B, tuple(poly_eval(B, g, root) for g in parts))
    if isinstance(B, PrimeField):
        K = GFExt(B.p, pi)
        return QForm(K, tuple(poly_mod(B, g, pi) for g in parts))
    raise UnsupportedField(
        "residue fields at places of degree >= 2 over the rationals are "
        "number fields, which this engine does not model"
    )


def first_residue(q: QForm) -> QForm | None:
    """The residue form at the infinite place: leading coefficients of the
    even-degree entries (the even-valuation part at the uniformizer 1/x).
    None when every entry has odd degree."""
    F = _require_ratfunc(q)
    B = F.base
    lead = [f[-1] for f in _entry_polys(q) if poly_deg(f) % 2 == 0]
    if not lead:
        return None
    return QForm(B, tuple(lead))


def ratfunc_hyperbolic(q: QForm) -> Decision:
    """Is q hyperbolic over F(x)?

    Exact-sequence criterion: q is hyperbolic exactly when the first residue
    is hyperbolic over F and the second residue at every monic irreducible π
    is hyperbolic over its residue field.  Complete over prime-field bases;
    over the rationals, places of degree ≥ 2 have number-field residues —
    an odd-dimensional residue still refutes, anything else leaves Unknown.
    """
    F = _require_ratfunc(q)
    B = F.base
    qn = normalized(q)
    if qn.dim % 2:
        return no(InvariantObstruction("odd dimension"))
    entries = _entry_polys(qn)
    pairs = []
    fr = first_residue(qn)
    if fr is not None:
        pairs.append(("leading form at 1/x", fr))
    undecidable = []
    for pi in residue_places(qn):
        label = poly_format(B, pi, F.var)
        if poly_deg(pi) >= 2 and isinstance(B, Rationals):
            # The residue field is a number field, outside this engine's
            # reach.  Dimension parity and exact g,−g pairing still decide
            # some cases without number-field arithmetic.
            parts = [
                poly_mod(B, poly_divmod(B, f, pi)[0], pi)
                for f in entries
                if not poly_divmod(B, f, pi)[1]
            ]
            if not parts:
                continue
            if len(parts) % 2:
                return no(
                    InvariantObstruction(
                        f"the second residue at {label} has odd dimension "
                        f"{len(parts)}, and odd-dimensional forms are never "
                        "hyperbolic"
                    )
                )
            counts = Counter(parts)
            if all(
                counts[g] == counts[tuple(B.neg(c) for c in g)] for g in counts
            ):
                continue  # entries pair off as g, −g: visibly hyperbolic
            undecidable.append(label)
            continue
        r = second_residue(qn, pi)
        if r is None:
            continue
        pairs.append((label, r))
    for label, r in pairs:
        if not is_hyperbolic(r):
            return no(ResidueComputation(((label, r),)))
    if undecidable:
        return unknown()
    return yes(ResidueComputation(tuple(pairs)))


# ---------------------------------------------------------------------------
# specialization sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecializationReport:
    """Outcome of randomized specialization testing.

    ``attempted`` vectors were drawn, ``checked`` of them hit p(v) ≠ 0, and
    ``witness`` is a No-decision carrying an :class:`HObstruction` when some
    value failed to be a similarity factor of q (None when all passed)."""

    attempted: int
    checked: int
    witness: Decision | None

    @property
    def ok(self) -> bool:
        return self.witness is None


def check_specialization_necessity(
    p: QForm, q: QForm, trials: int = 50, *, seed: int = 0, height: int = 8
) -> SpecializationReport:
    """Sample values of p at random vectors and test them against G(q).

    If q is hyperbolic over F(p), then every nonzero value of the normalized
    quadric form (scaled to represent 1) is a similarity factor of q over
    every extension — in particular over F itself.  Each failure is a
    certified refutation, packaged for :func:`hyperbolic_over_ff`'s callers.
    """
    F = same_field(p, q)
    if not isinstance(F, (Rationals, PrimeField)):
        raise UnsupportedField(
            "specialization sampling draws vectors over the rationals or a "
            "prime field"
        )
    pn = scale(p, p.entries[0])  # represents p₁² ~ 1
    rng = random.Random(f"{seed}:specialization")
    checked = 0
    for _ in range(trials):
        v = [random_element(F, rng, height) for _ in range(pn.dim)]
        val = evaluate(pn, v)
        if F.is_zero(val):
            continue
        checked += 1
        if not in_G(val, q):
            return SpecializationReport(trials, checked, no(HObstruction(F.square_class(val))))
    return SpecializationReport(trials, checked, None)
