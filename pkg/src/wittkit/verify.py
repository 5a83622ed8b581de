"""Seeded property suites that machine-check the theorems behind the engine.

Each suite draws a deterministic corpus of random instances from a
:class:`GenConfig`, runs a theorem-shaped assertion on every instance, and
returns a :class:`SuiteReport` whose ``violations`` list is empty exactly
when the suite passes.  Three design rules hold throughout:

* **Oracle independence.**  Every suite checks the engine against at least
  one computation that does not share its code path: exhaustive enumeration
  and representation counts over prime fields, height-bounded integer
  search over the rationals, truncated-series search over Laurent fields,
  coordinate arithmetic in quadratic extensions, closed invariant criteria
  (discriminants), or symbolic substitution (see :mod:`wittkit.oracles`).
* **Certificate replay.**  Whenever a decider returns a certificate, the
  suite reconstructs the claimed object and re-checks it through public
  deciders rather than trusting the verdict.
* **Determinism.**  Instance ``i`` of suite ``s`` under seed ``k`` uses
  ``random.Random(f"{k}:{s}:{i}")``, so identical ``(suite, GenConfig)``
  pairs produce identical reports (wall-clock time excluded).

Undecidable sub-questions (Unknown verdicts, values with no computable
square class) count as skips, never as passes; a suite whose skip rate
exceeds 90% raises :class:`~wittkit.errors.VacuousSuite` instead of
reporting success.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Callable

from . import oracles
from .errors import (
    UnknownSuite,
    UnsupportedField,
    UnsupportedInput,
    VacuousSuite,
)
from .fields import (
    QQ,
    FieldDesc,
    LaurentExt,
    PrimeField,
    QuadExt,
    Rationals,
    squarefree_part,
)
from .forms import (
    QForm,
    discriminant,
    evaluate,
    format_form,
    hyperbolic_form,
    orth_sum,
    scale,
    tensor,
)
from .funcfield import (
    check_specialization_necessity,
    hyperbolic_over_ff,
    witt_index_over_quad_ext,
)
from .localglobal import (
    in_G,
    in_H,
    is_hyperbolic,
    is_isometric,
    is_isotropic,
    is_subform,
    sample_D,
    sample_H,
    witt_complement,
    witt_decompose,
    witt_index,
)
from .pfister import PfisterSpec, divide_by_pfister, in_In, pf, similar_to_pfister

__all__ = [
    "GenConfig",
    "Violation",
    "SuiteReport",
    "run_suite",
    "suite_catalogue",
    "SUITE_IDS",
    "DEFAULT_SUITES",
]


# --------------------------------------------------------------------------
# configuration and reports
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GenConfig:
    """Knobs for a suite's random corpus.

    ``field`` of None selects the suite's natural field.  ``height`` bounds
    the integers from which rational entries are drawn (square-free parts
    of integers in [-height, height]); prime-field entries are uniform
    nonzero residues.  The same ``(suite, GenConfig)`` always reproduces
    the same corpus and the same report.
    """

    field: FieldDesc | None = None
    dim_min: int = 1
    dim_max: int = 4
    height: int = 30
    samples: int = 100
    seed: int = 0


@dataclass(frozen=True)
class Violation:
    """One failed instance, with everything needed to reproduce it."""

    instance: int
    seed: str
    message: str
    data: tuple[tuple[str, str], ...] = ()

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "seed": self.seed,
            "message": self.message,
            "data": {k: v for k, v in self.data},
        }


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of one suite run; ``passed`` iff no violations.

    ``elapsed`` is wall-clock seconds and is excluded from both equality
    comparison and the JSON encoding so that identical configurations
    yield identical (and byte-stable) reports.
    """

    suite: str
    seed: int
    instances: int
    skipped: int
    violations: tuple[Violation, ...]
    elapsed: float = dataclass_field(compare=False, default=0.0)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "instances": self.instances,
            "skipped": self.skipped,
            "violations": [v.to_json() for v in self.violations],
        }

    def summary(self) -> str:
        state = "pass" if self.passed else f"FAIL ({len(self.violations)} violations)"
        return (
            f"suite {self.suite}: {state}, {self.instances} instances, "
            f"{self.skipped} skipped, {self.elapsed:.2f}s"
        )


class _Check:
    """Per-instance violation collector handed to suite bodies."""

    def __init__(self):
        self.problems: list[tuple[str, dict[str, str]]] = []
        self.skipped = False

    def fail(self, message: str, **data: str):
        self.problems.append((message, data))

    def ensure(self, condition: bool, message: str, **data: str):
        if not condition:
            self.fail(message, **data)

    def skip(self):
        self.skipped = True


@dataclass(frozen=True)
class _Suite:
    ident: str
    summary: str
    run: Callable[[GenConfig, FieldDesc, random.Random, _Check], None]
    natural_field: Callable[[], FieldDesc]
    allowed: tuple[type, ...]
    optional: bool = False


def run_suite(suite: str, cfg: GenConfig | None = None) -> SuiteReport:
    """Run one suite and return its report.

    Raises :class:`UnknownSuite` for an unrecognised id,
    :class:`UnsupportedField` when ``cfg.field`` is outside the suite's
    range, and :class:`VacuousSuite` when more than 90% of instances had
    to be skipped.
    """
    if suite not in _SUITES:
        raise UnknownSuite(
            f"no suite named {suite!r}; known suites: {', '.join(_SUITES)}"
        )
    spec = _SUITES[suite]
    cfg = cfg or GenConfig()
    F = cfg.field if cfg.field is not None else spec.natural_field()
    if not isinstance(F, spec.allowed):
        names = ", ".join(t.__name__ for t in spec.allowed)
        raise UnsupportedField(
            f"suite {suite} runs over {names} fields, not {F.spec_string()}"
        )
    start = time.perf_counter()
    violations: list[Violation] = []
    skipped = 0
    for i in range(cfg.samples):
        seed_str = f"{cfg.seed}:{suite}:{i}"
        rng = random.Random(seed_str)
        chk = _Check()
        try:
            spec.run(cfg, F, rng, chk)
        except (UnsupportedField, UnsupportedInput):
            chk.skip()
        if chk.problems:
            for message, data in chk.problems:
                violations.append(
                    Violation(
                        instance=i,
                        seed=seed_str,
                        message=message,
                        data=tuple(sorted(data.items())),
                    )
                )
        elif chk.skipped:
            skipped += 1
    elapsed = time.perf_counter() - start
    if cfg.samples and skipped / cfg.samples > 0.9:
        raise VacuousSuite(
            f"suite {suite} skipped {skipped} of {cfg.samples} instances; "
            "the configuration exercises nothing"
        )
    return SuiteReport(
        suite=suite,
        seed=cfg.seed,
        instances=cfg.samples,
        skipped=skipped,
        violations=tuple(violations),
        elapsed=elapsed,
    )


def suite_catalogue() -> tuple[tuple[str, str, bool], ...]:
    """(id, one-line summary, optional) for every registered suite."""
    return tuple((s.ident, s.summary, s.optional) for s in _SUITES.values())


# --------------------------------------------------------------------------
# random generation helpers
# --------------------------------------------------------------------------


def _entry(F: FieldDesc, rng: random.Random, height: int):
    """A nonzero, square-free-normalised random entry."""
    if isinstance(F, Rationals):
        n = 0
        while n == 0:
            n = rng.randint(-height, height)
        return Fraction(squarefree_part(n))
    if isinstance(F, PrimeField):
        return rng.randrange(1, F.p)
    raise UnsupportedField(f"no entry sampler for {F.spec_string()}")


def _form(F: FieldDesc, rng: random.Random, dim_min: int, dim_max: int, height: int) -> QForm:
    dim = rng.randint(dim_min, dim_max)
    return QForm(F, tuple(_entry(F, rng, height) for _ in range(dim)))


def _square_unit(F: FieldDesc, rng: random.Random):
    """A random nonzero square, for disguising diagonals."""
    if isinstance(F, PrimeField):
        t = rng.randrange(1, F.p)
    else:
        t = rng.choice([1, 1, 2, 3])
    return F.mul(F.from_int(t), F.from_int(t))


def _nonsquare(rng: random.Random, height: int) -> Fraction:
    """A square-free rational that is not a square (i.e. != 1)."""
    while True:
        n = rng.randint(-height, height)
        if n == 0:
            continue
        s = squarefree_part(n)
        if s != 1:
            return Fraction(s)


def _aniso_pfister(rng: random.Random, n: int, height: int) -> PfisterSpec:
    """A random anisotropic n-fold Pfister form over Q (entry slots are
    square-free; falls back to totally positive slots, whose form is
    definite and hence anisotropic)."""
    for _ in range(12):
        slots = tuple(Fraction(squarefree_part(rng.choice(
            [x for x in range(-height, height + 1) if x]
        ))) for _ in range(n))
        spec = pf(QQ, *slots)
        if not is_isotropic(spec.expand()):
            return spec
    slots = tuple(Fraction(squarefree_part(rng.randint(1, height))) for _ in range(n))
    return pf(QQ, *slots)


def _decision_seed(cfg: GenConfig, rng: random.Random) -> int:
    return cfg.seed * 1_000_003 + rng.randrange(2**20)


def _rebuild(F: FieldDesc, dec) -> QForm:
    """anisotropic_part + index hyperbolic planes, as one form."""
    parts = []
    if dec.anisotropic_part is not None:
        parts.append(dec.anisotropic_part)
    if dec.index > 0:
        parts.append(hyperbolic_form(F, dec.index))
    out = parts[0]
    for extra in parts[1:]:
        out = orth_sum(out, extra)
    return out


def _fmt(q: QForm) -> str:
    return format_form(q)


# --------------------------------------------------------------------------
# suite: springer — Witt-index additivity over Laurent series fields
# --------------------------------------------------------------------------


def _springer(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """i(p0 perp x*q0) = i(p0) + i(q0) over F((x)) for unit-lifted p0, q0.

    The combined form is disguised before testing: entries are multiplied
    by random even powers of x and by squares of units such as (1+x)^2,
    and the diagonal is shuffled, so the decider cannot simply read the
    construction back.  The decomposition is replayed as an isometry, and
    an exact truncated-series search independently hunts for zeros.
    """
    L = LaurentExt(F, "x")
    base_one = F.one()
    unit_sq = L.make(0, (base_one, F.from_int(2), base_one))  # (1+x)^2
    dmax = min(cfg.dim_max, 4)
    p0 = _form(F, rng, 1, dmax, cfg.height)
    q0 = _form(F, rng, 1, dmax, cfg.height)
    lifted = []
    for base_form, parity in ((p0, 0), (q0, 1)):
        for e in base_form.entries:
            elt = L.monomial(e, parity)
            if rng.random() < 0.3:
                elt = L.mul(elt, unit_sq)
            if rng.random() < 0.3:
                elt = L.mul(elt, L.monomial(base_one, 2))
            lifted.append(elt)
    rng.shuffle(lifted)
    combined = QForm(L, tuple(lifted))
    expected = witt_index(p0) + witt_index(q0)
    got = witt_index(combined)
    chk.ensure(
        got == expected,
        "Witt index over the Laurent field is not the sum of the residue indices",
        p0=_fmt(p0),
        q0=_fmt(q0),
        combined=_fmt(combined),
        expected=str(expected),
        got=str(got),
    )
    dec = witt_decompose(combined)
    chk.ensure(
        dec.index == got,
        "witt_decompose and witt_index disagree",
        combined=_fmt(combined),
    )
    chk.ensure(
        is_isometric(combined, _rebuild(L, dec)),
        "decomposition replay failed: anisotropic part + planes is not isometric to the form",
        combined=_fmt(combined),
        rebuilt=_fmt(_rebuild(L, dec)),
    )
    witness = oracles.laurent_isotropy_witness(combined, rng=rng, trials=150)
    if witness is not None and got == 0:
        chk.fail(
            "series search found an exact zero of a form judged anisotropic",
            combined=_fmt(combined),
            witness=", ".join(L.format(w) for w in witness),
        )


# --------------------------------------------------------------------------
# suite: local-global — isotropy/index/isometry/subform vs enumeration
# --------------------------------------------------------------------------


def _local_global(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """Deciders against ground truth: exhaustive enumeration and
    representation counts over prime fields (two-sided); height-bounded
    integer search over the rationals (one-sided, and two-sided in
    dimension 2 where the search reduces to an exact square test)."""
    if isinstance(F, PrimeField):
        q = _form(F, rng, max(cfg.dim_min, 1), min(cfg.dim_max, 6), cfg.height)
        witness = oracles.fp_isotropy_witness(q)
        chk.ensure(
            (witness is not None) == is_isotropic(q),
            "isotropy decider disagrees with exhaustive enumeration",
            q=_fmt(q),
            witness=str(witness),
        )
        chk.ensure(
            oracles.fp_witt_index(q) == witt_index(q),
            "Witt index disagrees with plane-splitting enumeration",
            q=_fmt(q),
            oracle=str(oracles.fp_witt_index(q)),
            engine=str(witt_index(q)),
        )
        dec = witt_decompose(q)
        rebuilt = _rebuild(F, dec)
        chk.ensure(
            oracles.fp_isometric(q, rebuilt) and is_isometric(q, rebuilt),
            "decomposition replay failed under representation counts",
            q=_fmt(q),
            rebuilt=_fmt(rebuilt),
        )
        r = _form(F, rng, q.dim, q.dim, cfg.height)
        chk.ensure(
            is_isometric(q, r) == oracles.fp_isometric(q, r),
            "isometry decider disagrees with representation counts",
            q=_fmt(q),
            r=_fmt(r),
        )
        sub = _form(F, rng, 1, q.dim, cfg.height)
        chk.ensure(
            is_subform(sub, q) == oracles.fp_subform(sub, q),
            "subform decider disagrees with the counting oracle",
            sub=_fmt(sub),
            q=_fmt(q),
        )
    else:
        q = _form(F, rng, max(cfg.dim_min, 1), min(cfg.dim_max, 5), cfg.height)
        decided = is_isotropic(q)
        witness = oracles.rational_isotropy_witness(q, height=200, budget=3000)
        if witness is not None:
            chk.ensure(
                decided,
                "integer search found an exact zero of a form judged anisotropic",
                q=_fmt(q),
                witness=str(tuple(str(w) for w in witness)),
            )
        if q.dim == 2:
            chk.ensure(
                (witness is not None) == decided,
                "binary isotropy disagrees with the exact square test",
                q=_fmt(q),
            )
        dec = witt_decompose(q)
        rebuilt = _rebuild(F, dec)
        chk.ensure(
            is_isometric(q, rebuilt),
            "decomposition replay failed",
            q=_fmt(q),
            rebuilt=_fmt(rebuilt),
        )


# --------------------------------------------------------------------------
# suite: quad-ext — function fields of conics via quadratic extensions
# --------------------------------------------------------------------------


def _quad_ext(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """Binary p: hyperbolicity over F(p) must match divisibility by the
    norm form <1,-a>, and isotropy over Q(sqrt a) must match a bounded
    coordinate search with exact square tests."""
    a = _nonsquare(rng, cfg.height)
    norm_form = QForm(QQ, (Fraction(1), -a))
    c = _entry(QQ, rng, cfg.height)
    p = scale(norm_form, c)

    # constructed-divisible: q = <1,-a> (x) r must come back Yes
    r = _form(QQ, rng, 1, min(cfg.dim_max, 3), cfg.height)
    q = tensor(norm_form, r)
    d = hyperbolic_over_ff(q, p, seed=_decision_seed(cfg, rng))
    chk.ensure(
        d.is_yes,
        "a norm-form multiple was not recognised as hyperbolic over the conic",
        q=_fmt(q),
        p=_fmt(p),
        verdict=d.verdict,
    )
    if d.is_yes and d.kind == "QuadExtDivisibility":
        cert = d.certificate
        planes = (q.dim - 2 * cert.quotient.dim) // 2
        rebuilt = tensor(QForm(QQ, (Fraction(1), -QQ.square_class(cert.a))), cert.quotient)
        if planes > 0:
            rebuilt = orth_sum(rebuilt, hyperbolic_form(QQ, planes))
        chk.ensure(
            is_isometric(q, rebuilt),
            "divisibility certificate does not reproduce the form",
            q=_fmt(q),
            rebuilt=_fmt(rebuilt),
        )
    # the Witt index over Q(sqrt a) must see the full split
    chk.ensure(
        witt_index_over_quad_ext(q, a) == q.dim // 2,
        "norm-form multiple is not hyperbolic over the quadratic extension",
        q=_fmt(q),
        a=str(a),
    )

    # random even-dimensional q: verdict must match the extension index
    q2 = _form(QQ, rng, 1, max(1, min(cfg.dim_max, 3)), cfg.height)
    q2 = orth_sum(q2, q2) if q2.dim % 2 else q2
    if q2.dim % 2 == 0:
        d2 = hyperbolic_over_ff(q2, p, seed=_decision_seed(cfg, rng))
        truth = witt_index_over_quad_ext(q2, a) == q2.dim // 2
        if d2.is_unknown:
            chk.skip()
        else:
            chk.ensure(
                d2.is_yes == truth,
                "hyperbolicity over the conic disagrees with the extension index",
                q=_fmt(q2),
                p=_fmt(p),
                verdict=d2.verdict,
                extension_hyperbolic=str(truth),
            )

    # isotropy over Q(sqrt a) against the bounded coordinate search
    f = _form(QQ, rng, 2, min(cfg.dim_max, 4), cfg.height)
    K = QuadExt(QQ, a)
    fK = QForm(K, tuple(K.embed(e) for e in f.entries))
    decided = is_isotropic(fK)
    witness = oracles.quadext_isotropy_witness(
        [Fraction(e) for e in f.entries], a, height=2, budget=6000
    )
    if witness is not None:
        chk.ensure(
            decided,
            "coordinate search found an exact zero over Q(sqrt a) but the decider says anisotropic",
            form=_fmt(f),
            a=str(a),
        )
    if f.dim == 2:
        chk.ensure(
            (witness is not None) == decided,
            "binary isotropy over Q(sqrt a) disagrees with the exact square test",
            form=_fmt(f),
            a=str(a),
        )


# --------------------------------------------------------------------------
# suite: hyp-multiples — Pfister multiples are hyperbolic over the quadric
# --------------------------------------------------------------------------


def _hyp_multiples(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """q = pi (x) r is always hyperbolic over the function field of pi, and
    odd-dimensional forms never are (their class survives every field
    extension that keeps them odd-dimensional)."""
    n = rng.randint(1, 3) if isinstance(F, Rationals) else 1
    if isinstance(F, Rationals):
        spec = pf(QQ, *(Fraction(squarefree_part(x)) for x in (
            rng.choice([v for v in range(-cfg.height, cfg.height + 1) if v])
            for _ in range(n)
        )))
    else:
        spec = pf(F, *(rng.randrange(1, F.p) for _ in range(n)))
    r = _form(F, rng, 1, 2, cfg.height)
    q = tensor(spec.expand(), r)
    p = spec.expand()
    d = hyperbolic_over_ff(q, p, seed=_decision_seed(cfg, rng))
    chk.ensure(
        d.is_yes,
        "a Pfister multiple was not recognised as hyperbolic over its quadric",
        q=_fmt(q),
        p=_fmt(p),
        verdict=d.verdict,
    )
    if d.is_yes and d.kind == "PfisterFactor":
        cert = d.certificate
        rebuilt = tensor(cert.spec.expand(), cert.quotient)
        planes = (q.dim - rebuilt.dim) // 2
        if planes > 0:
            rebuilt = orth_sum(rebuilt, hyperbolic_form(F, planes))
        chk.ensure(
            is_isometric(q, rebuilt),
            "Pfister-factor certificate does not reproduce the form",
            q=_fmt(q),
            rebuilt=_fmt(rebuilt),
        )

    # refutation: odd-dimensional forms are never hyperbolic over F(p)
    if isinstance(F, Rationals):
        aniso = _aniso_pfister(rng, rng.randint(1, 2), cfg.height)
        odd = _form(F, rng, 1, 3, cfg.height)
        if odd.dim % 2 == 0:
            odd = orth_sum(odd, QForm(F, (_entry(F, rng, cfg.height),)))
        d2 = hyperbolic_over_ff(odd, aniso.expand(), seed=_decision_seed(cfg, rng))
        chk.ensure(
            d2.is_no,
            "an odd-dimensional form was not refuted",
            q=_fmt(odd),
            p=_fmt(aniso.expand()),
            verdict=d2.verdict,
        )


# --------------------------------------------------------------------------
# suites: product-isotropy and binary-product-hyp (finite-field existence)
# --------------------------------------------------------------------------


def _product_isotropy(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """For p anisotropic (or, with arbitrary p, for dim q >= 2): if
    p (x) q is isotropic over a finite field, some subform r of p with
    dim r <= dim q already has r (x) q isotropic.  Existence is checked
    over the complete classification (two isometry classes per dimension),
    with the subform and isotropy answers cross-checked against the
    counting and enumeration oracles on every candidate."""
    dmax = max(2, min(cfg.dim_max, 4))
    if rng.random() < 0.5:
        # anisotropic p, q of any dimension (a one-dimensional q needs an
        # isotropic product, which over a finite field forces dim q >= 3)
        pdim = rng.randint(1, 2)
        p = _form(F, rng, pdim, pdim, cfg.height)
        for _ in range(8):
            if not is_isotropic(p):
                break
            p = _form(F, rng, pdim, pdim, cfg.height)
        if is_isotropic(p):
            chk.skip()
            return
        q = _form(F, rng, 3 if pdim == 1 else 2, max(3, dmax), cfg.height)
    else:
        # arbitrary p, q of dimension at least two
        p = _form(F, rng, 1, dmax, cfg.height)
        q = _form(F, rng, 2, dmax, cfg.height)
    if not is_isotropic(tensor(p, q)):
        chk.skip()
        return
    found = False
    for d in range(1, min(p.dim, q.dim) + 1):
        for r in oracles.fp_class_forms(F, d):
            engine_sub = is_subform(r, p)
            chk.ensure(
                engine_sub == oracles.fp_subform(r, p),
                "subform decider disagrees with the counting oracle",
                r=_fmt(r),
                p=_fmt(p),
            )
            rq = tensor(r, q)
            engine_iso = is_isotropic(rq)
            chk.ensure(
                engine_iso == (oracles.fp_isotropy_witness(rq) is not None),
                "isotropy decider disagrees with exhaustive enumeration",
                form=_fmt(rq),
            )
            if engine_sub and engine_iso:
                found = True
    chk.ensure(
        found,
        "no subform of p of dimension <= dim q makes the product isotropic",
        p=_fmt(p),
        q=_fmt(q),
    )


def _binary_product_hyp(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """For binary q and p of dimension at least two over a finite field
    with p (x) q isotropic, some subform r of p with dim r <= 2 has
    r (x) q hyperbolic; hyperbolicity is cross-checked by plane-splitting
    enumeration."""
    p = _form(F, rng, 2, max(2, min(cfg.dim_max, 4)), cfg.height)
    q = _form(F, rng, 2, 2, cfg.height)
    if not is_isotropic(tensor(p, q)):
        chk.skip()
        return
    found = False
    for d in range(1, min(p.dim, 2) + 1):
        for r in oracles.fp_class_forms(F, d):
            if not is_subform(r, p):
                continue
            rq = tensor(r, q)
            engine_hyp = is_hyperbolic(rq)
            oracle_hyp = oracles.fp_witt_index(rq) * 2 == rq.dim
            chk.ensure(
                engine_hyp == oracle_hyp,
                "hyperbolicity disagrees with plane-splitting enumeration",
                form=_fmt(rq),
            )
            if engine_hyp:
                found = True
    chk.ensure(
        found,
        "no subform of p of dimension <= 2 makes the product with binary q hyperbolic",
        p=_fmt(p),
        q=_fmt(q),
    )


# --------------------------------------------------------------------------
# shared generator for decidable Yes-instances of hyperbolic_over_ff
# --------------------------------------------------------------------------


def _yes_instance(
    cfg: GenConfig, rng: random.Random
) -> tuple[QForm, QForm] | None:
    """A random (q, p) over Q for which hyperbolic_over_ff(q, p) is a
    decidable Yes: norm-form multiples over a conic, scaled Pfister forms
    over their own quadric, or Pfister multiples over a neighbor."""
    mode = rng.randrange(3)
    if mode == 0:
        a = _nonsquare(rng, cfg.height)
        norm_form = QForm(QQ, (Fraction(1), -a))
        r = _form(QQ, rng, 1, 2, cfg.height)
        q = tensor(norm_form, r)
        p = scale(norm_form, _entry(QQ, rng, cfg.height))
    elif mode == 1:
        spec = _aniso_pfister(rng, rng.randint(1, 2), cfg.height)
        q = scale(spec.expand(), _entry(QQ, rng, cfg.height))
        p = q
    else:
        spec = _aniso_pfister(rng, 2, cfg.height)
        r = _form(QQ, rng, 1, 2, cfg.height)
        q = tensor(spec.expand(), r)
        expanded = spec.expand()
        if rng.random() < 0.5:
            p = scale(expanded, _entry(QQ, rng, cfg.height))
        else:
            p = QForm(QQ, expanded.entries[:-1])  # a codimension-1 neighbor
    d = hyperbolic_over_ff(q, p, seed=_decision_seed(cfg, rng))
    if not d.is_yes:
        return None
    return q, p


def _quadext_H_classes(
    K: QuadExt, pK: QForm, rng: random.Random, budget: int
) -> list[Fraction]:
    """Sampled H-values of pK (products of two represented values) whose
    square class meets Q, as square-free rationals.  Values with no
    rational class representative are dropped: membership for them is not
    decidable by the closed criteria, so they count as unchecked samples
    rather than passes."""
    d_classes: list[Fraction] = []
    for _ in range(budget):
        vec = []
        for _ in range(pK.dim):
            u = Fraction(rng.randint(-3, 3))
            v = Fraction(rng.randint(-1, 1)) if rng.random() < 0.5 else Fraction(0)
            vec.append((u, v))
        value = evaluate(pK, tuple(vec))
        if K.is_zero(value):
            continue
        cls = K.rational_class(value)
        if cls is not None:
            d_classes.append(cls)
    out: list[Fraction] = []
    seen = set()
    for i in range(len(d_classes)):
        for j in range(i, len(d_classes)):
            h = Fraction(QQ.square_class(d_classes[i] * d_classes[j]))
            if h not in seen:
                seen.add(h)
                out.append(h)
            if len(out) >= budget:
                return out
    return out


def _lift_laurent(L: LaurentExt, q: QForm) -> QForm:
    return QForm(L, tuple(L.monomial(e, 0) for e in q.entries))


def _lift_quadext(K: QuadExt, q: QForm) -> QForm:
    return QForm(K, tuple(K.embed(Fraction(e)) for e in q.entries))


# --------------------------------------------------------------------------
# suite: h-in-g — sampled H-values land in the similarity group
# --------------------------------------------------------------------------


def _h_in_g(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """When q is hyperbolic over F(p), every value of H(p) = D(p)D(p) is a
    similarity factor of q, over the base field and over each extension:
    quadratic extensions Q(sqrt d) and the Laurent field Q((x)).  H-values
    are produced by direct vector evaluation, independent of any decider;
    membership is decided through in_G (norm-form-multiple hyperbolicity).
    """
    inst = _yes_instance(cfg, rng)
    if inst is None:
        chk.skip()
        return
    q, p = inst
    budget = 20

    for h in sample_H(p, budget=budget, rng=rng, height=6):
        chk.ensure(
            in_G(h, q),
            "an H-value over the base field is not a similarity factor",
            h=QQ.format(h),
            p=_fmt(p),
            q=_fmt(q),
        )

    used: set[Fraction] = set()
    for _ in range(5):
        d = _nonsquare(rng, cfg.height)
        while d in used:
            d = _nonsquare(rng, cfg.height)
        used.add(d)
        K = QuadExt(QQ, d)
        pK = _lift_quadext(K, p)
        qK = _lift_quadext(K, q)
        for h in _quadext_H_classes(K, pK, rng, budget):
            chk.ensure(
                in_G(K.embed(h), qK),
                "an H-value over Q(sqrt d) is not a similarity factor",
                h=str(h),
                d=str(d),
                p=_fmt(p),
                q=_fmt(q),
            )

    L = LaurentExt(QQ, "x")
    pL = _lift_laurent(L, p)
    qL = _lift_laurent(L, q)
    for h in sample_H(pL, budget=budget, rng=rng, height=6):
        chk.ensure(
            in_G(h, qL),
            "an H-value over the Laurent field is not a similarity factor",
            h=L.format(h),
            p=_fmt(p),
            q=_fmt(q),
        )


# --------------------------------------------------------------------------
# suite: h-in-h (optional) — sampled H(p) lies in H(q)
# --------------------------------------------------------------------------


def _h_in_h(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """For instances with q hyperbolic over F(p), sampled values of H(p)
    must lie in H(q), over the base field, one quadratic extension, and
    the Laurent field.  Slower and partly redundant with h-in-g, so it is
    excluded from the default run."""
    inst = _yes_instance(cfg, rng)
    if inst is None:
        chk.skip()
        return
    q, p = inst
    for h in sample_H(p, budget=12, rng=rng, height=6):
        chk.ensure(
            in_H(h, q),
            "an H-value of p over the base field is outside H(q)",
            h=QQ.format(h),
            p=_fmt(p),
            q=_fmt(q),
        )
    d = _nonsquare(rng, cfg.height)
    K = QuadExt(QQ, d)
    pK = _lift_quadext(K, p)
    qK = _lift_quadext(K, q)
    for h in _quadext_H_classes(K, pK, rng, 12):
        chk.ensure(
            in_H(K.embed(h), qK),
            "an H-value of p over Q(sqrt d) is outside H(q)",
            h=str(h),
            d=str(d),
        )
    L = LaurentExt(QQ, "x")
    for h in sample_H(_lift_laurent(L, p), budget=12, rng=rng, height=6):
        chk.ensure(
            in_H(h, _lift_laurent(L, q)),
            "an H-value of p over the Laurent field is outside H(q)",
            h=L.format(h),
        )


# --------------------------------------------------------------------------
# suite: d-in-g — represented values are similarity factors (sampled)
# --------------------------------------------------------------------------


def _d_in_g(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """On decidable Yes-instances, sampled represented values of a scaled
    p must be similarity factors of q; the sampler is the independent
    specialization check, and any witness it produces is replayed through
    in_G before being reported."""
    inst = _yes_instance(cfg, rng)
    if inst is None:
        chk.skip()
        return
    q, p = inst
    report = check_specialization_necessity(
        p, q, trials=20, seed=_decision_seed(cfg, rng)
    )
    if not report.ok:
        witness = report.witness
        a = witness.certificate.a
        chk.ensure(
            not in_G(a, q),
            "specialization check reported a witness that in_G accepts",
            a=QQ.format(a),
        )
        chk.fail(
            "a represented value of the scaled p is not a similarity factor of q",
            a=QQ.format(a),
            p=_fmt(p),
            q=_fmt(q),
            attempted=str(report.attempted),
            checked=str(report.checked),
        )


# --------------------------------------------------------------------------
# suite: tensor-transfer — Yes-instances survive tensoring by Pfister forms
# --------------------------------------------------------------------------


def _tensor_transfer(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """If q is hyperbolic over F(p), then pi (x) q is hyperbolic over the
    function field of pi (x) p for any Pfister form pi.  The decider must
    never answer No on such a pair, and must answer Yes when dim p = 2
    (the tensored p is then similar to a Pfister form, which the neighbor
    branch decides)."""
    inst = _yes_instance(cfg, rng)
    if inst is None:
        chk.skip()
        return
    q, p = inst
    n = rng.randint(1, 2)
    slots = tuple(
        Fraction(squarefree_part(rng.choice([v for v in range(-8, 9) if v])))
        for _ in range(n)
    )
    spec = pf(QQ, *slots)
    ex = spec.expand()
    d = hyperbolic_over_ff(
        tensor(ex, q), tensor(ex, p), seed=_decision_seed(cfg, rng)
    )
    chk.ensure(
        not d.is_no,
        "tensoring a Yes-instance by a Pfister form produced a refutation",
        q=_fmt(q),
        p=_fmt(p),
        pi=str(spec),
        verdict=d.verdict,
    )
    if p.dim == 2:
        chk.ensure(
            d.is_yes,
            "tensored instance with binary p must be decidable Yes",
            q=_fmt(q),
            p=_fmt(p),
            pi=str(spec),
            verdict=d.verdict,
        )
    elif d.is_unknown:
        chk.skip()


# --------------------------------------------------------------------------
# suite: index-lower-bound — extension index of a Pfister multiple
# --------------------------------------------------------------------------


def _index_lower_bound(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """Over any extension K with pi (x) p isotropic, the Witt index of
    pi (x) q is at least 2^n times the index of q over F(p).  With binary
    p = c<1,-a>, the field F(p) is Q(sqrt a) up to Witt equivalence, and
    K = Q(sqrt a) itself makes pi (x) p isotropic, so both sides are
    computed exactly through the quadratic-extension decomposition."""
    a = _nonsquare(rng, cfg.height)
    n = rng.randint(1, 2)
    spec = _aniso_pfister(rng, n, min(cfg.height, 10))
    norm_form = QForm(QQ, (Fraction(1), -a))
    if rng.random() < 0.5:
        q = _form(QQ, rng, 1, 3, cfg.height)
    else:
        r = _form(QQ, rng, 1, 2, cfg.height)
        q = tensor(norm_form, r)
        if rng.random() < 0.5:
            q = orth_sum(q, _form(QQ, rng, 1, 2, cfg.height))
    rhs = (2**n) * witt_index_over_quad_ext(q, a)
    ex = spec.expand()
    lhs = witt_index_over_quad_ext(tensor(ex, q), a)
    chk.ensure(
        lhs >= rhs,
        "the index of the Pfister multiple fell below 2^n times the base index",
        q=_fmt(q),
        pi=str(spec),
        a=str(a),
        lhs=str(lhs),
        rhs=str(rhs),
    )
    # K = F itself is also an admissible extension whenever pi (x) p is
    # already isotropic over the base field.
    if is_isotropic(tensor(ex, norm_form)):
        lhs_base = witt_index(tensor(ex, q))
        chk.ensure(
            lhs_base >= rhs,
            "the base-field index of the Pfister multiple fell below the bound",
            q=_fmt(q),
            pi=str(spec),
            a=str(a),
            lhs=str(lhs_base),
            rhs=str(rhs),
        )


# --------------------------------------------------------------------------
# suite: index-transfer — exact index over the function field, binary p
# --------------------------------------------------------------------------


def _max_pfister_peel(q: QForm, rho: QForm) -> int:
    """Number of scaled copies of the Pfister form rho that can be peeled
    off q, trying every entry square class of q as the scalar at each
    step.  Every successful peel is an engine-verified embedding, so the
    result is a certified lower bound; it is exact when the construction
    of q guarantees the divisible part is visible on the diagonal, and it
    serves as an absence check when the expected count is zero."""
    if q.dim < rho.dim:
        return 0
    classes = []
    seen = set()
    for e in q.entries:
        c = q.field.square_class(e)
        if c not in seen:
            seen.add(c)
            classes.append(c)
    best = 0
    for c in classes:
        piece = scale(rho, c)
        if is_subform(piece, q):
            rest = witt_complement(q, piece)
            if rest is None:
                best = max(best, 1)
            else:
                best = max(best, 1 + _max_pfister_peel(rest, rho))
    return best


def _const_in(K: FieldDesc, c) -> object:
    """Lift a rational constant into a (possibly nested) Laurent tower."""
    if isinstance(K, LaurentExt):
        return K.monomial(_const_in(K.base, c), 0)
    return c


def _lift_tower(K: FieldDesc, q: QForm) -> QForm:
    """Lift a rational form into a (possibly nested) Laurent tower."""
    return QForm(K, tuple(_const_in(K, e) for e in q.entries))


def _index_transfer(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """Over the Laurent tower K = Q((x))((y))... carrying the tower
    Pfister form pi = <1,-x> (x) <1,-y> (x) ..., and binary p = <1,-a>
    over Q, the Witt index of pi (x) q over K(pi (x) p) equals
    2^n i(q over Q(p)).  Instances are q = <1,-a> (x) sigma _|_ tau with
    q anisotropic and tau anisotropic over Q(sqrt a) by construction, so
    both sides are forced to equal 2^n dim sigma in advance.  The right
    side is recomputed through the quadratic-extension decomposition.
    For the left side, pi (x) p is similar to the (n+1)-fold Pfister form
    rho = pi (x) <1,-a>, whose function field splits exactly the
    rho-divisible part: the constructed rho-multiples are peeled one at a
    time over the tower (each embedding and complement engine-checked),
    the remainder must admit no further scaled copy of rho and must come
    back isometric to pi (x) tau.  The two sides share no code path, and
    a defect in either breaks the asserted equality."""
    n = rng.randint(1, 2)
    s = rng.randint(0, 2)
    flavor = rng.randrange(3)
    if flavor == 0:
        # positive-definite tau, positive a
        a = abs(_nonsquare(rng, cfg.height))
        while a == 1:
            a = abs(_nonsquare(rng, cfg.height))
        tau_entries = tuple(
            abs(_entry(QQ, rng, cfg.height)) for _ in range(rng.randint(1, 2))
        )
    elif flavor == 1:
        # one-dimensional tau, any sign of a
        a = _nonsquare(rng, cfg.height)
        tau_entries = (_entry(QQ, rng, cfg.height),)
    else:
        # no tau at all: q is exactly <1,-a> (x) sigma
        a = _nonsquare(rng, cfg.height)
        tau_entries = ()
        s = max(1, s)
    if n == 2:
        s = min(s, 2)
        tau_entries = tau_entries[:1] if s == 2 else tau_entries
    q = None
    sigma: tuple = ()
    for _ in range(12):
        sigma = tuple(_entry(QQ, rng, cfg.height) for _ in range(s))
        entries = []
        for c in sigma:
            entries.extend((c, -a * c))
        entries.extend(tau_entries)
        disguised = [e * Fraction(rng.choice([1, 1, 2, 3])) ** 2 for e in entries]
        rng.shuffle(disguised)
        cand = QForm(QQ, tuple(disguised))
        if not is_isotropic(cand):
            q = cand
            break
    if q is None:
        chk.skip()
        return

    rhs_j = witt_index_over_quad_ext(q, a)
    chk.ensure(
        rhs_j == s,
        "quadratic-extension index differs from the constructed value",
        q=_fmt(q),
        a=str(a),
        expected=str(s),
        got=str(rhs_j),
    )

    K: FieldDesc = LaurentExt(QQ, "x")
    gens = [K.monomial(Fraction(1), 1)]
    if n == 2:
        inner = K
        K = LaurentExt(inner, "y")
        gens = [K.monomial(gens[0], 0), K.monomial(inner.from_int(1), 1)]
    one = K.from_int(1)
    pi = QForm(K, (one,))
    for g in gens:
        pi = tensor(pi, QForm(K, (one, K.neg(g))))
    phi = tensor(pi, _lift_tower(K, q))
    rho = tensor(pi, _lift_tower(K, QForm(QQ, (Fraction(1), -a))))

    dec = witt_decompose(phi)
    chk.ensure(
        dec.index == 0,
        "a product of anisotropic factors split over the tower",
        q=_fmt(q),
        n=str(n),
        index=str(dec.index),
    )

    rest: QForm | None = phi
    peeled = 0
    for c in sigma:
        piece = scale(rho, _const_in(K, c))
        if rest is None or not is_subform(piece, rest):
            chk.ensure(
                False,
                "a constructed multiple of rho was not recognised over the tower",
                q=_fmt(q),
                a=str(a),
                n=str(n),
                scalar=str(c),
            )
            break
        rest = witt_complement(rest, piece)
        peeled += 1
    extra = _max_pfister_peel(rest, rho) if rest is not None else 0
    lhs = (2**n) * (peeled + extra) + dec.index
    rhs = (2**n) * rhs_j
    if peeled == s and rest is not None and tau_entries:
        chk.ensure(
            is_isometric(rest, tensor(pi, _lift_tower(K, QForm(QQ, tau_entries)))),
            "the peeled remainder is not the lifted product with tau",
            q=_fmt(q),
            n=str(n),
            remainder=_fmt(rest),
        )
    if peeled == s and not tau_entries:
        chk.ensure(
            rest is None,
            "peeling the constructed multiples left an unexpected remainder",
            q=_fmt(q),
            n=str(n),
        )
    chk.ensure(
        lhs == rhs,
        "index over the function field differs from 2^n times the base index",
        q=_fmt(q),
        a=str(a),
        n=str(n),
        lhs=str(lhs),
        rhs=str(rhs),
    )


# --------------------------------------------------------------------------
# suite: self-pfister — hyperbolicity over a form's own function field
# --------------------------------------------------------------------------


def _self_pfister(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """An anisotropic q is hyperbolic over its own function field exactly
    when it is similar to a Pfister form.  Scaled Pfister forms must come
    back Yes with a replayed certificate; for dimension-4 forms the
    verdict is cross-checked against the closed criterion (trivial
    discriminant), which no branch of the decider computes directly."""
    if rng.random() < 0.6:
        if isinstance(F, Rationals):
            spec = _aniso_pfister(rng, rng.randint(1, 3), cfg.height)
        else:
            spec = pf(F, *(rng.randrange(1, F.p) for _ in range(rng.randint(1, 2))))
        q = scale(spec.expand(), _entry(F, rng, cfg.height))
        d = hyperbolic_over_ff(q, q, seed=_decision_seed(cfg, rng))
        chk.ensure(
            d.is_yes,
            "a scaled Pfister form is not hyperbolic over its own quadric",
            q=_fmt(q),
            verdict=d.verdict,
        )
        sp = similar_to_pfister(q)
        chk.ensure(sp.is_yes, "similar_to_pfister rejected a scaled Pfister form", q=_fmt(q))
        if sp.is_yes:
            cert = sp.certificate
            chk.ensure(
                is_isometric(q, scale(cert.spec.expand(), cert.scalar)),
                "similarity certificate does not reproduce the form",
                q=_fmt(q),
            )
    else:
        dim = rng.choice([2, 4, 6] if isinstance(F, Rationals) else [2, 4])
        q = _form(F, rng, dim, dim, cfg.height)
        if is_isotropic(q):
            chk.skip()
            return
        d = hyperbolic_over_ff(q, q, seed=_decision_seed(cfg, rng))
        sp = similar_to_pfister(q)
        if d.is_unknown or sp.is_unknown:
            chk.skip()
            return
        chk.ensure(
            d.is_yes == sp.is_yes,
            "self-function-field hyperbolicity disagrees with Pfister similarity",
            q=_fmt(q),
            hyp=d.verdict,
            similar=sp.verdict,
        )
        if q.dim == 4:
            disc_trivial = q.field.is_square(discriminant(q))
            chk.ensure(
                sp.is_yes == disc_trivial,
                "dimension-4 Pfister similarity disagrees with the discriminant criterion",
                q=_fmt(q),
                disc_trivial=str(disc_trivial),
            )


# --------------------------------------------------------------------------
# suite: subform — representation and the value-scaling transfer
# --------------------------------------------------------------------------


def _subform(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """Constructed subforms must be recognised after disguising q by
    square scalings and shuffles; for p a subform of q, every a in D(p)
    and b in D(q) give a*p a subform of b*q; the complement certificate is
    replayed as an isometry and as a symbolic substitution identity.  Over
    prime fields every answer is also cross-checked by counting."""
    p = _form(F, rng, 1, min(cfg.dim_max, 3), cfg.height)
    comp_dim = rng.randint(0, 2)
    q = p
    for _ in range(comp_dim):
        q = orth_sum(q, QForm(F, (_entry(F, rng, cfg.height),)))
    # disguise: multiply entries by squares and shuffle
    disguised = []
    for e in q.entries:
        disguised.append(F.mul(e, _square_unit(F, rng)))
    rng.shuffle(disguised)
    qd = QForm(F, tuple(disguised))
    recognised = is_subform(p, qd)
    chk.ensure(
        recognised,
        "a constructed subform was not recognised",
        p=_fmt(p),
        q=_fmt(qd),
    )
    if isinstance(F, PrimeField):
        chk.ensure(
            oracles.fp_subform(p, qd),
            "counting oracle rejects the constructed subform",
            p=_fmt(p),
            q=_fmt(qd),
        )
    # value-scaling transfer: when q is hyperbolic over F(p) and both
    # forms are anisotropic of dimension at least two, every a in D(p)
    # and b in D(q) make a*p a subform of b*q.
    if isinstance(F, Rationals):
        inst = _yes_instance(cfg, rng)
        if inst is not None:
            qy, py = inst
            if not is_isotropic(py) and not is_isotropic(qy):
                for a in sample_D(py, budget=6, rng=rng, height=6)[:2]:
                    for b in sample_D(qy, budget=6, rng=rng, height=6)[:2]:
                        chk.ensure(
                            is_subform(scale(py, a), scale(qy, b)),
                            "scaling by represented values broke the subform transfer",
                            a=QQ.format(a),
                            b=QQ.format(b),
                            p=_fmt(py),
                            q=_fmt(qy),
                        )
    else:
        # over a prime field, scaled pairs must still agree with counting
        av = sample_D(p, budget=4, rng=rng, height=6)[:1]
        bv = sample_D(qd, budget=4, rng=rng, height=6)[:1]
        for a in av:
            for b in bv:
                sp, sq = scale(p, a), scale(qd, b)
                chk.ensure(
                    is_subform(sp, sq) == oracles.fp_subform(sp, sq),
                    "subform decider disagrees with the counting oracle after scaling",
                    a=F.format(a),
                    b=F.format(b),
                    p=_fmt(p),
                    q=_fmt(qd),
                )
    # complement replay and the substitution identity
    if recognised and p.dim < qd.dim:
        comp = witt_complement(qd, p)
        rebuilt = orth_sum(p, comp)
        chk.ensure(
            is_isometric(rebuilt, qd),
            "complement certificate does not reproduce the form",
            p=_fmt(p),
            q=_fmt(qd),
            complement=_fmt(comp),
        )
        chk.ensure(
            oracles.restricts_to(rebuilt, p),
            "substituting zero for the complement variables does not recover p",
            p=_fmt(p),
            rebuilt=_fmt(rebuilt),
        )
    # random pairs must agree with the counting oracle over prime fields
    if isinstance(F, PrimeField):
        r = _form(F, rng, 1, qd.dim, cfg.height)
        chk.ensure(
            is_subform(r, qd) == oracles.fp_subform(r, qd),
            "subform decider disagrees with the counting oracle on a random pair",
            r=_fmt(r),
            q=_fmt(qd),
        )


# --------------------------------------------------------------------------
# suite: hauptsatz — dimension gap for anisotropic forms in I^n
# --------------------------------------------------------------------------


def _hauptsatz(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """Signed sums of scaled n-fold Pfister forms lie in I^n, so their
    anisotropic kernel has dimension 0 or at least 2^n; kernels of
    dimension exactly 2^n must be similar to a Pfister form, and the
    similarity certificate is replayed as an isometry."""
    n = rng.choice([2, 3])
    terms = rng.randint(1, 3)
    parts = []
    for _ in range(terms):
        slots = tuple(
            Fraction(squarefree_part(rng.choice([v for v in range(-cfg.height, cfg.height + 1) if v])))
            for _ in range(n)
        )
        piece = scale(pf(QQ, *slots).expand(), _entry(QQ, rng, cfg.height))
        if rng.random() < 0.5:
            piece = scale(piece, Fraction(-1))
        parts.append(piece)
    q = parts[0]
    for piece in parts[1:]:
        q = orth_sum(q, piece)
    chk.ensure(
        in_In(q, n),
        "a signed sum of scaled n-fold Pfister forms fell outside I^n",
        q=_fmt(q),
        n=str(n),
    )
    dec = witt_decompose(q)
    an_dim = 0 if dec.anisotropic_part is None else dec.anisotropic_part.dim
    chk.ensure(
        an_dim == 0 or an_dim >= 2**n,
        "anisotropic kernel dimension fell in the forbidden gap (0, 2^n)",
        q=_fmt(q),
        n=str(n),
        kernel_dim=str(an_dim),
    )
    if an_dim == 2**n:
        sp = similar_to_pfister(dec.anisotropic_part)
        chk.ensure(
            sp.is_yes,
            "a kernel of dimension exactly 2^n is not similar to a Pfister form",
            kernel=_fmt(dec.anisotropic_part),
            n=str(n),
        )
        if sp.is_yes:
            cert = sp.certificate
            chk.ensure(
                is_isometric(dec.anisotropic_part, scale(cert.spec.expand(), cert.scalar)),
                "similarity certificate does not reproduce the kernel",
                kernel=_fmt(dec.anisotropic_part),
            )


# --------------------------------------------------------------------------
# suite: pfister-roundtrip — divide_by_pfister recovers tensor products
# --------------------------------------------------------------------------


def _pfister_roundtrip(cfg: GenConfig, F: FieldDesc, rng: random.Random, chk: _Check):
    """q = pi (x) r, disguised by square scalings and a shuffle, must
    divide by pi with a quotient that reproduces q's isometry class."""
    if isinstance(F, Rationals):
        n = rng.randint(0, 3)
        slots = tuple(
            Fraction(squarefree_part(rng.choice([v for v in range(-cfg.height, cfg.height + 1) if v])))
            for _ in range(n)
        )
        spec = pf(QQ, *slots)
    else:
        n = rng.randint(0, 2)
        spec = pf(F, *(rng.randrange(1, F.p) for _ in range(n)))
    r = _form(F, rng, 1, min(cfg.dim_max, 3), cfg.height)
    q = tensor(spec.expand(), r)
    disguised = []
    for e in q.entries:
        disguised.append(F.mul(e, _square_unit(F, rng)))
    rng.shuffle(disguised)
    qd = QForm(F, tuple(disguised))
    d = divide_by_pfister(qd, spec)
    chk.ensure(
        d.is_yes,
        "a Pfister multiple failed to divide by its Pfister factor",
        q=_fmt(qd),
        pi=str(spec),
        verdict=d.verdict,
    )
    if d.is_yes:
        quotient = d.certificate.quotient
        rebuilt = tensor(spec.expand(), quotient)
        planes = (qd.dim - rebuilt.dim) // 2
        if planes > 0:
            rebuilt = orth_sum(rebuilt, hyperbolic_form(F, planes))
        chk.ensure(
            is_isometric(qd, rebuilt),
            "the quotient does not reproduce the isometry class",
            q=_fmt(qd),
            quotient=_fmt(quotient),
            rebuilt=_fmt(rebuilt),
        )


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------


_SUITES: dict[str, _Suite] = {
    s.ident: s
    for s in (
        _Suite(
            "springer",
            "Witt-index additivity over Laurent series fields, with exact series search",
            _springer,
            lambda: QQ,
            (Rationals, PrimeField),
        ),
        _Suite(
            "local-global",
            "isotropy/index/isometry/subform against enumeration (F_p) and integer search (Q)",
            _local_global,
            lambda: QQ,
            (Rationals, PrimeField),
        ),
        _Suite(
            "quad-ext",
            "hyperbolicity over conics vs norm-form divisibility and Q(sqrt a) search",
            _quad_ext,
            lambda: QQ,
            (Rationals,),
        ),
        _Suite(
            "hyp-multiples",
            "Pfister multiples are hyperbolic over their quadric; odd dimensions are refuted",
            _hyp_multiples,
            lambda: QQ,
            (Rationals, PrimeField),
        ),
        _Suite(
            "product-isotropy",
            "isotropic products over F_p contain a small isotropic sub-product",
            _product_isotropy,
            lambda: PrimeField(7),
            (PrimeField,),
        ),
        _Suite(
            "binary-product-hyp",
            "isotropic products with binary q over F_p contain a hyperbolic sub-product",
            _binary_product_hyp,
            lambda: PrimeField(7),
            (PrimeField,),
        ),
        _Suite(
            "h-in-g",
            "sampled H-values are similarity factors over Q, Q(sqrt d), and Q((x))",
            _h_in_g,
            lambda: QQ,
            (Rationals,),
        ),
        _Suite(
            "d-in-g",
            "sampled represented values of scaled p are similarity factors of q",
            _d_in_g,
            lambda: QQ,
            (Rationals,),
        ),
        _Suite(
            "tensor-transfer",
            "Yes-instances stay non-refuted (and decidable for binary p) after Pfister tensoring",
            _tensor_transfer,
            lambda: QQ,
            (Rationals,),
        ),
        _Suite(
            "index-lower-bound",
            "extension index of a Pfister multiple is at least 2^n times the base index",
            _index_lower_bound,
            lambda: QQ,
            (Rationals,),
        ),
        _Suite(
            "index-transfer",
            "exact function-field index of Pfister multiples for binary p",
            _index_transfer,
            lambda: QQ,
            (Rationals,),
        ),
        _Suite(
            "self-pfister",
            "hyperbolic over its own function field iff similar to a Pfister form",
            _self_pfister,
            lambda: QQ,
            (Rationals, PrimeField),
        ),
        _Suite(
            "subform",
            "subform recognition, value-scaling transfer, and complement replay",
            _subform,
            lambda: QQ,
            (Rationals, PrimeField),
        ),
        _Suite(
            "hauptsatz",
            "anisotropic kernels in I^n have dimension 0 or >= 2^n; 2^n kernels are Pfister-similar",
            _hauptsatz,
            lambda: QQ,
            (Rationals,),
        ),
        _Suite(
            "pfister-roundtrip",
            "divide_by_pfister inverts tensoring by a Pfister form up to isometry",
            _pfister_roundtrip,
            lambda: QQ,
            (Rationals, PrimeField),
        ),
        _Suite(
            "h-in-h",
            "sampled H(p) lies in H(q) on decidable instances (optional)",
            _h_in_h,
            lambda: QQ,
            (Rationals,),
            optional=True,
        ),
    )
}

SUITE_IDS: tuple[str, ...] = tuple(_SUITES)
DEFAULT_SUITES: tuple[str, ...] = tuple(
    ident for ident, s in _SUITES.items() if not s.optional
)
