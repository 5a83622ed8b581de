"""Three-valued decisions with replayable certificates.

Several questions about quadratic forms (above all: does ``q`` become
hyperbolic over the function field of ``p``?) have no known complete
algorithm, so deciders in this package return a :class:`Decision` whose
verdict is ``Yes``, ``No``, or the honest third value ``Unknown``.  Every
``Yes`` or ``No`` carries a certificate: a small data object from which the
claim can be re-established by independent means — re-multiplying a tensor
product, re-checking an invariant, or re-testing a sampled witness.  The
verification suites replay certificates instead of trusting verdicts.

Certificates serialize to JSON (forms printed in the same ``<a,b,...>``
expression syntax the command line accepts) so reports and CLI output can
embed them verbatim.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .forms import QForm, format_form

YES = "Yes"
NO = "No"
UNKNOWN = "Unknown"

__all__ = [
    "YES",
    "NO",
    "UNKNOWN",
    "Decision",
    "yes",
    "no",
    "unknown",
    "PurelyTranscendental",
    "AlreadyHyperbolic",
    "PfisterFactor",
    "QuadExtDivisibility",
    "SelfPfister",
    "HObstruction",
    "NeighborWitness",
    "TwoDimDivisibilityObstruction",
    "InvariantObstruction",
    "SearchExhausted",
    "ResidueComputation",
]


# --------------------------------------------------------------------------
# Certificate kinds.
#
# Each is a frozen dataclass; the JSON encoding is {"kind": <class name>,
# <field>: <encoded value>, ...}.  What each one asserts, and how a replay
# re-establishes it, is documented on the class.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PurelyTranscendental:
    """The function field is a purely transcendental extension (the quadric
    has a rational point), so extending changes nothing: the verdict equals
    the base-field answer.  Replay: recompute hyperbolicity over the base
    field and compare."""


@dataclass(frozen=True)
class AlreadyHyperbolic:
    """The form is hyperbolic before extending, hence stays hyperbolic over
    every extension.  Replay: recompute hyperbolicity over the base field."""


@dataclass(frozen=True)
class PfisterFactor:
    """The Witt class of ``q`` is a multiple of the Pfister form ``spec``,
    exhibited as ``q ≃ spec ⊗ quotient ⊥ k×⟨1,−1⟩`` with
    ``2k = dim q − dim(spec ⊗ quotient)`` (``k = 0`` when ``q`` is divided
    outright).  Replay: expand ``spec``, tensor with ``quotient``, pad with
    ``k`` hyperbolic planes, and check isometry with ``q``."""

    spec: Any  # PfisterSpec; typed loosely to keep this module leaf-level
    quotient: QForm


@dataclass(frozen=True)
class QuadExtDivisibility:
    """``q ≃ ⟨1,−a⟩ ⊗ quotient ⊥ k×⟨1,−1⟩`` with
    ``2k = dim q − 2·dim quotient``, where the binary ``p`` is similar to
    ``⟨1,−a⟩`` — exactly the kernel condition for the quadratic extension
    F(√a).  Replay: rebuild the product, pad, and check isometry."""

    a: Any
    quotient: QForm


@dataclass(frozen=True)
class SelfPfister:
    """``q`` is isometric to ``scalar · pf(spec)`` — in particular similar to
    a Pfister form, which is exactly the condition for ``q`` to vanish over
    its own function field.  Replay: expand, scale, check isometry."""

    scalar: Any
    spec: Any  # PfisterSpec


@dataclass(frozen=True)
class HObstruction:
    """A sampled value ``a`` lies in H(p) (``⟨1,−a⟩ ⊗ p`` is isotropic) but
    not in G(q); since hyperbolicity over the function field forces
    H(p) ⊆ G(q) over every extension, this refutes it.  Replay: recheck both
    memberships."""

    a: Any


@dataclass(frozen=True)
class TwoDimDivisibilityObstruction:
    """``beta`` is a two-entry diagonal subform of ``p``; specialization
    monotonicity forces ``q`` to be divisible by the binary Pfister form
    ``⟨1, β₁β₂⟩``, and it is not.  Replay: recheck the divisibility."""

    beta: QForm


@dataclass(frozen=True)
class NeighborWitness:
    """``scalar · τ`` embeds into the expansion of the Pfister form ``spec``
    and ``dim τ`` exceeds half of that expansion's dimension, i.e. τ is a
    Pfister neighbor.  Replay: recheck the subform embedding and the
    dimension inequality."""

    spec: Any  # PfisterSpec
    scalar: Any


@dataclass(frozen=True)
class InvariantObstruction:
    """A classical invariant rules the claim out; ``text`` names it."""

    text: str


@dataclass(frozen=True)
class SearchExhausted:
    """No refutation was found and every bounded search came up empty; the
    question remains open for this input."""


@dataclass(frozen=True)
class ResidueComputation:
    """Hyperbolicity over a rational function field F(x), decided place by
    place: ``residues`` lists ``(place label, residue form)`` pairs — the
    even-part residue at infinity plus one second residue per irreducible
    dividing an entry.  For a Yes every listed residue is hyperbolic; for a
    No the listed residues contain a non-hyperbolic one.  Replay: recompute
    the residues and their hyperbolicity."""

    residues: tuple[tuple[str, QForm], ...]


# --------------------------------------------------------------------------
# The decision itself.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Decision:
    """A three-valued verdict plus the certificate backing it.

    Deliberately not truthy: ``if decision:`` raises, because collapsing
    {Yes, No, Unknown} to a bool silently miscounts Unknown.  Test
    :attr:`is_yes` / :attr:`is_no` / :attr:`is_unknown`.
    """

    verdict: str
    certificate: object | None = None

    def __post_init__(self) -> None:
        if self.verdict not in (YES, NO, UNKNOWN):
            raise ValueError(f"verdict must be Yes/No/Unknown, got {self.verdict!r}")

    def __bool__(self) -> bool:
        raise TypeError(
            "Decision is three-valued; test .is_yes, .is_no, or .is_unknown"
        )

    @property
    def is_yes(self) -> bool:
        return self.verdict == YES

    @property
    def is_no(self) -> bool:
        return self.verdict == NO

    @property
    def is_unknown(self) -> bool:
        return self.verdict == UNKNOWN

    @property
    def kind(self) -> str | None:
        """Certificate class name, or None."""
        if self.certificate is None:
            return None
        return type(self.certificate).__name__

    def to_json(self, field=None) -> dict:
        """JSON-safe dict: verdict plus encoded certificate payload.

        ``field`` supplies formatting for bare elements whose field is not
        recoverable from the payload itself (e.g. an H-value over a Laurent
        tower); rational and prime-field payloads need no context.
        """
        cert = None
        if self.certificate is not None:
            cert = {"kind": self.kind}
            for f in dataclasses.fields(self.certificate):
                cert[f.name] = _encode(getattr(self.certificate, f.name), field)
        return {"verdict": self.verdict, "certificate": cert}

    def describe(self, field=None) -> str:
        """One human-readable line: verdict, certificate kind, payload."""
        if self.certificate is None:
            return self.verdict
        parts = []
        for f in dataclasses.fields(self.certificate):
            enc = _encode(getattr(self.certificate, f.name), field)
            parts.append(f"{f.name}={_flat(enc)}")
        payload = f" ({', '.join(parts)})" if parts else ""
        return f"{self.verdict} — {self.kind}{payload}"


def yes(certificate: object) -> Decision:
    return Decision(YES, certificate)


def no(certificate: object) -> Decision:
    return Decision(NO, certificate)


def unknown(certificate: object | None = None) -> Decision:
    return Decision(UNKNOWN, certificate if certificate is not None else SearchExhausted())


# --------------------------------------------------------------------------
# Payload encoding.
# --------------------------------------------------------------------------


def _encode(x, field) -> Any:
    """Encode one payload value as JSON-safe data.

    Forms print in the form-expression syntax; a PfisterSpec (recognized
    structurally so this module never imports the module that defines it)
    prints as ``pf(...)``; everything else falls back to the supplied field's
    formatter or ``str``.
    """
    if isinstance(x, QForm):
        return format_form(x)
    if hasattr(x, "slots") and hasattr(x, "field"):  # PfisterSpec, structurally
        return "pf(" + ",".join(x.field.format(a) for a in x.slots) + ")"
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return [_encode(v, field) for v in x]
    if field is not None:
        try:
            return field.format(x)
        except Exception:
            pass
    return str(x)


def _flat(enc: Any) -> str:
    """Render an encoded payload value on one line for describe()."""
    if isinstance(enc, list):
        return "[" + ", ".join(_flat(v) for v in enc) + "]"
    return str(enc)
