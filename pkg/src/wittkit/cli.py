"""Command-line front end for the quadratic-form toolkit.

The interface exposes one verb per decision procedure plus a ``verify``
verb that drives the property-suite runner.  Field towers are written as
compact spec strings (``Q``, ``F7``, ``Q(sqrt -1)``, ``Q((x))((y))``,
``F5(x)``) and forms as diagonal expressions::

    form   := '<' entry (',' entry)* '>'
            | 'pf(' entry (',' entry)* ')'
            | entry '*' form
            | form '+' form
            | form '*' form

Entries are integers, fractions ``a/b``, tower variables (with integer
powers such as ``x^-2``), ``sqrt(d)`` over a quadratic extension, and
sums and products of these.  ``pf(a,...,c)`` expands the Pfister form
⟨1,a⟩⊗…⊗⟨1,c⟩; an empty ``pf()`` is the one-dimensional form ⟨1⟩.
Printed forms always use square-free canonical entries, so parsing a
printed form reproduces its normalized diagonal exactly.

Exit codes: 0 for a decided answer (or an all-pass ``verify``), 1 for a
``verify`` violation or an ``--expect`` mismatch, 2 for an Unknown
verdict, 64 for unusable input (bad syntax, zero entries, unknown
variables or suites, unsupported field towers).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction
from typing import Sequence

from .decision import Decision
from .errors import (
    ParseError,
    UnknownVariable,
    VacuousSuite,
    WittkitError,
    ZeroElement,
    ZeroEntry,
)
from .fields import (
    Element,
    FieldDesc,
    LaurentExt,
    PrimeField,
    QQ,
    QuadExt,
    RatFuncExt,
    Rationals,
)
from .forms import (
    QForm,
    determinant,
    discriminant,
    format_form,
    normalized,
    orth_sum,
    neg,
    scale,
    tensor,
)
from .funcfield import hyperbolic_over_ff
from .localglobal import (
    is_hyperbolic,
    is_isometric,
    is_isotropic,
    witt_complement,
    witt_decompose,
    witt_index,
)
from .pfister import PfisterSpec, pf, pfister_expand, neighbor_of, similar_to_pfister, divide_by_pfister
from .verify import DEFAULT_SUITES, GenConfig, SuiteReport, Violation, run_suite, suite_catalogue

USAGE_ERROR = 64


# ---------------------------------------------------------------------------
# Field-spec parsing
# ---------------------------------------------------------------------------

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"-?\d+")


def parse_field(text: str) -> FieldDesc:
    """Parse a field spec string such as ``Q``, ``F7((x))`` or ``Q(sqrt -5)``.

    The grammar mirrors ``FieldDesc.spec_string``: a base field ``Q`` or
    ``F<p>`` followed by extension suffixes — ``((v))`` for formal Laurent
    series, ``(v)`` for rational functions, and ``(sqrt d)`` for a
    quadratic extension of the rationals.
    """
    s = text
    i = _skip_ws(s, 0)
    if i < len(s) and s[i] == "Q":
        base: FieldDesc = QQ
        i += 1
    elif i < len(s) and s[i] == "F":
        m = re.match(r"\d+", s[i + 1 :])
        if not m:
            raise ParseError(f"expected a prime after 'F' at column {i + 2} in field spec {text!r}")
        try:
            base = PrimeField(int(m.group()))
        except (WittkitError, ValueError) as exc:
            raise ParseError(f"bad prime field in {text!r}: {exc}") from exc
        i += 1 + m.end()
    else:
        raise ParseError(f"field spec must start with 'Q' or 'F<p>', got {text!r}")

    F = base
    while True:
        i = _skip_ws(s, i)
        if i >= len(s):
            return F
        if s[i] != "(":
            raise ParseError(f"unexpected character {s[i]!r} at column {i + 1} in field spec {text!r}")
        if s.startswith("((", i):
            j = _skip_ws(s, i + 2)
            m = _IDENT_RE.match(s, j)
            if not m:
                raise ParseError(f"expected a variable name at column {j + 1} in field spec {text!r}")
            j = _skip_ws(s, m.end())
            if not s.startswith("))", j):
                raise ParseError(f"expected '))' at column {j + 1} in field spec {text!r}")
            F = LaurentExt(F, m.group())
            i = j + 2
            continue
        j = _skip_ws(s, i + 1)
        m = _IDENT_RE.match(s, j)
        if m and m.group() == "sqrt":
            j = _skip_ws(s, m.end())
            if j < len(s) and s[j] == "(":
                j = _skip_ws(s, j + 1)
                d, j = _read_fraction(s, j, text)
                j = _skip_ws(s, j)
                if j >= len(s) or s[j] != ")":
                    raise ParseError(f"expected ')' at column {j + 1} in field spec {text!r}")
                j += 1
            else:
                d, j = _read_fraction(s, j, text)
            j = _skip_ws(s, j)
            if j >= len(s) or s[j] != ")":
                raise ParseError(f"expected ')' at column {j + 1} in field spec {text!r}")
            try:
                F = QuadExt(F, d)
            except (WittkitError, ValueError) as exc:
                raise ParseError(f"bad quadratic extension in {text!r}: {exc}") from exc
            i = j + 1
            continue
        if m:
            j2 = _skip_ws(s, m.end())
            if j2 >= len(s) or s[j2] != ")":
                raise ParseError(f"expected ')' at column {j2 + 1} in field spec {text!r}")
            F = RatFuncExt(F, m.group())
            i = j2 + 1
            continue
        raise ParseError(f"expected a variable or 'sqrt' at column {j + 1} in field spec {text!r}")


def _skip_ws(s: str, i: int) -> int:
    while i < len(s) and s[i].isspace():
        i += 1
    return i


def _read_fraction(s: str, i: int, context: str) -> tuple[Fraction, int]:
    m = _INT_RE.match(s, i)
    if not m:
        raise ParseError(f"expected a number at column {i + 1} in field spec {context!r}")
    num = int(m.group())
    i = m.end()
    if i < len(s) and s[i] == "/":
        m2 = re.compile(r"\d+").match(s, i + 1)
        if not m2:
            raise ParseError(f"expected a denominator at column {i + 2} in field spec {context!r}")
        den = int(m2.group())
        if den == 0:
            raise ParseError(f"zero denominator at column {i + 2} in field spec {context!r}")
        return Fraction(num, den), m2.end()
    return Fraction(num), i


# ---------------------------------------------------------------------------
# Form-expression parsing
# ---------------------------------------------------------------------------

_SYMBOLS = "<>(),+-*/^"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens are (kind, text, 1-based column); kinds: num, ident, symbol."""
    out: list[tuple[str, str, int]] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            m = re.compile(r"\d+").match(text, i)
            assert m is not None
            out.append(("num", m.group(), i + 1))
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            out.append(("ident", m.group(), i + 1))
            i = m.end()
            continue
        if c in _SYMBOLS:
            out.append((c, c, i + 1))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r} at column {i + 1}")
    out.append(("end", "", n + 1))
    return out


def _tower_levels(F: FieldDesc) -> list[FieldDesc]:
    """The field tower from the base outward, base first."""
    levels: list[FieldDesc] = []
    cur = F
    while isinstance(cur, (LaurentExt, RatFuncExt, QuadExt)):
        levels.append(cur)
        cur = cur.base
    levels.append(cur)
    levels.reverse()
    return levels


def _wrap_once(L: FieldDesc, val: Element) -> Element:
    """Embed a value of ``L.base`` into ``L``."""
    if isinstance(L, LaurentExt):
        return L.monomial(val, 0)
    if isinstance(L, RatFuncExt):
        return L.make((val,), (L.base.one(),))
    if isinstance(L, QuadExt):
        return L.embed(val)
    raise WittkitError(f"cannot embed into {L.spec_string()}")


def _lift_rational(F: FieldDesc, value: Fraction) -> Element:
    """Build an exact rational constant in the base of the tower and lift it."""
    levels = _tower_levels(F)
    base = levels[0]
    if isinstance(base, Rationals):
        cur: Element = value
    else:
        cur = base.div(base.from_int(value.numerator), base.from_int(value.denominator))
    for L in levels[1:]:
        cur = _wrap_once(L, cur)
    return cur


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    if q <= 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


_Value = tuple[str, object]  # ("s", field element) or ("f", QForm)


class _FormParser:
    """Recursive-descent evaluator for the form-expression grammar."""

    def __init__(self, text: str, field: FieldDesc):
        self.text = text
        self.field = field
        self.tokens = _tokenize(text)
        self.pos = 0
        self.last_pfister: PfisterSpec | None = None

    # -- token plumbing ---------------------------------------------------

    def _peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def _next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, kind: str, what: str) -> tuple[str, str, int]:
        tok = self._next()
        if tok[0] != kind:
            found = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise ParseError(f"expected {what} at column {tok[2]}, found {found}")
        return tok

    # -- entry points ------------------------------------------------------

    def parse_form(self) -> QForm:
        value = self._expr()
        tok = self._peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r} at column {tok[2]}")
        if value[0] != "f":
            raise ParseError("the expression evaluates to a scalar, not a form; wrap entries in <...>")
        return value[1]  # type: ignore[return-value]

    def parse_pfister(self) -> PfisterSpec:
        tok = self._peek()
        if not (tok[0] == "ident" and tok[1] == "pf"):
            raise ParseError(f"expected a Pfister expression pf(...) at column {tok[2]}")
        self._next()
        self._pf_call(tok[2])
        end = self._peek()
        if end[0] != "end":
            raise ParseError(f"unexpected {end[1]!r} at column {end[2]}; pf(...) must stand alone here")
        assert self.last_pfister is not None
        return self.last_pfister

    # -- grammar -----------------------------------------------------------

    def _expr(self) -> _Value:
        value = self._term()
        while self._peek()[0] in "+-":
            op, _, col = self._next()
            rhs = self._term()
            if op == "+":
                if value[0] == "s" and rhs[0] == "s":
                    value = ("s", self.field.add(value[1], rhs[1]))
                elif value[0] == "f" and rhs[0] == "f":
                    value = ("f", orth_sum(value[1], rhs[1]))
                else:
                    raise ParseError(f"cannot add a scalar and a form (column {col})")
            else:
                if value[0] == "s" and rhs[0] == "s":
                    value = ("s", self.field.sub(value[1], rhs[1]))
                else:
                    raise ParseError(f"forms cannot be subtracted (column {col}); negate the entries instead")
        return value

    def _term(self) -> _Value:
        value = self._factor()
        while self._peek()[0] in "*/":
            op, _, col = self._next()
            rhs = self._factor()
            if op == "*":
                if value[0] == "s" and rhs[0] == "s":
                    value = ("s", self.field.mul(value[1], rhs[1]))
                elif value[0] == "s" and rhs[0] == "f":
                    value = ("f", self._scale(rhs[1], value[1], col))
                elif value[0] == "f" and rhs[0] == "s":
                    value = ("f", self._scale(value[1], rhs[1], col))
                else:
                    value = ("f", tensor(value[1], rhs[1]))
            else:
                if value[0] == "s" and rhs[0] == "s":
                    try:
                        value = ("s", self.field.div(value[1], rhs[1]))
                    except ZeroElement as exc:
                        raise ParseError(f"division by zero at column {col}") from exc
                else:
                    raise ParseError(f"'/' applies to scalars only (column {col})")
        return value

    def _scale(self, q: QForm, c: Element, col: int) -> QForm:
        if self.field.is_zero(c):
            raise ZeroEntry(f"scaling a form by zero at column {col}")
        return scale(q, c)

    def _factor(self) -> _Value:
        tok = self._peek()
        if tok[0] == "-":
            self._next()
            value = self._factor()
            if value[0] == "s":
                return ("s", self.field.neg(value[1]))
            return ("f", neg(value[1]))
        value = self._atom()
        if self._peek()[0] == "^":
            _, _, col = self._next()
            exp = self._signed_int()
            if value[0] != "s":
                raise ParseError(f"'^' applies to scalars only (column {col})")
            value = ("s", self._power(value[1], exp, col))
        return value

    def _power(self, base: Element, exp: int, col: int) -> Element:
        F = self.field
        if exp < 0:
            try:
                base = F.inv(base)
            except WittkitError as exc:
                raise ParseError(f"negative power at column {col} needs an invertible scalar: {exc}") from exc
            exp = -exp
        out = F.one()
        for _ in range(exp):
            out = F.mul(out, base)
        return out

    def _signed_int(self) -> int:
        sign = 1
        if self._peek()[0] == "-":
            self._next()
            sign = -1
        tok = self._expect("num", "an integer exponent")
        return sign * int(tok[1])

    def _atom(self) -> _Value:
        tok = self._next()
        kind, text, col = tok
        if kind == "num":
            num = int(text)
            if self._peek()[0] == "/" and self.tokens[self.pos + 1][0] == "num":
                self._next()
                den_tok = self._next()
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError(f"zero denominator at column {den_tok[2]}")
                return ("s", _lift_rational(self.field, Fraction(num, den)))
            return ("s", _lift_rational(self.field, Fraction(num)))
        if kind == "ident":
            if text == "pf":
                return self._pf_call(col)
            if text == "sqrt":
                return self._sqrt_call(col)
            return ("s", self._variable(text, col))
        if kind == "(":
            value = self._expr()
            self._expect(")", "')'")
            return value
        if kind == "<":
            return self._diagonal(col)
        found = repr(text) if kind != "end" else "end of input"
        raise ParseError(f"expected a form or entry at column {col}, found {found}")

    def _diagonal(self, col: int) -> _Value:
        entries: list[Element] = []
        while True:
            tok = self._peek()
            entry = self._expr()
            if entry[0] != "s":
                raise ParseError(f"diagonal entries must be scalars (column {tok[2]})")
            if self.field.is_zero(entry[1]):
                raise ZeroEntry(f"zero diagonal entry at column {tok[2]}")
            entries.append(entry[1])
            nxt = self._next()
            if nxt[0] == ",":
                continue
            if nxt[0] == ">":
                return ("f", QForm(self.field, tuple(entries)))
            found = repr(nxt[1]) if nxt[0] != "end" else "end of input"
            raise ParseError(f"expected ',' or '>' at column {nxt[2]}, found {found}")

    def _pf_call(self, col: int) -> _Value:
        self._expect("(", "'(' after pf")
        slots: list[Element] = []
        if self._peek()[0] == ")":
            self._next()
        else:
            while True:
                tok = self._peek()
                slot = self._expr()
                if slot[0] != "s":
                    raise ParseError(f"Pfister slots must be scalars (column {tok[2]})")
                if self.field.is_zero(slot[1]):
                    raise ZeroEntry(f"zero Pfister slot at column {tok[2]}")
                slots.append(slot[1])
                nxt = self._next()
                if nxt[0] == ",":
                    continue
                if nxt[0] == ")":
                    break
                found = repr(nxt[1]) if nxt[0] != "end" else "end of input"
                raise ParseError(f"expected ',' or ')' at column {nxt[2]}, found {found}")
        spec = pf(self.field, *slots)
        self.last_pfister = spec
        return ("f", pfister_expand(spec))

    def _sqrt_call(self, col: int) -> _Value:
        self._expect("(", "'(' after sqrt")
        sign = 1
        if self._peek()[0] == "-":
            self._next()
            sign = -1
        num_tok = self._expect("num", "a number inside sqrt")
        value = Fraction(sign * int(num_tok[1]))
        if self._peek()[0] == "/" and self.tokens[self.pos + 1][0] == "num":
            self._next()
            den_tok = self._next()
            if int(den_tok[1]) == 0:
                raise ParseError(f"zero denominator at column {den_tok[2]}")
            value /= int(den_tok[1])
        self._expect(")", "')'")
        F = self.field
        if not isinstance(F, QuadExt):
            raise ParseError(f"sqrt at column {col} requires a quadratic extension field, not {F.spec_string()}")
        if value == 0:
            raise ZeroEntry(f"sqrt(0) at column {col} is zero")
        ratio = value / F.a
        root = _fraction_sqrt(ratio)
        if root is None:
            raise ParseError(f"sqrt({value}) at column {col} does not lie in {F.spec_string()}")
        return ("s", (Fraction(0), root))

    def _variable(self, name: str, col: int) -> Element:
        levels = _tower_levels(self.field)
        exp = 1
        if self._peek()[0] == "^":
            self._next()
            exp = self._signed_int()
        for idx, L in enumerate(levels):
            if isinstance(L, LaurentExt) and L.var == name:
                val: Element = L.monomial(L.base.one(), exp)
            elif isinstance(L, RatFuncExt) and L.var == name:
                one = L.base.one()
                zero = L.base.zero()
                if exp >= 0:
                    val = L.make(tuple([zero] * exp + [one]), (one,))
                else:
                    val = L.make((one,), tuple([zero] * (-exp) + [one]))
            else:
                continue
            for outer in levels[idx + 1 :]:
                val = _wrap_once(outer, val)
            return val
        declared = sorted(self.field.vars())
        hint = f"; {self.field.spec_string()} declares " + ", ".join(declared) if declared else (
            f"; {self.field.spec_string()} declares no variables"
        )
        raise UnknownVariable(f"unknown variable {name!r} at column {col}{hint}")


def parse_form(text: str, field: FieldDesc) -> QForm:
    """Parse a form expression over ``field``; entries keep their literal values."""
    return _FormParser(text, field).parse_form()


def parse_pfister(text: str, field: FieldDesc) -> PfisterSpec:
    """Parse a bare ``pf(...)`` expression into its slot specification."""
    return _FormParser(text, field).parse_pfister()


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _emit(args: argparse.Namespace, payload: dict, human: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for line in human:
            print(line)


def _exit_for(verdict: str, expect: str | None) -> int:
    if expect is not None:
        return 0 if verdict == expect else 1
    return 2 if verdict == "unknown" else 0


def _decision_payload(args: argparse.Namespace, F: FieldDesc, d: Decision, extra: dict) -> int:
    payload = {"verb": args.verb, "field": F.spec_string(), **extra, "decision": d.to_json(field=F)}
    _emit(args, payload, [d.describe(field=F)])
    return _exit_for(d.verdict.lower(), args.expect)


# ---------------------------------------------------------------------------
# Verb handlers
# ---------------------------------------------------------------------------


def _cmd_isotropy(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    q = parse_form(args.form, F)
    ans = is_isotropic(q)
    verdict = "yes" if ans else "no"
    payload = {
        "verb": "isotropy",
        "field": F.spec_string(),
        "form": format_form(q),
        "isotropic": ans,
    }
    word = "isotropic" if ans else "anisotropic"
    _emit(args, payload, [f"{format_form(q)} is {word} over {F.spec_string()}"])
    return _exit_for(verdict, args.expect)


def _cmd_witt(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    q = parse_form(args.form, F)
    dec = witt_decompose(q)
    an = dec.anisotropic_part
    payload = {
        "verb": "witt",
        "field": F.spec_string(),
        "form": format_form(q),
        "dim": q.dim,
        "index": dec.index,
        "anisotropic_part": format_form(an) if an is not None else None,
    }
    lines = [f"index {dec.index}"]
    lines.append(f"anisotropic part {format_form(an)}" if an is not None else "anisotropic part none (hyperbolic)")
    _emit(args, payload, lines)
    return 0


def _cmd_isometric(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    q1 = parse_form(args.first, F)
    q2 = parse_form(args.second, F)
    ans = is_isometric(q1, q2)
    payload = {
        "verb": "isometric",
        "field": F.spec_string(),
        "forms": [format_form(q1), format_form(q2)],
        "isometric": ans,
    }
    word = "isometric" if ans else "not isometric"
    _emit(args, payload, [f"{format_form(q1)} and {format_form(q2)} are {word} over {F.spec_string()}"])
    return _exit_for("yes" if ans else "no", args.expect)


def _cmd_subform(args: argparse.Namespace) -> int:
    from .localglobal import is_subform

    F = parse_field(args.field)
    r = parse_form(args.first, F)
    q = parse_form(args.second, F)
    ans = is_subform(r, q)
    complement = None
    if ans and q.dim > r.dim:
        complement = witt_complement(q, r)
    payload = {
        "verb": "subform",
        "field": F.spec_string(),
        "subform_candidate": format_form(r),
        "ambient": format_form(q),
        "is_subform": ans,
        "complement": format_form(complement) if complement is not None else None,
    }
    if ans:
        lines = [f"{format_form(r)} is a subform of {format_form(q)} over {F.spec_string()}"]
        if complement is not None:
            lines.append(f"complement {format_form(complement)}")
    else:
        lines = [f"{format_form(r)} is not a subform of {format_form(q)} over {F.spec_string()}"]
    _emit(args, payload, lines)
    return _exit_for("yes" if ans else "no", args.expect)


def _cmd_pfister(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    q = parse_form(args.form, F)
    d = similar_to_pfister(q)
    return _decision_payload(args, F, d, {"form": format_form(q)})


def _cmd_divide(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    q = parse_form(args.q, F)
    spec = parse_pfister(args.by, F)
    d = divide_by_pfister(q, spec)
    extra = {"form": format_form(q), "by": format_form(pfister_expand(spec))}
    return _decision_payload(args, F, d, extra)


def _cmd_neighbor(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    q = parse_form(args.form, F)
    d = neighbor_of(q, budget=args.budget)
    return _decision_payload(args, F, d, {"form": format_form(q)})


def _cmd_hyp_over(args: argparse.Namespace) -> int:
    F = parse_field(args.field)
    q = parse_form(args.q, F)
    p = parse_form(args.p, F)
    d = hyperbolic_over_ff(
        q,
        p,
        h_budget=args.h_budget,
        search_budget=args.search_budget,
        seed=args.seed,
    )
    return _decision_payload(args, F, d, {"q": format_form(q), "p": format_form(p)})


def _cmd_eval(args: argparse.Namespace) -> int:
    from .errors import UnsupportedField

    F = parse_field(args.field)
    q = parse_form(args.form, F)
    canon = normalized(q)
    try:
        det = determinant(q)
        disc = discriminant(q)
    except UnsupportedField:
        # Fields without canonical square-class representatives (quadratic
        # extensions) report the raw products instead.
        det = F.one()
        for e in q.entries:
            det = F.mul(det, e)
        disc = F.neg(det) if (q.dim * (q.dim - 1) // 2) % 2 else det
    payload = {
        "verb": "repl-free-eval",
        "field": F.spec_string(),
        "form": format_form(q),
        "dim": q.dim,
        "entries": [F.format(e) for e in canon.entries],
        "determinant": F.format(det),
        "discriminant": F.format(disc),
    }
    lines = [
        format_form(q),
        f"dim {q.dim}",
        f"determinant {F.format(det)}",
        f"discriminant {F.format(disc)}",
    ]
    _emit(args, payload, lines)
    return 0


# ---------------------------------------------------------------------------
# verify verb
# ---------------------------------------------------------------------------


def _corpus_report(path: str, default_field: FieldDesc | None, seed: int) -> SuiteReport:
    """Consistency battery over user-supplied forms, one JSON value per line.

    Each line is either a form expression string or an object
    ``{"form": "...", "field": "Q((x))"}``.  Every form is decomposed and
    the decomposition replayed: the claimed index and anisotropic kernel
    must reassemble to the input, and the isotropy/hyperbolicity
    predicates must agree with the decomposition.  The printed canonical
    form must also parse back to the same normalized diagonal.
    """
    violations: list[Violation] = []
    instances = 0
    skipped = 0
    with open(path, "r", encoding="utf-8") as handle:
        lines = [ln.strip() for ln in handle if ln.strip()]
    for i, line in enumerate(lines):
        ident = f"corpus:{i}"
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{i + 1}: not a JSON value: {exc}") from exc
        if isinstance(doc, str):
            expr, fld = doc, default_field
        elif isinstance(doc, dict) and isinstance(doc.get("form"), str):
            fld = parse_field(doc["field"]) if "field" in doc else default_field
            expr = doc["form"]
        else:
            raise ParseError(f'{path}:{i + 1}: expected a string or {{"form": ..., "field": ...}}')
        F = fld if fld is not None else QQ
        q = parse_form(expr, F)

        def bad(message: str, **data: object) -> None:
            violations.append(
                Violation(
                    instance=i,
                    seed=ident,
                    message=message,
                    data=tuple(sorted((k, str(v)) for k, v in data.items())),
                )
            )

        try:
            dec = witt_decompose(q)
            rebuilt = dec.anisotropic_part
            for _ in range(dec.index):
                plane = QForm(F, (F.one(), F.neg(F.one())))
                rebuilt = plane if rebuilt is None else orth_sum(rebuilt, plane)
            if rebuilt is None or not is_isometric(rebuilt, q):
                bad("decomposition replay failed", form=expr, index=dec.index)
            if dec.anisotropic_part is not None and is_isotropic(dec.anisotropic_part):
                bad("claimed anisotropic kernel is isotropic", form=expr)
            if is_isotropic(q) != (witt_index(q) > 0):
                bad("isotropy disagrees with the Witt index", form=expr)
            if is_hyperbolic(q) != (2 * dec.index == q.dim):
                bad("hyperbolicity disagrees with the decomposition", form=expr)
            reread = parse_form(format_form(q), F)
            if reread.entries != normalized(q).entries:
                bad("canonical print/parse round-trip failed", form=expr, printed=format_form(q))
        except WittkitError:
            skipped += 1
            continue
        instances += 1
    return SuiteReport(
        suite="corpus",
        seed=seed,
        instances=instances,
        skipped=skipped,
        violations=tuple(violations),
        elapsed=0.0,
    )


def _cmd_verify(args: argparse.Namespace) -> int:
    field = parse_field(args.field) if args.field else None
    cfg = GenConfig(
        field=field,
        dim_min=args.dim_min,
        dim_max=args.dim_max,
        height=args.height,
        samples=args.samples,
        seed=args.seed,
    )
    suites = list(args.suites) if args.suites else list(DEFAULT_SUITES)
    reports = [run_suite(sid, cfg) for sid in suites]
    if args.corpus:
        reports.append(_corpus_report(args.corpus, field, args.seed))
    total = sum(len(r.violations) for r in reports)
    payload = {
        "verb": "verify",
        "seed": args.seed,
        "reports": [r.to_json() for r in reports],
        "violations": total,
    }
    lines = [r.summary() for r in reports]
    for r in reports:
        for v in r.violations:
            lines.append(f"  {r.suite}[{v.instance}] seed={v.seed}: {v.message}")
    lines.append("all suites passed" if total == 0 else f"{total} violation(s)")
    _emit(args, payload, lines)
    return 0 if total == 0 else 1


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 64."""

    def error(self, message: str):  # noqa: D102 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser, *, expect: bool = True, unknown_ok: bool = False) -> None:
    p.add_argument("--field", default="Q", help="field spec (default: Q)")
    p.add_argument("--json", action="store_true", help="emit a JSON document instead of text")
    if expect:
        choices = ["yes", "no", "unknown"] if unknown_ok else ["yes", "no"]
        p.add_argument(
            "--expect",
            choices=choices,
            help="exit 1 unless the verdict matches (for scripted checks)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="wittkit",
        description="Exact decision procedures for quadratic forms over Q, F_p, and their towers.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("isotropy", help="decide whether a form has a nontrivial zero")
    p.add_argument("form", help="form expression, e.g. '<1,-1,3>'")
    _add_common(p)
    p.set_defaults(handler=_cmd_isotropy)

    p = sub.add_parser("witt", help="Witt index and anisotropic kernel")
    p.add_argument("form")
    _add_common(p, expect=False)
    p.set_defaults(handler=_cmd_witt)

    p = sub.add_parser("isometric", help="decide isometry of two forms")
    p.add_argument("first")
    p.add_argument("second")
    _add_common(p)
    p.set_defaults(handler=_cmd_isometric)

    p = sub.add_parser("subform", help="decide whether the first form embeds in the second")
    p.add_argument("first", metavar="r")
    p.add_argument("second", metavar="q")
    _add_common(p)
    p.set_defaults(handler=_cmd_subform)

    p = sub.add_parser("pfister", help="recognise forms similar to a Pfister form")
    p.add_argument("form")
    _add_common(p, unknown_ok=True)
    p.set_defaults(handler=_cmd_pfister)

    p = sub.add_parser("divide", help="divide a form by a Pfister form")
    p.add_argument("--q", required=True, help="the form to divide")
    p.add_argument("--by", required=True, help="a Pfister expression pf(a,...,c)")
    _add_common(p, unknown_ok=True)
    p.set_defaults(handler=_cmd_divide)

    p = sub.add_parser("neighbor", help="recognise Pfister neighbors")
    p.add_argument("form")
    p.add_argument("--budget", type=int, default=400, help="search budget (default: 400)")
    _add_common(p, unknown_ok=True)
    p.set_defaults(handler=_cmd_neighbor)

    p = sub.add_parser("hyp-over", help="decide hyperbolicity over the function field of a quadric")
    p.add_argument("--q", required=True, help="the form tested for hyperbolicity")
    p.add_argument("--p", required=True, help="the form whose quadric defines the function field")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized search (default: 0)")
    p.add_argument("--h-budget", type=int, default=50, dest="h_budget", help="H-sample budget (default: 50)")
    p.add_argument(
        "--search-budget", type=int, default=400, dest="search_budget", help="witness search budget (default: 400)"
    )
    _add_common(p, unknown_ok=True)
    p.set_defaults(handler=_cmd_hyp_over)

    p = sub.add_parser(
        "verify",
        help="run seeded property suites against independent oracles",
        epilog="available suites:\n" + list_suites(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("suites", nargs="*", metavar="SUITE", help="suite ids (default: the standard battery)")
    p.add_argument("--samples", type=int, default=100, help="instances per suite (default: 100)")
    p.add_argument("--seed", type=int, default=0, help="base seed (default: 0)")
    p.add_argument("--dim-min", type=int, default=1, dest="dim_min")
    p.add_argument("--dim-max", type=int, default=4, dest="dim_max")
    p.add_argument("--height", type=int, default=30, help="entry height bound (default: 30)")
    p.add_argument("--field", default=None, help="restrict suites to one field spec")
    p.add_argument("--corpus", default=None, metavar="FILE", help="JSON-lines file of form expressions to replay")
    p.add_argument("--json", action="store_true", help="emit a JSON document instead of text")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("repl-free-eval", help="evaluate a form expression to canonical diagonal shape")
    p.add_argument("form")
    _add_common(p, expect=False)
    p.set_defaults(handler=_cmd_eval)

    return parser


def list_suites() -> str:
    """Formatted table of the available suites, for --help texts and docs."""
    rows = suite_catalogue()
    width = max(len(r[0]) for r in rows)
    return "\n".join(f"{ident.ljust(width)}  {summary}" for ident, summary, _ in rows)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else USAGE_ERROR
    try:
        return args.handler(args)
    except BrokenPipeError:
        return 0
    except VacuousSuite as exc:
        print(f"wittkit: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except WittkitError as exc:
        print(f"wittkit: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"wittkit: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
