"""Fields, their elements, and square-class arithmetic.

A field is described by a small frozen ``FieldDesc`` object; elements are
plain immutable data (``Fraction``, ``int``, tuples, tiny dataclasses) with
no behaviour of their own.  All arithmetic goes through the describing
field, so the same element type can serve several fields and everything
stays hashable and comparable for free.

Supported field kinds:

====================  =========================  =============================
kind                  elements                   notes
====================  =========================  =============================
``Rationals``         ``Fraction`` / ``int``     exact
``PrimeField(p)``     ``int`` in ``[0, p)``      p an odd prime
``QuadExt(base, a)``  ``(u, v)`` = u + v*sqrt a  base must be the rationals
``LaurentExt(b, x)``  ``LaurentElement``         formal Laurent *polynomials*;
                                                 ring ops only, no inversion
``RatFuncExt(b, x)``  ``RatFunc``                b rationals or a prime field
``GFExt(p, f)``       coefficient tuple          F_p[x]/(f); arises as a
                                                 residue field, not parseable
====================  =========================  =============================

Characteristic 2 is rejected everywhere.

Square classes are canonical: ``square_class`` returns a distinguished
representative element of ``a·F^×2`` and two elements are in the same class
iff their representatives are equal (``==``).  Representatives over the
rationals are square-free integers; over a Laurent extension they are
``c·x^e`` with ``e`` in {0, 1} and ``c`` a representative over the base.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import (
    FieldMismatch,
    ParseError,
    SquareArgument,
    UnsupportedField,
    UnsupportedInput,
    ZeroElement,
)

Element = Any


# ---------------------------------------------------------------------------
# integer utilities
# ---------------------------------------------------------------------------

# Deterministic Miller-Rabin witnesses for all n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Trial-division horizon for square-class reduction.  Integers whose square
# part involves a prime above this bound (and that are not caught by the
# perfect-square or residual-prime shortcuts) are refused.
TRIAL_BOUND = 100_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> dict[int, int]:
    """Factor ``|n|`` into primes, or raise :class:`UnsupportedInput`.

    Trial division up to :data:`TRIAL_BOUND`; a residual cofactor is
    accepted only if primality can be certified.
    """
    if n == 0:
        raise ZeroElement("cannot factor zero")
    n = abs(n)
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d <= TRIAL_BOUND and d * d <= n:
        for q in (d, d + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        d += 6
    if n > 1:
        if d * d > n or is_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            raise UnsupportedInput(f"cannot factor residual cofactor {n}")
    return out


@functools.lru_cache(maxsize=None)
def squarefree_part(n: int) -> int:
    """Square-free part of a nonzero integer (sign preserved).

    Only square factors need to be recognised, so slightly more survives
    the trial-division horizon than full factoring: a residual cofactor
    that is prime or a perfect square is fine; anything else is refused.
    """
    if n == 0:
        raise ZeroElement("zero has no square class")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = sign
    for p in (2, 3):
        e = 0
        while n % p == 0:
            e += 1
            n //= p
        if e % 2:
            out *= p
    d = 5
    while d <= TRIAL_BOUND and d * d <= n:
        for q in (d, d + 2):
            e = 0
            while n % q == 0:
                e += 1
                n //= q
            if e % 2:
                out *= q
        d += 6
    if n > 1:
        if d * d > n or is_prime(n):
            out *= n
        else:
            r = math.isqrt(n)
            if r * r == n:
                pass  # residual is a perfect square, contributes nothing
            else:
                raise UnsupportedInput(
                    f"cannot isolate the square part of residual cofactor {n}"
                )
    return out


def _rational_squarefree(a: Fraction | int) -> int:
    a = Fraction(a)
    return squarefree_part(a.numerator * a.denominator)


def fraction_sqrt(a: Fraction | int) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if ``a`` is not
    a square (or is negative)."""
    a = Fraction(a)
    if a < 0:
        return None
    rn = math.isqrt(a.numerator)
    rd = math.isqrt(a.denominator)
    if rn * rn == a.numerator and rd * rd == a.denominator:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# polynomials as coefficient tuples (constant term first, top coeff nonzero)
# ---------------------------------------------------------------------------

Poly = tuple  # over some base field; () is the zero polynomial


def poly_trim(F: "FieldDesc", c: Sequence[Element]) -> Poly:
    c = list(c)
    while c and F.is_zero(c[-1]):
        c.pop()
    return tuple(c)


def poly_deg(c: Poly) -> int:
    """Degree, with deg 0 = -1 by convention."""
    return len(c) - 1


def poly_add(F: "FieldDesc", a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = F.add(out[i], x)
    return poly_trim(F, out)


def poly_neg(F: "FieldDesc", a: Poly) -> Poly:
    return tuple(F.neg(x) for x in a)


def poly_sub(F: "FieldDesc", a: Poly, b: Poly) -> Poly:
    return poly_add(F, a, poly_neg(F, b))


def poly_mul(F: "FieldDesc", a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return poly_trim(F, out)


def poly_scale(F: "FieldDesc", s: Element, a: Poly) -> Poly:
    if F.is_zero(s):
        return ()
    return tuple(F.mul(s, x) for x in a)


def poly_divmod(F: "FieldDesc", a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroElement("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    binv = F.inv(b[-1])
    rem = list(a)
    quo = [F.zero()] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = F.mul(rem[i + len(b) - 1], binv)
        if F.is_zero(c):
            continue
        quo[i] = c
        for j, y in enumerate(b):
            rem[i + j] = F.sub(rem[i + j], F.mul(c, y))
    return poly_trim(F, quo), poly_trim(F, rem)


def poly_mod(F: "FieldDesc", a: Poly, b: Poly) -> Poly:
    return poly_divmod(F, a, b)[1]


def poly_gcd(F: "FieldDesc", a: Poly, b: Poly) -> Poly:
    """Monic gcd."""
    while b:
        a, b = b, poly_mod(F, a, b)
    if not a:
        return ()
    return poly_scale(F, F.inv(a[-1]), a)


def poly_ext_gcd(F: "FieldDesc", a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with g = s*a + t*b, g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = (F.one(),), ()
    t0, t1 = (), (F.one(),)
    while r1:
        q, r = poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(F, s0, poly_mul(F, q, s1))
        t0, t1 = t1, poly_sub(F, t0, poly_mul(F, q, t1))
    if not r0:
        return (), s0, t0
    c = F.inv(r0[-1])
    return poly_scale(F, c, r0), poly_scale(F, c, s0), poly_scale(F, c, t0)


def poly_deriv(F: "FieldDesc", a: Poly) -> Poly:
    return poly_trim(
        F, [F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:]
    )


def poly_eval(F: "FieldDesc", a: Poly, x: Element) -> Element:
    acc = F.zero()
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_pow_mod(F: "FieldDesc", a: Poly, n: int, m: Poly) -> Poly:
    out = (F.one(),)
    a = poly_mod(F, a, m)
    while n:
        if n & 1:
            out = poly_mod(F, poly_mul(F, out, a), m)
        a = poly_mod(F, poly_mul(F, a, a), m)
        n >>= 1
    return out


def poly_is_monic(a: Poly) -> bool:
    return bool(a) and a[-1] == 1


def _poly_pth_root(F: "FieldDesc", a: Poly, p: int) -> Poly:
    # Only called when a = h(x^p); over a prime field the coefficient-wise
    # p-th root is the identity (Frobenius fixes F_p).
    if not isinstance(F, PrimeField):
        raise UnsupportedField("p-th roots of polynomial coefficients")
    return tuple(a[i] for i in range(0, len(a), p))


def poly_squarefree_decomposition(
    F: "FieldDesc", a: Poly
) -> tuple[Element, list[tuple[Poly, int]]]:
    """Write ``a = lc * prod A_i^i`` with the ``A_i`` monic, square-free and
    pairwise coprime.  Returns ``(lc, [(A_i, i), ...])`` sorted by multiplicity.

    Works in characteristic 0 and p (Musser's loop plus the ``f' = 0``
    p-th-power descent).
    """
    if not a:
        raise ZeroElement("zero polynomial")
    lc = a[-1]
    f = poly_scale(F, F.inv(lc), a)
    parts: dict[int, Poly] = {}

    def accumulate(fac: Poly, mult: int) -> None:
        if poly_deg(fac) >= 1:
            prev = parts.get(mult)
            parts[mult] = poly_mul(F, prev, fac) if prev else fac

    def run(f: Poly, outer: int) -> None:
        if poly_deg(f) <= 0:
            return
        fp = poly_deriv(F, f)
        p = F.char
        if not fp:
            run(_poly_pth_root(F, f, p), outer * p)
            return
        g = poly_gcd(F, f, fp)
        w = poly_divmod(F, f, g)[0]
        i = 1
        while poly_deg(w) > 0:
            y = poly_gcd(F, w, g)
            fac = poly_divmod(F, w, y)[0]
            accumulate(fac, i * outer)
            w = y
            g = poly_divmod(F, g, y)[0]
            i += 1
        if poly_deg(g) > 0:
            run(_poly_pth_root(F, g, p), outer * p)

    run(f, 1)
    return lc, [(A, m) for m, A in sorted(parts.items())]


def poly_is_squarefree(F: "FieldDesc", a: Poly) -> bool:
    if not a:
        return False
    _, parts = poly_squarefree_decomposition(F, a)
    return all(m == 1 for _, m in parts)


def poly_is_irreducible(F: "PrimeField", f: Poly) -> bool:
    """Irreducibility over F_p: f has no irreducible factor of degree <= n/2,
    checked against gcd(f, x^(p^d) - x)."""
    n = poly_deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    if F.is_zero(f[0]) and n > 1:
        return False
    x = (F.zero(), F.one())
    xp = x
    for _ in range(n // 2):
        xp = poly_pow_mod(F, xp, F.p, f)
        g = poly_gcd(F, poly_sub(F, xp, x), f)
        if poly_deg(g) != 0:
            return False
    return True


def poly_format(F: "FieldDesc", a: Poly, var: str) -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if F.is_zero(c):
            continue
        cs = F.format(c)
        if i == 0:
            terms.append(cs)
            continue
        xs = var if i == 1 else f"{var}^{i}"
        if cs == "1":
            terms.append(xs)
        elif cs == "-1":
            terms.append(f"-{xs}")
        else:
            if _needs_parens(cs):
                cs = f"({cs})"
            terms.append(f"{cs}*{xs}")
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def _needs_parens(s: str) -> bool:
    return "+" in s or " " in s or "-" in s[1:]


# ---------------------------------------------------------------------------
# composite element types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentElement:
    """A Laurent polynomial ``sum coeffs[i] * x^(val+i)``.

    Canonical: ``coeffs`` is empty (the zero element) or has nonzero first
    and last entries.
    """

    val: int
    coeffs: tuple

    def __bool__(self) -> bool:
        return bool(self.coeffs)


@dataclass(frozen=True)
class RatFunc:
    """num/den as coefficient tuples; den monic and coprime to num."""

    num: tuple
    den: tuple

    def __bool__(self) -> bool:
        return bool(self.num)


# ---------------------------------------------------------------------------
# field descriptors
# ---------------------------------------------------------------------------


class FieldDesc:
    """Interpreter for one field's element arithmetic.

    Descriptors are frozen dataclasses, so they compare and hash by value;
    operations mixing elements of distinct fields must go through explicit
    maps, never through ``==`` coincidences.
    """

    char: int = 0

    # -- construction -------------------------------------------------
    def zero(self) -> Element:
        return self.from_int(0)

    def one(self) -> Element:
        return self.from_int(1)

    def from_int(self, n: int) -> Element:
        raise NotImplementedError

    # -- ring ops ------------------------------------------------------
    def add(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def neg(self, a: Element) -> Element:
        raise NotImplementedError

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def inv(self, a: Element) -> Element:
        raise NotImplementedError

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))

    def pow(self, a: Element, n: int) -> Element:
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one()
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def is_zero(self, a: Element) -> bool:
        raise NotImplementedError

    # -- squares -------------------------------------------------------
    def square_class(self, a: Element) -> Element:
        """Canonical representative of ``a`` modulo nonzero squares."""
        raise UnsupportedField(f"square classes over {self.spec_string()}")

    def is_square(self, a: Element) -> bool:
        raise UnsupportedField(f"squareness over {self.spec_string()}")

    # -- misc ------------------------------------------------------------
    def format(self, a: Element) -> str:
        raise NotImplementedError

    def spec_string(self) -> str:
        raise NotImplementedError

    def vars(self) -> frozenset[str]:
        return frozenset()


@dataclass(frozen=True)
class Rationals(FieldDesc):
    char = 0

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroElement("division by zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def square_class(self, a) -> int:
        if a == 0:
            raise ZeroElement("zero has no square class")
        return _rational_squarefree(a)

    def is_square(self, a) -> bool:
        a = Fraction(a)
        if a <= 0:
            return False
        rn = math.isqrt(a.numerator)
        rd = math.isqrt(a.denominator)
        return rn * rn == a.numerator and rd * rd == a.denominator

    def format(self, a) -> str:
        return str(a)

    def spec_string(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField(FieldDesc):
    p: int

    def __post_init__(self):
        if self.p == 2:
            raise UnsupportedField("characteristic 2 is not supported")
        if not is_prime(self.p):
            raise UnsupportedField(f"{self.p} is not prime")

    @property
    def char(self) -> int:  # type: ignore[override]
        return self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroElement("division by zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def is_square(self, a) -> bool:
        a %= self.p
        if a == 0:
            return False
        return pow(a, (self.p - 1) // 2, self.p) == 1

    def square_class(self, a) -> int:
        if a % self.p == 0:
            raise ZeroElement("zero has no square class")
        return 1 if self.is_square(a) else nonresidue(self.p)

    def format(self, a) -> str:
        return str(a % self.p)

    def spec_string(self) -> str:
        return f"F{self.p}"


@functools.cache
def nonresidue(p: int) -> int:
    """Smallest quadratic non-residue mod p."""
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise UnsupportedField("no non-residue: field too small or p = 2")


@dataclass(frozen=True)
class QuadExt(FieldDesc):
    """Q(sqrt a); elements are pairs (u, v) meaning u + v*sqrt(a)."""

    base: FieldDesc
    a: Element

    def __post_init__(self):
        if not isinstance(self.base, Rationals):
            raise UnsupportedField(
                "quadratic extensions are supported over the rationals only"
            )
        if self.base.is_zero(self.a):
            raise ZeroElement("sqrt(0) does not extend the field")
        if self.base.is_square(self.a):
            raise SquareArgument(
                f"{self.base.format(self.a)} is a square; the extension is trivial"
            )
        object.__setattr__(self, "a", Fraction(self.base.square_class(self.a)))

    def from_int(self, n: int):
        return (self.base.from_int(n), self.base.zero())

    def embed(self, u: Element):
        """Lift a base-field element."""
        return (Fraction(u), Fraction(0))

    def add(self, x, y):
        return (self.base.add(x[0], y[0]), self.base.add(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def mul(self, x, y):
        B = self.base
        u = B.add(B.mul(x[0], y[0]), B.mul(self.a, B.mul(x[1], y[1])))
        v = B.add(B.mul(x[0], y[1]), B.mul(x[1], y[0]))
        return (u, v)

    def conj(self, x):
        return (x[0], self.base.neg(x[1]))

    def norm(self, x) -> Element:
        """u^2 - a*v^2, an element of the base field."""
        B = self.base
        return B.sub(B.mul(x[0], x[0]), B.mul(self.a, B.mul(x[1], x[1])))

    def inv(self, x):
        n = self.norm(x)
        if self.base.is_zero(n):
            if self.is_zero(x):
                raise ZeroElement("division by zero")
            raise ZeroElement("element of norm zero in a field: invariant broken")
        return (self.base.div(x[0], n), self.base.neg(self.base.div(x[1], n)))

    def is_zero(self, x) -> bool:
        return self.base.is_zero(x[0]) and self.base.is_zero(x[1])

    def rational_class(self, x) -> Fraction | None:
        """Square-free rational representative of the square class of ``x``,
        when that class contains a rational number; None otherwise.

        ``u + v*sqrt(a)`` equals ``c * w^2`` with rational ``c`` iff either
        ``v = 0`` or ``mu^2 - a`` is a rational square for ``mu = u/v``: then
        ``w = r + sqrt(a)`` with ``r`` a root of ``r^2 - 2*mu*r + a`` and
        ``c = v / (2r)``.
        """
        if self.is_zero(x):
            raise ZeroElement("0 has no square class")
        u, v = Fraction(x[0]), Fraction(x[1])
        if v == 0:
            return Fraction(self.base.square_class(u))
        mu = u / v
        s = fraction_sqrt(mu * mu - self.a)
        if s is None:
            return None
        r = mu + s if mu + s != 0 else mu - s
        c = v / (2 * r)
        return Fraction(self.base.square_class(c))

    def format(self, x) -> str:
        u, v = x
        a = self.base.format(self.a)
        if self.base.is_zero(v):
            return self.base.format(u)
        vs = self.base.format(v)
        root = f"sqrt({a})"
        if vs == "1":
            vterm = root
        elif vs == "-1":
            vterm = f"-{root}"
        else:
            vterm = f"{vs}*{root}"
        if self.base.is_zero(u):
            return vterm
        sep = " - " if vterm.startswith("-") else " + "
        return self.base.format(u) + sep + (vterm[1:] if vterm.startswith("-") else vterm)

    def spec_string(self) -> str:
        return f"Q(sqrt {self.base.format(self.a)})"


@dataclass(frozen=True)
class LaurentExt(FieldDesc):
    """base((x)): formal Laurent series, represented exactly as Laurent
    polynomials.  These close under +, -, * and under everything the
    residue-based decision procedures need; inversion would require
    infinite tails and is refused."""

    base: FieldDesc
    var: str

    def __post_init__(self):
        if self.var in self.base.vars():
            raise ParseError(f"variable {self.var!r} already in use")
        if isinstance(self.base, (QuadExt, RatFuncExt)):
            raise UnsupportedField(
                f"Laurent extensions over {self.base.spec_string()}"
            )

    @property
    def char(self) -> int:  # type: ignore[override]
        return self.base.char

    def make(self, val: int, coeffs: Sequence[Element]) -> LaurentElement:
        coeffs = list(coeffs)
        while coeffs and self.base.is_zero(coeffs[0]):
            coeffs.pop(0)
            val += 1
        while coeffs and self.base.is_zero(coeffs[-1]):
            coeffs.pop()
        if not coeffs:
            return LaurentElement(0, ())
        return LaurentElement(val, tuple(coeffs))

    def monomial(self, c: Element, e: int) -> LaurentElement:
        return self.make(e, (c,))

    def from_int(self, n: int) -> LaurentElement:
        return self.make(0, (self.base.from_int(n),))

    def valuation(self, x: LaurentElement) -> int:
        if not x.coeffs:
            raise ZeroElement("zero has no valuation")
        return x.val

    def residue(self, x: LaurentElement) -> Element:
        """Leading (lowest-order) coefficient."""
        if not x.coeffs:
            raise ZeroElement("zero has no residue")
        return x.coeffs[0]

    def add(self, x, y):
        if not x.coeffs:
            return y
        if not y.coeffs:
            return x
        lo = min(x.val, y.val)
        hi = max(x.val + len(x.coeffs), y.val + len(y.coeffs))
        out = [self.base.zero()] * (hi - lo)
        for i, c in enumerate(x.coeffs):
            out[x.val - lo + i] = c
        for i, c in enumerate(y.coeffs):
            j = y.val - lo + i
            out[j] = self.base.add(out[j], c)
        return self.make(lo, out)

    def neg(self, x):
        return LaurentElement(x.val, tuple(self.base.neg(c) for c in x.coeffs))

    def mul(self, x, y):
        if not x.coeffs or not y.coeffs:
            return LaurentElement(0, ())
        return self.make(
            x.val + y.val, poly_mul(self.base, x.coeffs, y.coeffs)
        )

    def inv(self, x):
        raise UnsupportedField(
            "inversion of Laurent series (infinite expansions) is not supported"
        )

    def is_zero(self, x) -> bool:
        return not x.coeffs

    def square_class(self, x) -> LaurentElement:
        if not x.coeffs:
            raise ZeroElement("zero has no square class")
        c = self.base.square_class(x.coeffs[0])
        return LaurentElement(x.val & 1, (c,))

    def is_square(self, x) -> bool:
        # u = c*x^v*(1 + x*h); the last factor is a square by Hensel's lemma
        # (characteristic != 2), so only v mod 2 and the class of c matter.
        if not x.coeffs:
            return False
        return x.val % 2 == 0 and self.base.is_square(x.coeffs[0])

    def format(self, x) -> str:
        if not x.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(x.coeffs):
            if self.base.is_zero(c):
                continue
            e = x.val + i
            cs = self.base.format(c)
            if e == 0:
                terms.append(cs)
                continue
            xs = self.var if e == 1 else f"{self.var}^{e}"
            if cs == "1":
                terms.append(xs)
            elif cs == "-1":
                terms.append(f"-{xs}")
            else:
                if _needs_parens(cs):
                    cs = f"({cs})"
                terms.append(f"{cs}*{xs}")
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def spec_string(self) -> str:
        return f"{self.base.spec_string()}(({self.var}))"

    def vars(self) -> frozenset[str]:
        return self.base.vars() | {self.var}


@dataclass(frozen=True)
class RatFuncExt(FieldDesc):
    """base(x): rational functions in one variable."""

    base: FieldDesc
    var: str

    def __post_init__(self):
        if not isinstance(self.base, (Rationals, PrimeField)):
            raise UnsupportedField(
                "rational function fields are supported over the rationals "
                "and prime fields only"
            )

    @property
    def char(self) -> int:  # type: ignore[override]
        return self.base.char

    def make(self, num: Sequence[Element], den: Sequence[Element]) -> RatFunc:
        B = self.base
        num = poly_trim(B, num)
        den = poly_trim(B, den)
        if not den:
            raise ZeroElement("zero denominator")
        if not num:
            return RatFunc((), (B.one(),))
        g = poly_gcd(B, num, den)
        if poly_deg(g) > 0:
            num = poly_divmod(B, num, g)[0]
            den = poly_divmod(B, den, g)[0]
        c = B.inv(den[-1])
        return RatFunc(poly_scale(B, c, num), poly_scale(B, c, den))

    def from_poly(self, num: Sequence[Element]) -> RatFunc:
        return self.make(num, (self.base.one(),))

    def from_int(self, n: int) -> RatFunc:
        return self.from_poly((self.base.from_int(n),))

    def from_base(self, c: Element) -> RatFunc:
        return self.from_poly((c,))

    def gen(self) -> RatFunc:
        return self.from_poly((self.base.zero(), self.base.one()))

    def add(self, x, y):
        B = self.base
        return self.make(
            poly_add(B, poly_mul(B, x.num, y.den), poly_mul(B, y.num, x.den)),
            poly_mul(B, x.den, y.den),
        )

    def neg(self, x):
        return RatFunc(poly_neg(self.base, x.num), x.den)

    def mul(self, x, y):
        B = self.base
        return self.make(poly_mul(B, x.num, y.num), poly_mul(B, x.den, y.den))

    def inv(self, x):
        if not x.num:
            raise ZeroElement("division by zero")
        return self.make(x.den, x.num)

    def is_zero(self, x) -> bool:
        return not x.num

    def square_class(self, x) -> RatFunc:
        # num/den = num*den modulo squares; strip even multiplicities.
        if not x.num:
            raise ZeroElement("zero has no square class")
        B = self.base
        f = poly_mul(B, x.num, x.den)
        lc, parts = poly_squarefree_decomposition(B, f)
        rep = (B.square_class(lc),)
        for A, m in parts:
            if m % 2:
                rep = poly_mul(B, rep, A)
        return RatFunc(rep, (B.one(),))

    def is_square(self, x) -> bool:
        if not x.num:
            return False
        B = self.base
        f = poly_mul(B, x.num, x.den)
        lc, parts = poly_squarefree_decomposition(B, f)
        return B.is_square(lc) and all(m % 2 == 0 for _, m in parts)

    def format(self, x) -> str:
        if not x.num:
            return "0"
        ns = poly_format(self.base, x.num, self.var)
        if x.den == (self.base.one(),):
            return ns
        ds = poly_format(self.base, x.den, self.var)
        if _needs_parens(ns) or "*" in ns:
            ns = f"({ns})"
        if _needs_parens(ds) or "*" in ds or "^" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def spec_string(self) -> str:
        return f"{self.base.spec_string()}({self.var})"

    def vars(self) -> frozenset[str]:
        return self.base.vars() | {self.var}


@dataclass(frozen=True)
class GFExt(FieldDesc):
    """F_p[x]/(modulus): a finite residue field.

    Produced when a residue form is taken at a place of degree >= 2; not
    part of the input grammar.  Elements are coefficient tuples of length
    < deg(modulus).
    """

    p: int
    modulus: tuple

    def __post_init__(self):
        base = PrimeField(self.p)
        mod = poly_trim(base, self.modulus)
        if not poly_is_monic(mod):
            raise UnsupportedField("residue field modulus must be monic")
        if poly_deg(mod) < 1 or not poly_is_irreducible(base, mod):
            raise UnsupportedField("residue field modulus must be irreducible")
        object.__setattr__(self, "modulus", mod)

    @property
    def char(self) -> int:  # type: ignore[override]
        return self.p

    @property
    def base(self) -> PrimeField:
        return PrimeField(self.p)

    def order(self) -> int:
        return self.p ** poly_deg(self.modulus)

    def make(self, coeffs: Sequence[int]):
        return poly_mod(self.base, poly_trim(self.base, tuple(c % self.p for c in coeffs)), self.modulus)

    def from_int(self, n: int):
        return poly_trim(self.base, (n % self.p,))

    def add(self, a, b):
        return poly_add(self.base, a, b)

    def neg(self, a):
        return poly_neg(self.base, a)

    def mul(self, a, b):
        return poly_mod(self.base, poly_mul(self.base, a, b), self.modulus)

    def inv(self, a):
        if not a:
            raise ZeroElement("division by zero")
        g, s, _ = poly_ext_gcd(self.base, a, self.modulus)
        if poly_deg(g) != 0:
            raise ZeroElement("non-invertible residue: modulus not irreducible?")
        return poly_scale(self.base, self.base.inv(g[0]), s)

    def is_zero(self, a) -> bool:
        return not a

    def is_square(self, a) -> bool:
        if not a:
            return False
        e = self.pow(a, (self.order() - 1) // 2)
        return e == (1,)

    def square_class(self, a):
        if not a:
            raise ZeroElement("zero has no square class")
        return (1,) if self.is_square(a) else _gf_nonresidue(self)

    def format(self, a) -> str:
        return poly_format(self.base, a, "t") if a else "0"

    def spec_string(self) -> str:
        mod = poly_format(self.base, self.modulus, "t")
        return f"F{self.p}[t]/({mod})"


@functools.cache
def _gf_nonresidue(F: GFExt):
    """First non-square in base-p counting order."""
    n = poly_deg(F.modulus)
    for code in range(2, F.order()):
        digits = []
        c = code
        while c:
            digits.append(c % F.p)
            c //= F.p
        a = poly_trim(F.base, tuple(digits[:n]))
        if not F.is_square(a):
            return a
    raise UnsupportedField("no non-residue found")


QQ = Rationals()


# ---------------------------------------------------------------------------
# square-class group helpers
# ---------------------------------------------------------------------------


def same_square_class(F: FieldDesc, a: Element, b: Element) -> bool:
    return F.square_class(a) == F.square_class(b)


def s_square_classes(F: FieldDesc, S: Iterable[int]) -> list[Element]:
    """Representatives of the subgroup of square classes generated by -1 and
    the primes in ``S`` (rationals), or the full square-class group (prime
    fields)."""
    if isinstance(F, PrimeField):
        return [1, nonresidue(F.p)]
    if not isinstance(F, Rationals):
        raise UnsupportedField(
            f"square-class subgroup enumeration over {F.spec_string()}"
        )
    primes = sorted({int(p) for p in S})
    for p in primes:
        if p < 2 or not is_prime(p):
            raise UnsupportedInput(f"{p} is not prime")
    reps = [1]
    for p in primes:
        reps += [r * p for r in reps]
    return [Fraction(s * r) for s in (1, -1) for r in reps]


def support(F: FieldDesc, a: Element) -> frozenset[int]:
    """Odd primes in the square-free part of a rational number."""
    if not isinstance(F, Rationals):
        raise UnsupportedField(f"support over {F.spec_string()}")
    return _support_of_squarefree(abs(F.square_class(a)))


@functools.lru_cache(maxsize=None)
def _support_of_squarefree(sf: int) -> frozenset[int]:
    return frozenset(p for p in prime_factors(sf) if p != 2)
