"""Scalar values: reals extended with the indeterminate I, plus the order,
threshold, and t-norm/t-conorm operations built on them.

A scalar is a + bI with I*I = I. Values are canonicalized on construction:
a coefficient of exactly 0 collapses to the plain real form, so
Scalar(3, 0) == Scalar(3) and hashes identically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, ModeMismatch, OrderUndefined, ParseError

# Absolute tolerance for the t = s tie rule in neutrosophic thresholding.
# Stored values are short decimals, so exact ties are intended ties.
TIE_TOL = 1e-9


class Scalar:
    """Immutable a + bI value."""

    __slots__ = ("real_part", "indet_coeff")

    def __init__(self, real_part=0.0, indet_coeff=0.0):
        a = float(real_part)
        b = float(indet_coeff)
        # normalize signed zeros so rendering and hashing are stable
        object.__setattr__(self, "real_part", a + 0.0 if a != 0 else 0.0)
        object.__setattr__(self, "indet_coeff", b + 0.0 if b != 0 else 0.0)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- variant predicates -------------------------------------------------
    @property
    def is_real(self):
        return self.indet_coeff == 0.0

    @property
    def is_pure_indet(self):
        """Nonzero multiple of I with no real part."""
        return self.real_part == 0.0 and self.indet_coeff != 0.0

    @property
    def is_mixed(self):
        return self.real_part != 0.0 and self.indet_coeff != 0.0

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = coerce(other)
        return Scalar(self.real_part + other.real_part,
                      self.indet_coeff + other.indet_coeff)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.real_part, -self.indet_coeff)

    def __sub__(self, other):
        return self + (-coerce(other))

    def __rsub__(self, other):
        return coerce(other) + (-self)

    def __mul__(self, other):
        other = coerce(other)
        a, b = self.real_part, self.indet_coeff
        c, d = other.real_part, other.indet_coeff
        # (a+bI)(c+dI) = ac + (ad+bc+bd)I since I*I = I
        return Scalar(a * c, a * d + b * c + b * d)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, float)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self.real_part == other.real_part
                and self.indet_coeff == other.indet_coeff)

    def __hash__(self):
        return hash((self.real_part, self.indet_coeff))

    def __repr__(self):
        return f"Scalar({render_scalar(self)!r})"

    def __str__(self):
        return render_scalar(self)


def coerce(value) -> Scalar:
    """Accept Scalar, int, or float wherever a Scalar is expected."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar value")
    if isinstance(value, (int, float)):
        return Scalar(value)
    raise TypeError(f"cannot interpret {value!r} as a scalar")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


class ValueDomain(Enum):
    """Entry domains a matrix can be declared over."""

    TRI = "tri"                  # {-1, 0, 1}
    UNIT = "unit"                # [0, 1]
    BIPOLAR = "bipolar"          # [-1, 1]
    NEUTRO_TRI = "neutro-tri"    # {-1, 0, 1, I}
    NEUTRO_UNIT = "neutro-unit"  # a + bI with a, b in [0, 1]
    STATE_TRI = "state-tri"      # {0, 1, I}
    ANY = "any"                  # unconstrained (products, sums)

    def contains(self, value: Scalar) -> bool:
        a, b = value.real_part, value.indet_coeff
        if self is ValueDomain.TRI:
            return b == 0 and a in (-1.0, 0.0, 1.0)
        if self is ValueDomain.UNIT:
            return b == 0 and 0.0 <= a <= 1.0
        if self is ValueDomain.BIPOLAR:
            return b == 0 and -1.0 <= a <= 1.0
        if self is ValueDomain.NEUTRO_TRI:
            return (b == 0 and a in (-1.0, 0.0, 1.0)) or (a == 0 and b == 1.0)
        if self is ValueDomain.NEUTRO_UNIT:
            return 0.0 <= a <= 1.0 and 0.0 <= b <= 1.0
        if self is ValueDomain.STATE_TRI:
            return (b == 0 and a in (0.0, 1.0)) or (a == 0 and b == 1.0)
        return True  # ANY

    @property
    def neutrosophic(self) -> bool:
        return self in (ValueDomain.NEUTRO_TRI, ValueDomain.NEUTRO_UNIT,
                        ValueDomain.STATE_TRI)

    @classmethod
    def parse(cls, tag: str) -> "ValueDomain":
        for member in cls:
            if member.value == tag:
                return member
        raise ParseError(f"unknown value domain {tag!r}")


# Containment lattice used to type operation results. ANY is the top.
_DOMAIN_PARENTS = {
    ValueDomain.TRI: (ValueDomain.BIPOLAR, ValueDomain.NEUTRO_TRI),
    ValueDomain.UNIT: (ValueDomain.BIPOLAR, ValueDomain.NEUTRO_UNIT),
    ValueDomain.STATE_TRI: (ValueDomain.NEUTRO_TRI, ValueDomain.NEUTRO_UNIT),
    ValueDomain.BIPOLAR: (ValueDomain.ANY,),
    ValueDomain.NEUTRO_TRI: (ValueDomain.ANY,),
    ValueDomain.NEUTRO_UNIT: (ValueDomain.ANY,),
    ValueDomain.ANY: (),
}


def _ancestors(domain):
    seen = {domain}
    frontier = [domain]
    while frontier:
        for parent in _DOMAIN_PARENTS[frontier.pop()]:
            if parent not in seen:
                seen.add(parent)
                frontier.append(parent)
    return seen


def domain_join(a: ValueDomain, b: ValueDomain) -> ValueDomain:
    """Least domain containing both operand domains (ANY if incomparable)."""
    if a is b:
        return a
    common = _ancestors(a) & _ancestors(b)
    # the common-ancestor sets of this lattice are chains, so the least
    # element is the one every other common ancestor contains
    for candidate in common:
        if all(other in _ancestors(candidate) for other in common):
            return candidate
    return ValueDomain.ANY


class OrderPolicy(Enum):
    """How a real is ordered against a pure multiple of I."""

    BOOK_DEFAULT = "book"
    INDETERMINACY_DOMINANT = "indeterminacy"

    @classmethod
    def parse(cls, tag: str) -> "OrderPolicy":
        for member in cls:
            if member.value == tag:
                return member
        raise ParseError(f"unknown order policy {tag!r}")


@dataclass(frozen=True)
class ThresholdMode:
    """Cut rule for raw activation values. kind is 'fuzzy' or 'neutrosophic';
    k is the cut constant (strict inequality, default 0)."""

    kind: str
    k: float = 0.0

    def __post_init__(self):
        if self.kind not in ("fuzzy", "neutrosophic"):
            raise ValueError(f"unknown threshold kind {self.kind!r}")

    @classmethod
    def fuzzy(cls, k=0.0):
        return cls("fuzzy", float(k))

    @classmethod
    def neutrosophic(cls, k=0.0):
        return cls("neutrosophic", float(k))


def scalar_add(a, b) -> Scalar:
    return coerce(a) + coerce(b)


def scalar_mul(a, b) -> Scalar:
    return coerce(a) * coerce(b)


def _order_pair(a: Scalar, b: Scalar, policy: OrderPolicy):
    """Return (min, max) under the policy. Raises on mixed operands."""
    if a.is_mixed or b.is_mixed:
        bad = a if a.is_mixed else b
        raise OrderUndefined(f"{render_scalar(bad)} has no defined order")
    if a == b:
        return a, a
    if a.is_real and b.is_real:
        return (a, b) if a.real_part < b.real_part else (b, a)
    if a.is_pure_indet and b.is_pure_indet:
        # both pure multiples of I: compare coefficients under either policy
        return (a, b) if a.indet_coeff < b.indet_coeff else (b, a)
    real, indet = (a, b) if a.is_real else (b, a)
    if policy is OrderPolicy.INDETERMINACY_DOMINANT:
        return indet, indet
    # BookDefault: compare magnitudes; an exact tie collapses to the
    # indeterminate value on both ends (min(n, nI) = max(n, nI) = nI).
    mr, mi = abs(real.real_part), abs(indet.indet_coeff)
    if mr == mi:
        return indet, indet
    return (real, indet) if mr < mi else (indet, real)


def scalar_min(a, b, policy: OrderPolicy = OrderPolicy.BOOK_DEFAULT) -> Scalar:
    return _order_pair(coerce(a), coerce(b), policy)[0]


def scalar_max(a, b, policy: OrderPolicy = OrderPolicy.BOOK_DEFAULT) -> Scalar:
    return _order_pair(coerce(a), coerce(b), policy)[1]


def threshold_scalar(x, mode: ThresholdMode) -> Scalar:
    """Map a raw activation value onto {0, 1, I} via the cut rules.

    Fuzzy(k) accepts reals only: 1 if x > k else 0. Neutrosophic(k) adds:
    a pure mI goes to I when m > k, else 0; a mixed t + sI follows its
    dominant coefficient (threshold t if t > s, threshold s if s > t, ties
    within TIE_TOL give I).
    """
    x = coerce(x)
    k = mode.k
    if mode.kind == "fuzzy":
        if not x.is_real:
            raise ModeMismatch(
                f"fuzzy thresholding cannot accept {render_scalar(x)}")
        return ONE if x.real_part > k else ZERO
    if x.is_real:
        return ONE if x.real_part > k else ZERO
    if x.real_part == 0.0:
        return I if x.indet_coeff > k else ZERO
    t, s = x.real_part, x.indet_coeff
    if abs(t - s) <= TIE_TOL:
        return I
    dominant = t if t > s else s
    return ONE if dominant > k else ZERO


TNORM_KINDS = ("standard", "algebraic_product", "bounded_difference",
               "drastic")
TCONORM_KINDS = ("standard", "algebraic_sum", "bounded_sum", "drastic")


def _norm_operand(x, what):
    """Validate a t-norm/t-conorm operand: a real in [0,1] or a pure
    multiple of I (treated as the indeterminate). Returns the float value,
    or None for an indeterminate operand."""
    x = coerce(x)
    if x.is_mixed:
        raise OrderUndefined(
            f"{render_scalar(x)} has no defined order for {what}")
    if x.is_pure_indet:
        if not 0.0 < x.indet_coeff <= 1.0:
            raise DomainError(
                f"{render_scalar(x)} is outside the {what} domain")
        return None
    if not 0.0 <= x.real_part <= 1.0:
        raise DomainError(f"{render_scalar(x)} is outside the {what} domain")
    return x.real_part


def tnorm(kind, a, b) -> Scalar:
    """Intersection operators on [0,1] extended with I. Every kind absorbs
    indeterminacy: the result is I whenever either operand is."""
    if kind not in TNORM_KINDS:
        raise ValueError(f"unknown t-norm kind {kind!r}")
    va = _norm_operand(a, "t-norm")
    vb = _norm_operand(b, "t-norm")
    if va is None or vb is None:
        return I
    if kind == "standard":
        return Scalar(min(va, vb))
    if kind == "algebraic_product":
        return Scalar(va * vb)
    if kind == "bounded_difference":
        return Scalar(max(0.0, va + vb - 1.0))
    # drastic: a when b = 1, b when a = 1, 0 otherwise
    if vb == 1.0:
        return Scalar(va)
    if va == 1.0:
        return Scalar(vb)
    return ZERO


def tconorm(kind, a, b) -> Scalar:
    """Union operators dual to tnorm; I absorbs here as well."""
    if kind not in TCONORM_KINDS:
        raise ValueError(f"unknown t-conorm kind {kind!r}")
    va = _norm_operand(a, "t-conorm")
    vb = _norm_operand(b, "t-conorm")
    if va is None or vb is None:
        return I
    if kind == "standard":
        return Scalar(max(va, vb))
    if kind == "algebraic_sum":
        return Scalar(va + vb - va * vb)
    if kind == "bounded_sum":
        return Scalar(min(1.0, va + vb))
    # drastic: a when b = 0, b when a = 0, 1 otherwise
    if vb == 0.0:
        return Scalar(va)
    if va == 0.0:
        return Scalar(vb)
    return ONE


_NUMBER_RE = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


def _parse_number(text, original):
    if not _NUMBER_RE.match(text):
        raise ParseError(f"bad scalar {original!r}")
    return float(text)


def _parse_coeff(coeff_txt, original):
    if coeff_txt in ("", "+"):
        return 1.0
    if coeff_txt == "-":
        return -1.0
    return _parse_number(coeff_txt, original)


def parse_scalar(text: str) -> Scalar:
    """Parse the scalar text syntax: `0.3`, `-1`, `I`, `2I`, `0.3+0.5I`,
    `7-I`, and the I-term-first form `7I-1`. Whitespace inside the token
    is ignored."""
    token = "".join(text.split())
    if not token:
        raise ParseError("empty scalar token")
    if token.count("I") > 1:
        raise ParseError(f"bad scalar {text!r}")
    if token.endswith("I"):
        body = token[:-1]
        real_txt, coeff_txt = "", body
        for pos in range(len(body) - 1, 0, -1):
            # a sign right after e/E belongs to an exponent, not a term split
            if body[pos] in "+-" and body[pos - 1] not in "eE":
                real_txt, coeff_txt = body[:pos], body[pos:]
                break
        coeff = _parse_coeff(coeff_txt, text)
        real_val = _parse_number(real_txt, text) if real_txt else 0.0
        return Scalar(real_val, coeff)
    ipos = token.find("I")
    if ipos >= 0:
        coeff = _parse_coeff(token[:ipos], text)
        rest = token[ipos + 1:]
        if not rest or rest[0] not in "+-":
            raise ParseError(f"bad scalar {text!r}")
        return Scalar(_parse_number(rest, text), coeff)
    return Scalar(_parse_number(token, text))


def _render_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def render_scalar(x) -> str:
    """Canonical text form: integral values without a decimal point, pure
    multiples of I as `nI` (coefficient 1 rendered bare), mixed values as
    `a+bI` / `a-bI`."""
    x = coerce(x)
    a, b = x.real_part, x.indet_coeff
    if b == 0.0:
        return _render_real(a)
    mag = abs(b)
    ipart = "I" if mag == 1.0 else _render_real(mag) + "I"
    if a == 0.0:
        return ipart if b > 0 else "-" + ipart
    return _render_real(a) + ("+" if b > 0 else "-") + ipart
