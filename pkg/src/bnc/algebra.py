"""Exact arithmetic in the dotted cobordism algebra of a four-ended tangle.

The underlying category has two objects -- the two crossingless resolutions,
called ``dot`` and ``circle`` here -- with a saddle S in each direction and a
dot endomorphism D at each object.  All mixed composites of S and D vanish.
Writing G for the central element SS - D, every hom-set is a free k[G]-module
with basis {Id, D} (endomorphisms) or {S} (between distinct objects), and
composition is determined by

    D.D = -G.D        S.S = G.Id + D        D.S = S.D = 0.

Elements are stored per (source, target) pair in the canonical basis
{G^n.Id, G^n.D, G^n.S}.  Coefficients live in an exact field: a prime field
F_p or the rationals.  The quantum grading is q(G) = -2, q(D) = -2,
q(S) = -1; homological gradings of algebra elements are identically zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DOT = "dot"
CIRCLE = "circle"
IDEMPOTENTS = (DOT, CIRCLE)

KIND_ID = "Id"
KIND_D = "D"
KIND_S = "S"
_KIND_ORDER = {KIND_ID: 0, KIND_D: 1, KIND_S: 2}


class AlgebraError(ValueError):
    pass


class CompositionError(AlgebraError):
    """Sources/targets (or coefficient fields) do not line up."""


class InhomogeneousError(AlgebraError):
    """A mixed-degree element was asked for its quantum degree."""


class UndefinedDegreeError(AlgebraError):
    """The zero element was asked for its quantum degree."""


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Interface for exact coefficient fields."""

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def coerce(self, value):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def parse(self, text):
        raise NotImplementedError

    def fmt(self, a):
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError("field order must be a prime, got %r" % (self.p,))

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def coerce(self, value):
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError("F_%d coefficient must be an int, got %r" % (self.p, value))
        return value % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return pow(a, self.p - 2, self.p)

    def parse(self, text):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(self.from_int(int(num)), self.from_int(int(den)))
        return self.from_int(int(text))

    def fmt(self, a):
        return str(a % self.p)

    def to_json(self):
        return {"type": "Fp", "p": self.p}

    def __str__(self):
        return "F%d" % self.p


@dataclass(frozen=True)
class Rationals(Field):
    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, value):
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / Fraction(a)

    def parse(self, text):
        return Fraction(text.strip())

    def fmt(self, a):
        return str(a)

    def to_json(self):
        return {"type": "Q"}

    def __str__(self):
        return "Q"


F2 = PrimeField(2)


def field_from_json(obj):
    kind = obj.get("type")
    if kind == "Fp":
        return PrimeField(int(obj["p"]))
    if kind == "Q":
        return Rationals()
    raise ValueError("unknown field spec %r" % (obj,))


def parse_field_spec(text):
    """Parse a command-line field spec: ``q`` or ``fp:<prime>``."""
    t = text.strip().lower()
    if t == "q":
        return Rationals()
    if t.startswith("fp:"):
        return PrimeField(int(t[3:]))
    raise ValueError("bad field spec %r (expected q or fp:<prime>)" % text)


@dataclass(frozen=True)
class AlgebraElement:
    """A hom-set element, canonically sorted, with no zero terms.

    ``terms`` is a tuple of (kind, gpow, coeff) triples ordered by
    (kind, gpow).  Use :func:`element` / :func:`mono` to build values;
    the raw constructor performs no normalization.
    """

    field: Field
    source: str
    target: str
    terms: tuple

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if (self.field, self.source, self.target) != (other.field, other.source, other.target):
            raise CompositionError(
                "cannot add %s->%s element to %s->%s element"
                % (self.source, self.target, other.source, other.target)
            )
        acc = {(k, g): c for (k, g, c) in self.terms}
        F = self.field
        for k, g, c in other.terms:
            acc[(k, g)] = F.add(acc.get((k, g), F.zero()), c)
        return _from_acc(F, self.source, self.target, acc)

    def __neg__(self):
        F = self.field
        return AlgebraElement(
            F, self.source, self.target, tuple((k, g, F.neg(c)) for (k, g, c) in self.terms)
        )

    def __sub__(self, other):
        return self + (-other)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return "<%s->%s: %s>" % (self.source, self.target, format_element(self))


def _from_acc(field, source, target, acc):
    zero = field.zero()
    terms = tuple(
        (k, g, c)
        for (k, g), c in sorted(acc.items(), key=lambda kv: (_KIND_ORDER[kv[0][0]], kv[0][1]))
        if c != zero
    )
    return AlgebraElement(field, source, target, terms)


def element(field, source, target, terms):
    """Normalize (kind, gpow, coeff) triples into an AlgebraElement.

    Integer coefficients are coerced into the field.  Kind/idempotent
    compatibility is enforced: Id and D need source == target, S needs
    source != target.
    """
    if source not in IDEMPOTENTS or target not in IDEMPOTENTS:
        raise CompositionError("unknown idempotent in (%r, %r)" % (source, target))
    acc = {}
    for kind, gpow, coeff in terms:
        if kind not in _KIND_ORDER:
            raise AlgebraError("unknown basis kind %r" % (kind,))
        if not isinstance(gpow, int) or gpow < 0:
            raise AlgebraError("gpow must be a nonnegative int, got %r" % (gpow,))
        if kind == KIND_S:
            if source == target:
                raise CompositionError("S is not an endomorphism (source == target == %s)" % source)
        elif source != target:
            raise CompositionError("%s needs source == target, got %s->%s" % (kind, source, target))
        c = field.coerce(coeff)
        key = (kind, gpow)
        acc[key] = field.add(acc.get(key, field.zero()), c)
    return _from_acc(field, source, target, acc)


def mono(field, source, target, kind, gpow=0, coeff=1):
    return element(field, source, target, [(kind, gpow, coeff)])


def zero(field, source, target):
    return AlgebraElement(field, source, target, ())


def unit(field, idem):
    return mono(field, idem, idem, KIND_ID, 0, 1)


def scale(coeff, a):
    F = a.field
    c = F.coerce(coeff)
    if c == F.zero():
        return zero(F, a.source, a.target)
    return AlgebraElement(F, a.source, a.target, tuple((k, g, F.mul(c, x)) for (k, g, x) in a.terms))


# Composites of basis kinds, (second, first) -> [(kind, extra_gpow, int_sign)].
_COMPOSE = {
    (KIND_ID, KIND_ID): [(KIND_ID, 0, 1)],
    (KIND_ID, KIND_D): [(KIND_D, 0, 1)],
    (KIND_ID, KIND_S): [(KIND_S, 0, 1)],
    (KIND_D, KIND_ID): [(KIND_D, 0, 1)],
    (KIND_S, KIND_ID): [(KIND_S, 0, 1)],
    (KIND_D, KIND_D): [(KIND_D, 1, -1)],
    (KIND_S, KIND_S): [(KIND_ID, 1, 1), (KIND_D, 0, 1)],
    (KIND_D, KIND_S): [],
    (KIND_S, KIND_D): [],
}


def multiply(a, b):
    """Compose a after b (paths concatenate right to left).

    Requires target(b) == source(a); the result runs source(b) -> target(a).
    """
    if a.field != b.field:
        raise CompositionError("mismatched coefficient fields %s vs %s" % (a.field, b.field))
    if b.target != a.source:
        raise CompositionError(
            "cannot compose: first factor ends at %s, second starts at %s" % (b.target, a.source)
        )
    F = a.field
    acc = {}
    for k2, g2, c2 in a.terms:
        for k1, g1, c1 in b.terms:
            base = F.mul(c2, c1)
            for kind, dg, sign in _COMPOSE[(k2, k1)]:
                c = base if sign == 1 else F.neg(base)
                key = (kind, g1 + g2 + dg)
                acc[key] = F.add(acc.get(key, F.zero()), c)
    return _from_acc(F, b.source, a.target, acc)


_KIND_Q = {KIND_ID: 0, KIND_D: -2, KIND_S: -1}


def monomial_q(kind, gpow):
    return -2 * gpow + _KIND_Q[kind]


def quantum_degree(a):
    """The common quantum degree of all terms of a nonzero element."""
    if not a.terms:
        raise UndefinedDegreeError("the zero element has no quantum degree")
    degs = sorted({monomial_q(k, g) for (k, g, _) in a.terms})
    if len(degs) > 1:
        raise InhomogeneousError("inhomogeneous element with term degrees %s" % (degs,))
    return degs[0]


def term_degrees(a):
    """Per-term quantum degrees (for inspecting mixed elements)."""
    return sorted({monomial_q(k, g) for (k, g, _) in a.terms})


def is_homogeneous(a):
    return len({monomial_q(k, g) for (k, g, _) in a.terms}) <= 1


def project_B0(a):
    """Project to the quotient by (G): keep only gpow-0 terms."""
    return AlgebraElement(a.field, a.source, a.target, tuple(t for t in a.terms if t[1] == 0))


def is_unit_component(a):
    """True iff the element is a nonzero scalar multiple of the identity."""
    return (
        len(a.terms) == 1
        and a.terms[0][0] == KIND_ID
        and a.terms[0][1] == 0
    )


def unit_coefficient(a):
    """The scalar c when a == c * Id, else None."""
    if is_unit_component(a):
        return a.terms[0][2]
    return None


def path_shape(a):
    """Classify a label as a scalar multiple of a single path power.

    Returns ("S", n, c) for c*G^n*S (an odd saddle power), ("D", n, c) for
    c*G^n*D (a dot power up to sign), ("SS", n, c) for
    c*(G^(n+1)*Id + G^n*D) (an even saddle power), or None otherwise.
    A lone c*G^n*Id is not a path power and yields None.
    """
    ts = a.terms
    if len(ts) == 1:
        k, g, c = ts[0]
        if k == KIND_S:
            return ("S", g, c)
        if k == KIND_D:
            return ("D", g, c)
        return None
    if len(ts) == 2:
        (k1, g1, c1), (k2, g2, c2) = ts
        if k1 == KIND_ID and k2 == KIND_D and g1 == g2 + 1 and c1 == c2:
            return ("SS", g2, c1)
    return None


def scalar_ratio(a, b):
    """The scalar c with a == c * b, or None if no such scalar exists."""
    if (a.source, a.target) != (b.source, b.target):
        return None
    if len(a.terms) != len(b.terms):
        return None
    if not a.terms:
        return a.field.one()
    F = a.field
    ratio = None
    for (k1, g1, c1), (k2, g2, c2) in zip(a.terms, b.terms):
        if (k1, g1) != (k2, g2):
            return None
        r = F.div(c1, c2)
        if ratio is None:
            ratio = r
        elif r != ratio:
            return None
    return ratio


def format_element(a):
    if not a.terms:
        return "0"
    F = a.field
    one = F.one()
    minus_one = F.neg(one)
    bits = []
    for k, g, c in a.terms:
        gbit = "" if g == 0 else ("G" if g == 1 else "G^%d" % g)
        name = "1" if k == KIND_ID else k
        if gbit:
            body = gbit if (k == KIND_ID) else gbit + "*" + name
        else:
            body = name
        if c == one:
            piece = body
        elif c == minus_one and str(F) != "F2":
            piece = "-" + body
        else:
            piece = "%s*%s" % (F.fmt(c), body)
        bits.append(piece)
    out = bits[0]
    for piece in bits[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


def terms_to_json(a):
    return [{"kind": k, "gpow": g, "coeff": a.field.fmt(c)} for (k, g, c) in a.terms]


def element_from_json(field, source, target, items):
    return element(
        field,
        source,
        target,
        [(it["kind"], int(it["gpow"]), field.parse(str(it["coeff"]))) for it in items],
    )
