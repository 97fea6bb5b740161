"""Classification of curve-like complexes as immersed-curve data.

A curve-like complex splits into connected components, each a path or a
cycle of generators; cycles are compact loops, paths are non-compact arcs
(a lone generator counts as a degenerate arc).  Components are matched
exactly -- graded isomorphism up to an overall bigrading shift and
per-generator unit rescalings -- against three stock families:

  * Rational(n): the framed zigzag arcs (closed under arrow reversal),
  * CompactC: the twelve-generator figure-eight loop,
  * TrefoilArc: the branched-dot arcs of the trefoil family and their
    reversals.

Anything else is Other with a normalized description.  The module also
checks the structural constraints satisfied by reduced cap-trivial
complexes (forbidden label powers and circle elbows) and emits schematic
SVG pictures of the train track.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import CIRCLE, DOT, format_element, path_shape
from .builtins import compact_C, q_tangle, trefoil_family
from .complexes import (
    connected_components,
    is_curve_like,
    isomorphic_up_to_shift,
    reversal,
)
from .reduction import curve_like_report

__all__ = [
    "CompactC",
    "CurveComponent",
    "CurveDecomposition",
    "NotCurveLikeError",
    "Other",
    "Rational",
    "TrefoilArc",
    "check_forbidden_configurations",
    "decompose",
    "geography_class",
    "is_theta_rational",
    "leaf_rule",
    "render_svg",
]


class NotCurveLikeError(ValueError):
    """Raised on non-curve-like input; carries the offender report."""

    def __init__(self, report):
        super().__init__(
            "not curve-like: %d generators of degree > 2, %d non-path labels"
            % (len(report.bad_generators), len(report.bad_labels))
        )
        self.report = report


@dataclass(frozen=True)
class Rational:
    """A framed zigzag arc; n is the framing of the matching builtin."""

    n: int


@dataclass(frozen=True)
class CompactC:
    """The compact loop, at bigrading shift {q} [h] from the builtin."""

    q: int
    h: int


@dataclass(frozen=True)
class TrefoilArc:
    """A branched-dot arc: the trefoil-family shape with tail framing n,
    read backwards when reversed is set."""

    n: int
    reversed: bool = False


@dataclass(frozen=True)
class Other:
    description: str


@dataclass(frozen=True)
class CurveComponent:
    kind: str  # "compact-loop" or "non-compact-arc"
    generators: tuple
    pattern: object
    piece: object  # the component as its own TypeD

    @property
    def compact(self):
        return self.kind == "compact-loop"


class CurveDecomposition:
    def __init__(self, components):
        self.components = tuple(components)

    def compacts(self):
        return [c for c in self.components if c.compact]

    def arcs(self):
        return [c for c in self.components if not c.compact]

    def __len__(self):
        return len(self.components)

    def to_json(self):
        return [
            {
                "kind": c.kind,
                "generators": list(c.generators),
                "pattern": _pattern_json(c.pattern),
            }
            for c in self.components
        ]


def _pattern_json(p):
    if isinstance(p, Rational):
        return {"family": "Rational", "n": p.n}
    if isinstance(p, CompactC):
        return {"family": "CompactC", "q": p.q, "h": p.h}
    if isinstance(p, TrefoilArc):
        return {"family": "TrefoilArc", "n": p.n, "reversed": p.reversed}
    return {"family": "Other", "description": p.description}


def _describe(piece):
    """Deterministic textual fingerprint for unmatched components."""
    kinds = []
    for _, _, lab in piece.arrows():
        shape = path_shape(lab)
        if shape is None:
            kinds.append("Id")
        else:
            kinds.append(shape[0] + ("^%d" % shape[1] if shape[1] else ""))
    kinds.sort()
    degrees = sorted(piece.undirected_degree(g) for g in piece.gen_ids())
    idems = "".join(sorted(g.idem for g in piece.generators()))
    return "%d generators [%s], degrees %s, labels %s" % (
        len(piece),
        idems,
        degrees,
        ",".join(kinds) if kinds else "none",
    )


def _match_arc(piece):
    F = piece.field
    g = len(piece)
    if g == 1:
        lone = piece.generators()[0]
        if lone.idem == DOT:
            return Rational(0)
        return Other("single circle generator: " + _describe(piece))
    for n in (g - 1, 1 - g):
        if isomorphic_up_to_shift(q_tangle(F, n), piece) is not None:
            return Rational(n)
    for n in (g - 7, 7 - g) if g >= 7 else ():
        base = trefoil_family(F, n)
        if isomorphic_up_to_shift(base, piece) is not None:
            return TrefoilArc(n)
        if isomorphic_up_to_shift(reversal(base), piece) is not None:
            return TrefoilArc(n, reversed=True)
    return Other(_describe(piece))


def _match_compact(piece):
    F = piece.field
    if len(piece) == 12:
        found = isomorphic_up_to_shift(compact_C(F), piece)
        if found is not None:
            n, m = found
            return CompactC(q=m, h=n)
    return Other(_describe(piece))


def decompose(T):
    """Split a curve-like complex into classified components."""
    report = curve_like_report(T)
    if not report.is_curve_like:
        raise NotCurveLikeError(report)
    components = []
    for piece in connected_components(T):
        leaves = [g for g in piece.gen_ids() if piece.undirected_degree(g) <= 1]
        if len(piece) > 1 and not leaves:
            kind = "compact-loop"
            pattern = _match_compact(piece)
        else:
            kind = "non-compact-arc"
            pattern = _match_arc(piece)
        components.append(
            CurveComponent(kind, tuple(piece.gen_ids()), pattern, piece)
        )
    return CurveDecomposition(components)


# ---------------------------------------------------------------------------
# structural constraints


def check_forbidden_configurations(T):
    """List the label powers and circle elbows that a reduced cap-trivial
    complex cannot contain; empty means clean.

    Banned: powered saddles G^n*S (n >= 1) in either direction, powered
    circle dots G^n*D_circle (n >= 1), powered circle round trips
    G^n*SS_circle (n >= 1), every dot round trip SS_dot, and circle
    generators whose two arrows both point in or both point out.
    """
    if not is_curve_like(T):
        raise NotCurveLikeError(curve_like_report(T))
    violations = []
    for i, j, lab in T.arrows():
        shape = path_shape(lab)
        if shape is None:
            violations.append("identity label at %s->%s" % (i, j))
            continue
        kind, power, _ = shape
        src = lab.source
        where = "%s->%s" % (i, j)
        if kind == "S" and power >= 1:
            violations.append(
                "G^%dS_%s, n >= 1 at %s" % (power, src, where)
            )
        elif kind == "D" and src == CIRCLE and power >= 1:
            violations.append("G^%dD_circle, n >= 1 at %s" % (power, where))
        elif kind == "SS" and src == CIRCLE and power >= 1:
            violations.append("G^%dSS_circle, n >= 1 at %s" % (power, where))
        elif kind == "SS" and src == DOT:
            violations.append("SS_dot power at %s" % where)
    for gid in T.gen_ids():
        if T.gen(gid).idem != CIRCLE:
            continue
        n_in, n_out = len(T.inc[gid]), len(T.out[gid])
        if n_in == 2 or n_out == 2:
            violations.append(
                "circle-elbow at %s (%d in, %d out)" % (gid, n_in, n_out)
            )
    return violations


def leaf_rule(T):
    """A reduced cap-trivial complex is a single dot generator, or carries a
    leaf attached by a dot-power edge whose opposite leaf is a dot (framed
    representatives one saddle from trivial are their twist images)."""
    if len(T) == 1:
        return T.generators()[0].idem == DOT
    leaves = [g for g in T.gen_ids() if T.undirected_degree(g) == 1]
    if len(leaves) != 2:
        return False
    def attached_by_d(gid):
        for other, lab in list(T.out[gid].items()) + list(T.inc[gid].items()):
            shape = path_shape(lab)
            if shape is not None and shape[0] == "D":
                return True
        return False
    dot_leaves = [g for g in leaves if T.gen(g).idem == DOT]
    d_leaves = [g for g in leaves if attached_by_d(g)]
    for d in d_leaves:
        others = [g for g in leaves if g != d]
        if others and T.gen(others[0]).idem == DOT:
            return True
    return False


# ---------------------------------------------------------------------------
# geography


def geography_class(T):
    """Classify the unique non-compact component of a curve-like complex:
    "Q0Arc" for the zigzag family, "TrefoilArc" for the branched family,
    otherwise "Other(<description>)"."""
    dec = decompose(T)
    arcs = dec.arcs()
    if len(arcs) != 1:
        raise ValueError(
            "geography needs exactly one non-compact component, found %d"
            % len(arcs)
        )
    pattern = arcs[0].pattern
    if isinstance(pattern, Rational):
        return "Q0Arc"
    if isinstance(pattern, TrefoilArc):
        return "TrefoilArc"
    return "Other(%s)" % pattern.description


def is_theta_rational(T):
    """Whether the unique non-compact component is a framed zigzag arc
    (any framing, up to bigrading shift)."""
    dec = decompose(T)
    arcs = dec.arcs()
    if len(arcs) != 1:
        return False
    return isinstance(arcs[0].pattern, Rational)


# ---------------------------------------------------------------------------
# pictures


_WIDTH, _HEIGHT = 420, 640
_X = {DOT: 150, CIRCLE: 270}
_PUNCTURES = ((80, 70), (340, 70), (80, 570), (340, 570))


def render_svg(T, out=None):
    """Schematic train-track picture: generators on two vertical
    parametrizing arcs, arrows as labelled segments, leaves joined to the
    punctures, the special puncture starred.  Deterministic layout."""
    report = curve_like_report(T)
    if not report.is_curve_like:
        raise NotCurveLikeError(report)
    ids = T.gen_ids()
    top, bottom = 120, _HEIGHT - 110
    step = (bottom - top) // max(len(ids) - 1, 1) if len(ids) > 1 else 0
    pos = {}
    for k, gid in enumerate(ids):
        g = T.gen(gid)
        pos[gid] = (_X[g.idem], top + k * min(step, 44))
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'viewBox="0 0 %d %d">' % (_WIDTH, _HEIGHT, _WIDTH, _HEIGHT),
        '<rect width="%d" height="%d" fill="white"/>' % (_WIDTH, _HEIGHT),
    ]
    for idem, x in sorted(_X.items()):
        lines.append(
            '<line x1="%d" y1="60" x2="%d" y2="%d" stroke="#bbbbbb" '
            'stroke-dasharray="6 4"/>' % (x, x, _HEIGHT - 60)
        )
    for k, (px, py) in enumerate(_PUNCTURES):
        lines.append(
            '<circle cx="%d" cy="%d" r="5" fill="none" stroke="black"/>'
            % (px, py)
        )
        if k == 0:
            lines.append(
                '<text x="%d" y="%d" font-size="16">*</text>' % (px - 4, py - 10)
            )
    for i, j, lab in T.arrows():
        (x1, y1), (x2, y2) = pos[i], pos[j]
        lines.append(
            '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black" '
            'marker-end="url(#tip)"/>' % (x1, y1, x2, y2)
        )
        lines.append(
            '<text x="%d" y="%d" font-size="11" fill="#444444">%s</text>'
            % ((x1 + x2) // 2 + 5, (y1 + y2) // 2 - 4, format_element(lab))
        )
    for gid in ids:
        x, y = pos[gid]
        rays = 2 - T.undirected_degree(gid)
        for r in range(max(rays, 0)):
            px, py = _PUNCTURES[r * 2]
            lines.append(
                '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="#888888"/>'
                % (x, y, px, py)
            )
    for gid in ids:
        g = T.gen(gid)
        x, y = pos[gid]
        if g.idem == DOT:
            lines.append('<circle cx="%d" cy="%d" r="4" fill="black"/>' % (x, y))
        else:
            lines.append(
                '<circle cx="%d" cy="%d" r="4" fill="white" stroke="black"/>'
                % (x, y)
            )
        lines.append(
            '<text x="%d" y="%d" font-size="10" fill="#777777">%s</text>'
            % (x + 7, y + 3, gid)
        )
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
