"""Built-in complexes.

All builtins are generated from their arrow grammar with gradings propagated
from a single anchor (never stored as literal JSON):

  * ``q_tangle(n)``: the reduced invariant of the n-framed unknot complement.
    For n = 0 a single dot generator at (0,0).  For n > 0 the zigzag
    ^{-2n}dot_{-n} --S--> circle --D--> circle --SS--> ... with n circles;
    for n < 0 the chain runs from ^1circle_0 to the dot at (-2n, -n), with
    D and SS alternating so that the arrow adjacent to the final saddle is D
    (forced by d^2 = 0); this makes q_tangle(-n) the arrow-reversed,
    grading-negated mirror of q_tangle(n).
  * ``q_infty``: a single circle generator at (0,0).
  * ``compact_C``: the 12-generator compact loop (two dotted corners joined
    by two 4-circle saddle chains); ``compact_C(q, h)`` places its first dot
    generator at (q, h).
  * ``trefoil_31_seifert``: the 11-generator reduced invariant of the
    Seifert-framed left trefoil complement.
  * ``trefoil_family(n)``: the (7+|n|)-generator framed family; n = 0 is
    ``trefoil_left_minimal``.
"""

from __future__ import annotations

from .algebra import CIRCLE, DOT
from .complexes import Generator, TypeD, from_anchors

_S = (("S", 0, 1),)
_D = (("D", 0, 1),)
_SS = (("Id", 1, 1), ("D", 0, 1))


def _chain(arrows, ids):
    """Append the alternating D, SS, D, ... arrows along consecutive ids."""
    for k in range(len(ids) - 1):
        arrows.append((ids[k], ids[k + 1], _D if k % 2 == 0 else _SS))


def _chain_to_saddle(arrows, ids):
    """Alternating D/SS arrows whose *last* arrow is D.

    Used when the chain feeds forward into a saddle: d^2 = 0 forces the
    D label onto the arrow adjacent to the S (S after SS composes to G*S).
    """
    m = len(ids)
    for k in range(m - 1):
        arrows.append((ids[k], ids[k + 1], _D if (m - k) % 2 == 0 else _SS))


def q_tangle(field, n=0):
    if n == 0:
        return TypeD(field, [Generator("b", DOT, 0, 0)])
    circles = ["c%d" % (k + 1) for k in range(abs(n))]
    gens = [("b", DOT)] + [(c, CIRCLE) for c in circles]
    arrows = []
    if n > 0:
        arrows.append(("b", circles[0], _S))
        _chain(arrows, circles)
        anchors = {"b": (-2 * n, -n)}
    else:
        _chain_to_saddle(arrows, circles)
        arrows.append((circles[-1], "b", _S))
        anchors = {circles[0]: (1, 0)}
    return from_anchors(field, gens, arrows, anchors)


def q_infty(field):
    return TypeD(field, [Generator("u", CIRCLE, 0, 0)])


def compact_C(field, qshift=0, hshift=0):
    row1 = ["c1%d" % k for k in range(1, 5)]
    row2 = ["c2%d" % k for k in range(1, 5)]
    gens = [("a1", DOT), ("a2", DOT), ("b1", DOT), ("b2", DOT)]
    gens += [(c, CIRCLE) for c in row1 + row2]
    arrows = [("a1", row1[0], _S)]
    _chain(arrows, row1)
    arrows.append((row1[-1], "b1", _S))
    arrows.append(("a1", "a2", _D))
    arrows.append(("b1", "b2", _D))
    arrows.append(("a2", row2[0], _S))
    _chain(arrows, row2)
    arrows.append((row2[-1], "b2", _S))
    return from_anchors(field, gens, arrows, {"a1": (qshift, hshift)})


def trefoil_31_seifert(field):
    left = ["c%d" % k for k in range(1, 5)]
    right = ["c%d" % k for k in range(5, 9)]
    gens = [(c, CIRCLE) for c in left] + [("m1", DOT), ("b", DOT)]
    gens += [(c, CIRCLE) for c in right] + [("m2", DOT)]
    arrows = []
    _chain(arrows, left)
    arrows.append((left[-1], "m1", _S))
    arrows.append(("b", "m1", _D))
    arrows.append(("b", right[0], _S))
    _chain(arrows, right)
    arrows.append((right[-1], "m2", _S))
    return from_anchors(field, gens, arrows, {"b": (0, 0)})


def trefoil_family(field, n=0):
    mid = ["w%d" % k for k in range(1, 5)]
    gens = [("B", DOT), ("A", DOT)] + [(w, CIRCLE) for w in mid] + [("C", DOT)]
    arrows = [("B", "A", _D), ("B", mid[0], _S)]
    _chain(arrows, mid)
    arrows.append((mid[-1], "C", _S))
    if n:
        tail = ["t%d" % (k + 1) for k in range(abs(n))]
        gens += [(t, CIRCLE) for t in tail]
        if n > 0:
            arrows.append(("A", tail[0], _S))
            _chain(arrows, tail)
        else:
            _chain_to_saddle(arrows, tail)
            arrows.append((tail[-1], "A", _S))
    return from_anchors(field, gens, arrows, {"B": (0, 0)})


def trefoil_left_minimal(field):
    return trefoil_family(field, 0)


def mirror_rational(name, field, n=0):
    """The mirror of a rational builtin, by table: only the framed unknot
    complements have tabulated mirrors (framing negates; infinity is fixed)."""
    if name == "q_infty":
        return q_infty(field)
    if name == "q_tangle":
        return q_tangle(field, -n)
    raise ValueError("mirror is only tabulated for rational builtins, not %r" % name)


BUILTIN_NAMES = (
    "q_tangle",
    "q_infty",
    "compact_C",
    "trefoil_31_seifert",
    "trefoil_left_minimal",
    "trefoil_family",
)


def make(name, field, n=0, qshift=0, hshift=0):
    if name == "q_tangle":
        return q_tangle(field, n)
    if name == "q_infty":
        return q_infty(field)
    if name == "compact_C":
        return compact_C(field, qshift, hshift)
    if name == "trefoil_31_seifert":
        return trefoil_31_seifert(field)
    if name == "trefoil_left_minimal":
        return trefoil_left_minimal(field)
    if name == "trefoil_family":
        return trefoil_family(field, n)
    raise ValueError("unknown builtin %r" % name)
