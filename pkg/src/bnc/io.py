"""JSON and plain-text serialization of type D structures.

The JSON schema:

    {"field": {"type": "Fp", "p": 2} | {"type": "Q"},
     "generators": [{"id": "a", "idem": "dot", "q": -4, "h": -2}, ...],
     "differential": [{"from": "a", "to": "b",
                       "label": [{"kind": "S", "gpow": 0, "coeff": "1"}]}, ...]}

Coefficients are decimal strings ("-3") or "a/b" for rationals.  Output order
is deterministic (generators in insertion order, arrows by index pairs), so
serialization round-trips are byte-identical.
"""

from __future__ import annotations

import json

from .algebra import element_from_json, field_from_json, format_element, terms_to_json
from .complexes import Generator, TypeD


def to_json(T):
    return {
        "field": T.field.to_json(),
        "generators": [
            {"id": g.id, "idem": g.idem, "q": g.q, "h": g.h} for g in T.generators()
        ],
        "differential": [
            {"from": i, "to": j, "label": terms_to_json(lab)} for (i, j, lab) in T.arrows()
        ],
    }


def from_json(obj):
    field = field_from_json(obj["field"])
    gens = [
        Generator(str(d["id"]), str(d["idem"]), int(d["q"]), int(d["h"]))
        for d in obj["generators"]
    ]
    idem = {g.id: g.idem for g in gens}
    arrows = []
    for d in obj.get("differential", ()):
        i, j = str(d["from"]), str(d["to"])
        if i not in idem or j not in idem:
            raise ValueError("differential references unknown generator (%r, %r)" % (i, j))
        arrows.append((i, j, element_from_json(field, idem[i], idem[j], d["label"])))
    return TypeD(field, gens, arrows)


def dumps(T):
    return json.dumps(to_json(T), indent=2) + "\n"


def loads(text):
    return from_json(json.loads(text))


def save(T, path):
    with open(path, "w") as fh:
        fh.write(dumps(T))


def load(path):
    with open(path) as fh:
        return loads(fh.read())


def to_text(T):
    """Aligned human-readable rendering (for --text)."""
    lines = ["type D structure over %s: %d generators" % (T.field, len(T))]
    gens = T.generators()
    if gens:
        wid = max(len(g.id) for g in gens)
        for g in gens:
            lines.append("  %-*s  %-6s  q=%d h=%d" % (wid, g.id, g.idem, g.q, g.h))
    arrows = T.arrows()
    if arrows:
        lines.append("differential:")
        wid = max(len(i) for i, _, _ in arrows)
        for i, j, lab in arrows:
            lines.append("  %-*s --[%s]--> %s" % (wid, i, format_element(lab), j))
    return "\n".join(lines) + "\n"
