"""Cancellation and clean-up for type D structures.

``cancel_one`` removes a single unit-labelled arrow i->j by the cancellation
lemma: every remaining entry picks up the correction

    d'_kl = d_kl - multiply(d_il, multiply(u^{-1}, d_kj))

(the zig-zag k -> j, back through the inverted unit, out i -> l).

``reduce`` iterates this with a deterministic pivot order: unit entries are
scanned by (h of source, source index, target index) and cancelled one at a
time.  A lazy-deletion heap reproduces that rescan order exactly, since only
entries touched by a cancellation can change their unit status.

``cleanup`` applies the clean-up lemma: given eta of bidegree (0,0) with
eta.eta = 0 and eta.(d.eta - eta.d) = 0, the differential

    d' = d + d.eta - eta.d       (composites apply the right factor first)

is an isomorphic type D structure.  ``to_curve_like`` greedily applies
elementary (single monomial entry) clean-ups to merge or remove doubled
arrows and multi-path labels, aiming for a curve-like representative.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field as dc_field

from .algebra import (
    KIND_D,
    KIND_ID,
    KIND_S,
    element_from_json,
    format_element,
    is_unit_component,
    mono,
    multiply,
    path_shape,
    quantum_degree,
    terms_to_json,
    unit_coefficient,
)
from .complexes import TypeD, validate

DEFAULT_STEP_BUDGET = 10_000


class CancellationError(ValueError):
    pass


class CleanupError(ValueError):
    pass


@dataclass
class ReductionTrace:
    """A replayable list of reduction steps (cancellations and clean-ups)."""

    steps: list = dc_field(default_factory=list)

    def to_json(self):
        return {"steps": self.steps}

    @classmethod
    def from_json(cls, obj):
        return cls(list(obj["steps"]))

    def __len__(self):
        return len(self.steps)


def replay(T, trace):
    """Re-apply a recorded trace to T; returns the final complex."""
    cur = T
    for step in trace.steps:
        if step["op"] == "cancel":
            cur, _ = cancel_one(cur, step["from"], step["to"])
        elif step["op"] == "cleanup":
            idem = {g.id: g.idem for g in cur.generators()}
            eta = {
                (e["from"], e["to"]): element_from_json(
                    cur.field, idem[e["from"]], idem[e["to"]], e["label"]
                )
                for e in step["eta"]
            }
            cur, _ = cleanup(cur, eta)
        else:
            raise ValueError("unknown trace step %r" % step.get("op"))
    return cur


# ---------------------------------------------------------------------------
# mutable working state


class _State:
    __slots__ = ("field", "gens", "order", "out", "inc")

    def __init__(self, T):
        self.field = T.field
        self.gens = {g.id: g for g in T.generators()}
        self.order = {gid: k for k, gid in enumerate(self.gens)}
        self.out = {gid: dict(T.out[gid]) for gid in self.gens}
        self.inc = {gid: dict(T.inc[gid]) for gid in self.gens}

    def to_typed(self):
        alive = sorted(self.gens, key=self.order.__getitem__)
        arrows = []
        for i in alive:
            for j in sorted(self.out[i], key=self.order.__getitem__):
                arrows.append((i, j, self.out[i][j]))
        return TypeD(self.field, [self.gens[i] for i in alive], arrows)

    def set_entry(self, i, j, lab):
        if lab:
            self.out[i][j] = lab
            self.inc[j][i] = lab
        else:
            self.out[i].pop(j, None)
            self.inc[j].pop(i, None)

    def add_entry(self, i, j, delta):
        cur = self.out[i].get(j)
        self.set_entry(i, j, delta if cur is None else cur + delta)

    def drop_generator(self, gid):
        for k in list(self.inc[gid]):
            del self.out[k][gid]
        for l in list(self.out[gid]):
            del self.inc[l][gid]
        del self.out[gid]
        del self.inc[gid]
        del self.gens[gid]


def _cancel_in_state(state, i, j):
    """Cancel the unit arrow i->j; returns the list of modified (k, l) pairs."""
    u = state.out[i][j]
    c = unit_coefficient(u)
    gi = state.gens[i]
    uinv = mono(state.field, gi.idem, gi.idem, KIND_ID, 0, state.field.inv(c))
    ins = [(k, lab) for k, lab in state.inc[j].items() if k != i]
    outs = [(l, lab) for l, lab in state.out[i].items() if l != j]
    state.drop_generator(i)
    state.drop_generator(j)
    touched = []
    for k, bkj in ins:
        mid = multiply(uinv, bkj)
        for l, ail in outs:
            corr = multiply(ail, mid)
            if corr:
                state.add_entry(k, l, -corr)
                touched.append((k, l))
    return touched


def cancel_one(T, i, j):
    """Cancel a single arrow whose label is a unit multiple of the identity."""
    lab = T.entry(i, j)
    if lab is None:
        raise CancellationError("no arrow %s->%s to cancel" % (i, j))
    if not is_unit_component(lab):
        raise CancellationError(
            "arrow %s->%s has label %s, not a unit multiple of the identity"
            % (i, j, format_element(lab))
        )
    state = _State(T)
    _cancel_in_state(state, i, j)
    trace = ReductionTrace([{"op": "cancel", "from": i, "to": j}])
    return state.to_typed(), trace


def is_reduced(T):
    return all(not is_unit_component(lab) for _, _, lab in T.arrows())


def _reduce_in_state(state):
    """Cancel unit arrows in place until none remain; returns trace steps."""
    import heapq

    order = state.order
    heap = []
    for i in state.gens:
        hi = state.gens[i].h
        for j, lab in state.out[i].items():
            if is_unit_component(lab):
                heap.append((hi, order[i], order[j], i, j))
    heapq.heapify(heap)
    steps = []
    while heap:
        _, _, _, i, j = heapq.heappop(heap)
        if i not in state.gens or j not in state.gens:
            continue
        lab = state.out[i].get(j)
        if lab is None or not is_unit_component(lab):
            continue
        touched = _cancel_in_state(state, i, j)
        steps.append({"op": "cancel", "from": i, "to": j})
        for k, l in touched:
            lab2 = state.out.get(k, {}).get(l)
            if lab2 is not None and is_unit_component(lab2):
                heapq.heappush(heap, (state.gens[k].h, order[k], order[l], k, l))
    return steps


def reduce(T):
    """Cancel unit arrows until none remain; deterministic pivot order."""
    state = _State(T)
    steps = _reduce_in_state(state)
    return state.to_typed(), ReductionTrace(steps)


# ---------------------------------------------------------------------------
# clean-up lemma


def _compose_sparse(second, first):
    """Sparse composite: entries (i,k) = sum_j multiply(second[j,k], first[i,j])."""
    by_src = {}
    for (j, k), lab in second.items():
        by_src.setdefault(j, []).append((k, lab))
    acc = {}
    for (i, j), lab1 in first.items():
        for k, lab2 in by_src.get(j, ()):
            term = multiply(lab2, lab1)
            if not term:
                continue
            cur = acc.get((i, k))
            cur = term if cur is None else cur + term
            if cur:
                acc[(i, k)] = cur
            else:
                acc.pop((i, k), None)
    return acc


def cleanup(T, eta, check=True):
    """Apply the clean-up lemma with the morphism eta (bidegree (0,0))."""
    eta = dict(eta)
    for (i, j), lab in eta.items():
        gi, gj = T.gen(i), T.gen(j)
        if (lab.source, lab.target) != (gi.idem, gj.idem):
            raise CleanupError("eta entry %s->%s has mismatched idempotents" % (i, j))
        if gj.h != gi.h:
            raise CleanupError("eta entry %s->%s is not h-degree 0" % (i, j))
        if lab and quantum_degree(lab) + gj.q - gi.q != 0:
            raise CleanupError("eta entry %s->%s is not q-degree 0" % (i, j))
    d = {(i, j): lab for (i, j, lab) in T.arrows()}
    d_eta = _compose_sparse(d, eta)
    eta_d = _compose_sparse(eta, d)
    w = dict(d_eta)
    for key, lab in eta_d.items():
        cur = w.get(key)
        cur = -lab if cur is None else cur - lab
        if cur:
            w[key] = cur
        else:
            w.pop(key, None)
    if check:
        for key, lab in _compose_sparse(eta, eta).items():
            if lab:
                raise CleanupError("eta.eta != 0 at %s" % (key,))
        for key, lab in _compose_sparse(eta, w).items():
            if lab:
                raise CleanupError("eta.(d.eta - eta.d) != 0 at %s" % (key,))
    arrows = list(T.arrows()) + [(i, j, lab) for (i, j), lab in w.items()]
    out = TypeD(T.field, T.generators(), arrows)
    if check:
        bad = validate(out)
        if bad is not None:
            raise CleanupError("clean-up produced an invalid complex: %s" % bad)
    eta_json = [
        {"from": i, "to": j, "label": terms_to_json(lab)} for (i, j), lab in eta.items()
    ]
    return out, ReductionTrace([{"op": "cleanup", "eta": eta_json}])


# ---------------------------------------------------------------------------
# curve-like search


@dataclass
class CurveLikeReport:
    """Which generators/labels keep a complex from being curve-like."""

    is_curve_like: bool
    bad_generators: list  # (generator id, undirected degree)
    bad_labels: list  # (source, target, formatted label)

    def to_json(self):
        return {
            "is_curve_like": self.is_curve_like,
            "bad_generators": [{"id": g, "degree": d} for g, d in self.bad_generators],
            "bad_labels": [
                {"from": i, "to": j, "label": lab} for (i, j, lab) in self.bad_labels
            ],
        }


def curve_like_report(T):
    bad_gens = []
    for gid in T.gen_ids():
        deg = T.undirected_degree(gid)
        if deg > 2:
            bad_gens.append((gid, deg))
    bad_labels = []
    for i, j, lab in T.arrows():
        if path_shape(lab) is None:
            bad_labels.append((i, j, format_element(lab)))
    return CurveLikeReport(not bad_gens and not bad_labels, bad_gens, bad_labels)


def _badness(state):
    excess = 0
    for gid in state.gens:
        deg = len(state.out[gid]) + len(state.inc[gid])
        if deg > 2:
            excess += deg - 2
    n_bad = 0
    n_arrows = 0
    n_terms = 0
    for i in state.gens:
        for lab in state.out[i].values():
            n_arrows += 1
            n_terms += len(lab.terms)
            if path_shape(lab) is None:
                n_bad += 1
    return (excess, n_bad, n_arrows, n_terms)


def _fingerprint(state):
    h = hashlib.sha1()
    order = state.order
    for gid in sorted(state.gens, key=order.__getitem__):
        g = state.gens[gid]
        h.update(("g|%s|%s|%d|%d;" % (g.id, g.idem, g.q, g.h)).encode())
        for j in sorted(state.out[gid], key=order.__getitem__):
            lab = state.out[gid][j]
            terms = ",".join(
                "%s:%d:%s" % (k, gp, state.field.fmt(c)) for (k, gp, c) in lab.terms
            )
            h.update(("a|%s|%s|%s;" % (gid, j, terms)).encode())
    return h.hexdigest()


def _eta_monomials(field, src_idem, tgt_idem, qm):
    """Monomial shapes for an eta entry of quantum degree qm (<= 0)."""
    out = []
    if src_idem == tgt_idem:
        if qm <= 0 and qm % 2 == 0:
            out.append(mono(field, src_idem, tgt_idem, KIND_ID, (-qm) // 2))
            if qm <= -2:
                out.append(mono(field, src_idem, tgt_idem, KIND_D, (-qm - 2) // 2))
    else:
        if qm <= -1 and qm % 2 != 0:
            out.append(mono(field, src_idem, tgt_idem, KIND_S, (-qm - 1) // 2))
    return out


def _apply_eta_entry(state, x, z, m):
    """Apply the single-entry eta (x |-> m.z); returns an undo list."""
    undo = []
    for v in list(state.out.get(z, ())):
        delta = multiply(state.out[z][v], m)
        if delta:
            undo.append((x, v, state.out[x].get(v)))
            state.add_entry(x, v, delta)
    for u in list(state.inc.get(x, ())):
        delta = multiply(m, state.inc[x][u])
        if delta:
            undo.append((u, z, state.out[u].get(z)))
            state.add_entry(u, z, -delta)
    return undo


def _undo(state, undo):
    for i, j, old in reversed(undo):
        state.set_entry(i, j, old if old is not None else None)


def _kill_candidates(state, i, j, term):
    """Single-entry eta candidates that can remove `term` from entry (i, j).

    Yields (x, z, monomial) triples in a fixed deterministic order.
    """
    field = state.field
    order = state.order
    gi, gj = state.gens[i], state.gens[j]
    kind, gpow, coeff = term
    # (a) eta out of i into a helper z with an arrow z -> j
    for z in sorted(state.inc[j], key=order.__getitem__):
        if z == i:
            continue
        gz = state.gens[z]
        if gz.h != gi.h:
            continue
        for m in _eta_monomials(field, gi.idem, gz.idem, gi.q - gz.q):
            w = multiply(state.out[z][j], m)
            wc = dict(((k, g), c) for (k, g, c) in w.terms).get((kind, gpow))
            if wc is None:
                continue
            c = field.neg(field.div(coeff, wc))
            yield (i, z, mono(field, gi.idem, gz.idem, m.terms[0][0], m.terms[0][1], c))
    # (b) eta from a helper x (with an arrow i -> x) into j
    for x in sorted(state.out[i], key=order.__getitem__):
        if x == j:
            continue
        gx = state.gens[x]
        if gx.h != gj.h:
            continue
        for m in _eta_monomials(field, gx.idem, gj.idem, gx.q - gj.q):
            w = multiply(m, state.out[i][x])
            wc = dict(((k, g), c) for (k, g, c) in w.terms).get((kind, gpow))
            if wc is None:
                continue
            c = field.div(coeff, wc)
            yield (x, j, mono(field, gx.idem, gj.idem, m.terms[0][0], m.terms[0][1], c))


def _offending_targets(state):
    """(entry, term) pairs to attack, in a fixed order: multi-path labels
    first, then arrows incident to generators of undirected degree > 2."""
    order = state.order
    targets = []
    seen = set()
    entries = []
    for i in sorted(state.gens, key=order.__getitem__):
        for j in sorted(state.out[i], key=order.__getitem__):
            entries.append((i, j, state.out[i][j]))
    for i, j, lab in entries:
        if path_shape(lab) is None:
            for term in lab.terms:
                targets.append((i, j, term))
            seen.add((i, j))
    for gid in sorted(state.gens, key=order.__getitem__):
        if len(state.out[gid]) + len(state.inc[gid]) <= 2:
            continue
        incident = [(gid, j) for j in sorted(state.out[gid], key=order.__getitem__)]
        incident += [(k, gid) for k in sorted(state.inc[gid], key=order.__getitem__)]
        for i, j in incident:
            if (i, j) in seen:
                continue
            seen.add((i, j))
            for term in state.out[i][j].terms:
                targets.append((i, j, term))
    return targets


def to_curve_like(T, budget=None):
    """Search for a curve-like representative via elementary clean-ups.

    Returns (complex, CurveLikeReport, ReductionTrace).  The input must be
    reduced.  The search is greedy: among candidate single-entry clean-ups
    (enumerated in a fixed order) it applies the first that strictly shrinks
    the badness measure, falling back to the first sideways move to an unseen
    complex.  It stops when curve-like, out of candidates, or out of budget
    (BNC_STEP_BUDGET, default 10^4).
    """
    if not is_reduced(T):
        raise ValueError("to_curve_like needs a reduced complex; call reduce first")
    if budget is None:
        budget = int(os.environ.get("BNC_STEP_BUDGET", str(DEFAULT_STEP_BUDGET)))
    state = _State(T)
    steps = []
    seen = {_fingerprint(state)}
    for _ in range(budget):
        targets = _offending_targets(state)
        if not targets:
            break
        cur_bad = _badness(state)
        plateau = None
        accepted = False
        for i, j, term in targets:
            if state.out.get(i, {}).get(j) is None:
                continue
            cur_terms = dict(((k, g), c) for (k, g, c) in state.out[i][j].terms)
            if (term[0], term[1]) not in cur_terms:
                continue
            term = (term[0], term[1], cur_terms[(term[0], term[1])])
            for x, z, eta in _kill_candidates(state, i, j, term):
                undo = _apply_eta_entry(state, x, z, eta)
                # a clean-up that exposes a unit arrow is always progress:
                # the follow-up cancellation shrinks the complex
                exposed = any(
                    (lab := state.out.get(u, {}).get(v)) is not None
                    and is_unit_component(lab)
                    for u, v, _ in undo
                )
                bad = _badness(state)
                fp = _fingerprint(state)
                if exposed or (bad < cur_bad and fp not in seen):
                    seen.add(fp)
                    steps.append(
                        {
                            "op": "cleanup",
                            "eta": [{"from": x, "to": z, "label": terms_to_json(eta)}],
                        }
                    )
                    accepted = True
                    break
                if bad == cur_bad and fp not in seen and plateau is None:
                    plateau = (x, z, eta)
                _undo(state, undo)
            if accepted:
                break
        if accepted:
            cancelled = _reduce_in_state(state)
            if cancelled:
                steps.extend(cancelled)
                seen.add(_fingerprint(state))
            continue
        if plateau is not None:
            x, z, eta = plateau
            _apply_eta_entry(state, x, z, eta)
            seen.add(_fingerprint(state))
            steps.append(
                {"op": "cleanup", "eta": [{"from": x, "to": z, "label": terms_to_json(eta)}]}
            )
            continue
        break
    out = state.to_typed()
    return out, curve_like_report(out), ReductionTrace(steps)
