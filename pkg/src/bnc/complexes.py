"""Bigraded type D structures over the two-object dotted cobordism algebra.

A type D structure is a finite set of idempotent-labelled bigraded generators
together with a differential d(x_i) = sum_j d_ij (x) x_j whose entries live in
the hom-sets of the algebra.  Structural invariants:

  * label idempotents match the endpoint generators,
  * h(x_j) = h(x_i) + 1 along every arrow,
  * q(d_ij) + q(x_j) - q(x_i) = 0 (labels quantum-homogeneous),
  * d^2 = 0, where (d^2)_ik = sum_j multiply(d_jk, d_ij).

TypeD values are treated as immutable; all operations return new objects.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .algebra import (
    DOT,
    IDEMPOTENTS,
    InhomogeneousError,
    element,
    format_element,
    multiply,
    path_shape,
    quantum_degree,
    scalar_ratio,
)


@dataclass(frozen=True)
class Generator:
    id: str
    idem: str
    q: int
    h: int


class TypeD:
    """A bigraded type D structure.  Construction accumulates parallel arrows."""

    def __init__(self, field, generators, arrows=()):
        self.field = field
        self._gens = {}
        for g in generators:
            if g.id in self._gens:
                raise ValueError("duplicate generator id %r" % g.id)
            if g.idem not in IDEMPOTENTS:
                raise ValueError("generator %r has unknown idempotent %r" % (g.id, g.idem))
            self._gens[g.id] = g
        self.out = {gid: {} for gid in self._gens}
        self.inc = {gid: {} for gid in self._gens}
        for i, j, lab in arrows:
            if i not in self._gens or j not in self._gens:
                raise ValueError("arrow endpoints (%r, %r) missing from generator set" % (i, j))
            if lab.field != field:
                raise ValueError("arrow %r->%r label uses a different field" % (i, j))
            cur = self.out[i].get(j)
            lab = lab if cur is None else cur + lab
            if lab:
                self.out[i][j] = lab
                self.inc[j][i] = lab
            elif cur is not None:
                del self.out[i][j]
                del self.inc[j][i]

    # -- accessors ---------------------------------------------------------

    def generators(self):
        return list(self._gens.values())

    def gen_ids(self):
        return list(self._gens)

    def gen(self, gid):
        return self._gens[gid]

    def __len__(self):
        return len(self._gens)

    def arrows(self):
        """All (source, target, label) triples, in insertion-index order."""
        idx = {gid: k for k, gid in enumerate(self._gens)}
        out = []
        for i in self._gens:
            for j in sorted(self.out[i], key=idx.__getitem__):
                out.append((i, j, self.out[i][j]))
        return out

    def entry(self, i, j):
        return self.out[i].get(j)

    def undirected_degree(self, gid):
        return len(self.out[gid]) + len(self.inc[gid])

    def __eq__(self, other):
        if not isinstance(other, TypeD):
            return NotImplemented
        return (
            self.field == other.field
            and list(self._gens.values()) == list(other._gens.values())
            and self.out == other.out
        )

    def __repr__(self):
        return "<TypeD %d generators, %d arrows over %s>" % (
            len(self._gens),
            sum(len(v) for v in self.out.values()),
            self.field,
        )


def validate(T):
    """Return None if all invariants hold, else a string naming the first
    violated invariant with its coordinates."""
    for i, j, lab in T.arrows():
        gi, gj = T.gen(i), T.gen(j)
        if (lab.source, lab.target) != (gi.idem, gj.idem):
            return "arrow %s->%s: label runs %s->%s but generators are %s->%s" % (
                i, j, lab.source, lab.target, gi.idem, gj.idem,
            )
    for i, j, lab in T.arrows():
        gi, gj = T.gen(i), T.gen(j)
        if gj.h != gi.h + 1:
            return "arrow %s->%s: homological grading %d -> %d is not a +1 step" % (
                i, j, gi.h, gj.h,
            )
    for i, j, lab in T.arrows():
        gi, gj = T.gen(i), T.gen(j)
        try:
            qd = quantum_degree(lab)
        except InhomogeneousError:
            return "arrow %s->%s: label %s is not quantum-homogeneous" % (
                i, j, format_element(lab),
            )
        if qd + gj.q - gi.q != 0:
            return "arrow %s->%s: quantum gradings %d -> %d mismatch label degree %d" % (
                i, j, gi.q, gj.q, qd,
            )
    idx = {gid: k for k, gid in enumerate(T.gen_ids())}
    for i in T.gen_ids():
        acc = {}
        for j, lab_ij in T.out[i].items():
            for k, lab_jk in T.out[j].items():
                term = multiply(lab_jk, lab_ij)
                if not term:
                    continue
                cur = acc.get(k)
                acc[k] = term if cur is None else cur + term
        for k in sorted(acc, key=idx.__getitem__):
            if acc[k]:
                return "d^2 != 0 from %s to %s: %s" % (i, k, format_element(acc[k]))
    return None


def direct_sum(A, B):
    if A.field != B.field:
        raise ValueError("cannot sum complexes over different fields")
    gens = A.generators()
    taken = {g.id for g in gens}
    rename = {}
    for g in B.generators():
        nid = g.id
        while nid in taken:
            nid += "'"
        rename[g.id] = nid
        taken.add(nid)
        gens.append(Generator(nid, g.idem, g.q, g.h))
    arrows = A.arrows() + [(rename[i], rename[j], lab) for (i, j, lab) in B.arrows()]
    return TypeD(A.field, gens, arrows)


def shift(T, n, m):
    """T[n]{m}: add n to homological and m to quantum gradings."""
    gens = [Generator(g.id, g.idem, g.q + m, g.h + n) for g in T.generators()]
    return TypeD(T.field, gens, T.arrows())


def is_curve_like(T):
    """Degree <= 2 everywhere and every label a single path power."""
    for gid in T.gen_ids():
        if T.undirected_degree(gid) > 2:
            return False
    for _, _, lab in T.arrows():
        if path_shape(lab) is None:
            return False
    return True


def restrict_D_dot_zero(T):
    """Delete every arrow labelled by a multiple of G^n*D at the dot object.

    Input must be curve-like (the splitting theorem's hypothesis).
    """
    if not is_curve_like(T):
        raise ValueError("restrict_D_dot_zero needs a curve-like input")
    arrows = []
    for i, j, lab in T.arrows():
        shape = path_shape(lab)
        if shape is not None and shape[0] == "D" and lab.source == DOT:
            continue
        arrows.append((i, j, lab))
    return TypeD(T.field, T.generators(), arrows)


def connected_components(T):
    """Split into connected components of the undirected arrow graph,
    ordered by first appearance of a member generator."""
    ids = T.gen_ids()
    parent = {gid: gid for gid in ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _ in T.arrows():
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups = {}
    for gid in ids:
        groups.setdefault(find(gid), []).append(gid)
    comps = sorted(groups.values(), key=lambda members: ids.index(members[0]))
    out = []
    for members in comps:
        mset = set(members)
        gens = [T.gen(gid) for gid in members]
        arrows = [(i, j, lab) for (i, j, lab) in T.arrows() if i in mset]
        out.append(TypeD(T.field, gens, arrows))
    return out


def from_anchors(field, gens, arrows, anchors):
    """Build a TypeD from idempotent data plus anchor gradings.

    ``gens`` is a list of (id, idem) pairs, ``arrows`` a list of
    (src, tgt, label) where label is an AlgebraElement or a list of
    (kind, gpow, coeff) triples, and ``anchors`` maps at least one generator
    per connected component to its (q, h).  The remaining gradings are
    recovered by homogeneity propagation; contradictions raise ValueError.
    """
    idem = dict(gens)
    labels = {}
    for i, j, lab in arrows:
        if not hasattr(lab, "terms"):
            lab = element(field, idem[i], idem[j], lab)
        labels[(i, j)] = lab
    known = {gid: (int(q), int(h)) for gid, (q, h) in anchors.items()}
    adj = {gid: [] for gid, _ in gens}
    for (i, j), lab in labels.items():
        qd = quantum_degree(lab)
        adj[i].append((j, -qd, 1))
        adj[j].append((i, qd, -1))
    queue = list(known)
    while queue:
        cur = queue.pop()
        q0, h0 = known[cur]
        for other, dq, dh in adj[cur]:
            cand = (q0 + dq, h0 + dh)
            if other in known:
                if known[other] != cand:
                    raise ValueError(
                        "grading propagation conflict at %r: %r vs %r"
                        % (other, known[other], cand)
                    )
            else:
                known[other] = cand
                queue.append(other)
    missing = [gid for gid, _ in gens if gid not in known]
    if missing:
        raise ValueError("no anchor reaches generators %s" % (missing,))
    gen_objs = [Generator(gid, gidem, known[gid][0], known[gid][1]) for gid, gidem in gens]
    return TypeD(field, gen_objs, [(i, j, lab) for (i, j), lab in labels.items()])


def reversal(T):
    """Reverse all arrows, negate both gradings, transpose the labels.

    Hom-set composition expands with the same coefficients in either order,
    so the reversed data is again a valid structure.  On the rational
    builtins this flips the framing sign.
    """
    gens = [Generator(g.id, g.idem, -g.q, -g.h) for g in T.generators()]
    arrows = [
        (j, i, element(T.field, lab.target, lab.source, lab.terms))
        for (i, j, lab) in T.arrows()
    ]
    return TypeD(T.field, gens, arrows)


def _bfs_order(T):
    """Generators ordered so each one after a component root touches an
    earlier one; roots are queued in insertion order."""
    seen = set()
    order = []
    for root in T.gen_ids():
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            gid = queue.pop(0)
            order.append(gid)
            for nxt in list(T.out[gid]) + list(T.inc[gid]):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return order


def isomorphic_by_rescaling(A, B):
    """A generator bijection phi with lab_B(phi i, phi j) equal to
    (u_j / u_i) * lab_A(i, j) for unit rescalings u, or None.

    This is the right notion of "same complex" for curve comparison: a
    diagonal change of basis x_i -> u_i * y_phi(i) preserving gradings.
    """
    if A.field != B.field or len(A) != len(B):
        return None
    if graded_counts(A) != graded_counts(B):
        return None
    n_arrows_a = sum(len(v) for v in A.out.values())
    n_arrows_b = sum(len(v) for v in B.out.values())
    if n_arrows_a != n_arrows_b:
        return None
    F = A.field
    classes = {}
    for g in B.generators():
        classes.setdefault((g.idem, g.q, g.h), []).append(g.id)
    order = _bfs_order(A)

    def compatible(i, y, phi, scale_of):
        """Extend scale_of[i] (or check it) against arrows into the match."""
        u_i = scale_of.get(i)
        pairs = [(j, lab, True) for j, lab in A.out[i].items()]
        pairs += [(j, lab, False) for j, lab in A.inc[i].items()]
        for j, mine, outward in pairs:
            if j not in phi:
                continue
            other = B.out[y].get(phi[j]) if outward else B.inc[y].get(phi[j])
            if other is None:
                return None
            # lab_B = (u_tgt / u_src) * lab_A with (src, tgt) oriented
            ratio = scalar_ratio(other, mine)
            if ratio is None:
                return None
            u_j = scale_of[j]
            want = F.div(u_j, ratio) if outward else F.mul(u_j, ratio)
            if u_i is None:
                u_i = want
            elif u_i != want:
                return None
        # arrows of B at y touching matched generators must all be images
        matched = set(phi.values())
        for z in list(B.out[y]) + list(B.inc[y]):
            if z in matched:
                j = next(k for k, v in phi.items() if v == z)
                if z in B.out[y] and j not in A.out[i]:
                    return None
                if z in B.inc[y] and j not in A.inc[i]:
                    return None
        return u_i if u_i is not None else F.one()

    def solve(pos, phi, used, scale_of):
        if pos == len(order):
            return dict(phi)
        i = order[pos]
        g = A.gen(i)
        for y in classes[(g.idem, g.q, g.h)]:
            if y in used:
                continue
            if A.undirected_degree(i) != B.undirected_degree(y):
                continue
            u = compatible(i, y, phi, scale_of)
            if u is None:
                continue
            phi[i] = y
            used.add(y)
            scale_of[i] = u
            found = solve(pos + 1, phi, used, scale_of)
            if found is not None:
                return found
            del phi[i]
            used.discard(y)
            del scale_of[i]
        return None

    return solve(0, {}, set(), {})


def isomorphic_up_to_shift(A, B):
    """The bigrading shift (n, m) with shift(A, n, m) matching B under
    isomorphic_by_rescaling, or None.  Shifts follow shift()'s convention:
    n homological, m quantum."""
    if len(A) != len(B) or len(A) == 0:
        return None
    key_a = sorted((g.idem, g.h, g.q) for g in A.generators())
    key_b = sorted((g.idem, g.h, g.q) for g in B.generators())
    if key_a[0][0] != key_b[0][0]:
        return None
    n = key_b[0][1] - key_a[0][1]
    m = key_b[0][2] - key_a[0][2]
    if [(i, h + n, q + m) for (i, h, q) in key_a] != key_b:
        return None
    if isomorphic_by_rescaling(shift(A, n, m), B) is None:
        return None
    return (n, m)


def graded_counts(T):
    """Counter of generators per (idempotent, q, h)."""
    return Counter((g.idem, g.q, g.h) for g in T.generators())


def counts_by_idem(T):
    return Counter(g.idem for g in T.generators())
