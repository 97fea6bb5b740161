import sys

sys.path.insert(0, "src")

from bnc.algebra import F2, PrimeField, Rationals, element, format_element, multiply
from bnc.complexes import Generator, TypeD, validate, connected_components
from bnc.cabling import cable, operator_table, iterate_cable, UnsupportedLabelError
from bnc.builtins import q_tangle, q_infty, trefoil_31_seifert, trefoil_family
from bnc.reduction import reduce, to_curve_like, curve_like_report

Q = Rationals()


def show(T, title):
    print("==", title, f"({len(T)} gens)")
    for g in T.generators():
        print("   gen %-14s %s q=%d h=%d" % (g.id, g.idem, g.q, g.h))
    for i, j, lab in T.arrows():
        print("   %-14s -> %-14s : %s" % (i, j, format_element(lab)))


# table builds + certifies for Q, F2, F5
for fld in (Q, F2, PrimeField(5)):
    tab = operator_table(fld)
    print("table ok for", fld)

# worked example 1: cable of a single dot
dot = TypeD(Q, [Generator("x", "dot", 0, 0)], [])
C1 = cable(dot)
assert len(C1) == 13
assert validate(C1) is None
R1, tr1 = reduce(C1)
show(R1, "reduce(cable(dot))")
assert validate(R1) is None

# worked example 2: cable of a single circle
circ = TypeD(Q, [Generator("u", "circle", 0, 0)], [])
C2 = cable(circ)
assert len(C2) == 12
assert validate(C2) is None
R2, tr2 = reduce(C2)
show(R2, "reduce(cable(circle))")
assert validate(R2) is None
T2, rep2, trc = to_curve_like(R2)
print("curve-like:", rep2.is_curve_like, "steps:", len(trc))
comps = connected_components(T2)
print("components:", [sorted(c.gen_ids()) for c in comps])

# cable respects validity on all builtins
for name, T in [
    ("q0", q_tangle(Q, 0)),
    ("q1", q_tangle(Q, 1)),
    ("q-1", q_tangle(Q, -1)),
    ("q2", q_tangle(Q, 2)),
    ("q-2", q_tangle(Q, -2)),
    ("q3", q_tangle(Q, 3)),
    ("q-3", q_tangle(Q, -3)),
    ("qinf", q_infty(Q)),
    ("tref", trefoil_31_seifert(Q)),
    ("tfam0", trefoil_family(Q, 0)),
    ("tfam2", trefoil_family(Q, 2)),
    ("tfam-2", trefoil_family(Q, -2)),
]:
    C = cable(T)
    bad = validate(C)
    assert bad is None, (name, bad)
    R, _ = reduce(C)
    assert validate(R) is None, name
    print(f"cable({name}): {len(T)} -> {len(C)} gens, reduced {len(R)}")

# expected sizes: 13 dots + 12 circles
t = trefoil_31_seifert(Q)
nd = sum(1 for g in t.generators() if g.idem == "dot")
nc = len(t) - nd
assert len(cable(t)) == 13 * nd + 12 * nc

# unsupported label in strict mode
import bnc.algebra as A

bad = TypeD(
    Q,
    [Generator("a", "dot", 0, 0), Generator("b", "circle", 3, 1)],
    [("a", "b", element(Q, "dot", "circle", [("S", 1, 1)]))],
)
assert validate(bad) is None
try:
    cable(bad)
    raise SystemExit("expected UnsupportedLabelError")
except UnsupportedLabelError as e:
    print("strict rejection:", e)
C = cable(bad, extend_table=True)
assert validate(C) is None
print("extend_table cable of G*S label validates,", len(C), "gens")

# iterate twice on q_tangle(0)
final, ranks = iterate_cable(q_tangle(Q, 0), 2)
print("iterate_cable(q0, 2) ranks:", ranks)
assert validate(final) is None
EOF = None
