"""Lower and upper bounds on b_2 from the type and the depth of the presentation."""

from nilcoh import betti_bounds, load_catalog, type_of

print(f"{'name':>16} {'type':>14} {'d':>2} {'c':>3} {'b2':>3} {'C':>3}  interval   verdict")
for g in load_catalog():
    b = betti_bounds(g)
    lo, hi = b.interval
    print(f"{g.name:>16} {str(type_of(g)):>14} {b.depth:>2} {b.c:>3} {b.b2:>3} {b.C:>3}  "
          f"[{lo},{hi}]{'':>5} {'OK' if b.ok else 'FAIL'}")
