"""Compare every encoded reference cell against live enumeration."""

import sys
import time

sys.path.insert(0, "src")

from p2qbrace.core import compute_automorphisms
from p2qbrace.enumeration import stratified_orbit_classes
from p2qbrace.expected import expected_tables, expected_totals
from p2qbrace.families import all_groups
from p2qbrace.holomorph import Holomorph

PAIRS = [(2, 5), (2, 7), (2, 13), (3, 7), (5, 3)]

for p, q in PAIRS:
    t0 = time.time()
    exp = expected_tables(p, q)
    tot = expected_totals(p, q)
    groups = all_groups(p, q)
    a_count = 0
    b_cells: dict[str, dict[tuple[int, str], int]] = {}
    for grp in groups:
        aut = compute_automorphisms(grp)
        hol = Holomorph(grp, aut)
        classes = stratified_orbit_classes(hol)
        if grp.is_abelian():
            a_count += len(classes)
            continue
        cells: dict[tuple[int, str], int] = {}
        for cl in classes:
            key = (cl.kernel_size, cl.mul_label.key())
            cells[key] = cells.get(key, 0) + 1
        b_cells[grp.label.key()] = cells
    # compare
    ok = True
    exp_keys = set(exp)
    got_keys = set(b_cells)
    if exp_keys != got_keys:
        print(f"({p},{q}): additive-type mismatch {exp_keys} vs {got_keys}")
        ok = False
    for add_key in sorted(exp_keys & got_keys):
        e = exp[add_key]
        g = b_cells[add_key]
        cross = {}
        for (ks, m), v in g.items():
            cross[m] = cross.get(m, 0) + v
        if cross != e.cross:
            print(f"({p},{q}) {add_key}: cross {cross} != expected {e.cross}")
            ok = False
        if e.by_kernel is not None and g != e.by_kernel:
            missing = {k: v for k, v in e.by_kernel.items() if g.get(k) != v}
            extra = {k: v for k, v in g.items() if e.by_kernel.get(k) != v}
            print(f"({p},{q}) {add_key}: kernel cells differ")
            print(f"  expected-but-not-got: {missing}")
            print(f"  got-but-not-expected: {extra}")
            ok = False
    b_total = sum(sum(c.values()) for c in b_cells.values())
    if b_total != tot["B"]:
        print(f"({p},{q}): B {b_total} != {tot['B']}")
        ok = False
    if tot["A"] is not None and a_count != tot["A"]:
        print(f"({p},{q}): A {a_count} != {tot['A']}")
        ok = False
    if tot["s"] is not None and a_count + b_total != tot["s"]:
        print(f"({p},{q}): s {a_count + b_total} != {tot['s']}")
        ok = False
    status = "OK " if ok else "FAIL"
    print(
        f"{status} ({p},{q}) n={p * p * q} regime={tot['regime']} "
        f"A={a_count} B={b_total} [{time.time() - t0:.1f}s]"
    )
