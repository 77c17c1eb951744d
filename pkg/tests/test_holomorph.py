"""Holomorph arithmetic, packed closures, regularity, Aut-subgroup classes."""

import numpy as np
import pytest

from p2qbrace.core import subgroups_of_order
from p2qbrace.holomorph import (
    HolSubgroup,
    aut_subgroup_classes,
    candidate_pool,
    closure_packed,
    hol_inv,
    hol_mul,
    is_regular,
    pi1_closure_bound,
)
from helpers import classes_of, hol_of, structured_of


def test_holomorph_is_a_group():
    hol = hol_of(2, 5, "CyclicP2Q")
    assert hol.size == 20 * 8
    rng = np.random.default_rng(7)
    xs = rng.integers(0, hol.size, size=40)
    for x in map(int, xs):
        assert hol.mul(x, hol.identity) == x
        assert hol.mul(hol.identity, x) == x
        assert hol.mul(x, hol.inv(x)) == hol.identity
        a, f = hol.unpack(x)
        assert hol.pack(a, f) == x
    for x, y, z in zip(map(int, xs), map(int, xs[1:]), map(int, xs[2:])):
        assert hol.mul(hol.mul(x, y), z) == hol.mul(x, hol.mul(y, z))


def test_hol_mul_matches_semidirect_formula():
    hol = hol_of(2, 5, "QbyP2_ordP")
    base, aut = hol.base, hol.aut
    rng = np.random.default_rng(3)
    for _ in range(30):
        a, b = map(int, rng.integers(0, base.n, 2))
        f, g = map(int, rng.integers(0, aut.k, 2))
        x, y = hol.pack(a, f), hol.pack(b, g)
        expect = hol.pack(int(base.mul[a, aut.apply(f, b)]), aut.compose(f, g))
        assert hol.mul(x, y) == expect
        assert hol_mul(hol, x, y) == hol.mul(x, y)
        assert hol_inv(hol, x) == hol.inv(x)


def test_order_of_and_power():
    hol = hol_of(2, 7, "PxPQ")
    for x in range(0, hol.size, 13):
        k = hol.order_of(x)
        assert hol.power(x, k) == hol.identity
        for d in (2, 3, 7):
            if k % d == 0:
                assert hol.power(x, k // d) != hol.identity


def test_closure_packed_gives_subgroups():
    hol = hol_of(2, 5, "CyclicP2Q")
    els = closure_packed(hol, [hol.pack(1, 0)])
    assert els is not None and len(els) == 20
    sub = set(els)
    for x in els:
        assert hol.inv(int(x)) in sub
    assert closure_packed(hol, [hol.pack(1, 0)], limit=10) is None


def test_translation_subgroup_is_regular():
    for key in ("CyclicP2Q", "QbyP2_ordP"):
        hol = hol_of(2, 5, key)
        ident_aut = hol.aut.identity
        elems = tuple(sorted(hol.pack(a, ident_aut) for a in range(20)))
        sub = HolSubgroup(hol, elems)
        assert is_regular(hol, sub)
        assert sub.pi2_size == 1
        assert sub.kernel_size() == 20


def test_non_regular_subgroup_detected():
    hol = hol_of(2, 5, "CyclicP2Q")
    # the point stabiliser {0} x Aut has order 8 and fixes 0: not regular,
    # and not even of order n, so extend it by a translation subgroup part
    els = closure_packed(hol, [hol.pack(0, f) for f in range(hol.n_aut)])
    sub = HolSubgroup(hol, els)
    assert len(sub) == 8
    assert not is_regular(hol, sub)


def test_pi1_closure_bound_contains_generated_a_parts():
    hol = hol_of(2, 5, "QbyP2_ordP")
    gens = [hol.pack(3, 2), hol.pack(5, 1)]
    bound = set(pi1_closure_bound(hol, gens))
    closed = closure_packed(hol, gens)
    if closed is not None:
        assert {int(x) // hol.n_aut for x in closed} <= bound


def test_candidate_pool_excludes_nothing_regular_needs():
    # every non-identity element of every regular subgroup lies in the pool
    hol = hol_of(2, 5, "QbyP2_ordP")
    pool = set(map(int, candidate_pool(hol)))
    for cl in classes_of(2, 5, "QbyP2_ordP"):
        assert set(map(int, cl.rep.elements)) - {hol.identity} <= pool


def test_aut_subgroup_classes_against_brute_force():
    sa = structured_of(2, 5, "CyclicP2Q")
    aut_as_group = sa.aut.as_group()
    for m in (1, 2, 4):
        classes = aut_subgroup_classes(sa.aut, m)
        brute = subgroups_of_order(aut_as_group, m)
        # every brute subgroup is conjugate to exactly one returned class;
        # Aut(Z20) is abelian so conjugacy is equality and counts agree
        assert len(classes) == len(brute)
        assert sorted(classes) == sorted(brute)


def test_aut_subgroup_classes_nonabelian_case():
    sa = structured_of(2, 5, "QbyP2_ordP")  # |Aut| = 40, nonabelian
    aut_group = sa.aut.as_group()
    for m in (2, 4, 5, 10):
        classes = aut_subgroup_classes(sa.aut, m)
        brute = subgroups_of_order(aut_group, m)
        # classes must be pairwise non-conjugate and cover all subgroups
        seen = set()
        for sub in brute:
            hits = [
                c
                for c in classes
                if any(
                    tuple(sorted(int(aut_group.mul[aut_group.mul[g, x], aut_group.inv[g]]) for x in sub)) == c
                    for g in range(aut_group.n)
                )
            ]
            assert len(hits) == 1, (m, sub)
            seen.add(hits[0])
        assert seen == set(classes)


def test_subgroup_pi2_and_kernel_size():
    hol = hol_of(2, 5, "CyclicP2Q")
    for cl in classes_of(2, 5, "CyclicP2Q"):
        sub = cl.rep
        assert len(sub) == 20
        assert sub.pi2_size * sub.kernel_size() == 20
        assert len(set(map(int, sub.f_parts))) == sub.pi2_size
