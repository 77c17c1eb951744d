"""Group plumbing: tables, closures, subgroup scans, isomorphism, labels."""

import numpy as np
import pytest

from p2qbrace.core import (
    FAMILIES,
    FiniteGroup,
    GroupLabel,
    are_isomorphic,
    closure,
    compute_automorphisms,
    generating_set,
    identify_p2q,
    subgroups_of_order,
)
from helpers import SMALL_PAIRS, group_of, label_keys, params_of


def cyclic(n):
    mul = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(mul.astype(np.int32), name=f"Z{n}")


def sym3():
    # permutations of {0,1,2} listed as images, composed left to right
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    idx = {p: i for i, p in enumerate(perms)}
    mul = np.zeros((6, 6), dtype=np.int32)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            mul[i, j] = idx[tuple(b[a[k]] for k in range(3))]
    return FiniteGroup(mul)


def test_cyclic_group_basics():
    g = cyclic(12)
    assert g.identity == 0
    assert g.is_abelian()
    assert g.exponent() == 12
    # order of k in Z12 is 12/gcd(k, 12)
    assert list(g.element_orders) == [1, 12, 6, 4, 3, 12, 2, 12, 3, 4, 6, 12]
    assert g.power(5, 7) == (5 * 7) % 12
    assert g.power(5, -1) == 7


def test_nonassociative_table_rejected():
    bad = np.zeros((3, 3), dtype=np.int32)
    bad[1, 1] = 2
    bad[2, 2] = 1
    with pytest.raises(ValueError):
        FiniteGroup(bad)


def test_sym3_structure():
    g = sym3()
    assert not g.is_abelian()
    assert sorted(g.element_orders) == [1, 2, 2, 2, 3, 3]
    # per-element class sizes: identity 1, two 3-cycles, three transpositions
    assert sorted(g.conjugacy_class_sizes) == [1, 2, 2, 3, 3, 3]
    assert g.center() == [g.identity]


def test_closure_and_generating_set():
    g = cyclic(20)
    assert closure(g, [4]) == [0, 4, 8, 12, 16]
    assert closure(g, [4], limit=3) is None
    gens = generating_set(g)
    assert closure(g, gens) == list(range(20))
    s3 = sym3()
    assert len(generating_set(s3)) <= 2


def test_subgroups_of_order_against_hand_counts():
    s3 = sym3()
    # S3: three subgroups of order 2, one of order 3
    assert len(subgroups_of_order(s3, 2)) == 3
    assert len(subgroups_of_order(s3, 3)) == 1
    assert subgroups_of_order(s3, 6) == [tuple(range(6))]
    # a cyclic group has one subgroup per divisor
    z12 = cyclic(12)
    for d in (1, 2, 3, 4, 6, 12):
        assert len(subgroups_of_order(z12, d)) == 1
    # every returned tuple is closed
    for sub in subgroups_of_order(s3, 2):
        els = set(sub)
        assert all(int(s3.mul[a, b]) in els for a in sub for b in sub)


def test_are_isomorphic_positive_and_negative():
    a = cyclic(6)
    # Z6 under a relabelled table: x*y computed through a permutation
    perm = np.array([3, 1, 4, 0, 5, 2])
    inv = np.argsort(perm)
    mul = perm[a.mul[inv[:, None], inv[None, :]]]
    b = FiniteGroup(mul.astype(np.int32))
    iso = are_isomorphic(a, b)
    assert iso is not None and iso.is_homomorphism() and iso.is_bijective()
    assert are_isomorphic(a, sym3()) is None


def test_automorphism_group_orders():
    # |Aut(Z_n)| = phi(n); an independent Euler-phi count
    for n in (5, 8, 12, 20):
        phi = sum(1 for k in range(1, n) if np.gcd(k, n) == 1)
        assert compute_automorphisms(cyclic(n)).k == phi
    assert compute_automorphisms(sym3()).k == 6  # S3 is complete


def test_automorphism_group_is_closed_and_faithful():
    aut = compute_automorphisms(cyclic(12))
    assert aut.ensure_comp()
    comp = aut.comp
    for f in range(aut.k):
        for g in range(aut.k):
            expect = aut.perms[g][aut.perms[f]]  # apply f then g
            assert np.array_equal(aut.perms[comp[f, g]], expect)
    assert len({p.tobytes() for p in aut.perms}) == aut.k


def test_group_label_round_trips():
    for fam in FAMILIES:
        if fam == "Gk":
            continue
        lab = GroupLabel(fam)
        assert GroupLabel.from_key(lab.key()) == lab
    lab = GroupLabel("Gk", 3)
    assert GroupLabel.from_key(lab.key()) == lab
    with pytest.raises(ValueError):
        GroupLabel("Gk")  # k is required there
    with pytest.raises(ValueError):
        GroupLabel("CyclicP2Q", 1)  # and forbidden elsewhere
    with pytest.raises(ValueError):
        GroupLabel("NoSuchFamily")


@pytest.mark.parametrize("pair", SMALL_PAIRS)
def test_identify_round_trips_every_family(pair):
    p, q = pair
    for key in label_keys(p, q):
        g = group_of(p, q, key)
        assert identify_p2q(g, p, q).key() == key


def test_identify_is_presentation_independent():
    # rebuild Z20 as Z4 x Z5 (a different table for the same group)
    z4, z5 = cyclic(4), cyclic(5)
    mul = np.zeros((20, 20), dtype=np.int32)
    for a in range(20):
        for b in range(20):
            x = (z4.mul[a // 5, b // 5], z5.mul[a % 5, b % 5])
            mul[a, b] = int(x[0]) * 5 + int(x[1])
    assert identify_p2q(FiniteGroup(mul), 2, 5).key() == "CyclicP2Q"


def test_identify_distinguishes_the_two_qbyp2_actions():
    p, q = 2, 5
    a = group_of(p, q, "QbyP2_ordP")   # order-2 action
    b = group_of(p, q, "QbyP2_ordP2")  # faithful order-4 action
    assert are_isomorphic(a, b) is None


def test_derived_parameters_have_stated_orders():
    # r: multiplicative order p mod q (gate q = 1 mod p)
    pr = params_of(3, 7)
    assert pow(pr.r, 3, 7) == 1 and pr.r != 1
    assert pr.t is None and pr.g is None and pr.h is None and pr.xi is None
    # h: order p^2 mod q, with r tied as h^p (gate q = 1 mod p^2)
    pr2 = params_of(2, 5)
    assert pow(pr2.h, 4, 5) == 1 and pow(pr2.h, 2, 5) != 1
    assert pr2.r == pow(pr2.h, 2, 5)
    # t: order q mod p^2 (gate p = 1 mod q); g: order q mod p
    pr3 = params_of(7, 3)
    assert pow(pr3.t, 3, 49) == 1 and pr3.t != 1
    assert pow(pr3.g, 3, 7) == 1 and pr3.g != 1
    # xi: companion matrix of x^2 + xi*x + 1 acts with order q on F_p^2
    pr4 = params_of(5, 3)
    f = pr4.companion()
    assert (f[0][0] + f[1][1]) % 5 == (-pr4.xi) % 5
    x2 = (pr4.xi * pr4.xi - 4) % 5
    assert all(pow(s, 2, 5) != x2 for s in range(5))  # discriminant non-square
