"""Witness recipes: expression language, vectors, lemma verification."""

import numpy as np
import pytest

from p2qbrace.catalog import (
    FamilyContext,
    RecipeError,
    Witness,
    all_lemma_ids,
    applicable_lemma_ids,
    evaluate_witness,
    eval_cond,
    eval_expr,
    gf_level_subgroup,
    gf_psi,
    gf_vector,
    instantiate_lemma,
    lemma_entry,
    manual_notes,
    verify_catalog,
    verify_lemma,
)
from p2qbrace.enumeration import _orbit_of
from p2qbrace.holomorph import is_regular


# -- expression language ------------------------------------------------------


def test_modular_inverse_division():
    assert eval_expr("1/(r - 1)", {"r": 4}, mod=7) == pow(3, -1, 7)
    assert eval_expr("-1/2", {}, mod=7) == (-pow(2, -1, 7)) % 7
    with pytest.raises(RecipeError):
        eval_expr("1/2", {}, mod=4)  # 2 has no inverse mod 4


def test_plain_division_must_be_exact():
    assert eval_expr("6/2", {}) == 3
    with pytest.raises(RecipeError):
        eval_expr("5/2", {})
    with pytest.raises(RecipeError):
        eval_expr("1/0", {})


def test_power_exponent_is_plain():
    # the exponent is an ordinary integer even in modular position
    assert eval_expr("h**p", {"h": 2, "p": 3}, mod=5) == 3
    assert eval_expr("2**10", {}) == 1024
    # negative powers mean modular inverse of the base
    assert eval_expr("h**(0 - 1)", {"h": 3}, mod=7) == pow(3, -1, 7)
    with pytest.raises(RecipeError):
        eval_expr("2**(0 - 1)", {}, mod=4)


def test_conditions():
    env = {"p": 2, "q": 13}
    assert eval_cond("q % 4 == 1", env)
    assert eval_cond("p == 2 and q > 5", env)
    assert not eval_cond("p > 2 and q % (p*p) == 1", env)
    assert eval_cond("not p > 2", env)
    assert eval_cond("1 < p <= 2", env)


def test_unknown_names_and_nodes_rejected():
    with pytest.raises(RecipeError):
        eval_expr("nope + 1", {})
    with pytest.raises(RecipeError):
        eval_expr("[1, 2]", {})
    with pytest.raises(RecipeError):
        eval_expr("p % q", {"p": 7, "q": 3}, mod=5)  # % only in plain position


# -- the data file ------------------------------------------------------------


def test_lemma_ids_unique_and_wellformed():
    ids = all_lemma_ids()
    assert len(ids) == len(set(ids))
    assert len(ids) == 40
    for lid in ids:
        entry = lemma_entry(lid)
        assert entry["requires"]
        assert "pi2_size" in entry and "count" in entry
    with pytest.raises(KeyError):
        lemma_entry("no-such-lemma")


def test_manual_notes_cover_the_recipe_gaps():
    notes = manual_notes()
    assert notes
    assert any("Gk" in n.get("additive", "") for n in notes)


def test_applicable_sets_per_regime():
    # counts are structural: how many regime predicates admit each pair
    assert len(applicable_lemma_ids(2, 7)) == 12
    assert len(applicable_lemma_ids(2, 5)) == 18
    assert len(applicable_lemma_ids(3, 7)) == 12
    assert len(applicable_lemma_ids(5, 3)) == 6
    assert len(applicable_lemma_ids(2, 13)) == 18
    assert len(applicable_lemma_ids(7, 3)) == 6
    assert applicable_lemma_ids(3, 5) == []  # independent regime: no lemmas


def test_out_of_regime_lemma_raises():
    with pytest.raises(ValueError):
        instantiate_lemma("gf-stratum-q", 2, 7)
    with pytest.raises(ValueError):
        instantiate_lemma("qbyp2-ordp2-stratum-p", 2, 7)  # needs q = 1 mod 4


def test_instantiation_shapes():
    inst = instantiate_lemma("qbyp2-ordp-stratum-p", 3, 7)
    assert inst.pi2_size == 3
    assert inst.expected_count == 8  # p*p - 1
    assert inst.additive == "QbyP2_ordP"
    # parametrised witnesses got expanded
    assert len(inst.witnesses) >= inst.expected_count
    names = {w.name for w in inst.witnesses}
    assert len(names) == len(inst.witnesses)


def test_where_filter_prunes_parameters():
    inst = instantiate_lemma("qbyp2-ordp2-stratum-p2", 2, 5)
    # b runs over 1..p*p-1 excluding multiples of p: 1 and 3 at p=2
    bindings = {dict(w.binding)["b"] for w in inst.witnesses}
    assert bindings == {1, 3}


# -- contexts and witness evaluation -------------------------------------------


def test_family_context_rejects_unknown_type():
    with pytest.raises(ValueError):
        FamilyContext("QbyP2_ordP2", 2, 7)  # absent at order 28


def test_witness_family_mismatch_rejected():
    inst = instantiate_lemma("qbyp2-ordp-stratum-1", 2, 7)
    ctx = FamilyContext("CyclicP2Q", 2, 7)
    with pytest.raises(ValueError):
        evaluate_witness(inst.witnesses[0], ctx)


def test_wrong_closure_order_is_a_recipe_error():
    ctx = FamilyContext("QbyP2_ordP", 2, 7)
    bad = Witness(
        lemma_id="x",
        additive="QbyP2_ordP",
        name="too-small",
        pi2_size=1,
        binding=(),
        generators=(((("s", "2"),), None),),  # <sigma^2> alone has order 2
        expected_class="CyclicP2Q",
    )
    with pytest.raises(RecipeError):
        evaluate_witness(bad, ctx)


def test_aut_of_rejects_wrong_coordinates():
    ctx = FamilyContext("QbyP2_ordP", 2, 7)
    with pytest.raises(RecipeError):
        ctx.aut_of({"bogus": "1"}, ctx.env)
    assert ctx.aut_of(None, ctx.env) == ctx.hol.aut.identity


def test_every_witness_is_regular_at_order28():
    for lid in applicable_lemma_ids(2, 7):
        inst = instantiate_lemma(lid, 2, 7)
        ctx = FamilyContext(inst.additive, 2, 7)
        for w in inst.witnesses:
            sub = evaluate_witness(w, ctx)
            assert is_regular(ctx.hol, sub), (lid, w.name)
            assert sub.pi2_size == inst.pi2_size


# -- the GF vector machinery ----------------------------------------------------


def test_psi_is_constant_on_plane_orbits():
    # the 24 nonzero vectors at p=5 fall into plane-subgroup orbits under
    # Aut-conjugation; psi separates the orbits
    ctx = FamilyContext("GF", 5, 3)
    p, xi = 5, ctx.params.xi
    seen: dict[tuple[int, ...], set[int]] = {}
    for x in range(p):
        for y in range(p):
            if (x, y) == (0, 0):
                continue
            elems = gf_level_subgroup(ctx, x, y)
            key, _, _ = _orbit_of(ctx.hol, np.asarray(elems, dtype=np.int64))
            seen.setdefault(key, set()).add(gf_psi(x, y, p, xi))
    assert len(seen) == 5
    for vals in seen.values():
        assert len(vals) == 1
    # and the psi values of distinct orbits are distinct
    all_vals = [next(iter(v)) for v in seen.values()]
    assert len(set(all_vals)) == 5


def test_named_vectors_hit_their_psi_level():
    ctx = FamilyContext("GF", 5, 3)
    p, xi = 5, ctx.params.xi
    for a in range(1, p):
        env = {**ctx.env, "a": a}
        va = gf_vector("va", env, ctx.params)
        assert gf_psi(va[0], va[1], p, xi) == a % p
        vta = gf_vector("vta", env, ctx.params)
        assert vta == ((-va[1] - 1) % p, (va[0] - xi * va[1] - 1) % p)


def test_unknown_vector_name_rejected():
    ctx = FamilyContext("GF", 5, 3)
    with pytest.raises(RecipeError):
        gf_vector("nope", dict(ctx.env), ctx.params)


def test_gf_level_subgroup_is_a_plane():
    ctx = FamilyContext("GF", 5, 3)
    elems = gf_level_subgroup(ctx, 1, 0)
    assert len(elems) == 25


# -- full verification ----------------------------------------------------------


@pytest.mark.parametrize("pair", [(2, 5), (2, 7), (3, 7), (5, 3)])
def test_verify_catalog_is_green(pair):
    p, q = pair
    reports = verify_catalog(p, q)
    assert reports
    for rep in reports:
        assert rep.ok, rep.summary() + "; " + "; ".join(rep.problems)
        assert rep.witness_count >= rep.expected_count
        assert rep.enumerated_count == rep.expected_count


def test_verify_single_lemma():
    rep = verify_lemma("p2sq-stratum-q", 7, 3)
    assert rep.ok
    assert rep.expected_count == 2  # q - 1
    assert "ok" in rep.summary()


def test_verify_catalog_unknown_lemma():
    with pytest.raises(ValueError):
        verify_catalog(2, 7, lemma_id="gf-stratum-q")
