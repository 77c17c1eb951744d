"""Enumeration of regular subgroups of Hol(A) and their conjugacy orbits.

Two independent strategies produce the full list of regular subgroups:

* ``enumerate_dfs`` grows generator chains g_1 < g_2 < ... where each new
  generator is the smallest element of the extended subgroup not already
  present.  Every subgroup has exactly one such chain (greedy minimality),
  so no deduplication is needed; a hash-set assertion keeps this honest.

* ``enumerate_stratified`` fixes the image K = pi2(G) up to conjugacy and
  the kernel N = pi1(G meet A x 1), lifts generators of K through right
  coset representatives of N, and closes; the Aut(A)-orbit of each hit is
  then expanded by conjugation.

``cross_validate`` checks the two agree element-for-element.  Orbits under
conjugation by 1 x Aut(A) correspond to isomorphism classes of the attached
algebraic structures; ``orbit_partition`` computes them with lex-least
representatives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import lcm

import numpy as np

from .core import FiniteGroup, GroupLabel, _factor, closure, identify_p2q
from .holomorph import (
    HolSubgroup,
    Holomorph,
    _abstract_generators,
    aut_subgroup_classes,
    candidate_pool,
    closure_packed,
    is_regular,
    pi1_closure_bound,
)

__all__ = [
    "OrbitClass",
    "enumerate_dfs",
    "enumerate_stratified",
    "orbit_partition",
    "stratified_orbit_classes",
    "cross_validate",
    "circle_group",
]


def _pq_of(n: int) -> tuple[int, int]:
    fac = dict(_factor(n))
    ps = [d for d, e in fac.items() if e == 2]
    qs = [d for d, e in fac.items() if e == 1]
    if len(ps) != 1 or len(qs) != 1:
        raise ValueError(f"{n} is not of the form p^2 q with p, q distinct primes")
    return ps[0], qs[0]


def circle_group(hol: Holomorph, sub: HolSubgroup) -> FiniteGroup:
    """The subgroup itself as an abstract group on indices 0..|G|-1."""
    els = sub.arr
    m = len(els)
    a = sub.a_parts
    f = sub.f_parts
    ap = hol.base.mul[a[:, None], hol.aut.perms[f[:, None], a[None, :]]].astype(np.int64)
    if hol.aut.comp is not None:
        fp = hol.aut.comp[f[:, None], f[None, :]].astype(np.int64)
    else:
        fp = np.empty((m, m), dtype=np.int64)
        for i, fi in enumerate(f):
            for j, fj in enumerate(f):
                fp[i, j] = hol.aut.compose(int(fi), int(fj))
    packed = ap * hol.n_aut + fp
    idx = np.searchsorted(els, packed)
    if not np.all(els[np.minimum(idx, m - 1)] == packed):
        raise AssertionError("subgroup is not closed under multiplication")
    return FiniteGroup(idx.astype(np.int32), check=False)


@dataclass(frozen=True)
class OrbitClass:
    """One conjugacy orbit of regular subgroups: one isomorphism class."""

    rep: HolSubgroup
    orbit_size: int
    mul_label: GroupLabel

    @property
    def pi2_size(self) -> int:
        return self.rep.pi2_size

    @property
    def kernel_size(self) -> int:
        return self.rep.kernel_size()

    def sort_key(self):
        return self.rep.elements


# -- depth-first search over canonical generator chains -----------------------


def enumerate_dfs(hol: Holomorph) -> list[HolSubgroup]:
    """All regular subgroups of Hol(A), by canonical-chain DFS."""
    if not hol.aut.ensure_comp():
        raise ValueError(
            "composition table too large for the DFS strategy; use the stratified one"
        )
    n = hol.base.n
    n_aut = hol.n_aut
    amul = hol.base.mul
    perms = hol.aut.perms
    comp = hol.aut.comp

    e = hol.identity
    pool = candidate_pool(hol)
    pool_a = pool // n_aut
    pool_f = pool % n_aut
    # nontrivial powers of each pool element, flattened (<y> minus identity);
    # the identity-cycle length of a pool member equals its order
    pool_ord = np.empty(len(pool), dtype=np.int64)
    pw_chunks = []
    for i in range(len(pool)):
        y = int(pool[i])
        w, powers = y, [y]
        while True:
            w = hol.mul(w, y)
            if w == e:
                break
            powers.append(w)
        pool_ord[i] = len(powers) + 1
        pw_chunks.append(np.array(powers, dtype=np.int64))
    pw_counts = np.array([len(c) for c in pw_chunks], dtype=np.int64)
    pw_starts = np.concatenate(([0], np.cumsum(pw_counts)[:-1]))
    pw_flat = np.concatenate(pw_chunks) if pw_chunks else np.empty(0, np.int64)
    pw_flat_a = pw_flat // n_aut

    results: list[tuple[int, ...]] = []

    def extend(s_sorted: np.ndarray, s_set: set, pi1_mask: np.ndarray,
               gens: list[int], y: int):
        """Closure of <S, y>; None on pi1 collision, overflow, or a new
        element below y (canonical-chain violation)."""
        seen = set(s_set)
        seen.add(y)
        mask = pi1_mask.copy()
        ay = y // n_aut
        if mask[ay]:
            return None, None
        mask[ay] = True
        out = list(map(int, s_sorted)) + [y]
        all_gens = gens + [y]
        new_queue = [y]
        # old elements only need the new generator; new ones need all
        for u in map(int, s_sorted):
            v = hol.mul(u, y)
            if v in seen:
                continue
            if v < y:
                return None, None
            av = v // n_aut
            if mask[av]:
                return None, None
            mask[av] = True
            seen.add(v)
            out.append(v)
            if len(out) > n:
                return None, None
            new_queue.append(v)
        for u in new_queue:
            for g in all_gens:
                v = hol.mul(u, g)
                if v in seen:
                    continue
                if v < y:
                    return None, None
                av = v // n_aut
                if mask[av]:
                    return None, None
                mask[av] = True
                seen.add(v)
                out.append(v)
                if len(out) > n:
                    return None, None
                new_queue.append(v)
        return np.array(sorted(out), dtype=np.int64), mask

    def visit(s_sorted: np.ndarray, s_set: set, pi1_mask: np.ndarray,
              gens: list[int], last: int):
        m = len(s_sorted)
        lo = int(np.searchsorted(pool, last, side="right"))
        if lo >= len(pool):
            return
        idx = np.arange(lo, len(pool))
        cand = pool[lo:]
        cord = pool_ord[lo:]
        keep = (n % np.lcm(m, cord)) == 0
        pos = np.searchsorted(s_sorted, cand)
        pos = np.minimum(pos, m - 1)
        keep &= s_sorted[pos] != cand
        if not keep.any():
            return
        idx = idx[keep]
        cand = cand[keep]
        ca = pool_a[lo:][keep]
        cf = pool_f[lo:][keep]
        sa = s_sorted // n_aut
        sf = s_sorted % n_aut
        # products S * y and y * S for every candidate y, vectorized
        pa_r = amul[sa[:, None], perms[sf[:, None], ca[None, :]]]
        pf_r = comp[sf[:, None], cf[None, :]]
        pa_l = amul[ca[None, :], perms[cf[None, :], sa[:, None]]]
        pf_l = comp[cf[None, :], sf[:, None]]
        packed = np.concatenate(
            [
                pa_r.astype(np.int64) * n_aut + pf_r,
                pa_l.astype(np.int64) * n_aut + pf_l,
            ],
            axis=0,
        )
        bad = pi1_mask[packed // n_aut].any(axis=0)
        packed.sort(axis=0)
        # same first coordinate in two distinct products kills injectivity
        # (the same product appearing twice, e.g. 1*y = y*1, is fine)
        dup = (np.diff(packed // n_aut, axis=0) == 0) & (np.diff(packed, axis=0) != 0)
        bad |= dup.any(axis=0)
        bad |= packed[0] < cand
        if not (~bad).any():
            return
        idx = idx[~bad]
        cand = cand[~bad]
        # every power of y must already lie in S or be a fresh element >= y
        counts = pw_counts[idx]
        rep = np.repeat(np.arange(len(idx)), counts)
        flat = pw_starts[idx].repeat(counts)
        within = np.arange(len(flat)) - np.concatenate(([0], np.cumsum(counts)[:-1])).repeat(counts)
        w = pw_flat[flat + within]
        wa = pw_flat_a[flat + within]
        pos = np.searchsorted(s_sorted, w)
        in_s = s_sorted[np.minimum(pos, m - 1)] == w
        bad_w = ~in_s & ((w < cand[rep]) | pi1_mask[wa])
        ok = np.ones(len(idx), dtype=bool)
        ok[rep[bad_w]] = False
        for y in cand[ok]:
            y = int(y)
            grown, mask = extend(s_sorted, s_set, pi1_mask, gens, y)
            if grown is None:
                continue
            size = len(grown)
            if size == n:
                sub = HolSubgroup(hol, tuple(map(int, grown)))
                assert is_regular(hol, sub)
                assert len(pi1_closure_bound(hol, gens + [y])) == n
                results.append(sub.elements)
            elif n % size == 0:
                visit(grown, set(map(int, grown)), mask, gens + [y], y)

    mask0 = np.zeros(n, dtype=bool)
    mask0[hol.base.identity] = True
    visit(np.array([e], dtype=np.int64), {e}, mask0, [], -1)

    assert len(set(results)) == len(results), "canonical-chain DFS produced a duplicate"
    return sorted((HolSubgroup(hol, t) for t in results), key=lambda s: s.elements)


# -- stratified search: fix pi2 up to conjugacy and the kernel ----------------


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _subgroup_gens_in(base: FiniteGroup, elements: tuple[int, ...]) -> list[int]:
    gens: list[int] = []
    have = {base.identity}
    for x in elements:
        if x in have:
            continue
        gens.append(x)
        have = set(closure(base, gens))
        if len(have) == len(elements):
            break
    return gens


def _lift_search(hol: Holomorph, k_elems: tuple[int, ...], k_gens: list[int],
                 kernel: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Regular subgroups with pi2 = <k_gens> exactly and kernel pi1 = kernel."""
    base = hol.base
    aut = hol.aut
    n = base.n
    n_arr = np.array(kernel, dtype=np.int64)
    n_mask = np.zeros(n, dtype=bool)
    n_mask[n_arr] = True
    n_gens = _subgroup_gens_in(base, kernel)

    # right coset representatives of the kernel
    reps = []
    seen = np.zeros(n, dtype=bool)
    for u in range(n):
        if not seen[u]:
            reps.append(u)
            seen[base.mul[n_arr, u]] = True

    orders = aut.element_orders
    per_gen: list[list[int]] = []
    for alpha in k_gens:
        o = int(orders[alpha])
        good = []
        for u in reps:
            # (u, alpha) must normalize kernel x 1 ...
            if any(
                not n_mask[base.mul[base.mul[u, aut.perms[alpha, m]], base.inv[u]]]
                for m in n_gens
            ):
                continue
            # ... and its ord(alpha)-th power must fall into kernel x 1
            w = hol.power(hol.pack(u, alpha), o)
            wa, wf = divmod(w, hol.n_aut)
            if wf != aut.identity or not n_mask[wa]:
                continue
            good.append(u)
        if not good:
            return []
        per_gen.append(good)

    found = []
    kernel_packed = [hol.pack(m, aut.identity) for m in n_gens]
    for combo in itertools.product(*per_gen):
        # pi1(G) lies in the span of the K-orbits of the generators' first
        # coordinates; regularity needs that span to be all of A
        seeds = {
            int(aut.perms[h, x])
            for x in list(n_gens) + list(combo)
            for h in k_elems
        }
        if len(closure(base, seeds)) != n:
            continue
        gens_packed = kernel_packed + [
            hol.pack(u, alpha) for u, alpha in zip(combo, k_gens)
        ]
        c = closure_packed(hol, gens_packed, limit=n, require_injective_pi1=True)
        if c is None or len(c) != n:
            continue
        assert {x % hol.n_aut for x in c} == set(k_elems)
        found.append(c)
    return found


def _stratified_reps(hol: Holomorph) -> list[tuple[int, ...]]:
    """One member per (pi2-class, kernel) stratum; not yet expanded."""
    base = hol.base
    n = base.n
    out: list[tuple[int, ...]] = [
        tuple(hol.pack(a, hol.aut.identity) for a in range(n))
    ]
    from .core import subgroups_of_order

    for d in _divisors(n):
        if d == 1 or hol.aut.k % d:
            continue
        for k_rep in aut_subgroup_classes(hol.aut, d):
            k_gens = _abstract_generators(hol.aut.identity, hol.aut.compose, k_rep)
            for kernel in subgroups_of_order(base, n // d):
                out.extend(_lift_search(hol, k_rep, k_gens, kernel))
    return out


def _orbit_of(hol: Holomorph, start: np.ndarray):
    """Conjugation orbit of a subgroup; returns (lex-min tuple, orbit size)."""
    gens = hol.aut.generators
    key0 = start.tobytes()
    seen = {key0}
    queue = [start]
    best = start
    for arr in queue:
        for h in gens:
            nxt = hol.conjugate_subgroup(arr, h)
            key = nxt.tobytes()
            if key not in seen:
                seen.add(key)
                queue.append(nxt)
                if tuple(nxt) < tuple(best):
                    best = nxt
    return tuple(map(int, best)), len(seen), queue


def enumerate_stratified(hol: Holomorph) -> list[HolSubgroup]:
    """All regular subgroups, via strata expanded by Aut(A)-conjugation."""
    all_sets: set[tuple[int, ...]] = set()
    for rep in _stratified_reps(hol):
        arr = np.array(rep, dtype=np.int64)
        if rep in all_sets:
            continue
        _, _, orbit = _orbit_of(hol, arr)
        for member in orbit:
            all_sets.add(tuple(map(int, member)))
    subs = sorted(all_sets)
    for t in subs:
        assert is_regular(hol, HolSubgroup(hol, t))
    return [HolSubgroup(hol, t) for t in subs]


def orbit_partition(hol: Holomorph, subs: list[HolSubgroup]) -> list[OrbitClass]:
    """Partition a complete list of regular subgroups into conjugacy orbits."""
    p, q = _pq_of(hol.base.n)
    universe = {s.elements for s in subs}
    remaining = set(universe)
    gens = hol.aut.generators
    classes: list[OrbitClass] = []
    for key in sorted(universe):
        if key not in remaining:
            continue
        orbit = {key}
        queue = [key]
        for t in queue:
            arr = np.array(t, dtype=np.int64)
            for h in gens:
                u = tuple(map(int, hol.conjugate_subgroup(arr, h)))
                if u not in orbit:
                    if u not in universe:
                        raise AssertionError(
                            "conjugate of a regular subgroup missing: enumeration incomplete"
                        )
                    orbit.add(u)
                    queue.append(u)
        remaining -= orbit
        rep = HolSubgroup(hol, min(orbit))
        label = identify_p2q(circle_group(hol, rep), p, q)
        classes.append(OrbitClass(rep=rep, orbit_size=len(orbit), mul_label=label))
    return sorted(classes, key=OrbitClass.sort_key)


def stratified_orbit_classes(hol: Holomorph) -> list[OrbitClass]:
    """Orbit classes straight from the strata, one orbit in memory at a time.

    Equivalent to ``orbit_partition(hol, enumerate_stratified(hol))`` but
    never materializes the full subgroup list; used for large holomorphs.
    """
    p, q = _pq_of(hol.base.n)
    by_min: dict[tuple[int, ...], int] = {}
    for rep in _stratified_reps(hol):
        arr = np.array(rep, dtype=np.int64)
        best, size, _ = _orbit_of(hol, arr)
        if best in by_min:
            assert by_min[best] == size
        else:
            by_min[best] = size
    classes = []
    for key in sorted(by_min):
        rep = HolSubgroup(hol, key)
        assert is_regular(hol, rep)
        label = identify_p2q(circle_group(hol, rep), p, q)
        classes.append(OrbitClass(rep=rep, orbit_size=by_min[key], mul_label=label))
    return classes


def cross_validate(hol: Holomorph) -> tuple[bool, str]:
    """Run both strategies and compare the exact subgroup sets."""
    dfs = {s.elements for s in enumerate_dfs(hol)}
    strat = {s.elements for s in enumerate_stratified(hol)}
    if dfs == strat:
        return True, f"both strategies agree: {len(dfs)} regular subgroups"
    only_d = sorted(dfs - strat)
    only_s = sorted(strat - dfs)
    lines = [
        f"strategy mismatch: dfs={len(dfs)} stratified={len(strat)}",
        f"  dfs-only: {len(only_d)}, stratified-only: {len(only_s)}",
    ]
    for name, side in (("dfs", only_d), ("stratified", only_s)):
        if side:
            sub = HolSubgroup(hol, side[0])
            lines.append(
                f"  first {name}-only subgroup: pi2 size {sub.pi2_size}, "
                f"elements {side[0][:6]}..."
            )
    return False, "\n".join(lines)
