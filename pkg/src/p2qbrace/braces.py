"""Skew braces built from regular subgroups of Hol(A).

A skew brace is a set with two group structures (B, +) and (B, o) tied by
a o (b + c) = a o b - a + a o c.  A regular subgroup G <= Hol(A) induces
one on the carrier of A: each a has a unique lift (a, f_a) in G, and
a o b = a + f_a(b).  The map lambda_a = f_a is then a homomorphism
(B, o) -> Aut(B, +) with lambda_a(b) = -a + a o b.

Invariants computed here: |ker lambda|, the multiplicative isomorphism
type, ideals (lambda-stable subgroups normal for both operations), direct
product decompositions over pairs of ideals, and the bi-skew property
(the swapped pair (B, o, +) is again a skew brace).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .core import AutGroup, FiniteGroup, GroupLabel, identify_p2q, subgroups_of_order
from .enumeration import _pq_of
from .holomorph import HolSubgroup, Holomorph

__all__ = [
    "SkewBrace",
    "BraceInvariants",
    "brace_from_regular",
    "check_axioms",
    "invariants",
    "is_bi_skew",
    "ideals",
    "direct_product_pairs",
    "brace_isomorphic",
]


@dataclass
class SkewBrace:
    """Two group tables on a common carrier 0..n-1 plus the lambda map."""

    add: FiniteGroup
    mul: FiniteGroup
    lam: np.ndarray  # lam[a] = index of lambda_a in aut
    aut: AutGroup

    def __post_init__(self):
        if self.add.n != self.mul.n:
            raise ValueError("additive and multiplicative carriers differ")
        if self.add.identity != self.mul.identity:
            raise ValueError("the two identities must coincide")

    @property
    def n(self) -> int:
        return self.add.n

    @cached_property
    def lambda_perms(self) -> np.ndarray:
        """Row a is the permutation b -> lambda_a(b) = -a + a o b."""
        return self.add.mul[self.add.inv[:, None], self.mul.mul]

    def kernel(self) -> list[int]:
        """Elements with lambda_a = identity.

        A subgroup under both operations (they agree on it) and normal in
        (B,o).  It need not be lambda-stable or normal in (B,+) unless the
        additive group is abelian, so it is not an ideal in general.
        """
        ident = self.aut.identity
        return [a for a in range(self.n) if int(self.lam[a]) == ident]

    def kernel_size(self) -> int:
        return len(self.kernel())

    def fix_set(self) -> list[int]:
        """Elements left in place by every lambda_a."""
        fixed = (self.lambda_perms == np.arange(self.n)[None, :]).all(axis=0)
        return [int(x) for x in np.nonzero(fixed)[0]]

    def circ_inverse(self) -> np.ndarray:
        return self.mul.inv

    def labels(self) -> tuple[GroupLabel, GroupLabel]:
        p, q = _pq_of(self.n)
        add_label = self.add.label or identify_p2q(self.add, p, q)
        return add_label, identify_p2q(self.mul, p, q)


def brace_from_regular(hol: Holomorph, sub: HolSubgroup) -> SkewBrace:
    """The skew brace on the carrier of A induced by a regular subgroup."""
    n = hol.base.n
    a_parts = sub.a_parts
    order = np.argsort(a_parts)
    if not np.array_equal(a_parts[order], np.arange(n)):
        raise ValueError("subgroup is not regular: pi1 is not a bijection")
    lam = sub.f_parts[order].astype(np.int64)
    circ = hol.base.mul[np.arange(n)[:, None], hol.aut.perms[lam]]
    mul = FiniteGroup(circ.astype(np.int32), check=False)
    brace = SkewBrace(add=hol.base, mul=mul, lam=lam, aut=hol.aut)
    # lambda recovered from the tables must be the stored automorphisms
    assert np.array_equal(brace.lambda_perms, hol.aut.perms[lam])
    # a -> (a, f_a) is an isomorphism (B, o) -> G: the f-parts multiply along
    if hol.aut.comp is not None:
        f_prod = hol.aut.comp[lam[:, None], lam[None, :]]
    else:
        f_prod = np.empty((n, n), dtype=np.int64)
        for x in range(n):
            for y in range(n):
                f_prod[x, y] = hol.aut.compose(int(lam[x]), int(lam[y]))
    assert np.array_equal(lam[circ], f_prod), "(B, o) is not isomorphic to G"
    return brace


def _first_failure(ok: np.ndarray) -> tuple[int, ...] | None:
    bad = np.argwhere(~ok)
    if len(bad) == 0:
        return None
    return tuple(int(x) for x in bad[0])


def check_axioms(brace: SkewBrace) -> tuple[bool, str]:
    """Exhaustive check of both group structures and the brace law.

    Returns (ok, message); on failure the message carries the first
    counterexample triple.
    """
    n = brace.n
    a = np.arange(n)
    for name, g in (("additive", brace.add), ("multiplicative", brace.mul)):
        t = g.mul
        assoc = t[t, :] == t[:, t]
        if not assoc.all():
            return False, f"{name} law is not associative at {_first_failure(assoc)}"
        ident = g.identity
        if not (np.array_equal(t[ident], a) and np.array_equal(t[:, ident], a)):
            return False, f"{name} identity fails"
        if not np.array_equal(t[a, g.inv], np.full(n, ident)):
            return False, f"{name} inverses fail"
    add, circ = brace.add.mul, brace.mul.mul
    ainv = brace.add.inv
    # a o (b + c) == (a o b) - a + (a o c)
    lhs = circ[a[:, None, None], add[None, :, :]]
    rhs = add[add[circ[:, :, None], ainv[a][:, None, None]], circ[:, None, :]]
    ok = lhs == rhs
    if not ok.all():
        return False, f"brace law fails at (a, b, c) = {_first_failure(ok)}"
    # each lambda_a respects +, and a -> lambda_a is a homomorphism on (B, o)
    perms = brace.lambda_perms
    if not np.array_equal(perms[:, add], add[perms[:, :, None], perms[:, None, :]]):
        return False, "lambda_a is not additive for some a"
    if not np.array_equal(perms[circ], perms[:, perms]):
        return False, "lambda is not a homomorphism from (B, o)"
    return True, "all axioms hold"


def is_bi_skew(brace: SkewBrace) -> bool:
    """Whether (B, o, +) with the roles swapped is also a skew brace."""
    add, circ = brace.add.mul, brace.mul.mul
    cinv = brace.mul.inv
    n = brace.n
    a = np.arange(n)
    # a + (b o c) == (a + b) o a' o (a + c) with a' the o-inverse
    lhs = add[a[:, None, None], circ[None, :, :]]
    rhs = circ[circ[add[:, :, None], cinv[a][:, None, None]], add[:, None, :]]
    return bool((lhs == rhs).all())


def ideals(brace: SkewBrace) -> list[tuple[int, ...]]:
    """All ideals: lambda-stable subgroups normal in (B,+) and in (B,o)."""
    n = brace.n
    out = []
    perms = brace.lambda_perms
    add_gens = brace.add.generators
    mul_gens = brace.mul.generators
    for d in range(1, n + 1):
        if n % d:
            continue
        for cand in subgroups_of_order(brace.add, d):
            s = set(cand)
            arr = np.array(cand)
            add_t, add_i = brace.add.mul, brace.add.inv
            mul_t, mul_i = brace.mul.mul, brace.mul.inv
            if any(set(map(int, perms[g][arr])) != s for g in mul_gens):
                continue
            if any(set(map(int, add_t[add_t[g, arr], add_i[g]])) != s for g in add_gens):
                continue
            if any(set(map(int, mul_t[mul_t[g, arr], mul_i[g]])) != s for g in mul_gens):
                continue
            out.append(cand)
    return out


def direct_product_pairs(brace: SkewBrace) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Nontrivial ideal pairs (I, J) with I + J = B and I meet J = 0.

    Each pair exhibits the brace as a direct product of two smaller
    sub-braces (sizes multiplying to n makes I + J = B automatic); all
    pairs are scanned, whatever the two orders are.
    """
    n = brace.n
    ids = [i for i in ideals(brace) if 1 < len(i) < n]
    zero = brace.add.identity
    pairs = []
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            if len(a) * len(b) != n:
                continue
            if set(a) & set(b) != {zero}:
                continue
            pairs.append((a, b) if len(a) <= len(b) else (b, a))
    return pairs


@dataclass(frozen=True)
class BraceInvariants:
    """The classification invariants of one skew brace."""

    kernel_size: int
    fix: tuple[int, ...]
    mul_label: GroupLabel
    bi_skew: bool
    direct_product: tuple[tuple[int, ...], tuple[int, ...]] | None


def invariants(brace: SkewBrace) -> BraceInvariants:
    pairs = direct_product_pairs(brace)
    return BraceInvariants(
        kernel_size=brace.kernel_size(),
        fix=tuple(brace.fix_set()),
        mul_label=brace.labels()[1],
        bi_skew=is_bi_skew(brace),
        direct_product=pairs[0] if pairs else None,
    )


def _preserves_mul(phi: np.ndarray, b1: SkewBrace, b2: SkewBrace) -> bool:
    return np.array_equal(phi[b1.mul.mul], b2.mul.mul[phi[:, None], phi[None, :]])


def brace_isomorphic(b1: SkewBrace, b2: SkewBrace) -> np.ndarray | None:
    """A bijection preserving both operations, or None.

    Searches the additive isomorphisms by generator-image backtracking and
    keeps the first that also respects o.  The identity map is tried first,
    so a brace compared with itself gets the identity witness.
    """
    from .core import _hom_images

    if b1.n != b2.n:
        return None
    ident = np.arange(b1.n)
    if np.array_equal(b1.add.mul, b2.add.mul) and _preserves_mul(ident, b1, b2):
        return ident
    for image in _hom_images(b1.add, b2.add, first_only=False):
        phi = np.asarray(image)
        if _preserves_mul(phi, b1, b2):
            return phi
    return None
