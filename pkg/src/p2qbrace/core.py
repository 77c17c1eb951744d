"""Finite groups as dense multiplication tables.

Everything downstream (holomorphs, regular subgroups, braces) deals with
groups of order p^2*q for distinct primes p, q, so group orders stay small
(<= a few hundred) and a dense n x n Cayley table indexed by 0..n-1 is the
fastest honest representation.  Element 0 is *not* assumed to be the
identity; constructors locate it.

Automorphisms are found by generator-image backtracking with invariant
pruning (element order + conjugacy class size) and incremental closure
propagation: when a pair (x -> y) is recorded, images of all products with
previously known elements are recorded and checked too, so every completed
assignment is a homomorphism by construction.  That is plenty for
|G| <= 200, where |Aut(G)| stays in the low thousands.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm

import numpy as np

__all__ = [
    "FiniteGroup",
    "GroupLabel",
    "Morphism",
    "AutGroup",
    "closure",
    "generating_set",
    "subgroups_of_order",
    "compute_automorphisms",
    "are_isomorphic",
    "identify_p2q",
]

FAMILIES = (
    "CyclicP2Q",      # Z_{p^2 q}
    "PxPQ",           # Z_p x Z_{pq}
    "P2SemidirectQ",  # Z_{p^2} x| Z_q           (p = 1 mod q)
    "Gk",             # (Z_p)^2 x| Z_q, split action with eigenvalue ratio k
    "GF",             # (Z_p)^2 x| Z_q, irreducible action (q | p+1)
    "QbyP2_ordP",     # Z_q x| Z_{p^2}, kernel of order p   (q = 1 mod p)
    "QbyP2_ordP2",    # Z_q x| Z_{p^2}, faithful action     (q = 1 mod p^2)
    "PxQbyP",         # Z_p x (Z_q x| Z_p)                  (q = 1 mod p)
)


@dataclass(frozen=True, order=True)
class GroupLabel:
    """Isomorphism-type tag for a group of order p^2*q.

    ``k`` is only meaningful for the Gk family and is canonical:
    k ~ k^{-1} mod q are identified (representative: min of the pair),
    with 0, 1 and -1 kept as written.
    """

    family: str
    k: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if (self.k is not None) != (self.family == "Gk"):
            raise ValueError("k is set exactly for the Gk family")

    def key(self) -> str:
        return f"Gk({self.k})" if self.family == "Gk" else self.family

    def display(self, p: int, q: int) -> str:
        pq, p2, n = p * q, p * p, p * p * q
        return {
            "CyclicP2Q": f"Z{n}",
            "PxPQ": f"Z{p}xZ{pq}",
            "P2SemidirectQ": f"Z{p2}:Z{q}",
            "GF": f"(Z{p})^2:Z{q} irred",
            "QbyP2_ordP": f"Z{q}:Z{p2} (r)",
            "QbyP2_ordP2": f"Z{q}:Z{p2} (h)",
            "PxQbyP": f"Z{p}x(Z{q}:Z{p})",
        }.get(self.family, f"(Z{p})^2:Z{q} k={self.k}")

    @staticmethod
    def from_key(key: str) -> "GroupLabel":
        if key.startswith("Gk(") and key.endswith(")"):
            return GroupLabel("Gk", int(key[3:-1]))
        return GroupLabel(key)


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, mul, generators=None, label=None, check=True, name=""):
        mul = np.ascontiguousarray(np.asarray(mul, dtype=np.int32))
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise ValueError("multiplication table must be square")
        self.n = int(mul.shape[0])
        if mul.min() < 0 or mul.max() >= self.n:
            raise ValueError("table entries out of range")
        self.mul = mul
        self.name = name
        self.label = label
        ident = np.nonzero((mul == np.arange(self.n)).all(axis=1))[0]
        if len(ident) != 1:
            raise ValueError("table has no identity row")
        self.identity = int(ident[0])
        if not (mul[:, self.identity] == np.arange(self.n)).all():
            raise ValueError("identity is not two-sided")
        pos = np.argwhere(mul == self.identity)
        inv = np.full(self.n, -1, dtype=np.int32)
        inv[pos[:, 0]] = pos[:, 1]
        if (inv < 0).any() or not (mul[inv, np.arange(self.n)] == self.identity).all():
            raise ValueError("table has non-invertible elements")
        self.inv = inv
        if check:
            self._check_associative()
        self._generators = list(map(int, generators)) if generators is not None else None

    def _check_associative(self, samples=2000):
        if self.n <= 200:
            ok = np.array_equal(self.mul[self.mul, :], self.mul[:, self.mul])
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, self.n, size=(3, samples))
            ok = np.array_equal(self.mul[self.mul[a, b], c], self.mul[a, self.mul[b, c]])
        if not ok:
            raise ValueError("multiplication table is not associative")

    # -- basic element arithmetic -------------------------------------------

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        acc, base = self.identity, x
        while k:
            if k & 1:
                acc = int(self.mul[acc, base])
            base = int(self.mul[base, base])
            k >>= 1
        return acc

    def conj(self, a: int, x: int) -> int:
        """a x a^{-1}"""
        return int(self.mul[self.mul[a, x], self.inv[a]])

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.n
        orders = np.zeros(n, dtype=np.int32)
        orders[self.identity] = 1
        cur = np.arange(n)
        k = 1
        while (orders == 0).any():
            k += 1
            cur = self.mul[cur, np.arange(n)]
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            if k > n:
                raise RuntimeError("order computation ran away")
        return orders

    @cached_property
    def conjugacy_class_sizes(self) -> np.ndarray:
        n = self.n
        size = np.zeros(n, dtype=np.int32)
        idx = np.arange(n)
        for x in range(n):
            if size[x]:
                continue
            cls = np.unique(self.mul[self.mul[:, x], self.inv[idx]])
            size[cls] = len(cls)
        return size

    def is_abelian(self) -> bool:
        return np.array_equal(self.mul, self.mul.T)

    def center(self) -> list[int]:
        return [x for x in range(self.n) if np.array_equal(self.mul[x], self.mul[:, x])]

    @property
    def generators(self) -> list[int]:
        if self._generators is None:
            self._generators = generating_set(self)
        return self._generators

    def exponent(self) -> int:
        return int(lcm(*map(int, np.unique(self.element_orders))))


@dataclass(eq=False)
class Morphism:
    """A map between groups given by its full image table."""

    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def is_homomorphism(self) -> bool:
        m = self.map
        return np.array_equal(self.target.mul[m[:, None], m[None, :]], m[self.source.mul])

    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and len(np.unique(self.map)) == self.source.n


# -- closure and subgroups ---------------------------------------------------


def closure(group: FiniteGroup, seed, limit: int | None = None) -> list[int] | None:
    """Subgroup generated by ``seed``, as a sorted list of element indices.

    BFS over right-multiplication by the generators; in a finite group the
    word closure under products already contains inverses.  With ``limit``
    set, returns None as soon as the partial closure exceeds it.
    """
    seed = list(seed)
    gens = np.unique(np.asarray(seed, dtype=np.int32)) if seed else np.empty(0, np.int32)
    members = np.zeros(group.n, dtype=bool)
    members[group.identity] = True
    count = 1
    frontier = np.array([group.identity], dtype=np.int32)
    while frontier.size and gens.size:
        prod = group.mul[np.ix_(frontier, gens)].ravel()
        new = np.unique(prod[~members[prod]])
        if new.size == 0:
            break
        members[new] = True
        count += int(new.size)
        if limit is not None and count > limit:
            return None
        frontier = new
    return [int(x) for x in np.nonzero(members)[0]]


def generating_set(group: FiniteGroup) -> list[int]:
    """A small generating set, greedily picked by descending element order."""
    orders = group.element_orders
    cand = sorted(range(group.n), key=lambda x: (-int(orders[x]), x))
    gens: list[int] = []
    have = {group.identity}
    for x in cand:
        if x in have:
            continue
        gens.append(x)
        have = set(closure(group, gens))
        if len(have) == group.n:
            break
    return gens


def _subgroup_generators(group: FiniteGroup, sub: tuple[int, ...]) -> list[int]:
    inside = set(sub)
    gens: list[int] = []
    have = {group.identity}
    for x in sub:
        if x in have:
            continue
        gens.append(x)
        have = set(closure(group, gens))
        if len(have) == len(inside):
            break
    return gens


def _factor(m: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1
    if m > 1:
        out.append((m, 1))
    return out


def subgroups_of_order(group: FiniteGroup, m: int) -> list[tuple[int, ...]]:
    """All subgroups of order ``m``, each a sorted tuple of element indices.

    Supports the orders that occur inside groups of order p^2*q
    (1, r, r^2, r*s, r^2*s and the full order); enough for kernel scans
    and ideal lattices.
    """
    n = group.n
    if m <= 0 or n % m:
        return []
    if m == 1:
        return [(group.identity,)]
    if m == n:
        return [tuple(range(n))]
    orders = group.element_orders
    fac = _factor(m)
    subs: set[tuple[int, ...]] = set()
    if len(fac) == 1 and fac[0][1] == 1:
        for x in np.nonzero(orders == m)[0]:
            subs.add(tuple(closure(group, [int(x)])))
    elif len(fac) == 1 and fac[0][1] == 2:
        r = fac[0][0]
        for x in np.nonzero(orders == m)[0]:
            subs.add(tuple(closure(group, [int(x)])))
        small = subgroups_of_order(group, r)
        for s1, s2 in itertools.combinations(small, 2):
            c = closure(group, [s1[-1], s2[-1]], limit=m)
            if c is not None and len(c) == m:
                subs.add(tuple(c))
    elif len(fac) == 2 and fac[0][1] == 1 and fac[1][1] == 1:
        r, s = fac[0][0], fac[1][0]
        for s1 in subgroups_of_order(group, r):
            for s2 in subgroups_of_order(group, s):
                c = closure(group, [s1[-1], s2[-1]], limit=m)
                if c is not None and len(c) == m:
                    subs.add(tuple(c))
    elif len(fac) == 2 and sorted(e for _, e in fac) == [1, 2]:
        r = next(d for d, e in fac if e == 2)
        s = next(d for d, e in fac if e == 1)
        for s1 in subgroups_of_order(group, r * r):
            g1 = _subgroup_generators(group, s1)
            for s2 in subgroups_of_order(group, s):
                c = closure(group, g1 + [s2[-1]], limit=m)
                if c is not None and len(c) == m:
                    subs.add(tuple(c))
    else:
        raise ValueError(f"unsupported subgroup order {m}")
    return sorted(subs)


# -- automorphisms and isomorphism -------------------------------------------


def _element_invariants(group: FiniteGroup) -> list[tuple[int, int]]:
    orders = group.element_orders
    sizes = group.conjugacy_class_sizes
    return [(int(orders[x]), int(sizes[x])) for x in range(group.n)]


def _hom_images(src: FiniteGroup, dst: FiniteGroup, first_only: bool):
    """Yield image tables of bijective homomorphisms src -> dst."""
    if src.n != dst.n:
        return
    inv_s = _element_invariants(src)
    inv_d = _element_invariants(dst)
    if sorted(inv_s) != sorted(inv_d):
        return
    gens = src.generators
    cands = [[y for y in range(dst.n) if inv_d[y] == inv_s[g]] for g in gens]
    sm, dm = src.mul, dst.mul

    img = np.full(src.n, -1, dtype=np.int32)
    used = np.zeros(dst.n, dtype=bool)
    img[src.identity] = dst.identity
    used[dst.identity] = True
    known: list[int] = [src.identity]

    def try_assign(x0: int, y0: int) -> bool:
        stack = [(x0, y0)]
        while stack:
            x, y = stack.pop()
            cur = img[x]
            if cur >= 0:
                if cur != y:
                    return False
                continue
            if used[y]:
                return False
            img[x] = y
            used[y] = True
            stack.append((int(sm[x, x]), int(dm[y, y])))
            for z in known:
                w = img[z]
                stack.append((int(sm[x, z]), int(dm[y, w])))
                stack.append((int(sm[z, x]), int(dm[w, y])))
            known.append(x)
        return True

    def rec(i: int):
        if i == len(gens):
            assert len(known) == src.n, "generators failed to close the group"
            yield img.copy()
            return
        for y in cands[i]:
            mark = len(known)
            if try_assign(gens[i], y):
                yield from rec(i + 1)
                if first_only:
                    return
            for x in known[mark:]:
                used[img[x]] = False
                img[x] = -1
            del known[mark:]

    yield from rec(0)


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> Morphism | None:
    """First isomorphism found by generator-image backtracking, else None."""
    for m in _hom_images(g, h, first_only=True):
        return Morphism(g, h, m)
    return None


class AutGroup:
    """The automorphism group of a base group, stored as permutation rows.

    ``perms`` has one row per automorphism (sorted lexicographically, so
    indices are canonical); composition is a table when the group is small
    enough, and a dict lookup on permutation bytes otherwise.
    """

    COMP_LIMIT = 4100

    def __init__(self, base: FiniteGroup, perms: np.ndarray, generators=None):
        perms = np.ascontiguousarray(np.asarray(perms, dtype=np.int32))
        order = np.lexsort(perms.T[::-1])
        self.base = base
        self.perms = np.ascontiguousarray(perms[order])
        self.k = int(perms.shape[0])
        self.index = {self.perms[i].tobytes(): i for i in range(self.k)}
        if len(self.index) != self.k:
            raise ValueError("duplicate automorphisms")
        self.identity = self.index[np.arange(base.n, dtype=np.int32).tobytes()]
        self.inv = np.array(
            [self.index[np.argsort(self.perms[i]).astype(np.int32).tobytes()] for i in range(self.k)],
            dtype=np.int32,
        )
        self._comp: np.ndarray | None = None
        self._generators = list(map(int, generators)) if generators is not None else None

    @property
    def comp(self) -> np.ndarray | None:
        return self._comp

    def ensure_comp(self) -> bool:
        """Build the k x k composition table if the group is small enough.

        Worth doing before orbit computations, which compose heavily;
        pointless for one-off closures, hence not automatic.
        """
        if self._comp is None and self.k <= self.COMP_LIMIT:
            comp = np.empty((self.k, self.k), dtype=np.int32)
            for f in range(self.k):
                rows = self.perms[f][self.perms]  # (k, n): f o g for all g
                comp[f] = [self.index[rows[g].tobytes()] for g in range(self.k)]
            self._comp = comp
        return self._comp is not None

    def compose(self, f: int, g: int) -> int:
        if self._comp is not None:
            return int(self._comp[f, g])
        return self.index[self.perms[f][self.perms[g]].tobytes()]

    def apply(self, f: int, x: int) -> int:
        return int(self.perms[f, x])

    def conj(self, h: int, f: int) -> int:
        """h f h^{-1}"""
        return self.compose(self.compose(h, f), int(self.inv[h]))

    @cached_property
    def element_orders(self) -> np.ndarray:
        out = np.empty(self.k, dtype=np.int64)
        for f in range(self.k):
            seen = np.zeros(self.base.n, dtype=bool)
            o = 1
            perm = self.perms[f]
            for start in range(self.base.n):
                if seen[start]:
                    continue
                length = 0
                x = start
                while not seen[x]:
                    seen[x] = True
                    x = int(perm[x])
                    length += 1
                o = lcm(o, length)
            out[f] = o
        return out

    @property
    def generators(self) -> list[int]:
        if self._generators is None:
            orders = self.element_orders
            cand = sorted(range(self.k), key=lambda x: (-int(orders[x]), x))
            gens: list[int] = []
            have = {self.identity}
            for x in cand:
                if x in have:
                    continue
                gens.append(x)
                have = closure_indices(self.identity, gens, self.compose)
                if len(have) == self.k:
                    break
            self._generators = gens
        return self._generators

    def morphism(self, i: int) -> Morphism:
        return Morphism(self.base, self.base, self.perms[i].copy())

    def as_group(self) -> FiniteGroup:
        """The abstract group on automorphism indices (needs the comp table)."""
        if not self.ensure_comp():
            raise ValueError("automorphism group too large for a Cayley table")
        return FiniteGroup(self._comp, check=False, name=f"Aut({self.base.name})")


def closure_indices(identity: int, gens, compose) -> set[int]:
    """Closure of ``gens`` under an arbitrary composition callback."""
    out = {identity}
    queue = [identity]
    gl = list(gens)
    for u in queue:
        for g in gl:
            v = compose(u, g)
            if v not in out:
                out.add(v)
                queue.append(v)
    return out


def compute_automorphisms(group: FiniteGroup, bound: int = 200) -> AutGroup:
    """Aut(G) by exhaustive generator-image backtracking.

    Refuses groups larger than ``bound``: the search is quadratic per
    candidate map and meant for the ambient sizes of this project.
    """
    if group.n > bound:
        raise ValueError(f"group of order {group.n} exceeds the bound {bound}")
    perms = list(_hom_images(group, group, first_only=False))
    return AutGroup(group, np.array(perms, dtype=np.int32))


# -- recognising groups of order p^2 q ---------------------------------------


def _dlog(base: int, target: int, p: int, max_exp: int) -> int:
    cur = base % p
    for j in range(1, max_exp + 1):
        if cur == target % p:
            return j
        cur = (cur * base) % p
    raise ValueError("discrete log not found")


def identify_p2q(group: FiniteGroup, p: int, q: int) -> GroupLabel:
    """Isomorphism type of a group of order p^2*q.

    Decision tree: abelian -> exponent; Sylow-p normal + cyclic -> the
    Z_{p^2} x| Z_q type; Sylow-p normal + elementary -> eigenvalues of the
    order-q action over F_p (irreducible -> GF, split -> Gk with canonical
    k); Sylow-p non-normal -> one of the three types with normal Sylow-q,
    told apart by exponent and centre size.
    """
    n = p * p * q
    if group.n != n:
        raise ValueError(f"group has order {group.n}, expected {n}")
    orders = group.element_orders
    if group.is_abelian():
        return GroupLabel("CyclicP2Q" if orders.max() == n else "PxPQ")
    has_p2 = bool((orders == p * p).any())
    p_elems = [x for x in range(n) if (p * p) % orders[x] == 0]
    if len(p_elems) != p * p:
        # Sylow-p is not normal, so Sylow-q is
        if not has_p2:
            return GroupLabel("PxQbyP")
        zsize = len(group.center())
        return GroupLabel("QbyP2_ordP" if zsize == p else "QbyP2_ordP2")
    if has_p2:
        return GroupLabel("P2SemidirectQ")
    # elementary abelian Sylow-p; diagonalise the conjugation action of an
    # order-q element over F_p
    e1 = next(x for x in p_elems if orders[x] == p)
    c1 = set(closure(group, [e1]))
    e2 = next(x for x in p_elems if x not in c1)
    coord: dict[int, tuple[int, int]] = {}
    xi = group.identity
    for i in range(p):
        xj = xi
        for j in range(p):
            coord[xj] = (i, j)
            xj = int(group.mul[xj, e2])
        xi = int(group.mul[xi, e1])
    eps = next(x for x in range(n) if orders[x] == q)
    a, c = coord[group.conj(eps, e1)]
    b, d = coord[group.conj(eps, e2)]
    tr, det = (a + d) % p, (a * d - b * c) % p
    roots = [x for x in range(1, p) if (x * x - tr * x + det) % p == 0]
    if not roots:
        return GroupLabel("GF")
    if len(roots) == 1:
        # double eigenvalue; an order-q matrix is diagonalisable, hence scalar
        return GroupLabel("Gk", 1)
    lam, mu = roots
    if lam == 1 or mu == 1:
        return GroupLabel("Gk", 0)
    k1 = _dlog(lam, mu, p, q)
    k2 = _dlog(mu, lam, p, q)
    k = min(k1, k2)
    return GroupLabel("Gk", -1 if k == q - 1 else k)
