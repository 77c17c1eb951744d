"""Constructors for the groups of order p^2*q and their automorphism groups.

For distinct primes p, q the groups of order p^2*q fall into eight families
(two abelian, six split extensions), gated by congruences between p and q:

* ``CyclicP2Q``       Z_{p^2 q}
* ``PxPQ``            Z_p x Z_{pq}
* ``P2SemidirectQ``   Z_{p^2} x| Z_q with t of order q mod p^2   (p = 1 mod q)
* ``Gk``              (Z_p)^2 x| Z_q, diagonal action diag(g, g^k) (p = 1 mod q);
                      k is canonical (k ~ k^{-1}), with 0, 1, -1 special
* ``GF``              (Z_p)^2 x| Z_q, irreducible action by the companion
                      matrix F of x^2 + xi*x + 1                 (q | p+1, q > 2)
* ``QbyP2_ordP``      Z_q x| Z_{p^2}, conjugation exponent r of order p (q = 1 mod p)
* ``QbyP2_ordP2``     Z_q x| Z_{p^2}, conjugation exponent h of order p^2 (q = 1 mod p^2)
* ``PxQbyP``          Z_p x (Z_q x| Z_p)                         (q = 1 mod p)

Each family has an explicit exponent encoding of its elements, a vectorised
Cayley-table constructor, and a coordinate parametrisation of its full
automorphism group.  Automorphisms are realised as permutation rows by
extending generator images along a spanning tree of the Cayley graph; the
tests cross-check the result against brute-force Aut for |G| <= 100.

Coordinate conventions (typical letters: s = sigma, t = tau, e = epsilon):

* P2SemidirectQ  (c, u):        s -> s^u,            t -> s^c t
* Gk generic     (n, m, a, b):  s -> s^a, t -> t^b,  e -> s^n t^m e
* Gk k=0         (n, a, b):     s -> s^a, t -> t^b,  e -> s^n e
* Gk k=1         (n, m, a, b, c, d):  GL_2 on the (s, t) plane, e -> s^n t^m e
* Gk k=-1        (w, n, m, a, b): w=0 as generic; w=1 swaps s -> t^b, t -> s^a
                  and inverts e -> s^n t^m e^{-1}
* GF             (w, n, m, x, y): plane map x*I + y*F (w=0, e -> s^n t^m e) or
                  (x*I + y*F)*X with X F X^{-1} = F^{-1} (w=1, e -> s^n t^m e^{-1})
* QbyP2_ordP     (k, c, u):     t -> t^u,            s -> t^c s^{kp+1}
* QbyP2_ordP2    (c, u):        t -> t^u,            s -> t^c s
* PxQbyP         (l, i, c, u):  s -> t^l e^c s, t -> t^i, e -> e^u
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

import numpy as np

from .core import AutGroup, FiniteGroup, GroupLabel

__all__ = [
    "FamilyParams",
    "StructuredAut",
    "derive_params",
    "build_group",
    "all_groups",
    "all_labels",
    "structured_aut",
    "gk_values",
    "generator_letters",
    "letter_moduli",
]


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def mult_order(x: int, m: int) -> int:
    if gcd(x, m) != 1:
        raise ValueError(f"{x} is not a unit mod {m}")
    o, cur = 1, x % m
    while cur != 1:
        cur = (cur * x) % m
        o += 1
    return o


def units(m: int) -> list[int]:
    return [x for x in range(1, m) if gcd(x, m) == 1]


def units_of_order(m: int, d: int) -> list[int]:
    return [x for x in units(m) if mult_order(x, m) == d]


@dataclass(frozen=True)
class FamilyParams:
    """Derived presentation parameters for a prime pair (p, q).

    Fields are None when the gating congruence fails.  ``r`` is defined
    whenever q = 1 mod p; if moreover q = 1 mod p^2 it is tied to h as
    r = h^p so that one witness recipe serves both regimes.
    """

    p: int
    q: int
    t: int | None = None   # order q mod p^2
    g: int | None = None   # order q mod p
    xi: int | None = None  # x^2 + xi x + 1 irreducible over F_p, companion of order q
    r: int | None = None   # order p mod q
    h: int | None = None   # order p^2 mod q

    def companion(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Companion matrix F of x^2 + xi*x + 1 over F_p (columns = images)."""
        p = self.p
        return ((0, (-1) % p), (1, (-self.xi) % p))

    def as_dict(self) -> dict[str, int]:
        out = {"p": self.p, "q": self.q}
        for name in ("t", "g", "xi", "r", "h"):
            v = getattr(self, name)
            if v is not None:
                out[name] = v
        return out


def _mat_mul(a, b, p):
    return (
        ((a[0][0] * b[0][0] + a[0][1] * b[1][0]) % p, (a[0][0] * b[0][1] + a[0][1] * b[1][1]) % p),
        ((a[1][0] * b[0][0] + a[1][1] * b[1][0]) % p, (a[1][0] * b[0][1] + a[1][1] * b[1][1]) % p),
    )


def _mat_order(m, p, limit):
    ident = ((1, 0), (0, 1))
    cur, o = m, 1
    while cur != ident:
        cur = _mat_mul(cur, m, p)
        o += 1
        if o > limit:
            raise ValueError("matrix order exceeds limit")
    return o


def _valid_xis(p: int, q: int) -> list[int]:
    out = []
    for xi in range(1, p):
        if any((x * x + xi * x + 1) % p == 0 for x in range(p)):
            continue  # reducible
        f = ((0, (-1) % p), (1, (-xi) % p))
        if _mat_order(f, p, p + 1) == q:
            out.append(xi)
    return out


def derive_params(p: int, q: int, choice: str = "first") -> FamilyParams:
    """Smallest (or second-smallest) canonical presentation parameters."""
    if not (is_prime(p) and is_prime(q)) or p == q:
        raise ValueError(f"need distinct primes, got p={p}, q={q}")
    if choice not in ("first", "second"):
        raise ValueError(f"choice must be 'first' or 'second', got {choice!r}")

    def pick(cands: list[int]) -> int:
        if not cands:
            raise ValueError("no candidates")
        if choice == "second" and len(cands) > 1:
            return cands[1]
        return cands[0]

    t = g = xi = r = h = None
    if p % q == 1:
        t = pick(units_of_order(p * p, q))
        g = pick(units_of_order(p, q))
    if q > 2 and (p + 1) % q == 0:
        xi = pick(_valid_xis(p, q))
    if q % p == 1:
        if q % (p * p) == 1:
            h = pick(units_of_order(q, p * p))
            r = pow(h, p, q)
        else:
            r = pick(units_of_order(q, p))
    return FamilyParams(p=p, q=q, t=t, g=g, xi=xi, r=r, h=h)


def gk_values(q: int) -> list[int]:
    """Canonical k values for the Gk family: 0, 1, -1 then min(k, k^{-1})."""
    out = [0, 1]
    if q > 2:
        out.append(-1)
    generic = {min(k, pow(k, -1, q)) for k in range(2, q - 1)}
    out.extend(sorted(generic - {1, q - 1}))
    return out


def all_labels(p: int, q: int) -> list[GroupLabel]:
    """Isomorphism types of groups of order p^2*q, in canonical order."""
    labels = [GroupLabel("CyclicP2Q"), GroupLabel("PxPQ")]
    if p % q == 1:
        labels.append(GroupLabel("P2SemidirectQ"))
        labels.extend(GroupLabel("Gk", k) for k in gk_values(q))
    if q > 2 and (p + 1) % q == 0:
        labels.append(GroupLabel("GF"))
    if q % p == 1:
        labels.append(GroupLabel("QbyP2_ordP"))
        if q % (p * p) == 1:
            labels.append(GroupLabel("QbyP2_ordP2"))
        labels.append(GroupLabel("PxQbyP"))
    return labels


def _geom_table(b: int, count: int, mod: int) -> np.ndarray:
    """geom[k] = 1 + b + ... + b^{k-1} mod ``mod``."""
    out = np.zeros(count, dtype=np.int64)
    acc, power = 0, 1
    for k in range(1, count):
        acc = (acc + power) % mod
        power = (power * b) % mod
        out[k] = acc
    return out


def _pow_table(b: int, count: int, mod: int) -> np.ndarray:
    out = np.empty(count, dtype=np.int64)
    cur = 1
    for k in range(count):
        out[k] = cur
        cur = (cur * b) % mod
    return out


# -- Cayley table constructors ------------------------------------------------


def _build_cyclic(pr: FamilyParams) -> FiniteGroup:
    n = pr.p * pr.p * pr.q
    mul = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(mul, generators=[1], label=GroupLabel("CyclicP2Q"), name=f"Z{n}")


def _build_pxpq(pr: FamilyParams) -> FiniteGroup:
    p, q = pr.p, pr.q
    idx = np.arange(p * p * q)
    y, x2, x1 = idx % q, (idx // q) % p, idx // (p * q)
    X1 = (x1[:, None] + x1[None, :]) % p
    X2 = (x2[:, None] + x2[None, :]) % p
    Y = (y[:, None] + y[None, :]) % q
    mul = (X1 * p + X2) * q + Y
    return FiniteGroup(
        mul, generators=[p * q, q, 1], label=GroupLabel("PxPQ"), name=f"Z{p}xZ{p*q}"
    )


def _build_p2sq(pr: FamilyParams) -> FiniteGroup:
    p2, q, t = pr.p * pr.p, pr.q, pr.t
    idx = np.arange(p2 * q)
    x, y = idx // q, idx % q
    tp = _pow_table(t, q, p2)
    X = (x[:, None] + tp[y][:, None] * x[None, :]) % p2
    Y = (y[:, None] + y[None, :]) % q
    mul = X * q + Y
    return FiniteGroup(
        mul, generators=[q, 1], label=GroupLabel("P2SemidirectQ"), name=f"Z{p2}:Z{q}"
    )


def _build_gk(pr: FamilyParams, k: int) -> FiniteGroup:
    p, q, g = pr.p, pr.q, pr.g
    idx = np.arange(p * p * q)
    z, y, x = idx % q, (idx // q) % p, idx // (p * q)
    gz = _pow_table(g, q, p)
    gkz = np.array([pow(g, (k * zz) % q, p) for zz in range(q)], dtype=np.int64)
    X = (x[:, None] + gz[z][:, None] * x[None, :]) % p
    Y = (y[:, None] + gkz[z][:, None] * y[None, :]) % p
    Z = (z[:, None] + z[None, :]) % q
    mul = (X * p + Y) * q + Z
    return FiniteGroup(
        mul, generators=[p * q, q, 1], label=GroupLabel("Gk", k), name=f"G({k})@{p}"
    )


def _build_gf(pr: FamilyParams) -> FiniteGroup:
    p, q = pr.p, pr.q
    f = pr.companion()
    fpow = [((1, 0), (0, 1))]
    for _ in range(q - 1):
        fpow.append(_mat_mul(fpow[-1], f, p))
    f00 = np.array([m[0][0] for m in fpow])
    f01 = np.array([m[0][1] for m in fpow])
    f10 = np.array([m[1][0] for m in fpow])
    f11 = np.array([m[1][1] for m in fpow])
    idx = np.arange(p * p * q)
    z, y, x = idx % q, (idx // q) % p, idx // (p * q)
    X = (x[:, None] + f00[z][:, None] * x[None, :] + f01[z][:, None] * y[None, :]) % p
    Y = (y[:, None] + f10[z][:, None] * x[None, :] + f11[z][:, None] * y[None, :]) % p
    Z = (z[:, None] + z[None, :]) % q
    mul = (X * p + Y) * q + Z
    return FiniteGroup(
        mul, generators=[p * q, q, 1], label=GroupLabel("GF"), name=f"GF@{p},{q}"
    )


def _build_qp2(pr: FamilyParams, unit: int, label: GroupLabel) -> FiniteGroup:
    p2, q = pr.p * pr.p, pr.q
    idx = np.arange(p2 * q)
    y, x = idx // p2, idx % p2
    up = _pow_table(unit, p2, q)
    Y = (y[:, None] + up[x][:, None] * y[None, :]) % q
    X = (x[:, None] + x[None, :]) % p2
    mul = Y * p2 + X
    kind = "h" if label.family == "QbyP2_ordP2" else "r"
    return FiniteGroup(mul, generators=[1, p2], label=label, name=f"Z{q}:Z{p2}({kind})")


def _build_pxq(pr: FamilyParams) -> FiniteGroup:
    p, q, r = pr.p, pr.q, pr.r
    idx = np.arange(p * p * q)
    x, y, z = idx % p, (idx // p) % p, idx // (p * p)
    rp = _pow_table(r, p, q)
    Z = (z[:, None] + rp[x][:, None] * z[None, :]) % q
    Y = (y[:, None] + y[None, :]) % p
    X = (x[:, None] + x[None, :]) % p
    mul = (Z * p + Y) * p + X
    return FiniteGroup(
        mul, generators=[1, p, p * p], label=GroupLabel("PxQbyP"), name=f"Z{p}x(Z{q}:Z{p})"
    )


def build_group(label: GroupLabel, params: FamilyParams) -> FiniteGroup:
    fam = label.family
    if fam == "CyclicP2Q":
        return _build_cyclic(params)
    if fam == "PxPQ":
        return _build_pxpq(params)
    if fam == "P2SemidirectQ":
        if params.t is None:
            raise ValueError("P2SemidirectQ needs p = 1 mod q")
        return _build_p2sq(params)
    if fam == "Gk":
        if params.g is None:
            raise ValueError("Gk needs p = 1 mod q")
        return _build_gk(params, label.k)
    if fam == "GF":
        if params.xi is None:
            raise ValueError("GF needs q | p+1 and q > 2")
        return _build_gf(params)
    if fam == "QbyP2_ordP":
        if params.r is None:
            raise ValueError("QbyP2_ordP needs q = 1 mod p")
        return _build_qp2(params, params.r, label)
    if fam == "QbyP2_ordP2":
        if params.h is None:
            raise ValueError("QbyP2_ordP2 needs q = 1 mod p^2")
        return _build_qp2(params, params.h, label)
    if fam == "PxQbyP":
        if params.r is None:
            raise ValueError("PxQbyP needs q = 1 mod p")
        return _build_pxq(params)
    raise ValueError(f"unknown family {fam}")


def all_groups(p: int, q: int, choice: str = "first") -> list[FiniteGroup]:
    params = derive_params(p, q, choice)
    return [build_group(lbl, params) for lbl in all_labels(p, q)]


# -- presentation letters for witness recipes ---------------------------------

_LETTERS = {
    "CyclicP2Q": ("s",),
    "PxPQ": ("s", "t", "e"),
    "P2SemidirectQ": ("s", "t"),
    "Gk": ("s", "t", "e"),
    "GF": ("s", "t", "e"),
    "QbyP2_ordP": ("s", "t"),
    "QbyP2_ordP2": ("s", "t"),
    "PxQbyP": ("s", "t", "e"),
}


def generator_letters(label: GroupLabel) -> tuple[str, ...]:
    """Letters naming the presentation generators, aligned with .generators."""
    return _LETTERS[label.family]


def letter_moduli(label: GroupLabel, p: int, q: int) -> dict[str, int]:
    """Order of each presentation generator (the modulus of its exponent)."""
    fam = label.family
    if fam == "CyclicP2Q":
        return {"s": p * p * q}
    if fam == "PxPQ":
        return {"s": p, "t": p, "e": q}
    if fam == "P2SemidirectQ":
        return {"s": p * p, "t": q}
    if fam in ("Gk", "GF"):
        return {"s": p, "t": p, "e": q}
    if fam in ("QbyP2_ordP", "QbyP2_ordP2"):
        return {"s": p * p, "t": q}
    if fam == "PxQbyP":
        return {"s": p, "t": p, "e": q}
    raise ValueError(fam)


# -- structured automorphism groups -------------------------------------------


def _gl2(p: int) -> list[tuple[int, int, int, int]]:
    return [
        (a, b, c, d)
        for a, b, c, d in itertools.product(range(p), repeat=4)
        if (a * d - b * c) % p
    ]


def _spanning_tree(group: FiniteGroup, gens: list[int]):
    n = group.n
    parent = np.full(n, -1, dtype=np.int32)
    via = np.full(n, -1, dtype=np.int32)
    seen = np.zeros(n, dtype=bool)
    seen[group.identity] = True
    order = [group.identity]
    for u in order:
        for gi, g in enumerate(gens):
            v = int(group.mul[u, g])
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                via[v] = gi
                order.append(v)
    if len(order) != n:
        raise ValueError("generators do not generate the group")
    return np.array(order, dtype=np.int32), parent, via


def _extend_batch(group: FiniteGroup, tree, gen_imgs: np.ndarray) -> np.ndarray:
    """Extend generator images (B, #gens) to full permutations (B, n)."""
    order, parent, via = tree
    out = np.empty((gen_imgs.shape[0], group.n), dtype=np.int32)
    out[:, order[0]] = group.identity
    for x in order[1:]:
        out[:, x] = group.mul[out[:, parent[x]], gen_imgs[:, via[x]]]
    return out


@dataclass
class StructuredAut:
    """Aut(A) with a two-way codec between coordinates and aut indices."""

    label: GroupLabel
    params: FamilyParams
    base: FiniteGroup
    aut: AutGroup
    coord_names: tuple[str, ...]
    coords: list[tuple[int, ...]]  # aligned with aut indices

    def __post_init__(self):
        self._index = {c: i for i, c in enumerate(self.coords)}

    def aut_index(self, *args, **kw) -> int:
        if args and kw:
            raise TypeError("pass coordinates positionally or by name, not both")
        if kw:
            coord = tuple(int(kw[name]) for name in self.coord_names)
        elif len(args) == 1 and isinstance(args[0], (tuple, list)):
            coord = tuple(int(v) for v in args[0])
        else:
            coord = tuple(int(v) for v in args)
        return self._index[coord]

    def coords_of(self, i: int) -> dict[str, int]:
        return dict(zip(self.coord_names, self.coords[i]))


def _family_coords(label: GroupLabel, pr: FamilyParams):
    """(coord_names, iterator of coord tuples, gen_images fn, |Aut| formula)."""
    p, q = pr.p, pr.q
    p2, n = p * p, p * p * q
    fam = label.family
    if fam == "CyclicP2Q":
        cands = units(n)
        return ("u",), [(u,) for u in cands], lambda c: [c[0]], len(cands)
    if fam == "PxPQ":
        gl = _gl2(p)
        uq = units(q)
        def imgs(c):
            a, b, cc, d, u = c
            return [(a * p + cc) * q, (b * p + d) * q, u]
        return (
            ("a", "b", "c", "d", "u"),
            [m + (u,) for m in gl for u in uq],
            imgs,
            len(gl) * len(uq),
        )
    if fam == "P2SemidirectQ":
        up2 = units(p2)
        def imgs(c):
            cc, u = c
            return [u * q, cc * q + 1]
        return (
            ("c", "u"),
            [(cc, u) for cc in range(p2) for u in up2],
            imgs,
            p2 * len(up2),
        )
    if fam == "Gk" and label.k == 0:
        up = units(p)
        def imgs(c):
            nn, a, b = c
            return [a * p * q, b * q, nn * p * q + 1]
        return (
            ("n", "a", "b"),
            [(nn, a, b) for nn in range(p) for a in up for b in up],
            imgs,
            p * len(up) ** 2,
        )
    if fam == "Gk" and label.k == 1:
        gl = _gl2(p)
        def imgs(c):
            nn, m, a, b, cc, d = c
            return [(a * p + cc) * q, (b * p + d) * q, (nn * p + m) * q + 1]
        return (
            ("n", "m", "a", "b", "c", "d"),
            [(nn, m) + mat for nn in range(p) for m in range(p) for mat in gl],
            imgs,
            p2 * len(gl),
        )
    if fam == "Gk" and label.k == -1:
        up = units(p)
        def imgs(c):
            w, nn, m, a, b = c
            if w == 0:
                return [a * p * q, b * q, (nn * p + m) * q + 1]
            return [b * q, a * p * q, (nn * p + m) * q + (q - 1)]
        return (
            ("w", "n", "m", "a", "b"),
            [
                (w, nn, m, a, b)
                for w in (0, 1)
                for nn in range(p)
                for m in range(p)
                for a in up
                for b in up
            ],
            imgs,
            2 * p2 * len(up) ** 2,
        )
    if fam == "Gk":
        up = units(p)
        def imgs(c):
            nn, m, a, b = c
            return [a * p * q, b * q, (nn * p + m) * q + 1]
        return (
            ("n", "m", "a", "b"),
            [
                (nn, m, a, b)
                for nn in range(p)
                for m in range(p)
                for a in up
                for b in up
            ],
            imgs,
            p2 * len(up) ** 2,
        )
    if fam == "GF":
        xi = pr.xi
        pairs = [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]
        def imgs(c):
            w, nn, m, x, y = c
            if w == 0:
                # M = x*I + y*F
                mat = (x, (-y) % p, y, (x - xi * y) % p)
                ez = 1
            else:
                # M = (x*I + y*F) * X with X = [[1, -xi], [0, -1]]
                mat = (x, (y - xi * x) % p, y, (-x) % p)
                ez = q - 1
            a, b, cc, d = mat
            if (a * d - b * cc) % p == 0:
                raise ValueError("singular plane map in GF coordinates")
            return [(a * p + cc) * q, (b * p + d) * q, (nn * p + m) * q + ez]
        return (
            ("w", "n", "m", "x", "y"),
            [
                (w, nn, m, x, y)
                for w in (0, 1)
                for nn in range(p)
                for m in range(p)
                for (x, y) in pairs
            ],
            imgs,
            2 * p2 * (p2 - 1),
        )
    if fam == "QbyP2_ordP":
        uq = units(q)
        def imgs(c):
            k, cc, u = c
            return [cc * p2 + (k * p + 1) % p2, u * p2]
        return (
            ("k", "c", "u"),
            [(k, cc, u) for k in range(p) for cc in range(q) for u in uq],
            imgs,
            p * q * len(uq),
        )
    if fam == "QbyP2_ordP2":
        uq = units(q)
        def imgs(c):
            cc, u = c
            return [cc * p2 + 1, u * p2]
        return (
            ("c", "u"),
            [(cc, u) for cc in range(q) for u in uq],
            imgs,
            q * len(uq),
        )
    if fam == "PxQbyP":
        up, uq = units(p), units(q)
        def imgs(c):
            l, i, cc, u = c
            return [(cc * p + l) * p + 1, i * p, u * p2]
        return (
            ("l", "i", "c", "u"),
            [
                (l, i, cc, u)
                for l in range(p)
                for i in up
                for cc in range(q)
                for u in uq
            ],
            imgs,
            p * q * len(up) * len(uq),
        )
    raise ValueError(f"no structured automorphism group for {fam}")


def _assert_automorphisms(group: FiniteGroup, perms: np.ndarray, full_limit=1500):
    if not (np.sort(perms, axis=1) == np.arange(group.n)).all():
        raise AssertionError("structured aut produced a non-bijective map")
    count = perms.shape[0]
    if count <= full_limit:
        check = range(count)
    else:
        check = np.random.default_rng(1).choice(count, size=64, replace=False)
    mul = group.mul
    for i in check:
        pm = perms[i]
        if not np.array_equal(pm[mul], mul[pm[:, None], pm[None, :]]):
            raise AssertionError("structured aut produced a non-homomorphism")


def structured_aut(
    label: GroupLabel, params: FamilyParams, base: FiniteGroup | None = None
) -> StructuredAut:
    """Aut(A) from the family's coordinate parametrisation."""
    if base is None:
        base = build_group(label, params)
    names, coord_list, imgs, expected = _family_coords(label, params)
    tree = _spanning_tree(base, base.generators)
    blocks = []
    chunk = 4096
    for lo in range(0, len(coord_list), chunk):
        gen_imgs = np.array(
            [imgs(c) for c in coord_list[lo : lo + chunk]], dtype=np.int32
        )
        blocks.append(_extend_batch(base, tree, gen_imgs))
    perms = np.vstack(blocks)
    if perms.shape[0] != expected:
        raise AssertionError(
            f"{label.key()}: got {perms.shape[0]} automorphisms, expected {expected}"
        )
    _assert_automorphisms(base, perms)
    aut = AutGroup(base, perms)
    # AutGroup sorts its rows; realign the coordinate labels
    coords_sorted: list[tuple[int, ...] | None] = [None] * aut.k
    for coord, pm in zip(coord_list, perms):
        coords_sorted[aut.index[pm.tobytes()]] = coord
    if any(c is None for c in coords_sorted):
        raise AssertionError("duplicate coordinates in structured aut")
    return StructuredAut(
        label=label,
        params=params,
        base=base,
        aut=aut,
        coord_names=names,
        coords=coords_sorted,  # type: ignore[arg-type]
    )
