"""Executable witnesses: closed-form representative subgroups per orbit class.

Every orbit class of regular subgroups has a closed-form representative:
a short list of generators, each a word in the presentation generators of
the additive group paired with an automorphism given by its structured
coordinates.  The recipes live in ``data/catalog_data.json``; this module
evaluates them inside the holomorph and checks them against the enumeration.

Data file schema (``version`` 1):

* ``lemmas``: list of entries, one per (additive family, pi2 stratum):
    - ``id``: stable identifier, ``<family>-stratum-<pi2>``.
    - ``additive``: family key of the additive group (``GroupLabel.key()``).
    - ``requires``: integer predicate in ``p, q`` selecting the regime.
    - ``pi2_size``: expression; the common image size under the projection
      to the automorphism part for every witness of the entry.
    - ``count``: expression; the number of orbit classes in the stratum.
    - ``witnesses``: list of parametrised recipes:
        - ``name``: base name; parameter bindings are appended for display.
        - ``params``: ordered map name -> [lo, hi] (inclusive, expressions).
        - ``where``: optional predicate filtering the parameter grid.
        - ``generators``: list of ``{"word": [[atom, expr], ...], "aut": coords}``.
          An atom is a presentation letter (``s``, ``t``, ``e``), with the
          expression evaluated modulo that letter's order, or the literal
          ``vec`` whose "expression" names a built-in vector recipe (the
          matrix arithmetic of the irreducible-action family).  ``aut`` is
          either null (identity) or a map of structured coordinates.
        - ``classes``: ordered rules ``{"when": predicate, "is": family key}``;
          the first matching rule names the expected multiplicative class.
* ``manual``: strata excluded from the recipe language, with the reason.

Expression language: integer literals, names from the evaluation
environment (``p``, ``q``, the derived units ``r``, ``h``, ``t``, ``g``,
``xi``, witness parameters), ``+ - * / % **``, unary minus, comparisons
and ``and/or/not`` in predicates.  In modular position (word exponents,
automorphism coordinates) ``/`` multiplies by a modular inverse and an
uninvertible divisor raises :class:`RecipeError`.
"""

from __future__ import annotations

import ast
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .core import FiniteGroup, GroupLabel, identify_p2q
from .enumeration import OrbitClass, _orbit_of, circle_group, stratified_orbit_classes
from .families import (
    FamilyParams,
    all_labels,
    build_group,
    derive_params,
    generator_letters,
    letter_moduli,
    structured_aut,
)
from .holomorph import Holomorph, HolSubgroup, closure_packed, is_regular

DATA_VERSION = 1


class RecipeError(ValueError):
    """A witness recipe failed to evaluate at the given parameters."""


# ---------------------------------------------------------------------------
# expression language


_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Mod, ast.Pow)
_CMPOPS = (ast.Eq, ast.NotEq, ast.Lt, ast.LtE, ast.Gt, ast.GtE)


@lru_cache(maxsize=None)
def _parsed(expr: str) -> ast.Expression:
    try:
        return ast.parse(expr, mode="eval")
    except SyntaxError as exc:
        raise RecipeError(f"bad expression {expr!r}: {exc}") from None


def _eval_node(node, env: dict, mod: int | None):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, env, mod)
    if isinstance(node, ast.Constant):
        if not isinstance(node.value, int) or isinstance(node.value, bool):
            raise RecipeError(f"non-integer literal {node.value!r}")
        return node.value % mod if mod else node.value
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise RecipeError(f"unknown name {node.id!r}")
        v = int(env[node.id])
        return v % mod if mod else v
    if isinstance(node, ast.UnaryOp):
        if isinstance(node.op, ast.USub):
            v = -_eval_node(node.operand, env, mod)
            return v % mod if mod else v
        if isinstance(node.op, ast.Not):
            if mod:
                raise RecipeError("'not' is not defined in modular position")
            return not _eval_node(node.operand, env, mod)
        raise RecipeError(f"unsupported unary operator {ast.dump(node.op)}")
    if isinstance(node, ast.BinOp) and isinstance(node.op, _BINOPS):
        if isinstance(node.op, ast.Pow):
            base = _eval_node(node.left, env, mod)
            exp = _eval_node(node.right, env, None)
            try:
                return pow(base, exp, mod) if mod else base**exp
            except ValueError:
                raise RecipeError(
                    f"base not invertible modulo {mod} for a negative power"
                ) from None
        a = _eval_node(node.left, env, mod)
        b = _eval_node(node.right, env, mod)
        if isinstance(node.op, ast.Add):
            v = a + b
        elif isinstance(node.op, ast.Sub):
            v = a - b
        elif isinstance(node.op, ast.Mult):
            v = a * b
        elif isinstance(node.op, ast.Mod):
            if mod:
                raise RecipeError("'%' is not defined in modular position")
            if b == 0:
                raise RecipeError("modulus zero in '%'")
            return a % b
        else:  # Div
            if mod is None:
                if b == 0 or a % b:
                    raise RecipeError(f"{a}/{b} is not an integer")
                return a // b
            try:
                v = a * pow(b, -1, mod)
            except ValueError:
                raise RecipeError(f"{b} is not invertible modulo {mod}") from None
        return v % mod if mod else v
    if isinstance(node, ast.Compare):
        if mod:
            raise RecipeError("comparisons are not defined in modular position")
        left = _eval_node(node.left, env, None)
        for op, rhs in zip(node.ops, node.comparators):
            if not isinstance(op, _CMPOPS):
                raise RecipeError(f"unsupported comparison {ast.dump(op)}")
            right = _eval_node(rhs, env, None)
            ok = {
                ast.Eq: left == right,
                ast.NotEq: left != right,
                ast.Lt: left < right,
                ast.LtE: left <= right,
                ast.Gt: left > right,
                ast.GtE: left >= right,
            }[type(op)]
            if not ok:
                return False
            left = right
        return True
    if isinstance(node, ast.BoolOp):
        if mod:
            raise RecipeError("boolean operators are not defined in modular position")
        vals = (_eval_node(v, env, None) for v in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    raise RecipeError(f"unsupported expression node {ast.dump(node)}")


def eval_expr(expr: str, env: dict, mod: int | None = None) -> int:
    """Evaluate a recipe expression; ``mod`` switches to modular arithmetic."""
    if mod is not None and mod <= 0:
        raise RecipeError(f"bad modulus {mod}")
    return _eval_node(_parsed(expr), env, mod)


def eval_cond(expr: str, env: dict) -> bool:
    return bool(eval_expr(expr, env, None))


# ---------------------------------------------------------------------------
# 2x2 matrices over Z_p for the irreducible-action vector recipes


def _m_mul(A, B, p):
    a, b, c, d = A
    e, f, g, h = B
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def _m_add(A, B, p):
    return tuple((x + y) % p for x, y in zip(A, B))


def _m_scale(k, A, p):
    return tuple((k * x) % p for x in A)


def _m_pow(A, k, p):
    R = (1, 0, 0, 1)
    for _ in range(k):
        R = _m_mul(R, A, p)
    return R


def _m_inv(A, p):
    a, b, c, d = A
    det = (a * d - b * c) % p
    try:
        di = pow(det, -1, p)
    except ValueError:
        raise RecipeError("singular matrix in a vector recipe") from None
    return ((d * di) % p, (-b * di) % p, (-c * di) % p, (a * di) % p)


def _m_apply(A, v, p):
    a, b, c, d = A
    return ((a * v[0] + b * v[1]) % p, (c * v[0] + d * v[1]) % p)


def gf_psi(x: int, y: int, p: int, xi: int) -> int:
    """The conjugation invariant of the plane subgroups: x²+y²-x+y-ξxy mod p."""
    return (x * x + y * y - x + y - xi * x * y) % p


def gf_vector(name: str, env: dict, params: FamilyParams) -> tuple[int, int]:
    """Built-in vector recipes for the irreducible-action additive family.

    ``ws``/``wt``: (F-1)^{-1} applied to the first/second basis vector.
    ``uc``: H(F^{c+1})^{-1}(F-1)^{-1}(F^c-1)(F^{c+2}-1) applied to the first
    basis vector, with H the order-q characteristic polynomial.
    ``Fuc``: F applied to ``uc``.
    ``va``: the first (x, y) in row-major order with psi(x, y) = a.
    ``vta``: the companion of ``va``: (-y-1, x-ξy-1).
    """
    p, xi = params.p, params.xi
    if xi is None:
        raise RecipeError("vector recipes need the irreducible-action parameters")
    I = (1, 0, 0, 1)
    F = (0, (-1) % p, 1, (-xi) % p)

    def char_poly(M):
        return _m_add(_m_add(_m_mul(M, M, p), _m_scale(xi, M, p), p), I, p)

    def minus_I(M):
        return _m_add(M, _m_scale(-1, I, p), p)

    if name in ("ws", "wt"):
        basis = (1, 0) if name == "ws" else (0, 1)
        return _m_apply(_m_inv(minus_I(F), p), basis, p)
    if name in ("uc", "Fuc"):
        c = int(env["c"])
        M = _m_inv(char_poly(_m_pow(F, c + 1, p)), p)
        M = _m_mul(M, _m_inv(minus_I(F), p), p)
        M = _m_mul(M, minus_I(_m_pow(F, c, p)), p)
        M = _m_mul(M, minus_I(_m_pow(F, c + 2, p)), p)
        u = _m_apply(M, (1, 0), p)
        return _m_apply(F, u, p) if name == "Fuc" else u
    if name in ("va", "vta"):
        a = int(env["a"]) % p
        v = next(
            ((x, y) for x in range(p) for y in range(p) if gf_psi(x, y, p, xi) == a),
            None,
        )
        if v is None:
            raise RecipeError(f"no plane vector with invariant {a}")
        if name == "va":
            return v
        x, y = v
        return ((-y - 1) % p, (x - xi * y - 1) % p)
    raise RecipeError(f"unknown vector recipe {name!r}")


# ---------------------------------------------------------------------------
# evaluation contexts


def _coord_moduli(label: GroupLabel, p: int, q: int) -> dict[str, int]:
    fam = label.family
    if fam == "QbyP2_ordP":
        return {"k": p, "c": q, "u": q}
    if fam == "QbyP2_ordP2":
        return {"c": q, "u": q}
    if fam == "PxQbyP":
        return {"l": p, "i": p, "c": q, "u": q}
    if fam == "GF":
        return {"w": 2, "n": p, "m": p, "x": p, "y": p}
    if fam == "P2SemidirectQ":
        return {"c": p * p, "u": p * p}
    if fam == "CyclicP2Q":
        return {"u": p * p * q}
    if fam == "PxPQ":
        return {"a": p, "b": p, "c": p, "d": p, "u": q}
    raise RecipeError(f"no coordinate moduli for family {fam}")


def _base_env(p: int, q: int, params: FamilyParams) -> dict[str, int]:
    env = {"p": p, "q": q}
    for name in ("t", "g", "xi", "r", "h"):
        value = getattr(params, name)
        if value is not None:
            env[name] = value
    return env


class FamilyContext:
    """Holomorph, structured automorphisms and environment for one family."""

    def __init__(self, additive: str, p: int, q: int, choice: str = "first"):
        self.p, self.q, self.choice = p, q, choice
        self.params = derive_params(p, q, choice)
        label = next((lb for lb in all_labels(p, q) if lb.key() == additive), None)
        if label is None:
            raise ValueError(f"no additive family {additive!r} at ({p}, {q})")
        self.label = label
        self.group: FiniteGroup = build_group(label, self.params)
        self.saut = structured_aut(label, self.params, self.group)
        self.hol = Holomorph(self.group, self.saut.aut)
        self.letters = generator_letters(label)
        self.moduli = letter_moduli(label, p, q)
        self.gen_of = dict(zip(self.letters, self.group.generators))
        self.coord_moduli = _coord_moduli(label, p, q)
        self.env = _base_env(p, q, self.params)

    def element_of_word(self, word, env: dict) -> int:
        """Left-to-right product of letter powers (and vector atoms)."""
        group = self.group
        elem = group.identity
        for atom, expr in word:
            if atom == "vec":
                vx, vy = gf_vector(expr, env, self.params)
                part = self._letter_power("s", vx)
                part = int(group.mul[part, self._letter_power("t", vy)])
            else:
                if atom not in self.gen_of:
                    raise RecipeError(f"unknown letter {atom!r} for {self.label.key()}")
                part = self._letter_power(atom, eval_expr(expr, env, self.moduli[atom]))
            elem = int(group.mul[elem, part])
        return elem

    def _letter_power(self, letter: str, exp: int) -> int:
        g = self.gen_of[letter]
        out = self.group.identity
        for _ in range(exp % self.moduli[letter]):
            out = int(self.group.mul[out, g])
        return out

    def aut_of(self, coords, env: dict) -> int:
        if coords is None:
            return int(self.saut.aut.identity)
        names = set(self.saut.coord_names)
        if set(coords) != names:
            raise RecipeError(
                f"coordinates {sorted(coords)} do not match {sorted(names)}"
            )
        values = {
            nm: eval_expr(expr, env, self.coord_moduli[nm]) for nm, expr in coords.items()
        }
        try:
            return self.saut.aut_index(**values)
        except KeyError:
            raise RecipeError(f"coordinates {values} are not an automorphism") from None


# ---------------------------------------------------------------------------
# data access


@lru_cache(maxsize=1)
def _data() -> dict:
    text = resources.files("p2qbrace").joinpath("data/catalog_data.json").read_text()
    data = json.loads(text)
    if data.get("version") != DATA_VERSION:
        raise RecipeError(f"catalog data version {data.get('version')} unsupported")
    ids = [e["id"] for e in data["lemmas"]]
    if len(ids) != len(set(ids)):
        raise RecipeError("duplicate lemma ids in catalog data")
    return data


def all_lemma_ids() -> list[str]:
    return [e["id"] for e in _data()["lemmas"]]


def lemma_entry(lemma_id: str) -> dict:
    for entry in _data()["lemmas"]:
        if entry["id"] == lemma_id:
            return entry
    raise KeyError(f"no catalog lemma {lemma_id!r}")


def manual_notes() -> list[dict]:
    """Strata excluded from the recipe language, with the reasons."""
    return list(_data()["manual"])


def applicable_lemma_ids(p: int, q: int, choice: str = "first") -> list[str]:
    """Lemma ids whose regime predicate holds at (p, q), in data order."""
    env = _base_env(p, q, derive_params(p, q, choice))
    return [e["id"] for e in _data()["lemmas"] if eval_cond(e["requires"], env)]


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class Witness:
    """One concrete generator recipe: a lemma instance at fixed parameters."""

    lemma_id: str
    additive: str
    name: str
    pi2_size: int
    binding: tuple[tuple[str, int], ...]
    generators: tuple  # ((word, coords-or-None), ...), hashable raw recipe
    expected_class: str


@dataclass(frozen=True)
class LemmaInstance:
    lemma_id: str
    additive: str
    pi2_size: int
    expected_count: int
    witnesses: tuple[Witness, ...]


def _freeze_generators(gen_specs) -> tuple:
    out = []
    for g in gen_specs:
        word = tuple((str(a), str(e)) for a, e in g["word"])
        coords = g.get("aut")
        out.append((word, None if coords is None else tuple(sorted(coords.items()))))
    return tuple(out)


def _expected_class(rules, env: dict) -> str:
    for rule in rules:
        if "when" not in rule or eval_cond(rule["when"], env):
            return rule["is"]
    raise RecipeError("no class rule matched")


def instantiate_lemma(
    lemma_id: str, p: int, q: int, choice: str = "first"
) -> LemmaInstance:
    """Expand a lemma entry into concrete witnesses at (p, q).

    Raises ValueError when (p, q) lies outside the lemma's regime.
    """
    entry = lemma_entry(lemma_id)
    env = _base_env(p, q, derive_params(p, q, choice))
    if not eval_cond(entry["requires"], env):
        raise ValueError(f"lemma {lemma_id} does not apply at ({p}, {q})")
    pi2 = eval_expr(entry["pi2_size"], env)
    count = eval_expr(entry["count"], env)
    witnesses = []
    for spec in entry["witnesses"]:
        names = list(spec.get("params", {}))
        ranges = [
            range(eval_expr(lo, env), eval_expr(hi, env) + 1)
            for lo, hi in spec.get("params", {}).values()
        ]
        frozen = _freeze_generators(spec["generators"])
        for combo in itertools.product(*ranges):
            wenv = {**env, **dict(zip(names, combo))}
            if "where" in spec and spec["where"] and not eval_cond(spec["where"], wenv):
                continue
            display = spec["name"]
            if names:
                display += "(" + ", ".join(f"{n}={v}" for n, v in zip(names, combo)) + ")"
            witnesses.append(
                Witness(
                    lemma_id=lemma_id,
                    additive=entry["additive"],
                    name=display,
                    pi2_size=pi2,
                    binding=tuple(zip(names, combo)),
                    generators=frozen,
                    expected_class=_expected_class(spec["classes"], wenv),
                )
            )
    return LemmaInstance(
        lemma_id=lemma_id,
        additive=entry["additive"],
        pi2_size=pi2,
        expected_count=count,
        witnesses=tuple(witnesses),
    )


def evaluate_witness(witness: Witness, ctx: FamilyContext) -> HolSubgroup:
    """Close the witness generators inside the holomorph.

    Raises RecipeError when the arithmetic is undefined or the closure does
    not have order p²q.
    """
    if witness.additive != ctx.label.key():
        raise ValueError(
            f"witness {witness.name} is for {witness.additive}, context is "
            f"{ctx.label.key()}"
        )
    env = dict(ctx.env)
    env.update(witness.binding)
    packed = []
    for word, coords in witness.generators:
        a = ctx.element_of_word(word, env)
        f = ctx.aut_of(None if coords is None else dict(coords), env)
        packed.append(ctx.hol.pack(a, f))
    n = ctx.group.n
    elems = closure_packed(ctx.hol, packed, limit=n)
    if elems is None or len(elems) != n:
        size = "more than n" if elems is None else str(len(elems))
        raise RecipeError(
            f"{witness.name}: generated subgroup has order {size}, expected {n}"
        )
    return HolSubgroup(ctx.hol, elems)


# ---------------------------------------------------------------------------
# verification against the enumeration


@dataclass
class LemmaReport:
    """Outcome of checking one lemma's witnesses against the enumeration."""

    lemma_id: str
    additive: str
    p: int
    q: int
    pi2_size: int
    expected_count: int
    witness_count: int
    enumerated_count: int
    ok: bool
    problems: list[str]

    def summary(self) -> str:
        state = "ok" if self.ok else "FAIL"
        return (
            f"{self.lemma_id} at ({self.p}, {self.q}): {state} "
            f"[{self.witness_count} witnesses, {self.enumerated_count} orbit "
            f"classes, expected {self.expected_count}]"
        )


def _canonical_orbit(hol: Holomorph, elements) -> tuple[int, ...]:
    key, _, _ = _orbit_of(hol, np.asarray(elements, dtype=np.int64))
    return key


def verify_lemma(
    lemma_id: str,
    p: int,
    q: int,
    choice: str = "first",
    *,
    ctx: FamilyContext | None = None,
    enumerated: list[OrbitClass] | None = None,
) -> LemmaReport:
    """Check one lemma: witnesses regular, pairwise non-conjugate, and in
    bijection with the enumerated orbit classes of their stratum."""
    inst = instantiate_lemma(lemma_id, p, q, choice)
    if ctx is None:
        ctx = FamilyContext(inst.additive, p, q, choice)
    problems: list[str] = []
    canon: dict[tuple[int, ...], str] = {}
    for w in inst.witnesses:
        try:
            sub = evaluate_witness(w, ctx)
        except RecipeError as exc:
            problems.append(f"{w.name}: {exc}")
            continue
        if not is_regular(ctx.hol, sub):
            problems.append(f"{w.name}: closure is not a regular subgroup")
            continue
        if sub.pi2_size != inst.pi2_size:
            problems.append(
                f"{w.name}: automorphism image has size {sub.pi2_size}, "
                f"stratum is {inst.pi2_size}"
            )
            continue
        got = identify_p2q(circle_group(ctx.hol, sub), p, q).key()
        if got != w.expected_class:
            problems.append(
                f"{w.name}: multiplicative class {got}, recipe says {w.expected_class}"
            )
        key = _canonical_orbit(ctx.hol, sub.elements)
        if key in canon:
            problems.append(f"{w.name}: conjugate to witness {canon[key]}")
        else:
            canon[key] = w.name
    if enumerated is None:
        enumerated = stratified_orbit_classes(ctx.hol)
    stratum = [cl for cl in enumerated if cl.pi2_size == inst.pi2_size]
    enum_keys = {_canonical_orbit(ctx.hol, cl.rep.elements) for cl in stratum}
    if len(canon) != inst.expected_count:
        problems.append(
            f"{len(canon)} pairwise non-conjugate witnesses, expected "
            f"{inst.expected_count}"
        )
    if enum_keys != set(canon):
        missing = len(enum_keys - set(canon))
        extra = len(set(canon) - enum_keys)
        problems.append(
            f"witness orbits differ from enumerated orbits "
            f"({missing} enumerated classes unmatched, {extra} witnesses astray)"
        )
    return LemmaReport(
        lemma_id=lemma_id,
        additive=inst.additive,
        p=p,
        q=q,
        pi2_size=inst.pi2_size,
        expected_count=inst.expected_count,
        witness_count=len(inst.witnesses),
        enumerated_count=len(stratum),
        ok=not problems,
        problems=problems,
    )


def verify_catalog(
    p: int, q: int, choice: str = "first", lemma_id: str | None = None
) -> list[LemmaReport]:
    """Run every applicable lemma at (p, q), one enumeration per family."""
    wanted = applicable_lemma_ids(p, q, choice)
    if lemma_id is not None:
        if lemma_id not in wanted:
            raise ValueError(f"lemma {lemma_id} does not apply at ({p}, {q})")
        wanted = [lemma_id]
    contexts: dict[str, tuple[FamilyContext, list[OrbitClass]]] = {}
    reports = []
    for lid in wanted:
        additive = lemma_entry(lid)["additive"]
        if additive not in contexts:
            ctx = FamilyContext(additive, p, q, choice)
            contexts[additive] = (ctx, stratified_orbit_classes(ctx.hol))
        ctx, classes = contexts[additive]
        reports.append(verify_lemma(lid, p, q, choice, ctx=ctx, enumerated=classes))
    return reports


def gf_level_subgroup(ctx: FamilyContext, x: int, y: int) -> tuple[int, ...]:
    """The plane subgroup attached to a vector v = (x, y): generated by the
    two translation-automorphism pairs whose invariant is psi(x, y)."""
    p, xi = ctx.params.p, ctx.params.xi
    if xi is None:
        raise RecipeError("plane subgroups need the irreducible-action family")
    vt = ((-y - 1) % p, (x - xi * y - 1) % p)
    a1 = ctx.aut_of({"w": "0", "n": "1", "m": "0", "x": "1", "y": "0"}, {})
    a2 = ctx.aut_of({"w": "0", "n": "0", "m": "1", "x": "1", "y": "0"}, {})
    g1 = ctx.hol.pack(ctx.element_of_word((("s", str(vt[0])), ("t", str(vt[1]))), {}), a1)
    g2 = ctx.hol.pack(ctx.element_of_word((("s", str(x)), ("t", str(y))), {}), a2)
    elems = closure_packed(ctx.hol, [g1, g2], limit=p * p)
    if elems is None or len(elems) != p * p:
        raise RecipeError(f"plane subgroup at ({x}, {y}) does not have order p²")
    return elems
