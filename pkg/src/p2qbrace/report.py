"""Classification pipeline driver: counts, table checks, exports, caching.

``classify`` runs the whole chain (group catalog -> holomorph -> regular
subgroups -> orbits) for every additive type of order p^2*q and assembles
a cross table of orbit counts.  ``verify_tables`` diffs that table against
the reference data in :mod:`p2qbrace.expected`, and ``conjecture`` checks
the closed-form counts.  Reports serialize to json/csv/md; orbit
representatives can be cached to disk and are revalidated on load.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .braces import brace_from_regular, is_bi_skew
from .core import compute_automorphisms, identify_p2q
from .enumeration import (
    OrbitClass,
    circle_group,
    enumerate_dfs,
    orbit_partition,
    stratified_orbit_classes,
)
from .expected import conjecture_counts, expected_tables, expected_totals, regime
from .families import FamilyParams, all_labels, build_group, derive_params
from .holomorph import Holomorph, HolSubgroup, closure_packed, is_regular

__all__ = [
    "ClassificationReport",
    "CacheError",
    "classify",
    "verify_tables",
    "conjecture",
    "export",
    "import_cache",
]

CACHE_VERSION = 1

# Per-group budget: skip holomorphs with more elements than this unless
# budget="large".  Covers every order up to 100 with plenty of slack.
NORMAL_HOL_LIMIT = 150_000

STRATEGIES = ("stratified", "dfs", "both")


class CacheError(ValueError):
    """A cache file is unusable: wrong version, stale params, or bad data."""


@dataclass
class ClassificationReport:
    p: int
    q: int
    regime: str
    strategy: str
    params: dict[str, int]
    # label key -> {"display": str, "abelian": bool, "total": int,
    #               "cells": {(mul key, kernel size): count}}
    rows: dict[str, dict] = field(default_factory=dict)
    a_total: int = 0
    b_total: int = 0
    timings: dict[str, float] = field(default_factory=dict)
    complete: bool = True
    skipped: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.p * self.p * self.q

    @property
    def s_total(self) -> int:
        return self.a_total + self.b_total

    def check_consistency(self) -> None:
        a = b = 0
        for row in self.rows.values():
            cells = sum(row["cells"].values())
            if cells != row["total"]:
                raise AssertionError(f"row total mismatch in {row['display']}")
            if row["abelian"]:
                a += cells
            else:
                b += cells
        if (a, b) != (self.a_total, self.b_total):
            raise AssertionError("report totals do not match rows")

    def as_dict(self) -> dict:
        rows = {}
        for key, row in self.rows.items():
            rows[key] = {
                "display": row["display"],
                "abelian": row["abelian"],
                "total": row["total"],
                "cells": [
                    {"mul": m, "kernel": k, "count": c}
                    for (m, k), c in sorted(row["cells"].items())
                ],
            }
        return {
            "version": CACHE_VERSION,
            "p": self.p,
            "q": self.q,
            "n": self.n,
            "regime": self.regime,
            "strategy": self.strategy,
            "params": self.params,
            "rows": rows,
            "totals": {"A": self.a_total, "B": self.b_total, "s": self.s_total},
            "complete": self.complete,
            "skipped": sorted(self.skipped),
            "timings": {k: round(v, 3) for k, v in self.timings.items()},
        }


def _classes_for(hol: Holomorph, strategy: str) -> list[OrbitClass]:
    if strategy == "stratified":
        return stratified_orbit_classes(hol)
    if strategy == "dfs":
        return orbit_partition(hol, enumerate_dfs(hol))
    if strategy == "both":
        via_strat = stratified_orbit_classes(hol)
        via_dfs = orbit_partition(hol, enumerate_dfs(hol))
        if [c.rep.elements for c in via_strat] != [c.rep.elements for c in via_dfs]:
            raise AssertionError(
                f"strategies disagree on {hol.base.label.key()}: "
                f"{len(via_strat)} vs {len(via_dfs)} classes"
            )
        return via_strat
    raise ValueError(f"unknown strategy {strategy!r}; pick one of {STRATEGIES}")


def _one_group(args: tuple[int, int, str, str, str, str | None]) -> tuple[str, list, float]:
    """Classify a single additive type; top-level so process pools can run it."""
    p, q, key, strategy, choice, cache_dir = args
    t0 = time.time()
    params = derive_params(p, q, choice)
    label = next(lb for lb in all_labels(p, q) if lb.key() == key)
    group = build_group(label, params)
    aut = compute_automorphisms(group)
    hol = Holomorph(group, aut)
    classes = _classes_for(hol, strategy)
    cells = [(cl.mul_label.key(), cl.kernel_size) for cl in classes]
    if cache_dir is not None:
        write_cache(cache_dir, p, q, key, choice, hol=hol, classes=classes)
    return key, cells, time.time() - t0


def classify(
    p: int,
    q: int,
    *,
    additive: str | None = None,
    strategy: str = "stratified",
    choice: str = "first",
    budget: str = "normal",
    jobs: int = 1,
    cache_dir: str | None = None,
) -> ClassificationReport:
    """Count skew brace classes of size p^2*q per additive/multiplicative type.

    ``additive`` restricts to one additive label key.  Groups whose
    holomorph exceeds the normal budget are skipped (report flagged
    incomplete) unless ``budget="large"``.  With ``cache_dir`` set, orbit
    representatives are loaded from (or saved to) validated cache files.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; pick one of {STRATEGIES}")
    if budget not in ("normal", "large"):
        raise ValueError(f"budget must be 'normal' or 'large', got {budget!r}")
    params = derive_params(p, q, choice)
    try:
        reg = regime(p, q)
    except ValueError:
        reg = "unclassified"
    labels = all_labels(p, q)
    if additive is not None:
        labels = [lb for lb in labels if lb.key() == additive]
        if not labels:
            raise ValueError(f"no additive type {additive!r} at ({p}, {q})")

    report = ClassificationReport(
        p=p, q=q, regime=reg, strategy=strategy, params=params.as_dict()
    )
    pending: list[tuple[int, int, str, str, str]] = []
    for label in labels:
        key = label.key()
        group = build_group(label, params)
        aut = compute_automorphisms(group)
        if budget == "normal" and group.n * aut.k > NORMAL_HOL_LIMIT:
            report.complete = False
            report.skipped.append(key)
            continue
        cached = None
        if cache_dir is not None:
            path = cache_path(cache_dir, p, q, key, choice)
            if os.path.exists(path):
                cached = import_cache(path)
        if cached is not None:
            t0 = time.time()
            cells = [(cl.mul_label.key(), cl.kernel_size) for cl in cached["classes"]]
            _add_row(report, label, p, q, cells)
            report.timings[key] = time.time() - t0
        else:
            pending.append((p, q, key, strategy, choice, cache_dir))

    if jobs > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_one_group, pending))
    else:
        results = [_one_group(a) for a in pending]
    by_key = {key: (cells, secs) for key, cells, secs in results}
    for label in labels:
        key = label.key()
        if key not in by_key:
            continue
        cells, secs = by_key[key]
        _add_row(report, label, p, q, cells)
        report.timings[key] = secs

    report.check_consistency()
    return report


def _add_row(report, label, p, q, cells: list[tuple[str, int]]) -> None:
    counts: dict[tuple[str, int], int] = {}
    for mk in cells:
        counts[mk] = counts.get(mk, 0) + 1
    group_is_abelian = label.family in ("CyclicP2Q", "PxPQ")
    report.rows[label.key()] = {
        "display": label.display(p, q),
        "abelian": group_is_abelian,
        "total": len(cells),
        "cells": counts,
    }
    if group_is_abelian:
        report.a_total += len(cells)
    else:
        report.b_total += len(cells)


# -- reference-table comparison ------------------------------------------------


def verify_tables(
    p: int, q: int, *, strategy: str = "stratified", choice: str = "first"
) -> tuple[bool, list[str]]:
    """Diff the computed classification against the reference tables.

    Returns (ok, diff lines); each line names the cell, the expected value
    and the computed one.  Raises for prime pairs whose regime has no
    encoded tables (order 12 in particular).
    """
    exp = expected_tables(p, q)  # raises outside encoded regimes
    totals = expected_totals(p, q)
    report = classify(p, q, strategy=strategy, choice=choice, budget="large")
    diffs: list[str] = []

    nonabelian = {k: r for k, r in report.rows.items() if not r["abelian"]}
    for add_key in sorted(set(exp) | set(nonabelian)):
        if add_key not in exp:
            diffs.append(f"{add_key}: additive type not in reference tables")
            continue
        if add_key not in nonabelian:
            diffs.append(f"{add_key}: additive type missing from computation")
            continue
        e, row = exp[add_key], nonabelian[add_key]
        cross: dict[str, int] = {}
        for (m, _), c in row["cells"].items():
            cross[m] = cross.get(m, 0) + c
        for m in sorted(set(e.cross) | set(cross)):
            if e.cross.get(m, 0) != cross.get(m, 0):
                diffs.append(
                    f"{add_key} x {m}: expected {e.cross.get(m, 0)}, "
                    f"got {cross.get(m, 0)}"
                )
        if e.by_kernel is None:
            continue
        got_bk = {(m, k): c for (m, k), c in row["cells"].items()}
        exp_bk = {(m, k): c for (k, m), c in e.by_kernel.items()}
        for cell in sorted(set(exp_bk) | set(got_bk)):
            if exp_bk.get(cell, 0) != got_bk.get(cell, 0):
                m, k = cell
                diffs.append(
                    f"{add_key} x {m} | ker {k}: expected {exp_bk.get(cell, 0)}, "
                    f"got {got_bk.get(cell, 0)}"
                )

    if report.b_total != totals["B"]:
        diffs.append(f"B({report.n}): expected {totals['B']}, got {report.b_total}")
    if totals["A"] is not None and report.a_total != totals["A"]:
        diffs.append(f"A({report.n}): expected {totals['A']}, got {report.a_total}")
    if totals["s"] is not None and report.s_total != totals["s"]:
        diffs.append(f"s({report.n}): expected {totals['s']}, got {report.s_total}")
    return not diffs, diffs


def conjecture(
    p: int, q: int, *, strategy: str = "stratified", budget: str = "normal"
) -> dict:
    """Compare the computed s/A/B with the closed-form counts.

    The formula fields are None when (p, q) sits outside the validity
    range of the closed forms (order 12, or q <= p + 1 for odd p).
    """
    report = classify(p, q, strategy=strategy, budget=budget)
    if not report.complete:
        raise ValueError(
            f"classification at ({p}, {q}) incomplete under the normal budget; "
            "rerun with budget='large'"
        )
    out = {
        "p": p,
        "q": q,
        "n": report.n,
        "s_computed": report.s_total,
        "A_computed": report.a_total,
        "B_computed": report.b_total,
        "s_formula": None,
        "match": None,
    }
    try:
        formulas = conjecture_counts(p, q)
    except ValueError:
        return out
    out["s_formula"] = formulas["s"]
    out["A_formula"] = formulas["A"]
    out["B_formula"] = formulas["B"]
    out["match"] = (
        report.s_total == formulas["s"]
        and report.a_total == formulas["A"]
        and report.b_total == formulas["B"]
    )
    return out


# -- serialization ---------------------------------------------------------------


def export(report: ClassificationReport, fmt: str, path: str | None = None) -> str:
    """Serialize a report as json, csv, or md; optionally write it to path."""
    if fmt == "json":
        text = json.dumps(report.as_dict(), sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        lines = ["additive,multiplicative,kernel_size,count"]
        for add_key in sorted(report.rows):
            row = report.rows[add_key]
            for (m, k), c in sorted(row["cells"].items()):
                lines.append(f"{add_key},{m},{k},{c}")
        text = "\n".join(lines) + "\n"
    elif fmt == "md":
        text = _markdown_tables(report)
    else:
        raise ValueError(f"unknown format {fmt!r}; pick json, csv, or md")
    if path is not None:
        _atomic_write(path, text)
    return text


def _markdown_tables(report: ClassificationReport) -> str:
    p, q = report.p, report.q
    labels = [lb for lb in all_labels(p, q) if lb.key() in report.rows]
    out = [
        f"# Skew braces of size {report.n} (p={p}, q={q})",
        "",
        f"s = {report.s_total}, abelian additive type A = {report.a_total}, "
        f"nonabelian additive type B = {report.b_total}.",
        "",
    ]
    if not report.complete:
        out[2] = out[2][:-1] + f" (incomplete; skipped: {', '.join(report.skipped)})."
    abelian = [lb for lb in labels if report.rows[lb.key()]["abelian"]]
    nonab = [lb for lb in labels if not report.rows[lb.key()]["abelian"]]

    for title, rows_lb in (("abelian", abelian), ("nonabelian", nonab)):
        if not rows_lb:
            continue
        mul_keys: list[str] = []
        for lb in all_labels(p, q):
            mk = lb.key()
            if any(
                m == mk
                for rl in rows_lb
                for (m, _) in report.rows[rl.key()]["cells"]
            ):
                mul_keys.append(mk)
        out.append(f"## Additive type {title}")
        out.append("")
        disp = {
            mk: next(lb.display(p, q) for lb in all_labels(p, q) if lb.key() == mk)
            for mk in mul_keys
        }
        out.append("| additive \\ multiplicative | " + " | ".join(disp[m] for m in mul_keys) + " | total |")
        out.append("|---" * (len(mul_keys) + 2) + "|")
        for lb in rows_lb:
            row = report.rows[lb.key()]
            cross: dict[str, int] = {}
            for (m, k), c in row["cells"].items():
                cross[m] = cross.get(m, 0) + c
            cells = [str(cross.get(m, 0)) if cross.get(m, 0) else "-" for m in mul_keys]
            out.append(
                f"| {row['display']} | " + " | ".join(cells) + f" | {row['total']} |"
            )
        out.append("")
    return "\n".join(out)


def _atomic_write(path: str, text: str) -> None:
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


# -- orbit cache -----------------------------------------------------------------


def cache_path(cache_dir: str, p: int, q: int, key: str, choice: str) -> str:
    safe = key.replace("(", "_").replace(")", "").replace("-", "m")
    return os.path.join(cache_dir, f"orbits_{p}x{q}_{safe}_{choice}.json")


def write_cache(
    cache_dir: str,
    p: int,
    q: int,
    key: str,
    choice: str,
    *,
    hol: Holomorph | None = None,
    classes: list[OrbitClass] | None = None,
) -> str:
    """Store one additive type's orbit classes on disk (computing if needed)."""
    os.makedirs(cache_dir, exist_ok=True)
    params = derive_params(p, q, choice)
    if hol is None:
        label = next(lb for lb in all_labels(p, q) if lb.key() == key)
        group = build_group(label, params)
        aut = compute_automorphisms(group)
        hol = Holomorph(group, aut)
    if classes is None:
        classes = stratified_orbit_classes(hol)
    orbits = []
    for cl in classes:
        brace = brace_from_regular(hol, cl.rep)
        orbits.append(
            {
                "rep": [
                    [int(a), int(f)]
                    for a, f in zip(cl.rep.a_parts, cl.rep.f_parts)
                ],
                "pi2_size": int(cl.pi2_size),
                "mul_label": cl.mul_label.key(),
                "biskew": bool(is_bi_skew(brace)),
            }
        )
    payload = {
        "version": CACHE_VERSION,
        "p": p,
        "q": q,
        "additive": key,
        "choice": choice,
        "params": params.as_dict(),
        "orbits": orbits,
    }
    path = cache_path(cache_dir, p, q, key, choice)
    _atomic_write(path, json.dumps(payload, sort_keys=True, indent=1) + "\n")
    return path


def import_cache(path: str) -> dict:
    """Load and revalidate a cached orbit file.

    Every stored representative is closed again and checked for
    regularity, and its multiplicative label is recomputed; any mismatch
    raises CacheError rather than silently reusing poisoned data.
    """
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheError(f"unreadable cache file {path}: {exc}") from exc
    for field_name in ("version", "p", "q", "additive", "choice", "params", "orbits"):
        if field_name not in payload:
            raise CacheError(f"cache file {path} lacks field {field_name!r}")
    if payload["version"] != CACHE_VERSION:
        raise CacheError(
            f"cache version {payload['version']} != expected {CACHE_VERSION}"
        )
    p, q, key = payload["p"], payload["q"], payload["additive"]
    params = derive_params(p, q, payload["choice"])
    if params.as_dict() != payload["params"]:
        raise CacheError(f"cache params {payload['params']} are stale")
    label = next((lb for lb in all_labels(p, q) if lb.key() == key), None)
    if label is None:
        raise CacheError(f"no additive type {key!r} at ({p}, {q})")
    group = build_group(label, params)
    aut = compute_automorphisms(group)
    hol = Holomorph(group, aut)

    classes: list[OrbitClass] = []
    seen: set[tuple[int, ...]] = set()
    for entry in payload["orbits"]:
        pairs = entry["rep"]
        if len(pairs) != group.n:
            raise CacheError(f"cached subgroup has {len(pairs)} != {group.n} elements")
        packed = sorted(hol.pack(a, f) for a, f in pairs)
        elements = tuple(packed)
        if elements in seen:
            raise CacheError("cached orbit representatives are not distinct")
        seen.add(elements)
        closed = closure_packed(hol, list(elements))
        if closed is None or tuple(closed) != elements:
            raise CacheError("cached element set is not a subgroup")
        sub = HolSubgroup(hol, elements)
        if not is_regular(hol, sub):
            raise CacheError("cached subgroup is not regular")
        mul_label = identify_p2q(circle_group(hol, sub), p, q)
        if mul_label.key() != entry["mul_label"]:
            raise CacheError(
                f"cached label {entry['mul_label']} != recomputed {mul_label.key()}"
            )
        if sub.pi2_size != entry["pi2_size"]:
            raise CacheError("cached pi2 size does not match")
        classes.append(OrbitClass(rep=sub, orbit_size=0, mul_label=mul_label))
    return {"p": p, "q": q, "additive": key, "params": params, "classes": classes}
