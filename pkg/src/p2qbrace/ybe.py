"""Set-theoretic Yang-Baxter solutions attached to skew braces.

A solution on X = {0..n-1} is a map r(x, y) = (sigma_x(y), tau_y(x)) with
all sigma_x and tau_y bijective (non-degeneracy) satisfying the braid
relation (r x id)(id x r)(r x id) = (id x r)(r x id)(id x r) on X^3.

A skew brace yields one via r(a, b) = (lambda_a(b), lambda_a(b)' o a o b),
where ' is the o-inverse; the construction goes back to Guarnieri and
Vendramin (Math. Comp. 86, 2017).  sigma_a = lambda_a by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .braces import SkewBrace

__all__ = [
    "Solution",
    "solution_from_brace",
    "check_ybe",
    "check_nondegenerate",
    "is_involutive",
    "export_solution",
]


@dataclass
class Solution:
    """r as two (n, n) tables: sigma[x, y] and tau[x, y] = tau_y(x)."""

    sigma: np.ndarray
    tau: np.ndarray

    def __post_init__(self):
        self.sigma = np.asarray(self.sigma)
        self.tau = np.asarray(self.tau)
        if self.sigma.shape != self.tau.shape or self.sigma.shape[0] != self.sigma.shape[1]:
            raise ValueError("sigma and tau must be square tables of equal size")

    @property
    def n(self) -> int:
        return self.sigma.shape[0]

    @cached_property
    def r_flat(self) -> np.ndarray:
        """Pair table: r_flat[x*n + y] = sigma[x,y]*n + tau[x,y]."""
        n = self.n
        return (self.sigma.astype(np.int64) * n + self.tau).reshape(n * n)

    def apply(self, x: int, y: int) -> tuple[int, int]:
        return int(self.sigma[x, y]), int(self.tau[x, y])


def solution_from_brace(brace: SkewBrace) -> Solution:
    circ = brace.mul.mul
    cinv = brace.mul.inv
    sigma = brace.lambda_perms
    tau = circ[cinv[sigma], circ]
    return Solution(sigma=sigma.astype(np.int32), tau=tau.astype(np.int32))


def check_ybe(sol: Solution) -> tuple[bool, str]:
    """Braid relation over all n^3 triples; the message names a witness."""
    s, t = sol.sigma, sol.tau
    n = sol.n
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    xy_s = np.broadcast_to(s[:, :, None], (n, n, n))  # sigma[x, y]
    xy_t = np.broadcast_to(t[:, :, None], (n, n, n))  # tau[x, y]
    # left side: r12, r23, r12
    a1 = xy_s
    b1 = t[xy_t, z]
    m1 = s[xy_t, z]
    l1, l2, l3 = s[a1, m1], t[a1, m1], b1
    # right side: r23, r12, r23
    yz_s = np.broadcast_to(s[None, :, :], (n, n, n))
    yz_t = np.broadcast_to(t[None, :, :], (n, n, n))
    a2 = s[x, yz_s]
    b2 = t[x, yz_s]
    r1, r2, r3 = a2, s[b2, yz_t], t[b2, yz_t]
    ok = (l1 == r1) & (l2 == r2) & (l3 == r3)
    if ok.all():
        return True, "braid relation holds on all triples"
    w = tuple(int(v) for v in np.argwhere(~ok)[0])
    return False, f"braid relation fails at (x, y, z) = {w}"


def check_nondegenerate(sol: Solution) -> bool:
    """All sigma_x and all tau_y must be permutations."""
    n = sol.n
    ref = np.arange(n)
    rows = (np.sort(sol.sigma, axis=1) == ref[None, :]).all()
    cols = (np.sort(sol.tau, axis=0) == ref[:, None]).all()
    return bool(rows and cols)


def is_involutive(sol: Solution) -> bool:
    """Whether r o r is the identity on pairs."""
    s, t = sol.sigma, sol.tau
    return bool(
        (s[s, t] == np.arange(sol.n)[:, None]).all()
        and (t[s, t] == np.arange(sol.n)[None, :]).all()
    )


def export_solution(sol: Solution) -> str:
    """Plain-text matrix, one row per x, entries "sigma_x(y),tau_y(x)"."""
    lines = []
    for xrow, trow in zip(sol.sigma, sol.tau):
        lines.append(" ".join(f"{int(a)},{int(b)}" for a, b in zip(xrow, trow)))
    return "\n".join(lines) + "\n"
