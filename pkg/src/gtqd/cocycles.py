"""Normalized root-of-unity 3-cocycles, their inflations, and the derived 2-cochains.

Cocycle values are stored as integer exponents k meaning zeta_M^k, so every
identity below is checked with exact modular integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cyclotomic import Cyclotomic, root_of_unity
from .groups import FiniteGroup, QuotientMap, centralizer, cyclic_group

__all__ = [
    "Cocycle3",
    "InflatedCocycle",
    "trivial",
    "cyclic_cocycle",
    "verify_3cocycle",
    "right_conjugation_table",
    "theta_table",
    "gamma_table",
    "theta_restricted_is_2cocycle",
    "theta_conjugation_check",
    "parse_cocycle_spec",
    "coboundary",
]

EXHAUSTIVE_LIMIT = 60
RANDOM_QUADRUPLES = 10**6


@dataclass(frozen=True, eq=False)
class Cocycle3:
    group: FiniteGroup
    exponents: np.ndarray  # [a, b, c] -> k with omega(a,b,c) = zeta_M^k
    value_order: int
    name: str = "trivial"

    def exp(self, a: int, b: int, c: int) -> int:
        return int(self.exponents[a, b, c])

    def value(self, a: int, b: int, c: int) -> Cyclotomic:
        return root_of_unity(self.value_order, self.exp(a, b, c))

    def is_trivial(self) -> bool:
        return not self.exponents.any()

    def is_normalized(self) -> bool:
        E = self.exponents
        return not (E[0].any() or E[:, 0].any() or E[:, :, 0].any())


def trivial(G: FiniteGroup) -> Cocycle3:
    n = G.order
    return Cocycle3(G, np.zeros((n, n, n), dtype=np.int64), 1, "trivial")


def cyclic_cocycle(n: int, q: int, group: FiniteGroup | None = None) -> Cocycle3:
    """omega(a, b, c) = zeta_n^(q a floor((b + c)/n)) on Z_n.

    With ``group`` given (a cyclic group of order n), residues are read off
    along its smallest-index generator.
    """
    if group is None:
        group = cyclic_group(n)
        residue = np.arange(n)
    else:
        if group.order != n or not group.is_cyclic():
            raise ValueError(f"cyclic cocycle needs a cyclic group of order {n}")
        gen = next(g for g in range(group.order) if int(group.element_orders[g]) == n)
        residue = np.zeros(n, dtype=np.int64)
        x = 0
        for k in range(n):
            residue[x] = k
            x = int(group.mul[x, gen])
    a = residue[:, None, None]
    b = residue[None, :, None]
    c = residue[None, None, :]
    E = (q * a * ((b + c) // n)) % n
    return Cocycle3(group, E.astype(np.int64), n, f"cyclic:{q % n}")


def parse_cocycle_spec(text: str, Gbar: FiniteGroup) -> Cocycle3:
    """``trivial`` or ``cyclic:q`` (only for cyclic quotients)."""
    text = text.strip().lower()
    if text == "trivial":
        return trivial(Gbar)
    kind, _, arg = text.partition(":")
    if kind == "cyclic":
        if not Gbar.is_cyclic():
            raise ValueError(f"cocycle {text!r} needs a cyclic quotient; this quotient of order {Gbar.order} is not cyclic")
        return cyclic_cocycle(Gbar.order, int(arg), Gbar)
    raise ValueError(f"bad cocycle spec {text!r}; expected trivial or cyclic:q")


def _cocycle_defect(E, mul, g, h, k, l):
    return (E[h, k, l] + E[g, mul[h, k], l] + E[g, h, k] - E[mul[g, h], k, l] - E[g, h, mul[k, l]])


def verify_3cocycle(omega: Cocycle3, seed: int = 0) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Check the cocycle identity; exhaustive up to 60 elements, random quadruples beyond."""
    G = omega.group
    E, mul, M, n = omega.exponents, G.mul, omega.value_order, G.order
    if not omega.is_normalized():
        bad = np.argwhere(np.stack([E[0], E[:, 0], E[:, :, 0]]) != 0)[0]
        return False, ("normalization",) + tuple(int(v) for v in bad)
    if n <= EXHAUSTIVE_LIMIT:
        h = np.arange(n)[:, None, None]
        k = np.arange(n)[None, :, None]
        l = np.arange(n)[None, None, :]
        for g in range(n):
            d = _cocycle_defect(E, mul, g, h, k, l) % M
            bad = np.argwhere(d != 0)
            if len(bad):
                return False, (g,) + tuple(int(v) for v in bad[0])
        return True, None
    rng = np.random.default_rng(seed)
    q = rng.integers(0, n, size=(RANDOM_QUADRUPLES, 4))
    d = _cocycle_defect(E, mul, q[:, 0], q[:, 1], q[:, 2], q[:, 3]) % M
    bad = np.nonzero(d)[0]
    if len(bad):
        return False, tuple(int(v) for v in q[bad[0]])
    return True, None


def right_conjugation_table(G: FiniteGroup) -> np.ndarray:
    """R[g, x] = x^-1 g x."""
    n = G.order
    t = G.mul[G.inv[None, :], np.arange(n)[:, None]]
    return G.mul[t, np.arange(n)[None, :]]


def theta_table(omega: Cocycle3) -> np.ndarray:
    """T[g, x, y] = exponent of omega(g,x,y) omega(x,y,g^(xy)) / omega(x,g^x,y)."""
    G = omega.group
    E, mul, M = omega.exponents, G.mul, omega.value_order
    n = G.order
    R = right_conjugation_table(G)
    g = np.arange(n)[:, None, None]
    x = np.arange(n)[None, :, None]
    y = np.arange(n)[None, None, :]
    return (E[g, x, y] + E[x, y, R[g, mul[x, y]]] - E[x, R[g, x], y]) % M


def gamma_table(omega: Cocycle3) -> np.ndarray:
    """C[g, x, y] = exponent of omega(x,y,g) omega(g,x^g,y^g) / omega(x,g,y^g)."""
    G = omega.group
    E, M = omega.exponents, omega.value_order
    n = G.order
    R = right_conjugation_table(G)
    g = np.arange(n)[:, None, None]
    x = np.arange(n)[None, :, None]
    y = np.arange(n)[None, None, :]
    return (E[x, y, g] + E[g, R[x, g], R[y, g]] - E[x, g, R[y, g]]) % M


@dataclass(frozen=True, eq=False)
class InflatedCocycle:
    base: Cocycle3
    quotient_map: QuotientMap

    def __post_init__(self):
        if self.base.group.order != self.quotient_map.target.order:
            raise ValueError("cocycle lives on a different quotient")

    @cached_property
    def theta_bar(self) -> np.ndarray:
        return theta_table(self.base)

    @cached_property
    def gamma_bar(self) -> np.ndarray:
        return gamma_table(self.base)

    def value(self, g: int, x: int, y: int) -> Cyclotomic:
        p = self.quotient_map.projection
        return self.base.value(int(p[g]), int(p[x]), int(p[y]))

    def theta_exp(self, g: int, x: int, y: int) -> int:
        p = self.quotient_map.projection
        return int(self.theta_bar[p[g], p[x], p[y]])

    def gamma_exp(self, g: int, x: int, y: int) -> int:
        p = self.quotient_map.projection
        return int(self.gamma_bar[p[g], p[x], p[y]])

    def theta(self, g: int, x: int, y: int) -> Cyclotomic:
        return root_of_unity(self.base.value_order, self.theta_exp(g, x, y))

    def gamma(self, g: int, x: int, y: int) -> Cyclotomic:
        return root_of_unity(self.base.value_order, self.gamma_exp(g, x, y))

    def materialize(self, group: FiniteGroup | None = None) -> Cocycle3:
        """omega' as a dense table on G (or on an index-identical copy of G)."""
        p = self.quotient_map.projection
        E = self.base.exponents[p[:, None, None], p[None, :, None], p[None, None, :]]
        G = group if group is not None else self.quotient_map.source
        return Cocycle3(G, E, self.base.value_order, f"inflated {self.base.name}")


def theta_restricted_is_2cocycle(omega: InflatedCocycle, gbar: int) -> tuple[bool, tuple | None]:
    """2-cocycle identity for x, y -> theta'_g(x, y) on the stabilizer of gbar."""
    q = omega.quotient_map
    G = q.source
    C = np.array(centralizer(G, q, gbar).members)
    p = q.projection
    T = omega.theta_bar[gbar]
    M = omega.base.value_order
    x = C[:, None, None]
    y = C[None, :, None]
    z = C[None, None, :]
    t = lambda a, b: T[p[a], p[b]]
    d = (t(x, y) + t(G.mul[x, y], z) - t(y, z) - t(x, G.mul[y, z])) % M
    bad = np.argwhere(d != 0)
    if len(bad):
        i, j, k = bad[0]
        return False, (int(C[i]), int(C[j]), int(C[k]))
    return True, None


def theta_conjugation_check(q: QuotientMap, omega: Cocycle3) -> tuple[bool, tuple | None]:
    """theta_h(w t w^-1, w) / theta_h(w, t) == 1 with h = w f w^-1, for all class
    reps f, stabilizer elements t, and left coset representatives w of the stabilizer.

    For abelian G/N, h = f and this is the subscript-f form of the identity; for
    nonabelian G/N only the form with h in both places survives nontrivial omega.
    """
    G, Gb = q.source, q.target
    T = theta_table(omega)
    p = q.projection
    for cls in Gb.classes:
        f = cls.representative
        C = centralizer(G, q, f)
        seen: set[int] = set()
        reps = []
        for w in range(G.order):
            if w not in seen:
                reps.append(w)
                seen.update(int(G.mul[w, c]) for c in C.members)
        for w in reps:
            wf = Gb.conj(int(p[w]), f)
            for t in C.members:
                wt = G.conj(w, t)
                e = (T[wf, p[wt], p[w]] - T[wf, p[w], p[t]]) % omega.value_order
                if e:
                    return False, (f, w, t)
    return True, None


def coboundary(G: FiniteGroup, f_exponents, value_order: int, name: str = "coboundary") -> Cocycle3:
    """omega = delta f for a normalized 2-cochain f (exponents mod value_order)."""
    f = np.asarray(f_exponents, dtype=np.int64) % value_order
    if f[0].any() or f[:, 0].any():
        raise ValueError("2-cochain must be normalized")
    n, mul = G.order, G.mul
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    E = (f[b, c] + f[a, mul[b, c]] - f[mul[a, b], c] - f[a, b]) % value_order
    return Cocycle3(G, E, value_order, name)
