"""Finite groups as multiplication tables on element indices.

Groups are generated once from exact 2x2 matrices; afterwards every
operation works on indices and the integer tables only.  Index 0 is always
the identity.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .cyclotomic import Cyclotomic

__all__ = [
    "GroupError",
    "NotClosedError",
    "FiniteGroup",
    "Subgroup",
    "QuotientMap",
    "ConjugacyClass",
    "generate",
    "conjugacy_classes",
    "centralizer",
    "quotient",
    "center",
    "is_normal",
    "subgroup_from",
    "trivial_subgroup",
    "whole_group",
    "conj_action",
    "cyclic_group",
]

DEFAULT_CAP = 10000


class GroupError(ValueError):
    pass


class NotClosedError(GroupError):
    """Closure under multiplication exceeded the element bound."""


Matrix = tuple  # (a, b, c, d) row-major, entries Cyclotomic


def _mat_mul(x: Matrix, y: Matrix) -> Matrix:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _mat_det(x: Matrix) -> Cyclotomic:
    a, b, c, d = x
    return a * d - b * c


def _mat_key(x: Matrix, order: int) -> tuple:
    return tuple((e.lift(order).num, e.lift(order).den) for e in x)


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple[int, ...]
    conjugators: tuple[int, ...]  # conjugators[i] * rep * conjugators[i]^-1 == members[i]

    @property
    def size(self) -> int:
        return len(self.members)

    def conjugator_of(self, h: int) -> int:
        return self.conjugators[self.members.index(h)]


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, mul, labels=None, matrix_rep=None, gens=None, name: str = ""):
        self.mul = np.asarray(mul, dtype=np.int64)
        n = self.mul.shape[0]
        if self.mul.shape != (n, n):
            raise GroupError("multiplication table must be square")
        if not (np.array_equal(self.mul[0], np.arange(n)) and np.array_equal(self.mul[:, 0], np.arange(n))):
            raise GroupError("index 0 must be a two-sided identity")
        inv = np.full(n, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 0)
        inv[rows] = cols
        if (inv < 0).any():
            raise GroupError("some element has no inverse")
        self.inv = inv
        self.order = n
        self.labels = list(labels) if labels is not None else [f"g{i}" for i in range(n)]
        self.matrix_rep = matrix_rep
        self.gens = tuple(gens) if gens is not None else None
        self.name = name

    def __repr__(self):
        return f"FiniteGroup({self.name or 'anon'}, order={self.order})"

    def __len__(self):
        return self.order

    def m(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = int(self.mul[out, x])
        return out

    def conj(self, y: int, g: int) -> int:
        """Left conjugation y g y^-1."""
        return int(self.mul[self.mul[y, g], self.inv[y]])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        out = 0
        for _ in range(k):
            out = int(self.mul[out, g])
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        out = np.zeros(self.order, dtype=np.int64)
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = int(self.mul[x, g])
                k += 1
            out[g] = k
        return out

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in self.element_orders))

    @cached_property
    def classes(self) -> tuple[ConjugacyClass, ...]:
        return conjugacy_classes(self)

    @cached_property
    def class_of(self) -> np.ndarray:
        out = np.zeros(self.order, dtype=np.int64)
        for i, c in enumerate(self.classes):
            out[list(c.members)] = i
        return out

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Stored generators, or a small generating set chosen greedily."""
        if self.gens is not None:
            return self.gens
        gens: list[int] = []
        span = {0}
        for g in sorted(range(1, self.order), key=lambda x: (-int(self.element_orders[x]), x)):
            if g not in span:
                gens.append(g)
                span = set(subgroup_from(self, gens).members)
                if len(span) == self.order:
                    break
        return tuple(gens)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def is_cyclic(self) -> bool:
        return int(self.element_orders.max()) == self.order

    def check_associative(self, samples: int = 10000, seed: int = 0) -> tuple[int, int, int] | None:
        """Return a violating triple, or None.  Exhaustive when order <= 64."""
        mul = self.mul
        n = self.order
        if n <= 64:
            left = mul[mul[:, :, None], np.arange(n)[None, None, :]]
            right = mul[np.arange(n)[:, None, None], mul[None, :, :]]
            bad = np.argwhere(left != right)
            return tuple(int(v) for v in bad[0]) if len(bad) else None
        rng = random.Random(seed)
        for _ in range(samples):
            a, b, c = (rng.randrange(n) for _ in range(3))
            if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                return (a, b, c)
        return None

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "mul": self.mul.tolist(),
            "labels": self.labels,
            "classes": [
                {"representative": c.representative, "label": self.labels[c.representative], "members": list(c.members)}
                for c in self.classes
            ],
        }


def generate(gens, cap: int = DEFAULT_CAP, names=None, name: str = "") -> FiniteGroup:
    """Close a set of SU2 matrices under multiplication.

    Elements are indexed in breadth-first order of right multiplication by the
    generators; each element is labelled by the shortest such word.
    """
    gens = [tuple(g) for g in gens]
    if cap < 1:
        raise ValueError("cap must be positive")
    for g in gens:
        if _mat_det(g) != 1:
            raise GroupError(f"generator {g} does not have determinant 1")
    if names is None:
        names = "xyzuvw"[: len(gens)] if len(gens) <= 6 else [f"s{i}" for i in range(len(gens))]
    order = math.lcm(1, *(e.order for g in gens for e in g))
    one, zero = Cyclotomic.from_rational(1, order), Cyclotomic.from_rational(0, order)
    ident = (one, zero, zero, one)
    elems = [ident]
    words: list[tuple[int, ...]] = [()]
    index = {_mat_key(ident, order): 0}
    rmul: list[list[int]] = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        row = []
        for s, g in enumerate(gens):
            prod = _mat_mul(elems[i], g)
            key = _mat_key(prod, order)
            j = index.get(key)
            if j is None:
                j = len(elems)
                if j >= cap:
                    raise NotClosedError(f"not closed within bound {cap}")
                index[key] = j
                elems.append(prod)
                words.append(words[i] + (s,))
                queue.append(j)
            row.append(j)
        rmul.append(row)
    n = len(elems)
    rmul_arr = np.array(rmul, dtype=np.int64).reshape(n, len(gens))
    mul = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        col = np.arange(n)
        for s in words[j]:
            col = rmul_arr[col, s]
        mul[:, j] = col
    labels = [_word_label(w, names) for w in words]
    gen_idx = tuple(rmul[0][s] for s in range(len(gens)))
    group = FiniteGroup(mul, labels=labels, matrix_rep=elems, gens=gen_idx, name=name)
    bad = group.check_associative()
    if bad is not None:
        raise GroupError(f"multiplication table not associative at {bad}")
    return group


def _word_label(word, names) -> str:
    if not word:
        return "e"
    out, i = [], 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        k = j - i
        out.append(names[word[i]] + (str(k) if k > 1 else ""))
        i = j
    return "".join(out)


def cyclic_group(n: int) -> FiniteGroup:
    """Z_n as residues 0..n-1 (index k is the residue k)."""
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, labels=[str(k) for k in range(n)], gens=(1 % n,) if n > 1 else (), name=f"Z{n}")


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        if not self.members or self.members[0] != 0:
            raise GroupError("subgroup must contain the identity")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.member_set

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def local_index(self) -> dict[int, int]:
        return {g: i for i, g in enumerate(self.members)}

    @cached_property
    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group; local index i is parent index members[i]."""
        P = self.parent
        loc = self.local_index
        mem = np.array(self.members)
        sub = P.mul[np.ix_(mem, mem)]
        mul = np.vectorize(loc.__getitem__, otypes=[np.int64])(sub) if len(mem) else sub
        rep = [P.matrix_rep[g] for g in self.members] if P.matrix_rep is not None else None
        return FiniteGroup(mul, labels=[P.labels[g] for g in self.members], matrix_rep=rep)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def __hash__(self):
        return hash(self.members)


@dataclass(frozen=True, eq=False)
class QuotientMap:
    source: FiniteGroup
    kernel: Subgroup
    target: FiniteGroup
    projection: np.ndarray
    section: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return int(self.projection[g])

    def fiber(self, gbar: int) -> tuple[int, ...]:
        return self._fibers[gbar]

    @cached_property
    def _fibers(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.target.order)]
        for g, gb in enumerate(self.projection):
            out[int(gb)].append(g)
        return tuple(tuple(f) for f in out)


def conjugacy_classes(G: FiniteGroup) -> tuple[ConjugacyClass, ...]:
    """Classes in order of their minimal element; conjugators are first witnesses in index order."""
    n = G.order
    seen = np.zeros(n, dtype=bool)
    out = []
    for rep in range(n):
        if seen[rep]:
            continue
        found: dict[int, int] = {}
        for y in range(n):
            h = G.conj(y, rep)
            if h not in found:
                found[h] = y
        members = tuple(sorted(found))
        seen[list(members)] = True
        out.append(ConjugacyClass(rep, members, tuple(found[h] for h in members)))
    return tuple(out)


def subgroup_from(G: FiniteGroup, indices) -> Subgroup:
    """Subgroup generated by the given elements."""
    members = {0}
    frontier = [0]
    gens = [int(g) for g in indices]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(G.mul[x, s])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(members)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def center(G: FiniteGroup) -> Subgroup:
    mul = G.mul
    z = [g for g in range(G.order) if np.array_equal(mul[g], mul[:, g])]
    return Subgroup(G, tuple(z))


def is_normal(G: FiniteGroup, S: Subgroup) -> bool:
    mem = S.member_set
    return all(G.conj(y, h) in mem for y in range(G.order) for h in S.members)


def quotient(G: FiniteGroup, N: Subgroup) -> QuotientMap:
    if N.parent is not G:
        raise GroupError("subgroup belongs to a different group")
    if not is_normal(G, N):
        raise GroupError("subgroup is not normal")
    n = G.order
    proj = np.full(n, -1, dtype=np.int64)
    section = []
    for g in range(n):
        if proj[g] < 0:
            k = len(section)
            section.append(g)
            for m in N.members:
                proj[G.mul[g, m]] = k
    q = len(section)
    sec = np.array(section)
    mul = proj[G.mul[np.ix_(sec, sec)]]
    labels = [G.labels[s] if N.order == 1 else f"[{G.labels[s]}]" for s in section]
    target = FiniteGroup(mul, labels=labels, name=f"{G.name}/N" if G.name else "")
    if target.order * N.order != n or not all(proj[s] == i for i, s in enumerate(section)):
        raise GroupError("inconsistent quotient construction")
    return QuotientMap(G, N, target, proj, tuple(section))


def conj_action(G: FiniteGroup, q: QuotientMap, gbar: int, x: int) -> int:
    """Right conjugation gbar^x = xbar^-1 gbar xbar, computed in the quotient."""
    Gb = q.target
    xb = q(x)
    return int(Gb.mul[Gb.mul[Gb.inv[xb], gbar], xb])


def centralizer(G: FiniteGroup, q: QuotientMap, gbar: int) -> Subgroup:
    """Stabilizer in G of gbar under the conjugation action on the quotient."""
    Gb = q.target
    proj = q.projection
    fixed = Gb.mul[proj, gbar] == Gb.mul[gbar, proj]
    return Subgroup(G, tuple(int(x) for x in np.nonzero(fixed)[0]))
