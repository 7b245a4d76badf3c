"""Simple modules of D^omega(G, N), their characters, inner product and fusion rules.

A simple module is induced from a projective irrep of the stabilizer C_G(gbar)
of a class representative gbar. Characters are evaluated lazily; sums run only
over the (kbar, x) pairs where the delta factors can be nonzero.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .characters import TwistedCharacterTable, twisted_table
from .cyclotomic import ZERO, Cyclotomic
from .groups import Subgroup, centralizer
from .qdouble import GTQD

__all__ = [
    "ConventionError",
    "IrrepLabel",
    "DoubleCharacter",
    "Representations",
    "simple_modules",
    "character_value",
    "inner_product",
    "tensor_character",
    "fusion_coefficient",
    "fusion_with_G_module",
    "g_module_character",
    "fusion_json",
    "CROSS_CHECK",
]

# When set, every local fusion computation is repeated through the general
# tensor-character path and the two results must agree.
CROSS_CHECK = os.environ.get("GTQD_CROSS_CHECK", "") not in ("", "0")


class ConventionError(AssertionError):
    """Two evaluation routes that must agree did not."""


@dataclass(frozen=True)
class IrrepLabel:
    class_index: int
    stab_char_index: int
    dimension: int
    degree: int
    class_rep: int

    def __str__(self):
        return f"{self.class_rep}/{self.stab_char_index}"


@dataclass
class ClassData:
    index: int
    rep: int  # in G/N
    members: tuple[int, ...]
    conjugators: dict[int, int]  # member hbar -> y in G with y rep y^-1 = hbar
    stabilizer: Subgroup
    table: TwistedCharacterTable


class Representations:
    """Per-class stabilizer data for one D^omega(G, N)."""

    def __init__(self, D: GTQD):
        self.D = D
        G, Gb, q = D.G, D.Gbar, D.quotient
        sec = q.section
        self.classes: list[ClassData] = []
        for ci, cls in enumerate(Gb.classes):
            f = cls.representative
            C = centralizer(G, q, f)
            mem = np.array(C.members)
            loc = D.theta[f][np.ix_(D.proj[mem], D.proj[mem])]
            table = twisted_table(C, loc, D.M)
            conj = {h: int(sec[y]) for h, y in zip(cls.members, cls.conjugators)}
            self.classes.append(ClassData(ci, f, cls.members, conj, C, table))
        self.class_of = Gb.class_of
        labels = []
        for cd in self.classes:
            index = G.order // cd.stabilizer.order
            for r, d in enumerate(cd.table.degrees):
                labels.append(IrrepLabel(cd.index, r, index * d, d, cd.rep))
        self.labels: tuple[IrrepLabel, ...] = tuple(labels)

    def stabilizer_value(self, label: IrrepLabel, t: int) -> Cyclotomic:
        cd = self.classes[label.class_index]
        return cd.table.rows[label.stab_char_index][cd.stabilizer.local_index[t]]

    def character(self, label: IrrepLabel) -> "DoubleCharacter":
        return DoubleCharacter(self, label, lambda h, x, lab=label: character_value(self, lab, h, x), (label.class_index,))

    @cached_property
    def characters(self) -> tuple["DoubleCharacter", ...]:
        return tuple(self.character(l) for l in self.labels)


@dataclass(frozen=True, eq=False)
class DoubleCharacter:
    reps: Representations
    label: IrrepLabel | None
    evaluator: Callable[[int, int], Cyclotomic]
    support: tuple[int, ...]  # classes of G/N on which the character may be nonzero

    def __call__(self, hbar: int, x: int) -> Cyclotomic:
        return self.evaluator(hbar, x)


def simple_modules(D: GTQD) -> tuple[IrrepLabel, ...]:
    return Representations(D).labels


def character_value(reps: Representations, label: IrrepLabel, hbar: int, x: int, conjugator: int | None = None) -> Cyclotomic:
    """Trace of e(hbar)#x on the induced module, checked against its theta-free form.

    ``conjugator`` overrides the stored y with y rep y^-1 = hbar (any element of
    that coset gives the same value).
    """
    D = reps.D
    if int(reps.class_of[hbar]) != label.class_index:
        return ZERO
    cd = reps.classes[label.class_index]
    y = cd.conjugators[hbar] if conjugator is None else conjugator
    G = D.G
    t = int(G.mul[G.mul[G.inv[y], x], y])
    if t not in cd.stabilizer.member_set:
        return ZERO
    chi = reps.stabilizer_value(label, t)
    p = D.proj
    k = int(D.theta[hbar, p[x], p[y]]) - int(D.theta[hbar, p[y], p[t]])
    laden = chi * D.root(k)
    if laden != chi:
        raise ConventionError(f"theta factors do not cancel at class {label.class_index}, x={x}, y={y}")
    return laden


def _pairs(reps: Representations, classes: Sequence[int]):
    """(kbar, x) with kbar in the given classes and x in the stabilizer of kbar."""
    D = reps.D
    Gb, G = D.Gbar, D.G
    p = D.proj
    for ci in classes:
        for k in reps.classes[ci].members:
            fixed = np.nonzero(Gb.mul[p, k] == Gb.mul[k, p])[0]
            for x in fixed:
                yield k, int(x)


def inner_product(chi1: DoubleCharacter, chi2: DoubleCharacter) -> Fraction:
    """(1/|G|) sum over kbar, x of chi1(kbar, x) conj(chi2(kbar, x)), exactly."""
    reps = chi1.reps
    common = sorted(set(chi1.support) & set(chi2.support))
    tot = ZERO
    for k, x in _pairs(reps, common):
        a = chi1(k, x)
        if a.is_zero():
            continue
        b = chi2(k, x)
        if not b.is_zero():
            tot = tot + a * b.conj()
    if not tot.is_rational():
        raise ConventionError(f"inner product is not rational: {tot}")
    return tot.to_fraction() / reps.D.G.order


def tensor_character(V: DoubleCharacter, W: DoubleCharacter) -> DoubleCharacter:
    """Character of V (x) W through the coproduct: sum over a b = k of gamma_x(a, b) V(a, x) W(b, x)."""
    reps = V.reps
    D = reps.D
    Gb = D.Gbar
    Vm = [a for c in V.support for a in reps.classes[c].members]
    Wset = set(a for c in W.support for a in reps.classes[c].members)

    Vset = set(Vm)
    Wm = sorted(Wset)

    def ev(k: int, x: int) -> Cyclotomic:
        xb = D.proj[x]
        tot = ZERO
        # iterate over whichever factor has the smaller support
        if len(Wm) < len(Vm):
            splits = ((int(Gb.mul[k, Gb.inv[b]]), b) for b in Wm)
        else:
            splits = ((a, int(Gb.mul[Gb.inv[a], k])) for a in Vm)
        for a, b in splits:
            if a not in Vset or b not in Wset:
                continue
            va = V(a, x)
            if va.is_zero():
                continue
            wb = W(b, x)
            if not wb.is_zero():
                tot = tot + va * wb * D.root(int(D.gamma[xb, a, b]))
        return tot

    support = tuple(sorted(set(int(reps.class_of[Gb.mul[a, b]]) for a in Vm for b in Wset)))
    return DoubleCharacter(reps, None, ev, support)


def _as_nonneg_int(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise ConventionError(f"{what} is not a nonnegative integer: {value}")
    return int(value)


def fusion_coefficient(V: DoubleCharacter, W: DoubleCharacter, U: DoubleCharacter) -> int:
    """Multiplicity of U in V (x) W, through the tensor character and the inner product."""
    return _as_nonneg_int(inner_product(tensor_character(V, W), U), "fusion coefficient")


def g_module_character(reps: Representations, values: Sequence[Cyclotomic]) -> DoubleCharacter:
    """The module of D^omega(G, N) on which e(abar)#x acts as delta(abar, 1) times a G-module."""
    values = tuple(values)
    if len(values) != reps.D.G.order:
        raise ValueError("need one value per element of G")

    def ev(h: int, x: int) -> Cyclotomic:
        return values[x] if h == 0 else ZERO
    return DoubleCharacter(reps, None, ev, (0,))


def fusion_with_G_module(reps: Representations, V: IrrepLabel, W: Sequence[Cyclotomic], U: IrrepLabel,
                         cross_check: bool | None = None) -> int:
    """Multiplicity of U in V (x) W for a G-module W, computed in the stabilizer of V's class."""
    if V.class_index != U.class_index:
        local = 0
    else:
        cd = reps.classes[V.class_index]
        rv = cd.table.rows[V.stab_char_index]
        ru = cd.table.rows[U.stab_char_index]
        tot = ZERO
        for i, t in enumerate(cd.stabilizer.members):
            w = W[t]
            if w.is_zero() or rv[i].is_zero() or ru[i].is_zero():
                continue
            tot = tot + rv[i] * w * ru[i].conj()
        if not tot.is_rational():
            raise ConventionError(f"local fusion sum is not rational: {tot}")
        local = _as_nonneg_int(tot.to_fraction() / cd.stabilizer.order, "local fusion coefficient")
    if CROSS_CHECK if cross_check is None else cross_check:
        general = fusion_coefficient(reps.characters[_position(reps, V)], g_module_character(reps, W),
                                     reps.characters[_position(reps, U)])
        if general != local:
            raise ConventionError(f"local fusion {local} != general fusion {general} for {V}, {U}")
    return local


def _position(reps: Representations, label: IrrepLabel) -> int:
    return reps.labels.index(label)


def fusion_json(reps: Representations, entries: Sequence[tuple[int, int, int, int]], w_name: str | None = None) -> dict:
    return {
        "schema": "gtqd/1",
        "kind": "fusion",
        "labels": [{"index": i, "class_index": l.class_index, "class_rep": reps.D.Gbar.labels[l.class_rep],
                    "stab_char_index": l.stab_char_index, "degree": l.degree, "dimension": l.dimension}
                   for i, l in enumerate(reps.labels)],
        "W": w_name,
        "entries": [list(e) for e in entries if e[3]],
    }
