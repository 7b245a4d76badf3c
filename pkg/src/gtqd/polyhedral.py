"""Finite subgroups of SU2 and their canonical 2-dimensional module."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import Cyclotomic, root_of_unity
from .groups import DEFAULT_CAP, FiniteGroup, GroupError, Subgroup, center, generate, whole_group

__all__ = [
    "GroupSpec",
    "CanonicalW",
    "BuiltGroup",
    "parse_group_spec",
    "build",
    "recognize",
    "quaternion",
]

KINDS = ("cyclic", "bd", "bt", "bo", "bi")
_EXCEPTIONAL_ORDERS = {"bt": 24, "bo": 48, "bi": 120}
_EXCEPTIONAL_CLASSES = {"bt": 7, "bo": 8, "bi": 9}


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    param: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind in ("cyclic", "bd") and self.param < 1:
            raise ValueError(f"{self.kind} needs a positive parameter")

    @property
    def order(self) -> int:
        if self.kind == "cyclic":
            return self.param
        if self.kind == "bd":
            return 4 * self.param
        return _EXCEPTIONAL_ORDERS[self.kind]

    def __str__(self):
        return f"{self.kind}:{self.param}" if self.kind in ("cyclic", "bd") else self.kind

    @property
    def description(self) -> str:
        return {
            "cyclic": f"Z_{self.param}",
            "bd": f"BD_{self.param} = <2,2,{self.param}>",
            "bt": "binary tetrahedral <2,3,3>",
            "bo": "binary octahedral <2,3,4>",
            "bi": "binary icosahedral <2,3,5>",
        }[self.kind]


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``cyclic:m | bd:n | bt | bo | bi``."""
    kind, _, arg = text.strip().partition(":")
    kind = kind.lower()
    if kind in ("cyclic", "bd"):
        try:
            return GroupSpec(kind, int(arg))
        except ValueError as exc:
            raise ValueError(f"bad group spec {text!r}: {exc}") from None
    if kind in ("bt", "bo", "bi") and not arg:
        return GroupSpec(kind)
    raise ValueError(f"bad group spec {text!r}; expected cyclic:m, bd:n, bt, bo or bi")


@dataclass(frozen=True)
class CanonicalW:
    """Character of the canonical 2-dimensional module, one value per element."""

    group: FiniteGroup
    values: tuple[Cyclotomic, ...]
    dimension: int = 2

    @property
    def character(self) -> dict[int, Cyclotomic]:
        return {c.representative: self.values[c.representative] for c in self.group.classes}

    def restrict(self, H: Subgroup) -> tuple[Cyclotomic, ...]:
        return tuple(self.values[g] for g in H.members)


@dataclass(frozen=True)
class BuiltGroup:
    spec: GroupSpec
    group: FiniteGroup
    W: CanonicalW
    involution: int | None  # index of -I, if present


def quaternion(a, b, c, d, order: int) -> tuple:
    """a + b i + c j + d k as [[a+bi, c+di], [-c+di, a-bi]] over Q(zeta_order)."""
    i = root_of_unity(order, order // 4)
    to = lambda v: v if isinstance(v, Cyclotomic) else Cyclotomic.from_rational(Fraction(v), order)
    a, b, c, d = to(a), to(b), to(c), to(d)
    return (a + b * i, c + d * i, -c + d * i, a - b * i)


def _diag(z: Cyclotomic) -> tuple:
    zero = Cyclotomic.from_rational(0, z.order)
    return (z, zero, zero, z.inv())


def _generators(spec: GroupSpec) -> list[tuple]:
    if spec.kind == "cyclic":
        return [_diag(root_of_unity(spec.param, 1))]
    if spec.kind == "bd":
        n = spec.param
        zeta = root_of_unity(2 * n, 1)
        one = Cyclotomic.from_rational(1, zeta.order)
        zero = Cyclotomic.from_rational(0, zeta.order)
        return [_diag(zeta), (zero, one, -one, zero)]
    half = Fraction(1, 2)
    if spec.kind == "bt":
        return [quaternion(0, 1, 0, 0, 4), quaternion(-half, half, half, half, 4)]
    if spec.kind == "bo":
        return [quaternion(0, 1, 0, 0, 8), quaternion(-half, half, half, half, 8), _diag(root_of_unity(8, 1))]
    # icosahedral: i, omega, and (phi + phi^-1 i + j)/2 with phi the golden ratio
    phi = root_of_unity(20, 2) + root_of_unity(20, -2)
    return [
        quaternion(0, 1, 0, 0, 20),
        quaternion(-half, half, half, half, 20),
        quaternion(phi * half, (phi - 1) * half, half, 0, 20),
    ]


def build(spec: GroupSpec | str, cap: int = DEFAULT_CAP) -> BuiltGroup:
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    G = generate(_generators(spec), cap=cap, name=str(spec))
    if G.order != spec.order:
        raise GroupError(f"{spec} generated {G.order} elements, expected {spec.order}")
    W = CanonicalW(G, tuple(m[0] + m[3] for m in G.matrix_rep))
    inv = _find_minus_identity(G)
    if spec.kind != "cyclic" or spec.param % 2 == 0:
        Z = center(G)
        expect_center = spec.param if spec.kind == "cyclic" else 2
        if inv is None or Z.order != expect_center:
            raise GroupError(f"{spec}: unexpected center of order {Z.order}")
    return BuiltGroup(spec, G, W, inv)


def central_involution(built: BuiltGroup) -> int:
    if built.involution is None:
        raise GroupError(f"{built.spec} has no central involution -I")
    return built.involution


def _find_minus_identity(G: FiniteGroup) -> int | None:
    for g, m in enumerate(G.matrix_rep):
        a, b, c, d = m
        if a == -1 and d == -1 and b.is_zero() and c.is_zero():
            return g
    return None


def recognize(H: Subgroup | FiniteGroup) -> GroupSpec:
    """Isomorphism type of a finite subgroup of SU2."""
    if isinstance(H, Subgroup):
        H = H.as_group
    n = H.order
    orders = H.element_orders
    if int((orders == 2).sum()) > 1:
        raise GroupError(f"order {n}: more than one involution, so not a subgroup of SU2")
    if int(orders.max()) == n:
        return GroupSpec("cyclic", n)
    if n % 4 == 0 and n >= 8 and int(orders.max()) == n // 2:
        return GroupSpec("bd", n // 4)
    ncls = len(H.classes)
    for kind, order in _EXCEPTIONAL_ORDERS.items():
        if n == order and ncls == _EXCEPTIONAL_CLASSES[kind]:
            return GroupSpec(kind)
    raise GroupError(f"unrecognized subgroup of SU2: order {n}, {ncls} classes")
