"""Exact character tables by Dixon's modular method, and projective tables.

The class multiplication matrices are simultaneously diagonalized over a
prime field F_p with p = 1 mod exponent(G); the resulting modular characters
are lifted to Q(zeta_e) through eigenvalue multiplicities.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy.ntheory import isprime, primitive_root

from .cyclotomic import Cyclotomic, root_of_unity
from .groups import ConjugacyClass, FiniteGroup, Subgroup

__all__ = [
    "CharacterTableError",
    "NontrivialCohomologyError",
    "CharacterTable",
    "TwistedCharacterTable",
    "character_table",
    "twisted_table",
    "inner_product_ordinary",
    "restrict",
    "choose_prime",
]

MAX_ORDER = 10000


class CharacterTableError(RuntimeError):
    pass


class NontrivialCohomologyError(CharacterTableError):
    """The 2-cocycle is not a coboundary with root-of-unity values."""

    def __init__(self, msg, obstruction=None):
        super().__init__(msg)
        self.obstruction = obstruction


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    classes: tuple[ConjugacyClass, ...]
    table: tuple[tuple[Cyclotomic, ...], ...]  # irreps x classes
    degrees: tuple[int, ...]
    prime: int

    def __len__(self):
        return len(self.table)

    def value(self, row: int, g: int) -> Cyclotomic:
        return self.table[row][int(self.group.class_of[g])]

    def row_on_elements(self, row: int) -> tuple[Cyclotomic, ...]:
        cls = self.group.class_of
        return tuple(self.table[row][int(cls[g])] for g in range(self.group.order))

    def to_json(self) -> dict:
        G = self.group
        return {
            "classes": [{"rep": G.labels[c.representative], "size": c.size} for c in self.classes],
            "rows": [{"degree": d, "values": [v.to_json() for v in row]} for d, row in zip(self.degrees, self.table)],
        }


def choose_prime(exponent: int, order: int) -> int:
    bound = 2 * math.sqrt(order) * order
    p = exponent + 1
    while p <= bound or not isprime(p):
        p += exponent
        if p >= 2**63:
            raise CharacterTableError("no suitable prime below 2^63")
    return p


# -- linear algebra over F_p ------------------------------------------------

def _nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (as columns) of the right nullspace of A over F_p."""
    A = A.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, c in enumerate(pivots):
            basis[c, j] = (-A[i, f]) % p
    return basis


def _left_inverse_rows(B: np.ndarray, p: int) -> tuple[list[int], np.ndarray]:
    """Rows P with B[P] invertible, and that inverse."""
    n, s = B.shape
    chosen: list[int] = []
    for i in range(n):
        trial = chosen + [i]
        if _rank_mod(B[trial], p) == len(trial):
            chosen = trial
            if len(chosen) == s:
                break
    return chosen, _inverse_mod(B[chosen], p)


def _rank_mod(A: np.ndarray, p: int) -> int:
    return A.shape[1] - _nullspace_mod(A, p).shape[1]


def _inverse_mod(A: np.ndarray, p: int) -> np.ndarray:
    n = A.shape[0]
    aug = np.concatenate([A % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        k = c + np.nonzero(aug[c:, c])[0][0]
        aug[[c, k]] = aug[[k, c]]
        aug[c] = aug[c] * pow(int(aug[c, c]), -1, p) % p
        for i in range(n):
            if i != c and aug[i, c]:
                aug[i] = (aug[i] - aug[i, c] * aug[c]) % p
    return aug[:, n:]


def _charpoly_mod(R: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial (low -> high) via Faddeev-LeVerrier; needs p > dim."""
    n = R.shape[0]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = np.zeros_like(R)
    I = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        M = (R @ M + coeffs[n - k + 1] * I) % p
        AM = R @ M % p
        coeffs[n - k] = (-int(np.trace(AM) % p) * pow(k, -1, p)) % p
    return coeffs


def _roots_mod(poly: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % p
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def _split(B: np.ndarray, A: np.ndarray, p: int) -> list[np.ndarray]:
    """Split the A-invariant subspace spanned by the columns of B into eigenspaces."""
    s = B.shape[1]
    P, Binv = _left_inverse_rows(B, p)
    R = Binv @ ((A @ B % p)[P]) % p
    roots = _roots_mod(_charpoly_mod(R, p), p)
    pieces = []
    total = 0
    for lam in roots:
        N = _nullspace_mod((R - lam * np.eye(s, dtype=np.int64)) % p, p)
        total += N.shape[1]
        pieces.append(B @ N % p)
    if total != s:
        raise CharacterTableError("class matrix eigenvalues are not all in F_p")
    return pieces


# -- Dixon ------------------------------------------------------------------

def _structure_constants(G: FiniteGroup) -> np.ndarray:
    classes = G.classes
    r = len(classes)
    cls = G.class_of
    a = np.zeros((r, r, r), dtype=np.int64)
    inv = G.inv
    for k, c in enumerate(classes):
        z = c.representative
        # x in C_i, x^-1 z in C_j
        js = cls[G.mul[inv, z]]
        np.add.at(a, (cls, js, np.full(G.order, k)), 1)
    return a


def character_table(G: FiniteGroup) -> CharacterTable:
    """Irreducible characters of G, trivial row first, then by degree and values."""
    n = G.order
    if n > MAX_ORDER:
        raise CharacterTableError(f"group order {n} exceeds {MAX_ORDER}")
    classes = G.classes
    r = len(classes)
    sizes = [c.size for c in classes]
    e = G.exponent
    p = choose_prime(e, n)
    a = _structure_constants(G)

    spaces = [np.eye(r, dtype=np.int64)]
    for i in range(1, r):
        if all(S.shape[1] == 1 for S in spaces):
            break
        A = a[i] % p
        nxt = []
        for S in spaces:
            nxt.extend([S] if S.shape[1] == 1 else _split(S, A, p))
        spaces = nxt
    if len(spaces) != r or any(S.shape[1] != 1 for S in spaces):
        raise CharacterTableError("class matrices failed to split into one-dimensional eigenspaces")

    inv_class = [int(G.class_of[G.inv[c.representative]]) for c in classes]
    z = pow(primitive_root(p), (p - 1) // e, p)
    zpow = [pow(z, k, p) for k in range(e)]
    # class of g^l for each class rep and 0 <= l < e
    power_cls = np.zeros((r, e), dtype=np.int64)
    for k, c in enumerate(classes):
        x = 0
        for l in range(e):
            power_cls[k, l] = G.class_of[x]
            x = int(G.mul[x, c.representative])

    rows = []
    for S in spaces:
        v = S[:, 0] % p
        if v[0] == 0:
            raise CharacterTableError("eigenvector vanishes at the identity class")
        v = v * pow(int(v[0]), -1, p) % p
        s = sum(int(v[k]) * int(v[inv_class[k]]) * pow(sizes[k], -1, p) for k in range(r)) % p
        target = n * pow(s, -1, p) % p
        deg = next((d for d in range(1, math.isqrt(n) + 1) if d * d % p == target), None)
        if deg is None:
            raise CharacterTableError("no admissible degree for modular character")
        chi_mod = [int(v[k]) * deg * pow(sizes[k], -1, p) % p for k in range(r)]
        values = []
        e_inv = pow(e, -1, p)
        for k in range(r):
            mult = []
            for j in range(e):
                tot = 0
                for l in range(e):
                    tot += chi_mod[int(power_cls[k, l])] * zpow[(-j * l) % e]
                mj = tot * e_inv % p
                if mj > deg:
                    raise CharacterTableError("eigenvalue multiplicity out of range while lifting")
                mult.append(mj)
            if sum(mult) != deg:
                raise CharacterTableError("eigenvalue multiplicities do not sum to the degree")
            values.append(Cyclotomic.from_exponents(e, [j for j in range(e) for _ in range(mult[j])]))
        rows.append((deg, tuple(values)))

    trivial = [i for i, (d, vals) in enumerate(rows) if d == 1 and all(v == 1 for v in vals)]
    if len(trivial) != 1:
        raise CharacterTableError("trivial character not found exactly once")
    first = rows.pop(trivial[0])
    rows.sort(key=lambda dv: (dv[0], tuple(x.sort_key(e) for x in dv[1])))
    rows.insert(0, first)
    table = CharacterTable(G, classes, tuple(v for _, v in rows), tuple(d for d, _ in rows), p)
    _check_orthogonality(table)
    return table


def _check_orthogonality(T: CharacterTable) -> None:
    n = T.group.order
    sizes = [c.size for c in T.classes]
    conj = [[v.conj() for v in row] for row in T.table]
    if sum(d * d for d in T.degrees) != n:
        raise CharacterTableError("sum of squared degrees differs from the group order")
    for i, j in itertools.combinations_with_replacement(range(len(T.table)), 2):
        s = sum((sizes[k] * T.table[i][k] * conj[j][k] for k in range(len(sizes))), Cyclotomic.from_rational(0))
        if s != (n if i == j else 0):
            raise CharacterTableError(f"rows {i}, {j} are not orthonormal")


# -- class functions --------------------------------------------------------

def inner_product_ordinary(chi1: Sequence[Cyclotomic], chi2: Sequence[Cyclotomic]) -> Fraction:
    """(1/|H|) sum_h chi1(h) conj(chi2(h)) over per-element value sequences."""
    if len(chi1) != len(chi2):
        raise ValueError("class functions live on different groups")
    s = Cyclotomic.from_rational(0)
    for a, b in zip(chi1, chi2):
        if not a.is_zero() and not b.is_zero():
            s = s + a * b.conj()
    return (s * Fraction(1, len(chi1))).to_fraction()


def restrict(chi: Sequence[Cyclotomic], H: Subgroup) -> tuple[Cyclotomic, ...]:
    """Values of a class function of the parent on the members of H (local order)."""
    out = tuple(chi[g] for g in H.members)
    Hg = H.as_group
    for c in Hg.classes:
        v = out[c.representative]
        if any(out[m] != v for m in c.members):
            raise ValueError("restriction is not a class function of the subgroup")
    return out


# -- projective tables ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TwistedCharacterTable:
    base: CharacterTable
    mu: tuple[Cyclotomic, ...]  # per element of H
    mu_exponents: tuple[int, ...]
    mu_order: int
    rows: tuple[tuple[Cyclotomic, ...], ...]  # per element of H
    theta_exponents: np.ndarray
    theta_order: int

    def __len__(self):
        return len(self.rows)

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.base.degrees


def _coboundary_defect(a: np.ndarray, mul: np.ndarray, t: np.ndarray, M: int) -> np.ndarray:
    # a[x] + a[y] - a[xy] - t[x, y] mod M
    return (a[:, None] + a[None, :] - a[mul] - t) % M


def _solve_trivializer(H: FiniteGroup, t: np.ndarray, M: int) -> np.ndarray | None:
    """Exponents a (mod M) with a[x] + a[y] - a[xy] = t[x, y], or None."""
    n = H.order
    gens = H.generators
    r = len(gens)
    # a[x] = coef[x] . u + const[x] along a breadth-first tree of right multiplications
    coef = np.zeros((n, r), dtype=np.int64)
    const = np.zeros(n, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    done[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, s in enumerate(gens):
                y = int(H.mul[x, s])
                if not done[y]:
                    coef[y] = coef[x]
                    coef[y, i] += 1
                    const[y] = const[x] - t[x, s]
                    done[y] = True
                    nxt.append(y)
        frontier = nxt
    # constraints on u: (coef[x]+coef[y]-coef[xy]) u = t - const[x]-const[y]+const[xy]
    C = (coef[:, None, :] + coef[None, :, :] - coef[H.mul]).reshape(n * n, r) % M
    rhs = ((t - const[:, None] - const[None, :] + const[H.mul]) % M).reshape(n * n)
    rows = {}
    for c, b in zip(map(tuple, C), rhs):
        prev = rows.setdefault(c, int(b))
        if prev != b:
            return None
    Cm = np.array(list(rows.keys()), dtype=np.int64).reshape(-1, r)
    bm = np.array(list(rows.values()), dtype=np.int64)
    for u in itertools.product(range(M), repeat=r):
        uu = np.array(u, dtype=np.int64)
        if np.all((Cm @ uu - bm) % M == 0):
            return (coef @ uu + const) % M
    return None


def twisted_table(H: Subgroup | FiniteGroup, theta_exponents, theta_order: int) -> TwistedCharacterTable:
    """Projective characters mu * chi for a root-of-unity 2-cocycle theta = delta(mu).

    theta_exponents[x, y] is k with theta(x, y) = zeta_{theta_order}^k, indexed by
    local element indices of H.
    """
    Hg = H.as_group if isinstance(H, Subgroup) else H
    n = Hg.order
    t = np.asarray(theta_exponents, dtype=np.int64) % theta_order
    if t.shape != (n, n):
        raise ValueError("theta table has the wrong shape")
    mul = Hg.mul
    idx = np.arange(n)
    # cocycle identity theta(x,y) theta(xy,z) = theta(y,z) theta(x,yz)
    left = (t[:, :, None] + t[mul[:, :, None], idx[None, None, :]]) % theta_order
    right = (t[None, :, :] + t[idx[:, None, None], mul[None, :, :]]) % theta_order
    bad = np.argwhere(left != right)
    if len(bad):
        raise ValueError(f"theta is not a 2-cocycle at {tuple(int(v) for v in bad[0])}")
    base = character_table(Hg)
    e = Hg.exponent
    a = None
    for M in dict.fromkeys([theta_order, math.lcm(theta_order, e), theta_order * e]):
        a = _solve_trivializer(Hg, t * (M // theta_order), M)
        if a is not None:
            break
    if a is None:
        obstruction = {(int(x), int(y)): int(t[x, y]) for x, y in np.argwhere(t != 0)[:8]}
        raise NontrivialCohomologyError("nontrivial cohomology class: theta is not a coboundary", obstruction)
    defect = _coboundary_defect(a, mul, t * (M // theta_order), M)
    if defect.any():
        raise CharacterTableError("trivializer fails the coboundary check")
    mu = tuple(root_of_unity(M, int(k)) for k in a)
    L = math.lcm(M, e)
    rows = []
    for i in range(len(base.table)):
        vals = base.row_on_elements(i)
        rows.append(tuple((m * v).lift(L) if not v.is_zero() else v for m, v in zip(mu, vals)))
    return TwistedCharacterTable(base, mu, tuple(int(k) for k in a), M, tuple(rows), t, theta_order)
