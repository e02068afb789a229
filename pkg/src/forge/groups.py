"""Finite matrix groups over a cyclotomic field, and their reflection data.

A group is generated by explicit matrices with entries in Q(zeta_N); elements
are enumerated by closure (capped via the FORGE_MAX_GROUP environment
variable).  Reflections are the elements s with rank(s - 1) = 1; for each we
record a root covector alpha (vanishing on the fixed hyperplane), a coroot
vector alpha_vee spanning the moved line with (alpha, alpha_vee) = 2, and the
eigenvalue of s on that line.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction

from .scalars import CycNum, parse_expression

Matrix = tuple  # tuple[tuple[CycNum, ...], ...]
Vector = tuple  # tuple[CycNum, ...]

DEFAULT_MAX_GROUP = 10000


def _max_group() -> int:
    return int(os.environ.get("FORGE_MAX_GROUP", DEFAULT_MAX_GROUP))


# ---------------------------------------------------------------------------
# exact linear algebra over CycNum
# ---------------------------------------------------------------------------

def mat_identity(n: int, order: int) -> Matrix:
    return tuple(tuple(CycNum.from_fraction(order, int(i == j)) for j in range(n))
                 for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(1, n)),
                           a[i][0] * b[0][j]) for j in range(n))
                 for i in range(n))


def mat_vec(m: Matrix, v: Vector) -> Vector:
    n = len(m)
    return tuple(sum((m[i][k] * v[k] for k in range(1, n)), m[i][0] * v[0])
                 for i in range(n))


def covec_mat(f: Vector, m: Matrix) -> Vector:
    n = len(m)
    return tuple(sum((f[k] * m[k][j] for k in range(1, n)), f[0] * m[0][j])
                 for j in range(n))


def mat_inv(m: Matrix, order: int) -> Matrix:
    n = len(m)
    aug = [list(row) + [CycNum.from_fraction(order, int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_rank(m, order: int) -> int:
    rows = [list(r) for r in m]
    n = len(rows[0]) if rows else 0
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def nullspace(rows: list[list[CycNum]], nvars: int, order: int) -> list[Vector]:
    """Basis of the solution space of rows . x = 0, deterministically echelonized."""
    rows = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    rank = 0
    for col in range(nvars):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    zero = CycNum.from_fraction(order, 0)
    one = CycNum.from_fraction(order, 1)
    for fc in free:
        v = [zero] * nvars
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# reflections and the group object
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Reflection:
    element: int          # index into Group.elements
    alpha: Vector         # root covector, canonical (first nonzero entry 1)
    alpha_vee: Vector     # coroot vector, scaled so alpha . alpha_vee = 2
    lam: CycNum           # eigenvalue of s on the moved line (s alpha_vee = lam alpha_vee)
    hyperplane: int       # index into Group.hyperplanes
    cls: int              # conjugacy class index, 0-based


class Group:
    def __init__(self, generators: list[Matrix], order: int):
        if not generators:
            raise ValueError("need at least one generator")
        self.order = order
        self.dim = len(generators[0])
        ident = mat_identity(self.dim, order)
        elements = [ident]
        index = {ident: 0}
        cap = _max_group()
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for g in generators:
                    p = mat_mul(m, g)
                    if p not in index:
                        if len(elements) >= cap:
                            raise ValueError(
                                f"group exceeds FORGE_MAX_GROUP={cap} elements")
                        index[p] = len(elements)
                        elements.append(p)
                        nxt.append(p)
            frontier = nxt
        self.elements: list[Matrix] = elements
        self.index: dict = index
        self.size = len(elements)
        self.identity = 0
        self.mult = [[index[mat_mul(a, b)] for b in elements] for a in elements]
        self.inv = [0] * self.size
        for i in range(self.size):
            for j in range(self.size):
                if self.mult[i][j] == 0:
                    self.inv[i] = j
                    break
        self._build_reflections()

    # -- reflection data ----------------------------------------------------
    def _build_reflections(self):
        order = self.order
        n = self.dim
        refl_raw = []
        for gi, m in enumerate(self.elements):
            if gi == 0:
                continue
            diff = tuple(tuple(m[i][j] - CycNum.from_fraction(order, int(i == j))
                               for j in range(n)) for i in range(n))
            if mat_rank(diff, order) != 1:
                continue
            alpha = next(row for row in diff if any(row))
            alpha_vee = next(col for col in zip(*diff) if any(col))
            # canonicalize: first nonzero entry of alpha is 1
            lead = next(x for x in alpha if x)
            alpha = tuple(x / lead for x in alpha)
            pairing = sum((a * b for a, b in zip(alpha[1:], alpha_vee[1:])),
                          alpha[0] * alpha_vee[0])
            scale = CycNum.from_fraction(order, 2) / pairing
            alpha_vee = tuple(x * scale for x in alpha_vee)
            sv = mat_vec(m, alpha_vee)
            piv = next(i for i, x in enumerate(alpha_vee) if x)
            lam = sv[piv] / alpha_vee[piv]
            if any(sv[i] != lam * alpha_vee[i] for i in range(n)):
                raise ValueError("moved line is not an eigenline")
            refl_raw.append((gi, alpha, alpha_vee, lam))

        # distinct reflecting hyperplanes, by canonical line form (a vector,
        # first nonzero entry 1) spanning the moved line
        hyperplanes: list[Vector] = []
        hp_of = []
        for gi, alpha, alpha_vee, lam in refl_raw:
            lead = next(x for x in alpha_vee if x)
            canon = tuple(x / lead for x in alpha_vee)
            if canon not in hyperplanes:
                hyperplanes.append(canon)
            hp_of.append(hyperplanes.index(canon))
        self.hyperplanes = hyperplanes

        # conjugacy classes of reflections
        elem_of = [r[0] for r in refl_raw]
        cls_of = [-1] * len(refl_raw)
        nclasses = 0
        for i in range(len(refl_raw)):
            if cls_of[i] != -1:
                continue
            orbit = {elem_of[i]}
            frontier = [elem_of[i]]
            while frontier:
                s = frontier.pop()
                for g in range(self.size):
                    c = self.mult[self.mult[g][s]][self.inv[g]]
                    if c not in orbit:
                        orbit.add(c)
                        frontier.append(c)
            for j in range(len(refl_raw)):
                if elem_of[j] in orbit:
                    cls_of[j] = nclasses
            nclasses += 1
        self.nclasses = nclasses
        self.reflections = [
            Reflection(gi, alpha, alpha_vee, lam, hp, cls)
            for (gi, alpha, alpha_vee, lam), hp, cls
            in zip(refl_raw, hp_of, cls_of)]

    # -- actions ------------------------------------------------------------
    def act_vector(self, gi: int, v: Vector) -> Vector:
        return mat_vec(self.elements[gi], v)

    def act_covector(self, gi: int, f: Vector) -> Vector:
        return covec_mat(f, self.elements[self.inv[gi]])

    def conj(self, gi: int, si: int) -> int:
        return self.mult[self.mult[gi][si]][self.inv[gi]]

    # -- centralizer of the group inside gl(dim) ----------------------------
    def centralizer_lie_basis(self) -> list[Matrix]:
        """Basis of {A in gl(dim) : A g = g A for all g}, as matrices."""
        n = self.dim
        order = self.order
        zero = CycNum.from_fraction(order, 0)
        rows = []
        for m in self.elements[1:]:
            # (M A - A M)_{ij} = sum_k M_ik A_kj - A_ik M_kj = 0
            for i in range(n):
                for j in range(n):
                    row = [zero] * (n * n)
                    for k in range(n):
                        row[k * n + j] = row[k * n + j] + m[i][k]
                        row[i * n + k] = row[i * n + k] - m[k][j]
                    rows.append(row)
        basis = nullspace(rows, n * n, order)
        return [tuple(tuple(v[i * n + j] for j in range(n)) for i in range(n))
                for v in basis]


# ---------------------------------------------------------------------------
# JSON configuration
# ---------------------------------------------------------------------------

def _parse_entry(text: str, order: int) -> CycNum:
    def resolve(name):
        if name == "z":
            return CycNum.root(order)
        raise ValueError(f"unknown symbol {name!r} in matrix entry")
    v = parse_expression(str(text), resolve,
                         lambda n: CycNum.from_fraction(order, n))
    return v if isinstance(v, CycNum) else CycNum.from_fraction(order, v)


def group_from_config(cfg: dict) -> Group:
    order = int(cfg["cyclotomic_order"])
    dim = int(cfg["dim"])
    gens = []
    for g in cfg["generators"]:
        if len(g) != dim or any(len(row) != dim for row in g):
            raise ValueError("generator has wrong shape")
        gens.append(tuple(tuple(_parse_entry(x, order) for x in row) for row in g))
    return Group(gens, order)


def load_group(path: str) -> Group:
    with open(path) as fh:
        return group_from_config(json.load(fh))


# ---------------------------------------------------------------------------
# stock groups used throughout the test-suite and docs
# ---------------------------------------------------------------------------

def cyclic_group(m: int) -> Group:
    """Z/m acting on C^1 by the m-th roots of unity."""
    return Group([((CycNum.root(m),),)], m)


def symmetric_group_matrices(n: int) -> Group:
    """S_n permuting coordinates of C^n (rational matrices, order 1 field)."""
    def perm_matrix(p):
        return tuple(tuple(CycNum.from_fraction(1, int(p[j] == i))
                           for j in range(n)) for i in range(n))
    gens = []
    for k in range(n - 1):
        p = list(range(n))
        p[k], p[k + 1] = p[k + 1], p[k]
        gens.append(perm_matrix(p))
    return Group(gens, 1)


def diagonal_group(entries: list[list], order: int) -> Group:
    """Group generated by diagonal matrices; entries are cyclotomic literals."""
    gens = []
    for diag in entries:
        n = len(diag)
        gens.append(tuple(tuple(
            _parse_entry(diag[i], order) if i == j else CycNum.from_fraction(order, 0)
            for j in range(n)) for i in range(n)))
    return Group(gens, order)
