"""Induction of finite-dimensional algebras along a subgroup H <= G.

Two constructions on an H-algebra A:

  * turull_induce: CG (x)_CH A with basis r (x) a over coset representatives;
    the product keeps only pairs in the same coset, and G permutes the cosets
    while twisting by the H-action.  Dimension [G:H] * dim A.
  * puig_induce:   CG (x)_CH A (x)_CH CG for an H-interior A (an algebra
    with a unit-preserving map CH -> A); basis r (x) a (x) r' over left and
    right coset representatives.  Dimension [G:H]^2 * dim A.  Whenever
    H != G every element is a zero divisor.

verify_smash_iso checks the comparison map

    g (x) d (x) g'  ->  theta(g)(d_A) * g h g'

from the Puig induction of a smash product A # H onto (turull_induce(A)) # G:
a linear bijection that is multiplicative.

Coefficients are exact rationals; coset representatives are chosen
deterministically (smallest enumeration index) and a representative
independence check is provided.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .groups import Group


class FinAlgebra:
    """Finite-dimensional associative unital algebra with optional H-action
    and interior structure, given by exact structure constants.

    mul[i][j] is the vector (dict k -> Fraction) of the product b_i b_j;
    unit is the coordinate vector of 1; action (optional) maps each element
    of H to a dim x dim matrix of Fractions acting by algebra automorphisms;
    interior (optional) maps each element of H to the coordinate vector of
    an invertible element implementing the action by conjugation.
    """

    def __init__(self, dim: int, mul, unit, labels=None, action=None,
                 interior=None, group: Group | None = None,
                 subgroup: tuple | None = None, validate: bool = True):
        self.dim = dim
        self.mul = mul
        self.unit = dict(unit)
        self.labels = labels or [f"b{i+1}" for i in range(dim)]
        self.action = action
        self.interior = interior
        self.group = group
        self.subgroup = tuple(subgroup) if subgroup is not None else None
        if validate:
            self.validate()

    # -- vector arithmetic --------------------------------------------------
    def v_add(self, a: dict, b: dict) -> dict:
        out = dict(a)
        for k, v in b.items():
            nv = out.get(k, 0) + v
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
        return out

    def v_scale(self, a: dict, c) -> dict:
        return {k: v * c for k, v in a.items()} if c else {}

    def product(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for i, ca in a.items():
            for j, cb in b.items():
                for k, s in self.mul[i][j].items():
                    nv = out.get(k, 0) + ca * cb * s
                    if nv:
                        out[k] = nv
                    elif k in out:
                        del out[k]
        return out

    def act(self, h: int, a: dict) -> dict:
        if self.action is None:
            return dict(a)
        M = self.action[h]
        out: dict = {}
        for j, c in a.items():
            for i, m in M[j].items():
                nv = out.get(i, 0) + m * c
                if nv:
                    out[i] = nv
                elif i in out:
                    del out[i]
        return out

    def interior_vector(self, h: int) -> dict:
        if self.interior is None:
            raise ValueError("algebra has no interior structure")
        return dict(self.interior[h])

    # -- validation ---------------------------------------------------------
    def basis_vec(self, i: int) -> dict:
        return {i: Fraction(1)}

    def validate(self):
        for i in range(self.dim):
            u_l = self.product(self.unit, self.basis_vec(i))
            u_r = self.product(self.basis_vec(i), self.unit)
            if u_l != {i: Fraction(1)} or u_r != {i: Fraction(1)}:
                raise ValueError("unit axiom fails")
            for j in range(self.dim):
                for k in range(self.dim):
                    lhs = self.product(self.mul[i][j], self.basis_vec(k))
                    rhs = self.product(self.basis_vec(i), self.mul[j][k])
                    if lhs != rhs:
                        raise ValueError(
                            f"associativity fails at basis ({i},{j},{k})")
        if self.action is not None:
            hs = self.subgroup if self.subgroup is not None \
                else range(len(self.action))
            for h in hs:
                if self.act(h, self.unit) != self.unit:
                    raise ValueError("action does not fix the unit")
                for i in range(self.dim):
                    for j in range(self.dim):
                        lhs = self.act(h, self.mul[i][j])
                        rhs = self.product(self.act(h, self.basis_vec(i)),
                                           self.act(h, self.basis_vec(j)))
                        if lhs != rhs:
                            raise ValueError(
                                f"action of {h} is not an automorphism")
        if self.interior is not None:
            grp = self.group
            hs = self.subgroup if self.subgroup is not None \
                else range(grp.size)
            for h1 in hs:
                for h2 in hs:
                    prod = self.product(self.interior_vector(h1),
                                        self.interior_vector(h2))
                    if prod != self.interior_vector(grp.mult[h1][h2]):
                        raise ValueError("interior map is not multiplicative")
            for h in hs:
                iv = self.interior_vector(h)
                ivinv = self.interior_vector(grp.inv[h])
                for i in range(self.dim):
                    conj = self.product(self.product(iv, self.basis_vec(i)),
                                        ivinv)
                    if conj != self.act(h, self.basis_vec(i)):
                        raise ValueError(
                            "interior map does not implement the action")


# ---------------------------------------------------------------------------
# coset bookkeeping
# ---------------------------------------------------------------------------

def left_coset_reps(G: Group, H: tuple) -> list:
    """Representatives of gH, smallest enumeration index first."""
    seen = set()
    reps = []
    for g in range(G.size):
        coset = frozenset(G.mult[g][h] for h in H)
        if coset not in seen:
            seen.add(coset)
            reps.append(g)
    return reps


def right_coset_reps(G: Group, H: tuple) -> list:
    """Representatives of Hg, smallest enumeration index first."""
    seen = set()
    reps = []
    for g in range(G.size):
        coset = frozenset(G.mult[h][g] for h in H)
        if coset not in seen:
            seen.add(coset)
            reps.append(g)
    return reps


def _left_decompose(G: Group, H: tuple, reps: list, g: int):
    """g = r h with r a representative of gH; returns (r, h)."""
    hset = set(H)
    for r in reps:
        h = G.mult[G.inv[r]][g]
        if h in hset:
            return r, h
    raise ValueError("element not covered by coset representatives")


def _right_decompose(G: Group, H: tuple, reps: list, g: int):
    """g = h r with r a representative of Hg; returns (h, r)."""
    hset = set(H)
    for r in reps:
        h = G.mult[g][G.inv[r]]
        if h in hset:
            return h, r
    raise ValueError("element not covered by coset representatives")


class InducedElement:
    """Vector in an induced algebra: dict basis-key -> Fraction."""

    __slots__ = ("parent", "coeffs")
    __hash__ = None

    def __init__(self, parent, coeffs: dict):
        self.parent = parent
        self.coeffs = {k: v for k, v in coeffs.items() if v}

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            nv = out.get(k, 0) + v
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
        return InducedElement(self.parent, out)

    def __neg__(self):
        return InducedElement(self.parent, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return InducedElement(self.parent, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        return self.parent.multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, InducedElement) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{self.parent.label(k)}"
                          for k, c in sorted(self.coeffs.items()))


class TurullInduced:
    """CG (x)_CH A on basis (coset rep r, basis index i)."""

    def __init__(self, A: FinAlgebra, G: Group, H: tuple):
        self.A = A
        self.G = G
        self.H = tuple(H)
        self.reps = left_coset_reps(G, self.H)
        self.dim = len(self.reps) * A.dim

    def label(self, key):
        r, i = key
        return f"g{r}(x){self.A.labels[i]}"

    def zero(self):
        return InducedElement(self, {})

    def one(self):
        out = {}
        for r in self.reps:
            for i, c in self.A.unit.items():
                out[(r, i)] = c
        return InducedElement(self, out)

    def basis(self):
        return [InducedElement(self, {(r, i): Fraction(1)})
                for r in self.reps for i in range(self.A.dim)]

    def embed(self, r: int, a: dict):
        """g (x) a, normalized: g = r h gives rep (x) h.a."""
        rep, h = _left_decompose(self.G, self.H, self.reps, r)
        return InducedElement(self, {(rep, i): c
                                     for i, c in self.A.act(h, a).items()})

    def multiply(self, x: InducedElement, y: InducedElement):
        out: dict = {}
        for (r1, i), c1 in x.coeffs.items():
            for (r2, j), c2 in y.coeffs.items():
                if r1 != r2:
                    continue
                for k, s in self.A.mul[i][j].items():
                    key = (r1, k)
                    nv = out.get(key, 0) + c1 * c2 * s
                    if nv:
                        out[key] = nv
                    elif key in out:
                        del out[key]
        return InducedElement(self, out)

    def g_action(self, g: int, x: InducedElement):
        out = self.zero()
        for (r, i), c in x.coeffs.items():
            out = out + self.embed(self.G.mult[g][r],
                                   {i: c})
        return out


def turull_induce(A: FinAlgebra, G: Group, H: tuple) -> TurullInduced:
    return TurullInduced(A, G, H)


class PuigInduced:
    """CG (x)_CH A (x)_CH CG on basis (left rep, basis index, right rep)."""

    def __init__(self, A: FinAlgebra, G: Group, H: tuple):
        if A.interior is None:
            raise ValueError("Puig induction needs an H-interior algebra")
        self.A = A
        self.G = G
        self.H = tuple(H)
        self.lreps = left_coset_reps(G, self.H)
        self.rreps = right_coset_reps(G, self.H)
        self.dim = len(self.lreps) * len(self.rreps) * A.dim

    def label(self, key):
        r1, i, r2 = key
        return f"g{r1}(x){self.A.labels[i]}(x)g{r2}"

    def zero(self):
        return InducedElement(self, {})

    def basis(self):
        return [InducedElement(self, {(r1, i, r2): Fraction(1)})
                for r1 in self.lreps for i in range(self.A.dim)
                for r2 in self.rreps]

    def embed(self, g1: int, a: dict, g2: int):
        """g1 (x) a (x) g2 normalized to representatives via the interior map."""
        r1, h1 = _left_decompose(self.G, self.H, self.lreps, g1)
        h2, r2 = _right_decompose(self.G, self.H, self.rreps, g2)
        mid = self.A.product(
            self.A.interior_vector(h1),
            self.A.product(a, self.A.interior_vector(h2)))
        return InducedElement(self, {(r1, i, r2): c for i, c in mid.items()})

    def multiply(self, x: InducedElement, y: InducedElement):
        hset = set(self.H)
        out = self.zero()
        for (r1, i, s1), c1 in x.coeffs.items():
            for (r2, j, s2), c2 in y.coeffs.items():
                h = self.G.mult[s1][r2]
                if h not in hset:
                    continue
                mid = self.A.product(
                    self.A.basis_vec(i),
                    self.A.product(self.A.interior_vector(h),
                                   self.A.basis_vec(j)))
                out = out + InducedElement(
                    self, {(r1, k, s2): c1 * c2 * c
                           for k, c in mid.items()})
        return out

    def annihilator_witness(self, x: InducedElement):
        """A nonzero z with x z = 0 or z x = 0, if one exists in the basis."""
        for z in self.basis():
            if not self.multiply(x, z) or not self.multiply(z, x):
                return z
        return None


def puig_induce(A: FinAlgebra, G: Group, H: tuple) -> PuigInduced:
    return PuigInduced(A, G, H)


def zero_divisor_report(P: PuigInduced) -> dict:
    """For proper H < G every basis element has an annihilating partner."""
    if len(P.lreps) == 1:
        return {"proper_subgroup": False, "ok": True, "checked": 0}
    missing = []
    for b in P.basis():
        if P.annihilator_witness(b) is None:
            missing.append(str(b))
    return {"proper_subgroup": True, "ok": not missing,
            "checked": P.dim, "missing": missing}


# ---------------------------------------------------------------------------
# smash products and the comparison isomorphism
# ---------------------------------------------------------------------------

def smash_product(A: FinAlgebra, G: Group, members=None) -> FinAlgebra:
    """A # G: basis a_i g with (a g)(a' g') = a (g.a') gg'.

    When members is given only those group elements are used (an A # H
    sitting inside the data of G); the interior map h -> 1_A h is attached.
    """
    members = list(members) if members is not None else list(range(G.size))
    pos = {g: n for n, g in enumerate(members)}
    dim = A.dim * len(members)

    def idx(i, g):
        return i * len(members) + pos[g]

    mul = [[None] * dim for _ in range(dim)]
    for i in range(A.dim):
        for g in members:
            for j in range(A.dim):
                for g2 in members:
                    acted = A.act(g, A.basis_vec(j))
                    prod = A.product(A.basis_vec(i), acted)
                    tgt = G.mult[g][g2]
                    mul[idx(i, g)][idx(j, g2)] = {
                        idx(k, tgt): c for k, c in prod.items()}
    unit = {}
    gid = members.index(0) if 0 in pos else None
    if gid is None:
        raise ValueError("smash product needs the identity element")
    for i, c in A.unit.items():
        unit[idx(i, 0)] = c
    labels = [f"{A.labels[i]}.g{g}" for i in range(A.dim) for g in members]
    interior = {h: {idx(i, h): c for i, c in A.unit.items()} for h in members}
    return FinAlgebra(dim, mul, unit, labels=labels, group=G,
                      subgroup=tuple(members), interior=interior,
                      action=None, validate=False)


def smash_of_turull(A: FinAlgebra, G: Group, H: tuple):
    """(turull_induce(A)) # G as a FinAlgebra together with its indexing."""
    T = turull_induce(A, G, H)
    tkeys = [(r, i) for r in T.reps for i in range(A.dim)]
    tpos = {k: n for n, k in enumerate(tkeys)}
    dim = len(tkeys) * G.size

    def idx(tk, g):
        return tpos[tk] * G.size + g

    def t_vec_to_coords(vec: InducedElement, g: int) -> dict:
        return {idx(k, g): c for k, c in vec.coeffs.items()}

    mul = [[None] * dim for _ in range(dim)]
    for tk1 in tkeys:
        e1 = InducedElement(T, {tk1: Fraction(1)})
        for g1 in range(G.size):
            for tk2 in tkeys:
                e2 = InducedElement(T, {tk2: Fraction(1)})
                acted = T.g_action(g1, e2)
                for g2 in range(G.size):
                    prod = T.multiply(e1, acted)
                    mul[idx(tk1, g1)][idx(tk2, g2)] = t_vec_to_coords(
                        prod, G.mult[g1][g2])
    unit = t_vec_to_coords(T.one(), 0)
    labels = [f"[{T.label(tk)}].g{g}" for tk in tkeys for g in range(G.size)]
    alg = FinAlgebra(dim, mul, unit, labels=labels, validate=False)
    return alg, T, idx, t_vec_to_coords


def verify_smash_iso(A: FinAlgebra, G: Group, H: tuple, seed: int = 0,
                     npairs: int = 50) -> dict:
    """Check g (x) d (x) g' -> theta(g)(d) g g' is a multiplicative linear
    bijection Puig(A # H) -> Turull(A) # G."""
    import random
    AH = smash_product(A, G, members=H)
    P = puig_induce(AH, G, H)
    S, T, idx, tv2c = smash_of_turull(A, G, H)
    hlist = list(H)

    def cor(key):
        r1, m, r2 = key
        i, hpos = divmod(m, len(hlist))
        h = hlist[hpos]
        tvec = T.g_action(r1, InducedElement(T, {(T.reps[0], i): Fraction(1)}))
        g = G.mult[G.mult[r1][h]][r2]
        return tv2c(tvec, g)

    pkeys = [(r1, m, r2) for r1 in P.lreps for m in range(AH.dim)
             for r2 in P.rreps]
    images = [cor(k) for k in pkeys]
    dim_ok = P.dim == S.dim == len(pkeys)
    # injectivity: triangularize the image family
    pivots = []
    rank = 0
    for img in images:
        col = dict(img)
        for pk, pcol in pivots:
            if pk in col:
                f = col[pk] / pcol[pk]
                for k, v in pcol.items():
                    nv = col.get(k, 0) - f * v
                    if nv:
                        col[k] = nv
                    elif k in col:
                        del col[k]
        if col:
            pivots.append((min(col), col))
            rank += 1
    bij_ok = dim_ok and rank == len(pkeys)

    def cor_elem(x: InducedElement) -> dict:
        out: dict = {}
        for k, c in x.coeffs.items():
            for kk, v in cor(k).items():
                nv = out.get(kk, 0) + c * v
                if nv:
                    out[kk] = nv
                elif kk in out:
                    del out[kk]
        return out

    rng = random.Random(seed)
    mult_ok = True
    for _ in range(npairs):
        x = InducedElement(P, {pkeys[rng.randrange(len(pkeys))]:
                               Fraction(rng.randrange(1, 5))})
        y = InducedElement(P, {pkeys[rng.randrange(len(pkeys))]:
                               Fraction(rng.randrange(1, 5)),
                               pkeys[rng.randrange(len(pkeys))]:
                               Fraction(rng.randrange(1, 5))})
        lhs = cor_elem(P.multiply(x, y))
        rhs = {}
        xi, yi = cor_elem(x), cor_elem(y)
        for k1, c1 in xi.items():
            for k2, c2 in yi.items():
                for k, s in S.mul[k1][k2].items():
                    nv = rhs.get(k, 0) + c1 * c2 * s
                    if nv:
                        rhs[k] = nv
                    elif k in rhs:
                        del rhs[k]
        if lhs != rhs:
            mult_ok = False
            break
    return {"ok": bij_ok and mult_ok, "dims": dim_ok, "rank": rank,
            "expected_rank": len(pkeys), "multiplicative": mult_ok,
            "pairs_checked": npairs}


def representative_independence(A: FinAlgebra, G: Group, H: tuple) -> bool:
    """Turull products agree when computed from any coset presentation."""
    T = TurullInduced(A, G, H)
    for g1 in range(G.size):
        for g2 in range(G.size):
            for i in range(A.dim):
                for j in range(A.dim):
                    x = T.embed(g1, A.basis_vec(i))
                    y = T.embed(g2, A.basis_vec(j))
                    r1, h1 = _left_decompose(G, T.H, T.reps, g1)
                    r2, h2 = _left_decompose(G, T.H, T.reps, g2)
                    direct = T.zero()
                    if r1 == r2:
                        prod = A.product(A.act(h1, A.basis_vec(i)),
                                         A.act(h2, A.basis_vec(j)))
                        direct = InducedElement(
                            T, {(r1, k): c for k, c in prod.items()})
                    if T.multiply(x, y) != direct:
                        return False
    return True


# ---------------------------------------------------------------------------
# stock coefficient algebras
# ---------------------------------------------------------------------------

def truncated_polynomial_algebra(n: int, sign_action_of=None,
                                 group: Group | None = None) -> FinAlgebra:
    """C[x]/(x^n) with basis 1, x, .., x^(n-1); optionally the H-action
    x -> -x for the listed subgroup elements of odd order-two type."""
    mul = [[{i + j: Fraction(1)} if i + j < n else {}
            for j in range(n)] for i in range(n)]
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    action = None
    if sign_action_of is not None:
        action = {}
        for h, flip in sign_action_of.items():
            action[h] = [{i: Fraction(-1 if (flip and i % 2) else 1)}
                         for i in range(n)]
    return FinAlgebra(n, mul, {0: Fraction(1)}, labels=labels,
                      action=action, group=group,
                      subgroup=tuple(sign_action_of) if sign_action_of else None)


def group_algebra(G: Group) -> FinAlgebra:
    mul = [[{G.mult[i][j]: Fraction(1)} for j in range(G.size)]
           for i in range(G.size)]
    return FinAlgebra(G.size, mul, {0: Fraction(1)},
                      labels=[f"g{i}" for i in range(G.size)], group=G)
