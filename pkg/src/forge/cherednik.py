"""The rational Cherednik algebra attached to a finite reflection group.

Elements are stored in PBW normal form: a finite sum of terms
``y^a * g * u^b`` with exact scalar coefficients in Q(zeta_N)(t, c_1..c_k).
Products are computed by a memoized rewriting engine that pushes u-factors
through y-factors with the commutation rule

    [u_i, y_j] = t delta_ij - sum_s c_cls(s) (alpha_s_vee)_i (alpha_s)_j s

(the sign of the reflection term is forced by the Dunkl representation; see
the sign oracle in the dunkl module's tests) and moves group elements to the
middle with g y = (g.y) g and u g = g (g^-1.u).

Degree-wise completions are modeled by a y-degree truncation cap carried on
elements: products drop all terms of y-degree above the cap.
"""

from __future__ import annotations

import math

from .groups import Group
from .scalars import Scalar, ScalarContext, parse_expression

# sign of the reflection term in [u_i, y_j]; resolved by the rank-1 Dunkl
# commutator oracle (tests/test_dunkl.py::test_commutator_sign_oracle)
COMMUTATOR_SIGN = -1

TermKey = tuple  # (yexp: tuple[int,...], g: int, uexp: tuple[int,...])


def _add_term(d: dict, key: TermKey, coef: Scalar):
    cur = d.get(key)
    new = coef if cur is None else cur + coef
    if new:
        d[key] = new
    elif cur is not None:
        del d[key]


class CherednikContext:
    """Shared structure: the group, the scalar field and rewriting caches."""

    def __init__(self, group: Group, t: Scalar | None = None):
        self.group = group
        self.scalars = ScalarContext(group.order, group.nclasses)
        self.dim = group.dim
        self.t = self.scalars.t() if t is None else t
        self._uy_cache: dict = {}       # (uexp, yexp) -> dict[TermKey -> Scalar]
        self._act_y_cache: dict = {}    # (g, yexp)   -> dict[yexp -> Scalar]
        self._act_u_cache: dict = {}    # (g, uexp)   -> dict[uexp -> Scalar]
        # [u_i, y_j] as (constant, dict[g -> Scalar])
        self._comm = {}
        sc = self.scalars
        for i in range(self.dim):
            for j in range(self.dim):
                const = self.t if i == j else sc.zero()
                gpart: dict[int, Scalar] = {}
                for r in group.reflections:
                    coef = COMMUTATOR_SIGN * sc.c(r.cls + 1) \
                        * sc.from_cyc(r.alpha_vee[i]) * sc.from_cyc(r.alpha[j])
                    if coef:
                        cur = gpart.get(r.element)
                        nv = coef if cur is None else cur + coef
                        if nv:
                            gpart[r.element] = nv
                        elif cur is not None:
                            del gpart[r.element]
                self._comm[(i, j)] = (const, gpart)

    # -- element constructors ----------------------------------------------
    def zero(self) -> "CherednikElement":
        return CherednikElement(self, {})

    def one(self) -> "CherednikElement":
        z = (0,) * self.dim
        return CherednikElement(self, {(z, 0, z): self.scalars.one()})

    def y(self, i: int) -> "CherednikElement":
        z = (0,) * self.dim
        e = tuple(int(k == i) for k in range(self.dim))
        return CherednikElement(self, {(e, 0, z): self.scalars.one()})

    def u(self, i: int) -> "CherednikElement":
        z = (0,) * self.dim
        e = tuple(int(k == i) for k in range(self.dim))
        return CherednikElement(self, {(z, 0, e): self.scalars.one()})

    def g(self, gi: int) -> "CherednikElement":
        z = (0,) * self.dim
        return CherednikElement(self, {(z, gi, z): self.scalars.one()})

    def monomial(self, yexp, gi, uexp, coef=None) -> "CherednikElement":
        coef = self.scalars.one() if coef is None else coef
        if not coef:
            return self.zero()
        return CherednikElement(self, {(tuple(yexp), gi, tuple(uexp)): coef})

    # -- group action on monomials ------------------------------------------
    def _act_monomial(self, gi: int, exp: tuple, covariant: bool) -> dict:
        """Expand g . (v^exp) where v_k transforms as vectors (y) or covectors (u)."""
        cache = self._act_y_cache if covariant else self._act_u_cache
        key = (gi, exp)
        hit = cache.get(key)
        if hit is not None:
            return hit
        sc = self.scalars
        out = {(0,) * self.dim: sc.one()}
        for k, e in enumerate(exp):
            if not e:
                continue
            base = tuple(int(m == k) for m in range(self.dim))
            if covariant:
                img = self.group.act_vector(gi, base)
            else:
                img = self.group.act_covector(gi, base)
            # linear form as dict of single-variable exponents
            lin = {}
            for m, c in enumerate(img):
                if c:
                    lin[tuple(int(x == m) for x in range(self.dim))] = sc.from_cyc(c)
            for _ in range(e):
                nxt: dict = {}
                for e1, c1 in out.items():
                    for e2, c2 in lin.items():
                        ke = tuple(a + b for a, b in zip(e1, e2))
                        cur = nxt.get(ke)
                        nv = c1 * c2 if cur is None else cur + c1 * c2
                        if nv:
                            nxt[ke] = nv
                        elif cur is not None:
                            del nxt[ke]
                out = nxt
        cache[key] = out
        return out

    # -- the core rewrite: u^b y^a into normal form -------------------------
    def _reduce_uy(self, uexp: tuple, yexp: tuple) -> dict:
        """u^b y^a as dict[(yexp, g, uexp) -> Scalar] in normal form."""
        if not any(uexp) or not any(yexp):
            return {(yexp, 0, uexp): self.scalars.one()}
        key = (uexp, yexp)
        hit = self._uy_cache.get(key)
        if hit is not None:
            return hit
        i = next(k for k, e in enumerate(uexp) if e)
        rest_u = tuple(e - int(k == i) for k, e in enumerate(uexp))
        inner = self._reduce_uy(rest_u, yexp)
        out: dict = {}
        for (a, g, b), c in inner.items():
            # multiply u_i onto y^a g u^b from the left
            for (a2, g2, b2), c2 in self._push_u_through(i, a, g).items():
                nb = tuple(x + y for x, y in zip(b2, b))
                _add_term(out, (a2, g2, nb), c * c2)
        self._uy_cache[key] = out
        return out

    def _push_u_through(self, i: int, yexp: tuple, g: int) -> dict:
        """u_i y^a g in normal form, as dict[(yexp, g, uexp) -> Scalar]."""
        sc = self.scalars
        out: dict = {}
        if not any(yexp):
            # u_i g = g (g^-1 . u_i)
            inv = self.group.inv[g]
            img = self.group.act_covector(inv, tuple(
                int(k == i) for k in range(self.dim)))
            z = (0,) * self.dim
            for m, c in enumerate(img):
                if c:
                    _add_term(out, (z, g, tuple(int(k == m) for k in range(self.dim))),
                              sc.from_cyc(c))
            return out
        j = next(k for k, e in enumerate(yexp) if e)
        rest_y = tuple(e - int(k == j) for k, e in enumerate(yexp))
        # u_i y_j = y_j u_i + [u_i, y_j]
        for (a, g2, b), c in self._push_u_through(i, rest_y, g).items():
            na = tuple(x + int(k == j) for k, x in enumerate(a))
            _add_term(out, (na, g2, b), c)
        const, gpart = self._comm[(i, j)]
        if const:
            _add_term(out, (rest_y, g, (0,) * self.dim), const)
        z = (0,) * self.dim
        for si, coef in gpart.items():
            # s y^rest g = (s . y^rest) s g
            acted = self._act_monomial(si, rest_y, covariant=True)
            sg = self.group.mult[si][g]
            for ae, ac in acted.items():
                _add_term(out, (ae, sg, z), coef * ac)
        return out

    # -- parsing ------------------------------------------------------------
    def parse(self, text: str) -> "CherednikElement":
        """Element syntax like ``y1^2*g3*u2 + (2*c1)*s1``."""
        sc = self.scalars

        def resolve(name: str):
            head, tail = name[0], name[1:]
            if name == "t":
                return self.one() * sc.t()
            if name == "z":
                return self.one() * sc.root()
            if head == "c" and tail.isdigit():
                return self.one() * sc.c(int(tail))
            if head in "yugs" and tail.isdigit():
                idx = int(tail)
                if head == "y":
                    return self.y(idx - 1)
                if head == "u":
                    return self.u(idx - 1)
                if head == "g":
                    if not 1 <= idx <= self.group.size:
                        raise ValueError(f"group index {idx} out of range")
                    return self.g(idx - 1)
                refl = self.group.reflections
                if not 1 <= idx <= len(refl):
                    raise ValueError(f"reflection index {idx} out of range")
                return self.g(refl[idx - 1].element)
            raise ValueError(f"unknown symbol {name!r}")

        return parse_expression(text, resolve,
                                lambda n: self.one() * sc.from_int(n))


class CherednikElement:
    """A PBW normal form sum of y^a g u^b terms; optionally y-truncated."""

    __slots__ = ("ctx", "terms", "cap")
    __hash__ = None

    def __init__(self, ctx: CherednikContext, terms: dict, cap: int | None = None):
        self.ctx = ctx
        if cap is not None:
            terms = {k: v for k, v in terms.items() if sum(k[0]) <= cap}
        self.terms = terms
        self.cap = cap

    def _merge_cap(self, other: "CherednikElement") -> int | None:
        if self.cap is None:
            return other.cap
        if other.cap is None:
            return self.cap
        return min(self.cap, other.cap)

    def _coerce(self, other):
        if isinstance(other, CherednikElement):
            return other if other.ctx is self.ctx else None
        if isinstance(other, Scalar) or isinstance(other, int):
            sc = self.ctx.scalars
            c = sc.from_int(other) if isinstance(other, int) else other
            return self.ctx.one() * c if c else self.ctx.zero()
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            _add_term(out, k, v)
        return CherednikElement(self.ctx, out, self._merge_cap(o))

    __radd__ = __add__

    def __neg__(self):
        return CherednikElement(self.ctx, {k: -v for k, v in self.terms.items()},
                                self.cap)

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            c = self.ctx.scalars.from_int(other) if isinstance(other, int) else other
            if not c:
                return CherednikElement(self.ctx, {}, self.cap)
            return CherednikElement(self.ctx,
                                    {k: v * c for k, v in self.terms.items()},
                                    self.cap)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        cap = self._merge_cap(o)
        out: dict = {}
        for (a1, g1, b1), c1 in self.terms.items():
            for (a2, g2, b2), c2 in o.terms.items():
                c = c1 * c2
                for (am, gm, bm), cm in ctx._reduce_uy(b1, a2).items():
                    # y^a1 g1 (y^am gm u^bm) g2 u^b2
                    acted = ctx._act_monomial(g1, am, covariant=True)
                    g_left = ctx.group.mult[g1][gm]
                    g_all = ctx.group.mult[g_left][g2]
                    # u^bm g2 = g2 (g2^-1 . u^bm)
                    u_acted = ctx._act_monomial(ctx.group.inv[g2], bm,
                                                covariant=False)
                    for ae, ac in acted.items():
                        ya = tuple(x + y for x, y in zip(a1, ae))
                        if cap is not None and sum(ya) > cap:
                            continue
                        for ue, uc in u_acted.items():
                            ub = tuple(x + y for x, y in zip(ue, b2))
                            _add_term(out, (ya, g_all, ub), c * cm * ac * uc)
        return CherednikElement(ctx, out, cap)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self * other
        o = self._coerce(other)
        return NotImplemented if o is None else o * self

    def __pow__(self, n: int):
        acc = self.ctx.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def commutator(self, other: "CherednikElement") -> "CherednikElement":
        return self * other - other * self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        keys = set(self.terms) | set(o.terms)
        z = self.ctx.scalars.zero()
        return all(self.terms.get(k, z) == o.terms.get(k, z) for k in keys)

    def __bool__(self):
        return bool(self.terms)

    # -- filtration ---------------------------------------------------------
    def filtration_degree(self) -> int:
        """Top y-degree (the geometric filtration: deg y = 1, deg u = deg g = 0)."""
        return max((sum(a) for (a, _, _) in self.terms), default=-math.inf)

    def u_degree(self) -> int:
        return max((sum(b) for (_, _, b) in self.terms), default=0)

    def truncate_y(self, cap: int) -> "CherednikElement":
        return CherednikElement(self.ctx, dict(self.terms), cap)

    # -- printing -----------------------------------------------------------
    def _term_str(self, key: TermKey) -> str:
        a, g, b = key
        parts = []
        for i, e in enumerate(a):
            if e:
                parts.append(f"y{i + 1}" + (f"^{e}" if e > 1 else ""))
        if g != 0:
            srefl = [r.element for r in self.ctx.group.reflections]
            parts.append(f"s{srefl.index(g) + 1}" if g in srefl else f"g{g + 1}")
        for i, e in enumerate(b):
            if e:
                parts.append(f"u{i + 1}" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) if parts else "1"

    def __str__(self):
        if not self.terms:
            return "0"
        def key_order(k):
            a, g, b = k
            return (sum(a) + sum(b), a, b, -g)
        bits = []
        for k in sorted(self.terms, key=key_order, reverse=True):
            c = self.terms[k]
            cs = str(c)
            mono = self._term_str(k)
            if mono == "1":
                bits.append(cs if ("+" not in cs[1:] and "-" not in cs[1:]
                                   and "/" not in cs) else f"({cs})")
            elif cs == "1":
                bits.append(mono)
            elif cs == "-1":
                bits.append(f"-{mono}")
            else:
                simple = ("+" not in cs[1:] and ("-" not in cs[1:]) and "/" not in cs
                          and " " not in cs)
                bits.append(f"{cs}*{mono}" if simple else f"({cs})*{mono}")
        out = bits[0]
        for p in bits[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"<CherednikElement {self}>"
