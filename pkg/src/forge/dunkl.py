"""The Dunkl representation: Cherednik elements as localized operators.

The faithful model acts on polynomials in y_1..y_l with poles along the
reflecting hyperplanes.  An operator is a sum of terms ``coeff o g o d^beta``
with coeff a polynomial divided by a monomial in the canonical hyperplane
forms, g in the group, and d^beta a partial-derivative monomial.

theta sends y_i to multiplication, g to its substitution action, and u_i to
the Dunkl operator

    D_i = t d_i - sum_s (2 c_s / (1 - lam_s)) * (ell_h)_i / ell_h * (1 - s)

where ell_h is the canonical linear form of the hyperplane of s and lam_s the
eigenvalue of s on the moved line.  The sign of the Cherednik commutation
rule is fixed by comparing [theta(u), theta(y)] against both candidates; see
resolve_commutator_sign.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cherednik import CherednikContext, CherednikElement
from .scalars import CycNum, Scalar

YPoly = dict  # tuple[int,...] -> Scalar, zero values never stored


def yp_add(a: YPoly, b: YPoly) -> YPoly:
    out = dict(a)
    for e, c in b.items():
        cur = out.get(e)
        nv = c if cur is None else cur + c
        if nv:
            out[e] = nv
        elif cur is not None:
            del out[e]
    return out


def yp_mul(a: YPoly, b: YPoly) -> YPoly:
    out: YPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = ca * cb
            cur = out.get(e)
            nv = c if cur is None else cur + c
            if nv:
                out[e] = nv
            elif cur is not None:
                del out[e]
    return out


def yp_scale(a: YPoly, c: Scalar) -> YPoly:
    return {e: v * c for e, v in a.items()} if c else {}


def yp_deriv(a: YPoly, j: int) -> YPoly:
    out: YPoly = {}
    for e, c in a.items():
        if e[j]:
            out[e[:j] + (e[j] - 1,) + e[j + 1:]] = c * e[j]
    return out


def yp_div_linear(num: YPoly, vec, sc) -> YPoly | None:
    """Exact division by the linear form sum_j vec_j y_j; None if inexact."""
    j0 = next(j for j, v in enumerate(vec) if v)
    inv = sc.one() / sc.from_cyc(vec[j0])
    rem = dict(num)
    quo: YPoly = {}
    while True:
        cands = [e for e in rem if e[j0] > 0]
        if not cands:
            return None if rem else quo
        e = max(cands, key=lambda e: (e[j0], e))
        qe = e[:j0] + (e[j0] - 1,) + e[j0 + 1:]
        qc = rem[e] * inv
        quo[qe] = quo[qe] + qc if qe in quo else qc
        if not quo[qe]:
            del quo[qe]
        for k, v in enumerate(vec):
            if not v:
                continue
            te = tuple(x + int(m == k) for m, x in enumerate(qe))
            cur = rem.get(te)
            sub = qc * sc.from_cyc(v)
            nv = -sub if cur is None else cur - sub
            if nv:
                rem[te] = nv
            elif cur is not None:
                del rem[te]


class DunklContext:
    """Operator-side companion of a CherednikContext."""

    def __init__(self, alg: CherednikContext):
        self.alg = alg
        self.group = alg.group
        self.scalars = alg.scalars
        self.dim = alg.dim
        self.hyperplanes = alg.group.hyperplanes
        self._hp_action: dict = {}   # (gi, h) -> (h', gamma: CycNum)

    def hp_action(self, gi: int, h: int):
        """g . ell_h = gamma * ell_h' for the canonical hyperplane forms."""
        key = (gi, h)
        hit = self._hp_action.get(key)
        if hit is None:
            img = self.group.act_vector(gi, self.hyperplanes[h])
            lead = next(x for x in img if x)
            canon = tuple(x / lead for x in img)
            hit = (self.hyperplanes.index(canon), lead)
            self._hp_action[key] = hit
        return hit

    def hp_poly(self, h: int) -> YPoly:
        sc = self.scalars
        return {tuple(int(k == j) for k in range(self.dim)): sc.from_cyc(v)
                for j, v in enumerate(self.hyperplanes[h]) if v}

    # -- constructors -------------------------------------------------------
    def coeff(self, num: YPoly, den=None) -> "LocalizedCoeff":
        return LocalizedCoeff(self, num,
                              (0,) * len(self.hyperplanes) if den is None
                              else tuple(den))

    def coeff_scalar(self, s: Scalar) -> "LocalizedCoeff":
        return self.coeff({(0,) * self.dim: s} if s else {})

    def zero_op(self) -> "LocalizedOp":
        return LocalizedOp(self, {})

    def one_op(self) -> "LocalizedOp":
        return LocalizedOp(
            self, {(0, (0,) * self.dim): self.coeff_scalar(self.scalars.one())})

    def mult_op(self, c: "LocalizedCoeff") -> "LocalizedOp":
        return LocalizedOp(self, {(0, (0,) * self.dim): c} if c else {})

    def group_op(self, gi: int) -> "LocalizedOp":
        return LocalizedOp(
            self, {(gi, (0,) * self.dim): self.coeff_scalar(self.scalars.one())})

    def deriv_op(self, j: int) -> "LocalizedOp":
        beta = tuple(int(k == j) for k in range(self.dim))
        return LocalizedOp(self, {(0, beta): self.coeff_scalar(self.scalars.one())})

    def dunkl_operator(self, i: int) -> "LocalizedOp":
        sc = self.scalars
        terms: dict = {}
        beta = tuple(int(k == i) for k in range(self.dim))
        zero_b = (0,) * self.dim
        terms[(0, beta)] = self.coeff_scalar(self.alg.t)
        acc: dict = {}  # (g, h) -> Scalar numerator of the pole coefficient
        for r in self.group.reflections:
            ell = self.hyperplanes[r.hyperplane]
            if not ell[i]:
                continue
            kappa = 2 * sc.c(r.cls + 1) / (sc.one() - sc.from_cyc(r.lam))
            w = kappa * sc.from_cyc(ell[i])
            for g, sgn in ((0, -1), (r.element, 1)):
                key = (g, r.hyperplane)
                cur = acc.get(key, sc.zero())
                acc[key] = cur + sgn * w
        for (g, h), s in acc.items():
            if not s:
                continue
            den = tuple(int(k == h) for k in range(len(self.hyperplanes)))
            c = LocalizedCoeff(self, {(0,) * self.dim: s}, den)
            key = (g, zero_b)
            terms[key] = terms[key] + c if key in terms else c
        return LocalizedOp(self, {k: v for k, v in terms.items() if v})

    def theta(self, e: CherednikElement) -> "LocalizedOp":
        """The faithful operator image of a PBW element."""
        out = self.zero_op()
        dunkl = [self.dunkl_operator(i) for i in range(self.dim)]
        for (a, g, b), coef in e.terms.items():
            num = {a: coef}
            op = self.mult_op(self.coeff(num)) * self.group_op(g)
            for i, bi in enumerate(b):
                for _ in range(bi):
                    op = op * dunkl[i]
            out = out + op
        return out


class LocalizedCoeff:
    """num / prod_h ell_h^den[h], num a polynomial in the y's over Scalars."""

    __slots__ = ("ctx", "num", "den")
    __hash__ = None

    def __init__(self, ctx: DunklContext, num: YPoly, den: tuple):
        self.ctx = ctx
        self.num = num
        self.den = (0,) * len(den) if not num else den

    def __bool__(self):
        return bool(self.num)

    def reduced(self) -> "LocalizedCoeff":
        """Strip exactly-dividing hyperplane factors from the denominator.

        The representation is exact either way (a quotient is zero iff its
        numerator is); reduction is only needed when reporting pole orders
        or printing, so it is not done eagerly.
        """
        num, ctx = self.num, self.ctx
        den = list(self.den)
        if num:
            for h in range(len(den)):
                while den[h] > 0:
                    q = yp_div_linear(num, ctx.hyperplanes[h], ctx.scalars)
                    if q is None:
                        break
                    num = q
                    den[h] -= 1
        return LocalizedCoeff(ctx, num, tuple(den))

    def pole_order(self) -> int:
        return sum(self.reduced().den)

    def _raise_den(self, target: tuple) -> YPoly:
        num = self.num
        for h, (k, kt) in enumerate(zip(self.den, target)):
            for _ in range(kt - k):
                num = yp_mul(num, self.ctx.hp_poly(h))
        return num

    def __add__(self, other: "LocalizedCoeff"):
        target = tuple(max(a, b) for a, b in zip(self.den, other.den))
        return LocalizedCoeff(self.ctx,
                              yp_add(self._raise_den(target),
                                     other._raise_den(target)), target)

    def __neg__(self):
        return LocalizedCoeff(self.ctx, {e: -c for e, c in self.num.items()},
                              self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LocalizedCoeff"):
        return LocalizedCoeff(self.ctx, yp_mul(self.num, other.num),
                              tuple(a + b for a, b in zip(self.den, other.den)))

    def scale(self, s: Scalar) -> "LocalizedCoeff":
        return LocalizedCoeff(self.ctx, yp_scale(self.num, s), self.den)

    def __eq__(self, other):
        if not isinstance(other, LocalizedCoeff):
            return NotImplemented
        return not (self - other)

    def act(self, gi: int) -> "LocalizedCoeff":
        """Conjugation g o (this as multiplication operator) o g^-1."""
        if gi == 0:
            return self
        ctx = self.ctx
        sc = ctx.scalars
        num: YPoly = {}
        for e, c in self.num.items():
            for ae, ac in ctx.alg._act_monomial(gi, e, covariant=True).items():
                cur = num.get(ae)
                nv = c * ac if cur is None else cur + c * ac
                if nv:
                    num[ae] = nv
                elif cur is not None:
                    del num[ae]
        den = [0] * len(self.den)
        gamma = sc.one()
        for h, k in enumerate(self.den):
            if k:
                h2, g = ctx.hp_action(gi, h)
                den[h2] += k
                gamma = gamma * (sc.one() / sc.from_cyc(g)) ** k
        return LocalizedCoeff(ctx, yp_scale(num, gamma), tuple(den))

    def deriv(self, j: int) -> "LocalizedCoeff":
        ctx = self.ctx
        out = LocalizedCoeff(ctx, yp_deriv(self.num, j), self.den)
        for h, k in enumerate(self.den):
            vj = ctx.hyperplanes[h][j]
            if k and vj:
                den = tuple(x + int(m == h) for m, x in enumerate(self.den))
                out = out + LocalizedCoeff(
                    ctx, yp_scale(self.num, ctx.scalars.from_cyc(vj) * (-k)), den)
        return out

    def __str__(self):
        if not self.num:
            return "0"
        red = self.reduced()
        if red.num is not self.num or red.den != self.den:
            return str(red)
        def mono(e):
            return "*".join(f"y{i+1}" + (f"^{k}" if k > 1 else "")
                            for i, k in enumerate(e) if k) or "1"
        bits = " + ".join(f"({self.num[e]})*{mono(e)}"
                          for e in sorted(self.num, key=lambda e: (sum(e), e),
                                          reverse=True))
        if any(self.den):
            dens = "*".join(
                f"({''.join(str(LocalizedCoeff(self.ctx, self.ctx.hp_poly(h), (0,)*len(self.den))))})"
                + (f"^{k}" if k > 1 else "")
                for h, k in enumerate(self.den) if k)
            return f"({bits})/{dens}"
        return bits


class LocalizedOp:
    """Sum of coeff o g o d^beta terms; composition is operator composition."""

    __slots__ = ("ctx", "terms")
    __hash__ = None

    def __init__(self, ctx: DunklContext, terms: dict):
        self.ctx = ctx
        self.terms = {k: v for k, v in terms.items() if v}

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "LocalizedOp"):
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out[k] + v if k in out else v
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
        return LocalizedOp(self.ctx, out)

    def __neg__(self):
        return LocalizedOp(self.ctx, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Scalar) -> "LocalizedOp":
        return LocalizedOp(self.ctx, {k: v.scale(s) for k, v in self.terms.items()})

    def __mul__(self, other: "LocalizedOp"):
        ctx = self.ctx
        group = ctx.group
        out: dict = {}
        for (g1, b1), c1 in self.terms.items():
            for (g2, b2), c2 in other.terms.items():
                # c1 g1 d^b1 c2 g2 d^b2; Leibniz d^b1 past c2
                for gamma in _sub_multi(b1):
                    binom = math.prod(math.comb(b, g) for b, g in zip(b1, gamma))
                    dc2 = c2
                    for j, gj in enumerate(gamma):
                        for _ in range(gj):
                            dc2 = dc2.deriv(j)
                    if not dc2:
                        continue
                    coeff = c1 * dc2.act(g1)
                    if binom != 1:
                        coeff = coeff.scale(ctx.scalars.from_int(binom))
                    rem = tuple(b - g for b, g in zip(b1, gamma))
                    # d^rem past g2: derivations conjugate like covectors
                    for de, dcf in ctx.alg._act_monomial(
                            group.inv[g2], rem, covariant=False).items():
                        key = (group.mult[g1][g2],
                               tuple(x + y for x, y in zip(de, b2)))
                        add = coeff.scale(dcf) if dcf != 1 else coeff
                        if not add:
                            continue
                        nv = out[key] + add if key in out else add
                        if nv:
                            out[key] = nv
                        elif key in out:
                            del out[key]
        return LocalizedOp(ctx, out)

    def commutator(self, other: "LocalizedOp") -> "LocalizedOp":
        return self * other - other * self

    def __eq__(self, other):
        if not isinstance(other, LocalizedOp):
            return NotImplemented
        return not (self - other)

    def apply(self, f: LocalizedCoeff) -> LocalizedCoeff:
        """Apply to a localized function."""
        out = self.ctx.coeff_scalar(self.ctx.scalars.zero())
        for (g, b), c in self.terms.items():
            h = f
            for j, bj in enumerate(b):
                for _ in range(bj):
                    h = h.deriv(j)
            out = out + c * h.act(g)
        return out

    def max_pole_order(self) -> int:
        return max((c.pole_order() for c in self.terms.values()), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (g, b) in sorted(self.terms, key=lambda k: (sum(k[1]), k[1], k[0])):
            c = self.terms[(g, b)]
            seg = [f"({c})"]
            if g:
                seg.append(f"g{g + 1}")
            for j, bj in enumerate(b):
                if bj:
                    seg.append(f"d{j + 1}" + (f"^{bj}" if bj > 1 else ""))
            bits.append("*".join(seg))
        return " + ".join(bits)


def _sub_multi(beta: tuple):
    """All multi-indices gamma <= beta componentwise."""
    if not beta:
        yield ()
        return
    for head in range(beta[0] + 1):
        for rest in _sub_multi(beta[1:]):
            yield (head,) + rest


def resolve_commutator_sign() -> int:
    """Decide the reflection-term sign in [u, y] from the operator model.

    Works purely on the Dunkl side in rank one, so it is independent of the
    sign hardwired into the PBW rewriting engine.
    """
    from .groups import cyclic_group
    alg = CherednikContext(cyclic_group(2))
    ctx = DunklContext(alg)
    sc = ctx.scalars
    D = ctx.dunkl_operator(0)
    Y = ctx.mult_op(ctx.coeff({(1,): sc.one()}))
    comm = D * Y - Y * D
    s = ctx.group.reflections[0]
    pairing = sc.from_cyc(s.alpha_vee[0]) * sc.from_cyc(s.alpha[0])
    for sign in (-1, 1):
        cand = ctx.mult_op(ctx.coeff_scalar(alg.t)) \
            + ctx.group_op(s.element).scale(sign * sc.c(1) * pairing)
        if comm == cand:
            return sign
    raise AssertionError("commutator matches neither sign convention")
