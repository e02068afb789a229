"""Centralizer calculus for the Cherednik algebra at t = 1.

For a matrix A commuting with the group, each reflection's root line is
A-stable; the resulting eigenvalue data feeds a Lie-algebra map phi_c into
the algebra, an automorphism action theta of invertible centralizing
matrices, and the two tensor factorizations

    Phi_c : v + A(x)p  ->  v(x)1 + p(x)phi_c(A)
    sigma : v + A(x)p  ->  v(x)id - p(x)sum_ij A_ij y_j d/dy_i

whose compatibility sigma = (id (x) Theta-hat) o Phi_c is checked exactly,
term by term, by verify_factorization.

Matrix convention: vectors are columns and [phi_c(A), y_m] = -sum_j A_mj y_j,
[phi_c(A), u_m] = sum_i A_im u_i; this is the reading of the equivariance
rules y -> -Ay, u -> uA that makes phi_c a Lie homomorphism.
"""

from __future__ import annotations

import itertools

from .cherednik import CherednikContext, CherednikElement
from .dunkl import DunklContext, LocalizedOp
from .groups import Group, Reflection, mat_inv, mat_mul
from .jets import SemidirectElement, _le_multi
from .scalars import CycNum, Scalar, ScalarContext


def hc_context(group: Group) -> CherednikContext:
    """Cherednik context specialized at t = 1 (where phi_c lives)."""
    sc = ScalarContext(group.order, group.nclasses)
    return CherednikContext(group, t=sc.one())


def is_centralizing(group: Group, A) -> bool:
    return all(mat_mul(A, M) == mat_mul(M, A) for M in group.elements)


def _eigen_ratio(vec, img):
    """rho with img == rho * vec, or None if img is off the line."""
    piv = next((i for i, v in enumerate(vec) if v), None)
    if piv is None:
        raise ValueError("zero vector has no eigen ratio")
    rho = img[piv] / vec[piv]
    if all(img[i] == rho * vec[i] for i in range(len(vec))):
        return rho
    return None


def lambda_for(group: Group, A, refl: Reflection) -> CycNum:
    """lambda_{A,s}: minus the eigenvalue of A on the root line of s.

    A centralizing matrix preserves both the root line (the covector alpha_s)
    and the coroot line; the two eigenvalues agree through the pairing, and
    both are checked.
    """
    n = group.dim
    img_alpha = tuple(
        sum((A[i][j] * refl.alpha[j] for j in range(1, n)),
            A[i][0] * refl.alpha[0]) for i in range(n))
    rho = _eigen_ratio(refl.alpha, img_alpha)
    img_avee = tuple(
        sum((A[j][i] * refl.alpha_vee[j] for j in range(1, n)),
            A[0][i] * refl.alpha_vee[0]) for i in range(n))
    rho2 = _eigen_ratio(refl.alpha_vee, img_avee)
    if rho is None or rho2 is None or rho != rho2:
        raise ValueError("matrix does not preserve the root line of the "
                         "reflection; is it in the centralizer?")
    return -rho


def reflection_term(alg: CherednikContext, A) -> CherednikElement:
    """sum_s (2 c_s / (1 - lambda_s)) lambda_{A,s} (1 - s)."""
    sc = alg.scalars
    out = alg.zero()
    for r in alg.group.reflections:
        lam_a = lambda_for(alg.group, A, r)
        if not lam_a:
            continue
        kappa = (2 * sc.c(r.cls + 1)) / (sc.one() - sc.from_cyc(r.lam))
        coef = kappa * sc.from_cyc(lam_a)
        out = out + alg.one() * coef - alg.g(r.element) * coef
    return out


def phi_c(alg: CherednikContext, A) -> CherednikElement:
    """phi_c(A) = -sum_ij A_ij y_j u_i + reflection_term(A).

    A is a matrix over CycNum commuting with the group.  The map is a Lie
    homomorphism into the algebra at t = 1 whose brackets implement the
    infinitesimal centralizer action on generators.
    """
    if not is_centralizing(alg.group, A):
        raise ValueError("phi_c needs a matrix commuting with the group")
    sc = alg.scalars
    out = reflection_term(alg, A)
    for i in range(alg.dim):
        for j in range(alg.dim):
            if A[i][j]:
                out = out - alg.y(j) * alg.u(i) * sc.from_cyc(A[i][j])
    return out


def lie_bracket_residual(alg: CherednikContext, A, B) -> CherednikElement:
    """phi_c([A, B]) - [phi_c(A), phi_c(B)]; zero iff the bracket is kept."""
    n = alg.dim
    AB = tuple(tuple(
        sum((A[i][k] * B[k][j] - B[i][k] * A[k][j] for k in range(1, n)),
            A[i][0] * B[0][j] - B[i][0] * A[0][j])
        for j in range(n)) for i in range(n))
    return phi_c(alg, AB) - phi_c(alg, A).commutator(phi_c(alg, B))


def theta_action(alg: CherednikContext, gmat):
    """The automorphism of the algebra induced by an invertible centralizing
    matrix: y_m -> sum_j (g^-1)_mj y_j, u_m -> sum_i g_im u_i, group fixed.

    Returns a function on elements; raises if gmat does not centralize.
    """
    group = alg.group
    if not is_centralizing(group, gmat):
        raise ValueError("theta_action needs a matrix commuting with the group")
    ginv = mat_inv(gmat, group.order)
    sc = alg.scalars
    n = alg.dim
    y_img = [sum((alg.y(j) * sc.from_cyc(ginv[m][j]) for j in range(n)
                  if ginv[m][j]), alg.zero()) for m in range(n)]
    u_img = [sum((alg.u(i) * sc.from_cyc(gmat[i][m]) for i in range(n)
                  if gmat[i][m]), alg.zero()) for m in range(n)]

    def apply(e: CherednikElement) -> CherednikElement:
        out = alg.zero()
        for (a, g, b), coef in e.terms.items():
            term = alg.one() * coef
            for m, k in enumerate(a):
                for _ in range(k):
                    term = term * y_img[m]
            term = term * alg.g(g)
            for m, k in enumerate(b):
                for _ in range(k):
                    term = term * u_img[m]
            out = out + term
        return out

    return apply


# ---------------------------------------------------------------------------
# tensor algebra: jets in x (x) completed Cherednik fiber
# ---------------------------------------------------------------------------

class TensorContext:
    """Polynomial differential operators in x_1..x_m (truncated at x-degree K)
    tensored with the Cherednik algebra of the fiber."""

    def __init__(self, m: int, alg: CherednikContext, K: int = 3):
        self.m = m
        self.alg = alg
        self.K = K
        z = (0,) * m
        self._zx = z
        self._zf = ((0,) * alg.dim, 0, (0,) * alg.dim)

    def zero(self) -> "TensorElement":
        return TensorElement(self, {})

    def one(self) -> "TensorElement":
        return TensorElement(
            self, {(self._zx, self._zx, self._zf): self.alg.scalars.one()})

    def from_fiber(self, e: CherednikElement) -> "TensorElement":
        return TensorElement(self, {(self._zx, self._zx, k): c
                                    for k, c in e.terms.items()})

    def x_term(self, xexp, dexp, coef=None) -> "TensorElement":
        coef = self.alg.scalars.one() if coef is None else coef
        return TensorElement(self, {(tuple(xexp), tuple(dexp), self._zf): coef})


class TensorElement:
    """Sum of x^a d_x^d (x) (PBW fiber monomial) with Scalar coefficients."""

    __slots__ = ("ctx", "terms")
    __hash__ = None

    def __init__(self, ctx: TensorContext, terms: dict):
        self.ctx = ctx
        self.terms = {k: v for k, v in terms.items()
                      if v and sum(k[0]) <= ctx.K}

    def __add__(self, other: "TensorElement"):
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out[k] + v if k in out else v
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
        return TensorElement(self.ctx, out)

    def __neg__(self):
        return TensorElement(self.ctx, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Scalar) -> "TensorElement":
        return TensorElement(self.ctx, {k: v * s for k, v in self.terms.items()})

    def __mul__(self, other: "TensorElement"):
        import math as _math
        ctx = self.ctx
        alg = ctx.alg
        out: dict = {}
        for (x1, d1, f1), c1 in self.terms.items():
            for (x2, d2, f2), c2 in other.terms.items():
                fprod = alg.monomial(*f1) * alg.monomial(*f2)
                if not fprod:
                    continue
                for gamma in _le_multi(d1, x2):
                    f = _math.prod(_math.comb(d, g) for d, g in zip(d1, gamma)) \
                        * _math.prod(_math.perm(x, g) for x, g in zip(x2, gamma))
                    xe = tuple(a + b - g for a, b, g in zip(x1, x2, gamma))
                    if sum(xe) > ctx.K:
                        continue
                    de = tuple(a + b - g for a, b, g in zip(d1, d2, gamma))
                    for fk, fc in fprod.terms.items():
                        key = (xe, de, fk)
                        c = c1 * c2 * fc * f
                        nv = out[key] + c if key in out else c
                        if nv:
                            out[key] = nv
                        elif key in out:
                            del out[key]
        return TensorElement(self.ctx, out)

    def commutator(self, other):
        return self * other - other * self

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        alg = self.ctx.alg
        bits = []
        for (xe, de, fk), c in sorted(
                self.terms.items(),
                key=lambda kv: (sum(kv[0][0]) + sum(kv[0][1]), kv[0])):
            xs = "*".join(f"x{i+1}" + (f"^{k}" if k > 1 else "")
                          for i, k in enumerate(xe) if k)
            ds = "*".join(f"dx{i+1}" + (f"^{k}" if k > 1 else "")
                          for i, k in enumerate(de) if k)
            fs = alg.zero()._term_str(fk) if fk != self.ctx._zf else ""
            mono = "*".join(b for b in (xs, ds, fs) if b) or "1"
            bits.append(f"({c})*{mono}")
        return " + ".join(bits)


def Phi_c(ctx: TensorContext, e: SemidirectElement) -> TensorElement:
    """v + sum A(x)p  ->  v(x)1 + sum p(x)phi_c(A)."""
    sc = ctx.alg.scalars
    out = ctx.zero()
    for r, comp in enumerate(e.v.components):
        dr = tuple(int(k == r) for k in range(ctx.m))
        for xe, c in comp.coeffs.items():
            out = out + ctx.x_term(xe, dr, c)
    for A, p in e.pairs:
        fib = ctx.from_fiber(phi_c(ctx.alg, A))
        for xe, c in p.coeffs.items():
            out = out + TensorElement(
                ctx, {(xe, ctx._zx, fk): fc * c
                      for (x0, d0, fk), fc in fib.terms.items()})
    return out


class TensorOpElement:
    """x^a d_x^d tensored with localized operators on the fiber."""

    __slots__ = ("ctx", "dctx", "terms")
    __hash__ = None

    def __init__(self, ctx: TensorContext, dctx: DunklContext, terms: dict):
        self.ctx = ctx
        self.dctx = dctx
        self.terms = {k: v for k, v in terms.items()
                      if v and sum(k[0]) <= ctx.K}

    def __add__(self, other: "TensorOpElement"):
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out[k] + v if k in out else v
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
        return TensorOpElement(self.ctx, self.dctx, out)

    def __neg__(self):
        return TensorOpElement(self.ctx, self.dctx,
                               {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TensorOpElement"):
        import math as _math
        ctx = self.ctx
        out: dict = {}
        for (x1, d1), op1 in self.terms.items():
            for (x2, d2), op2 in other.terms.items():
                prod = op1 * op2
                if not prod:
                    continue
                for gamma in _le_multi(d1, x2):
                    f = _math.prod(_math.comb(d, g) for d, g in zip(d1, gamma)) \
                        * _math.prod(_math.perm(x, g) for x, g in zip(x2, gamma))
                    xe = tuple(a + b - g for a, b, g in zip(x1, x2, gamma))
                    if sum(xe) > ctx.K:
                        continue
                    de = tuple(a + b - g for a, b, g in zip(d1, d2, gamma))
                    scaled = prod.scale(ctx.alg.scalars.from_fraction(f))
                    key = (xe, de)
                    out[key] = out[key] + scaled if key in out else scaled
        return TensorOpElement(ctx, self.dctx,
                               {k: v for k, v in out.items() if v})

    def commutator(self, other):
        return self * other - other * self

    def __eq__(self, other):
        if not isinstance(other, TensorOpElement):
            return NotImplemented
        zero = self.dctx.zero_op()
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, zero) == other.terms.get(k, zero)
                   for k in keys)

    def __bool__(self):
        return any(self.terms.values())

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (xe, de), op in sorted(self.terms.items()):
            xs = "*".join(f"x{i+1}" + (f"^{k}" if k > 1 else "")
                          for i, k in enumerate(xe) if k)
            ds = "*".join(f"dx{i+1}" + (f"^{k}" if k > 1 else "")
                          for i, k in enumerate(de) if k)
            mono = "*".join(b for b in (xs, ds) if b) or "1"
            bits.append(f"{mono} (x) [{op}]")
        return " + ".join(bits)


def sigma_map(ctx: TensorContext, dctx: DunklContext,
              e: SemidirectElement) -> TensorOpElement:
    """v + sum A(x)p  ->  v(x)id - sum p(x)sum_ij A_ij y_j d/dy_i."""
    sc = ctx.alg.scalars
    terms: dict = {}

    def add(key, op):
        terms[key] = terms[key] + op if key in terms else op

    ident = dctx.one_op()
    for r, comp in enumerate(e.v.components):
        dr = tuple(int(k == r) for k in range(ctx.m))
        for xe, c in comp.coeffs.items():
            add((xe, dr), ident.scale(c))
    n = ctx.alg.dim
    for A, p in e.pairs:
        euler = dctx.zero_op()
        for i in range(n):
            for j in range(n):
                if A[i][j]:
                    zexp = tuple(int(k == j) for k in range(n))
                    op = dctx.mult_op(dctx.coeff({zexp: sc.one()})) \
                        * dctx.deriv_op(i)
                    euler = euler + op.scale(sc.from_cyc(A[i][j]))
        zx = (0,) * ctx.m
        for xe, c in p.coeffs.items():
            add((xe, zx), (-euler).scale(c))
    return TensorOpElement(ctx, dctx, {k: v for k, v in terms.items() if v})


def dunkl_extend(ctx: TensorContext, dctx: DunklContext,
                 e: TensorElement) -> TensorOpElement:
    """id (x) Theta-hat: push each fiber PBW monomial through the Dunkl
    embedding, keeping the x-part untouched."""
    terms: dict = {}
    for (xe, de, fk), c in e.terms.items():
        op = dctx.theta(ctx.alg.monomial(*fk)).scale(c)
        key = (xe, de)
        terms[key] = terms[key] + op if key in terms else op
    return TensorOpElement(ctx, dctx, {k: v for k, v in terms.items() if v})


def verify_factorization(ctx: TensorContext, dctx: DunklContext,
                         e: SemidirectElement) -> dict:
    """Check sigma(e) == (id (x) Theta-hat)(Phi_c(e)); returns a report with
    one residual entry per x-monomial slot."""
    lhs = dunkl_extend(ctx, dctx, Phi_c(ctx, e))
    rhs = sigma_map(ctx, dctx, e)
    diff = lhs - rhs
    residuals = [{"x_exp": list(xe), "dx_exp": list(de), "residual": str(op)}
                 for (xe, de), op in sorted(diff.terms.items()) if op]
    return {"ok": not residuals, "residuals": residuals}
