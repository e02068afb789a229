"""Gluing check at a codimension-one slice.

The model: C^n = C^(n-1) x C^1 with coordinates x (along the stratum) and y
(transversal), and the order-two group H acting by y -> -y.  An element of
the Cherednik algebra of (C^n, H) can be pushed to operators in two ways:

  side 0 - the full Dunkl embedding on C^n, whose coefficients sit in the
           localization at the hyperplane y = 0; the denominators are
           monomial, so the result is an exact Laurent expansion;
  side 1 - tensor-split form: the x-part is expanded as polynomial
           coefficient differential operators directly, while the fiber part
           goes through the rank-one Dunkl embedding on C^1.

Both land in the same space of mixed series operators; check_gluing verifies
(i) poles are bounded by the u-filtration degree of each source term, and
(ii) the two sides agree at the requested truncation.  A nontrivial jet
chart in x may be applied on both sides - at a different stage of each
pipeline - to make the comparison chart-independent.
"""

from __future__ import annotations

import itertools

from .cherednik import CherednikContext, CherednikElement
from .dunkl import DunklContext, LocalizedOp
from .groups import Group, cyclic_group, diagonal_group
from .jets import Chart, JetAutomorphism, JetDiffOp, JetSpace, lift_auto, \
    lift_op, taylor_of_operator, truncate_op
from .scalars import Scalar, ScalarContext


class SliceModel:
    """C^(n-1) x C^1 with H = Z/2 flipping the transversal coordinate."""

    def __init__(self, n: int = 2):
        if n < 2:
            raise ValueError("slice model needs at least one stratum direction")
        self.n = n
        diag = ["1"] * (n - 1) + ["-1"]
        self.group = diagonal_group([diag], 2)
        self.alg = CherednikContext(self.group)
        self.scalars = self.alg.scalars
        self.dunkl = DunklContext(self.alg)
        # rank-one fiber; the scalar context (order 2, one class) is shared
        self.fiber_group = cyclic_group(2)
        self.fiber_alg = CherednikContext(self.fiber_group)
        self.fiber_dunkl = DunklContext(self.fiber_alg)
        if self.fiber_alg.scalars is not self.scalars:
            raise AssertionError("fiber and slice scalar contexts must agree")
        # match group elements with the fiber group through the y-entry
        self._fiber_of_g = {}
        for gi, M in enumerate(self.group.elements):
            entry = M[n - 1][n - 1]
            for fi, F in enumerate(self.fiber_group.elements):
                if F[0][0] == entry:
                    self._fiber_of_g[gi] = fi

    def parse(self, text: str) -> CherednikElement:
        return self.alg.parse(text)


class MixedSeriesOp:
    """sum coeff * x^a y^k g dx^b dy^c with k possibly negative (Laurent)."""

    __slots__ = ("model", "kx", "ky", "terms")
    __hash__ = None

    def __init__(self, model: SliceModel, kx: int, ky: int, terms: dict):
        # keys: (xexp tuple, yexp int, g int, dxexp tuple, dyexp int)
        self.model = model
        self.kx = kx
        self.ky = ky
        self.terms = {k: v for k, v in terms.items()
                      if v and sum(k[0]) <= kx and k[1] <= ky}

    def __add__(self, other: "MixedSeriesOp"):
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out[k] + v if k in out else v
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
        return MixedSeriesOp(self.model, self.kx, self.ky, out)

    def __sub__(self, other):
        neg = MixedSeriesOp(self.model, other.kx, other.ky,
                            {k: -v for k, v in other.terms.items()})
        return self + neg

    def __eq__(self, other):
        if not isinstance(other, MixedSeriesOp):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __bool__(self):
        return bool(self.terms)

    def min_y_exponent(self) -> int:
        return min((k[1] for k in self.terms), default=0)

    def max_d_order(self) -> int:
        return max((sum(k[3]) + k[4] for k in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (xe, ye, g, de, dy), c in sorted(self.terms.items()):
            parts = ["*".join(f"x{i+1}" + (f"^{k}" if k > 1 else "")
                              for i, k in enumerate(xe) if k)]
            if ye:
                parts.append(f"y^{ye}" if ye != 1 else "y")
            if g:
                parts.append(f"g{g}")
            parts.append("*".join(f"dx{i+1}" + (f"^{k}" if k > 1 else "")
                                  for i, k in enumerate(de) if k))
            if dy:
                parts.append(f"dy^{dy}" if dy > 1 else "dy")
            mono = "*".join(p for p in parts if p) or "1"
            bits.append(f"({c})*{mono}")
        return " + ".join(bits)


def _localized_to_mixed(model: SliceModel, op: LocalizedOp,
                        kx: int, ky: int) -> MixedSeriesOp:
    """Exact Laurent expansion: denominators here are powers of y."""
    n = model.n
    terms: dict = {}
    for (g, beta), co in op.terms.items():
        red = co.reduced()
        pole = sum(red.den)
        for exp, c in red.num.items():
            key = (exp[:n - 1], exp[n - 1] - pole, g, beta[:n - 1], beta[n - 1])
            nv = terms[key] + c if key in terms else c
            if nv:
                terms[key] = nv
            elif key in terms:
                del terms[key]
    return MixedSeriesOp(model, kx, ky, terms)


def side0_laurent(model: SliceModel, D: CherednikElement, kx: int, ky: int,
                  chart: JetAutomorphism | None = None) -> MixedSeriesOp:
    """Full Dunkl embedding on C^n, expanded as a Laurent mixed series."""
    mixed = _localized_to_mixed(model, model.dunkl.theta(D), kx, ky)
    if chart is not None:
        mixed = apply_x_chart(mixed, chart)
    return mixed


def side1_formal(model: SliceModel, D: CherednikElement, kx: int, ky: int,
                 chart: JetAutomorphism | None = None) -> MixedSeriesOp:
    """Tensor-split route: polynomial x-part times rank-one Dunkl fiber."""
    n = model.n
    sc = model.scalars
    t = model.alg.t
    out = MixedSeriesOp(model, kx, ky, {})
    for (a, g, b), c in D.terms.items():
        ax, ay = a[:n - 1], a[n - 1]
        bx, by = b[:n - 1], b[n - 1]
        # the x-part of the Dunkl embedding is exact: u_i -> t d/dx_i
        xop = {(ax, bx): c * t ** sum(bx)}
        if chart is not None:
            xop = _conjugate_x_terms(model, xop, chart, kx)
        fib = model.fiber_dunkl.theta(model.fiber_alg.monomial(
            (ay,), model._fiber_of_g[g], (by,)))
        fib_terms = []
        for (fg, fbeta), fco in fib.terms.items():
            red = fco.reduced()
            pole = sum(red.den)
            for exp, fc in red.num.items():
                fib_terms.append((exp[0] - pole, fg, fbeta[0], fc))
        terms: dict = {}
        for (xe, de), xc in xop.items():
            for ye, fg, dy, fc in fib_terms:
                key = (xe, ye, fg, de, dy)
                nv = terms[key] + xc * fc if key in terms else xc * fc
                if nv:
                    terms[key] = nv
                elif key in terms:
                    del terms[key]
        out = out + MixedSeriesOp(model, kx, ky, terms)
    return out


def _conjugate_x_terms(model: SliceModel, xop: dict, chart: JetAutomorphism,
                       kx: int) -> dict:
    space = JetSpace(model.n - 1, kx, model.scalars.one())
    op = JetDiffOp(space, {k: v for k, v in xop.items()})
    zero_bp = tuple(model.scalars.zero() for _ in range(model.n - 1))
    conj = taylor_of_operator(op, Chart(zero_bp, lift_auto(chart, space)))
    return dict(conj.terms)


def apply_x_chart(mixed: MixedSeriesOp, chart: JetAutomorphism) -> MixedSeriesOp:
    """Conjugate the x-part of every term by the jet chart."""
    model = mixed.model
    grouped: dict = {}
    for (xe, ye, g, de, dy), c in mixed.terms.items():
        grouped.setdefault((ye, g, dy), {})[(xe, de)] = c
    terms: dict = {}
    for (ye, g, dy), xop in grouped.items():
        for (xe, de), c in _conjugate_x_terms(model, xop, chart,
                                              mixed.kx).items():
            key = (xe, ye, g, de, dy)
            nv = terms[key] + c if key in terms else c
            if nv:
                terms[key] = nv
            elif key in terms:
                del terms[key]
    return MixedSeriesOp(model, mixed.kx, mixed.ky, terms)


def condition_i_report(model: SliceModel, D: CherednikElement) -> dict:
    """Pole bound per source term: the Dunkl image of a PBW term of
    u-degree d may have poles of order at most d."""
    entries = []
    ok = True
    for (a, g, b), c in sorted(D.terms.items()):
        op = model.dunkl.theta(model.alg.monomial(a, g, b, c))
        pole = op.max_pole_order()
        bound = sum(b)
        good = pole <= bound
        ok = ok and good
        entries.append({"term": str(model.alg.monomial(a, g, b)),
                        "pole_order": pole, "u_degree": bound, "ok": good})
    return {"ok": ok, "terms": entries}


def laurent_pole_check(mixed: MixedSeriesOp, bound: int) -> dict:
    """Mixed-level pole bound (used by the injected negative control)."""
    worst = -mixed.min_y_exponent()
    return {"ok": worst <= bound, "max_pole": worst, "bound": bound}


def check_gluing(model: SliceModel, D: CherednikElement, kx: int, ky: int,
                 chart: JetAutomorphism | None = None) -> dict:
    """Full gluing report at truncation (kx, ky)."""
    cond_i = condition_i_report(model, D)
    s0 = side0_laurent(model, D, kx, ky, chart)
    s1 = side1_formal(model, D, kx, ky, chart)
    diff = s0 - s1
    filtration_ok = s0.max_d_order() <= D.u_degree()
    return {
        "ok": cond_i["ok"] and not diff and filtration_ok,
        "condition_i": cond_i,
        "condition_ii": {"ok": not diff,
                         "residual": str(diff) if diff else "0"},
        "filtration_preserved": filtration_ok,
        "truncation": [kx, ky],
        "chart": "default" if chart is None else str(chart),
    }


def injected_pole_control(model: SliceModel, D: CherednikElement,
                          kx: int, ky: int) -> dict:
    """Negative control: a hand-injected 1/y^2 term must trip condition i."""
    s0 = side0_laurent(model, D, kx, ky)
    bound = max(D.u_degree(), 0)
    before = laurent_pole_check(s0, bound)
    zx = (0,) * (model.n - 1)
    bad_key = (zx, -2, 0, zx, 0)
    injected = MixedSeriesOp(model, kx, ky, dict(s0.terms))
    injected.terms[bad_key] = injected.terms.get(
        bad_key, model.scalars.zero()) + model.scalars.one()
    after = laurent_pole_check(injected, bound)
    return {"clean": before, "injected": after,
            "ok": before["ok"] and not after["ok"]}


def pbw_basis_keys(model: SliceModel, max_y: int, max_u: int) -> list:
    """PBW monomial keys with bounded y- and u-degree (uniqueness shadow)."""
    n = model.n
    keys = []
    for a in _bounded_exps(n, max_y):
        for g in range(model.group.size):
            for b in _bounded_exps(n, max_u):
                keys.append((a, g, b))
    return sorted(keys)


def _bounded_exps(n: int, bound: int):
    return sorted(e for e in itertools.product(range(bound + 1), repeat=n)
                  if sum(e) <= bound)


def uniqueness_shadow(model: SliceModel, max_y: int, max_u: int,
                      kx: int, ky: int) -> dict:
    """The Laurent expansion at truncation (kx, ky) separates all PBW
    monomials of bounded degree: the column family is linearly independent.

    Column reduction over the exact scalar field; returns the rank and the
    expected count.
    """
    keys = pbw_basis_keys(model, max_y, max_u)
    pivots: list = []   # (pivot key, reduced column dict)
    rank = 0
    for key in keys:
        col = dict(side0_laurent(
            model, model.alg.monomial(*key), kx, ky).terms)
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
            pk = min(col)
            pivots.append((pk, col))
            rank += 1
    return {"rank": rank, "expected": len(keys), "ok": rank == len(keys)}
