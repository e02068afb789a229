"""Truncated jet calculus: power-series arithmetic mod m^(K+1), formal
vector fields W_{m,K}, origin-fixing jet automorphisms, differential
operators with jet coefficients, the Taylor operator on chart-conjugated
operators, Maurer-Cartan values on polynomial paths, and the flat-section
coefficient recursion.

Coefficients are duck-typed: anything with field arithmetic works
(fractions.Fraction for plain checks, Scalar when a formal path parameter t
or deformation parameters are in play).  A JetSpace carries the shared
(nvars, order) data together with the coefficient 1 of the chosen field.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction


def multi_indices(m: int, max_total: int):
    """All exponent tuples of length m with total degree <= max_total."""
    for total in range(max_total + 1):
        for cut in itertools.combinations(range(total + m - 1), m - 1):
            out = []
            prev = -1
            for c in cut:
                out.append(c - prev - 1)
                prev = c
            out.append(total + m - 2 - prev)
            yield tuple(out)


class JetSpace:
    """Shared structure for jets in m variables truncated at order K."""

    def __init__(self, m: int, K: int, one=Fraction(1)):
        self.m = m
        self.K = K
        self.one = one
        self.zero = one - one

    def poly(self, coeffs: dict) -> "JetPoly":
        return JetPoly(self, {tuple(e): c for e, c in coeffs.items() if c})

    def const(self, c) -> "JetPoly":
        z = (0,) * self.m
        return JetPoly(self, {z: c * self.one} if c else {})

    def var(self, j: int) -> "JetPoly":
        e = tuple(int(k == j) for k in range(self.m))
        return JetPoly(self, {e: self.one})

    def identity_map(self) -> "JetAutomorphism":
        return JetAutomorphism(self, tuple(self.var(j) for j in range(self.m)))

    def vol_dim(self) -> int:
        """dim of the truncated function space O/m^(K+1)."""
        return math.comb(self.m + self.K, self.m)


class JetPoly:
    __slots__ = ("space", "coeffs")
    __hash__ = None

    def __init__(self, space: JetSpace, coeffs: dict):
        self.space = space
        self.coeffs = {e: c for e, c in coeffs.items() if sum(e) <= space.K and c}

    def __add__(self, other):
        if isinstance(other, JetPoly):
            out = dict(self.coeffs)
            for e, c in other.coeffs.items():
                nv = out[e] + c if e in out else c
                if nv:
                    out[e] = nv
                elif e in out:
                    del out[e]
            return JetPoly(self.space, out)
        return self + self.space.const(other)

    __radd__ = __add__

    def __neg__(self):
        return JetPoly(self.space, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-(other if isinstance(other, JetPoly)
                         else self.space.const(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, JetPoly):
            return JetPoly(self.space,
                           {e: c * other for e, c in self.coeffs.items()})
        K = self.space.K
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > K:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                nv = out[e] + c if e in out else c
                if nv:
                    out[e] = nv
                elif e in out:
                    del out[e]
        return JetPoly(self.space, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        acc = self.space.const(1)
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if isinstance(other, JetPoly):
            keys = set(self.coeffs) | set(other.coeffs)
            z = self.space.zero
            return all(self.coeffs.get(e, z) == other.coeffs.get(e, z)
                       for e in keys)
        return self == self.space.const(other)

    def __bool__(self):
        return bool(self.coeffs)

    def constant_term(self):
        return self.coeffs.get((0,) * self.space.m, self.space.zero)

    def deriv(self, j: int) -> "JetPoly":
        out = {}
        for e, c in self.coeffs.items():
            if e[j]:
                out[e[:j] + (e[j] - 1,) + e[j + 1:]] = c * e[j]
        return JetPoly(self.space, out)

    def substitute(self, args: tuple) -> "JetPoly":
        """Compose with the tuple of JetPolys args (one per variable)."""
        space = args[0].space if args else self.space
        out = space.const(0)
        # Horner would be nicer; plain expansion is fine at desk scale
        pows = [[space.const(1)] for _ in range(self.space.m)]
        maxe = [0] * self.space.m
        for e in self.coeffs:
            for j, k in enumerate(e):
                maxe[j] = max(maxe[j], k)
        for j in range(self.space.m):
            for _ in range(maxe[j]):
                pows[j].append(pows[j][-1] * args[j])
        for e, c in self.coeffs.items():
            term = space.const(1)
            for j, k in enumerate(e):
                if k:
                    term = term * pows[j][k]
            out = out + term * c
        return out

    def inverse(self) -> "JetPoly":
        """Multiplicative inverse of a unit (nonzero constant term)."""
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("jet with zero constant term has no inverse")
        inv0 = self.space.one / c0
        rest = self - self.space.const(c0)
        # geometric series in -rest/c0
        acc = self.space.const(0)
        power = self.space.const(1)
        for _ in range(self.space.K + 1):
            acc = acc + power
            power = power * rest * (-inv0)
        return acc * inv0

    def __str__(self):
        if not self.coeffs:
            return "0"
        def mono(e):
            return "*".join(f"x{i+1}" + (f"^{k}" if k > 1 else "")
                            for i, k in enumerate(e) if k) or "1"
        return " + ".join(f"({c})*{mono(e)}" for e, c in
                          sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0])))

    def __repr__(self):
        return f"<JetPoly {self}>"


def jet_matrix_inverse(rows: list, space: JetSpace) -> list:
    """Inverse of a matrix of JetPolys (unit diagonal after pivoting)."""
    m = len(rows)
    aug = [[rows[i][j] for j in range(m)]
           + [space.const(int(i == j)) for j in range(m)] for i in range(m)]
    for col in range(m):
        piv = next((r for r in range(col, m) if aug[r][col].constant_term()), None)
        if piv is None:
            raise ValueError("jet matrix has singular linear part")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(m):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[m:] for row in aug]


class FormalVectorFieldJet:
    """Element of W_{m,K}: sum components[j] * d/dx_j."""

    __slots__ = ("space", "components")
    __hash__ = None

    def __init__(self, space: JetSpace, components):
        comps = tuple(components)
        if len(comps) != space.m:
            raise ValueError("component count mismatch")
        self.space = space
        self.components = comps

    def __add__(self, other):
        return FormalVectorFieldJet(
            self.space, (a + b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return FormalVectorFieldJet(self.space, (-a for a in self.components))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return FormalVectorFieldJet(self.space, (a * c for a in self.components))

    def __eq__(self, other):
        return isinstance(other, FormalVectorFieldJet) \
            and all(a == b for a, b in zip(self.components, other.components))

    def __bool__(self):
        return any(self.components)

    def apply(self, p: JetPoly) -> JetPoly:
        out = self.space.const(0)
        for j, v in enumerate(self.components):
            out = out + v * p.deriv(j)
        return out

    def bracket(self, other: "FormalVectorFieldJet") -> "FormalVectorFieldJet":
        """[v, w] = sum_j (sum_i v_i dw_j/dx_i - w_i dv_j/dx_i) d/dx_j."""
        comps = []
        for j in range(self.space.m):
            acc = self.space.const(0)
            for i in range(self.space.m):
                acc = acc + self.components[i] * other.components[j].deriv(i) \
                    - other.components[i] * self.components[j].deriv(i)
            comps.append(acc)
        return FormalVectorFieldJet(self.space, comps)

    def __str__(self):
        bits = [f"({c})*d{j+1}" for j, c in enumerate(self.components) if c]
        return " + ".join(bits) if bits else "0"


def w_basis(space: JetSpace) -> list:
    """Monomial basis of W_{m,K}; has size m * binom(m+K, m)."""
    out = []
    for j in range(space.m):
        for e in multi_indices(space.m, space.K):
            out.append(FormalVectorFieldJet(
                space, tuple(JetPoly(space, {e: space.one}) if i == j
                             else space.const(0) for i in range(space.m))))
    return out


class JetAutomorphism:
    """Origin-fixing coordinate change mod m^(K+1), invertible linear part."""

    __slots__ = ("space", "components")
    __hash__ = None

    def __init__(self, space: JetSpace, components):
        comps = tuple(components)
        if any(c.constant_term() for c in comps):
            raise ValueError("jet automorphism must fix the origin")
        self.space = space
        self.components = comps

    def linear_part(self):
        m = self.space.m
        return [[self.components[i].coeffs.get(
            tuple(int(k == j) for k in range(m)), self.space.zero)
            for j in range(m)] for i in range(m)]

    def compose(self, other: "JetAutomorphism") -> "JetAutomorphism":
        """self after other: x -> self(other(x))."""
        return JetAutomorphism(
            self.space, tuple(c.substitute(other.components)
                              for c in self.components))

    def invert(self) -> "JetAutomorphism":
        space = self.space
        lin = self.linear_part()
        lin_jets = [[space.const(0) + v for v in row] for row in lin]
        linv = jet_matrix_inverse(lin_jets, space)
        # start from the inverse linear map, refine by Newton-style correction
        g = JetAutomorphism(space, tuple(
            sum((linv[i][j] * space.var(j) for j in range(1, space.m)),
                linv[i][0] * space.var(0)) for i in range(space.m)))
        ident = space.identity_map()
        for _ in range(space.K):
            err = tuple(c.substitute(g.components) - ident.components[i]
                        for i, c in enumerate(self.components))
            corr = tuple(
                sum((linv[i][j].constant_term() * err[j]
                     for j in range(1, space.m)),
                    linv[i][0].constant_term() * err[0])
                for i in range(space.m))
            g = JetAutomorphism(space, tuple(
                g.components[i] - corr[i] for i in range(space.m)))
        return g

    def jacobian(self) -> list:
        return [[c.deriv(j) for j in range(self.space.m)]
                for c in self.components]

    def __eq__(self, other):
        return isinstance(other, JetAutomorphism) \
            and all(a == b for a, b in zip(self.components, other.components))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


class JetDiffOp:
    """Differential operator sum coeff(x) * d^alpha with jet coefficients."""

    __slots__ = ("space", "terms")
    __hash__ = None

    def __init__(self, space: JetSpace, terms: dict):
        # terms: (xexp, dexp) -> coefficient
        self.space = space
        self.terms = {k: v for k, v in terms.items()
                      if v and sum(k[0]) <= space.K}

    @staticmethod
    def from_poly(p: JetPoly) -> "JetDiffOp":
        z = (0,) * p.space.m
        return JetDiffOp(p.space, {(e, z): c for e, c in p.coeffs.items()})

    @staticmethod
    def deriv_op(space: JetSpace, j: int) -> "JetDiffOp":
        z = (0,) * space.m
        e = tuple(int(k == j) for k in range(space.m))
        return JetDiffOp(space, {(z, e): space.one})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            nv = out[k] + v if k in out else v
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
        return JetDiffOp(self.space, out)

    def __neg__(self):
        return JetDiffOp(self.space, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return JetDiffOp(self.space, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "JetDiffOp"):
        """Operator composition with x-truncation (Weyl normal ordering)."""
        space = self.space
        out: dict = {}
        for (x1, d1), c1 in self.terms.items():
            for (x2, d2), c2 in other.terms.items():
                for gamma in _le_multi(d1, x2):
                    f = math.prod(math.comb(d, g) for d, g in zip(d1, gamma)) \
                        * math.prod(math.perm(x, g) for x, g in zip(x2, gamma))
                    xe = tuple(a + b - g for a, b, g in zip(x1, x2, gamma))
                    if sum(xe) > space.K:
                        continue
                    de = tuple(a + b - g for a, b, g in zip(d1, d2, gamma))
                    c = c1 * c2 * f
                    key = (xe, de)
                    nv = out[key] + c if key in out else c
                    if nv:
                        out[key] = nv
                    elif key in out:
                        del out[key]
        return JetDiffOp(space, out)

    def commutator(self, other):
        return self * other - other * self

    def __pow__(self, n: int):
        z = (0,) * self.space.m
        acc = JetDiffOp(self.space, {(z, z): self.space.one})
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if not isinstance(other, JetDiffOp):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        z = self.space.zero
        return all(self.terms.get(k, z) == other.terms.get(k, z) for k in keys)

    def __bool__(self):
        return bool(self.terms)

    def d_order(self) -> int:
        return max((sum(d) for (_, d) in self.terms), default=0)

    def map_coeffs(self, fn) -> "JetDiffOp":
        return JetDiffOp(self.space, {k: fn(v) for k, v in self.terms.items()})

    def coefficient(self, xexp, dexp):
        return self.terms.get((tuple(xexp), tuple(dexp)), self.space.zero)

    def __str__(self):
        if not self.terms:
            return "0"
        def part(xe, de):
            bits = ["*".join(f"x{i+1}" + (f"^{k}" if k > 1 else "")
                             for i, k in enumerate(xe) if k)]
            bits += [f"d{i+1}" + (f"^{k}" if k > 1 else "")
                     for i, k in enumerate(de) if k]
            s = "*".join(b for b in bits if b)
            return s or "1"
        return " + ".join(f"({c})*{part(*k)}" for k, c in
                          sorted(self.terms.items(),
                                 key=lambda kv: (sum(kv[0][1]), kv[0][1], kv[0][0])))


def _le_multi(a: tuple, b: tuple):
    """Multi-indices gamma with gamma <= min(a, b) componentwise."""
    ranges = [range(min(x, y) + 1) for x, y in zip(a, b)]
    return itertools.product(*ranges)


# ---------------------------------------------------------------------------
# charts and the Taylor operator
# ---------------------------------------------------------------------------

@dataclass
class Chart:
    """A local chart jet: x -> basepoint + auto(x)."""
    basepoint: tuple            # coefficients of the target coordinates
    auto: JetAutomorphism

    @property
    def space(self) -> JetSpace:
        return self.auto.space


def lift_poly(p: JetPoly, space: JetSpace) -> JetPoly:
    return JetPoly(space, p.coeffs)


def lift_auto(a: JetAutomorphism, space: JetSpace) -> JetAutomorphism:
    return JetAutomorphism(space, tuple(lift_poly(c, space) for c in a.components))


def lift_op(D: JetDiffOp, space: JetSpace) -> JetDiffOp:
    return JetDiffOp(space, D.terms)


def truncate_op(D: JetDiffOp, K: int) -> JetDiffOp:
    return JetDiffOp(D.space, {k: v for k, v in D.terms.items()
                               if sum(k[0]) <= K})


def taylor_of_operator(D: JetDiffOp, chart: Chart, guard=None) -> JetDiffOp:
    """Taylor expansion at 0 of the chart-conjugated operator.

    D lives in the ambient coordinates w; the result acts on jets in the
    chart coordinates x with w = basepoint + auto(x).  Composition with the
    conjugated derivations differentiates coefficients, which pulls jet data
    down in degree, so the work happens at guard extra orders of precision
    (default: the d-order of D) before truncating back.
    """
    space0 = chart.space
    if guard is None:
        guard = D.d_order()
    # the working precision must cover every x-degree of D: translation by
    # the basepoint folds high coefficient degrees down to all output orders
    xdeg = max((sum(x) for (x, _) in D.terms), default=0)
    work_K = max(space0.K + guard, xdeg)
    if work_K > space0.K:
        space = JetSpace(space0.m, work_K, space0.one)
        lifted = taylor_of_operator(
            lift_op(D, space), Chart(chart.basepoint, lift_auto(chart.auto, space)),
            guard=0)
        return JetDiffOp(space0, truncate_op(lifted, space0.K).terms)
    space = space0
    m = space.m
    psi = [space.const(chart.basepoint[i] * space.one) + chart.auto.components[i]
           for i in range(m)]
    jac = chart.auto.jacobian()
    jinv = jet_matrix_inverse(jac, space)
    # conj(d/dw_k) = sum_j (Jac^-1)_jk(x) d/dx_j
    conj_d = []
    for k in range(m):
        acc = JetDiffOp(space, {})
        for j in range(m):
            acc = acc + JetDiffOp.from_poly(jinv[j][k]) \
                * JetDiffOp.deriv_op(space, j)
        conj_d.append(acc)
    out = JetDiffOp(space, {})
    for (xe, de), c in D.terms.items():
        pulled = space.const(1)
        for i, k in enumerate(xe):
            for _ in range(k):
                pulled = pulled * psi[i]
        term = JetDiffOp.from_poly(pulled * c)
        for k, dk in enumerate(de):
            for _ in range(dk):
                term = term * conj_d[k]
        out = out + term
    return out


def taylor_multiplicativity_check(D1: JetDiffOp, D2: JetDiffOp,
                                  chart: Chart) -> JetDiffOp:
    """Residual T(D1 D2) - T(D1) T(D2) mod m^(K+1); zero iff multiplicative.

    The product of the two truncated images is only trustworthy up to the
    degree loss from differentiating T(D2)'s coefficients, so both factors
    are computed with that much extra precision first.
    """
    space0 = chart.space
    ord1 = D1.d_order()
    xdeg = max((sum(x) for (x, _) in D1.terms), default=0) \
        + max((sum(x) for (x, _) in D2.terms), default=0)
    # factors need ord1 extra orders so their product is exact down to K
    spaceF = JetSpace(space0.m, space0.K + ord1, space0.one)
    chartF = Chart(chart.basepoint, lift_auto(chart.auto, spaceF))
    t1 = taylor_of_operator(lift_op(D1, spaceF), chartF)
    t2 = taylor_of_operator(lift_op(D2, spaceF), chartF)
    # the product must be formed untruncated: translation by the basepoint
    # folds its high x-degrees down to every output order
    spaceP = JetSpace(space0.m, max(xdeg, space0.K), space0.one)
    prod = lift_op(D1, spaceP) * lift_op(D2, spaceP)
    t12 = taylor_of_operator(prod, chart)
    diff = truncate_op(t1 * t2, space0.K).terms
    out = dict(lift_op(t12, space0).terms)
    for k, v in diff.items():
        nv = out[k] - v if k in out else -v
        if nv:
            out[k] = nv
        elif k in out:
            del out[k]
    return JetDiffOp(space0, out)


# ---------------------------------------------------------------------------
# paths, Maurer-Cartan values, flatness and the coefficient recursion
# ---------------------------------------------------------------------------
#
# A path of charts is polynomial in a formal parameter t carried inside the
# coefficient field (a Scalar context whose first variable is t).  Formal
# d/dt and evaluation at t=0 keep everything exact.

def maurer_cartan_value(path_chart: Chart, t_index: int = 0) -> FormalVectorFieldJet:
    """omega(X) = Taylor of -(d phi)^{-1} (d phi_t / dt) at t = 0."""
    space = path_chart.space
    m = space.m
    # coefficients are Scalars carrying the path parameter; differentiate them
    def ddt(p: JetPoly) -> JetPoly:
        return JetPoly(space, {e: c.derivative(t_index)
                               for e, c in p.coeffs.items()})
    def at0(p: JetPoly) -> JetPoly:
        return JetPoly(space, {e: c.substitute(t_index, 0)
                               for e, c in p.coeffs.items()})
    vel = [ddt(path_chart.auto.components[i])
           + space.const(space.one * _basepoint_dot(path_chart, i, t_index))
           for i in range(m)]
    vel0 = [at0(v) for v in vel]
    auto0 = JetAutomorphism(space, tuple(
        at0(c) for c in path_chart.auto.components))
    jinv = jet_matrix_inverse(auto0.jacobian(), space)
    comps = []
    for i in range(m):
        acc = space.const(0)
        for k in range(m):
            acc = acc + jinv[i][k] * vel0[k]
        comps.append(-acc)
    return FormalVectorFieldJet(space, comps)


def _basepoint_dot(chart: Chart, i: int, t_index: int):
    b = chart.basepoint[i]
    if hasattr(b, "derivative"):
        d = b.derivative(t_index)
        return d.substitute(t_index, 0)
    return b - b  # constant rational basepoint


def section_along_path(D: JetDiffOp, path_chart: Chart, t_index: int = 0):
    """(s at t=0, formal d/dt s at t=0) for s = taylor_of_operator along the path."""
    st = taylor_of_operator(D, path_chart)
    s0 = st.map_coeffs(lambda c: c.substitute(t_index, 0))
    ds = st.map_coeffs(lambda c: c.derivative(t_index)) \
           .map_coeffs(lambda c: c.substitute(t_index, 0))
    return s0, ds


def vector_field_as_op(v: FormalVectorFieldJet) -> JetDiffOp:
    acc = JetDiffOp(v.space, {})
    for j, c in enumerate(v.components):
        acc = acc + JetDiffOp.from_poly(c) * JetDiffOp.deriv_op(v.space, j)
    return acc


def flatness_residual(D: JetDiffOp, path_chart: Chart,
                      t_index: int = 0) -> JetDiffOp:
    """ds(X) + [omega(X), s] for the polynomial path; zero iff flat.

    Computed with extra jet precision so the commutator's coefficient
    derivatives stay exact down to the reported order.
    """
    space0 = path_chart.space
    space = JetSpace(space0.m, space0.K + D.d_order() + 1, space0.one)
    chart = Chart(path_chart.basepoint, lift_auto(path_chart.auto, space))
    s0, ds = section_along_path(lift_op(D, space), chart, t_index)
    omega = maurer_cartan_value(chart, t_index)
    res = ds + vector_field_as_op(omega).commutator(s0)
    return JetDiffOp(space0, truncate_op(res, space0.K).terms)


@dataclass
class ConnectionSample:
    """One frame direction: omega(X_r) plus the section derivative along it."""
    xi: FormalVectorFieldJet      # omega(X_r)
    chart_derivative: JetDiffOp   # d/dt s([phi_t]) at t=0 for this direction


def auto_frames(D: JetDiffOp, chart: Chart, scalars,
                t_index: int = 0) -> list:
    """Frames from ambient translation flows phi_t = chart + t e_r.

    Needs Scalar coefficients (the path parameter is the scalar variable
    t_index); returns one ConnectionSample per coordinate direction.
    """
    space = chart.space
    t = scalars._var(t_index)
    frames = []
    for r in range(space.m):
        bp = tuple(b + (t if i == r else 0) for i, b in enumerate(chart.basepoint))
        path = Chart(bp, chart.auto)
        _, ds = section_along_path(D, path, t_index)
        frames.append(ConnectionSample(maurer_cartan_value(path, t_index), ds))
    return frames


def reconstruct_coefficients(seeds: dict, frames: list, space: JetSpace,
                             alphas: list) -> dict:
    """Rebuild all f_{alpha,beta}, |beta| <= K, from the |beta| = 0 seeds.

    seeds: dict alpha -> coefficient (the f_{alpha,0} family);
    frames: ConnectionSamples whose (xi_0^{rj}) matrix is invertible;
    alphas: the d-exponents that may occur.

    Level by level in |beta|, the flatness identity
        Df_{alpha,beta} + [omega, s]_{alpha,beta} = 0
    pins the next-level coefficients through its xi_0-part
        sum_j xi_0^{rj} (beta_j + 1) f_{alpha, beta+e_j};
    everything else only involves known levels, so each (alpha, beta) gives
    an m x m solve (the Cramer step of the displayed recursion).
    """
    m, K = space.m, space.K
    z = (0,) * m
    coeffs = {(a, z): seeds.get(a, space.zero) for a in alphas}
    xi0 = [[fr.xi.components[j].constant_term() for j in range(m)]
           for fr in frames]
    for level in range(K):
        partial = JetDiffOp(space, {(b, a): c for (a, b), c in coeffs.items()
                                    if sum(b) <= level and c})
        rhs_ops = [(-fr.chart_derivative)
                   - vector_field_as_op(fr.xi).commutator(partial)
                   for fr in frames]
        for beta in multi_indices(m, level):
            if sum(beta) != level:
                continue
            for alpha in alphas:
                rows = [[xi0[r][j] * (beta[j] + 1) for j in range(m)]
                        for r in range(m)]
                rhs = [rhs_ops[r].coefficient(beta, alpha) for r in range(m)]
                sol = _field_solve(rows, rhs, space)
                for j in range(m):
                    bj = tuple(x + int(k == j) for k, x in enumerate(beta))
                    coeffs[(alpha, bj)] = sol[j]
    return coeffs


def _field_solve(rows, rhs, space: JetSpace):
    m = len(rows)
    aug = [list(rows[i]) + [rhs[i]] for i in range(m)]
    for col in range(m):
        piv = next((r for r in range(col, m) if aug[r][col]), None)
        if piv is None:
            raise ValueError("singular frame matrix in reconstruction")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = space.one / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(m):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][m] for i in range(m)]


# ---------------------------------------------------------------------------
# the twisted semidirect bracket W ⋉ g⊗O
# ---------------------------------------------------------------------------

class SemidirectElement:
    """v + sum_i A_i (x) p_i with v a vector-field jet, A_i matrices over
    CycNum, p_i jets on the same space."""

    __slots__ = ("space", "v", "pairs")
    __hash__ = None

    def __init__(self, space: JetSpace, v: FormalVectorFieldJet | None,
                 pairs: list):
        self.space = space
        self.v = v if v is not None else FormalVectorFieldJet(
            space, tuple(space.const(0) for _ in range(space.m)))
        self.pairs = [(A, p) for A, p in pairs if p]

    def bracket(self, other: "SemidirectElement") -> "SemidirectElement":
        """[v+g1(x)p1, w+g2(x)p2] =
        [v,w] + [g1,g2](x)p1p2 + g2(x)v(p2) - g1(x)w(p1)."""
        v, w = self.v, other.v
        pairs = []
        for A, p in self.pairs:
            for B, q in other.pairs:
                pairs.append((_mat_comm(A, B), p * q))
        for B, q in other.pairs:
            pairs.append((B, v.apply(q)))
        for A, p in self.pairs:
            pairs.append((A, -(w.apply(p))))
        return SemidirectElement(self.space, v.bracket(w), pairs)

    def __add__(self, other):
        return SemidirectElement(self.space, self.v + other.v,
                                 self.pairs + other.pairs)

    def __neg__(self):
        return SemidirectElement(self.space, -self.v,
                                 [(A, -p) for A, p in self.pairs])

    def __sub__(self, other):
        return self + (-other)


def _mat_comm(A, B):
    n = len(A)
    def entry(i, j):
        return sum((A[i][k] * B[k][j] - B[i][k] * A[k][j] for k in range(1, n)),
                   A[i][0] * B[0][j] - B[i][0] * A[0][j])
    return tuple(tuple(entry(i, j) for j in range(n)) for i in range(n))
