"""Exact scalar arithmetic in Q(zeta_N)(t, c_1, ..., c_k).

Everything is built on ``fractions.Fraction``: cyclotomic numbers are vectors
over the power basis of Q(zeta_N) reduced modulo the N-th cyclotomic
polynomial, and parameter scalars are quotients of sparse multivariate
polynomials over that field.  Equality is decided by cross multiplication, so
it stays exact even when a quotient is not in lowest terms.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable


_FR0 = Fraction(0)
_FR1 = Fraction(1)


# ---------------------------------------------------------------------------
# dense univariate helpers over Fraction (only used for cyclotomic setup)
# ---------------------------------------------------------------------------

def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and _poly_trim(a):
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, bi in enumerate(b):
            a[i + k] -= f * bi
        _poly_trim(a)
    return _poly_trim(q), a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not r
            num = q
    return tuple(num)


@lru_cache(maxsize=None)
def _power_reduction_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """z^k for k in [0, 2d-2] written on the power basis, d = deg Phi_n."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    rows: list[tuple[Fraction, ...]] = []
    cur = [Fraction(1)] + [Fraction(0)] * (d - 1)
    for _ in range(2 * d - 1):
        rows.append(tuple(cur))
        # multiply by z, reduce the overflow via z^d = -(phi[0] + ... ) / phi[d]
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(d):
                cur[i] -= top * phi[i]
    return tuple(rows)


class CycNum:
    """An element of Q(zeta_order) on the power basis 1, z, ..., z^(d-1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Fraction]):
        self.order = order
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        d = len(cyclotomic_polynomial(order)) - 1
        if len(self.coeffs) != d:
            raise ValueError(f"need {d} coefficients for order {order}")

    # -- constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> "CycNum":
        self = object.__new__(cls)
        self.order = order
        self.coeffs = coeffs
        return self

    @staticmethod
    def from_fraction(order: int, q) -> "CycNum":
        d = len(cyclotomic_polynomial(order)) - 1
        return CycNum._raw(order, (Fraction(q),) + (_FR0,) * (d - 1))

    @staticmethod
    def root(order: int, power: int = 1) -> "CycNum":
        """zeta_order ** power."""
        d = len(cyclotomic_polynomial(order)) - 1
        power %= order
        acc = CycNum.from_fraction(order, 1)
        z = CycNum(order, [Fraction(i == 1) for i in range(d)]) if d > 1 else (
            CycNum(order, [-Fraction(cyclotomic_polynomial(order)[0])]))
        for _ in range(power):
            acc = acc * z
        return acc

    # -- ring operations ----------------------------------------------------
    def _chk(self, other: "CycNum"):
        if self.order != other.order:
            raise ValueError("cyclotomic order mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_fraction(self.order, other)
        self._chk(other)
        return CycNum._raw(self.order,
                           tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycNum)
                       else CycNum.from_fraction(self.order, -Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum._raw(self.order, tuple(a * other for a in self.coeffs))
        self._chk(other)
        d = len(self.coeffs)
        if d == 1:
            return CycNum._raw(self.order, (self.coeffs[0] * other.coeffs[0],))
        table = _power_reduction_table(self.order)
        out = [Fraction(0)] * d
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                row = table[i + j]
                ab = a * b
                for m in range(d):
                    if row[m]:
                        out[m] += ab * row[m]
        return CycNum._raw(self.order, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Extended Euclid against Phi_order in Q[x]."""
        if not self:
            raise ZeroDivisionError("cyclotomic zero has no inverse")
        r0 = list(cyclotomic_polynomial(self.order))
        r1 = _poly_trim(list(self.coeffs))
        s0: list[Fraction] = []
        s1 = [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_trim([
                (s0[i] if i < len(s0) else Fraction(0))
                - sum((q[j] * s1[i - j] for j in range(len(q)) if 0 <= i - j < len(s1)),
                      Fraction(0))
                for i in range(max(len(s0), len(q) + len(s1) - 1))
            ])
        # r0 is the gcd, a nonzero constant
        c = r0[0]
        d = len(self.coeffs)
        inv = [v / c for v in s0] + [Fraction(0)] * d
        # reduce mod Phi (degree may still exceed d - 1)
        _, rem = _poly_divmod(_poly_trim(inv), list(cyclotomic_polynomial(self.order)))
        rem = rem + [Fraction(0)] * d
        return CycNum(self.order, rem[:d])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.order, (a / other for a in self.coeffs))
        self._chk(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = CycNum.from_fraction(self.order, 1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    # -- structure ----------------------------------------------------------
    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_fraction(self.order, other)
        return isinstance(other, CycNum) and self.order == other.order \
            and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __repr__(self):
        return f"CycNum({self.order}, {self.coeffs})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                zs = "z" if i == 1 else f"z^{i}"
                parts.append(zs if c == 1 else f"-{zs}" if c == -1 else f"{c}*{zs}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


# ---------------------------------------------------------------------------
# sparse multivariate polynomials over CycNum, keyed by exponent tuples
# ---------------------------------------------------------------------------

Poly = dict  # tuple[int, ...] -> CycNum, zero values never stored


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


def p_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e)
        nv = c if v is None else v + c
        if nv:
            out[e] = nv
        elif v is not None:
            del out[e]
    return out


def p_neg(a: Poly) -> Poly:
    return {e: -c for e, c in a.items()}


def p_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = ca * cb
            v = out.get(e)
            nv = c if v is None else v + c
            if nv:
                out[e] = nv
            elif v is not None:
                del out[e]
    return out


def p_scale(a: Poly, c: CycNum) -> Poly:
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def p_try_div(num: Poly, den: Poly) -> Poly | None:
    """Exact multivariate division (graded lex); None if not divisible."""
    if not den:
        raise ZeroDivisionError
    de = max(den, key=_grlex_key)
    dc = den[de]
    rem = dict(num)
    quo: Poly = {}
    while rem:
        le = max(rem, key=_grlex_key)
        qe = tuple(a - b for a, b in zip(le, de))
        if any(x < 0 for x in qe):
            return None
        qc = rem[le] / dc
        quo[qe] = qc
        for e, c in den.items():
            te = tuple(a + b for a, b in zip(qe, e))
            v = rem.get(te)
            nv = (-qc * c) if v is None else v - qc * c
            if nv:
                rem[te] = nv
            elif v is not None:
                del rem[te]
    return quo


# ---------------------------------------------------------------------------
# the parameter field
# ---------------------------------------------------------------------------

class ScalarContext:
    """Interned context for Q(zeta_N)(t, c_1..c_k) scalars."""

    _cache: dict[tuple[int, int], "ScalarContext"] = {}

    def __new__(cls, order: int, nclasses: int):
        key = (order, nclasses)
        inst = cls._cache.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst.order = order
            inst.nclasses = nclasses
            inst.nvars = 1 + nclasses
            inst.names = ("t",) + tuple(f"c{j + 1}" for j in range(nclasses))
            cls._cache[key] = inst
        return inst

    # -- constructors -------------------------------------------------------
    def _zero_exp(self) -> tuple[int, ...]:
        return (0,) * self.nvars

    def zero(self) -> "Scalar":
        return Scalar(self, {}, {self._zero_exp(): CycNum.from_fraction(self.order, 1)})

    def from_cyc(self, c: CycNum) -> "Scalar":
        one = {self._zero_exp(): CycNum.from_fraction(self.order, 1)}
        num = {self._zero_exp(): c} if c else {}
        return Scalar(self, num, one)

    def from_fraction(self, q) -> "Scalar":
        return self.from_cyc(CycNum.from_fraction(self.order, q))

    def from_int(self, n: int) -> "Scalar":
        return self.from_fraction(n)

    def one(self) -> "Scalar":
        return self.from_int(1)

    def root(self, power: int = 1) -> "Scalar":
        return self.from_cyc(CycNum.root(self.order, power))

    def _var(self, i: int) -> "Scalar":
        e = tuple(int(j == i) for j in range(self.nvars))
        one = {self._zero_exp(): CycNum.from_fraction(self.order, 1)}
        return Scalar(self, {e: CycNum.from_fraction(self.order, 1)}, one)

    def t(self) -> "Scalar":
        return self._var(0)

    def c(self, j: int) -> "Scalar":
        """c_j for j in 1..nclasses."""
        if not 1 <= j <= self.nclasses:
            raise ValueError(f"c{j} out of range (have {self.nclasses} classes)")
        return self._var(j)

    def parse(self, text: str) -> "Scalar":
        def resolve(name: str):
            if name == "t":
                return self.t()
            if name == "z":
                return self.root()
            if name.startswith("c") and name[1:].isdigit():
                return self.c(int(name[1:]))
            raise ValueError(f"unknown symbol {name!r}")
        return parse_expression(text, resolve, self.from_int)

    def __repr__(self):
        return f"ScalarContext(order={self.order}, nclasses={self.nclasses})"


class Scalar:
    """A quotient of sparse polynomials over Q(zeta_N); exact, not hashable."""

    __slots__ = ("ctx", "num", "den")
    __hash__ = None  # equality is cross-multiplication, no canonical hash

    def __init__(self, ctx: ScalarContext, num: Poly, den: Poly):
        if not den:
            raise ZeroDivisionError("scalar with zero denominator")
        self.ctx = ctx
        if not num:
            den = {ctx._zero_exp(): CycNum.from_fraction(ctx.order, 1)}
        else:
            num, den = _cancel(ctx, num, den)
        self.num = num
        self.den = den

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            return other if other.ctx is self.ctx else None
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_fraction(other)
        if isinstance(other, CycNum):
            return self.ctx.from_cyc(other)
        return None

    # -- field operations ---------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Scalar(self.ctx, p_add(self.num, o.num), self.den)
        return Scalar(self.ctx,
                      p_add(p_mul(self.num, o.den), p_mul(o.num, self.den)),
                      p_mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ctx, p_neg(self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, p_mul(self.num, o.num), p_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(self.ctx, p_mul(self.num, o.den), p_mul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o / self

    def __pow__(self, n: int):
        if n < 0:
            if not self.num:
                raise ZeroDivisionError
            return Scalar(self.ctx, self.den, self.num) ** (-n)
        acc = self.ctx.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return p_mul(self.num, o.den) == p_mul(o.num, self.den)

    def __bool__(self):
        return bool(self.num)

    @property
    def is_zero(self) -> bool:
        return not self.num

    # -- extras -------------------------------------------------------------
    def substitute(self, var_index: int, value) -> "Scalar":
        """Substitute a rational value for variable var_index (0 is t)."""
        v = Fraction(value)

        def subs(p: Poly) -> Poly:
            out: Poly = {}
            for e, c in p.items():
                ne = e[:var_index] + (0,) + e[var_index + 1:]
                nc = c * v ** e[var_index]
                cur = out.get(ne)
                nv = nc if cur is None else cur + nc
                if nv:
                    out[ne] = nv
                elif cur is not None:
                    del out[ne]
            return out

        den = subs(self.den)
        if not den:
            raise ZeroDivisionError("denominator vanishes under substitution")
        return Scalar(self.ctx, subs(self.num), den)

    def derivative(self, var_index: int) -> "Scalar":
        """Formal partial derivative with respect to variable var_index."""

        def dpoly(p: Poly) -> Poly:
            out: Poly = {}
            for e, c in p.items():
                k = e[var_index]
                if not k:
                    continue
                ne = e[:var_index] + (k - 1,) + e[var_index + 1:]
                nc = c * k
                cur = out.get(ne)
                nv = nc if cur is None else cur + nc
                if nv:
                    out[ne] = nv
                elif cur is not None:
                    del out[ne]
            return out

        # quotient rule: (n/d)' = (n'd - nd')/d^2
        num = p_add(p_mul(dpoly(self.num), self.den),
                    p_neg(p_mul(self.num, dpoly(self.den))))
        return Scalar(self.ctx, num, p_mul(self.den, self.den))

    def as_cyc(self) -> CycNum:
        z = self.ctx._zero_exp()
        if set(self.num) <= {z} and set(self.den) <= {z}:
            top = self.num.get(z, CycNum.from_fraction(self.ctx.order, 0))
            return top / self.den[z]
        raise ValueError(f"{self} is not a constant")

    def as_fraction(self) -> Fraction:
        return self.as_cyc().as_fraction()

    def _poly_str(self, p: Poly) -> str:
        if not p:
            return "0"
        parts = []
        for e in sorted(p, key=_grlex_key, reverse=True):
            c = p[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}"
                for n, k in zip(self.ctx.names, e) if k)
            if not mono:
                cs = str(c)
                parts.append(f"({cs})" if (" " in cs) else cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                cs = str(c)
                parts.append(f"({cs})*{mono}" if " " in cs else f"{cs}*{mono}")
        out = parts[0]
        for p_ in parts[1:]:
            out += f" - {p_[1:]}" if p_.startswith("-") else f" + {p_}"
        return out

    def __str__(self):
        n = self._poly_str(self.num)
        if self.den == {self.ctx._zero_exp(): CycNum.from_fraction(self.ctx.order, 1)}:
            return n
        d = self._poly_str(self.den)
        return f"({n})/({d})"

    def __repr__(self):
        return f"<Scalar {self}>"


def _cancel(ctx: ScalarContext, num: Poly, den: Poly):
    """Light canonicalization; correctness never relies on it."""
    if len(den) == 1:
        (de, dc), = den.items()
        if not any(de) and dc.coeffs[0] == 1 and not any(dc.coeffs[1:]):
            return num, den
    # pull out a common monomial factor
    mins = [min(e[i] for e in num) for i in range(ctx.nvars)]
    for e in den:
        for i in range(ctx.nvars):
            mins[i] = min(mins[i], e[i])
    if any(mins):
        num = {tuple(a - b for a, b in zip(e, mins)): c for e, c in num.items()}
        den = {tuple(a - b for a, b in zip(e, mins)): c for e, c in den.items()}
    if len(den) == 1:
        (de, dc), = den.items()
        if any(de) or dc != 1:
            num = {tuple(a - b for a, b in zip(e, de)): c / dc for e, c in num.items()}
            den = {ctx._zero_exp(): CycNum.from_fraction(ctx.order, 1)}
        return num, den
    q = p_try_div(num, den)
    if q is not None:
        return q, {ctx._zero_exp(): CycNum.from_fraction(ctx.order, 1)}
    lead = den[max(den, key=_grlex_key)]
    if lead != 1:
        inv = lead.inverse()
        num = p_scale(num, inv)
        den = p_scale(den, inv)
    return num, den


# ---------------------------------------------------------------------------
# a tiny shared expression parser:  + - * / ^  integers  symbols  parentheses
# ---------------------------------------------------------------------------

def _tokenize(text: str) -> list[str]:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(text[i:j])
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(text[i:j])
            i = j
        elif ch in "+-*/^()":
            toks.append(ch)
            i += 1
        else:
            raise ValueError(f"bad character {ch!r} in {text!r}")
    return toks


def parse_expression(text: str, resolve: Callable, from_int: Callable):
    """Parse an arithmetic expression; symbols go through ``resolve``."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def atom():
        t = peek()
        if t is None:
            raise ValueError(f"unexpected end of input in {text!r}")
        if t == "(":
            take()
            v = expr()
            if peek() != ")":
                raise ValueError(f"missing ')' in {text!r}")
            take()
            return v
        take()
        if t.isdigit():
            return from_int(int(t))
        return resolve(t)

    def power():
        v = atom()
        while peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            e = take()
            if not e.isdigit():
                raise ValueError(f"exponent must be an integer in {text!r}")
            v = v ** (-int(e) if neg else int(e))
        return v

    def factor():
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        v = power()
        return v if sign == 1 else -v

    def term():
        v = factor()
        while peek() in ("*", "/"):
            if take() == "*":
                v = v * factor()
            else:
                v = v / factor()
        return v

    def expr():
        v = term()
        while peek() in ("+", "-"):
            v = v + term() if take() == "+" else v - term()
        return v

    v = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input {toks[pos:]} in {text!r}")
    return v
