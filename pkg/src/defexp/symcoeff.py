"""Symbolic expansion coefficients C_n and their basis changes.

C_n(q) lives in the polynomial ring generated by the divisor-power
series A_i = sum_m m^i sigma(m) q^m.  This module builds the C_n by the
kernel recursion, rewrites them in the closed ring Q[A_0, A_1, A_2]
(every A_n with n >= 3 is itself a polynomial in the first three), and
converts to and from the Eisenstein generators E_2, E_4, E_6.

Two independent routes produce the kernel coefficients:

* s_poly assembles S_i(n) from the Delta(N, m) blocks with the
  composition-sum bookkeeping, and c_n consumes them;
* kernel_expand multiplies the kernel factors out as literal truncated
  power series and reads the x^(n-1) coefficient off directly.

Tests compare the two term-for-term; that cross-check is what certifies
the index bookkeeping in s_poly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest

from .exactmath import gen_binomial
from .jpoly import (
    DecompositionError,
    J,
    JPoly,
    delta,
    q_poly,
    sigma_poly,
    uv_decompose,
)

__all__ = [
    "CoeffTable",
    "KernelCoefficient",
    "MPoly",
    "a_symbol",
    "c_n",
    "c_symbol",
    "e_symbol",
    "from_eisenstein",
    "kernel_expand",
    "linear_part",
    "p_m",
    "reduce_to_A012",
    "s_poly",
    "theta",
    "to_eisenstein",
]

_E_NAMES = ("E2", "E4", "E6")
#: symbol families: A_i (i >= 0), C_i (i >= 1), Eisenstein, and the
#: kernel's shifted alias a_i = C_{i+1} (i >= 0)
_FAMILIES = ("A", "C", "E", "a")


def _add_exps(e1: tuple, e2: tuple) -> tuple:
    out = tuple(a + b for a, b in zip_longest(e1, e2, fillvalue=0))
    while out and out[-1] == 0:
        out = out[:-1]
    return out


class MPoly:
    """Sparse multivariate polynomial over Fraction in one symbol family.

    Terms map trimmed exponent tuples to nonzero coefficients; slot i of
    an exponent tuple refers to the i-th symbol of the family (A_i, or
    C_{i+1}, or E2/E4/E6, or a_i).  Canonical term order for printing and
    serialization is graded lexicographic on the exponent tuples.
    """

    __slots__ = ("family", "terms")

    def __init__(self, family: str, terms=None):
        if family not in _FAMILIES:
            raise ValueError(f"unknown symbol family {family!r}")
        clean: dict[tuple, Fraction] = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            e = tuple(exps)
            while e and e[-1] == 0:
                e = e[:-1]
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            if family == "E" and len(e) > 3:
                raise ValueError("Eisenstein family has only E2, E4, E6")
            clean[e] = clean.get(e, Fraction(0)) + c
        self.family = family
        self.terms = {e: c for e, c in clean.items() if c}

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, family: str) -> "MPoly":
        return cls(family, {})

    @classmethod
    def const(cls, family: str, value) -> "MPoly":
        return cls(family, {(): Fraction(value)})

    @classmethod
    def symbol(cls, family: str, index: int) -> "MPoly":
        if index < 0:
            raise ValueError("symbol index must be nonnegative")
        return cls(family, {(0,) * index + (1,): Fraction(1)})

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def max_index(self) -> int:
        """Largest symbol slot actually used; -1 for constants."""
        return max((len(e) - 1 for e in self.terms if e), default=-1)

    def coefficient(self, exps) -> Fraction:
        e = tuple(exps)
        while e and e[-1] == 0:
            e = e[:-1]
        return self.terms.get(e, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def linear_coefficient(self, index: int) -> Fraction:
        return self.terms.get((0,) * index + (1,), Fraction(0))

    def canonical_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.family, other)
        if isinstance(other, MPoly):
            if other.family != self.family:
                raise ValueError(f"family mismatch: {self.family} vs {other.family}")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MPoly(self.family, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.family, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = _add_exps(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MPoly(self.family, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.family, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.family, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.family == other.family and self.terms == other.terms

    def __hash__(self):
        return hash((self.family, frozenset(self.terms.items())))

    def substitute(self, mapping: dict[int, "MPoly"], family: str | None = None) -> "MPoly":
        """Replace symbol slot i by mapping[i]; unmapped slots stay put.

        When the replacement polynomials live in a different family, pass
        it as `family`; then every slot that occurs must be mapped.
        """
        out_family = family or self.family
        acc = MPoly.zero(out_family)
        pow_cache: dict[tuple[int, int], MPoly] = {}
        for exps, c in self.terms.items():
            term = MPoly.const(out_family, c)
            for i, e in enumerate(exps):
                if not e:
                    continue
                if i in mapping:
                    key = (i, e)
                    p = pow_cache.get(key)
                    if p is None:
                        repl = mapping[i]
                        if repl.family != out_family:
                            raise ValueError("replacement family mismatch")
                        p = pow_cache[key] = repl**e
                else:
                    if out_family != self.family:
                        raise ValueError(f"symbol slot {i} not mapped across families")
                    key = (i, e)
                    p = pow_cache.get(key)
                    if p is None:
                        p = pow_cache[key] = MPoly.symbol(out_family, i) ** e
                term = term * p
            acc = acc + term
        return acc

    # -- presentation ---------------------------------------------------

    def symbol_names(self) -> list[str]:
        mx = self.max_index()
        if self.family == "E":
            return list(_E_NAMES[: mx + 1])
        offset = 1 if self.family == "C" else 0
        return [f"{self.family}{i + offset}" for i in range(mx + 1)]

    def to_json(self) -> dict:
        return {
            "symbols": self.symbol_names(),
            "terms": [
                {"exps": list(e), "coeff": str(c)} for e, c in self.canonical_terms()
            ],
        }

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = self.symbol_names()
        parts = []
        for e, c in self.canonical_terms():
            syms = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            parts.append(f"({c})" + (f"*{syms}" if syms else ""))
        return " + ".join(parts)


def a_symbol(i: int) -> MPoly:
    """The generator A_i as a one-term polynomial."""
    return MPoly.symbol("A", i)


def c_symbol(i: int) -> MPoly:
    """The coefficient symbol C_i (i >= 1) as a one-term polynomial."""
    if i < 1:
        raise ValueError("C-symbols start at C_1")
    return MPoly.symbol("C", i - 1)


def e_symbol(name: str) -> MPoly:
    """E2, E4 or E6 as a one-term polynomial."""
    return MPoly.symbol("E", _E_NAMES.index(name))


# ---------------------------------------------------------------------------
# the theta derivation and the A_{>=3} closure


def theta(p: MPoly, extend: bool = True) -> MPoly:
    """The derivation q d/dq on the A-ring: each A_i maps to A_{i+1}.

    With extend=False the result is pushed back into Q[A_0, A_1, A_2]
    through the closure substitution (A_3 and beyond are polynomials in
    the first three generators).
    """
    if p.family != "A":
        raise ValueError("theta acts on A-symbols")
    out: dict[tuple, Fraction] = {}
    for exps, c in p.terms.items():
        for i, e in enumerate(exps):
            if not e:
                continue
            ne = list(exps) + [0] * (i + 2 - len(exps))
            ne[i] -= 1
            ne[i + 1] += 1
            key = tuple(ne)
            out[key] = out.get(key, Fraction(0)) + c * e
    res = MPoly("A", out)
    if not extend:
        res = reduce_to_A012(res)
    return res


#: A_3 = A_2 + 36 A_1^2 - 24 A_0 A_2, the base of the closure chain
_A3_CLOSURE = MPoly(
    "A",
    {
        (0, 0, 1): Fraction(1),
        (0, 2): Fraction(36),
        (1, 0, 1): Fraction(-24),
    },
)

_closure_cache: dict[int, MPoly] = {3: _A3_CLOSURE}


def _a_closure(n: int) -> MPoly:
    """A_n written in Q[A_0, A_1, A_2], for n >= 3; successors by theta."""
    top = max(_closure_cache)
    while top < n:
        _closure_cache[top + 1] = theta(_closure_cache[top], extend=False)
        top += 1
    return _closure_cache[n]


def reduce_to_A012(p: MPoly) -> MPoly:
    """Rewrite an A-polynomial in the closed ring Q[A_0, A_1, A_2]."""
    if p.family != "A":
        raise ValueError("reduce_to_A012 acts on A-symbols")
    mx = p.max_index()
    if mx <= 2:
        return p
    return p.substitute({i: _a_closure(i) for i in range(3, mx + 1)})


def linear_part(p: MPoly) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients of A_0, A_1, A_2 in a reduced polynomial."""
    if p.family != "A":
        raise ValueError("linear_part acts on A-symbols")
    if p.max_index() > 2:
        raise ValueError("reduce to A_0..A_2 first")
    return (p.linear_coefficient(0), p.linear_coefficient(1), p.linear_coefficient(2))


# ---------------------------------------------------------------------------
# Eisenstein basis

_A_IN_E: dict[int, MPoly] = {
    # A_0 = (1 - E2)/24
    0: MPoly("E", {(): Fraction(1, 24), (1,): Fraction(-1, 24)}),
    # A_1 = (E4 - E2^2)/288
    1: MPoly("E", {(0, 1): Fraction(1, 288), (2,): Fraction(-1, 288)}),
    # A_2 = -(E2^3 - 3 E2 E4 + 2 E6)/1728
    2: MPoly(
        "E",
        {
            (3,): Fraction(-1, 1728),
            (1, 1): Fraction(1, 576),
            (0, 0, 1): Fraction(-1, 864),
        },
    ),
}

_E_IN_A: dict[int, MPoly] = {
    # E2 = 1 - 24 A_0
    0: MPoly("A", {(): 1, (1,): -24}),
    # E4 = 1 - 48 A_0 + 576 A_0^2 + 288 A_1
    1: MPoly("A", {(): 1, (1,): -48, (2,): 576, (0, 1): 288}),
    # E6 = 1 - 72 A_0 + 1728 A_0^2 - 13824 A_0^3 + 432 A_1 - 10368 A_0 A_1 - 864 A_2
    2: MPoly(
        "A",
        {
            (): 1,
            (1,): -72,
            (2,): 1728,
            (3,): -13824,
            (0, 1): 432,
            (1, 1): -10368,
            (0, 0, 1): -864,
        },
    ),
}


def to_eisenstein(p: MPoly) -> MPoly:
    """Rewrite a reduced A-polynomial in the generators E2, E4, E6."""
    if p.family != "A":
        raise ValueError("to_eisenstein acts on A-symbols")
    if p.max_index() > 2:
        raise ValueError("reduce to A_0..A_2 first")
    return p.substitute(dict(_A_IN_E), family="E")


def from_eisenstein(p: MPoly) -> MPoly:
    """Rewrite an E-polynomial in terms of A_0, A_1, A_2."""
    if p.family != "E":
        raise ValueError("from_eisenstein acts on E-symbols")
    return p.substitute(dict(_E_IN_A), family="A")


# ---------------------------------------------------------------------------
# the coefficient table


class CoeffTable:
    """Memoized tables: the multipliers P_i, the S_i(n) and the C_n.

    P_1 = A_0 and P_{m+1} = theta(P_m) - 3 A_0 P_m.  The S_i(n) are
    assembled from the Delta blocks; the recursion

        C_n = -S_0(n) + sum_{i=1}^{n} 3 * 2^i * S_i(n) * P_i

    (with C_1..C_{n-1} substituted into the S-polynomials) then yields
    C_n as a polynomial in A_0..A_{n-1}.
    """

    def __init__(self):
        self._p: list[MPoly | None] = [None]
        self._s: dict[tuple[int, int], MPoly] = {}
        self._comp: dict[tuple[int, int], MPoly] = {}
        self._c: list[MPoly | None] = [None]

    def p(self, m: int) -> MPoly:
        if m < 1:
            raise ValueError("P index starts at 1")
        while len(self._p) <= m:
            if len(self._p) == 1:
                self._p.append(a_symbol(0))
            else:
                prev = self._p[-1]
                self._p.append(theta(prev) - 3 * a_symbol(0) * prev)
        return self._p[m]

    def _compositions(self, m: int, d: int) -> MPoly:
        """Sum of C_{i_1} ... C_{i_m} over i_1 + ... + i_m = d, i_l >= 1."""
        key = (m, d)
        cached = self._comp.get(key)
        if cached is not None:
            return cached
        if m == 0:
            res = MPoly.const("C", 1) if d == 0 else MPoly.zero("C")
        elif d < m:
            res = MPoly.zero("C")
        else:
            acc = MPoly.zero("C")
            for i in range(1, d - m + 2):
                acc = acc + c_symbol(i) * self._compositions(m - 1, d - i)
            res = acc
        self._comp[key] = res
        return res

    def s(self, i: int, n: int) -> MPoly:
        """S_i(n) as a polynomial in the symbols C_1..C_{n-1}.

        S_i(n) = [u v^i] Delta(n+1, 0)
               + sum_{N=3}^{n+1} sum_{m=1}^{floor(N/2)}
                   ([u v^i] Delta(N, m) + [u v^i] Delta(N-2, m-1))
                   * sum_{i_1+...+i_m = n-N+m+1, i_l >= 1} C_{i_1}...C_{i_m}
        """
        if n < 1 or not 0 <= i <= n:
            raise ValueError(f"S indices need 1 <= n and 0 <= i <= n, got i={i}, n={n}")
        key = (i, n)
        cached = self._s.get(key)
        if cached is not None:
            return cached
        acc = MPoly.const("C", delta(n + 1, 0).coeff(i))
        for n_order in range(3, n + 2):
            for m in range(1, n_order // 2 + 1):
                w = delta(n_order, m).coeff(i) + delta(n_order - 2, m - 1).coeff(i)
                if not w:
                    continue
                d = n - n_order + m + 1
                if d >= m:
                    acc = acc + w * self._compositions(m, d)
        self._s[key] = acc
        return acc

    def c(self, n: int) -> MPoly:
        """C_n as a polynomial in A_0..A_{n-1}."""
        if n < 1:
            raise ValueError("C index starts at 1")
        while len(self._c) <= n:
            m = len(self._c)
            lower = {t: self._c[t + 1] for t in range(m - 1)}

            def in_a(poly: MPoly) -> MPoly:
                return poly.substitute(lower, family="A")

            total = -in_a(self.s(0, m))
            for i in range(1, m + 1):
                si = self.s(i, m)
                if si.is_zero():
                    continue
                total = total + (3 * 2**i) * in_a(si) * self.p(i)
            self._c.append(total)
        return self._c[n]


_table = CoeffTable()


def p_m(m: int) -> MPoly:
    """P_m from the shared table (P_1 = A_0, P_{m+1} = theta(P_m) - 3 A_0 P_m)."""
    return _table.p(m)


def s_poly(i: int, n: int) -> MPoly:
    """S_i(n) from the shared table, in C-symbols."""
    return _table.s(i, n)


def c_n(n: int) -> MPoly:
    """The expansion coefficient C_n, raw form in A_0..A_{n-1}."""
    return _table.c(n)


# ---------------------------------------------------------------------------
# the series oracle for the kernel coefficients

_J_ONE = JPoly((1,))


def _unit_exps(i: int) -> tuple:
    return (0,) * i + (1,)


def _ring_mul(a_ser, b_ser, top: int):
    """Multiply truncated series whose coefficients map a-monomials to JPoly."""
    out = [dict() for _ in range(top + 1)]
    for s, da in enumerate(a_ser):
        if s > top:
            break
        if not da:
            continue
        for t, db in enumerate(b_ser):
            if s + t > top:
                break
            if not db:
                continue
            bucket = out[s + t]
            for ea, pa in da.items():
                for eb, pb in db.items():
                    e = _add_exps(ea, eb)
                    cur = bucket.get(e)
                    bucket[e] = pa * pb if cur is None else cur + pa * pb
    for bucket in out:
        for e in [e for e, p in bucket.items() if not p]:
            del bucket[e]
    return out


class KernelCoefficient:
    """The x^(n-1) coefficient of the kernel, u * (a_{n-1} + sum S_i v^i).

    by_v_power[i] is the full v^i coefficient as a polynomial in the
    a-symbols; slot 0 includes the lone a_{n-1} term.
    """

    __slots__ = ("n", "by_v_power")

    def __init__(self, n: int, by_v_power: tuple[MPoly, ...]):
        self.n = n
        self.by_v_power = by_v_power

    def s_value(self, i: int) -> MPoly:
        """S_i(n) in a-symbols: the v^i slot, minus a_{n-1} when i = 0."""
        poly = (
            self.by_v_power[i] if i < len(self.by_v_power) else MPoly.zero("a")
        )
        if i == 0:
            poly = poly - MPoly.symbol("a", self.n - 1)
        return poly

    def s_in_c_symbols(self, i: int) -> MPoly:
        """Same as s_value but with a_i renamed to C_{i+1} (same slots)."""
        return MPoly("C", self.s_value(i).terms)

    def eval_at_j(self, j0) -> MPoly:
        """Collapse u and v at a concrete j; returns an a-polynomial."""
        j0 = Fraction(j0)
        u0 = 2 * j0 - 1
        v0 = j0 * (j0 - 1)
        acc = MPoly.zero("a")
        scale = Fraction(1)
        for poly in self.by_v_power:
            acc = acc + scale * poly
            scale = scale * v0
        return u0 * acc


def kernel_expand(n: int, j_symbolic: bool = True):
    """Coefficient of x^(n-1) in (G - H)/x^2 * (1 + a(x) x^2), exactly.

    The factors are expanded as truncated power series in x whose
    coefficients are JPoly-valued polynomials in a_0, a_1, ...:
    G = (1 + a(x) x^2)^j * sum Q_k x^k and
    H = (1 + a(x) x^2)^(1-j) * sum (-1)^k sigma_k x^k.

    With j_symbolic=True the coefficient is decomposed in the (u, v)
    basis and returned as a KernelCoefficient (raising if it is not a
    pure u-form); with j_symbolic=False the raw mapping from a-monomials
    to polynomials in j is returned instead.
    """
    if n < 1:
        raise ValueError("kernel order starts at 1")
    top = n + 1  # G and H are needed through x^(n+1)

    ax2 = [dict() for _ in range(top + 1)]
    for t in range(n):  # a_t enters the x^(n-1) coefficient only for t <= n-1
        if t + 2 <= top:
            ax2[t + 2][_unit_exps(t)] = _J_ONE

    max_m = top // 2
    pow_ax2 = [[{(): _J_ONE}] + [dict() for _ in range(top)]]
    for _ in range(max_m):
        pow_ax2.append(_ring_mul(pow_ax2[-1], ax2, top))

    def binom_series(alpha: JPoly):
        acc = [dict() for _ in range(top + 1)]
        for m in range(max_m + 1):
            b = gen_binomial(alpha, m)
            bp = b if isinstance(b, JPoly) else JPoly((b,))
            if not bp:
                continue
            for t, bucket in enumerate(pow_ax2[m]):
                for e, p in bucket.items():
                    cur = acc[t].get(e)
                    acc[t][e] = p * bp if cur is None else cur + p * bp
        return acc

    q_ser = [{(): q_poly(t)} for t in range(top + 1)]
    sig_ser = [{(): sigma_poly(t) * (1 if t % 2 == 0 else -1)} for t in range(top + 1)]
    g_ser = _ring_mul(binom_series(J), q_ser, top)
    h_ser = _ring_mul(binom_series(JPoly((1, -1))), sig_ser, top)

    diff = []
    for db_g, db_h in zip(g_ser, h_ser):
        bucket = dict(db_g)
        for e, p in db_h.items():
            cur = bucket.get(e, JPoly())
            bucket[e] = cur - p
        diff.append({e: p for e, p in bucket.items() if p})
    if diff[0] or diff[1]:
        raise DecompositionError("kernel numerator must vanish to order x^1")

    one_plus = [dict() for _ in range(n)]
    one_plus[0][()] = _J_ONE
    for t in range(2, n):
        one_plus[t][_unit_exps(t - 2)] = _J_ONE
    ker = _ring_mul(diff[2:], one_plus, n - 1)
    raw = ker[n - 1]
    if not j_symbolic:
        return dict(raw)

    by_v: list[dict[tuple, Fraction]] = []
    for exps, poly in raw.items():
        even, odd = uv_decompose(poly)
        if any(even):
            raise DecompositionError(
                f"kernel coefficient at order {n} has a pure-v part on monomial {exps}"
            )
        for i, cv in enumerate(odd.vcoeffs):
            if not cv:
                continue
            while len(by_v) <= i:
                by_v.append({})
            by_v[i][exps] = cv
    return KernelCoefficient(n, tuple(MPoly("a", d) for d in by_v))
