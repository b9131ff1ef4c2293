"""Prime fields and sparse weighted-graded polynomials.

Monomials are exponent tuples.  The ambient monomial order is graded reverse
lexicographic with respect to the weighted degree, with variables ordered as
listed in the ring (first variable largest).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

DEFAULT_PRIME = 32003


class PolynomialSyntaxError(ValueError):
    pass


class RingMismatchError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p == 2:
            raise ValueError("characteristic 2 is not supported (2 must be invertible)")

    def inv(self, a: int) -> int:
        return pow(a, self.p - 2, self.p)


@dataclass(frozen=True)
class RingSpec:
    names: tuple
    weights: tuple
    field: PrimeField = field(default_factory=PrimeField)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.names) != len(self.weights):
            raise ValueError("one weight per variable")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def degree(self, exp) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))

    def key(self, exp):
        """Sort key of a monomial: larger key means larger in the order."""
        return _grevlex_key(self.weights, exp)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: 1})

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, name) -> "Polynomial":
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return tuple(self.var(i) for i in range(self.nvars))

    def monomials(self, d: int):
        """All exponent vectors of weighted degree d, in descending order."""
        return monomials_of_degree(self.weights, d)

    def dim(self, d: int) -> int:
        return len(monomials_of_degree(self.weights, d))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


def p2_ring(p: int = DEFAULT_PRIME) -> RingSpec:
    """The coordinate ring k[x,y,z] of the projective plane."""
    return RingSpec(("x", "y", "z"), (1, 1, 1), PrimeField(p))


def cover_ambient_ring(s: int, p: int = DEFAULT_PRIME) -> RingSpec:
    """k[x,y,z,t] with t of weight s."""
    return RingSpec(("x", "y", "z", "t"), (1, 1, 1, s), PrimeField(p))


@lru_cache(maxsize=None)
def _grevlex_key(weights, exp):
    d = 0
    for e, w in zip(exp, weights):
        d += e * w
    return (d,) + tuple(-e for e in reversed(exp))


@lru_cache(maxsize=None)
def monomials_of_degree(weights, d):
    n = len(weights)
    if d < 0:
        return ()
    out = []

    def rec(i, rest, acc):
        if i == n - 1:
            if rest % weights[i] == 0:
                out.append(tuple(acc + [rest // weights[i]]))
            return
        for e in range(rest // weights[i], -1, -1):
            rec(i + 1, rest - e * weights[i], acc + [e])

    if n == 0:
        return ((),) if d == 0 else ()
    rec(0, d, [])
    out.sort(key=lambda e: _grevlex_key(weights, e), reverse=True)
    return tuple(out)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b) -> bool:
    """True if monomial a divides monomial b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial; ``coeffs`` maps exponent tuples to nonzero residues."""

    __slots__ = ("ring", "coeffs", "_hash")

    def __init__(self, ring: RingSpec, coeffs=None):
        p = ring.p
        clean = {}
        if coeffs:
            n = ring.nvars
            for e, c in coeffs.items():
                c %= p
                if c:
                    if len(e) != n:
                        raise ValueError("exponent vector has wrong length")
                    clean[tuple(e)] = c
        self.ring = ring
        self.coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, coeffs):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    # -- structure ---------------------------------------------------------
    @property
    def terms(self):
        """(coefficient, exponent) pairs, strictly descending in the monomial order."""
        key = self.ring.key
        return [(self.coeffs[e], e) for e in sorted(self.coeffs, key=key, reverse=True)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def lead_exp(self):
        return max(self.coeffs, key=self.ring.key)

    def lead_coeff(self) -> int:
        return self.coeffs[self.lead_exp()]

    def degrees(self):
        deg = self.ring.degree
        return {deg(e) for e in self.coeffs}

    def degree(self) -> int:
        """Weighted degree (maximum over terms); -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(self.degrees())

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def involves(self, i: int) -> bool:
        return any(e[i] for e in self.coeffs)

    def constant_value(self):
        """The value if this is a constant polynomial, else None."""
        if not self.coeffs:
            return 0
        if len(self.coeffs) == 1:
            (e, c), = self.coeffs.items()
            if not any(e):
                return c
        return None

    # -- arithmetic --------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Polynomial):
            raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring.names} vs {other.ring.names}")

    def _coerce(self, other):
        if isinstance(other, int):
            return self.ring.const(other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.p
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._raw(self.ring, {e: p - c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c % p for e, v in self.coeffs.items()})

    def mul_term(self, c: int, exp) -> "Polynomial":
        p = self.ring.p
        return Polynomial._raw(
            self.ring, {mono_mul(e, exp): v * c % p for e, v in self.coeffs.items()}
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        return Polynomial._raw(self.ring, poly_mul_dicts(self.coeffs, other.coeffs, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def diff(self, i: int) -> "Polynomial":
        p = self.ring.p
        out = {}
        for e, c in self.coeffs.items():
            if e[i]:
                v = c * e[i] % p
                if v:
                    f = list(e)
                    f[i] -= 1
                    out[tuple(f)] = v
        return Polynomial._raw(self.ring, out)

    def substitute_ring(self, ring: RingSpec, positions) -> "Polynomial":
        """Re-embed into ``ring``; variable i of self goes to variable positions[i]."""
        out = {}
        for e, c in self.coeffs.items():
            f = [0] * ring.nvars
            for i, k in enumerate(e):
                f[positions[i]] += k
            out[tuple(f)] = c
        return Polynomial(ring, out)

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.coeffs.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def poly_mul_dicts(a: dict, b: dict, p: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = (get(e, 0) + ca * cb) % p
    return {e: c for e, c in out.items() if c}


# -- text format -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastindex
        out.append((("num", "var", "^", "*", "+", "-")[kind - 1], m.group(kind), pos))
        pos = m.end()
    return out


def parse_polynomial(text: str, ring: RingSpec) -> Polynomial:
    """Parse ``c*x^a*y^b + ...`` into a canonical polynomial over ``ring``.

    A bare integer is accepted as a constant term and a leading sign is allowed;
    both are needed to print every polynomial, constants included.
    """
    toks = _tokenize(text)
    if not toks:
        raise PolynomialSyntaxError("empty polynomial")
    p = ring.p
    n = ring.nvars
    coeffs = {}
    i = 0

    def peek():
        return toks[i][0] if i < len(toks) else None

    sign = 1
    if peek() in ("+", "-"):
        sign = -1 if toks[i][0] == "-" else 1
        i += 1
    while True:
        coeff = 1
        exp = [0] * n
        seen_factor = False
        if peek() == "num":
            coeff = int(toks[i][1])
            i += 1
            seen_factor = True
            if peek() == "*":
                i += 1
                if peek() != "var":
                    raise PolynomialSyntaxError("expected variable after '*'")
            elif peek() not in (None, "+", "-"):
                raise PolynomialSyntaxError(f"unexpected token {toks[i][1]!r}")
        while peek() == "var":
            name = toks[i][1]
            if name not in ring.names:
                raise PolynomialSyntaxError(f"unknown variable {name!r}")
            i += 1
            k = 1
            if peek() == "^":
                i += 1
                if peek() == "-":
                    raise PolynomialSyntaxError("negative exponent")
                if peek() != "num":
                    raise PolynomialSyntaxError("expected exponent after '^'")
                k = int(toks[i][1])
                i += 1
            exp[ring.index(name)] += k
            seen_factor = True
            if peek() == "*":
                i += 1
                if peek() != "var":
                    raise PolynomialSyntaxError("expected variable after '*'")
            elif peek() not in (None, "+", "-"):
                raise PolynomialSyntaxError(f"unexpected token {toks[i][1]!r}")
        if not seen_factor:
            raise PolynomialSyntaxError("empty term")
        e = tuple(exp)
        coeffs[e] = (coeffs.get(e, 0) + sign * coeff) % p
        if peek() is None:
            break
        if peek() not in ("+", "-"):
            raise PolynomialSyntaxError(f"unexpected token {toks[i][1]!r}")
        sign = -1 if toks[i][0] == "-" else 1
        i += 1
        if peek() is None:
            raise PolynomialSyntaxError("dangling operator")
    return Polynomial(ring, coeffs)


def format_polynomial(f: Polynomial) -> str:
    if not f.coeffs:
        return "0"
    p = f.ring.p
    half = p // 2
    parts = []
    for c, e in f.terms:
        neg = c > half
        a = p - c if neg else c
        factors = []
        for name, k in zip(f.ring.names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        if not factors:
            body = str(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = f"{a}*" + "*".join(factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# -- generation and calculus -----------------------------------------------

def random_homogeneous(d: int, ring: RingSpec, seed: int) -> Polynomial:
    """Dense random form of weighted degree d; every monomial gets a uniform coefficient."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    entropy = [int(seed) & 0xFFFFFFFF, int(seed) >> 32 & 0xFFFFFFFF, d, ring.p, *ring.weights]
    rng = np.random.default_rng(np.random.SeedSequence(entropy))
    monos = ring.monomials(d)
    values = rng.integers(0, ring.p, size=len(monos))
    return Polynomial(ring, {e: int(c) for e, c in zip(monos, values)})


def jacobian_partials(F: Polynomial):
    """Partial derivatives with respect to the first three variables (x, y, z)."""
    ring = F.ring
    for i in range(3, ring.nvars):
        if F.involves(i):
            raise ValueError(f"polynomial involves {ring.names[i]}")
    return tuple(F.diff(i) for i in range(3))


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when n < k or n < 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)
