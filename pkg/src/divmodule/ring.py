"""Exact multivariate polynomials over QQ or GF(p).

A polynomial is an immutable map ``exponent tuple -> coefficient``.
Rational coefficients are ``fractions.Fraction`` (always in lowest terms);
prime-field coefficients are plain ints in ``[0, p)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import InputError, ParseError

Monomial = tuple  # tuple[int, ...], one exponent per ring variable


@dataclass(frozen=True)
class Field:
    """QQ when ``characteristic == 0``, otherwise GF(characteristic)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or (p and (p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)))):
            raise InputError(f"field characteristic must be 0 or a prime, got {p}")

    @property
    def name(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def coerce(self, value):
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(c, -1, p) if p else 1 / c

    def div(self, a, b):
        p = self.characteristic
        return a * pow(b, -1, p) % p if p else a / b

    def to_json(self):
        return "Q" if self.characteristic == 0 else {"Fp": self.characteristic}

    @classmethod
    def from_json(cls, obj):
        if obj == "Q":
            return cls(0)
        if isinstance(obj, dict) and set(obj) == {"Fp"}:
            return cls(int(obj["Fp"]))
        raise InputError(f"unknown field descriptor {obj!r}")


QQ = Field(0)


def _grevlex_key(e):
    return (sum(e), tuple(-a for a in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex`` or ``block`` (block elimination).

    ``block`` compares the first ``block_size`` exponents by grevlex first and
    only breaks ties with grevlex on the rest, so it eliminates the first
    block of variables.
    """

    kind: str = "grevlex"
    block_size: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise InputError(f"unknown monomial order {self.kind!r}")

    @property
    def key(self):
        return _order_key(self.kind, self.block_size)

    def to_json(self):
        return self.kind if self.kind != "block" else {"block": self.block_size}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, dict) and set(obj) == {"block"}:
            return cls("block", int(obj["block"]))
        return cls(str(obj))


@lru_cache(maxsize=None)
def _order_key(kind, k):
    if kind == "grevlex":
        return lru_cache(maxsize=1 << 16)(_grevlex_key)
    if kind == "lex":
        return lambda e: e

    @lru_cache(maxsize=1 << 16)
    def block_key(e):
        return (_grevlex_key(e[:k]), _grevlex_key(e[k:]))

    return block_key


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Ring:
    """Ring descriptor: coefficient field, variable names, monomial order."""

    field: Field
    variables: tuple
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise InputError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not _NAME.match(v):
                raise InputError(f"invalid variable name {v!r}")

    @property
    def ngens(self):
        return len(self.variables)

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field.coerce(c)
        return Polynomial(self, {(0,) * self.ngens: c} if c else {})

    def var(self, name):
        try:
            i = self.variables.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None
        return self.monomial(tuple(int(j == i) for j in range(self.ngens)))

    def gens(self):
        return [self.var(v) for v in self.variables]

    def monomial(self, exps, coeff=1):
        c = self.field.coerce(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def parse(self, src):
        return parse_poly(src, self)

    def __call__(self, value):
        if isinstance(value, Polynomial):
            return value.to_ring(self)
        if isinstance(value, str):
            return parse_poly(value, self)
        return self.const(value)

    def with_order(self, order):
        return Ring(self.field, self.variables, order)

    def extend(self, names, front=False):
        names = tuple(names)
        return Ring(self.field, names + self.variables if front else self.variables + names, self.order)

    def fresh_names(self, prefix, count):
        """``count`` variable names starting with ``prefix`` not used in this ring."""
        while any(v.startswith(prefix) and v[len(prefix):].isdigit() for v in self.variables):
            prefix += "_"
        return [f"{prefix}{i}" for i in range(1, count + 1)]

    def to_json(self):
        return {"field": self.field.to_json(), "vars": list(self.variables), "order": self.order.to_json()}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(Field.from_json(obj["field"]), tuple(obj["vars"]), MonomialOrder.from_json(obj.get("order", "grevlex")))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad ring descriptor {obj!r}") from exc

    def __str__(self):
        return f"{self.field.name}[{', '.join(self.variables)}]"


def polynomial_ring(variables, field=QQ, order=GREVLEX):
    if isinstance(variables, str):
        variables = variables.replace(",", " ").split()
    if isinstance(field, int):
        field = Field(field)
    if isinstance(order, str):
        order = MonomialOrder(order)
    return Ring(field, tuple(variables), order)


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_terms", "_hash", "_lead")

    def __init__(self, ring: Ring, terms: Mapping):
        self.ring = ring
        self._terms = terms
        self._hash = None
        self._lead = None

    @classmethod
    def from_terms(cls, ring, items: Iterable):
        """Build from (exponents, coefficient) pairs, combining duplicates."""
        p = ring.field.characteristic
        acc = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        coerce = ring.field.coerce
        return cls(ring, {e: coerce(c) for e, c in acc.items() if (c % p if p else c)})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self):
        return self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def sorted_terms(self, order=None):
        key = (order or self.ring.order).key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead_monomial(self, order=None):
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        if order is None or order == self.ring.order:
            if self._lead is None:
                self._lead = max(self._terms, key=self.ring.order.key)
            return self._lead
        return max(self._terms, key=order.key)

    def lead_coefficient(self, order=None):
        return self._terms[self.lead_monomial(order)]

    def total_degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def degree(self, var):
        i = self.ring.variables.index(var)
        return max((e[i] for e in self._terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self._terms}) <= 1

    def support(self):
        """Indices of the variables that occur."""
        return {i for e in self._terms for i, a in enumerate(e) if a}

    def constant_term(self):
        return self._terms.get((0,) * self.ring.ngens, self.ring.field.coerce(0))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise InputError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if p:
                v %= p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        return Polynomial(self.ring, {e: (-c) % p if p else -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items()}
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c):
        c = self.ring.field.coerce(c)
        if not c:
            return self.ring.zero
        p = self.ring.field.characteristic
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self._terms.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self._terms.items()})

    def shift(self, exps, c=1):
        """Multiply by the term ``c * x^exps``."""
        c = self.ring.field.coerce(c)
        p = self.ring.field.characteristic
        out = {}
        for e, v in self._terms.items():
            w = v * c % p if p else v * c
            if w:
                out[tuple(a + b for a, b in zip(e, exps))] = w
        return Polynomial(self.ring, out)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        """Division by a nonzero constant only."""
        other = self._check(other)
        if other is NotImplemented:
            return other
        if not other.is_constant() or other.is_zero():
            raise InputError("division is only defined by nonzero constants")
        return self.scale(self.ring.field.inv(other.constant_term()))

    def monic(self, order=None):
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coefficient(order)))

    def divide_exact(self, divisor):
        """Return ``q`` with ``q * divisor == self``; raise ValueError otherwise."""
        divisor = self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.ring.field
        lm = divisor.lead_monomial()
        lc = divisor.lead_coefficient()
        rest, q = self, self.ring.zero
        while rest:
            e = rest.lead_monomial()
            if any(a < b for a, b in zip(e, lm)):
                raise ValueError(f"{divisor} does not divide {self}")
            t = tuple(a - b for a, b in zip(e, lm))
            c = F.div(rest.lead_coefficient(), lc)
            q = q + self.ring.monomial(t, c)
            rest = rest - divisor.shift(t, c)
        return q

    # -- evaluation / ring changes -----------------------------------------

    def evaluate(self, point: Sequence):
        """Value at ``point`` (one field element per variable)."""
        F = self.ring.field
        p = F.characteristic
        vals = [F.coerce(v) for v in point]
        total = F.coerce(0)
        for e, c in self._terms.items():
            t = c
            for v, a in zip(vals, e):
                if a:
                    t = t * v**a
            total += t
        return total % p if p else total

    def substitute(self, mapping: Mapping):
        """Replace variables (by name) with polynomials of a common target ring."""
        target = next(iter(mapping.values())).ring if mapping else self.ring
        images = []
        for v in self.ring.variables:
            if v in mapping:
                images.append(mapping[v])
            else:
                images.append(target.var(v))
        result = target.zero
        for e, c in self._terms.items():
            term = target.const(c)
            for img, a in zip(images, e):
                if a:
                    term = term * img**a
            result = result + term
        return result

    def to_ring(self, ring: Ring):
        """Re-express in ``ring``, matching variables by name."""
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise InputError(f"field mismatch: {self.ring.field.name} vs {ring.field.name}")
        idx = {v: i for i, v in enumerate(ring.variables)}
        perm = []
        for i, v in enumerate(self.ring.variables):
            if v in idx:
                perm.append(idx[v])
            elif any(e[i] for e in self._terms):
                raise InputError(f"variable {v!r} does not exist in {ring}")
            else:
                perm.append(None)
        out = {}
        n = ring.ngens
        for e, c in self._terms.items():
            f = [0] * n
            for a, j in zip(e, perm):
                if a:
                    f[j] = a
            out[tuple(f)] = c
        return Polynomial(ring, out)

    # -- comparison / printing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _format_monomial(ring, e):
    parts = []
    for v, a in zip(ring.variables, e):
        if a == 1:
            parts.append(v)
        elif a:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_poly(f: Polynomial, order=None):
    """Canonical text: terms descending in the order, ``a/b`` coefficients, ``^`` powers."""
    if f.is_zero():
        return "0"
    out = []
    for e, c in f.sorted_terms(order):
        mono = _format_monomial(f.ring, e)
        cs = str(c)
        if not mono:
            term = cs
        elif cs == "1":
            term = mono
        elif cs == "-1":
            term = "-" + mono
        else:
            term = f"{cs}*{mono}"
        if not out:
            out.append(term)
        elif term.startswith("-"):
            out.append(" - " + term[1:])
        else:
            out.append(" + " + term)
    return "".join(out)


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")


def _tokenize(src):
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        start = pos
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", src, start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src, ring):
        self.src = src
        self.ring = ring
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", self.src, tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", self.src, 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r} (implicit multiplication is not allowed)", self.src, tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", self.src, pos)
                if not rhs.is_constant():
                    raise ParseError("division by a non-constant", self.src, pos)
                value = value / rhs
        return value

    def unary(self):
        if self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            exp = self.take("int")
            return base ** int(exp[1])
        return base

    def atom(self):
        kind, text, pos = self.peek()
        if kind == "int":
            self.take()
            return self.ring.const(int(text))
        if kind == "name":
            self.take()
            if text not in self.ring.variables:
                raise ParseError(f"unknown variable {text!r}", self.src, pos)
            return self.ring.var(text)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"unexpected {what}", self.src, pos)


def parse_poly(src: str, ring: Ring) -> Polynomial:
    """Parse ``src`` in the grammar documented in README (GRAMMAR section)."""
    if not isinstance(src, str):
        raise InputError(f"polynomial must be given as a string, got {src!r}")
    return _Parser(src, ring).parse()
