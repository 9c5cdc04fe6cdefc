"""Exact multivariate polynomials over the rationals.

Monomials are plain tuples of nonnegative exponents; a :class:`Ring` fixes the
variable names and the monomial order, and every :class:`Polynomial` carries
the ring it lives in.  Terms are kept sorted by the ring's order (largest
first), so the leading term is always ``terms[0]``.

Grevlex convention used throughout: higher total degree wins; on a tie, scan
variables from the lowest priority upward and the monomial with the *smaller*
exponent at the first difference is the larger one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Coefficient = Union[int, Fraction]

LT, EQ, GT = -1, 0, 1


class ContextMismatchError(ValueError):
    """Objects from different rings (or of different lengths) were combined."""


class DivisionError(ArithmeticError):
    pass


# --------------------------------------------------------------------------
# monomials

def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1, m2))


def monomial_lcm(m1: Monomial, m2: Monomial) -> Monomial:
    if len(m1) != len(m2):
        raise ContextMismatchError("exponent vectors of different length")
    return tuple(a if a >= b else b for a, b in zip(m1, m2))


def monomial_gcd(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a if a <= b else b for a, b in zip(m1, m2))


def monomial_divides(m1: Monomial, m2: Monomial) -> bool:
    """True if ``m1`` divides ``m2``."""
    if len(m1) != len(m2):
        raise ContextMismatchError("exponent vectors of different length")
    return all(a <= b for a, b in zip(m1, m2))


def monomial_quotient(m1: Monomial, m2: Monomial) -> Monomial:
    """Return ``m1 / m2``; ``m2`` must divide ``m1``."""
    if len(m1) != len(m2):
        raise ContextMismatchError("exponent vectors of different length")
    out = tuple(a - b for a, b in zip(m1, m2))
    if any(e < 0 for e in out):
        raise DivisionError("monomial quotient by a non-divisor")
    return out


def coprime(m1: Monomial, m2: Monomial) -> bool:
    return all(a == 0 or b == 0 for a, b in zip(m1, m2))


def support(m: Monomial) -> Tuple[int, ...]:
    return tuple(i for i, e in enumerate(m) if e)


# --------------------------------------------------------------------------
# orders

@dataclass(frozen=True)
class MonomialOrder:
    """Grevlex with a priority permutation, or a two-block elimination order.

    ``priority`` lists variable indices from highest to lowest.  For a block
    order the first ``block`` entries of ``priority`` form the eliminated
    (larger) block; grevlex is used inside each block.
    """

    nvars: int
    priority: Tuple[int, ...]
    block: int | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "priority", tuple(self.priority))
        if sorted(self.priority) != list(range(self.nvars)):
            raise ValueError("priority must be a permutation of the variable indices")
        if self.block is not None and not 0 < self.block < self.nvars:
            raise ValueError("block boundary must split the variables into two nonempty groups")

    @classmethod
    def grevlex(cls, nvars: int, priority: Sequence[int] | None = None) -> "MonomialOrder":
        if priority is None:
            priority = range(nvars)
        return cls(nvars, tuple(priority))

    @classmethod
    def elimination(cls, nvars: int, first: Sequence[int], second: Sequence[int]) -> "MonomialOrder":
        """Block order with every variable of ``first`` above every one of ``second``."""
        return cls(nvars, tuple(first) + tuple(second), block=len(first))

    @property
    def kind(self) -> str:
        return "grevlex" if self.block is None else "block"

    def key(self, m: Monomial):
        """Sort key: ``key(m1) > key(m2)`` iff ``m1 > m2``."""
        k = self._cache.get(m)
        if k is None:
            if len(self._cache) > 1 << 20:
                self._cache.clear()
            k = self._cache[m] = _order_key(self, m)
        return k

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        if len(m1) != self.nvars or len(m2) != self.nvars:
            raise ContextMismatchError("monomial length does not match the order")
        k1, k2 = self.key(m1), self.key(m2)
        return GT if k1 > k2 else LT if k1 < k2 else EQ


def _grevlex_key(m: Monomial, prio: Sequence[int]):
    return (sum(m[i] for i in prio),) + tuple(-m[i] for i in reversed(prio))


def _order_key(order: MonomialOrder, m: Monomial):
    if order.block is None:
        return _grevlex_key(m, order.priority)
    b = order.block
    return (_grevlex_key(m, order.priority[:b]), _grevlex_key(m, order.priority[b:]))


def compare(m1: Monomial, m2: Monomial, order: MonomialOrder) -> int:
    """Three-way comparison, returns one of ``LT``, ``EQ``, ``GT``."""
    return order.compare(m1, m2)


# --------------------------------------------------------------------------
# rings and polynomials

@dataclass(frozen=True)
class Ring:
    """Polynomial ring Q[variables] with a fixed monomial order."""

    variables: Tuple[str, ...]
    order: MonomialOrder = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        names = tuple(self.variables)
        object.__setattr__(self, "variables", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if any(not v for v in names) or len(set(names)) != len(names):
            raise ValueError("variable names must be unique and nonempty")
        if self.order is None:
            object.__setattr__(self, "order", MonomialOrder.grevlex(len(names)))
        elif self.order.nvars != len(names):
            raise ContextMismatchError("order is defined on a different number of variables")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.variables, order)

    def grevlex_by_names(self, names: Sequence[str]) -> MonomialOrder:
        """Grevlex with the given names ranked highest-first."""
        return MonomialOrder.grevlex(self.nvars, [self.index(n) for n in names])

    def one(self) -> Monomial:
        return (0,) * self.nvars

    def var(self, name: str) -> Monomial:
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return tuple(e)

    def monomial(self, spec: str | Dict[str, int]) -> Monomial:
        """Build a monomial from ``{"a1": 2, "b1": 1}`` or ``"a1^2*b1"``."""
        e = [0] * self.nvars
        if isinstance(spec, str):
            spec = spec.strip()
            if spec in ("", "1"):
                return tuple(e)
            items = {}
            for factor in spec.replace(" ", "").split("*"):
                name, _, power = factor.partition("^")
                items[name] = items.get(name, 0) + (int(power) if power else 1)
            spec = items
        for name, power in spec.items():
            e[self.index(name)] += power
        return tuple(e)

    def poly(self, terms: Dict[Monomial, Coefficient] | Iterable[Tuple[Monomial, Coefficient]]) -> "Polynomial":
        return Polynomial.from_terms(self, terms)

    def binomial(self, m1: Monomial, m2: Monomial) -> "Polynomial":
        return Polynomial.from_terms(self, [(m1, 1), (m2, -1)])

    def parse(self, text: str) -> "Polynomial":
        """Parse sums like ``"a1*b2 - a2*b1 + 3/2*e1^2"``."""
        text = text.replace(" ", "").replace("-", "+-")
        acc: Dict[Monomial, Fraction] = {}
        for chunk in filter(None, text.split("+")):
            sign = 1
            if chunk.startswith("-"):
                sign, chunk = -1, chunk[1:]
            coeff = Fraction(1)
            factors = chunk.split("*")
            names = []
            for f in factors:
                try:
                    coeff *= Fraction(f)
                except ValueError:
                    names.append(f)
            m = self.monomial("*".join(names)) if names else self.one()
            acc[m] = acc.get(m, Fraction(0)) + sign * coeff
        return Polynomial.from_terms(self, acc)

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.variables, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


class Polynomial:
    """Immutable polynomial; ``terms`` sorted by decreasing monomial order."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Tuple[Tuple[Monomial, Fraction], ...]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: Ring, terms) -> "Polynomial":
        acc: Dict[Monomial, Fraction] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for m, c in items:
            m = tuple(m)
            if len(m) != ring.nvars:
                raise ContextMismatchError("exponent vector length does not match the ring")
            acc[m] = acc.get(m, 0) + Fraction(c)
        return cls._from_dict(ring, acc)

    @classmethod
    def _from_dict(cls, ring: Ring, acc: Dict[Monomial, Fraction]) -> "Polynomial":
        key = ring.order.key
        items = sorted(((m, c) for m, c in acc.items() if c), key=lambda t: key(t[0]), reverse=True)
        return cls(ring, tuple(items))

    @classmethod
    def zero(cls, ring: Ring) -> "Polynomial":
        return cls(ring, ())

    # -- basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def lm(self) -> Monomial:
        return self.terms[0][0]

    @property
    def lc(self) -> Fraction:
        return self.terms[0][1]

    def monomials(self) -> Tuple[Monomial, ...]:
        return tuple(m for m, _ in self.terms)

    def as_dict(self) -> Dict[Monomial, Fraction]:
        return dict(self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m, _ in self.terms}) <= 1

    def degree(self) -> int:
        return max((sum(m) for m, _ in self.terms), default=-1)

    def reorder(self, ring: Ring) -> "Polynomial":
        """Same polynomial viewed in ``ring`` (same variables, maybe another order)."""
        if ring.variables != self.ring.variables:
            raise ContextMismatchError("rings have different variables")
        return Polynomial._from_dict(ring, dict(self.terms))

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lc
        return Polynomial(self.ring, tuple((m, a / c) for m, a in self.terms))

    # -- arithmetic
    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise ContextMismatchError("polynomials from different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return Polynomial._from_dict(self.ring, acc)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: Coefficient, m: Monomial | None = None) -> "Polynomial":
        """Return ``c * x^m * self`` (order is preserved by multiplication)."""
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.ring)
        if m is None:
            return Polynomial(self.ring, tuple((t, a * c) for t, a in self.terms))
        return Polynomial(self.ring, tuple((monomial_mul(t, m), a * c) for t, a in self.terms))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        acc: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = monomial_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial._from_dict(self.ring, acc)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and other.ring.variables == self.ring.variables \
            and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = self.ring.format_monomial(m)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)


@dataclass(frozen=True)
class Binomial:
    """``lead - trail`` with ``lead > trail`` in the ring's order."""

    ring: Ring
    lead: Monomial
    trail: Monomial

    def __post_init__(self):
        if self.lead == self.trail:
            raise ValueError("a binomial needs two distinct monomials")
        if self.ring.order.compare(self.lead, self.trail) != GT:
            lead, trail = self.trail, self.lead
            object.__setattr__(self, "lead", lead)
            object.__setattr__(self, "trail", trail)

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "Binomial":
        if len(f) != 2 or {abs(c) for _, c in f.terms} != {1} or f.terms[0][1] != -f.terms[1][1]:
            raise ValueError(f"not a pure difference of monomials: {f}")
        return cls(f.ring, f.terms[0][0], f.terms[1][0])

    def polynomial(self) -> Polynomial:
        return Polynomial(self.ring, ((self.lead, Fraction(1)), (self.trail, Fraction(-1))))

    def __str__(self):
        return f"{self.ring.format_monomial(self.lead)} - {self.ring.format_monomial(self.trail)}"


# --------------------------------------------------------------------------
# division

def reduce_step_divisor(m: Monomial, leads: Sequence[Monomial]) -> int:
    for k, lm in enumerate(leads):
        if all(a <= b for a, b in zip(lm, m)):
            return k
    return -1


def normal_form(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Fully reduce ``f`` modulo ``basis`` (multivariate division remainder).

    The largest reducible term is eliminated first and divisors are tried in
    list order, so the result is deterministic.
    """
    ring = f.ring
    for g in basis:
        f._check(g)
    basis = [g for g in basis if g]
    if not basis or not f:
        return f
    leads = [g.lm for g in basis]
    key = ring.order.key
    p: Dict[Monomial, Fraction] = dict(f.terms)
    rem: Dict[Monomial, Fraction] = {}
    while p:
        m = max(p, key=key)
        c = p.pop(m)
        k = reduce_step_divisor(m, leads)
        if k < 0:
            rem[m] = c
            continue
        g = basis[k]
        q = monomial_quotient(m, g.lm)
        factor = c / g.lc
        for t, a in g.terms[1:]:
            tm = monomial_mul(t, q)
            v = p.get(tm, 0) - factor * a
            if v:
                p[tm] = v
            else:
                p.pop(tm, None)
    return Polynomial._from_dict(ring, rem)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lcm = monomial_lcm(f.lm, g.lm)
    return f.scale(1 / f.lc, monomial_quotient(lcm, f.lm)) - g.scale(1 / g.lc, monomial_quotient(lcm, g.lm))
