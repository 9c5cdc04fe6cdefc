"""Buchberger's algorithm, toric ideals by elimination, initial ideals."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .algebra import (ContextMismatchError, Monomial, MonomialOrder, Polynomial, Ring,
                      coprime, monomial_divides, monomial_lcm, normal_form, s_polynomial)
from .graphs import Graph, ResourceLimitError

MAX_PAIRS = 10 ** 6
MAX_BASIS = 10 ** 4


def minimalize(monomials: Sequence[Monomial]) -> List[Monomial]:
    """Drop duplicates and every monomial divisible by another one.

    Output is sorted by (degree, exponent vector) so it is independent of the
    input order.
    """
    ms = sorted(set(monomials), key=lambda m: (sum(m), m))
    out: List[Monomial] = []
    for m in ms:
        if not any(monomial_divides(g, m) for g in out):
            out.append(m)
    return out


@dataclass(frozen=True)
class MonomialIdeal:
    ring: Ring
    gens: Tuple[Monomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(minimalize(self.gens)))

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def __len__(self):
        return len(self.gens)

    def contains(self, m: Monomial) -> bool:
        return any(monomial_divides(g, m) for g in self.gens)

    def degrees(self) -> List[int]:
        return sorted({sum(g) for g in self.gens})

    def format(self) -> List[str]:
        return [self.ring.format_monomial(g) for g in self.gens]

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.ring.variables == other.ring.variables \
            and set(self.gens) == set(other.gens)

    def __hash__(self):
        return hash(frozenset(self.gens))


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    generators: Tuple[Polynomial, ...]
    reduced: bool = True

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def reduce(self, f: Polynomial) -> Polynomial:
        if not self.generators:
            return f
        return normal_form(f, self.generators)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def leading_monomials(self) -> List[Monomial]:
        return [g.lm for g in self.generators]


def is_groebner(gens: Sequence[Polynomial]) -> bool:
    """Every S-polynomial reduces to zero (exhaustive; no criteria)."""
    gens = [g for g in gens if g]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if normal_form(s_polynomial(gens[i], gens[j]), gens):
                return False
    return True


def interreduce(gens: Sequence[Polynomial]) -> List[Polynomial]:
    """Reduced Groebner basis from a Groebner basis: minimal leads, tails reduced, monic."""
    gens = [g.monic() for g in gens if g]
    gens.sort(key=lambda g: g.ring.order.key(g.lm))
    minimal: List[Polynomial] = []
    for g in gens:
        if not any(monomial_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        out.append(normal_form(g, others).monic() if others else g)
    out.sort(key=lambda g: g.ring.order.key(g.lm), reverse=True)
    return out


def buchberger(gens: Sequence[Polynomial], ring: Ring | None = None, *, max_pairs: int = MAX_PAIRS,
               max_basis: int = MAX_BASIS, certify: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Normal selection strategy (smallest lcm degree, then FIFO) with Buchberger's
    coprime and chain criteria.  If ``ring`` is given the generators are first
    re-sorted for its order.
    """
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    polys = [g.reorder(ring) if g.ring != ring else g for g in gens]
    for g in polys:
        if g.ring.variables != ring.variables:
            raise ContextMismatchError("generators from different rings")
    basis: List[Polynomial] = []
    queue: List[Tuple[int, int, int, int]] = []
    pending = set()
    counter = 0

    def add(h: Polynomial):
        nonlocal counter
        if len(basis) >= max_basis:
            raise ResourceLimitError("basis-size", max_basis)
        basis.append(h.monic())
        k = len(basis) - 1
        for i in range(k):
            lcm = monomial_lcm(basis[i].lm, basis[k].lm)
            heapq.heappush(queue, (sum(lcm), counter, i, k))
            pending.add((i, k))
            counter += 1
            if len(pending) > max_pairs:
                raise ResourceLimitError("pair-queue", max_pairs)

    for g in polys:
        if g:
            r = normal_form(g, basis) if basis else g
            if r:
                add(r)

    while queue:
        _, _, i, j = heapq.heappop(queue)
        pending.discard((i, j))
        fi, fj = basis[i], basis[j]
        if coprime(fi.lm, fj.lm):
            continue
        lcm = monomial_lcm(fi.lm, fj.lm)
        if _chain_criterion(i, j, lcm, basis, pending):
            continue
        r = normal_form(s_polynomial(fi, fj), basis)
        if r:
            add(r)

    reduced = interreduce(basis)
    if certify and not is_groebner(reduced):
        raise AssertionError("Groebner basis certificate failed")
    return GroebnerBasis(ring, tuple(reduced), True)


def _chain_criterion(i, j, lcm, basis, pending) -> bool:
    for k, g in enumerate(basis):
        if k in (i, j):
            continue
        if not monomial_divides(g.lm, lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def ideal_equal(gb1: GroebnerBasis, gb2: GroebnerBasis) -> bool:
    """Each generator of either basis reduces to zero modulo the other."""
    if gb1.ring.variables != gb2.ring.variables:
        raise ContextMismatchError("bases live in different rings")
    a = [g.reorder(gb2.ring) for g in gb1.generators]
    b = [g.reorder(gb1.ring) for g in gb2.generators]
    return all(gb2.contains(g) for g in a) and all(gb1.contains(g) for g in b)


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    return MonomialIdeal(gb.ring, tuple(gb.leading_monomials()))


def elimination_ring(g: Graph, ring: Ring) -> Tuple[Ring, List[int]]:
    """K[V, E] with V > E blockwise; returns the ring and the positions of E."""
    vnames = [f"_v:{v}" for v in g.vertices]
    names = tuple(vnames) + ring.variables
    nv = len(vnames)
    edge_prio = [nv + i for i in ring.order.priority]
    order = MonomialOrder.elimination(len(names), list(range(nv)), edge_prio)
    return Ring(names, order), list(range(nv, len(names)))


def toric_ideal(g: Graph, ring: Ring | None = None, **caps) -> GroebnerBasis:
    """Reduced Groebner basis of the toric ideal of ``g`` in ``ring``.

    Computed by eliminating the vertex variables from <e - u*v : e = uv>
    under a block order whose edge block uses ``ring``'s order; the basis
    elements free of vertex variables are the reduced basis of the toric ideal.
    """
    ring = ring or g.ring()
    if ring.variables != g.edge_names:
        raise ContextMismatchError("ring variables must be the graph's edge names")
    if ring.order.block is not None:
        raise ValueError("target order must be a grevlex order on the edges")
    big, epos = elimination_ring(g, ring)
    nv = len(g.vertices)
    vpos = {v: i for i, v in enumerate(g.vertices)}
    gens = []
    for k, (_, (u, v)) in enumerate(g.edges):
        e = [0] * big.nvars
        e[nv + k] = 1
        m = [0] * big.nvars
        m[vpos[u]] += 1
        m[vpos[v]] += 1
        gens.append(big.binomial(tuple(m), tuple(e)))
    gb = buchberger(gens, big, certify=False, **caps)
    out = []
    for p in gb.generators:
        if all(not any(m[:nv]) for m, _ in p.terms):
            out.append(Polynomial.from_terms(ring, [(m[nv:], c) for m, c in p.terms]))
    out = interreduce(out)
    if not is_groebner(out):
        raise AssertionError("toric Groebner basis certificate failed")
    return GroebnerBasis(ring, tuple(out), True)


def change_order(gb: GroebnerBasis, ring: Ring, **caps) -> GroebnerBasis:
    return buchberger(list(gb.generators), ring, **caps)
