"""Hilbert series and graded Betti numbers of monomial quotients R/I.

Four independent routes to Betti numbers are provided:

* :func:`betti_from_linear_quotients` -- closed formula from a linear-quotient order;
* :func:`betti_taylor` -- homology of the Taylor complex, strand by strand
  (one strand per lcm of a generator subset);
* :func:`betti_lyubeznik` -- the same strands on the Lyubeznik subcomplex;
* :func:`betti_koszul_monomial` -- reduced homology of the upper Koszul
  simplicial complexes over the lcm lattice.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import Monomial, monomial_divides, monomial_lcm, monomial_quotient
from .graphs import ResourceLimitError
from .groebner import MonomialIdeal, minimalize
from .linalg import rank

IntPoly = List[int]  # coefficient list, index = degree

TAYLOR_MAX_GENS = 22
LCM_LATTICE_CAP = 400_000


# --------------------------------------------------------------------------
# integer polynomials in one variable

def poly_trim(p: Sequence[int]) -> IntPoly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [0]


def poly_add(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return poly_trim(out)


def poly_mul(p: Sequence[int], q: Sequence[int]) -> IntPoly:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_shift(p: Sequence[int], k: int) -> IntPoly:
    return poly_trim([0] * k + list(p))


def poly_divide_one_minus_x(p: Sequence[int]) -> IntPoly:
    """Exact quotient p / (1 - x); requires p(1) == 0."""
    if sum(p) != 0:
        raise ArithmeticError("not divisible by 1 - x")
    # p = (1 - x) q  =>  q_k = p_0 + ... + p_k
    q, acc = [], 0
    for c in p[:-1]:
        acc += c
        q.append(acc)
    return poly_trim(q or [0])


def poly_degree(p: Sequence[int]) -> int:
    p = poly_trim(p)
    return -1 if p == [0] else len(p) - 1


def one_minus_x_power(k: int) -> IntPoly:
    return [(-1) ** i * comb(k, i) for i in range(k + 1)]


def format_poly(p: Sequence[int], var: str = "x") -> str:
    terms = []
    for i, c in enumerate(p):
        if not c:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        a = abs(c)
        body = str(a) if not mono else mono if a == 1 else f"{a}{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


# --------------------------------------------------------------------------
# Hilbert series

@dataclass(frozen=True)
class HilbertData:
    """HS(R/I) = numerator / (1-x)^nvars = h / (1-x)^krull_dim with h(1) != 0."""

    nvars: int
    numerator: Tuple[int, ...]
    h: Tuple[int, ...]
    krull_dim: int

    @property
    def deg_h(self) -> int:
        return poly_degree(self.h)

    @property
    def deg_numerator(self) -> int:
        return poly_degree(self.numerator)

    def hilbert_function(self, d: int) -> int:
        """dim_K (R/I)_d from the reduced series."""
        k = self.krull_dim
        if k == 0:
            return self.h[d] if d < len(self.h) else 0
        return sum(c * comb(d - i + k - 1, k - 1) for i, c in enumerate(self.h) if i <= d)

    def series_text(self) -> str:
        return f"({format_poly(self.h)})/(1-x)^{self.krull_dim}"

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "numerator": list(self.numerator), "h": list(self.h),
                "deg_h": self.deg_h, "krull_dim": self.krull_dim}


def hilbert_from_numerator(numerator: Sequence[int], nvars: int) -> HilbertData:
    n = poly_trim(numerator)
    h, mult = n, 0
    while sum(h) == 0 and h != [0]:
        h = poly_divide_one_minus_x(h)
        mult += 1
    return HilbertData(nvars, tuple(n), tuple(h), nvars - mult)


def hilbert_numerator(ideal: MonomialIdeal | Sequence[Monomial], nvars: int | None = None) -> HilbertData:
    """Numerator of the Hilbert series by pivot-variable recursion.

    With pivot variable x: N(I) = N(I + <x>) + t * N(I : x), where the
    pivot is the variable dividing the most generators.
    """
    if isinstance(ideal, MonomialIdeal):
        gens, nvars = ideal.gens, ideal.nvars
    else:
        gens = tuple(minimalize(ideal))
    cache: Dict[frozenset, IntPoly] = {}
    num = _hilbert_rec(tuple(gens), cache)
    return hilbert_from_numerator(num, nvars)


def _hilbert_rec(gens: Tuple[Monomial, ...], cache) -> IntPoly:
    if not gens:
        return [1]
    key = frozenset(gens)
    if key in cache:
        return cache[key]
    nvars = len(gens[0])
    counts = [0] * nvars
    for g in gens:
        for v, e in enumerate(g):
            if e:
                counts[v] += 1
    pivot = max(range(nvars), key=lambda v: (counts[v], -v))
    if counts[pivot] <= 1:
        out = [1]
        for g in gens:
            out = poly_mul(out, [1] + [0] * (sum(g) - 1) + [-1])
        cache[key] = out
        return out
    xv = tuple(1 if v == pivot else 0 for v in range(nvars))
    plus = tuple(minimalize([g for g in gens if not g[pivot]] + [xv]))
    colon = tuple(minimalize([g[:pivot] + (max(g[pivot] - 1, 0),) + g[pivot + 1:] for g in gens]))
    out = poly_add(_hilbert_rec(plus, cache), poly_shift(_hilbert_rec(colon, cache), 1))
    cache[key] = out
    return out


# --------------------------------------------------------------------------
# Betti tables

@dataclass
class BettiTable:
    """Sparse graded Betti numbers beta_{i,j} of R/I with a provenance tag per entry."""

    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)
    provenance: Dict[Tuple[int, int], str] = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), v in self.entries.items():
            if v < 0 or i < 0:
                raise ValueError(f"bad Betti entry beta_{i},{j} = {v}")
            if i == 0 and v and (j, v) != (0, 1):
                raise ValueError("in homological degree 0 only beta_{0,0} = 1 is allowed")

    @classmethod
    def from_dict(cls, d: Dict[Tuple[int, int], int], tag: str) -> "BettiTable":
        e = {k: v for k, v in d.items() if v}
        return cls(e, {k: tag for k in e})

    def __getitem__(self, ij) -> int:
        return self.entries.get(ij, 0)

    def nonzero(self) -> List[Tuple[int, int]]:
        return sorted(k for k, v in self.entries.items() if v)

    @property
    def reg(self) -> int:
        return max((j - i for i, j in self.nonzero()), default=0)

    @property
    def pdim(self) -> int:
        return max((i for i, _ in self.nonzero()), default=0)

    def rows(self) -> List[int]:
        return sorted({j - i for i, j in self.nonzero()})

    def row(self, k: int) -> Dict[int, int]:
        return {i: v for (i, j), v in self.entries.items() if v and j - i == k}

    def totals(self) -> Dict[int, int]:
        out: Dict[int, int] = defaultdict(int)
        for (i, _), v in self.entries.items():
            out[i] += v
        return dict(out)

    def numerator(self) -> IntPoly:
        """1 + sum_{i>=1,j} (-1)^i beta_{i,j} x^j, i.e. the K-polynomial of R/I."""
        top = max((j for _, j in self.nonzero()), default=0)
        out = [0] * (top + 1)
        for (i, j), v in self.entries.items():
            out[j] += (-1) ** i * v
        return poly_trim(out)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and \
            {k: v for k, v in self.entries.items() if v} == {k: v for k, v in other.entries.items() if v}

    def diagram(self) -> str:
        """Text diagram: rows j - i, columns i, '.' for zero, with a total row."""
        nz = self.nonzero()
        if not nz:
            return "(zero)"
        pd = self.pdim
        rows = range(0, self.reg + 1)
        cols = range(0, pd + 1)
        tot = self.totals()
        cells = [[""] + [str(i) for i in cols], ["total:"] + [str(tot.get(i, 0)) for i in cols]]
        for k in rows:
            cells.append([f"{k}:"] + [str(self[(i, i + k)]) if self[(i, i + k)] else "." for i in cols])
        widths = [max(len(r[c]) for r in cells) for c in range(len(cells[0]))]
        lines = []
        for r in cells:
            lines.append(" ".join(s.rjust(w) for s, w in zip(r, widths)).rstrip())
        return "\n".join(lines)

    @classmethod
    def from_diagram(cls, text: str, tag: str = "fixture") -> "BettiTable":
        """Parse a diagram as printed by :meth:`diagram` (or by Macaulay2)."""
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        cols = [int(c) for c in lines[0]]
        entries = {}
        for parts in lines[1:]:
            if parts[0] == "total:":
                continue
            k = int(parts[0].rstrip(":"))
            for i, s in zip(cols, parts[1:]):
                if s not in (".", "0"):
                    entries[(i, i + k)] = int(s)
        return cls.from_dict(entries, tag)

    def to_json(self) -> dict:
        return {"entries": [[i, j, v, self.provenance.get((i, j), "")] for (i, j), v in sorted(self.entries.items()) if v],
                "reg": self.reg, "pdim": self.pdim}

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        t = cls()
        for i, j, v, tag in data["entries"]:
            t.entries[(i, j)] = v
            t.provenance[(i, j)] = tag
        return t


def extremal_betti(table: BettiTable) -> List[Tuple[int, int]]:
    """Nonzero (a, b) with beta_{i,j} = 0 whenever i >= a, j > b and j - i >= b - a."""
    nz = table.nonzero()
    out = []
    for a, b in nz:
        if not any(i >= a and j > b and j - i >= b - a for i, j in nz):
            out.append((a, b))
    return sorted(out)


def invariants_from_unique_extremal(pos: Tuple[int, int], nvars: int, krull_dim: int) -> Tuple[int, int, int]:
    """(reg, pdim, deg h) when beta_{a,b} is the only extremal Betti number."""
    a, b = pos
    return b - a, a, b - nvars + krull_dim


# --------------------------------------------------------------------------
# linear quotients

@dataclass(frozen=True)
class LinearQuotientCertificate:
    gens: Tuple[Monomial, ...]
    colon_vars: Tuple[Tuple[int, ...], ...]  # variable indices; empty for the first generator

    @property
    def n(self) -> Tuple[int, ...]:
        return tuple(len(v) for v in self.colon_vars)

    @property
    def max_n(self) -> int:
        return max(self.n[1:], default=0)


@dataclass(frozen=True)
class LinearQuotientFailure:
    position: int  # 0-based index p of the generator whose colon ideal fails
    witness: Monomial

    def __bool__(self):
        return False


def colon_generators(previous: Sequence[Monomial], g: Monomial) -> List[Monomial]:
    """Minimal generators of <previous> : <g>, namely lcm(h, g) / g minimalized."""
    return minimalize([monomial_quotient(monomial_lcm(h, g), g) for h in previous])


def check_linear_quotients(ideal: MonomialIdeal, order: Sequence[Monomial]):
    """Certificate if every successive colon ideal is generated by variables, else the first failure."""
    order = [tuple(m) for m in order]
    if sorted(order) != sorted(ideal.gens) or len(set(order)) != len(order):
        raise ValueError("order must be a permutation of the minimal generators")
    colon_vars = [()]
    for p in range(1, len(order)):
        cols = colon_generators(order[:p], order[p])
        bad = [c for c in cols if sum(c) != 1]
        if bad:
            return LinearQuotientFailure(p, bad[0])
        colon_vars.append(tuple(sorted(c.index(1) for c in cols)))
    return LinearQuotientCertificate(tuple(order), tuple(colon_vars))


def find_linear_quotient_order(ideal: MonomialIdeal, exhaustive_max: int = 8):
    """Search for a linear-quotient order.

    Exhaustive up to ``exhaustive_max`` generators; above that a greedy pass
    (grow the prefix with any generator whose colon is variable-generated,
    trying each starting generator).  ``None`` from the greedy pass proves
    nothing.
    """
    gens = list(ideal.gens)
    if len(gens) <= 1:
        return check_linear_quotients(ideal, gens)
    if len(gens) <= exhaustive_max:
        for perm in itertools.permutations(gens):
            cert = check_linear_quotients(ideal, perm)
            if cert:
                return cert
        return None
    for first in sorted(gens, key=lambda m: (sum(m), m)):
        chosen = [first]
        rest = [g for g in gens if g != first]
        while rest:
            for g in sorted(rest, key=lambda m: (sum(m), m)):
                if all(sum(c) == 1 for c in colon_generators(chosen, g)):
                    chosen.append(g)
                    rest.remove(g)
                    break
            else:
                break
        if not rest:
            return check_linear_quotients(ideal, chosen)
    return None


def betti_from_linear_quotients(cert: LinearQuotientCertificate) -> BettiTable:
    """beta_{i+1,i+j}(R/I) = sum over generators of degree j of C(n_p, i)."""
    d: Dict[Tuple[int, int], int] = defaultdict(int)
    d[(0, 0)] = 1
    for g, n in zip(cert.gens, cert.n):
        j = sum(g)
        for i in range(n + 1):
            d[(i + 1, i + j)] += comb(n, i)
    return BettiTable.from_dict(d, "formula")


# --------------------------------------------------------------------------
# chain complexes on sets of faces

def restricted_homology(faces: Iterable[Tuple[int, ...]], modular: bool = False,
                        sizes: Optional[Iterable[int]] = None) -> Dict[int, int]:
    """Homology dimensions, indexed by face size, of the complex spanned by ``faces``.

    Faces are sorted tuples; the boundary drops one element with alternating
    signs and discards faces not in the set.  For a simplicial complex
    (including the empty face) this is reduced homology shifted by one; for a
    relative complex it is the relative homology.
    """
    by_size: Dict[int, List[Tuple[int, ...]]] = defaultdict(list)
    for f in faces:
        by_size[len(f)].append(f)
    index = {s: {f: k for k, f in enumerate(fs)} for s, fs in by_size.items()}
    ranks: Dict[int, int] = {}

    def boundary_rank(s: int) -> int:
        if s in ranks:
            return ranks[s]
        if s not in by_size or s - 1 not in by_size:
            ranks[s] = 0
            return 0
        low = index[s - 1]
        rows = []
        for f in by_size[s]:
            row = {}
            for k in range(s):
                c = low.get(f[:k] + f[k + 1:])
                if c is not None:
                    row[c] = -1 if k % 2 else 1
            if row:
                rows.append(row)
        ranks[s] = rank(rows, modular)
        return ranks[s]

    wanted = sorted(by_size) if sizes is None else sorted(sizes)
    out = {}
    for s in wanted:
        n = len(by_size.get(s, ()))
        if not n:
            continue
        h = n - boundary_rank(s) - boundary_rank(s + 1)
        if h:
            out[s] = h
    return out


# --------------------------------------------------------------------------
# Taylor complex oracle

def betti_taylor(ideal: MonomialIdeal, max_gens: int = TAYLOR_MAX_GENS) -> BettiTable:
    """Betti numbers of R/I from the Taylor complex.

    The strand of multidegree b consists of the generator subsets with lcm b;
    the differential keeps a face of a subset only when the lcm does not drop.
    """
    gens = list(ideal.gens)
    m = len(gens)
    if m > max_gens:
        raise ResourceLimitError("taylor-generators", max_gens, f"ideal has {m} generators")
    zero = (0,) * ideal.nvars
    lcms = [zero] * (1 << m)
    groups: Dict[Monomial, List[Tuple[int, ...]]] = defaultdict(list)
    groups[zero].append(())
    for mask in range(1, 1 << m):
        low = (mask & -mask).bit_length() - 1
        l = monomial_lcm(lcms[mask & (mask - 1)], gens[low])
        lcms[mask] = l
        groups[l].append(tuple(k for k in range(m) if mask >> k & 1))
    d: Dict[Tuple[int, int], int] = defaultdict(int)
    for b, faces in groups.items():
        for s, h in restricted_homology(faces).items():
            d[(s, sum(b))] += h
    return BettiTable.from_dict(d, "taylor")


LYUBEZNIK_MAX_FACES = 2_000_000


def lyubeznik_faces(gens: Sequence[Monomial], max_faces: int = LYUBEZNIK_MAX_FACES
                    ) -> Dict[Monomial, List[Tuple[int, ...]]]:
    """Faces of the Lyubeznik complex grouped by lcm.

    A subset i_1 < ... < i_k is admissible when no m_q with q < i_t divides
    lcm(m_{i_t}, ..., m_{i_k}) for any t.  Faces are grown by prepending
    smaller indices, so only the new first element needs checking.
    """
    m = len(gens)
    zero = (0,) * (len(gens[0]) if gens else 0)
    groups: Dict[Monomial, List[Tuple[int, ...]]] = defaultdict(list)
    groups[zero].append(())
    count = 1

    def blocked(p: int, l: Monomial) -> bool:
        return any(monomial_divides(gens[q], l) for q in range(p))

    stack = [((k,), tuple(gens[k])) for k in range(m) if not blocked(k, gens[k])]
    while stack:
        face, l = stack.pop()
        groups[l].append(face)
        count += 1
        if count > max_faces:
            raise ResourceLimitError("lyubeznik-faces", max_faces)
        for p in range(face[0] - 1, -1, -1):
            nl = monomial_lcm(l, gens[p])
            if not blocked(p, nl):
                stack.append(((p,) + face, nl))
    return groups


def betti_lyubeznik(ideal: MonomialIdeal, modular: bool = False,
                    max_faces: int = LYUBEZNIK_MAX_FACES) -> BettiTable:
    """Betti numbers of R/I from the strands of the Lyubeznik resolution.

    Same strand homology as the Taylor oracle on a much smaller subcomplex.
    Generators are taken by degree, which tends to keep the complex small.
    """
    gens = sorted(ideal.gens, key=lambda g: (sum(g), g))
    d: Dict[Tuple[int, int], int] = defaultdict(int)
    for b, faces in lyubeznik_faces(gens, max_faces).items():
        for s, h in restricted_homology(faces, modular).items():
            d[(s, sum(b))] += h
    return BettiTable.from_dict(d, "lyubeznik-probabilistic" if modular else "lyubeznik")


# --------------------------------------------------------------------------
# Koszul / lcm-lattice oracle

def lcm_lattice(gens: Sequence[Monomial], cap: int = LCM_LATTICE_CAP) -> List[Monomial]:
    """All lcms of nonempty generator subsets."""
    lattice: set = set()
    for g in gens:
        new = {monomial_lcm(l, g) for l in lattice}
        new.add(tuple(g))
        lattice |= new
        if len(lattice) > cap:
            raise ResourceLimitError("lcm-lattice", cap)
    return sorted(lattice, key=lambda m: (sum(m), m))


def upper_koszul_complex(ideal: MonomialIdeal, b: Monomial) -> List[Tuple[int, ...]]:
    """Faces S of supp(b) with x^(b - S) in I (closed under taking subsets)."""
    supp = [v for v, e in enumerate(b) if e]
    faces: List[Tuple[int, ...]] = []
    gens = ideal.gens

    def member(face):
        c = list(b)
        for v in face:
            c[v] -= 1
        return any(all(x <= y for x, y in zip(g, c)) for g in gens)

    def grow(face, start):
        faces.append(face)
        for k in range(start, len(supp)):
            f = face + (supp[k],)
            if member(f):
                grow(f, k + 1)

    if member(()):
        grow((), 0)
    return faces


def betti_koszul_monomial(ideal: MonomialIdeal, modular: bool = False,
                          lattice_cap: int = LCM_LATTICE_CAP) -> BettiTable:
    """beta_{i,b}(R/I) = reduced H_{i-2} of the upper Koszul complex at b, b in the lcm lattice."""
    d: Dict[Tuple[int, int], int] = defaultdict(int)
    d[(0, 0)] = 1
    for b in lcm_lattice(ideal.gens, lattice_cap):
        faces = upper_koszul_complex(ideal, b)
        if _is_cone(faces):
            continue
        for s, h in restricted_homology(faces, modular).items():
            # face size s <-> reduced homology in dimension s - 1 <-> i = s + 1
            d[(s + 1, sum(b))] += h
    return BettiTable.from_dict(d, "koszul-oracle-probabilistic" if modular else "koszul-oracle")


def _is_cone(faces: Sequence[Tuple[int, ...]]) -> bool:
    """Detect a cone point (then reduced homology vanishes)."""
    if not faces:
        return False
    fs = set(faces)
    maximal_candidates = set(itertools.chain.from_iterable(faces))
    for v in maximal_candidates:
        if all(f in fs if v in f else tuple(sorted(f + (v,))) in fs for f in faces):
            return True
    return False


def euler_consistent(table: BettiTable, hd: HilbertData) -> bool:
    return poly_trim(table.numerator()) == poly_trim(list(hd.numerator))
