"""Graphs with named edges, the named families, gluing, and closed even walks."""
from __future__ import annotations

import itertools
import json
import re
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .algebra import Binomial, Monomial, Ring, monomial_quotient, monomial_divides


class GraphError(ValueError):
    pass


class ResourceLimitError(RuntimeError):
    """A configurable cap was hit; the message names the cap."""

    def __init__(self, cap: str, limit, detail: str = ""):
        self.cap = cap
        self.limit = limit
        msg = f"resource cap '{cap}' exceeded (limit {limit})"
        super().__init__(f"{msg}: {detail}" if detail else msg)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph whose edges carry names.

    Edge names double as ring variables, and the order of ``edges`` is the
    default variable order.
    """

    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, Tuple[str, str]], ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((n, tuple(ends)) for n, ends in self.edges))
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise GraphError("duplicate vertex name")
        names = [n for n, _ in self.edges]
        if len(set(names)) != len(names):
            raise GraphError("duplicate edge name")
        seen = set()
        for n, (u, v) in self.edges:
            if not n:
                raise GraphError("empty edge name")
            if u == v:
                raise GraphError(f"loop at {u} (edge {n})")
            if u not in vset or v not in vset:
                raise GraphError(f"edge {n} has an endpoint outside the vertex set")
            pair = frozenset((u, v))
            if pair in seen:
                raise GraphError(f"parallel edge {n} between {u} and {v}")
            seen.add(pair)

    # -- queries
    @property
    def edge_names(self) -> Tuple[str, ...]:
        return tuple(n for n, _ in self.edges)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def ends(self, edge: str) -> Tuple[str, str]:
        for n, e in self.edges:
            if n == edge:
                return e
        raise GraphError(f"no edge named {edge!r}")

    def adjacency(self) -> Dict[str, List[Tuple[str, str]]]:
        """vertex -> list of (neighbour, edge name), in edge order."""
        adj: Dict[str, List[Tuple[str, str]]] = {v: [] for v in self.vertices}
        for n, (u, v) in self.edges:
            adj[u].append((v, n))
            adj[v].append((u, n))
        return adj

    def ring(self, order: str | Sequence[str] = "grevlex") -> Ring:
        """Edge ring K[E] with grevlex; ``order`` is a preset name or a ranking of edge names."""
        ring = Ring(self.edge_names)
        if isinstance(order, str):
            names = variable_priority(self, order)
        else:
            names = list(order)
        return ring.with_order(ring.grevlex_by_names(names))

    def vertex_degree_vector(self, m: Monomial) -> Tuple[int, ...]:
        """Image of an edge monomial under e -> u*v, as an exponent vector on vertices."""
        pos = {v: i for i, v in enumerate(self.vertices)}
        out = [0] * len(self.vertices)
        for (_, (u, v)), e in zip(self.edges, m):
            if e:
                out[pos[u]] += e
                out[pos[v]] += e
        return tuple(out)

    # -- io
    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [{"name": n, "ends": [u, v]} for n, (u, v) in self.edges]}

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "Graph":
        try:
            return cls(tuple(data["vertices"]),
                       tuple((e["name"], tuple(e["ends"])) for e in data["edges"]),
                       name=name or data.get("name", ""))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_dot(self) -> str:
        lines = [f"graph {_dot_id(self.name or 'G')} {{"]
        for v in self.vertices:
            lines.append(f"  {_dot_id(v)};")
        for n, (u, v) in self.edges:
            lines.append(f"  {_dot_id(u)} -- {_dot_id(v)} [label={_dot_id(n)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_id(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


# --------------------------------------------------------------------------
# families

def complete_bipartite_2t(t: int) -> Graph:
    """K_{2,t} labelled as inside G_t: a_i = x1 y_i, b_i = x2 y_i."""
    if t < 2:
        raise GraphError("K2t needs t >= 2")
    ys = [f"y{i}" for i in range(1, t + 1)]
    edges = [(f"a{i}", ("x1", f"y{i}")) for i in range(1, t + 1)]
    edges += [(f"b{i}", ("x2", f"y{i}")) for i in range(1, t + 1)]
    return Graph(("x1", "x2", *ys), tuple(edges), name=f"K2t({t})")


def gt_graph(t: int) -> Graph:
    """K_{2,t} with a triangle hung on each of x1 and x2.

    Edges are listed a1..at, f1..f3, e1..e3, b1..bt, which is also the
    variable ranking used for the family's grevlex order.
    """
    if t < 2:
        raise GraphError("Gt needs t >= 2")
    ys = [f"y{i}" for i in range(1, t + 1)]
    edges = [(f"a{i}", ("x1", f"y{i}")) for i in range(1, t + 1)]
    edges += [("f1", ("x2", "w1")), ("f2", ("w1", "w2")), ("f3", ("w2", "x2"))]
    edges += [("e1", ("x1", "z1")), ("e2", ("z1", "z2")), ("e3", ("z2", "x1"))]
    edges += [(f"b{i}", ("x2", f"y{i}")) for i in range(1, t + 1)]
    return Graph(("x1", "x2", *ys, "z1", "z2", "w1", "w2"), tuple(edges), name=f"Gt({t})")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs n >= 3")
    vs = tuple(f"x{i}" for i in range(1, n + 1))
    edges = tuple((f"e{i}", (vs[i - 1], vs[i % n])) for i in range(1, n + 1))
    return Graph(vs, edges, name=f"C{n}")


def c4r_graph(r: int) -> Graph:
    """r squares sharing the edge {x1, x2}.

    Square i is x1 - x2 - x_{2i+2} - x_{2i+1} - x1; its three private edges
    are numbered consecutively so that r = 1 is the 4-cycle e1 e2 e3 e4.
    """
    if r < 1:
        raise GraphError("C4r needs r >= 1")
    vs = tuple(f"x{i}" for i in range(1, 2 * r + 3))
    edges = [("e1", ("x1", "x2"))]
    for i in range(1, r + 1):
        p, q = f"x{2 * i + 1}", f"x{2 * i + 2}"
        edges += [(f"e{3 * i - 1}", ("x2", q)), (f"e{3 * i}", (q, p)), (f"e{3 * i + 1}", (p, "x1"))]
    return Graph(vs, tuple(edges), name=f"C4r({r})")


Z_EDGES = [(1, 2), (1, 3), (1, 7), (1, 8), (1, 9), (4, 5), (4, 6), (4, 7), (4, 8), (4, 9),
           (2, 3), (5, 6), (7, 8), (8, 10), (9, 10)]


def z_graph() -> Graph:
    vs = tuple(f"x{i}" for i in range(1, 11))
    edges = tuple((f"e{k}", (f"x{u}", f"x{v}")) for k, (u, v) in enumerate(Z_EDGES, 1))
    return Graph(vs, edges, name="Z")


# --------------------------------------------------------------------------
# gluing

_GEN = re.compile(r"#(\d+)$")


def _generation(g: Graph) -> int:
    gens = [int(m.group(1)) for s in (*g.vertices, *g.edge_names) if (m := _GEN.search(s))]
    return max(gens, default=0)


def glue_along_edge(g1: Graph, g2: Graph, e1: str, e2: str, flip: bool = False,
                    name: str = "") -> Graph:
    """Identify edge ``e2`` of ``g2`` with edge ``e1`` of ``g1``.

    The endpoints of ``e2`` (in their stored order) map onto those of ``e1``;
    ``flip`` swaps the pairing.  Surviving vertices and edges of ``g2`` get the
    suffix ``#k`` where ``k`` is one more than the highest generation already
    present in ``g1``.
    """
    u1, v1 = g1.ends(e1)
    u2, v2 = g2.ends(e2)
    if flip:
        u2, v2 = v2, u2
    k = _generation(g1) + 1
    vmap = {u2: u1, v2: v1}
    for v in g2.vertices:
        if v not in vmap:
            vmap[v] = f"{v}#{k}"
    vertices = list(g1.vertices) + [vmap[v] for v in g2.vertices if v not in (u2, v2)]
    edges = list(g1.edges)
    for n, (a, b) in g2.edges:
        if n == e2:
            continue
        edges.append((f"{n}#{k}", (vmap[a], vmap[b])))
    if len(set(vertices)) != len(vertices) or len({n for n, _ in edges}) != len(edges):
        raise GraphError("name collision while gluing")
    return Graph(tuple(vertices), tuple(edges), name=name or f"glue({g1.name},{g2.name})")


def glue_even_cycle(g: Graph, s: int, edge: str) -> Graph:
    """Glue a C_{2s} onto ``g`` along ``edge`` (canonical pairing)."""
    if s < 2:
        raise GraphError("the glued cycle needs length 2s >= 4")
    return glue_along_edge(g, cycle_graph(2 * s), edge, "e1", name=f"{g.name}+C{2 * s}@{edge}")


def grd_graph(r: int, d: int, edge: str = "b1") -> Graph:
    """Graph with regularity r and h-degree d built as in the main construction.

    r == d gives C4^(r); otherwise G_q with q = d - r + 1, followed by r - 4
    squares glued one after another along ``edge``.
    """
    if r == d:
        return c4r_graph(r)
    if not 4 <= r < d:
        raise GraphError("G_{r,d} is built for 4 <= r <= d")
    g = gt_graph(d - r + 1)
    for _ in range(r - 4):
        g = glue_even_cycle(g, 2, edge)
    return Graph(g.vertices, g.edges, name=f"Grd({r},{d})")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    t: int = 0
    r: int = 0
    n: int = 0
    d: int = 0
    s: int = 0
    edge: str = ""
    base: "FamilySpec | None" = None

    def validate(self):
        k = self.kind
        if k in ("K2t", "Gt") and self.t < 2:
            raise GraphError(f"{k} needs t >= 2")
        if k == "C4r" and self.r < 1:
            raise GraphError("C4r needs r >= 1")
        if k == "Cn" and self.n < 3:
            raise GraphError("Cn needs n >= 3")
        if k == "Glue" and (self.base is None or 2 * self.s < 4):
            raise GraphError("Glue needs a base family and 2s >= 4")
        if k == "Grd" and not (4 <= self.r <= self.d or 1 <= self.r == self.d):
            raise GraphError("Grd needs 4 <= r <= d (or r == d)")
        if k not in ("K2t", "Gt", "C4r", "Cn", "Z", "Glue", "Grd"):
            raise GraphError(f"unknown family {k!r}")

    def label(self) -> str:
        return {
            "K2t": f"K2t({self.t})", "Gt": f"Gt({self.t})", "C4r": f"C4r({self.r})",
            "Cn": f"C{self.n}", "Z": "Z", "Grd": f"Grd({self.r},{self.d})",
        }.get(self.kind) or f"Glue({self.base.label() if self.base else ''},C{2 * self.s},{self.edge})"


def build_family(spec: FamilySpec) -> Graph:
    spec.validate()
    k = spec.kind
    if k == "K2t":
        return complete_bipartite_2t(spec.t)
    if k == "Gt":
        return gt_graph(spec.t)
    if k == "C4r":
        return c4r_graph(spec.r)
    if k == "Cn":
        return cycle_graph(spec.n)
    if k == "Z":
        return z_graph()
    if k == "Grd":
        return grd_graph(spec.r, spec.d)
    base = build_family(spec.base)
    return glue_even_cycle(base, spec.s, spec.edge or base.edge_names[0])


def variable_priority(g: Graph, preset: str) -> List[str]:
    """Edge names ranked highest first for a named order preset.

    ``grevlex`` keeps the edge order of the graph.  ``paper-gt`` ranks
    a1 > .. > at > f1 > f2 > f3 > e1 > e2 > e3 > b1 > .. > bt and appends any
    other edges in graph order.
    """
    names = list(g.edge_names)
    if preset == "grevlex":
        return names
    if preset == "paper-gt":
        def rank(n):
            m = re.fullmatch(r"([afeb])(\d+)", n)
            if not m:
                return (4, names.index(n))
            return ("afeb".index(m.group(1)), int(m.group(2)))
        return sorted(names, key=rank)
    raise GraphError(f"unknown order preset {preset!r}")


# --------------------------------------------------------------------------
# bipartiteness

def bipartite_components(g: Graph) -> Tuple[int, int]:
    """(number of connected components, number of bipartite components)."""
    adj = g.adjacency()
    colour: Dict[str, int] = {}
    total = bip = 0
    for start in g.vertices:
        if start in colour:
            continue
        total += 1
        ok = True
        colour[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, _ in adj[u]:
                if v not in colour:
                    colour[v] = 1 - colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    ok = False
        bip += ok
    return total, bip


def is_connected(g: Graph) -> bool:
    return bipartite_components(g)[0] == 1


# --------------------------------------------------------------------------
# walks

def canonical_walk(edges: Sequence[str], key=None) -> Tuple[str, ...]:
    """Least rotation of the walk or of its reversal (by ``key`` on edge names)."""
    seq = list(edges)
    if key is None:
        key = lambda s: s  # noqa: E731
    n = len(seq)
    if n == 0:
        return ()
    cands = []
    for s in (seq, seq[::-1]):
        for k in range(n):
            rot = s[k:] + s[:k]
            cands.append(rot)
    best = min(cands, key=lambda c: [key(x) for x in c])
    return tuple(best)


@dataclass(frozen=True)
class Walk:
    edges: Tuple[str, ...]
    closed: bool = True

    def canonical(self, key=None) -> "Walk":
        return Walk(canonical_walk(self.edges, key), self.closed)

    def __len__(self):
        return len(self.edges)


def is_closed_walk(g: Graph, edges: Sequence[str]) -> bool:
    """Edges form a closed walk (consecutive edges meet, the last meets the first consistently)."""
    if not edges:
        return False
    ends = [g.ends(e) for e in edges]
    for start in ends[0]:
        cur = start
        ok = True
        for u, v in ends:
            if cur == u:
                cur = v
            elif cur == v:
                cur = u
            else:
                ok = False
                break
        if ok and cur == start:
            return True
    return False


def _walk_sides(edges: Sequence[str]) -> Tuple[Dict[str, int], Dict[str, int]]:
    odd: Dict[str, int] = {}
    even: Dict[str, int] = {}
    for j, e in enumerate(edges):
        side = odd if j % 2 == 0 else even
        side[e] = side.get(e, 0) + 1
    return odd, even


def enumerate_closed_even_walks(g: Graph, max_len: int, limit: int = 2_000_000) -> List[Walk]:
    """Closed even walks of length <= ``max_len`` with nonzero binomial.

    One canonical representative per rotation/reversal class, where the
    canonical form uses the graph's edge order.  ``limit`` caps the number of
    partial walks explored.
    """
    if max_len < 4 or max_len % 2:
        raise ValueError("max_len must be even and at least 4")
    index = {n: i for i, n in enumerate(g.edge_names)}
    adj = g.adjacency()
    found = set()
    explored = 0

    for first, (u0, v0) in g.edges:
        i0 = index[first]
        # the minimal edge of the walk is ``first`` and the walk starts there
        for start, nxt in ((u0, v0), (v0, u0)):
            stack = [(nxt, [first])]
            while stack:
                cur, path = stack.pop()
                explored += 1
                if explored > limit:
                    raise ResourceLimitError("walk-count", limit, f"while enumerating walks of length <= {max_len}")
                if cur == start and len(path) % 2 == 0 and len(path) >= 4:
                    odd, even = _walk_sides(path)
                    if odd != even:
                        found.add(canonical_walk(path, key=index.__getitem__))
                if len(path) == max_len:
                    continue
                for w, e in adj[cur]:
                    if index[e] < i0:
                        continue
                    stack.append((w, path + [e]))
    return [Walk(w) for w in sorted(found, key=lambda w: (len(w), [index[e] for e in w]))]


def walk_monomials(ring: Ring, edges: Sequence[str]) -> Tuple[Monomial, Monomial]:
    """(product over odd positions, product over even positions), 1-based."""
    odd, even = _walk_sides(edges)
    return ring.monomial(odd), ring.monomial(even)


def walk_to_binomial(g: Graph, w: Walk | Sequence[str], ring: Ring | None = None) -> Binomial:
    edges = w.edges if isinstance(w, Walk) else tuple(w)
    if len(edges) % 2 or not is_closed_walk(g, edges):
        raise GraphError("walk_to_binomial needs a closed walk of even length")
    ring = ring or g.ring()
    m1, m2 = walk_monomials(ring, edges)
    if m1 == m2:
        raise GraphError("walk gives the zero binomial")
    b = Binomial(ring, m1, m2)
    if g.vertex_degree_vector(b.lead) != g.vertex_degree_vector(b.trail):
        raise AssertionError("walk binomial is not in the toric ideal")
    return b


def divisors(m: Monomial) -> Iterable[Monomial]:
    return itertools.product(*(range(e + 1) for e in m))


def is_primitive(b: Binomial, in_ideal) -> bool:
    """Exhaustive scan of proper divisor pairs ``(g1 | lead, g2 | trail)``.

    ``in_ideal(g1, g2)`` decides whether ``g1 - g2`` lies in the ideal; pairs
    with ``g1 == g2`` (the zero binomial) are ignored.
    """
    for g1 in divisors(b.lead):
        for g2 in divisors(b.trail):
            if (g1, g2) == (b.lead, b.trail) or g1 == g2:
                continue
            if sum(g1) != sum(g2):
                continue  # the ideal is homogeneous
            if in_ideal(g1, g2):
                return False
    return True


def primitive_binomials_oracle(g: Graph, max_len: int, in_ideal, ring: Ring | None = None,
                               walk_limit: int = 2_000_000) -> Tuple[List[Binomial], List[Binomial]]:
    """Primitive walk binomials among closed even walks of length <= ``max_len``.

    Returns ``(primitive, rejected)``; both are deduplicated binomial lists.
    Completeness only holds relative to ``max_len``.
    """
    ring = ring or g.ring()
    seen = {}
    for w in enumerate_closed_even_walks(g, max_len, walk_limit):
        b = walk_to_binomial(g, w, ring)
        seen.setdefault((b.lead, b.trail), b)
    prim, rej = [], []
    for b in seen.values():
        (prim if is_primitive(b, in_ideal) else rej).append(b)
    return prim, rej
