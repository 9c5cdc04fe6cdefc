"""Content-addressed on-disk cache for toric Groebner bases.

File name: ``<sha256 hex>.tgb`` where the digest is taken over the canonical
JSON of ``{"algo": ALGO_VERSION, "graph": graph JSON, "order": [edge names,
highest first]}``.  All integers are big-endian:

    magic      4 bytes   b"TGGB"
    version    u16       FORMAT_VERSION
    nvars      u16
    names      nvars x (u16 length, utf-8 bytes)      ring variables in ring order
    priority   nvars x u16                            variable indices, highest first
    ngens      u32
    per generator:
      nterms   u32
      per term:
        num    i64       coefficient numerator
        den    u64       coefficient denominator (> 0)
        exps   nvars x u16

A basis whose coefficients or exponents do not fit these widths is simply
not cached.  Every load re-checks the S-pair certificate before use.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import struct
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .algebra import Polynomial, Ring
from .graphs import Graph
from .groebner import GroebnerBasis, interreduce, is_groebner, toric_ideal

log = logging.getLogger(__name__)

MAGIC = b"TGGB"
FORMAT_VERSION = 1
ALGO_VERSION = "toricgraph-gb-1"
ENV_VAR = "TORICGRAPH_CACHE"


class CacheFormatError(ValueError):
    pass


def cache_key(g: Graph, ring: Ring) -> str:
    order = [ring.variables[i] for i in ring.order.priority]
    blob = json.dumps({"algo": ALGO_VERSION, "graph": g.to_json(), "order": order},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def encode(gb: GroebnerBasis) -> bytes:
    ring = gb.ring
    out = [MAGIC, struct.pack(">HH", FORMAT_VERSION, ring.nvars)]
    for name in ring.variables:
        raw = name.encode()
        out.append(struct.pack(">H", len(raw)) + raw)
    out.append(struct.pack(f">{ring.nvars}H", *ring.order.priority))
    out.append(struct.pack(">I", len(gb.generators)))
    for p in gb.generators:
        out.append(struct.pack(">I", len(p.terms)))
        for m, c in p.terms:
            c = Fraction(c)
            out.append(struct.pack(f">qQ{ring.nvars}H", c.numerator, c.denominator, *m))
    return b"".join(out)


def decode(data: bytes) -> GroebnerBasis:
    try:
        return _decode(data)
    except struct.error as exc:
        raise CacheFormatError(f"truncated cache file: {exc}") from exc


def _decode(data: bytes) -> GroebnerBasis:
    if data[:4] != MAGIC:
        raise CacheFormatError("bad magic")
    pos = 4
    version, n = struct.unpack_from(">HH", data, pos)
    pos += 4
    if version != FORMAT_VERSION:
        raise CacheFormatError(f"unsupported format version {version}")
    names = []
    for _ in range(n):
        (ln,) = struct.unpack_from(">H", data, pos)
        pos += 2
        names.append(data[pos:pos + ln].decode())
        pos += ln
    prio = struct.unpack_from(f">{n}H", data, pos)
    pos += 2 * n
    base = Ring(tuple(names))
    ring = base.with_order(base.grevlex_by_names([names[i] for i in prio]))
    (ngens,) = struct.unpack_from(">I", data, pos)
    pos += 4
    term = struct.Struct(f">qQ{n}H")
    gens = []
    for _ in range(ngens):
        (nt,) = struct.unpack_from(">I", data, pos)
        pos += 4
        terms = []
        for _ in range(nt):
            num, den, *exps = term.unpack_from(data, pos)
            pos += term.size
            if den == 0:
                raise CacheFormatError("zero denominator")
            terms.append((tuple(exps), Fraction(num, den)))
        gens.append(Polynomial.from_terms(ring, terms))
    if pos != len(data):
        raise CacheFormatError("trailing bytes")
    return GroebnerBasis(ring, tuple(gens), True)


def _in_kernel(g: Graph, p: Polynomial) -> bool:
    if len(p.terms) != 2:
        return False
    (m1, c1), (m2, c2) = p.terms
    return c1 == -c2 and g.vertex_degree_vector(m1) == g.vertex_degree_vector(m2)


def default_dir() -> Optional[Path]:
    v = os.environ.get(ENV_VAR)
    return Path(v) if v else None


class GBCache:
    """Directory of cached toric bases; ``None`` directory disables caching."""

    def __init__(self, directory: Optional[os.PathLike] = None):
        self.dir = Path(directory) if directory else None
        self.hits = 0
        self.misses = 0

    def path(self, g: Graph, ring: Ring) -> Optional[Path]:
        return self.dir / f"{cache_key(g, ring)}.tgb" if self.dir else None

    def load(self, g: Graph, ring: Ring) -> Optional[GroebnerBasis]:
        p = self.path(g, ring)
        if p is None or not p.exists():
            return None
        try:
            gb = decode(p.read_bytes())
        except (CacheFormatError, UnicodeDecodeError, ValueError) as exc:
            log.warning("ignoring unreadable cache file %s: %s", p, exc)
            return None
        if gb.ring != ring:
            log.warning("cache file %s is for a different ring; ignored", p)
            return None
        # integrity: every element must be a binomial of I_G, and the
        # certificate and reducedness must hold again after loading
        if not all(_in_kernel(g, p) for p in gb.generators):
            log.warning("cache file %s holds elements outside the toric ideal; ignored", p)
            return None
        if not is_groebner(list(gb.generators)) or list(gb.generators) != interreduce(gb.generators):
            log.warning("cache file %s failed the Groebner certificate; ignored", p)
            return None
        return gb

    def store(self, g: Graph, gb: GroebnerBasis):
        p = self.path(g, gb.ring)
        if p is None:
            return
        try:
            blob = encode(gb)
        except struct.error:
            log.info("basis does not fit the cache integer widths; not cached")
            return
        p.parent.mkdir(parents=True, exist_ok=True)
        tmp = p.with_suffix(".tmp")
        tmp.write_bytes(blob)
        tmp.replace(p)

    def toric_ideal(self, g: Graph, ring: Ring, **caps) -> GroebnerBasis:
        gb = self.load(g, ring)
        if gb is not None:
            self.hits += 1
            return gb
        self.misses += 1
        gb = toric_ideal(g, ring, **caps)
        self.store(g, gb)
        return gb
