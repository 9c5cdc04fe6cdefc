"""Closed-form generating sets for the K_{2,t} and G_t families.

These are the published descriptions, written out as polynomials so the
engine's output can be compared against them literally.
"""
from __future__ import annotations

from typing import List

from .algebra import Monomial, Polynomial, Ring


def k2t_binomials(ring: Ring, t: int) -> List[Polynomial]:
    """a_i b_j - a_j b_i for 1 <= i < j <= t."""
    return [ring.parse(f"a{i}*b{j} - a{j}*b{i}") for i in range(1, t + 1) for j in range(i + 1, t + 1)]


def k2t_initial(ring: Ring, t: int) -> List[Monomial]:
    """a_i b_j for 1 <= j < i <= t, smallest first."""
    ms = [ring.monomial(f"a{i}*b{j}") for i in range(1, t + 1) for j in range(1, i)]
    return sorted(ms, key=ring.order.key)


def gt_binomials(ring: Ring, t: int) -> List[Polynomial]:
    """The three families of primitive binomials of I_{G_t} (t >= 2)."""
    g1 = [ring.parse(f"a{i}*b{j} - a{j}*b{i}") for i in range(1, t + 1) for j in range(i + 1, t + 1)]
    g2 = [ring.parse(f"a{i}*a{j}*f1*f3*e2 - f2*e1*e3*b{i}*b{j}")
          for i in range(1, t + 1) for j in range(i + 1, t + 1)]
    g3 = [ring.parse(f"a{i}^2*f1*f3*e2 - f2*e1*e3*b{i}^2") for i in range(1, t + 1)]
    return g1 + g2 + g3


def gt_initial_order(ring: Ring, t: int) -> List[Monomial]:
    """Minimal generators of in(I_{G_t}) in the linear-quotient order.

    Quadrics a_i b_j (j < i), then a_i a_j f1 f3 e2 (i > j), then
    a_i^2 f1 f3 e2, each block sorted from smallest to largest in ``ring``'s order.
    """
    key = ring.order.key
    m1 = sorted((ring.monomial(f"a{i}*b{j}") for i in range(1, t + 1) for j in range(1, i)), key=key)
    m2 = sorted((ring.monomial(f"a{i}*a{j}*f1*f3*e2") for i in range(1, t + 1) for j in range(1, i)), key=key)
    m3 = sorted((ring.monomial(f"a{i}^2*f1*f3*e2") for i in range(1, t + 1)), key=key)
    return m1 + m2 + m3
