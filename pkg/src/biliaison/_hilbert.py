"""Hilbert series of monomial ideals and the bookkeeping around them.

Series are represented by their numerator ``h(t)`` over ``(1 - t)^N`` as a
dict ``{exponent: coefficient}``; exponents may be negative for twisted
modules.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _padd(a: dict, b: dict, shift: int = 0, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e + shift, 0) + sign * c
        if v:
            out[e + shift] = v
        else:
            out.pop(e + shift, None)
    return out


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def hilbert_numerator(gens, nvars: int) -> dict:
    """Numerator of the Hilbert series of ``R/(gens)`` over ``(1-t)^nvars``."""
    return _hn(_minimalize([tuple(g) for g in gens]))


def _hn(gens) -> dict:
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    supports = [{i for i, a in enumerate(g) if a} for g in gens]
    coprime = True
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if supports[i] & supports[j]:
                coprime = False
                break
        if not coprime:
            break
    if coprime:
        out = {0: 1}
        for g in gens:
            out = _pmul(out, {0: 1, sum(g): -1})
        return out
    counts: dict[int, int] = {}
    for s, g in zip(supports, gens):
        if len(s) > 1:
            for i in s:
                counts[i] = counts.get(i, 0) + 1
    var = max(counts, key=lambda i: (counts[i], -i))
    # the pivot must divide some mixed generator so that ``plus`` shrinks
    exps = sorted(g[var] for s, g in zip(supports, gens) if len(s) > 1 and g[var] > 0)
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == var else 0 for i in range(len(gens[0])))
    plus = _minimalize([g for g in gens if g[var] < e] + [pivot])
    colon = _minimalize([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens])
    return _padd(_hn(plus), _hn(colon), shift=e)


def reduce_numerator(num: dict, nvars: int) -> tuple[dict, int]:
    """Cancel factors ``(1 - t)``; return ``(h, d)`` with series ``h/(1-t)^d``."""
    h = dict(num)
    d = nvars
    while h and d > 0 and sum(h.values()) == 0:
        # synthetic division by (1 - t)
        lo, hi = min(h), max(h)
        q: dict = {}
        acc = 0
        for e in range(lo, hi):
            acc += h.get(e, 0)
            if acc:
                q[e] = acc
        h = q
        d -= 1
    return h, d


def krull_dimension(num: dict, nvars: int) -> int:
    """Krull dimension from a series numerator; ``-1`` for the zero module."""
    h, d = reduce_numerator(num, nvars)
    if not h:
        return -1
    return d


def hilbert_function(num: dict, nvars: int, deg: int) -> int:
    h, d = reduce_numerator(num, nvars)
    if d == 0:
        return h.get(deg, 0)
    total = 0
    for k, c in h.items():
        if deg - k >= 0:
            total += c * comb(deg - k + d - 1, d - 1)
    return total


def hilbert_polynomial(num: dict, nvars: int) -> list[Fraction]:
    """Coefficients (ascending powers of m) of the Hilbert polynomial."""
    h, d = reduce_numerator(num, nvars)
    if d == 0 or not h:
        return []
    coeffs = [Fraction(0)] * d
    for k, c in h.items():
        # binom(m - k + d - 1, d - 1) as a polynomial in m
        poly = [Fraction(1)]
        for j in range(1, d):
            # multiply by (m - k + j) / j
            shift = Fraction(j - k, j)
            new = [Fraction(0)] * (len(poly) + 1)
            for i, a in enumerate(poly):
                new[i] += a * shift
                new[i + 1] += a / j
            poly = new
        for i, a in enumerate(poly):
            coeffs[i] += c * a
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def eval_poly(coeffs, m) -> Fraction:
    return sum((c * Fraction(m) ** i for i, c in enumerate(coeffs)), Fraction(0))


def independent_set_dimension(gens, nvars: int) -> int:
    """``dim R/(gens)`` by searching for the largest set of variables
    supporting no generator; ``-1`` if the ideal contains 1."""
    gens = [tuple(g) for g in gens]
    if any(sum(g) == 0 for g in gens):
        return -1
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0
