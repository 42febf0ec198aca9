"""Buchberger engine on sparse vectors of a graded free module.

A vector is a dict ``{(component, exponents): coefficient}``.  Ideals are
vectors in a rank one module (component 0).  Coefficients live in a prime
field (``p > 0``) or in the rationals (``p == 0``).

The engine only knows about an :class:`Order`; everything ideal- or
module-theoretic is layered on top of it in other modules.
"""

from __future__ import annotations

import heapq
from operator import add, sub

_SHIFT = 16
_OFFSET = 1 << (_SHIFT - 1)


class Order:
    """A term order on ``(component, exponents)`` pairs.

    Terms are compared by, in order: block (block 0 beats block 1), total
    degree including the component degree (skipped for elimination orders),
    grevlex on the first ``elim`` variables, grevlex on the remaining ones,
    and finally lower component index first.
    """

    def __init__(self, nvars, comp_degrees=(0,), comp_blocks=None, elim=0):
        self.nvars = nvars
        self.comp_degrees = list(comp_degrees)
        self.comp_blocks = list(comp_blocks) if comp_blocks is not None else [0] * len(self.comp_degrees)
        self.elim = elim
        self.rank = len(self.comp_degrees)
        self.is_ideal = self.rank == 1
        self._cache: dict = {}

    def key(self, term) -> int:
        k = self._cache.get(term)
        if k is None:
            k = self._cache[term] = self._compute(term)
        return k

    def _compute(self, term) -> int:
        c, e = term
        v = 1 if self.comp_blocks[c] == 0 else 0
        if self.elim:
            head, rest = e[: self.elim], e[self.elim :]
            fields = [sum(head)] + [-x for x in reversed(head)]
        else:
            rest = e
            fields = [sum(e) + self.comp_degrees[c]]
        fields.append(sum(rest))
        fields.extend(-x for x in reversed(rest))
        fields.append(-c)
        for f in fields:
            v = (v << _SHIFT) | (f + _OFFSET)
        return v

    def degree(self, term) -> int:
        return sum(term[1]) + self.comp_degrees[term[0]]


def lead(vec: dict, order: Order):
    return max(vec, key=order.key)


def vec_degree(vec: dict, order: Order) -> int:
    return max(order.degree(t) for t in vec)


def is_homogeneous(vec: dict, order: Order) -> bool:
    return len({order.degree(t) for t in vec}) <= 1


class _Elem:
    __slots__ = ("vec", "lt", "lc", "comp", "exps", "mask", "sugar", "idx")

    def __init__(self, vec, order, sugar, idx):
        self.vec = vec
        self.lt = lead(vec, order)
        self.lc = vec[self.lt]
        self.comp, self.exps = self.lt
        self.mask = _mask(self.exps)
        self.sugar = sugar
        self.idx = idx


def _mask(exps) -> int:
    m = 0
    for i, a in enumerate(exps):
        if a:
            m |= 1 << i
    return m


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class Reducer:
    """Lookup structure for reducing vectors against a list of vectors."""

    def __init__(self, order: Order, p: int):
        self.order = order
        self.p = p
        self.by_comp: dict[int, list[_Elem]] = {}

    def add(self, elem: _Elem):
        self.by_comp.setdefault(elem.comp, []).append(elem)

    def remove(self, elem: _Elem):
        self.by_comp[elem.comp].remove(elem)

    def find(self, term):
        c, e = term
        cands = self.by_comp.get(c)
        if not cands:
            return None
        m = _mask(e)
        for g in cands:
            if g.mask & ~m == 0 and _divides(g.exps, e):
                return g
        return None

    def reduce(self, vec: dict, full: bool = True) -> dict:
        """Normal form of ``vec`` (consumed); returns the remainder."""
        if not vec:
            return vec
        order = self.order
        key = order.key
        p = self.p
        heap = [(-key(t), t) for t in vec]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = vec.pop(t, None)
            if c is None:
                continue
            g = self.find(t)
            if g is None:
                rem[t] = c
                if not full:
                    # keep the rest untouched
                    rem.update(vec)
                    return rem
                continue
            if p:
                q = c * pow(g.lc, -1, p) % p
            else:
                q = c / g.lc
            u = tuple(map(sub, t[1], g.exps))
            glt = g.lt
            for gt, gc in g.vec.items():
                if gt == glt:
                    continue
                nt = (gt[0], tuple(map(add, gt[1], u)))
                old = vec.get(nt)
                if old is None:
                    vec[nt] = (-q * gc) % p if p else -q * gc
                    heapq.heappush(heap, (-key(nt), nt))
                else:
                    nv = (old - q * gc) % p if p else old - q * gc
                    if nv:
                        vec[nt] = nv
                    else:
                        del vec[nt]
        return rem


def _normalize(vec: dict, lc, p):
    if p:
        inv = pow(lc, -1, p)
        return {t: c * inv % p for t, c in vec.items()}
    return {t: c / lc for t, c in vec.items()}


def spoly(f: _Elem, g: _Elem, p: int) -> dict:
    l = _lcm(f.exps, g.exps)
    uf = tuple(map(sub, l, f.exps))
    ug = tuple(map(sub, l, g.exps))
    if p:
        cf = pow(f.lc, -1, p)
        cg = pow(g.lc, -1, p)
    else:
        cf = 1 / f.lc
        cg = 1 / g.lc
    out: dict = {}
    for t, c in f.vec.items():
        out[(t[0], tuple(map(add, t[1], uf)))] = c * cf % p if p else c * cf
    for t, c in g.vec.items():
        nt = (t[0], tuple(map(add, t[1], ug)))
        v = out.get(nt, 0) - c * cg
        if p:
            v %= p
        if v:
            out[nt] = v
        else:
            out.pop(nt, None)
    return out


class GBResult:
    """Output of :func:`groebner`.

    ``basis`` is a list of vectors forming a Groebner basis; ``kept`` lists
    the indices of input vectors that survived reduction when minimal
    generators were requested (in input order).
    """

    def __init__(self, basis, kept, order, p):
        self.basis = basis
        self.kept = kept
        self.order = order
        self.p = p
        self._reducer = None

    @property
    def reducer(self) -> Reducer:
        if self._reducer is None:
            r = Reducer(self.order, self.p)
            for i, v in enumerate(self.basis):
                r.add(_Elem(v, self.order, 0, i))
            self._reducer = r
        return self._reducer

    def reduce(self, vec: dict) -> dict:
        return self.reducer.reduce(dict(vec))

    def leads(self):
        return [lead(v, self.order) for v in self.basis]


def groebner(vectors, order: Order, p: int, *, minimal: bool = False, reduced: bool = True) -> GBResult:
    """Buchberger's algorithm with Gebauer-Moeller pair management.

    With ``minimal=True`` every input must be homogeneous (for the degrees of
    ``order``); inputs are then fed degree by degree and the indices of the
    inputs that contribute a minimal generator are reported.  Inputs of equal
    degree are considered in the order given.
    """
    inputs = [(i, v) for i, v in enumerate(vectors) if v]
    is_ideal = order.is_ideal
    elems: list[_Elem] = []
    active: list[_Elem] = []
    reducer = Reducer(order, p)
    pairs: dict[tuple[int, int], tuple] = {}
    heap: list = []
    kept: list[int] = []

    def update(h: _Elem):
        nonlocal active
        hc, he = h.comp, h.exps
        cands = [g for g in active if g.comp == hc]
        C = []
        for g in cands:
            l = _lcm(he, g.exps)
            coprime = is_ideal and all(a == 0 or b == 0 for a, b in zip(he, g.exps))
            C.append((g, l, coprime))
        D = []
        for k, (g, l, coprime) in enumerate(C):
            if coprime:
                D.append((g, l, coprime))
                continue
            redundant = False
            for k2, (g2, l2, _) in enumerate(C):
                if k2 > k and _divides(l2, l):
                    redundant = True
                    break
            if not redundant:
                for g2, l2, _ in D:
                    if _divides(l2, l):
                        redundant = True
                        break
            if not redundant:
                D.append((g, l, coprime))
        for key_, (l12, _s) in list(pairs.items()):
            i, j = key_
            if elems[i].comp != hc or not _divides(he, l12):
                continue
            if _lcm(elems[i].exps, he) != l12 and _lcm(elems[j].exps, he) != l12:
                del pairs[key_]
        for g, l, coprime in D:
            if coprime:
                continue
            u_h = sum(l) - sum(he)
            u_g = sum(l) - sum(g.exps)
            sug = max(h.sugar + u_h, g.sugar + u_g)
            key_ = (g.idx, h.idx)
            pairs[key_] = (l, sug)
            heapq.heappush(heap, (sug, order.key((hc, l)), g.idx, h.idx))
        keep = []
        for g in active:
            if g.comp == hc and _divides(he, g.exps):
                reducer.remove(g)
            else:
                keep.append(g)
        keep.append(h)
        active = keep
        reducer.add(h)

    def add_elem(vec, sugar):
        e = _Elem(_normalize(vec, vec[lead(vec, order)], p), order, sugar, len(elems))
        elems.append(e)
        update(e)
        return e

    def process_pair():
        sug, _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            return
        del pairs[(i, j)]
        s = spoly(elems[i], elems[j], p)
        r = reducer.reduce(s)
        if r:
            add_elem(r, sug)

    if minimal:
        queue = sorted(((vec_degree(v, order), n, i, v) for n, (i, v) in enumerate(inputs)))
        qi = 0
        while qi < len(queue) or heap:
            while heap and heap[0][2:] and (heap[0][2], heap[0][3]) not in pairs:
                heapq.heappop(heap)
            if not heap and qi >= len(queue):
                break
            dq =queue[qi][0] if qi < len(queue) else None
            dp = heap[0][0] if heap else None
            if dp is not None and (dq is None or dp <= dq):
                process_pair()
                continue
            d, _, i, v = queue[qi]
            qi += 1
            r = reducer.reduce(dict(v))
            if r:
                kept.append(i)
                add_elem(r, d)
    else:
        for i, v in inputs:
            r = reducer.reduce(dict(v))
            if r:
                add_elem(r, vec_degree(r, order))
        while heap:
            process_pair()

    basis = [g.vec for g in active]
    if reduced:
        basis = _interreduce(basis, order, p)
    return GBResult(basis, kept, order, p)


def _interreduce(basis, order, p):
    elems = [_Elem(v, order, 0, i) for i, v in enumerate(basis)]
    elems.sort(key=lambda e: order.key(e.lt))
    out = []
    for k, e in enumerate(elems):
        r = Reducer(order, p)
        for k2, e2 in enumerate(elems):
            if k2 != k:
                r.add(e2)
        v = r.reduce(dict(e.vec))
        if v:
            out.append(_normalize(v, v[lead(v, order)], p))
    out.sort(key=lambda v: order.key(lead(v, order)))
    return out


def reduce_vec(vec: dict, basis, order: Order, p: int) -> dict:
    r = Reducer(order, p)
    for i, v in enumerate(basis):
        r.add(_Elem(v, order, 0, i))
    return r.reduce(dict(vec))
