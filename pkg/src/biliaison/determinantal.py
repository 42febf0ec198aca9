"""Homogeneous matrices, minors, determinantal ideals, the minor identity
behind the multiplier argument, and the Gaeta chain."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .groebner import Ideal, codimension, is_nonzerodivisor
from .ring import Polynomial, PolyRing
from .groebner import divide_exact


class MatrixError(ValueError):
    pass


class HomogeneousMatrix:
    """A matrix of forms with degree vectors: ``deg a_ij = row_degrees[i] + col_degrees[j]``."""

    def __init__(self, ring: PolyRing, entries, row_degrees=None, col_degrees=None):
        self.ring = ring
        self.entries = [[ring(e) for e in row] for row in entries]
        if not self.entries or any(len(r) != len(self.entries[0]) for r in self.entries):
            raise MatrixError("rows must be non-empty and of equal length")
        for row in self.entries:
            for e in row:
                if not e.is_homogeneous():
                    raise MatrixError(f"entry {e} is not homogeneous")
        if row_degrees is None or col_degrees is None:
            r, c = self._infer_degrees()
            row_degrees = r if row_degrees is None else row_degrees
            col_degrees = c if col_degrees is None else col_degrees
        self.row_degrees = [int(d) for d in row_degrees]
        self.col_degrees = [int(d) for d in col_degrees]
        if len(self.row_degrees) != self.nrows or len(self.col_degrees) != self.ncols:
            raise MatrixError("degree vectors do not match the matrix shape")
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e and e.degree() != self.row_degrees[i] + self.col_degrees[j]:
                    raise MatrixError(f"entry ({i},{j}) = {e} has the wrong degree")

    def _infer_degrees(self):
        t, s = self.nrows, self.ncols
        r: list = [None] * t
        c: list = [None] * s
        for start in range(t):
            if r[start] is not None:
                continue
            r[start] = 0
            stack = [("r", start)]
            while stack:
                kind, k = stack.pop()
                if kind == "r":
                    for j in range(s):
                        e = self.entries[k][j]
                        if e and c[j] is None:
                            c[j] = e.degree() - r[k]
                            stack.append(("c", j))
                else:
                    for i in range(t):
                        e = self.entries[i][k]
                        if e and r[i] is None:
                            r[i] = e.degree() - c[k]
                            stack.append(("r", i))
        c = [0 if d is None else d for d in c]
        return r, c

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> HomogeneousMatrix:
        return HomogeneousMatrix(
            self.ring,
            [[self.entries[i][j] for j in cols] for i in rows],
            [self.row_degrees[i] for i in rows],
            [self.col_degrees[j] for j in cols],
        )

    def delete(self, rows=(), cols=()) -> HomogeneousMatrix:
        keep_r = [i for i in range(self.nrows) if i not in set(rows)]
        keep_c = [j for j in range(self.ncols) if j not in set(cols)]
        return self.submatrix(keep_r, keep_c)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, HomogeneousMatrix) and self.entries == other.entries

    def to_text(self) -> str:
        body = " ; ".join(", ".join(str(e) for e in row) for row in self.entries)
        rd = ",".join(str(d) for d in self.row_degrees)
        cd = ",".join(str(d) for d in self.col_degrees)
        return f"matrix rows={self.nrows} cols={self.ncols} rowdeg={rd} coldeg={cd} {{ {body} }}"

    def __str__(self):
        return self.to_text()

    def to_dict(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[str(e) for e in row] for row in self.entries],
            "row_degrees": self.row_degrees,
            "col_degrees": self.col_degrees,
        }

    @classmethod
    def from_dict(cls, ring: PolyRing, data: dict) -> HomogeneousMatrix:
        return cls(ring, [[ring.parse(s) for s in row] for row in data["entries"]], data.get("row_degrees"), data.get("col_degrees"))


_HEADER = re.compile(r"^\s*matrix\b(?P<opts>[^{]*)\{(?P<body>.*)\}\s*$", re.S)


def parse_matrix(ring: PolyRing, text: str) -> HomogeneousMatrix:
    """Parse ``matrix rows=2 cols=3 { x, y, z ; y, z, w }``.

    Optional ``rowdeg=...`` and ``coldeg=...`` give the degree vectors.
    """
    m = _HEADER.match(text)
    if not m:
        raise MatrixError("expected 'matrix rows=R cols=C { ... }'")
    opts = dict(kv.split("=", 1) for kv in m.group("opts").split())
    rows = [r for r in m.group("body").split(";")]
    entries = [[ring.parse(s) for s in r.split(",")] for r in rows if r.strip()]
    if "rows" in opts and int(opts["rows"]) != len(entries):
        raise MatrixError(f"declared {opts['rows']} rows, found {len(entries)}")
    if "cols" in opts and any(int(opts["cols"]) != len(r) for r in entries):
        raise MatrixError(f"declared {opts['cols']} columns")
    rd = [int(x) for x in opts["rowdeg"].split(",")] if "rowdeg" in opts else None
    cd = [int(x) for x in opts["coldeg"].split(",")] if "coldeg" in opts else None
    return HomogeneousMatrix(ring, entries, rd, cd)


# -- determinants ------------------------------------------------------------------


def det_expansion(rows: list[list[Polynomial]]) -> Polynomial:
    """Laplace expansion along rows with memoized column-subset minors."""
    t = len(rows)
    if t == 0 or any(len(r) != t for r in rows):
        raise MatrixError("determinant needs a non-empty square matrix")
    ring = rows[0][0].ring
    memo: dict = {(): ring.one()}
    cols = tuple(range(len(rows[0])))
    for k in range(t):
        new = {}
        for S in combinations(cols, k + 1):
            acc = ring.zero()
            for pos, j in enumerate(S):
                e = rows[k][j]
                if not e:
                    continue
                sub = memo[S[:pos] + S[pos + 1 :]]
                if not sub:
                    continue
                term = e * sub
                acc = acc - term if (pos + k) % 2 else acc + term
            new[S] = acc
        memo = new
    return memo[cols]


def det_bareiss(rows: list[list[Polynomial]]) -> Polynomial:
    """Fraction-free Gaussian elimination with exact polynomial division."""
    t = len(rows)
    ring = rows[0][0].ring
    a = [list(r) for r in rows]
    sign = 1
    prev = ring.one()
    for k in range(t - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, t) if a[i][k]), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, t):
            for j in range(k + 1, t):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = divide_exact(num, prev) if not prev.is_constant() else num.scale(ring.field.inv(prev.constant_coefficient()))
            a[i][k] = ring.zero()
        prev = a[k][k]
    d = a[t - 1][t - 1]
    return d if sign == 1 else -d


def determinant(M, method: str | None = None) -> Polynomial:
    rows = M.entries if isinstance(M, HomogeneousMatrix) else M
    if len(rows) != len(rows[0]):
        raise MatrixError("determinant of a non-square matrix")
    if method is None:
        method = "bareiss" if rows[0][0].ring.field.p == 0 else "expansion"
    if method == "bareiss":
        return det_bareiss(rows)
    if method == "expansion":
        return det_expansion(rows)
    raise ValueError(f"unknown method {method}")


def minor(M: HomogeneousMatrix, rows=(), cols=(), method: str | None = None) -> Polynomial:
    """Determinant of ``M`` with the given rows and columns deleted."""
    rows, cols = list(rows), list(cols)
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise MatrixError("repeated index")
    if M.nrows - len(rows) != M.ncols - len(cols):
        raise MatrixError("deletion does not leave a square matrix")
    if any(not 0 <= i < M.nrows for i in rows) or any(not 0 <= j < M.ncols for j in cols):
        raise MatrixError("index out of range")
    if len(rows) == M.nrows:
        return M.ring.one()
    return determinant(M.delete(rows, cols), method)


def maximal_minors(M: HomogeneousMatrix) -> dict[tuple, Polynomial]:
    """All maximal minors of a ``t x s`` matrix (``t <= s``), keyed by column set."""
    t, s = M.nrows, M.ncols
    if t > s:
        raise MatrixError("more rows than columns")
    ring = M.ring
    memo: dict = {(): ring.one()}
    for k in range(t):
        new = {}
        for S in combinations(range(s), k + 1):
            acc = ring.zero()
            for pos, j in enumerate(S):
                e = M.entries[k][j]
                if not e:
                    continue
                sub = memo[S[:pos] + S[pos + 1 :]]
                if not sub:
                    continue
                acc = acc - e * sub if (pos + k) % 2 else acc + e * sub
            new[S] = acc
        memo = new
    return memo


def determinantal_ideal(M: HomogeneousMatrix, t: int) -> Ideal:
    """Ideal of all ``t x t`` minors of ``M``."""
    if not 1 <= t <= min(M.nrows, M.ncols):
        raise MatrixError(f"t must lie between 1 and {min(M.nrows, M.ncols)}")
    gens: list = []
    for rows in combinations(range(M.nrows), t):
        sub = M.submatrix(rows, range(M.ncols))
        for f in maximal_minors(sub).values():
            if f:
                gens.append(f)
    return Ideal(M.ring, gens)


@dataclass
class DeterminantalReport:
    ideal: Ideal
    t: int
    codimension: int
    expected_codimension: int
    standard: bool

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "codimension": self.codimension,
            "expected_codimension": self.expected_codimension,
            "standard": self.standard,
            "generators": len(self.ideal.gens),
        }


def determinantal_report(M: HomogeneousMatrix, t: int) -> DeterminantalReport:
    I = determinantal_ideal(M, t)
    expected = (M.nrows - t + 1) * (M.ncols - t + 1)
    codim = codimension(I) if not I.is_unit() else M.ring.nvars + 1
    return DeterminantalReport(I, t, codim, expected, codim == expected)


# -- the minor identity ----------------------------------------------------------------


@dataclass
class MinorIdentity:
    holds: bool
    sign: int | None
    indices: tuple

    def to_dict(self) -> dict:
        return {"indices": list(self.indices), "holds": self.holds, "sign": self.sign}


def lemma42_check(
    M: HomogeneousMatrix, i: int, j: int, k: int, l: int, method: str | None = None, cache: dict | None = None
) -> MinorIdentity:
    """Check ``M_ij M_kl - M_il M_kj = sign * M_{ik,jl} * det M``.

    ``M_ij`` deletes row ``i`` and column ``j``; the double minor deletes rows
    ``i, k`` and columns ``j, l``.  The sign is determined from the data;
    ``sign`` is ``None`` when both sides vanish.  ``cache`` may be shared
    between calls on the same matrix.
    """
    if M.nrows != M.ncols:
        raise MatrixError("square matrix required")
    if i == k or j == l:
        raise MatrixError("need i != k and j != l")
    n = M.nrows
    if not all(0 <= a < n for a in (i, j, k, l)):
        raise MatrixError("index out of range")
    cache = {} if cache is None else cache

    def mnr(rows, cols):
        key = (tuple(sorted(rows)), tuple(sorted(cols)))
        if key not in cache:
            cache[key] = minor(M, rows, cols, method)
        return cache[key]

    def prod(a, b):
        key = frozenset([a, b])
        if key not in cache:
            cache[key] = mnr(*a) * mnr(*b)
        return cache[key]

    lhs = prod(((i,), (j,)), ((k,), (l,))) - prod(((i,), (l,)), ((k,), (j,)))
    rhs = prod(((i, k), (j, l)), ((), ()))
    if not rhs:
        return MinorIdentity(not lhs, None, (i, j, k, l))
    if lhs == rhs:
        return MinorIdentity(True, 1, (i, j, k, l))
    if lhs == -rhs:
        return MinorIdentity(True, -1, (i, j, k, l))
    return MinorIdentity(False, None, (i, j, k, l))


def lemma42_all(M: HomogeneousMatrix, method: str | None = None) -> list[MinorIdentity]:
    """The minor identity for every admissible index quadruple, sharing minors."""
    n = M.nrows
    cache: dict = {}
    out = []
    for i in range(n):
        for k in range(n):
            if i == k:
                continue
            for j in range(n):
                for l in range(n):
                    if j != l:
                        out.append(lemma42_check(M, i, j, k, l, method, cache))
    return out


def predicted_sign(i: int, j: int, k: int, l: int) -> int:
    """Sign in the minor identity: ``+1`` when ``i < k`` and ``j < l`` agree in direction."""
    return 1 if (i < k) == (j < l) else -1


def random_matrix(ring: PolyRing, t: int, s: int, seed: int, degree: int = 1) -> HomogeneousMatrix:
    rng = random.Random(seed)
    return HomogeneousMatrix(ring, [[ring.random_form(degree, rng) for _ in range(s)] for _ in range(t)])


# -- Gaeta chain ------------------------------------------------------------------------


class GaetaError(RuntimeError):
    pass


def _random_invertible(field, blocks: list[list[int]], size: int, rng):
    """Random invertible matrix, block diagonal on the given index blocks."""
    while True:
        T = [[0] * size for _ in range(size)]
        for b in blocks:
            for i in b:
                for j in b:
                    T[i][j] = field.random_element(rng)
        if _scalar_det_nonzero(T, field):
            return T


def _scalar_det_nonzero(T, field) -> bool:
    n = len(T)
    a = [[field(x) for x in row] for row in T]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return False
        a[k], a[piv] = a[piv], a[k]
        inv = field.inv(a[k][k])
        for i in range(k + 1, n):
            f = field(a[i][k] * inv)
            if f:
                a[i] = [field(x - f * y) for x, y in zip(a[i], a[k])]
    return True


def _degree_blocks(degs: list[int]) -> list[list[int]]:
    out: dict = {}
    for i, d in enumerate(degs):
        out.setdefault(d, []).append(i)
    return list(out.values())


def transform(A: HomogeneousMatrix, rng) -> HomogeneousMatrix:
    """Apply seeded random invertible row and column operations respecting degrees."""
    ring = A.ring
    field = ring.field
    P = _random_invertible(field, _degree_blocks(A.row_degrees), A.nrows, rng)
    Q = _random_invertible(field, _degree_blocks(A.col_degrees), A.ncols, rng)
    PA = [[sum((A.entries[k][j].scale(P[i][k]) for k in range(A.nrows) if P[i][k]), ring.zero()) for j in range(A.ncols)] for i in range(A.nrows)]
    PAQ = [[sum((PA[i][k].scale(Q[k][j]) for k in range(A.ncols) if Q[k][j]), ring.zero()) for j in range(A.ncols)] for i in range(A.nrows)]
    return HomogeneousMatrix(ring, PAQ, A.row_degrees, A.col_degrees)


@dataclass
class GaetaStep:
    """One ascending biliaison ``V ~ V' + mH`` on ``S = I_t(B)``."""

    A: HomogeneousMatrix
    B: HomogeneousMatrix
    A_prime: HomogeneousMatrix
    I_V: Ideal
    I_S: Ideal
    I_V_prime: Ideal
    m: int
    N: list
    N_prime: list
    pairs_checked: int
    pairs_ok: bool
    certificate: object
    attempts: int
    codim_S: int
    codim_drop: int | None

    @property
    def multiplier(self):
        from .divisor import Multiplier

        return Multiplier(self.N[0], self.N_prime[0])

    @property
    def ok(self) -> bool:
        return self.pairs_ok and self.certificate.ok

    def to_dict(self) -> dict:
        return {
            "t": self.A.nrows,
            "matrix": self.A.to_dict(),
            "carrier": self.I_S.monic_text(),
            "carrier_codim": self.codim_S,
            "minors_of_B_codim": self.codim_drop,
            "V": self.I_V.monic_text(),
            "V_prime": self.I_V_prime.monic_text(),
            "next_matrix": self.A_prime.to_dict(),
            "m": self.m,
            "multiplier": self.multiplier.to_dict(),
            "pairs_checked": self.pairs_checked,
            "pairs_ok": self.pairs_ok,
            "attempts": self.attempts,
            "certificate": self.certificate.to_dict(),
        }


def gaeta_step(A: HomogeneousMatrix, seed: int = 0, rng=None, max_retries: int = 10, check_standard: bool = True) -> GaetaStep:
    """Certify ``V ~ V' + mH`` on ``S`` for the maximal minors of ``A``.

    ``B`` drops the last column of ``A``, ``S`` is cut by the maximal minors
    of ``B``, ``A'`` drops the last row of ``B`` and ``V'`` is cut by the
    maximal minors of ``A'``.  Generators ``N`` of ``V`` (minors through the
    last column) correspond to generators ``N'`` of ``V'``; the step is
    certified by ``N_i N'_j - N_j N'_i in I_S`` for all pairs and by the
    ideal identity ``N'_1 I_V + I_S = N_1 I_{V'} + I_S``.
    """
    from .divisor import AmbientScheme, Multiplier
    from .liaison import certify_biliaison

    t, s = A.nrows, A.ncols
    c = s - t
    if t < 2:
        raise GaetaError("t = 1 is the base case: the ideal is generated by the entries")
    if c < 0:
        raise GaetaError("the matrix must have at least as many columns as rows")
    rng = rng or random.Random(seed)
    I_V = determinantal_ideal(A, t)
    if check_standard:
        cv = codimension(I_V)
        if cv != c + 1:
            raise GaetaError(f"not standard determinantal: codimension {cv}, expected {c + 1}")
    m = A.row_degrees[t - 1] + A.col_degrees[s - 1]
    last = None
    for attempt in range(max_retries + 1):
        A_try = A if attempt == 0 else transform(A, rng)
        B = A_try.delete(cols=[s - 1])
        A_prime = B.delete(rows=[t - 1])
        if c == 0:
            I_S = Ideal(A.ring, [])
        else:
            I_S = Ideal(A.ring, [f for f in maximal_minors(B).values() if f])
        codim_S = codimension(I_S) if I_S.gens else 0
        if codim_S != c:
            last = f"carrier has codimension {codim_S}, expected {c}"
            continue
        drop = None
        if t - 1 >= 1 and c > 0:
            drop = codimension(determinantal_ideal(B, t - 1))
            if drop < c + 1:
                last = f"minors of size t-1 of B have codimension {drop} < {c + 1}"
                continue
        big = maximal_minors(A_try)
        small = maximal_minors(A_prime)
        keys = sorted(small)
        N = [big[T + (s - 1,)] for T in keys]
        Np = [small[T] for T in keys]
        if not all(f and is_nonzerodivisor(f, I_S) for f in Np):
            last = "some N' is a zerodivisor on the carrier"
            continue
        nz = [k for k in range(len(keys)) if N[k]]
        if not nz:
            last = "all N vanish"
            continue
        pairs = 0
        ok = True
        for i in range(len(keys)):
            for j in range(i + 1, len(keys)):
                pairs += 1
                if not I_S.normal_form(N[i] * Np[j] - N[j] * Np[i]).is_zero():
                    ok = False
        k0 = nz[0]
        N = [N[k0]] + [N[k] for k in range(len(keys)) if k != k0]
        Np = [Np[k0]] + [Np[k] for k in range(len(keys)) if k != k0]
        I_Vp = Ideal(A.ring, [f for f in small.values() if f])
        X = AmbientScheme(I_S, check=False)
        cert = certify_biliaison(X, I_Vp, I_V, m, Multiplier(N[0], Np[0]))
        return GaetaStep(A_try, B, A_prime, I_V, I_S, I_Vp, m, N, Np, pairs, ok, cert, attempt + 1, codim_S, drop)
    raise GaetaError(f"randomization exhausted {max_retries} retries: {last}")


@dataclass
class GaetaChain:
    steps: list
    terminal: HomogeneousMatrix
    terminal_ideal: Ideal
    terminal_is_ci: bool
    seed: int = 0

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def ok(self) -> bool:
        return self.terminal_is_ci and all(s.ok for s in self.steps)

    def replay_hilbert(self) -> bool:
        """Rebuild the Hilbert polynomial of the top scheme from the terminal
        one through the biliaison relation, step by step."""
        from .liaison import poly_add, shift_poly

        P = self.terminal_ideal.hilbert_polynomial()
        for st in reversed(self.steps):
            PS = st.I_S.hilbert_polynomial()
            P = poly_add(poly_add(PS, shift_poly(PS, st.m), -1), shift_poly(P, st.m))
        top = self.steps[0].I_V.hilbert_polynomial() if self.steps else self.terminal_ideal.hilbert_polynomial()
        return list(P) == list(top)

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "seed": self.seed,
            "steps": [s.to_dict() for s in self.steps],
            "terminal": {
                "matrix": self.terminal.to_dict(),
                "ideal": self.terminal_ideal.monic_text(),
                "complete_intersection": self.terminal_is_ci,
                "linear": all(f.degree() == 1 for f in self.terminal_ideal.gens),
            },
            "ok": self.ok,
        }


def gaeta_chain(A: HomogeneousMatrix, seed: int = 0, max_retries: int = 10) -> GaetaChain:
    """Iterate :func:`gaeta_step` down to a single row."""
    rng = random.Random(seed)
    steps = []
    cur = A
    while cur.nrows > 1:
        st = gaeta_step(cur, rng=rng, max_retries=max_retries, check_standard=not steps)
        steps.append(st)
        cur = st.A_prime
    T = Ideal(A.ring, [e for e in cur.entries[0] if e])
    c = A.ncols - A.nrows
    ci = bool(T.gens) and len(T.minimal_generators()) == c + 1 and codimension(T) == c + 1
    return GaetaChain(steps, cur, T, ci, seed)
