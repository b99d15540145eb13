"""Exact algebra of symmetric unimodular bilinear forms over the integers.

Everything here is computed with exact arithmetic (integers and
`fractions.Fraction`); no floating point is used anywhere.  The module
provides invariants (rank, signature, parity), the standard classification
of unimodular forms, direct sums, isomorphism and orthogonal split-off
decisions, and a brute-force embedding oracle that serves as independent
ground truth on definite forms.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import NotSymmetric, NotUnimodular, ParseError, RankTooLarge

Gram = tuple[tuple[int, ...], ...]

DEFAULT_DEFINITE_CAP = 9


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"


class Ternary(Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"


def parity_sum(a: Parity, b: Parity) -> Parity:
    """Parity of an orthogonal sum: even only when both summands are even."""
    return Parity.EVEN if a is Parity.EVEN and b is Parity.EVEN else Parity.ODD


# ---------------------------------------------------------------------------
# exact matrix kernels


def _freeze(matrix: Sequence[Sequence[int]]) -> Gram:
    rows = tuple(tuple(int(v) for v in row) for row in matrix)
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise NotSymmetric("matrix is not square")
    return rows


def det_int(gram: Gram) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(gram)
    if n == 0:
        return 1
    m = [list(row) for row in gram]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot_row = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot_row is None:
                return 0
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inertia(gram: Gram) -> tuple[int, int]:
    """Inertia indices (positives, negatives) of a nondegenerate symmetric matrix.

    Symmetric Gaussian elimination over exact rationals.  When every
    remaining diagonal entry vanishes, an off-diagonal entry is used as a
    rank-2 hyperbolic pivot contributing one eigenvalue of each sign.
    """
    n = len(gram)
    m: dict[tuple[int, int], Fraction] = {
        (i, j): Fraction(gram[i][j]) for i in range(n) for j in range(n)
    }
    active = list(range(n))
    pos = neg = 0
    while active:
        k = next((i for i in active if m[i, i] != 0), None)
        if k is not None:
            p = m[k, k]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in active if i != k]
            for i in rest:
                for j in rest:
                    m[i, j] -= m[k, i] * m[k, j] / p
            active = rest
            continue
        k = active[0]
        j = next((c for c in active[1:] if m[k, c] != 0), None)
        if j is None:
            raise NotUnimodular("matrix is degenerate")
        a = m[k, j]
        pos += 1
        neg += 1
        rest = [i for i in active if i not in (k, j)]
        for i in rest:
            for c in rest:
                m[i, c] -= (m[k, i] * m[j, c] + m[j, i] * m[k, c]) / a
        active = rest
    return pos, neg


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Basis of the integer kernel {v in Z^n : rows . v = 0}.

    Column elimination by unimodular operations; the returned vectors span
    the full kernel sublattice (which is automatically saturated).
    """
    m = len(rows)
    a = [list(row) for row in rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    col = 0
    for r in range(m):
        while True:
            nz = [c for c in range(col, n) if a[r][c] != 0]
            if not nz:
                break
            c0 = min(nz, key=lambda c: (abs(a[r][c]), c))
            others = [c for c in nz if c != c0]
            if not others:
                if a[r][c0] < 0:
                    for i in range(m):
                        a[i][c0] = -a[i][c0]
                    for i in range(n):
                        u[i][c0] = -u[i][c0]
                if c0 != col:
                    for i in range(m):
                        a[i][c0], a[i][col] = a[i][col], a[i][c0]
                    for i in range(n):
                        u[i][c0], u[i][col] = u[i][col], u[i][c0]
                col += 1
                break
            for c in others:
                q = a[r][c] // a[r][c0]
                for i in range(m):
                    a[i][c] -= q * a[i][c0]
                for i in range(n):
                    u[i][c] -= q * u[i][c0]
    return [tuple(u[i][c] for i in range(n)) for c in range(col, n)]


# ---------------------------------------------------------------------------
# forms


@dataclass(frozen=True)
class IntForm:
    """A symmetric unimodular bilinear form with cached invariants."""

    gram: Gram
    rank: int
    signature: int
    parity: Parity

    @property
    def invariants(self) -> tuple[int, int, Parity]:
        return (self.rank, self.signature, self.parity)

    @property
    def definite(self) -> bool:
        return abs(self.signature) == self.rank

    @property
    def indefinite(self) -> bool:
        return abs(self.signature) < self.rank

    def to_json(self) -> dict:
        return {"gram": [list(row) for row in self.gram]}

    def __repr__(self) -> str:  # compact, invariant-level
        return f"IntForm(rank={self.rank}, signature={self.signature}, {self.parity.value})"


def make_form(matrix: Sequence[Sequence[int]]) -> IntForm:
    """Validate a square integer matrix and compute its form invariants."""
    gram = _freeze(matrix)
    n = len(gram)
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] != gram[j][i]:
                raise NotSymmetric(f"entry ({i},{j}) != ({j},{i})")
    d = det_int(gram)
    if d not in (1, -1):
        raise NotUnimodular(f"determinant {d}")
    pos, neg = inertia(gram) if n else (0, 0)
    assert pos + neg == n
    signature = pos - neg
    parity = Parity.EVEN if all(gram[i][i] % 2 == 0 for i in range(n)) else Parity.ODD
    if parity is Parity.EVEN:
        # van der Blij: even unimodular forms have signature divisible by 8
        assert signature % 8 == 0, "even unimodular form with signature not 0 mod 8"
    return IntForm(gram, n, signature, parity)


def direct_sum(f: IntForm, g: IntForm) -> IntForm:
    """Orthogonal (block-diagonal) sum; invariants add."""
    n, m = f.rank, g.rank
    gram = tuple(
        tuple(f.gram[i][j] if j < n else 0 for j in range(n + m)) for i in range(n)
    ) + tuple(
        tuple(0 if j < n else g.gram[i][j - n] for j in range(n + m)) for i in range(m)
    )
    return IntForm(gram, n + m, f.signature + g.signature, parity_sum(f.parity, g.parity))


def direct_sum_all(forms: Iterable[IntForm]) -> IntForm:
    total = rank_zero_form()
    for f in forms:
        total = direct_sum(total, f)
    return total


def negate(f: IntForm) -> IntForm:
    gram = tuple(tuple(-v for v in row) for row in f.gram)
    return IntForm(gram, f.rank, -f.signature, f.parity)


# ---------------------------------------------------------------------------
# built-in forms


def rank_zero_form() -> IntForm:
    return IntForm((), 0, 0, Parity.EVEN)


def hyperbolic_plane() -> IntForm:
    return make_form([[0, 1], [1, 0]])


_E8_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))


@lru_cache(maxsize=None)
def e8_form() -> IntForm:
    """The positive definite even form of rank 8 (Dynkin-diagram Gram)."""
    gram = [[0] * 8 for _ in range(8)]
    for i in range(8):
        gram[i][i] = 2
    for i, j in _E8_EDGES:
        gram[i][j] = gram[j][i] = -1
    return make_form(gram)


def diag_form(p: int, q: int) -> IntForm:
    """Diagonal odd form with p entries +1 and q entries -1."""
    entries = [1] * p + [-1] * q
    n = len(entries)
    if n == 0:
        return rank_zero_form()
    return make_form([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


A1_GRAM: Gram = (
    (7, 6, 3, 2),
    (6, 7, 2, 3),
    (3, 2, 2, 0),
    (2, 3, 0, 2),
)


def a1_form() -> IntForm:
    """Rank-4 positive definite odd form (the t = 1 shadow of the built-in "A")."""
    return make_form(A1_GRAM)


_I_PQ = re.compile(r"^I\((\d+),(\d+)\)$")


def named_form(name: str) -> IntForm:
    """Resolve a built-in form name: H, E8, -E8, I(p,q), A1."""
    if name == "H":
        return hyperbolic_plane()
    if name == "E8":
        return e8_form()
    if name == "-E8":
        return negate(e8_form())
    if name == "A1":
        return a1_form()
    m = _I_PQ.match(name)
    if m:
        return diag_form(int(m.group(1)), int(m.group(2)))
    raise ParseError(f"unknown form name {name!r}")


def form_from_json(data) -> IntForm:
    if isinstance(data, str):
        return named_form(data)
    if not isinstance(data, dict) or "gram" not in data:
        raise ParseError("form JSON must be {'gram': [[...]]} or a built-in name")
    return make_form(data["gram"])


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class IndefiniteOdd:
    positive: int
    negative: int

    def label(self) -> str:
        return f"I({self.positive},{self.negative})"


@dataclass(frozen=True)
class IndefiniteEven:
    hyperbolic: int
    e8: int  # signed multiplicity

    def label(self) -> str:
        return f"{self.hyperbolic}H" + (f"+{self.e8}E8" if self.e8 else "")


@dataclass(frozen=True)
class DefiniteCatalog:
    sign: int  # +1 or -1; +1 for the rank-0 form
    e8: int
    units: int

    def label(self) -> str:
        parts = [p for p in (["E8"] * self.e8 + ([f"I{self.units}"] if self.units else []))]
        body = "+".join(parts) if parts else "I0"
        return body if self.sign >= 0 else f"-({body})"


@dataclass(frozen=True)
class DefiniteUnclassified:
    rank: int
    signature: int
    parity: Parity

    def label(self) -> str:
        return f"definite(rank={self.rank}, signature={self.signature}, {self.parity.value})"


FormClass = Union[IndefiniteOdd, IndefiniteEven, DefiniteCatalog, DefiniteUnclassified]


def classify(f: IntForm, definite_cap: int = DEFAULT_DEFINITE_CAP) -> FormClass:
    """Classify a unimodular form by the standard invariants.

    Indefinite forms are determined by (rank, signature, parity); definite
    forms of rank <= 9 are matched against the complete small catalog by
    the embedding oracle; larger definite ranks are left unclassified.
    """
    if f.rank == 0:
        return DefiniteCatalog(1, 0, 0)
    if f.indefinite:
        if f.parity is Parity.ODD:
            return IndefiniteOdd((f.rank + f.signature) // 2, (f.rank - f.signature) // 2)
        c = f.signature // 8
        return IndefiniteEven((f.rank - 8 * abs(c)) // 2, c)
    if f.rank > definite_cap:
        return DefiniteUnclassified(f.rank, f.signature, f.parity)
    sign = 1 if f.signature > 0 else -1
    if f.parity is Parity.EVEN:
        assert f.rank % 8 == 0
        return DefiniteCatalog(sign, f.rank // 8, 0)
    if f.rank < 9:
        return DefiniteCatalog(sign, 0, f.rank)
    # rank 9 odd definite: either nine units or E8 plus one unit
    nine_units = diag_form(9, 0) if sign > 0 else diag_form(0, 9)
    if embedding_oracle(f, nine_units, definite_cap=definite_cap).found:
        return DefiniteCatalog(sign, 0, 9)
    return DefiniteCatalog(sign, 1, 1)


def catalog_representative(cls: DefiniteCatalog) -> IntForm:
    """Canonical Gram matrix of a definite catalog class."""
    rep = rank_zero_form()
    for _ in range(cls.e8):
        rep = direct_sum(rep, e8_form())
    rep = direct_sum(rep, diag_form(cls.units, 0))
    return rep if cls.sign >= 0 else negate(rep)


def is_isomorphic(
    f: IntForm, g: IntForm, definite_cap: int = DEFAULT_DEFINITE_CAP
) -> Ternary:
    """Decide isometry: invariants, indefinite classification, or oracle search."""
    if f.gram == g.gram:
        return Ternary.YES
    if f.invariants != g.invariants:
        return Ternary.NO
    if f.indefinite:
        return Ternary.YES
    if f.rank > definite_cap:
        return Ternary.UNDECIDED
    return Ternary.YES if embedding_oracle(f, g, definite_cap=definite_cap).found else Ternary.NO


def exists_unimodular(rank: int, signature: int, parity: Parity) -> bool:
    """Existence of a unimodular form with the given invariants."""
    if rank == 0:
        return signature == 0 and parity is Parity.EVEN
    if abs(signature) > rank or (rank - signature) % 2 != 0:
        return False
    if parity is Parity.ODD:
        return True
    if signature % 8 != 0:
        return False
    return rank == abs(signature) or rank - abs(signature) >= 2


# ---------------------------------------------------------------------------
# embedding oracle


@dataclass(frozen=True)
class EmbeddingResult:
    """Outcome of the exhaustive sublattice search."""

    found: bool
    witness: tuple[tuple[int, ...], ...] | None
    complement_gram: Gram | None
    complete: bool  # False only for bounded searches in indefinite forms


def _inner(gram: Gram, v: Sequence[int], w: Sequence[int]) -> int:
    return sum(v[i] * gram[i][j] * w[j] for i in range(len(v)) for j in range(len(w)))


def _ldl(gram: Gram) -> tuple[list[list[Fraction]], list[Fraction]]:
    """LDL^T decomposition of a positive definite rational matrix."""
    n = len(gram)
    l = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    for j in range(n):
        d[j] = Fraction(gram[j][j]) - sum(l[j][k] ** 2 * d[k] for k in range(j))
        assert d[j] > 0, "matrix is not positive definite"
        l[j][j] = Fraction(1)
        for i in range(j + 1, n):
            l[i][j] = (
                Fraction(gram[i][j]) - sum(l[i][k] * l[j][k] * d[k] for k in range(j))
            ) / d[j]
    return l, d


def _definite_vectors_with_norm(gram: Gram, target: int) -> list[tuple[int, ...]]:
    """All v with v.v = target in a positive definite lattice (exact search)."""
    n = len(gram)
    if target < 0:
        return []
    if n == 0:
        return [()] if target == 0 else []
    l, d = _ldl(gram)
    out: list[tuple[int, ...]] = []
    v = [0] * n

    def descend(k: int, budget: Fraction) -> None:
        # the form value decomposes as sum over k of d[k] * u_k^2 with
        # u_k = v_k + sum_{j>k} l[j][k] v_j, so each level has a finite window
        shift = sum(l[j][k] * v[j] for j in range(k + 1, n))
        bound = budget / d[k]
        root = math.isqrt(int(bound)) + 1  # safe over-approximation of sqrt(bound)
        lo = math.ceil(-shift - root)
        hi = math.floor(-shift + root)
        for vk in range(lo, hi + 1):
            u = vk + shift
            used = d[k] * u * u
            if used > budget:
                continue
            v[k] = vk
            if k == 0:
                if used == budget:
                    out.append(tuple(v))
            else:
                descend(k - 1, budget - used)
        v[k] = 0

    descend(n - 1, Fraction(target))
    return sorted(out)


@lru_cache(maxsize=None)
def _box_norm_table(gram: Gram, bound: int) -> dict[int, tuple[tuple[int, ...], ...]]:
    """Vectors with coordinates in [-bound, bound], grouped by their norm."""
    n = len(gram)
    table: dict[int, list[tuple[int, ...]]] = {}
    span = range(-bound, bound + 1)
    for v in itertools.product(span, repeat=n):
        w = [sum(gram[i][j] * v[j] for j in range(n)) for i in range(n)]
        norm = sum(v[i] * w[i] for i in range(n))
        table.setdefault(norm, []).append(v)
    return {norm: tuple(sorted(vs)) for norm, vs in table.items()}


def _default_box_bound(rank: int) -> int:
    return 5 if rank <= 4 else (4 if rank == 5 else 3)


@lru_cache(maxsize=None)
def _candidate_cache(
    gram: Gram, target: int, definite: bool, negated: bool, box_bound: int
) -> tuple[tuple[int, ...], ...]:
    if definite:
        work = tuple(tuple(-v for v in row) for row in gram) if negated else gram
        want = -target if negated else target
        return tuple(_definite_vectors_with_norm(work, want))
    return _box_norm_table(gram, box_bound).get(target, ())


def embedding_oracle(
    x: IntForm,
    y: IntForm,
    definite_cap: int = DEFAULT_DEFINITE_CAP,
    box_bound: int | None = None,
) -> EmbeddingResult:
    """Exhaustive backtracking search for an isometric copy of y inside x.

    For definite x the candidate enumeration is provably complete, so
    NotFound is a certificate of non-embedding.  For indefinite x (allowed
    up to rank 6) coordinates are searched inside a finite box and a
    NotFound answer is marked incomplete.  A unimodular sublattice always
    splits off orthogonally, so a found witness comes with its complement
    Gram matrix, which is unimodular.
    """
    if x.rank > definite_cap:
        raise RankTooLarge(f"rank {x.rank} exceeds cap {definite_cap}")
    if x.indefinite and x.rank > 6:
        raise RankTooLarge("bounded search supports indefinite forms of rank <= 6 only")
    if y.rank > x.rank:
        return EmbeddingResult(False, None, None, True)
    if y.rank == 0:
        return EmbeddingResult(True, (), x.gram, True)

    definite = x.definite
    negated = definite and x.signature < 0
    bound = box_bound if box_bound is not None else _default_box_bound(x.rank)
    t = y.gram
    m = y.rank
    chosen: list[tuple[int, ...]] = []

    def search(i: int) -> bool:
        if i == m:
            return True
        for v in _candidate_cache(x.gram, t[i][i], definite, negated, bound):
            if all(_inner(x.gram, v, chosen[j]) == t[i][j] for j in range(i)):
                chosen.append(v)
                if search(i + 1):
                    return True
                chosen.pop()
        return False

    if search(0):
        witness = tuple(chosen)
        rows = [
            [sum(v[i] * x.gram[i][j] for i in range(x.rank)) for j in range(x.rank)]
            for v in witness
        ]
        kernel = integer_kernel(rows, x.rank)
        comp = tuple(tuple(_inner(x.gram, a, b) for b in kernel) for a in kernel)
        assert det_int(comp) in (1, -1), "complement of a unimodular sublattice must be unimodular"
        return EmbeddingResult(True, witness, comp, True)
    return EmbeddingResult(False, None, None, definite)


# ---------------------------------------------------------------------------
# split-off decision


@dataclass(frozen=True)
class SplitDecision:
    """Three-valued answer to "does y split off x orthogonally"."""

    outcome: Ternary
    complement: tuple[int, int, Parity] | None = None
    reason: str | None = None

    @staticmethod
    def yes(rank: int, signature: int, parity: Parity) -> "SplitDecision":
        return SplitDecision(Ternary.YES, (rank, signature, parity))

    @staticmethod
    def no(reason: str) -> "SplitDecision":
        return SplitDecision(Ternary.NO, None, reason)

    @staticmethod
    def undecided(reason: str) -> "SplitDecision":
        return SplitDecision(Ternary.UNDECIDED, None, reason)


@lru_cache(maxsize=None)
def _split_off_cached(x: IntForm, y: IntForm, definite_cap: int) -> SplitDecision:
    r = x.rank - y.rank
    s = x.signature - y.signature
    if y.rank == 0:
        return SplitDecision.yes(*x.invariants)
    if x.gram == y.gram:
        return SplitDecision.yes(0, 0, Parity.EVEN)
    if r < 0:
        return SplitDecision.no("rank-deficit")
    if abs(s) > r:
        return SplitDecision.no("signature-exceeds-rank")
    if (r - s) % 2 != 0:
        return SplitDecision.no("rank-signature-mod2")
    if x.parity is Parity.EVEN and y.parity is Parity.ODD:
        return SplitDecision.no("odd-summand-in-even-form")
    if x.indefinite:
        for comp_parity in (Parity.EVEN, Parity.ODD):
            if parity_sum(y.parity, comp_parity) is x.parity and exists_unimodular(
                r, s, comp_parity
            ):
                return SplitDecision.yes(r, s, comp_parity)
        return SplitDecision.no("no-admissible-complement-parity")
    if x.rank > definite_cap:
        return SplitDecision.undecided("definite-rank-beyond-cap")
    result = embedding_oracle(x, y, definite_cap=definite_cap)
    if result.found:
        comp = make_form(result.complement_gram)
        return SplitDecision.yes(*comp.invariants)
    return SplitDecision.no("definite-embedding-exhausted")


def split_off(
    x: IntForm, y: IntForm, definite_cap: int = DEFAULT_DEFINITE_CAP
) -> SplitDecision:
    """Decide existence of a unimodular L with y + L isomorphic to x.

    Indefinite x: settled by the invariant classification.  Definite x up
    to the cap: settled by the embedding oracle.  A rank-0 y splits off
    trivially with complement x itself.
    """
    return _split_off_cached(x, y, definite_cap)


def mod2_reduction(f: IntForm):
    """Entrywise reduction mod 2; unimodularity descends to nondegeneracy."""
    from .modtwo import ModTwoForm, make_mod2_form

    if f.rank == 0:
        return ModTwoForm((), 0, True)
    return make_mod2_form(f.gram)
