"""Nondegenerate symmetric bilinear forms over the two-element field.

Covers the GF(2) half of the splitting condition: classification into
alternating (sums of hyperbolic planes) versus non-alternating (identity)
forms, characteristic elements, and split-off decisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import Degenerate, ParseError

Gram2 = tuple[tuple[int, ...], ...]


def _rows_to_masks(gram: Gram2) -> list[int]:
    return [sum(bit << j for j, bit in enumerate(row)) for row in gram]


def _gf2_solve(gram: Gram2, rhs: Sequence[int]) -> tuple[int, ...] | None:
    """Solve gram . c = rhs over GF(2); None when the system is singular."""
    n = len(gram)
    rows = _rows_to_masks(gram)
    aug = [rows[i] | (int(rhs[i]) << n) for i in range(n)]
    pivot_cols: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if aug[i] >> c & 1), None)
        if pivot is None:
            return None
        aug[r], aug[pivot] = aug[pivot], aug[r]
        for i in range(n):
            if i != r and aug[i] >> c & 1:
                aug[i] ^= aug[r]
        pivot_cols.append(c)
        r += 1
    sol = [0] * n
    for i, c in enumerate(pivot_cols):
        sol[c] = aug[i] >> n & 1
    return tuple(sol)


def _gf2_rank(gram: Gram2) -> int:
    rows = _rows_to_masks(gram)
    rank = 0
    for c in range(len(gram)):
        pivot = next((i for i in range(rank, len(rows)) if rows[i] >> c & 1), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] >> c & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


@dataclass(frozen=True)
class ModTwoForm:
    """Nondegenerate symmetric bilinear form over GF(2)."""

    gram: Gram2
    rank: int
    alternating: bool

    def to_json(self) -> dict:
        return {"gram2": [list(row) for row in self.gram]}

    def __repr__(self) -> str:
        kind = "alternating" if self.alternating else "non-alternating"
        return f"ModTwoForm(rank={self.rank}, {kind})"


def make_mod2_form(matrix: Sequence[Sequence[int]]) -> ModTwoForm:
    """Validate symmetry and nondegeneracy, reduce entries mod 2."""
    gram = tuple(tuple(int(v) % 2 for v in row) for row in matrix)
    n = len(gram)
    if any(len(row) != n for row in gram):
        raise Degenerate("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] != gram[j][i]:
                raise Degenerate(f"entry ({i},{j}) != ({j},{i}) mod 2")
    if _gf2_rank(gram) != n:
        raise Degenerate("form is singular over GF(2)")
    alternating = all(gram[i][i] == 0 for i in range(n))
    if alternating:
        assert n % 2 == 0, "nondegenerate alternating form has even rank"
    return ModTwoForm(gram, n, alternating)


def direct_sum_z2(f: ModTwoForm, g: ModTwoForm) -> ModTwoForm:
    """Block sum; alternating exactly when both summands are."""
    n, m = f.rank, g.rank
    gram = tuple(
        tuple(f.gram[i][j] if j < n else 0 for j in range(n + m)) for i in range(n)
    ) + tuple(
        tuple(0 if j < n else g.gram[i][j - n] for j in range(n + m)) for i in range(m)
    )
    return ModTwoForm(gram, n + m, f.alternating and g.alternating)


def characteristic_element(f: ModTwoForm) -> tuple[int, ...]:
    """The unique c with c.x = x.x for all x (zero exactly for alternating forms)."""
    diag = [f.gram[i][i] for i in range(f.rank)]
    sol = _gf2_solve(f.gram, diag)
    if sol is None:
        raise Degenerate("no unique characteristic element")
    return sol


@dataclass(frozen=True)
class Alternating:
    planes: int

    @property
    def rank(self) -> int:
        return 2 * self.planes


@dataclass(frozen=True)
class NonAlternating:
    rank: int


Z2Class = Union[Alternating, NonAlternating]


def classify_z2(f: ModTwoForm) -> Z2Class:
    """Alternating forms are sums of hyperbolic planes; the rest are identities."""
    if f.alternating:
        return Alternating(f.rank // 2)
    return NonAlternating(f.rank)


@dataclass(frozen=True)
class Z2SplitDecision:
    yes: bool
    reason: str | None = None
    complement: Z2Class | None = None


def split_off_z2_classes(
    x_alternating: bool, x_rank: int, y_alternating: bool, y_rank: int
) -> Z2SplitDecision:
    """Class-level split decision: does y + L = x have a nondegenerate solution L.

    When both an alternating and a non-alternating complement would work,
    the alternating one is reported.
    """
    r = x_rank - y_rank
    if r < 0:
        return Z2SplitDecision(False, "rank-deficit")
    if x_alternating:
        if not y_alternating:
            return Z2SplitDecision(False, "non-alternating-summand-in-alternating-form")
        if r % 2 != 0:
            return Z2SplitDecision(False, "odd-rank-alternating-complement")
        return Z2SplitDecision(True, None, Alternating(r // 2))
    if r == 0:
        if y_alternating:
            return Z2SplitDecision(False, "alternating-form-is-not-non-alternating")
        return Z2SplitDecision(True, None, Alternating(0))
    if y_alternating:
        # the complement must carry the non-zero characteristic element
        return Z2SplitDecision(True, None, NonAlternating(r))
    if r % 2 == 0:
        return Z2SplitDecision(True, None, Alternating(r // 2))
    return Z2SplitDecision(True, None, NonAlternating(r))


def split_off_z2(x: ModTwoForm, y: ModTwoForm) -> Z2SplitDecision:
    """Decide existence of a nondegenerate L with y + L isomorphic to x."""
    return split_off_z2_classes(x.alternating, x.rank, y.alternating, y.rank)


# ---------------------------------------------------------------------------
# built-ins and parsing


def hyperbolic_plane_z2() -> ModTwoForm:
    return make_mod2_form([[0, 1], [1, 0]])


def identity_z2(n: int) -> ModTwoForm:
    if n == 0:
        return ModTwoForm((), 0, True)
    return make_mod2_form([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def rank_zero_z2() -> ModTwoForm:
    return ModTwoForm((), 0, True)


def named_mod2_form(name: str) -> ModTwoForm:
    if name == "H2":
        return hyperbolic_plane_z2()
    if name.startswith("I2(") and name.endswith(")"):
        return identity_z2(int(name[3:-1]))
    raise ParseError(f"unknown GF(2) form name {name!r}")


def mod2_form_from_json(data) -> ModTwoForm:
    if isinstance(data, str):
        return named_mod2_form(data)
    if not isinstance(data, dict) or "gram2" not in data:
        raise ParseError("GF(2) form JSON must be {'gram2': [[...]]} or a built-in name")
    return make_mod2_form(data["gram2"])
