"""Exact arithmetic in Z[t, t^-1] and hermitian forms over it.

The involution is t -> t^-1 extended linearly; a matrix is hermitian when
its conjugate transpose equals itself.  Determinants are computed by
fraction-free (Bareiss) elimination, exact in the Laurent ring.  The module
also hosts the built-in rank-4 hermitian form "A" together with the axiom
registry that records forms known not to admit an integer-matrix basis.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import (
    NotHermitian,
    NotUnimodular,
    NotUnimodularAfterAugmentation,
    ParseError,
    RankMismatch,
)
from .intforms import IntForm, make_form

Terms = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial, stored as sorted (exponent, coefficient) pairs."""

    terms: Terms = ()

    @staticmethod
    def from_dict(coeffs: Mapping[int, int]) -> "LaurentPoly":
        terms = tuple(sorted((int(e), int(c)) for e, c in coeffs.items() if int(c) != 0))
        return LaurentPoly(terms)

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly(((0, int(c)),)) if c else LaurentPoly()

    @staticmethod
    def t_power(k: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly(((k, coeff),)) if coeff else LaurentPoly()

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly.from_dict(acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(acc)

    def conjugate(self) -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((-e, c) for e, c in self.terms)))

    def augmentation(self) -> int:
        """Image under the ring map t -> 1."""
        return sum(c for _, c in self.terms)

    @property
    def is_unit(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] in (1, -1)

    def is_self_conjugate(self) -> bool:
        return self == self.conjugate()

    def to_json(self) -> dict:
        return {"poly": {str(e): c for e, c in self.terms}}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{e}")
        return " + ".join(parts)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.t_power(1)
S = LaurentPoly.from_dict({1: 1, -1: 1})  # t + t^-1


def conjugate(p: LaurentPoly) -> LaurentPoly:
    """The involution t -> t^-1 (an involution: applying twice is the identity)."""
    return p.conjugate()


def poly_from_json(data) -> LaurentPoly:
    if isinstance(data, int):
        return LaurentPoly.const(data)
    if isinstance(data, dict) and "poly" in data:
        try:
            return LaurentPoly.from_dict({int(e): int(c) for e, c in data["poly"].items()})
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad Laurent polynomial: {exc}") from exc
    raise ParseError("Laurent polynomial JSON must be an int or {'poly': {exp: coeff}}")


def _exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact division in the Laurent ring; raises if the division is not exact."""
    if den.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero:
        return ZERO
    nlo, nhi = num.terms[0][0], num.terms[-1][0]
    dlo, dhi = den.terms[0][0], den.terms[-1][0]
    # shift to ordinary polynomials with nonzero constant terms
    ncoef = [0] * (nhi - nlo + 1)
    for e, c in num.terms:
        ncoef[e - nlo] = c
    dcoef = [0] * (dhi - dlo + 1)
    for e, c in den.terms:
        dcoef[e - dlo] = c
    q = [Fraction(0)] * (len(ncoef) - len(dcoef) + 1)
    rem = [Fraction(c) for c in ncoef]
    lead = Fraction(dcoef[-1])
    for k in range(len(q) - 1, -1, -1):
        coef = rem[k + len(dcoef) - 1] / lead
        q[k] = coef
        if coef:
            for i, dc in enumerate(dcoef):
                rem[k + i] -= coef * dc
    if any(rem) or any(c.denominator != 1 for c in q):
        raise ArithmeticError("inexact Laurent division")
    shift = nlo - dlo
    return LaurentPoly.from_dict({i + shift: int(c) for i, c in enumerate(q)})


LaurentMatrix = tuple[tuple[LaurentPoly, ...], ...]


def laurent_matrix(entries: Sequence[Sequence[LaurentPoly]]) -> LaurentMatrix:
    return tuple(tuple(row) for row in entries)


def laurent_identity(n: int) -> LaurentMatrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def laurent_matmul(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for l in range(k):
                acc = acc + a[i][l] * b[l][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def conjugate_transpose(m: LaurentMatrix) -> LaurentMatrix:
    n = len(m)
    cols = len(m[0]) if m else 0
    return tuple(tuple(m[j][i].conjugate() for j in range(n)) for i in range(cols))


def laurent_block_diag(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    n, m = len(a), len(b)
    top = tuple(tuple(a[i][j] if j < n else ZERO for j in range(n + m)) for i in range(n))
    bot = tuple(tuple(ZERO if j < n else b[i][j - n] for j in range(n + m)) for i in range(m))
    return top + bot


def laurent_det(matrix: LaurentMatrix) -> LaurentPoly:
    """Fraction-free Bareiss determinant over the Laurent ring."""
    n = len(matrix)
    if n == 0:
        return ONE
    m = [list(row) for row in matrix]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if pivot is None:
                return ZERO
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
            m[i][k] = ZERO
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# hermitian forms


@dataclass(frozen=True)
class HermitianLambdaForm:
    """Square Laurent matrix fixed by conjugate transposition."""

    entries: LaurentMatrix
    rank: int

    def to_json(self) -> dict:
        return {"lambda_gram": [[p.to_json() for p in row] for row in self.entries]}

    def __repr__(self) -> str:
        return f"HermitianLambdaForm(rank={self.rank})"


def make_hermitian_form(entries: Sequence[Sequence[LaurentPoly]]) -> HermitianLambdaForm:
    mat = laurent_matrix(entries)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise NotHermitian("matrix is not square")
    for i in range(n):
        for j in range(n):
            if mat[i][j].conjugate() != mat[j][i]:
                raise NotHermitian(f"entry ({i},{j}) is not the conjugate of ({j},{i})")
    return HermitianLambdaForm(mat, n)


@lru_cache(maxsize=None)
def determinant(m: HermitianLambdaForm) -> LaurentPoly:
    """Exact determinant of a hermitian Laurent form."""
    return laurent_det(m.entries)


def is_nonsingular(m: HermitianLambdaForm) -> bool:
    """True when the determinant is a unit, i.e. plus or minus a power of t."""
    return determinant(m).is_unit


def augment(m: HermitianLambdaForm) -> IntForm:
    """Substitute t = 1 in every entry and validate the integer result."""
    matrix = [[p.augmentation() for p in row] for row in m.entries]
    try:
        return make_form(matrix)
    except NotUnimodular as exc:
        raise NotUnimodularAfterAugmentation(str(exc)) from exc


def extend_from_integer(f: IntForm) -> HermitianLambdaForm:
    """Constant-entry Laurent form with the same Gram matrix."""
    entries = tuple(tuple(LaurentPoly.const(v) for v in row) for row in f.gram)
    return HermitianLambdaForm(entries, f.rank)


def verify_extension_witness(
    n: HermitianLambdaForm, p: LaurentMatrix, b: IntForm
) -> bool:
    """Check that p is a unit base change carrying the constant form b to n.

    This only verifies a supplied witness; it never searches for one.
    """
    if len(p) != n.rank or any(len(row) != n.rank for row in p):
        raise RankMismatch("witness matrix rank differs from the form rank")
    if b.rank != n.rank:
        raise RankMismatch("integer form rank differs from the form rank")
    if not laurent_det(p).is_unit:
        return False
    product = laurent_matmul(
        laurent_matmul(conjugate_transpose(p), extend_from_integer(b).entries), p
    )
    return product == n.entries


@lru_cache(maxsize=None)
def ht_matrix_A() -> HermitianLambdaForm:
    """The built-in rank-4 hermitian form "A" (s = t + t^-1)."""
    s = S
    s2 = S * S
    one = ONE
    two = LaurentPoly.const(2)
    entries = [
        [one + s + s2, s + s2, one + s, s],
        [s + s2, one + s + s2, s, one + s],
        [one + s, s, two, ZERO],
        [s, one + s, ZERO, two],
    ]
    return make_hermitian_form(entries)


def hermitian_from_json(data) -> HermitianLambdaForm:
    if isinstance(data, str):
        if data == "A":
            return ht_matrix_A()
        raise ParseError(f"unknown hermitian form name {data!r}")
    if not isinstance(data, dict) or "lambda_gram" not in data:
        raise ParseError("hermitian form JSON must be {'lambda_gram': [[poly, ...]]}")
    entries = [[poly_from_json(p) for p in row] for row in data["lambda_gram"]]
    return make_hermitian_form(entries)


# ---------------------------------------------------------------------------
# non-extension axiom registry


@dataclass(frozen=True)
class NonExtensionAxiom:
    """A hermitian form recorded as admitting no integer-matrix basis."""

    axiom_id: str
    form: HermitianLambdaForm
    note: str = ""


class AxiomRegistry:
    """Lookup table of non-extension axioms, keyed by identifier."""

    def __init__(self, axioms: Iterable[NonExtensionAxiom] = ()):
        self._axioms = {a.axiom_id: a for a in axioms}

    def get(self, axiom_id: str) -> NonExtensionAxiom | None:
        return self._axioms.get(axiom_id)

    def covers(self, axiom_id: str, form: HermitianLambdaForm) -> bool:
        """True when the identified axiom exists and matches the form entrywise."""
        axiom = self.get(axiom_id)
        return axiom is not None and axiom.form.entries == form.entries

    def ids(self) -> list[str]:
        return sorted(self._axioms)


BUILTIN_AXIOM_ID = "non-extended:A"


@lru_cache(maxsize=None)
def builtin_registry() -> AxiomRegistry:
    return AxiomRegistry(
        [
            NonExtensionAxiom(
                BUILTIN_AXIOM_ID,
                ht_matrix_A(),
                "rank-4 hermitian form with no integer-matrix basis",
            )
        ]
    )


def load_registry(path: str) -> AxiomRegistry:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    axioms = []
    for item in data.get("axioms", []):
        axioms.append(
            NonExtensionAxiom(
                item["id"],
                hermitian_from_json({"lambda_gram": item["lambda_gram"]}),
                item.get("note", ""),
            )
        )
    return AxiomRegistry(axioms)


AXIOMS_ENV_VAR = "FOURDOM_AXIOMS"


def registry_from_env() -> AxiomRegistry:
    """Registry named by the FOURDOM_AXIOMS path, or the built-in one."""
    path = os.environ.get(AXIOMS_ENV_VAR)
    if path:
        return load_registry(path)
    return builtin_registry()
