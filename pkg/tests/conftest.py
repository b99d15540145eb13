"""Shared corpora and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random

import pytest
import sympy

from fourdom import intforms, laurent, manifolds
from fourdom.intforms import IntForm, Parity, diag_form, direct_sum, hyperbolic_plane
from fourdom.manifolds import (
    ExtendedWitness,
    FiniteCyclic,
    InfiniteCyclic,
    RegisteredNonExtended,
    SimplyConnected,
    W2,
)

# ---------------------------------------------------------------------------
# independent signature oracles


def signature_oracle(gram) -> int:
    """Signature from the characteristic polynomial via Descartes' rule.

    A real symmetric matrix has only real eigenvalues, and unimodularity
    rules out zero eigenvalues, so the count of positive roots equals the
    number of coefficient sign changes exactly.
    """
    n = len(gram)
    if n == 0:
        return 0
    lam = sympy.Symbol("lam")
    poly = sympy.Matrix(gram).charpoly(lam)
    coeffs = [c for c in poly.all_coeffs() if c != 0]
    changes = sum(1 for a, b in zip(coeffs, coeffs[1:]) if (a > 0) != (b > 0))
    return 2 * changes - n


def signature_by_minors(gram) -> int | None:
    """Jacobi's rule from leading principal minors; None when a minor vanishes."""
    n = len(gram)
    prev = 1
    signature = 0
    for k in range(1, n + 1):
        minor = sympy.Matrix([row[:k] for row in gram[:k]]).det()
        if minor == 0:
            return None
        signature += 1 if (minor > 0) == (prev > 0) else -1
        prev = minor
    return signature


# ---------------------------------------------------------------------------
# GF(2) oracles


def echelon_subspaces(n: int, k: int):
    """All k-dimensional subspaces of GF(2)^n as reduced-echelon row bases."""
    for pivots in itertools.combinations(range(n), k):
        free_positions = [
            (i, c)
            for i in range(k)
            for c in range(n)
            if c > pivots[i] and c not in pivots
        ]
        for bits in itertools.product((0, 1), repeat=len(free_positions)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), b in zip(free_positions, bits):
                rows[i][c] = b
            yield tuple(tuple(r) for r in rows)


def z2_split_oracle(x, y) -> bool:
    """Exhaustive subspace search for a nondegenerate copy of y inside x.

    A nondegenerate subspace splits off orthogonally, so existence of a
    suitable subspace decides the split.
    """
    from fourdom.modtwo import make_mod2_form
    from fourdom.errors import Degenerate

    if y.rank > x.rank:
        return False
    if y.rank == 0:
        return True  # the empty summand always splits
    for basis in echelon_subspaces(x.rank, y.rank):
        gram = [
            [
                sum(
                    basis[a][i] * x.gram[i][j] * basis[b][j]
                    for i in range(x.rank)
                    for j in range(x.rank)
                )
                % 2
                for b in range(y.rank)
            ]
            for a in range(y.rank)
        ]
        try:
            restricted = make_mod2_form(gram)
        except Degenerate:
            continue
        if restricted.alternating == y.alternating:
            return True
    return False


def all_gl2_matrices(n: int):
    """Every invertible n x n matrix over GF(2) (use only for small n)."""
    from fourdom.modtwo import _gf2_rank

    for bits in itertools.product((0, 1), repeat=n * n):
        rows = tuple(tuple(bits[i * n : (i + 1) * n]) for i in range(n))
        if _gf2_rank(rows) == n:
            yield rows


def gf2_base_change(gram, p):
    n = len(gram)
    return tuple(
        tuple(
            sum(p[a][i] * gram[i][j] * p[b][j] for i in range(n) for j in range(n)) % 2
            for b in range(n)
        )
        for a in range(n)
    )


# ---------------------------------------------------------------------------
# integer form corpora


@pytest.fixture(scope="session")
def corpus_forms() -> list[IntForm]:
    """Fixed rank <= 4 forms assembled from the built-ins."""
    h = hyperbolic_plane()
    forms = [intforms.rank_zero_form(), h, direct_sum(h, h), intforms.a1_form()]
    for total in range(1, 5):
        for p in range(total + 1):
            forms.append(diag_form(p, total - p))
    for extra in [diag_form(1, 0), diag_form(0, 1), diag_form(2, 0), diag_form(1, 1), diag_form(0, 2)]:
        forms.append(direct_sum(h, extra))
    return forms


def random_symmetric_unimodular(rng: random.Random, max_rank: int = 4) -> IntForm | None:
    """One rejection-sampling attempt at a small unimodular form."""
    n = rng.randint(1, max_rank)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rng.randint(-2, 2)
    if intforms.det_int(tuple(tuple(r) for r in m)) in (1, -1):
        return intforms.make_form(m)
    return None


@pytest.fixture(scope="session")
def random_form_pool() -> list[IntForm]:
    """Deterministic pool of small unimodular forms with entries in [-2, 2]."""
    rng = random.Random(20240331)
    seen: dict = {}
    attempts = 0
    while len(seen) < 40 and attempts < 40000:
        attempts += 1
        f = random_symmetric_unimodular(rng)
        if f is not None:
            seen.setdefault(f.gram, f)
    return list(seen.values())


# ---------------------------------------------------------------------------
# descriptor corpora


def consistent_w2_ks(n: int, form: IntForm) -> list[tuple[W2, int]]:
    """All (w2, ks) pairs the validity rules allow for this order and form."""
    even_form = form.parity is Parity.EVEN
    sig8 = (form.signature // 8) % 2 if even_form else None
    if n % 2 == 0:
        if even_form:
            return [(W2.TYPE_II, sig8), (W2.TYPE_III, 0), (W2.TYPE_III, 1)]
        return [(W2.TYPE_I, 0), (W2.TYPE_I, 1)]
    if even_form:
        return [(W2.SPIN, sig8)]
    return [(W2.NONSPIN, 0), (W2.NONSPIN, 1)]


@pytest.fixture(scope="session")
def finite_cyclic_corpus(corpus_forms) -> list[FiniteCyclic]:
    out = []
    for n in (2, 3, 4, 5):
        for form in corpus_forms:
            for w2, ks in consistent_w2_ks(n, form):
                out.append(FiniteCyclic(n, form, w2, ks))
    return out


@pytest.fixture(scope="session")
def ht_pair() -> tuple[InfiniteCyclic, InfiniteCyclic]:
    """The registered fixture: x carries an extended form, y carries "A"."""
    a1 = intforms.a1_form()
    x = InfiniteCyclic(
        a1,
        0,
        laurent.extend_from_integer(a1),
        ExtendedWitness(laurent.laurent_identity(4), a1),
    )
    y = InfiniteCyclic(a1, 0, laurent.ht_matrix_A(), RegisteredNonExtended("non-extended:A"))
    return x, y


@pytest.fixture(scope="session")
def infinite_cyclic_corpus(corpus_forms, ht_pair) -> list[InfiniteCyclic]:
    out = [
        manifolds.s1xs3(),
        InfiniteCyclic(intforms.rank_zero_form(), 1),
        InfiniteCyclic(intforms.rank_zero_form(), 0),
    ]
    for form in corpus_forms:
        out.append(InfiniteCyclic(form, 0))
    out.extend(ht_pair)
    # dedupe, preserving order
    seen = set()
    unique = []
    for d in out:
        key = (d.int_form.gram, d.ks, d.lambda_form is None, type(d.extension).__name__)
        if key not in seen:
            seen.add(key)
            unique.append(d)
    return unique


@pytest.fixture(scope="session")
def simply_connected_corpus(corpus_forms) -> list[SimplyConnected]:
    out = []
    for form in corpus_forms:
        if form.parity is Parity.ODD:
            out.extend(SimplyConnected(form, ks) for ks in (0, 1))
        else:
            out.append(SimplyConnected(form, (form.signature // 8) % 2))
    return out
