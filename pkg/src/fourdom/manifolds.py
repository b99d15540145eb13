"""Manifold descriptors for trivial, infinite cyclic, and finite cyclic pi_1.

A descriptor is the classification datum of a closed orientable 4-manifold:
the intersection form, plus the w2-type and Kirby-Siebenmann invariant for
finite cyclic groups, plus the optional hermitian form over the Laurent
ring and its extension status for infinite cyclic groups.  Validity rules
encode the parity / w2-type / ks constraints; operations cover Betti
numbers, connected sums, the rational-homology-sphere catalog, the
connected sum decomposition into a rational homology sphere and a simply
connected manifold, and stabilization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from . import intforms, laurent
from .errors import (
    InvalidDescriptor,
    ParseError,
    UnsupportedPi1Combination,
    Z2ExtrapolationRequired,
)
from .intforms import IntForm, Parity, direct_sum, make_form
from .laurent import (
    AxiomRegistry,
    HermitianLambdaForm,
    LaurentMatrix,
    registry_from_env,
)
from .modtwo import ModTwoForm, direct_sum_z2, hyperbolic_plane_z2, identity_z2


class W2(Enum):
    TYPE_I = "I"        # totally non-spin (even order)
    TYPE_II = "II"      # spin (even order)
    TYPE_III = "III"    # almost spin (even order)
    SPIN = "spin"       # odd order or derived usage
    NONSPIN = "nonspin"


# ---------------------------------------------------------------------------
# extension status for infinite cyclic descriptors


@dataclass(frozen=True)
class ExtendedWitness:
    """A verifiable base change exhibiting the hermitian form as constant."""

    transform: LaurentMatrix
    base: IntForm


@dataclass(frozen=True)
class RegisteredNonExtended:
    """Reference into the registry of forms known not to be extended."""

    axiom_id: str


@dataclass(frozen=True)
class UnknownExtension:
    pass


ExtensionStatus = Union[ExtendedWitness, RegisteredNonExtended, UnknownExtension]
EXTENSION_UNKNOWN = UnknownExtension()


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class SimplyConnected:
    form: IntForm
    ks: int

    @property
    def int_form(self) -> IntForm:
        return self.form


@dataclass(frozen=True)
class InfiniteCyclic:
    int_form: IntForm
    ks: int
    lambda_form: HermitianLambdaForm | None = None
    extension: ExtensionStatus = field(default_factory=lambda: EXTENSION_UNKNOWN)

    @property
    def form(self) -> IntForm:
        return self.int_form


@dataclass(frozen=True)
class FiniteCyclic:
    n: int
    form: IntForm
    w2: W2
    ks: int

    @property
    def int_form(self) -> IntForm:
        return self.form


ManifoldDescriptor = Union[SimplyConnected, InfiniteCyclic, FiniteCyclic]


def pi1_kind(d: ManifoldDescriptor) -> str:
    if isinstance(d, SimplyConnected):
        return "1"
    if isinstance(d, InfiniteCyclic):
        return "Z"
    return f"Z{d.n}"


# ---------------------------------------------------------------------------
# rational homology sphere labels


class SigmaKind(Enum):
    STAR = "star"   # odd order, spin
    ZERO = "zero"   # even order, type II
    ONE = "one"     # even order, type III


@dataclass(frozen=True)
class SigmaLabel:
    kind: SigmaKind
    n: int
    i: int = 0  # only meaningful for the type III pair

    @property
    def ks(self) -> int:
        return self.i if self.kind is SigmaKind.ONE else 0

    def name(self) -> str:
        if self.kind is SigmaKind.STAR:
            return f"SigmaStar({self.n})"
        if self.kind is SigmaKind.ZERO:
            return f"Sigma0({self.n})"
        return f"Sigma1({self.n},{self.i})"


def sigma_descriptor(label: SigmaLabel) -> FiniteCyclic:
    """The rational homology sphere named by a label, as a descriptor."""
    form = intforms.rank_zero_form()
    if label.kind is SigmaKind.STAR:
        return FiniteCyclic(label.n, form, W2.SPIN, 0)
    if label.kind is SigmaKind.ZERO:
        return FiniteCyclic(label.n, form, W2.TYPE_II, 0)
    return FiniteCyclic(label.n, form, W2.TYPE_III, label.i)


# ---------------------------------------------------------------------------
# validation


def _sig8(form: IntForm) -> int:
    return (form.signature // 8) % 2


def validate(d: ManifoldDescriptor, registry: AxiomRegistry | None = None) -> list[str]:
    """Return the violated consistency rules, by name; empty means valid."""
    violations: list[str] = []
    if d.ks not in (0, 1):
        violations.append("ks-range")
        return violations
    if isinstance(d, SimplyConnected):
        if d.form.parity is Parity.EVEN and d.ks != _sig8(d.form):
            violations.append("even-form-ks")
        return violations
    if isinstance(d, InfiniteCyclic):
        lam = d.lambda_form
        if lam is not None:
            if lam.rank != d.int_form.rank:
                violations.append("lambda-rank")
            else:
                try:
                    shadow = laurent.augment(lam)
                except Exception:
                    violations.append("lambda-not-unimodular")
                else:
                    if shadow.invariants != d.int_form.invariants:
                        violations.append("lambda-augmentation-invariants")
        status = d.extension
        if isinstance(status, ExtendedWitness):
            if lam is None:
                violations.append("extension-witness-without-lambda")
            else:
                try:
                    ok = laurent.verify_extension_witness(lam, status.transform, status.base)
                except Exception:
                    ok = False
                if not ok:
                    violations.append("extension-witness-invalid")
        elif isinstance(status, RegisteredNonExtended):
            reg = registry if registry is not None else registry_from_env()
            if lam is None or not reg.covers(status.axiom_id, lam):
                violations.append("extension-axiom-mismatch")
        return violations
    # finite cyclic
    if d.n < 2:
        violations.append("n-range")
        return violations
    even_order = d.n % 2 == 0
    if even_order:
        if d.w2 not in (W2.TYPE_I, W2.TYPE_II, W2.TYPE_III):
            violations.append("w2-domain")
            return violations
        even_form = d.form.parity is Parity.EVEN
        if even_form != (d.w2 in (W2.TYPE_II, W2.TYPE_III)):
            violations.append("w2-parity")
        if d.w2 is W2.TYPE_II and not violations and d.ks != _sig8(d.form):
            violations.append("spin-ks")
    else:
        if d.w2 not in (W2.SPIN, W2.NONSPIN):
            violations.append("w2-domain")
            return violations
        even_form = d.form.parity is Parity.EVEN
        if (d.w2 is W2.SPIN) != even_form:
            violations.append("w2-parity")
        if d.w2 is W2.SPIN and not violations and d.ks != _sig8(d.form):
            violations.append("spin-ks")
    return violations


def require_valid(d: ManifoldDescriptor, registry: AxiomRegistry | None = None) -> None:
    violations = validate(d, registry)
    if violations:
        raise InvalidDescriptor(violations)


# ---------------------------------------------------------------------------
# invariants


def betti(d: ManifoldDescriptor) -> tuple[int, int, int, int, int]:
    """Betti numbers (b0, b1, b2, b3, b4) of a valid descriptor."""
    require_valid(d)
    b1 = 1 if isinstance(d, InfiniteCyclic) else 0
    b2 = d.int_form.rank
    return (1, b1, b2, b1, 1)


def chi(d: ManifoldDescriptor) -> int:
    """Euler characteristic 2 - 2*b1 + b2."""
    _, b1, b2, _, _ = betti(d)
    return 2 - 2 * b1 + b2


def decomposition_slack(d: ManifoldDescriptor) -> int:
    """b2 minus |signature|; at least 6 means an S1 x S3 factor splits off."""
    return d.int_form.rank - abs(d.int_form.signature)


# ---------------------------------------------------------------------------
# connected sums


def _sum_w2_even_order(w2: W2, other_parity: Parity) -> W2:
    # summing with an even simply connected form preserves the type;
    # an odd summand makes the total form odd, hence totally non-spin
    return w2 if other_parity is Parity.EVEN else W2.TYPE_I


def _sum_w2_odd_order(w2: W2, other_parity: Parity) -> W2:
    return W2.SPIN if (w2 is W2.SPIN and other_parity is Parity.EVEN) else W2.NONSPIN


def connected_sum(
    d1: ManifoldDescriptor, d2: ManifoldDescriptor
) -> ManifoldDescriptor:
    """Connected sum; at most one summand may have non-trivial pi_1."""
    if not isinstance(d1, SimplyConnected) and not isinstance(d2, SimplyConnected):
        raise UnsupportedPi1Combination(
            "free products of non-trivial fundamental groups are not modelled"
        )
    if isinstance(d1, SimplyConnected) and isinstance(d2, SimplyConnected):
        return SimplyConnected(direct_sum(d1.form, d2.form), (d1.ks + d2.ks) % 2)
    base, sc = (d1, d2) if isinstance(d2, SimplyConnected) else (d2, d1)
    ks = (base.ks + sc.ks) % 2
    if isinstance(base, InfiniteCyclic):
        lam = base.lambda_form
        new_lam = None
        if lam is not None:
            new_lam = HermitianLambdaForm(
                laurent.laurent_block_diag(
                    lam.entries, laurent.extend_from_integer(sc.form).entries
                ),
                lam.rank + sc.form.rank,
            )
        status: ExtensionStatus = EXTENSION_UNKNOWN
        if isinstance(base.extension, ExtendedWitness) and new_lam is not None:
            status = ExtendedWitness(
                laurent.laurent_block_diag(
                    base.extension.transform, laurent.laurent_identity(sc.form.rank)
                ),
                direct_sum(base.extension.base, sc.form),
            )
        # a registered non-extension axiom does not survive stabilization:
        # adding hyperbolic summands can make a form extended
        return InfiniteCyclic(direct_sum(base.int_form, sc.form), ks, new_lam, status)
    assert isinstance(base, FiniteCyclic)
    if base.n % 2 == 0:
        w2 = _sum_w2_even_order(base.w2, sc.form.parity)
    else:
        w2 = _sum_w2_odd_order(base.w2, sc.form.parity)
    return FiniteCyclic(base.n, direct_sum(base.form, sc.form), w2, ks)


def stabilize(d: ManifoldDescriptor, k: int) -> ManifoldDescriptor:
    """Connected sum with k copies of the ks-0 manifold carrying one hyperbolic plane."""
    out = d
    plane = SimplyConnected(intforms.hyperbolic_plane(), 0)
    for _ in range(k):
        out = connected_sum(out, plane)
    return out


# ---------------------------------------------------------------------------
# rational homology sphere catalog


@dataclass(frozen=True)
class RhsEntry:
    label: SigmaLabel
    descriptor: FiniteCyclic
    homotopy_equivalent_partner: str | None = None


def rhs_catalog(n: int) -> list[RhsEntry]:
    """All rational homology spheres with cyclic fundamental group of order n.

    Odd n: a single spin manifold.  Even n: the type II manifold and the
    two type III manifolds, which are homotopy equivalent to each other.
    """
    if n % 2 == 1:
        label = SigmaLabel(SigmaKind.STAR, n)
        return [RhsEntry(label, sigma_descriptor(label))]
    zero = SigmaLabel(SigmaKind.ZERO, n)
    one0 = SigmaLabel(SigmaKind.ONE, n, 0)
    one1 = SigmaLabel(SigmaKind.ONE, n, 1)
    return [
        RhsEntry(zero, sigma_descriptor(zero)),
        RhsEntry(one0, sigma_descriptor(one0), one1.name()),
        RhsEntry(one1, sigma_descriptor(one1), one0.name()),
    ]


# ---------------------------------------------------------------------------
# GF(2) intersection forms of finite cyclic descriptors


def z2_class(d: FiniteCyclic) -> tuple[bool, int]:
    """(alternating, rank) of the full GF(2) intersection form.

    The alternation is governed by the w2-type alone; for even order the
    rank gains the rank-2 block contributed by the torsion summand.  The
    relative outcome of split decisions between equal-order descriptors
    does not depend on the shape of that block.
    """
    require_valid(d)
    if d.n % 2 == 1:
        return (d.form.parity is Parity.EVEN, d.form.rank)
    return (d.w2 is W2.TYPE_II, d.form.rank + 2)


def z2_form(d: FiniteCyclic, extrapolation: bool = False) -> ModTwoForm:
    """Explicit GF(2) intersection form of a finite cyclic descriptor.

    For even order the torsion block is taken from the order-2 models
    (hyperbolic plane for type II and for the canonical decomposition of
    type I; rank-2 identity for type III).  For even order above 2 this
    block shape is an extrapolation and must be opted into.
    """
    require_valid(d)
    reduced = intforms.mod2_reduction(d.form)
    if d.n % 2 == 1:
        return reduced
    if d.n > 2 and not extrapolation:
        raise Z2ExtrapolationRequired(
            "torsion block for even order above 2 is extrapolated from the order-2 "
            "models; pass extrapolation=True to accept the labelling"
        )
    block = identity_z2(2) if d.w2 is W2.TYPE_III else hyperbolic_plane_z2()
    return direct_sum_z2(reduced, block)


# ---------------------------------------------------------------------------
# decomposition into a rational homology sphere and a simply connected part


@dataclass(frozen=True)
class Decomposition:
    sigma: SigmaLabel
    summand: SimplyConnected


@dataclass(frozen=True)
class DecompositionSet:
    primary: Decomposition
    alternates: tuple[Decomposition, ...] = ()

    def all(self) -> tuple[Decomposition, ...]:
        return (self.primary,) + self.alternates


def decompose(d: FiniteCyclic) -> DecompositionSet:
    """Split a finite cyclic descriptor as rational homology sphere # simply connected.

    The simply connected part always carries the full intersection form.
    Type I descriptors admit three decompositions; reassembling any of them
    reproduces the descriptor's class.
    """
    require_valid(d)
    n = d.n
    if n % 2 == 1:
        return DecompositionSet(
            Decomposition(SigmaLabel(SigmaKind.STAR, n), SimplyConnected(d.form, d.ks))
        )
    if d.w2 is W2.TYPE_II:
        m_ks = _sig8(d.form)
        return DecompositionSet(
            Decomposition(SigmaLabel(SigmaKind.ZERO, n), SimplyConnected(d.form, m_ks))
        )
    if d.w2 is W2.TYPE_III:
        m_ks = _sig8(d.form)
        i = (d.ks - m_ks) % 2
        return DecompositionSet(
            Decomposition(SigmaLabel(SigmaKind.ONE, n, i), SimplyConnected(d.form, m_ks))
        )
    # type I: odd form, so the simply connected part absorbs either ks value
    m = SimplyConnected(d.form, d.ks)
    m_star = SimplyConnected(d.form, (1 - d.ks) % 2)
    return DecompositionSet(
        Decomposition(SigmaLabel(SigmaKind.ZERO, n), m),
        (
            Decomposition(SigmaLabel(SigmaKind.ONE, n, 0), m),
            Decomposition(SigmaLabel(SigmaKind.ONE, n, 1), m_star),
        ),
    )


def reassemble(dec: Decomposition) -> ManifoldDescriptor:
    """Connected sum of the two parts of a decomposition."""
    return connected_sum(sigma_descriptor(dec.sigma), dec.summand)


# ---------------------------------------------------------------------------
# built-in descriptors and parsing


def s4() -> SimplyConnected:
    return SimplyConnected(intforms.rank_zero_form(), 0)


def s2xs2() -> SimplyConnected:
    return SimplyConnected(intforms.hyperbolic_plane(), 0)


def cp2() -> SimplyConnected:
    return SimplyConnected(intforms.diag_form(1, 0), 0)


def e8_manifold() -> SimplyConnected:
    return SimplyConnected(intforms.e8_form(), 1)


def s1xs3() -> InfiniteCyclic:
    """The rank-0 infinite cyclic manifold, with its trivially extended form."""
    empty = intforms.rank_zero_form()
    lam = laurent.extend_from_integer(empty)
    return InfiniteCyclic(empty, 0, lam, ExtendedWitness((), empty))


_SIGMA_STAR = re.compile(r"^SigmaStar\((\d+)\)$")
_SIGMA_ZERO = re.compile(r"^Sigma0\((\d+)\)$")
_SIGMA_ONE = re.compile(r"^Sigma1\((\d+),([01])\)$")

_BUILTINS = {
    "S4": s4,
    "S1xS3": s1xs3,
    "S2xS2": s2xs2,
    "CP2": cp2,
    "E8mfd": e8_manifold,
}


def named_manifold(name: str) -> ManifoldDescriptor:
    """Resolve a built-in manifold name."""
    if name in _BUILTINS:
        return _BUILTINS[name]()
    m = _SIGMA_STAR.match(name)
    if m:
        n = int(m.group(1))
        if n % 2 == 0:
            raise ParseError(f"SigmaStar needs odd order, got {n}")
        return sigma_descriptor(SigmaLabel(SigmaKind.STAR, n))
    m = _SIGMA_ZERO.match(name)
    if m:
        n = int(m.group(1))
        if n % 2 == 1:
            raise ParseError(f"Sigma0 needs even order, got {n}")
        return sigma_descriptor(SigmaLabel(SigmaKind.ZERO, n))
    m = _SIGMA_ONE.match(name)
    if m:
        n = int(m.group(1))
        if n % 2 == 1:
            raise ParseError(f"Sigma1 needs even order, got {n}")
        return sigma_descriptor(SigmaLabel(SigmaKind.ONE, n, int(m.group(2))))
    raise ParseError(f"unknown manifold name {name!r}")


def parse_manifold_expression(text: str) -> ManifoldDescriptor:
    """Resolve built-in names combined left-associatively with '#'."""
    parts = [p.strip() for p in text.split("#")]
    if not parts or any(not p for p in parts):
        raise ParseError(f"bad manifold expression {text!r}")
    out = named_manifold(parts[0])
    for part in parts[1:]:
        out = connected_sum(out, named_manifold(part))
    return out


# ---------------------------------------------------------------------------
# JSON serialization


_W2_JSON = {w.value: w for w in W2}


def _extension_to_json(status: ExtensionStatus):
    if isinstance(status, ExtendedWitness):
        return {
            "witness": {
                "p": [[p.to_json() for p in row] for row in status.transform],
                "base": status.base.to_json(),
            }
        }
    if isinstance(status, RegisteredNonExtended):
        return {"axiom": status.axiom_id}
    return "unknown"


def _extension_from_json(data) -> ExtensionStatus:
    if data is None or data == "unknown":
        return EXTENSION_UNKNOWN
    if isinstance(data, dict) and "axiom" in data:
        return RegisteredNonExtended(data["axiom"])
    if isinstance(data, dict) and "witness" in data:
        w = data["witness"]
        transform = tuple(
            tuple(laurent.poly_from_json(p) for p in row) for row in w["p"]
        )
        return ExtendedWitness(transform, intforms.form_from_json(w["base"]))
    raise ParseError("bad extension status")


def descriptor_to_json(d: ManifoldDescriptor) -> dict:
    if isinstance(d, SimplyConnected):
        return {"pi1": "1", "form": d.form.to_json(), "ks": d.ks}
    if isinstance(d, InfiniteCyclic):
        out = {"pi1": "Z", "form": d.int_form.to_json(), "ks": d.ks}
        if d.lambda_form is not None:
            out["lambda_form"] = d.lambda_form.to_json()
        if not isinstance(d.extension, UnknownExtension):
            out["extension_status"] = _extension_to_json(d.extension)
        return out
    return {
        "pi1": {"Zn": d.n},
        "form": d.form.to_json(),
        "w2": d.w2.value,
        "ks": d.ks,
    }


def descriptor_from_json(data: dict) -> ManifoldDescriptor:
    """Build and validate a descriptor from its JSON object."""
    if not isinstance(data, dict) or "pi1" not in data:
        raise ParseError("descriptor JSON needs a 'pi1' field")
    pi1 = data["pi1"]
    try:
        form = intforms.form_from_json(data.get("form", {"gram": []}))
        ks = int(data.get("ks", 0))
        if pi1 == "1":
            d: ManifoldDescriptor = SimplyConnected(form, ks)
        elif pi1 == "Z":
            lam = None
            if "lambda_form" in data:
                lam = laurent.hermitian_from_json(data["lambda_form"])
            status = _extension_from_json(data.get("extension_status"))
            d = InfiniteCyclic(form, ks, lam, status)
        elif isinstance(pi1, dict) and "Zn" in pi1:
            w2_raw = data.get("w2")
            if w2_raw not in _W2_JSON:
                raise ParseError(f"bad or missing w2 value {w2_raw!r}")
            d = FiniteCyclic(int(pi1["Zn"]), form, _W2_JSON[w2_raw], ks)
        else:
            raise ParseError(f"bad pi1 value {pi1!r}")
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"bad descriptor: {exc}") from exc
    require_valid(d)
    return d
