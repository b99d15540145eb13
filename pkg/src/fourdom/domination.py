"""Decision procedures for degree-one map existence between descriptors.

All decisions are three-valued: Yes with a machine-checkable certificate,
No with a named obstruction, or Unknown with a named open case.  The rule
identifiers come from a fixed registry so reports remain stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable

from . import intforms, manifolds
from .errors import BoundTooLarge, Pi1Mismatch
from .intforms import (
    DEFAULT_DEFINITE_CAP,
    IntForm,
    Parity,
    Ternary,
    classify,
    direct_sum_all,
    exists_unimodular,
    split_off,
)
from .laurent import AxiomRegistry, registry_from_env
from .manifolds import (
    ExtendedWitness,
    FiniteCyclic,
    InfiniteCyclic,
    ManifoldDescriptor,
    RegisteredNonExtended,
    SigmaKind,
    SigmaLabel,
    SimplyConnected,
    W2,
    chi,
    connected_sum,
    decompose,
    decomposition_slack,
    pi1_kind,
    require_valid,
    s1xs3,
    s4,
    sigma_descriptor,
    z2_class,
)
from .modtwo import split_off_z2_classes

# ---------------------------------------------------------------------------
# decisions and the rule registry

RULE_TAGS = frozenset(
    {
        "rule:identity",
        "rule:simply-connected-split",
        "rule:rank-zero-target",
        "rule:infinite-cyclic-decomposable",
        "rule:cyclic-sigma-match",
        "rule:pinch-to-summand",
        "rule:infinite-cyclic-pinch",
        "rule:pinch-to-sphere",
        "rule:stable-split",
        "rule:euler-rigidity",
        "obstruction:integral-splitting",
        "obstruction:z2-splitting",
        "obstruction:spin-target",
        "obstruction:almost-spin-target",
        "obstruction:hermitian-extension",
        "obstruction:pi1-surjection",
        "obstruction:betti-monotonicity",
        "obstruction:euler-monotonicity",
        "open:almost-spin-to-spin",
        "unknown:infinite-cyclic-unstable",
        "unknown:definite-cap",
        "unknown:outside-classification",
        "unknown:z2-extrapolation",
    }
)


class Outcome(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Decision:
    """Three-valued result carrying the rule that fired and its data."""

    outcome: Outcome
    rule: str
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        assert self.rule in RULE_TAGS, f"unregistered rule tag {self.rule!r}"

    @staticmethod
    def yes(rule: str, **data: Any) -> "Decision":
        return Decision(Outcome.YES, rule, data)

    @staticmethod
    def no(rule: str, **data: Any) -> "Decision":
        return Decision(Outcome.NO, rule, data)

    @staticmethod
    def unknown(rule: str, reason: str, **data: Any) -> "Decision":
        return Decision(Outcome.UNKNOWN, rule, {"reason": reason, **data})

    def to_json(self) -> dict:
        out: dict[str, Any] = {"outcome": self.outcome.value}
        if self.outcome is Outcome.YES:
            out["certificate"] = {"rule": self.rule, **self.data}
        elif self.outcome is Outcome.NO:
            out["obstruction"] = {"rule": self.rule, **self.data}
        else:
            data = dict(self.data)
            out["reason"] = data.pop("reason", "")
            out["rule"] = self.rule
            if data:
                out["details"] = data
        return out


def _split_payload(s: intforms.SplitDecision) -> dict:
    if s.complement is None:
        return {"reason": s.reason}
    r, sig, parity = s.complement
    return {"complement": {"rank": r, "signature": sig, "parity": parity.value}}


# ---------------------------------------------------------------------------
# group descriptors


class GroupKind(Enum):
    TRIVIAL = "trivial"
    INFINITE_CYCLIC = "Z"
    FINITE_CYCLIC = "Zn"
    FINITE_ABELIAN = "abelian"
    OTHER = "other"


@dataclass(frozen=True)
class GroupDescriptor:
    kind: GroupKind
    n: int | None = None
    invariant_factors: tuple[int, ...] = ()
    beta1: int = 0


def trivial_group() -> GroupDescriptor:
    return GroupDescriptor(GroupKind.TRIVIAL)


def infinite_cyclic_group() -> GroupDescriptor:
    return GroupDescriptor(GroupKind.INFINITE_CYCLIC, beta1=1)


def finite_cyclic_group(n: int) -> GroupDescriptor:
    if n < 2:
        raise ValueError("finite cyclic order must be at least 2")
    return GroupDescriptor(GroupKind.FINITE_CYCLIC, n=n)


def finite_abelian_group(factors: Iterable[int]) -> GroupDescriptor:
    fs = tuple(int(f) for f in factors)
    if any(f < 2 for f in fs):
        raise ValueError("invariant factors must be at least 2")
    for a, b in zip(fs, fs[1:]):
        if b % a != 0:
            raise ValueError("invariant factors must divide in order")
    return GroupDescriptor(GroupKind.FINITE_ABELIAN, invariant_factors=fs)


def other_group(beta1: int) -> GroupDescriptor:
    if beta1 < 0:
        raise ValueError("beta1 must be non-negative")
    return GroupDescriptor(GroupKind.OTHER, beta1=beta1)


@dataclass(frozen=True)
class Chi4:
    """Minimum Euler characteristic over the group's closed orientable 4-manifolds."""

    exact: bool
    value: int


def chi4(g: GroupDescriptor) -> Chi4:
    """Exact values for cyclic groups; the Betti-number lower bound otherwise."""
    if g.kind is GroupKind.TRIVIAL:
        return Chi4(True, 2)
    if g.kind is GroupKind.INFINITE_CYCLIC:
        return Chi4(True, 0)
    if g.kind is GroupKind.FINITE_CYCLIC:
        return Chi4(True, 2)
    return Chi4(False, 2 - 2 * g.beta1)


def rhs_realizable(g: GroupDescriptor, chi4_known: int) -> bool:
    """Whether the group is the fundamental group of a rational homology 4-sphere."""
    return (
        g.beta1 == 0
        and g.kind is not GroupKind.INFINITE_CYCLIC
        and chi4_known == 2
    )


# ---------------------------------------------------------------------------
# the 1-domination decision


def _pi1_surjection_exists(x: ManifoldDescriptor, y: ManifoldDescriptor) -> bool:
    if isinstance(y, SimplyConnected):
        return True
    if isinstance(x, SimplyConnected):
        return False
    if isinstance(x, InfiniteCyclic):
        return True
    if isinstance(y, InfiniteCyclic):
        return False
    return x.n % y.n == 0


def _same_pi1(x: ManifoldDescriptor, y: ManifoldDescriptor) -> bool:
    return pi1_kind(x) == pi1_kind(y)


def _finalize(x: ManifoldDescriptor, y: ManifoldDescriptor, dec: Decision) -> Decision:
    if dec.outcome is Outcome.YES and _same_pi1(x, y):
        # Euler monotonicity is implied by the splitting conditions; a
        # violation here would be an internal inconsistency
        assert chi(x) >= chi(y), "affirmative decision violating Euler monotonicity"
    return dec


def _dominates_simply_connected(
    x: SimplyConnected, y: SimplyConnected, definite_cap: int
) -> Decision:
    s = split_off(x.form, y.form, definite_cap)
    if s.outcome is Ternary.YES:
        return Decision.yes("rule:simply-connected-split", splitting=_split_payload(s))
    if s.outcome is Ternary.NO:
        return Decision.no("obstruction:integral-splitting", reason=s.reason)
    return Decision.unknown("unknown:definite-cap", s.reason or "")


def _dominates_infinite_cyclic(
    x: InfiniteCyclic, y: InfiniteCyclic, definite_cap: int
) -> Decision:
    s = split_off(x.int_form, y.int_form, definite_cap)
    if s.outcome is Ternary.NO:
        return Decision.no("obstruction:integral-splitting", reason=s.reason)
    if y.int_form.rank == 0:
        return Decision.yes("rule:rank-zero-target")
    slack_x = decomposition_slack(x)
    slack_y = decomposition_slack(y)
    if s.outcome is Ternary.YES and slack_x >= 6 and slack_y >= 6:
        return Decision.yes(
            "rule:infinite-cyclic-decomposable",
            splitting=_split_payload(s),
            slack={"x": slack_x, "y": slack_y},
        )
    if (
        x.int_form.rank == y.int_form.rank
        and isinstance(x.extension, ExtendedWitness)
        and isinstance(y.extension, RegisteredNonExtended)
    ):
        # equal second Betti numbers force an isomorphism of the hermitian
        # forms under a degree-one map; extended versus registered
        # non-extended rules that out
        return Decision.no(
            "obstruction:hermitian-extension",
            betti2=x.int_form.rank,
            axiom=y.extension.axiom_id,
        )
    if s.outcome is Ternary.UNDECIDED:
        return Decision.unknown("unknown:definite-cap", s.reason or "")
    return Decision.unknown(
        "unknown:infinite-cyclic-unstable",
        "integral splitting holds but unstable sufficiency is open "
        "for infinite cyclic fundamental group",
        stable_outcome="yes",
    )


def _sigma_match(x: FiniteCyclic, y: FiniteCyclic) -> tuple[str, SigmaLabel, SigmaLabel]:
    """Case label and matched rational-homology-sphere factors."""
    if x.n % 2 == 1:
        return "a", SigmaLabel(SigmaKind.STAR, x.n), SigmaLabel(SigmaKind.STAR, x.n)
    if x.w2 is W2.TYPE_II:
        return "b", SigmaLabel(SigmaKind.ZERO, x.n), SigmaLabel(SigmaKind.ZERO, x.n)
    if x.w2 is W2.TYPE_III:
        xs = decompose(x).primary.sigma
        ys = decompose(y).primary.sigma
        return "c", xs, ys
    # type I: any of the three decompositions is available, so match the target
    ys = decompose(y).primary.sigma
    return "d", ys, ys


def _dominates_finite_cyclic(
    x: FiniteCyclic, y: FiniteCyclic, definite_cap: int
) -> Decision:
    s = split_off(x.form, y.form, definite_cap)
    if s.outcome is Ternary.NO:
        return Decision.no("obstruction:integral-splitting", reason=s.reason)
    if s.outcome is Ternary.UNDECIDED:
        return Decision.unknown("unknown:definite-cap", s.reason or "")
    even = x.n % 2 == 0
    if even:
        if x.w2 is W2.TYPE_II and y.w2 is not W2.TYPE_II:
            return Decision.no("obstruction:spin-target", x_w2=x.w2.value, y_w2=y.w2.value)
        if x.w2 is W2.TYPE_III and y.w2 is W2.TYPE_I:
            return Decision.no(
                "obstruction:almost-spin-target", x_w2=x.w2.value, y_w2=y.w2.value
            )
    elif x.w2 is W2.SPIN and y.w2 is W2.NONSPIN:
        return Decision.no("obstruction:spin-target", x_w2=x.w2.value, y_w2=y.w2.value)
    zx = z2_class(x)
    zy = z2_class(y)
    z = split_off_z2_classes(zx[0], zx[1], zy[0], zy[1])
    if not z.yes:
        return Decision.no("obstruction:z2-splitting", reason=z.reason)
    if even and x.w2 is W2.TYPE_III and y.w2 is W2.TYPE_II:
        return Decision.unknown(
            "open:almost-spin-to-spin",
            "almost-spin source onto spin target of the same even order "
            "passes every necessary condition; sufficiency is an open question",
        )
    case, xs, ys = _sigma_match(x, y)
    data: dict[str, Any] = {
        "case": case,
        "sigma": xs.name(),
        "sigma_target": ys.name(),
        "splitting": _split_payload(s),
    }
    if even and x.n > 2:
        data["z2_block_extrapolated"] = True
    if case == "c" and xs.i != ys.i:
        data["sigma_homotopy_equivalent"] = True
    return Decision.yes("rule:cyclic-sigma-match", **data)


def _dominates_other(
    x: ManifoldDescriptor, y: ManifoldDescriptor, definite_cap: int
) -> Decision:
    if not _pi1_surjection_exists(x, y):
        return Decision.no(
            "obstruction:pi1-surjection", x_pi1=pi1_kind(x), y_pi1=pi1_kind(y)
        )
    if isinstance(y, SimplyConnected) and y.form.rank == 0:
        # every closed orientable manifold collapses onto the sphere
        return Decision.yes("rule:pinch-to-sphere")
    if y.int_form.rank > x.int_form.rank:
        return Decision.no(
            "obstruction:betti-monotonicity",
            x_betti2=x.int_form.rank,
            y_betti2=y.int_form.rank,
        )
    s = split_off(x.int_form, y.int_form, definite_cap)
    if s.outcome is Ternary.NO:
        return Decision.no("obstruction:integral-splitting", reason=s.reason)
    return Decision.unknown(
        "unknown:outside-classification",
        "necessary conditions pass but the fundamental-group pair is outside "
        "the classified cases",
    )


def dominates(
    x: ManifoldDescriptor,
    y: ManifoldDescriptor,
    registry: AxiomRegistry | None = None,
    definite_cap: int = DEFAULT_DEFINITE_CAP,
) -> Decision:
    """Decide existence of a degree-one map from x to y.

    Dispatches on the fundamental-group pair: full decisions for equal
    cyclic groups and for pinching onto simply connected targets, necessary
    conditions only elsewhere.
    """
    reg = registry if registry is not None else registry_from_env()
    require_valid(x, reg)
    require_valid(y, reg)
    if x == y:
        return Decision.yes("rule:identity")
    if isinstance(x, SimplyConnected) and isinstance(y, SimplyConnected):
        dec = _dominates_simply_connected(x, y, definite_cap)
    elif isinstance(x, InfiniteCyclic) and isinstance(y, InfiniteCyclic):
        dec = _dominates_infinite_cyclic(x, y, definite_cap)
    elif isinstance(x, FiniteCyclic) and isinstance(y, FiniteCyclic) and x.n == y.n:
        dec = _dominates_finite_cyclic(x, y, definite_cap)
    elif isinstance(x, FiniteCyclic) and isinstance(y, SimplyConnected):
        s = split_off(x.form, y.form, definite_cap)
        if s.outcome is Ternary.YES:
            dec = Decision.yes(
                "rule:pinch-to-summand",
                sigma=decompose(x).primary.sigma.name(),
                splitting=_split_payload(s),
            )
        elif s.outcome is Ternary.NO:
            dec = Decision.no("obstruction:integral-splitting", reason=s.reason)
        else:
            dec = Decision.unknown("unknown:definite-cap", s.reason or "")
    elif (
        isinstance(x, InfiniteCyclic)
        and isinstance(y, SimplyConnected)
        and decomposition_slack(x) >= 6
    ):
        s = split_off(x.int_form, y.form, definite_cap)
        if s.outcome is Ternary.YES:
            dec = Decision.yes(
                "rule:infinite-cyclic-pinch",
                slack=decomposition_slack(x),
                splitting=_split_payload(s),
            )
        elif s.outcome is Ternary.NO:
            dec = Decision.no("obstruction:integral-splitting", reason=s.reason)
        else:
            dec = Decision.unknown("unknown:definite-cap", s.reason or "")
    else:
        dec = _dominates_other(x, y, definite_cap)
    return _finalize(x, y, dec)


def stably_dominates(
    x: InfiniteCyclic,
    y: InfiniteCyclic,
    registry: AxiomRegistry | None = None,
    definite_cap: int = DEFAULT_DEFINITE_CAP,
) -> Decision:
    """Decide degree-one map existence after summing both sides with S2 x S2 copies.

    Integral splitting is necessary and, after three stabilizations on each
    side, sufficient: both manifolds then decompose off an S1 x S3 factor.
    """
    if not isinstance(x, InfiniteCyclic) or not isinstance(y, InfiniteCyclic):
        raise Pi1Mismatch("stable domination is decided for infinite cyclic pairs")
    reg = registry if registry is not None else registry_from_env()
    require_valid(x, reg)
    require_valid(y, reg)
    s = split_off(x.int_form, y.int_form, definite_cap)
    if s.outcome is Ternary.YES:
        return Decision.yes(
            "rule:stable-split", copies=3, splitting=_split_payload(s)
        )
    if s.outcome is Ternary.NO:
        return Decision.no("obstruction:integral-splitting", reason=s.reason)
    return Decision.unknown("unknown:definite-cap", s.reason or "")


# ---------------------------------------------------------------------------
# Euler characteristic relations


class EulerCheck(Enum):
    CONSISTENT = "consistent"
    VIOLATION = "violation"


def euler_check(x: ManifoldDescriptor, y: ManifoldDescriptor) -> EulerCheck:
    """Necessary inequality chi(x) >= chi(y) for same fundamental group."""
    if pi1_kind(x) != pi1_kind(y):
        raise Pi1Mismatch("Euler comparison requires equal fundamental groups")
    return EulerCheck.VIOLATION if chi(x) < chi(y) else EulerCheck.CONSISTENT


@dataclass(frozen=True)
class RigidityReport:
    statement: str
    chi: int
    rule: str = "rule:euler-rigidity"


def rigidity(x: FiniteCyclic, y: FiniteCyclic, dec: Decision) -> RigidityReport | None:
    """Equal Euler characteristics plus an affirmative decision force homotopy equivalence."""
    if not (isinstance(x, FiniteCyclic) and isinstance(y, FiniteCyclic) and x.n == y.n):
        raise Pi1Mismatch("rigidity applies to equal finite cyclic groups")
    if dec.outcome is Outcome.YES and chi(x) == chi(y):
        return RigidityReport("homotopy-equivalent", chi(x))
    return None


def minimal_target(
    x: ManifoldDescriptor, registry: AxiomRegistry | None = None
) -> tuple[ManifoldDescriptor, Decision]:
    """The dominated manifold of minimal Euler characteristic for x's group."""
    reg = registry if registry is not None else registry_from_env()
    require_valid(x, reg)
    if isinstance(x, SimplyConnected):
        target: ManifoldDescriptor = s4()
    elif isinstance(x, InfiniteCyclic):
        target = s1xs3()
    else:
        target = sigma_descriptor(decompose(x).primary.sigma)
    dec = dominates(x, target, registry=reg)
    assert dec.outcome is Outcome.YES, "minimal target must be dominated"
    return target, dec


# ---------------------------------------------------------------------------
# enumeration


def _even_class_form(rank: int, signature: int) -> IntForm:
    e8s = abs(signature) // 8
    rep = intforms.rank_zero_form()
    for _ in range(e8s):
        rep = intforms.direct_sum(rep, intforms.e8_form())
    if signature < 0:
        rep = intforms.negate(rep)
    for _ in range((rank - 8 * e8s) // 2):
        rep = intforms.direct_sum(rep, intforms.hyperbolic_plane())
    return rep


def unimodular_classes(rank: int) -> list[IntForm]:
    """One representative per isomorphism class of unimodular forms of this rank.

    Complete for rank <= 9 (odd classes by signature; even classes by
    signature in multiples of eight).
    """
    if rank > DEFAULT_DEFINITE_CAP:
        raise BoundTooLarge(f"rank {rank} beyond the definite catalog")
    if rank == 0:
        return [intforms.rank_zero_form()]
    reps: list[IntForm] = []
    for signature in range(-rank, rank + 1, 2):
        reps.append(intforms.diag_form((rank + signature) // 2, (rank - signature) // 2))
        if signature % 8 == 0 and exists_unimodular(rank, signature, Parity.EVEN):
            reps.append(_even_class_form(rank, signature))
    reps.sort(key=lambda f: (f.signature, f.parity.value))
    return reps


def enumerate_simply_connected(bound: int) -> list[SimplyConnected]:
    """All homeomorphism classes of simply connected manifolds with b2 <= bound.

    Odd forms admit both values of the Kirby-Siebenmann invariant; even
    forms force it to signature/8 mod 2.
    """
    if bound > DEFAULT_DEFINITE_CAP:
        raise BoundTooLarge(f"bound {bound} beyond the definite catalog")
    out: list[SimplyConnected] = []
    for rank in range(bound + 1):
        for rep in unimodular_classes(rank):
            if rep.parity is Parity.ODD:
                out.extend(SimplyConnected(rep, ks) for ks in (0, 1))
            else:
                out.append(SimplyConnected(rep, (rep.signature // 8) % 2))
    out.sort(key=lambda d: (d.form.rank, d.form.signature, d.form.parity.value, d.ks))
    return out


@dataclass(frozen=True)
class StableTargetZ:
    """A stable homeomorphism class of dominated manifolds with infinite cyclic group."""

    target_form: IntForm
    ks: int
    target_label: str
    stabilized_betti2: int  # second Betti number of the simply connected factor


def enumerate_stable_targets_Z(
    x: InfiniteCyclic, definite_cap: int = DEFAULT_DEFINITE_CAP
) -> list[StableTargetZ]:
    """All stable classes of manifolds with infinite cyclic group dominated by x."""
    require_valid(x)
    if x.int_form.rank > DEFAULT_DEFINITE_CAP:
        raise BoundTooLarge(
            f"second Betti number {x.int_form.rank} beyond the definite catalog"
        )
    out: list[StableTargetZ] = []
    for rank in range(x.int_form.rank + 1):
        for rep in unimodular_classes(rank):
            if split_off(x.int_form, rep, definite_cap).outcome is not Ternary.YES:
                continue
            label = classify(rep).label()
            if rep.parity is Parity.ODD:
                ks_values = (0, 1)
            else:
                ks_values = ((rep.signature // 8) % 2,)
            for ks in ks_values:
                out.append(StableTargetZ(rep, ks, label, rank + 6))
    out.sort(
        key=lambda t: (
            t.target_form.rank,
            t.target_form.signature,
            t.target_form.parity.value,
            t.ks,
        )
    )
    return out


def _consistent_w2_ks(n: int, form: IntForm) -> list[tuple[W2, int]]:
    sig8 = (form.signature // 8) % 2 if form.parity is Parity.EVEN else None
    if n % 2 == 0:
        if form.parity is Parity.EVEN:
            return [(W2.TYPE_II, sig8), (W2.TYPE_III, 0), (W2.TYPE_III, 1)]
        return [(W2.TYPE_I, 0), (W2.TYPE_I, 1)]
    if form.parity is Parity.EVEN:
        return [(W2.SPIN, sig8)]
    return [(W2.NONSPIN, 0), (W2.NONSPIN, 1)]


_W2_ORDER = {W2.TYPE_I: 0, W2.TYPE_II: 1, W2.TYPE_III: 2, W2.SPIN: 3, W2.NONSPIN: 4}


def enumerate_targets_Zn(
    x: FiniteCyclic,
    registry: AxiomRegistry | None = None,
    definite_cap: int = DEFAULT_DEFINITE_CAP,
) -> list[tuple[FiniteCyclic, Decision]]:
    """All same-group candidate targets with b2 <= b2(x), each with its decision."""
    require_valid(x)
    if x.form.rank > DEFAULT_DEFINITE_CAP:
        raise BoundTooLarge(
            f"second Betti number {x.form.rank} beyond the definite catalog"
        )
    candidates: list[FiniteCyclic] = []
    for rank in range(x.form.rank + 1):
        for rep in unimodular_classes(rank):
            for w2, ks in _consistent_w2_ks(x.n, rep):
                candidates.append(FiniteCyclic(x.n, rep, w2, ks))
    candidates.sort(
        key=lambda d: (
            d.form.rank,
            d.form.signature,
            d.form.parity.value,
            _W2_ORDER[d.w2],
            d.ks,
        )
    )
    assert len(set(candidates)) == len(candidates)
    return [(y, dominates(x, y, registry=registry, definite_cap=definite_cap)) for y in candidates]


def universal_dominator_Z(bound: int) -> InfiniteCyclic:
    """A single manifold dominating everything with infinite cyclic group and b2 <= bound.

    Construction: the connected sum of every simply connected class with
    b2 <= bound + 6, summed with the rank-0 infinite cyclic manifold.  Only
    the aggregated invariants are carried.
    """
    if bound + 6 > DEFAULT_DEFINITE_CAP:
        raise BoundTooLarge(f"bound {bound} needs the catalog beyond rank 9")
    classes = enumerate_simply_connected(bound + 6)
    form = direct_sum_all(c.form for c in classes)
    ks = sum(c.ks for c in classes) % 2
    return InfiniteCyclic(form, ks)


@dataclass(frozen=True)
class FiniteAbelianBound:
    possible: bool
    chi_min: int | None = None
    chi_max: int | None = None
    reason: str | None = None


def finite_abelian_targets_bound(
    x: ManifoldDescriptor, g: GroupDescriptor
) -> FiniteAbelianBound:
    """Range of Euler characteristics for dominated targets with group g.

    The target group must embed into the torsion of the first homology of
    x; when it does, 2 <= chi <= 2 + b2(x).
    """
    if g.kind not in (GroupKind.TRIVIAL, GroupKind.FINITE_CYCLIC, GroupKind.FINITE_ABELIAN):
        raise ValueError("a finite abelian group descriptor is required")
    require_valid(x)
    torsion = x.n if isinstance(x, FiniteCyclic) else 1
    if g.kind is GroupKind.TRIVIAL:
        embeds = True
    elif g.kind is GroupKind.FINITE_CYCLIC:
        embeds = torsion % g.n == 0
    else:
        factors = g.invariant_factors
        embeds = len(factors) <= 1 and (not factors or torsion % factors[0] == 0)
    if not embeds:
        return FiniteAbelianBound(False, reason="group-does-not-embed-in-torsion")
    return FiniteAbelianBound(True, 2, 2 + x.int_form.rank)


# ---------------------------------------------------------------------------
# certificate re-validation


def verify_certificate(
    x: ManifoldDescriptor,
    y: ManifoldDescriptor,
    dec: Decision,
    definite_cap: int = DEFAULT_DEFINITE_CAP,
) -> bool:
    """Re-check an affirmative certificate against the cited module operations."""
    if dec.outcome is not Outcome.YES:
        return False
    rule = dec.rule
    if rule == "rule:identity":
        return x == y
    if rule == "rule:pinch-to-sphere":
        return isinstance(y, SimplyConnected) and y.form.rank == 0
    if rule == "rule:rank-zero-target":
        return isinstance(y, InfiniteCyclic) and y.int_form.rank == 0
    split_yes = (
        split_off(x.int_form, y.int_form, definite_cap).outcome is Ternary.YES
    )
    if rule in ("rule:simply-connected-split", "rule:stable-split"):
        return split_yes
    if rule == "rule:infinite-cyclic-decomposable":
        return (
            split_yes
            and decomposition_slack(x) >= 6
            and decomposition_slack(y) >= 6
        )
    if rule == "rule:infinite-cyclic-pinch":
        return split_yes and decomposition_slack(x) >= 6
    if rule == "rule:pinch-to-summand":
        named = dec.data.get("sigma")
        return split_yes and decompose(x).primary.sigma.name() == named
    if rule == "rule:cyclic-sigma-match":
        if not split_yes or not isinstance(x, FiniteCyclic) or not isinstance(y, FiniteCyclic):
            return False
        zx, zy = z2_class(x), z2_class(y)
        if not split_off_z2_classes(zx[0], zx[1], zy[0], zy[1]).yes:
            return False
        sigma_names = {d.sigma.name() for d in decompose(x).all()}
        target_names = {d.sigma.name() for d in decompose(y).all()}
        case = dec.data.get("case")
        if dec.data.get("sigma") not in sigma_names:
            return False
        if dec.data.get("sigma_target") not in target_names:
            return False
        if case == "c":
            # type III factors are homotopy equivalent even when the
            # Kirby-Siebenmann invariants differ
            return x.w2 is W2.TYPE_III and y.w2 is W2.TYPE_III
        if case == "d":
            return x.w2 is W2.TYPE_I and dec.data.get("sigma") == dec.data.get("sigma_target")
        if case == "b":
            return x.w2 is W2.TYPE_II and y.w2 is W2.TYPE_II
        return case == "a" and x.n % 2 == 1
    return False
