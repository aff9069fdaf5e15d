"""Decomposition of Spec(L tensor_K M) into composed field extensions.

L is processed stepwise over M: a transcendental step contributes a single
point and a fresh transcendental generator; an algebraic step branches over
the irreducible factors of its minimal polynomial over the running field,
each factor contributing its multiplicity.  Every point emitted this way is
a minimal prime (each step is flat over the previous stage), and a point is
strictly maximal exactly when its accumulated multiplicity is 1, i.e. the
local ring is a field.

Points come out in a deterministic order: factors are taken smallest first
in the canonical polynomial order at every branch.  Decompositions of
independent triples are pure and may run in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import poly as poly_mod
from .errors import CapabilityError, DomainError, PreconditionError, StructuralError
from .fields import FieldElement, FieldTower, TowerHom, tower_separable_over
from .poly import Polynomial


@dataclass(frozen=True)
class StepRecord:
    """What happened when one step of L was processed over the running field."""

    gen: str
    kind: str  # "transcendental" | "algebraic"
    appended: str | None  # generator added to E, None if the factor was linear
    factor: Polynomial | None  # chosen irreducible factor (algebraic steps)
    multiplicity: int

    def describe(self) -> str:
        if self.kind == "transcendental":
            return f"gen {self.gen}: transcendental, appended {self.appended}"
        where = f"appended {self.appended}" if self.appended else "absorbed (linear factor)"
        return (
            f"gen {self.gen}: algebraic, factor ({self.factor}) "
            f"multiplicity {self.multiplicity}, {where}"
        )


@dataclass
class PointFlags:
    maximal: bool
    strictly_maximal: bool


@dataclass
class CompositumPoint:
    """A point of Spec(L tensor_K M) with its composed extension field.

    The composed field E extends M as a tower prefix; the right embedding is
    that inclusion and the left embedding is recorded through generator
    images.  E is generated by the two images: every E generator is either
    an M generator or was appended for an L generator.
    """

    left: FieldTower
    right: FieldTower
    k_len: int
    k_hom: TowerHom
    field: FieldTower
    left_images: tuple[FieldElement, ...]
    multiplicity: int
    records: tuple[StepRecord, ...]
    index: int

    @property
    def maximal(self) -> bool:
        return True  # stepwise construction only reaches minimal primes

    @property
    def strictly_maximal(self) -> bool:
        return self.multiplicity == 1

    def left_hom(self) -> TowerHom:
        return TowerHom(self.left, self.field, self.left_images)

    def right_hom(self) -> TowerHom:
        return TowerHom.inclusion(self.right, self.field)

    def degree_over_right(self) -> int | None:
        return self.field.extension_degree(self.right.level)

    def describe_lines(self) -> list[str]:
        out = [
            f"point {self.index}: multiplicity {self.multiplicity}, "
            f"maximal={self.maximal}, strictly_maximal={self.strictly_maximal}",
            f"  composed field: {self.field.describe()}",
        ]
        for name, img in zip(self.left.gen_names, self.left_images):
            out.append(f"  image {name} -> {img}")
        for rec in self.records:
            out.append(f"  step {rec.describe()}")
        return out


def _fresh_name(base: str, tower: FieldTower) -> str:
    if base not in tower.gen_names:
        return base
    k = 1
    while f"{base}_{k}" in tower.gen_names:
        k += 1
    return f"{base}_{k}"


def tensor_decompose(
    left: FieldTower,
    right: FieldTower,
    k_len: int,
    k_hom: TowerHom | None = None,
) -> list[CompositumPoint]:
    """All points of Spec(L tensor_K M), K the length-``k_len`` prefix of L.

    ``k_hom`` embeds K into M; by default K must literally be a prefix of M
    and the inclusion is used.  Algebraic steps of L must be factorable over
    the running composed field, otherwise a capability error surfaces.
    """
    K = left.prefix(k_len)
    if k_hom is None:
        if not K.is_prefix_of(right):
            raise StructuralError("K must be a prefix of M (or pass an explicit embedding)")
        k_hom = TowerHom.inclusion(K, right)
    else:
        if k_hom.source != K or k_hom.target != right:
            raise StructuralError("embedding must map the K prefix into M")
        if not k_hom.verify():
            raise StructuralError("the K embedding does not respect relations")

    points: list[CompositumPoint] = []

    def rec(step_idx: int, e_tower: FieldTower, images: list, mult: int, records: tuple):
        if step_idx == left.level:
            points.append(
                CompositumPoint(
                    left=left,
                    right=right,
                    k_len=k_len,
                    k_hom=k_hom,
                    field=e_tower,
                    left_images=tuple(images),
                    multiplicity=mult,
                    records=records,
                    index=len(points),
                )
            )
            return
        step = left.steps[step_idx]
        if not step.is_algebraic:
            name = _fresh_name(step.name, e_tower)
            e2 = e_tower.extend_transcendental(name)
            imgs2 = [e2.embed(im) for im in images] + [e2.gen(name)]
            rec(
                step_idx + 1,
                e2,
                imgs2,
                mult,
                records + (StepRecord(step.name, "transcendental", name, None, 1),),
            )
            return
        sub = left.prefix(step_idx)
        hom = TowerHom(sub, e_tower, images)
        coeffs = [hom.apply(c) for c in left.minpoly_coeffs(step_idx)]
        f = Polynomial.from_coeffs(e_tower, "y", coeffs)
        fac = poly_mod.factor(f)
        for h, m in fac.factors:
            if h.degree() == 1:
                root = -h.coeff(0)
                rec(
                    step_idx + 1,
                    e_tower,
                    images + [root],
                    mult * m,
                    records + (StepRecord(step.name, "algebraic", None, h, m),),
                )
            else:
                name = _fresh_name(step.name, e_tower)
                e2 = e_tower.extend_algebraic(name, h.univariate_coeffs(), check=False)
                imgs2 = [e2.embed(im) for im in images] + [e2.gen(name)]
                rec(
                    step_idx + 1,
                    e2,
                    imgs2,
                    mult * m,
                    records + (StepRecord(step.name, "algebraic", name, h, m),),
                )

    rec(k_len, right, [right.coerce(im) for im in k_hom.images], 1, ())
    return points


def classify_point(pt: CompositumPoint) -> PointFlags:
    """Maximality flags: stepwise-emitted points are minimal primes, and
    strict maximality is the multiplicity-1 (reduced local ring) condition."""
    return PointFlags(maximal=pt.maximal, strictly_maximal=pt.strictly_maximal)


def degree_bookkeeping(points: Sequence[CompositumPoint]) -> tuple[int, int] | None:
    """(sum of multiplicity * [E:M], [L:K]) when L/K is finite, else None."""
    if not points:
        raise DomainError("no points to account for")
    left = points[0].left
    k_len = points[0].k_len
    total_deg = left.extension_degree(k_len)
    if total_deg is None:
        return None
    acc = 0
    for pt in points:
        d = pt.degree_over_right()
        if d is None:
            return None
        acc += pt.multiplicity * d
    return acc, total_deg


# ---------------------------------------------------------------------------
# Transfer checks


@dataclass
class TransferReport:
    passed: bool
    strictly_maximal: bool
    extension_separable: bool
    details: list[str]

    def render_lines(self) -> list[str]:
        return [f"separability transfer: passed={self.passed}"] + [
            f"  {d}" for d in self.details
        ]


def separable_transfer_check(pt: CompositumPoint) -> TransferReport:
    """For separable L/K: the point must be strictly maximal and E/M
    separable in its step presentation (gcd test on every appended minimal
    polynomial)."""
    left, k_len = pt.left, pt.k_len
    if not tower_separable_over(left, k_len):
        raise PreconditionError("the left extension is not separable over K")
    details = []
    strict = pt.strictly_maximal
    details.append(f"point multiplicity {pt.multiplicity} (strictly maximal: {strict})")
    sep = tower_separable_over(pt.field, pt.right.level)
    for step in pt.field.steps[pt.right.level :]:
        if step.is_algebraic:
            details.append(f"appended step {step.name}: separable={step.separable}")
        else:
            details.append(f"appended step {step.name}: transcendental")
    return TransferReport(
        passed=strict and sep,
        strictly_maximal=strict,
        extension_separable=sep,
        details=details,
    )


@dataclass
class SubfieldReport:
    passed: bool
    restricted_multiplicity: int
    restricted_field: FieldTower
    details: list[str]

    def render_lines(self) -> list[str]:
        return [f"subfield maximality: passed={self.passed}"] + [
            f"  {d}" for d in self.details
        ]


def subfield_maximality_check(pt: CompositumPoint, l0_len: int) -> SubfieldReport:
    """The restriction of a maximal point to a subtower L0 of L is again an
    emitted (hence maximal) point of Spec(L0 tensor_K M)."""
    if not pt.k_len <= l0_len <= pt.left.level:
        raise StructuralError("L0 must sit between K and L")
    head = pt.records[: l0_len - pt.k_len]
    mult = 1
    appended = 0
    for rec in head:
        mult *= rec.multiplicity
        if rec.appended is not None:
            appended += 1
    e0 = pt.field.prefix(pt.right.level + appended)
    sub_points = tensor_decompose(pt.left.prefix(l0_len), pt.right, pt.k_len, pt.k_hom)
    match = None
    for cand in sub_points:
        if cand.records == head:
            match = cand
            break
    details = [
        f"restricted field: {e0.describe()}",
        f"restricted multiplicity: {mult}",
        f"restriction found among Spec(L0 tensor M) points: {match is not None}",
    ]
    passed = match is not None and match.field == e0 and match.maximal
    return SubfieldReport(passed, mult, e0, details)


@dataclass
class BaseChangeReport:
    passed: bool
    corresponding_index: int | None
    maximal_over_k: bool
    maximal_over_k0: bool
    multiplicity_over_k: int
    multiplicity_over_k0: int | None
    details: list[str]

    def render_lines(self) -> list[str]:
        return [f"base change maximality: passed={self.passed}"] + [
            f"  {d}" for d in self.details
        ]


def base_change_maximality_check(pt: CompositumPoint, k0_len: int) -> BaseChangeReport:
    """Maximality over K matches maximality over a subfield K0 when K/K0 is
    algebraic.

    The corresponding point of Spec(L tensor_K0 M) is identified by a field
    map from pt's composed field that respects both embeddings; exactly one
    candidate admits one.
    """
    left, right = pt.left, pt.right
    if not 0 <= k0_len <= pt.k_len:
        raise StructuralError("K0 must be a prefix of K")
    for step in left.steps[k0_len : pt.k_len]:
        if not step.is_algebraic:
            raise PreconditionError("K must be algebraic over K0")
    if pt.k_hom.images != tuple(right.gen(n) for n in left.prefix(pt.k_len).gen_names):
        raise CapabilityError("base change is supported for prefix-inclusion embeddings")
    candidates = tensor_decompose(left, right, k0_len)
    match = None
    for cand in candidates:
        # build E(pt) -> E(cand) over M and test that it is a field map;
        # appended generators of pt.field correspond, in order, to the
        # L-generators above K whose record appended one
        imgs = [cand.field.gen(n) for n in right.gen_names]
        appended_gens = [rec.gen for rec in pt.records if rec.appended is not None]
        for gen_name in appended_gens:
            i = left.gen_names.index(gen_name)
            imgs.append(cand.left_images[i])
        try:
            hom = TowerHom(pt.field, cand.field, imgs)
            if hom.verify():
                match = cand
                break
        except StructuralError:
            continue
    details = []
    if match is None:
        details.append("no corresponding point found")
        return BaseChangeReport(False, None, pt.maximal, False, pt.multiplicity, None, details)
    details.append(f"corresponding point over K0: index {match.index}")
    details.append(
        f"multiplicity over K: {pt.multiplicity}, over K0: {match.multiplicity}"
    )
    details.append(f"maximal over K: {pt.maximal}, maximal over K0: {match.maximal}")
    passed = pt.maximal == match.maximal
    return BaseChangeReport(
        passed,
        match.index,
        pt.maximal,
        match.maximal,
        pt.multiplicity,
        match.multiplicity,
        details,
    )
