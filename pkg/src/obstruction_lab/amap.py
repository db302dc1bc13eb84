"""The map A from mod-2 third homology to hermitian forms modulo even
forms, its kernel, and the exactness condition report.

For a class z in H_3(G; Z/2) with integral chain lift c (0/1
coefficients on the degree-3 basis of the standard resolution), the
associated form on coker d^2 is the rank-one hermitian matrix
``involute(w_i) w_j`` with ``w = d_3(c)``.  Well-definedness on the
quotient is automatic from d_2 o d_3 = 0 and is still re-checked.  The
class of the form modulo even forms does not depend on the chosen lift,
and A is additive into the Tate group, so the even classes form a
subgroup of H_3(G; Z/2).

The condition verified by ``check_condition`` is exactness of

    H_5(G; Z) --(Sq_2 o red_2)--> H_3(G; Z/2) --A--> forms mod even

at the middle term, which is the machine-checkable criterion for the
secondary bordism invariant to be detected by the stable equivariant
intersection form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import chains, forms, steenrod
from .errors import ConsistencyError, UnsupportedGroupError
from .forms import EVEN, ODD, UNDECIDED, FormMatrix, FPModule, TateVerdict
from .groupring import RingElement
from .groups import INFINITE, GroupSpec, quotient_surjection, strip_odd_part

# Classes are encoded as bitmasks over the degree-3 chain basis
# (ascending-lex multidegree order; mod-2 homology of every supported
# group is free on that basis).

EXHAUSTIVE_LIMIT = 63  # solve every class when 2^dim - 1 <= this


@dataclass
class AContext:
    """Shared data for A-map computations over one group."""

    group: GroupSpec
    resolution: object
    module: FPModule
    h3_dim: int

    @classmethod
    def build(cls, group, top=6):
        res = chains.standard_resolution(group, top)
        relations, gens = chains.dualize_degree2(res)
        module = FPModule(group, gens, relations)
        return cls(group, res, module, res.ranks[3])


def _lift_vector(ctx, mask):
    return [1 if mask & (1 << i) else 0 for i in range(ctx.h3_dim)]


def boundary_vector(ctx, mask):
    """w = d_3(lift) as a list of ring elements over the C_2 basis."""
    return ctx.resolution.boundary_of_chain(3, _lift_vector(ctx, mask))


def a_of_class(group_or_ctx, mask):
    """The A-form of the H_3 class with chain-basis bitmask ``mask``."""
    ctx = (
        group_or_ctx
        if isinstance(group_or_ctx, AContext)
        else AContext.build(group_or_ctx)
    )
    w = boundary_vector(ctx, mask)
    form = FormMatrix.rank_one(ctx.module, w)
    if not form.is_well_defined():
        raise ConsistencyError("rank-one A-form failed well-definedness")
    if not form.is_hermitian():
        raise ConsistencyError("rank-one A-form is not hermitian")
    return form


def certify_odd_via_quotients(group, mask, max_exponent):
    """Try to certify A(class) odd through finite quotients of a Z factor.

    Pushes the class forward along Z -> Z/2^m (chain level, multidegree
    matching), rebuilds the A-form over the quotient group's own standard
    resolution, and runs the finite evenness decision.  Returns the first
    odd certificate, or None.
    """
    if group.is_quaternion or INFINITE not in group.factors:
        raise UnsupportedGroupError("quotient certificates need a Z factor")
    ctx = AContext.build(group)
    coeffs = _lift_vector(ctx, mask)
    for m in range(1, max_exponent + 1):
        new_orders = tuple(
            2**m if n == INFINITE else n for n in group.factors
        )
        hom = quotient_surjection(group, new_orders)
        qctx = AContext.build(hom.target)
        pushed = chains.induced_chain_vector(
            hom, ctx.resolution, qctx.resolution, 3, coeffs
        )
        qmask = 0
        for i, c in enumerate(pushed):
            if c % 2:
                qmask |= 1 << i
        verdict = forms.decide_even(a_of_class(qctx, qmask))
        if verdict.is_odd:
            return {
                "kind": "quotient-odd",
                "modulus_exponent": m,
                "quotient_group": hom.target.label(),
                "quotient_class_mask": qmask,
                "quotient_certificate": verdict.certificate,
            }
    return None


def _decide_class(ctx, mask, max_support, max_exponent):
    form = a_of_class(ctx, mask)
    if ctx.group.is_finite:
        return forms.decide_even(form, max_support=max_support)
    verdict = forms.decide_even(
        form, max_support=max_support, try_quotients=False
    )
    if verdict.is_even:
        return verdict
    cert = certify_odd_via_quotients(ctx.group, mask, max_exponent)
    if cert is not None:
        return TateVerdict(
            ODD,
            certificate=cert,
            max_support=max_support,
            max_quotient_exponent=max_exponent,
        )
    return TateVerdict(
        UNDECIDED, max_support=max_support, max_quotient_exponent=max_exponent
    )


@dataclass
class KernelResult:
    group: GroupSpec
    h3_dim: int
    verdicts: dict  # mask -> TateVerdict
    kernel_masks: list  # even classes including 0
    undecided: bool
    derived_masks: list = field(default_factory=list)

    def verdict_of(self, mask):
        return self.verdicts[mask]


def kernel_of_A(group, max_support=forms.DEFAULT_MAX_SUPPORT,
                max_exponent=None, exhaustive_limit=EXHAUSTIVE_LIMIT):
    """Per-class verdicts for A over all nonzero H_3(G;Z/2) classes.

    Every class receives a verdict.  When the class count exceeds
    ``exhaustive_limit``, verdicts of classes reachable from solved ones
    are derived by Tate additivity (even + even = even, even + odd = odd)
    instead of solved afresh; derived masks are recorded.
    """
    ctx = AContext.build(group)
    d = ctx.h3_dim
    if d > 12:
        raise UnsupportedGroupError("H_3 dimension too large to enumerate")
    if max_exponent is None:
        max_exponent = forms._default_quotient_exponent(group)

    total = (1 << d) - 1
    full = total <= exhaustive_limit
    verdicts = {}
    derived = []
    even_space = steenrod.GF2Subspace(d)
    solved_odds = []

    for mask in range(1, total + 1):
        if not full:
            if even_space.contains(mask):
                verdicts[mask] = TateVerdict(EVEN)
                derived.append(mask)
                continue
            prior = next(
                (o for o in solved_odds if even_space.contains(mask ^ o)), None
            )
            if prior is not None:
                verdicts[mask] = TateVerdict(
                    ODD,
                    certificate={
                        "kind": "tate-additivity",
                        "from_mask": prior,
                    },
                )
                derived.append(mask)
                continue
        v = _decide_class(ctx, mask, max_support, max_exponent)
        verdicts[mask] = v
        if v.is_even:
            even_space.add(mask)
        elif v.is_odd:
            solved_odds.append(mask)

    undecided = any(v.is_undecided for v in verdicts.values())
    kernel = [0] + [m for m, v in verdicts.items() if v.is_even]
    if not undecided:
        span = steenrod.GF2Subspace(d, kernel)
        if sorted(span.elements()) != sorted(kernel):
            raise ConsistencyError(
                "even classes do not form a subspace; A additivity violated"
            )
    return KernelResult(
        group=group,
        h3_dim=d,
        verdicts=verdicts,
        kernel_masks=sorted(kernel),
        undecided=undecided,
        derived_masks=derived,
    )


@dataclass
class SecondaryReport:
    """Machine verdict for the exactness condition of one group."""

    group: GroupSpec
    reduced_group: GroupSpec
    h3_dim: int
    image_masks: list
    kernel_masks: list
    classes: list  # dicts: mask, verdict summary, certificate/witness info
    condition_holds: str  # "yes" | "no" | "undecided"
    ingredients: list  # dicts: fact, tag

    def to_jsonable(self):
        return {
            "group": self.group.label(),
            "reduced_group": self.reduced_group.label(),
            "h3_dim": self.h3_dim,
            "image_basis": sorted(self.image_masks_basis()),
            "image_masks": sorted(self.image_masks),
            "kernel_masks": sorted(self.kernel_masks),
            "classes": self.classes,
            "condition_holds": self.condition_holds,
            "ingredients": self.ingredients,
        }

    def image_masks_basis(self):
        sub = steenrod.GF2Subspace(self.h3_dim, self.image_masks)
        return sub.rows


def check_condition(group, max_support=forms.DEFAULT_MAX_SUPPORT,
                    max_exponent=None):
    """Compare im(Sq_2 o red_2) with ker(A) at H_3(G; Z/2)."""
    original = group
    g = strip_odd_part(group) if group.is_abelian else group
    ingredients = []
    if g != original:
        ingredients.append(
            {
                "fact": f"reduced {original.label()} to its 2-Sylow-type "
                f"subgroup {g.label()} (odd-index reduction)",
                "tag": "PAPER_FACT",
            }
        )

    if g.is_abelian and not g.factors:
        return SecondaryReport(
            group=original, reduced_group=g, h3_dim=0, image_masks=[0],
            kernel_masks=[0], classes=[],
            condition_holds="yes",
            ingredients=ingredients
            + [{"fact": "trivial group: H_3 = 0", "tag": "MACHINE_CHECKED"}],
        )

    d2 = steenrod.d2_differential(g, 5)
    image = d2.image()
    ingredients.append(
        {
            "fact": "image of d2[5,0] = Sq_2 o red_2 on H_5(G;Z)",
            "tag": d2.tag,
        }
    )
    if d2.tag == "PAPER_FACT":
        ingredients.append(
            {
                "fact": "d2[5,0] = 0 for generalised quaternion groups "
                "(4-periodic cohomology; the next differential is an "
                "isomorphism)",
                "tag": "PAPER_FACT",
            }
        )

    ker = kernel_of_A(g, max_support=max_support, max_exponent=max_exponent)
    ingredients.append(
        {
            "fact": "kernel of A from per-class evenness decisions",
            "tag": "MACHINE_CHECKED",
        }
    )

    classes = []
    for mask in sorted(ker.verdicts):
        v = ker.verdicts[mask]
        entry = {
            "mask": mask,
            "coords": [(mask >> i) & 1 for i in range(ker.h3_dim)],
            "verdict": v.status,
        }
        if v.is_even and v.witness is not None:
            entry["witness"] = v.witness.render()
        if v.certificate is not None:
            entry["certificate"] = _jsonable_certificate(v.certificate)
        classes.append(entry)

    if ker.undecided:
        holds = "undecided"
    else:
        holds = "yes" if set(ker.kernel_masks) == set(image.elements()) else "no"
    return SecondaryReport(
        group=original,
        reduced_group=g,
        h3_dim=ker.h3_dim,
        image_masks=image.elements(),
        kernel_masks=ker.kernel_masks,
        classes=classes,
        condition_holds=holds,
        ingredients=ingredients,
    )


def _jsonable_certificate(cert):
    out = {}
    for k, v in cert.items():
        if isinstance(v, dict):
            out[k] = _jsonable_certificate(v)
        else:
            out[k] = v
    return out
