"""Executable forms of the library's guaranteed implications.

Each check evaluates a hypothesis and a conclusion separately and
reports both; only hypothesis-true instances count as violations, so
counterexample inputs are first-class citizens.  Sweep drivers iterate
the bundled catalog in canonical order.
"""

from __future__ import annotations

import math
import time
from typing import Callable, Optional, Sequence

from . import catalog as cat
from .automorphisms import (
    AutGroup,
    automorphism_group,
    characteristic_subgroups,
    closure_of_tuples,
    maximal_abelian_in,
    thompson_subgroup,
    verify_p2_identity,
)
from .core import (
    Group,
    GroupMap,
    Subgroup,
    all_subgroups,
    exponent,
    factorize,
    normalizer,
    p_part,
    p_rank,
    quotient_group,
    sylow_subgroup,
    transporter,
    _ambient,
)
from .errors import CapExceededError, PreconditionError
from .fusion import (
    FusionSystem,
    check_saturation,
    fusion_difference_witness,
    fusion_equal_on,
    rep_classes,
    rep_classes_map_bijective,
    rep_zpn_classes,
    rep_zpn_map_bijective,
)
from .report import VerificationReport

# Checks whose (hypothesis and not conclusion) is a hard failure; the
# control and rep-count checks are measurements, not implications.
THEOREM_CHECKS = frozenset(
    {
        "theorem12",
        "theorem14",
        "lemma-small",
        "main-lemma",
        "sylowiso",
        "extraspecial-note",
        "thompson",
        "saturation",
    }
)

DEFAULT_SWEEP_MAX_ORDER = 600
DEFAULT_BUDGET_SECS = 60.0


def _inclusion_map(H: Subgroup, G: Group | Subgroup) -> GroupMap:
    parent, amb = _ambient(G)
    return GroupMap(H, amb, tuple(int(x) for x in H.arr))


def _common_sylow(G: Group | Subgroup, H: Subgroup, p: int) -> Optional[Subgroup]:
    """A Sylow p-subgroup of G lying inside H, conjugating if needed."""
    parent, amb = _ambient(G)
    S = sylow_subgroup(amb, p)
    if S <= H:
        return S
    trans = sorted(transporter(parent, S, H) & amb.members)
    if not trans:
        return None
    g = trans[0]
    ct = parent.conj_table
    return Subgroup(parent, frozenset(int(ct[g, x]) for x in S.arr), _validated=True)


# -- control of p-fusion ------------------------------------------------------


def control_p_fusion(H: Subgroup, G: Group | Subgroup, p: int) -> VerificationReport:
    """Does H realize all G-conjugation maps between subgroups of a
    common Sylow p-subgroup?

    Raises when no conjugate of a Sylow p-subgroup of G lies in H.
    """
    t0 = time.monotonic()
    parent, amb = _ambient(G)
    S = _common_sylow(amb, H, p)
    if S is None:
        raise PreconditionError("H contains no Sylow p-subgroup of G")
    F_h = FusionSystem.transporter(S, H, p=p, label="F_S(H)")
    F_g = FusionSystem.transporter(S, amb, p=p, label="F_S(G)")
    witness = fusion_difference_witness(F_h, F_g, "all")
    return VerificationReport(
        check_name="control",
        inputs=[f"|H|={H.order}", f"|G|={amb.order}", f"p={p}", f"|S|={S.order}"],
        hypothesis_held=True,
        conclusion_held=witness is None,
        witnesses=[] if witness is None else [f"hom sets differ at {witness}"],
        elapsed=time.monotonic() - t0,
    )


# -- rigidity of saturated systems on small abelian families -------------------


def theorem12_instance(
    F: FusionSystem,
    Fsub: FusionSystem,
    family: Optional[str] = None,
    inputs: Sequence[str] = (),
) -> VerificationReport:
    """Agreement on the small-exponent abelian family forces equality.

    Hypothesis: Fsub is contained in F, both saturated, and their hom
    sets agree on elementary abelian subgroups (p odd) or abelian
    subgroups of exponent at most 4 (p = 2).  Conclusion: the systems
    agree on every subgroup pair.
    """
    t0 = time.monotonic()
    p = F.p
    for system in (F, Fsub):
        sat = check_saturation(system)
        if not sat.conclusion_held:
            raise PreconditionError(f"unsaturated input {system.label}")
    fam = family or ("elementary-abelian" if p != 2 else "abelian-exponent-le-4")
    witnesses: list[str] = []
    hypothesis = True
    if not F.contains(Fsub):
        hypothesis = False
        witnesses.append("inner system is not contained in the outer system")
    fam_witness = fusion_difference_witness(Fsub, F, fam)
    if fam_witness is not None:
        hypothesis = False
        witnesses.append(f"family '{fam}' disagrees at {fam_witness}")
    full_witness = fusion_difference_witness(Fsub, F, "all")
    if full_witness is not None:
        witnesses.append(f"full hom sets differ at {full_witness}")
    return VerificationReport(
        check_name="theorem12",
        inputs=list(inputs) + [f"p={p}", f"family={fam}", f"|S|={F.S.order}"],
        hypothesis_held=hypothesis,
        conclusion_held=full_witness is None,
        witnesses=witnesses,
        elapsed=time.monotonic() - t0,
    )


# -- abelian Rep bijections force control --------------------------------------


def theorem14_instance(phi: GroupMap, p: int, inputs: Sequence[str] = ()) -> VerificationReport:
    """A Rep-class bijection at tuple rank rk_p(target) forces control.

    Hypothesis: the induced map on commuting-tuple classes at
    n = max(1, rk_p(G)) is a bijection (by the rank-reduction lemma this
    covers every abelian p-group of p-rank up to rk_p(G)).  Conclusion:
    kernel and index prime to p, and the image controls p-fusion.
    """
    t0 = time.monotonic()
    tgt = phi.target
    n = max(1, p_rank(tgt, p))
    hyp, detail = rep_zpn_map_bijective(phi, n, p)
    witnesses = [f"n={n}", detail]
    kernel = sum(1 for v in phi.img if v == 0)
    kernel_ok = math.gcd(kernel, p) == 1
    image = phi.image_subgroup()
    index = tgt.order // image.order
    index_ok = math.gcd(index, p) == 1
    control_ok = False
    if kernel_ok and index_ok:
        try:
            control_ok = control_p_fusion(image, tgt, p).conclusion_held
        except PreconditionError as exc:
            witnesses.append(f"control precondition failed: {exc}")
    if not kernel_ok:
        witnesses.append(f"|kernel|={kernel} is divisible by p")
    if not index_ok:
        witnesses.append(f"index={index} is divisible by p")
    return VerificationReport(
        check_name="theorem14",
        inputs=list(inputs) + [f"p={p}", f"|H|={phi.source.order}", f"|G|={tgt.order}"],
        hypothesis_held=hyp,
        conclusion_held=kernel_ok and index_ok and control_ok,
        witnesses=witnesses,
        elapsed=time.monotonic() - t0,
    )


# -- the tuple-rank reduction lemma --------------------------------------------


def _abelian_test_groups(p: int, n: int, r: int) -> list[Group]:
    """Abelian p-groups of rank exactly n and exponent at most p^r."""
    shapes = []

    def rec(prefix: list[int], max_e: int) -> None:
        if len(prefix) == n:
            shapes.append(tuple(prefix))
            return
        for e in range(1, max_e + 1):
            rec(prefix + [e], e)

    rec([], r)
    out = []
    for shape in sorted(shapes):
        g = cat.cyclic(p ** shape[0])
        for e in shape[1:]:
            g = cat.direct(g, cat.cyclic(p**e))
        out.append(g)
    return out


def lemma_small_instance(
    phi: GroupMap, p: int, n: int, inputs: Sequence[str] = ()
) -> VerificationReport:
    """Tuple-class bijection at rank n versus Rep bijections for every
    abelian p-group of rank exactly n; plus the p-rank consequence.

    Both sides are computed independently; the conclusion fails if they
    disagree, or if a bijection at positive n >= min(rk_p(G), rk_p(H)+1)
    does not force equal p-ranks.
    """
    t0 = time.monotonic()
    if n < 1:
        raise PreconditionError("rank must be positive")
    src, tgt = phi.source, phi.target
    tuple_bij, tuple_detail = rep_zpn_map_bijective(phi, n, p)
    r = 1
    for side in (src, tgt):
        if side.order % p == 0:
            syl = sylow_subgroup(side, p)
            e = exponent(syl)
            r = max(r, round(math.log(e, p)) if e > 1 else 1)
    witnesses = [f"n={n}", f"exponent bound p^{r}", f"tuples: {tuple_detail}"]
    abelian_bij = True
    for A in _abelian_test_groups(p, n, r):
        ok, detail = rep_classes_map_bijective(A, phi)
        witnesses.append(f"{A.name}: {'bijective' if ok else detail}")
        abelian_bij = abelian_bij and ok
    consistent = tuple_bij == abelian_bij
    if not consistent:
        witnesses.append("tuple-class and abelian-Rep sides disagree")
    rank_ok = True
    rk_g, rk_h = p_rank(tgt, p), p_rank(src, p)
    if tuple_bij and n >= min(rk_g, rk_h + 1):
        rank_ok = rk_g == rk_h
        if not rank_ok:
            witnesses.append(f"rank conclusion fails: rk_p(G)={rk_g} rk_p(H)={rk_h}")
    return VerificationReport(
        check_name="lemma-small",
        inputs=list(inputs) + [f"p={p}", f"n={n}"],
        hypothesis_held=True,
        conclusion_held=consistent and rank_ok,
        witnesses=witnesses,
        elapsed=time.monotonic() - t0,
    )


# -- the generation step for the rigidity theorem ------------------------------


def main_lemma_instance(
    F: FusionSystem,
    Fsub: FusionSystem,
    P: Subgroup,
    Q: Subgroup,
    inputs: Sequence[str] = (),
) -> VerificationReport:
    """Aut_F(P) is generated by Aut_sub(P) with the pointwise stabilizer
    of a normal subgroup whose morphisms already agree.

    Hypothesis: P is F-centric and fully F-normalized, the two systems
    have equal automorphisms on every R with P < R <= N_S(P), Q is
    normal in P, and Hom(Q, S) agrees.  Conclusion: Aut_F(P) equals
    <Aut_sub(P), C_{Aut_F(P)}(Q)>.
    """
    t0 = time.monotonic()
    parent = F.S.parent
    witnesses: list[str] = []
    hypothesis = True
    if not (Q <= P and P <= F.S):
        raise PreconditionError("need Q <= P <= S")
    if not F.is_centric(P):
        hypothesis = False
        witnesses.append("P is not F-centric")
    if not F.is_fully_normalized(P):
        hypothesis = False
        witnesses.append("P is not fully F-normalized")
    if normalizer(parent, P, Q).order != P.order:
        hypothesis = False
        witnesses.append("Q is not normal in P")
    ns_p = normalizer(parent, F.S, P)
    for R in F.subgroups:
        if P < R and R <= ns_p:
            if set(_aut_tuples(F, R)) != set(_aut_tuples(Fsub, R)):
                hypothesis = False
                witnesses.append(f"Aut disagrees at {R.describe()}")
                break
    if set(F.hom_tuples(Q)) != set(Fsub.hom_tuples(Q)):
        hypothesis = False
        witnesses.append("Hom(Q, S) differs between the systems")
    aut_f = set(_aut_tuples(F, P))
    aut_sub = set(_aut_tuples(Fsub, P))
    q_slots = [k for k, m in enumerate(P.arr) if int(m) in Q.members]
    fixing = {
        t for t in aut_f if all(t[k] == int(P.arr[k]) for k in q_slots)
    }
    pos = {int(m): k for k, m in enumerate(P.arr)}

    def compose(a, b):
        return tuple(a[pos[v]] for v in b)

    generated = closure_of_tuples(aut_sub | fixing, compose)
    conclusion = generated == aut_f
    if not conclusion:
        witnesses.append(
            f"generated subgroup has order {len(generated)} inside |Aut_F(P)|={len(aut_f)}"
        )
    return VerificationReport(
        check_name="main-lemma",
        inputs=list(inputs) + [f"P={P.describe()}", f"Q={Q.describe()}"],
        hypothesis_held=hypothesis,
        conclusion_held=conclusion,
        witnesses=witnesses,
        elapsed=time.monotonic() - t0,
    )


def _aut_tuples(F: FusionSystem, P: Subgroup) -> list[tuple[int, ...]]:
    pm = P.members
    return [img for img in F.hom_tuples(P) if all(v in pm for v in img)]


# -- Sylow recognition inside a larger system ----------------------------------


def sylowiso_instance(
    F: FusionSystem,
    Fsub: FusionSystem,
    inputs: Sequence[str] = (),
) -> VerificationReport:
    """A saturated subsystem on T matching F on one F-centric subgroup
    of T must have T = S and the same automorphisms of T.

    The qualifying subgroup is searched; a failed search reports the
    hypothesis as not held (non-binding).
    """
    t0 = time.monotonic()
    if F.S.parent is not Fsub.S.parent or not Fsub.S <= F.S:
        raise PreconditionError("the subsystem must live on T <= S")
    T = Fsub.S
    witnesses: list[str] = []
    hypothesis = True
    sat = check_saturation(Fsub)
    if not sat.conclusion_held:
        hypothesis = False
        witnesses.append("subsystem is not saturated")
    contained = all(
        set(Fsub.hom_tuples(P)) <= set(F.hom_tuples(P)) for P in Fsub.subgroups
    )
    if not contained:
        hypothesis = False
        witnesses.append("not a subsystem of the outer system")
    qualifying = None
    tm = T.members
    for Q in Fsub.subgroups:
        if not F.is_centric(Q):
            continue
        f_into_t = {img for img in F.hom_tuples(Q) if all(v in tm for v in img)}
        sub_into_t = {img for img in Fsub.hom_tuples(Q) if all(v in tm for v in img)}
        if f_into_t == sub_into_t:
            qualifying = Q
            break
    if qualifying is None:
        hypothesis = False
        witnesses.append("no F-centric Q <= T with matching Hom(Q, T)")
    else:
        witnesses.append(f"qualifying Q: {qualifying.describe()}")
    t_is_s = T.members == F.S.members
    aut_equal = set(_aut_tuples(F, T)) == set(_aut_tuples(Fsub, T))
    if not t_is_s:
        witnesses.append("T is a proper subgroup of S")
    if not aut_equal:
        witnesses.append("Aut(T) differs between the systems")
    return VerificationReport(
        check_name="sylowiso",
        inputs=list(inputs) + [f"|T|={T.order}", f"|S|={F.S.order}"],
        hypothesis_held=hypothesis,
        conclusion_held=t_is_s and aut_equal,
        witnesses=witnesses,
        elapsed=time.monotonic() - t0,
    )


# -- the extraspecial obstruction ----------------------------------------------


def extraspecial_note_check(p: int, inputs: Sequence[str] = ()) -> VerificationReport:
    """No abelian characteristic subgroup of the exponent-p extraspecial
    group of order p^3 detects all automorphisms of order prime to p."""
    t0 = time.monotonic()
    if p not in (3, 5):
        raise PreconditionError("bundled for p in {3, 5}")
    P = cat.extraspecial_plus(p).whole
    aut = automorphism_group(P)
    ident = aut.identity_tuple()
    primed = [
        t
        for t in aut.tuples
        if t != ident and math.gcd(aut.tuple_order(t), p) == 1
    ]
    witnesses: list[str] = []
    ok = True
    pos = aut.pos
    for A in characteristic_subgroups(P, aut):
        if not A.is_abelian():
            continue
        trivializer = None
        for t in primed:
            if all(t[pos[int(v)]] == int(v) for v in A.arr):
                trivializer = t
                break
        if trivializer is None and A.order > 1:
            ok = False
            witnesses.append(f"abelian characteristic detector found: {A.describe()}")
        else:
            witnesses.append(
                f"abelian characteristic {A.describe()}: admits a trivializing prime-to-p automorphism"
                if trivializer is not None
                else f"abelian characteristic {A.describe()}: trivial group"
            )
    D = thompson_subgroup(P, aut)
    if D.is_abelian():
        ok = False
        witnesses.append("small-exponent detection subgroup is unexpectedly abelian")
    else:
        witnesses.append("small-exponent detection subgroup is nonabelian, as required")
    return VerificationReport(
        check_name="extraspecial-note",
        inputs=list(inputs) + [f"p={p}"],
        hypothesis_held=True,
        conclusion_held=ok,
        witnesses=witnesses,
        elapsed=time.monotonic() - t0,
    )


# -- the small-exponent detection subgroup, as a per-group check ----------------


def thompson_check(P: Subgroup, inputs: Sequence[str] = ()) -> VerificationReport:
    """Construct the detection subgroup and verify the full guarantee:
    exponent bound, [D,P] <= Z(D), detection of prime-to-p maps, and the
    maximal abelian consequences (normality, p-group centralizer)."""

    t0 = time.monotonic()
    p = next(iter(factorize(P.order)))
    witnesses: list[str] = []
    ok = True
    try:
        aut = automorphism_group(P)
        D = thompson_subgroup(P, aut)  # postconditions checked inside
        witnesses.append(f"D={D.describe()}")
        A = maximal_abelian_in(D)
        witnesses.append(f"A={A.describe()}")
        parent = P.parent
        if normalizer(parent, P, A).order != P.order:
            ok = False
            witnesses.append("maximal abelian subgroup is not normal in P")
        pos = aut.pos
        for t in aut.tuples:
            if all(t[pos[int(v)]] == int(v) for v in A.arr):
                if p_part(aut.tuple_order(t), p) != aut.tuple_order(t):
                    ok = False
                    witnesses.append("centralizer of A in Aut(P) has an element of order not a p-power")
                    break
    except Exception as exc:  # postcondition failures surface as witnesses
        if isinstance(exc, CapExceededError):
            raise
        ok = False
        witnesses.append(f"construction failed: {exc}")
    return VerificationReport(
        check_name="thompson",
        inputs=list(inputs) + [f"|P|={P.order}", f"p={p}"],
        hypothesis_held=True,
        conclusion_held=ok,
        witnesses=witnesses,
        elapsed=time.monotonic() - t0,
    )


def p2_identity_check(P: Subgroup, inputs: Sequence[str] = ()) -> VerificationReport:
    """Exhaustive fourth-power identity on a 2-group with elementary
    abelian central quotient."""
    t0 = time.monotonic()
    ok = verify_p2_identity(P)
    return VerificationReport(
        check_name="p2-identity",
        inputs=list(inputs) + [f"|P|={P.order}"],
        hypothesis_held=True,
        conclusion_held=ok,
        witnesses=[] if ok else ["fourth-power identity failed"],
        elapsed=time.monotonic() - t0,
    )


def rep_count_report(
    A: Optional[Group],
    G: Group | Subgroup,
    n: Optional[int] = None,
    p: Optional[int] = None,
    inputs: Sequence[str] = (),
) -> VerificationReport:
    """Measure Rep-class counts (group-hom classes or tuple classes)."""
    t0 = time.monotonic()
    if n is not None:
        if p is None:
            raise PreconditionError("tuple counting needs p")
        rcs = rep_zpn_classes(n, G, p)
    else:
        if A is None:
            raise PreconditionError("need a source group or a tuple rank")
        rcs = rep_classes(A, G)
    return VerificationReport(
        check_name="rep-count",
        inputs=list(inputs),
        hypothesis_held=True,
        conclusion_held=True,
        witnesses=[f"class_count={rcs.class_count}"],
        elapsed=time.monotonic() - t0,
    )


# -- catalog sweeps -------------------------------------------------------------


def _skip_report(check: str, name: str, reason: str) -> VerificationReport:
    return VerificationReport(
        check_name=f"{check}-skipped",
        inputs=[name],
        hypothesis_held=False,
        conclusion_held=True,
        witnesses=[reason],
    )


def pair_systems(pair: cat.CatalogPair, p: int) -> tuple[FusionSystem, FusionSystem]:
    """Transporter systems of the pair on a shared Sylow p-subgroup."""
    S = sylow_subgroup(pair.H, p)
    F = FusionSystem.transporter(S, pair.parent, p=p, label=f"F_S({pair.name}:G)")
    Fsub = FusionSystem.transporter(S, pair.H, p=p, label=f"F_S({pair.name}:H)")
    return F, Fsub


def sweep_theorem12(
    p: int,
    family: Optional[str] = None,
    max_order: int = DEFAULT_SWEEP_MAX_ORDER,
) -> list[VerificationReport]:
    reports = []
    for pair in cat.catalog_pairs():
        if p not in pair.primes or pair.parent.order % p != 0:
            continue
        if pair.parent.order > max_order:
            reports.append(_skip_report("theorem12", pair.name, f"|G|>{max_order}"))
            continue
        F, Fsub = pair_systems(pair, p)
        reports.append(
            theorem12_instance(F, Fsub, family=family, inputs=[f"pair={pair.name}"])
        )
    return reports


def sweep_theorem14(p: int, max_order: int = DEFAULT_SWEEP_MAX_ORDER) -> list[VerificationReport]:
    reports = []
    for name, phi in theorem14_instances(p):
        if phi.target.order > max_order:
            reports.append(_skip_report("theorem14", name, f"|G|>{max_order}"))
            continue
        reports.append(theorem14_instance(phi, p, inputs=[f"instance={name}"]))
    return reports


def theorem14_instances(p: int) -> list[tuple[str, GroupMap]]:
    """Catalog homomorphism instances: inclusions, quotients, identities."""
    out: list[tuple[str, GroupMap]] = []
    for pair in cat.catalog_pairs():
        if pair.parent.order % p == 0:
            out.append((pair.name, _inclusion_map(pair.H, pair.parent)))
    g = cat.catalog_group("sl23")
    q8 = sylow_subgroup(g, 2)
    c3, labels = quotient_group(g, q8)
    out.append(
        (
            "sl23->quotient-by-sylow2",
            GroupMap(g.whole, c3.whole, tuple(int(labels[x]) for x in range(g.order))),
        )
    )
    c4 = cat.catalog_group("cyclic(4)")
    c2, lab2 = quotient_group(c4, Subgroup(c4, frozenset([0, 2])))
    out.append(
        (
            "cyclic(4)->cyclic(2)",
            GroupMap(c4.whole, c2.whole, tuple(int(lab2[x]) for x in range(4))),
        )
    )
    q8g = cat.catalog_group("quaternion8")
    out.append(("identity-quaternion8", GroupMap.identity(q8g.whole)))
    G2, H2 = cat.gn_hn(2)
    c3b, lab3 = quotient_group(G2, H2)
    out.append(
        (
            "gn(2)->quotient-by-hn(2)",
            GroupMap(G2.whole, c3b.whole, tuple(int(lab3[x]) for x in range(G2.order))),
        )
    )
    return sorted(out, key=lambda t: t[0])


def sweep_saturation(max_order: int = 1200) -> list[VerificationReport]:
    """Saturation of every bundled transporter system, plus the bundled
    non-saturated generated demo."""
    reports = []
    seen: set[tuple[int, int, int]] = set()
    for pair in cat.catalog_pairs():
        for p in pair.primes:
            if pair.parent.order > max_order:
                reports.append(_skip_report("saturation", pair.name, f"|G|>{max_order}"))
                continue
            F, Fsub = pair_systems(pair, p)
            for system, side in ((F, "G"), (Fsub, "H")):
                key = (id(system.S.parent), system.S.mask, system.ambient.mask)
                if key in seen:
                    continue
                seen.add(key)
                rep = check_saturation(system)
                rep.inputs = [f"pair={pair.name}", f"side={side}"] + rep.inputs
                reports.append(rep)
    for name in cat.generated_demo_names():
        system = cat.generated_demo(name)
        rep = check_saturation(system)
        rep.inputs = [f"generated={name}"] + rep.inputs
        reports.append(rep)
    return reports


def sweep_thompson(p: int, max_group_order: int) -> list[VerificationReport]:
    reports = []
    for name, g in cat.catalog_p_groups(p, max_group_order):
        reports.append(thompson_check(g.whole, inputs=[f"group={name}"]))
    return reports


def sweep_p2_identity(max_group_order: int = 64) -> list[VerificationReport]:
    reports = []
    for name, g in cat.catalog_p_groups(2, max_group_order):
        try:
            reports.append(p2_identity_check(g.whole, inputs=[f"group={name}"]))
        except PreconditionError as exc:
            reports.append(_skip_report("p2-identity", name, str(exc)))
    return reports


def sweep_main_lemma(p: int, max_order: int = DEFAULT_SWEEP_MAX_ORDER) -> list[VerificationReport]:
    """All (P, Q) instances over catalog pairs with a shared Sylow."""
    reports = []
    for pair in cat.catalog_pairs():
        if p not in pair.primes or pair.parent.order % p != 0:
            continue
        if pair.parent.order > max_order:
            reports.append(_skip_report("main-lemma", pair.name, f"|G|>{max_order}"))
            continue
        F, Fsub = pair_systems(pair, p)
        parent = F.S.parent
        for P in F.subgroups:
            if not (F.is_centric(P) and F.is_fully_normalized(P)):
                continue
            for Q in F.subgroups:
                if not Q <= P:
                    continue
                if normalizer(parent, P, Q).order != P.order:
                    continue
                reports.append(
                    main_lemma_instance(F, Fsub, P, Q, inputs=[f"pair={pair.name}"])
                )
    return reports


def sweep_sylowiso(p: int, max_order: int = DEFAULT_SWEEP_MAX_ORDER) -> list[VerificationReport]:
    reports = []
    for pair in cat.catalog_pairs():
        if p not in pair.primes or pair.parent.order % p != 0:
            continue
        if pair.parent.order > max_order:
            reports.append(_skip_report("sylowiso", pair.name, f"|G|>{max_order}"))
            continue
        F, Fsub = pair_systems(pair, p)
        reports.append(sylowiso_instance(F, Fsub, inputs=[f"pair={pair.name}"]))
    return reports
