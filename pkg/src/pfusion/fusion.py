"""Fusion systems over a finite p-group S.

A fusion system is queried through one primitive: the set of morphisms
from a subgroup P into S, each stored extensionally as the tuple of
images of P's sorted members.  Transporter systems compute these sets
by scanning an ambient group; generated systems hold the closure of a
generator list under composition, restriction and inversion.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .automorphisms import AutGroup, homomorphisms
from .core import (
    Group,
    GroupMap,
    Subgroup,
    all_subgroups,
    centralizer,
    exponent,
    factorize,
    generate,
    is_elementary_abelian,
    is_prime,
    normalizer,
    p_part,
    _ambient,
)
from .errors import (
    CapExceededError,
    GroupInvariantError,
    ParentMismatchError,
    PreconditionError,
)
from .report import VerificationReport

DEFAULT_MAX_MORPHISMS = 500_000
DEFAULT_MAX_TUPLES = 2_000_000


class FusionSystem:
    """Morphism-set oracle for subgroup pairs of a fixed p-group S."""

    def __init__(
        self,
        p: int,
        S: Subgroup,
        ambient: Optional[Subgroup] = None,
        morphisms: Optional[dict[int, frozenset[tuple[int, ...]]]] = None,
        label: str = "",
    ):
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        if p_part(S.order, p) != S.order:
            raise PreconditionError("S must be a p-group")
        self.p = p
        self.S = S
        self.ambient = ambient
        self._morphisms = morphisms
        if ambient is None and morphisms is None:
            raise PreconditionError("need an ambient group or a morphism table")
        if ambient is not None and not S <= ambient:
            raise PreconditionError("S must be contained in the ambient subgroup")
        self.label = label or (
            f"F_{S.order}({ambient.order})" if ambient is not None else f"F_{S.order}(gen)"
        )
        self._hom_cache: dict[int, tuple[tuple[int, ...], ...]] = {}

    # -- constructors ----------------------------------------------------

    @staticmethod
    def transporter(S: Subgroup, ambient: Group | Subgroup, p: Optional[int] = None,
                    label: str = "") -> "FusionSystem":
        """Conjugation fusion of an ambient group on S <= ambient.

        S is not required to be Sylow in the ambient group; saturation
        is then a property to check, not an assumption.
        """
        parent, amb = _ambient(ambient)
        if S.parent is not parent:
            raise ParentMismatchError("S and the ambient group have different parents")
        if p is None:
            fac = factorize(S.order)
            if len(fac) != 1:
                raise PreconditionError("cannot infer p from a non-p-group")
            p = next(iter(fac))
        return FusionSystem(p, S, ambient=amb, label=label)

    @property
    def kind(self) -> str:
        return "transporter" if self._morphisms is None else "generated"

    # -- subgroup lattice -------------------------------------------------

    @cached_property
    def subgroups(self) -> tuple[Subgroup, ...]:
        return tuple(all_subgroups(self.S))

    @cached_property
    def _sub_by_mask(self) -> dict[int, Subgroup]:
        return {sub.mask: sub for sub in self.subgroups}

    def sub_by_members(self, members: Iterable[int]) -> Subgroup:
        mask = 0
        for m in members:
            mask |= 1 << int(m)
        try:
            return self._sub_by_mask[mask]
        except KeyError:
            raise PreconditionError("subgroup is not inside S") from None

    # -- morphism sets ----------------------------------------------------

    def hom_tuples(self, P: Subgroup) -> tuple[tuple[int, ...], ...]:
        """All morphisms P -> S, as image tuples over P.arr, sorted."""
        if not P <= self.S:
            raise PreconditionError("source subgroup is not inside S")
        cached = self._hom_cache.get(P.mask)
        if cached is not None:
            return cached
        if self._morphisms is not None:
            out = tuple(sorted(self._morphisms.get(P.mask, frozenset())))
        else:
            parent = self.S.parent
            rows = parent.conj_table[np.ix_(self.ambient.arr, P.arr)]
            keep = self.S.member_mask_array[rows].all(axis=1)
            imgs = np.unique(rows[keep], axis=0)
            out = tuple(tuple(int(v) for v in row) for row in imgs)
        self._hom_cache[P.mask] = out
        return out

    def hom_set(self, P: Subgroup, Q: Subgroup) -> tuple[GroupMap, ...]:
        """Hom_F(P, Q): morphisms P -> S with image inside Q."""
        if not Q <= self.S:
            raise PreconditionError("target subgroup is not inside S")
        qm = Q.members
        out = []
        for img in self.hom_tuples(P):
            if all(v in qm for v in img):
                out.append(GroupMap(P, Q, img))
        return tuple(out)

    def aut(self, P: Subgroup) -> AutGroup:
        """Aut_F(P) = Hom_F(P, P), as an automorphism group."""
        pm = P.members
        maps = [
            GroupMap(P, P, img)
            for img in self.hom_tuples(P)
            if all(v in pm for v in img)
        ]
        return AutGroup(P, maps, validate=False)

    def aut_s_tuples(self, Q: Subgroup) -> frozenset[tuple[int, ...]]:
        """Aut_S(Q): conjugation maps induced by the normalizer in S."""
        parent = self.S.parent
        ns = normalizer(parent, self.S, Q)
        ct = parent.conj_table
        return frozenset(tuple(int(v) for v in ct[g, Q.arr]) for g in ns.arr)

    # -- conjugacy and the standard predicates -----------------------------

    def orbit(self, Q: Subgroup) -> tuple[Subgroup, ...]:
        """All F-conjugates of Q inside S, canonically sorted."""
        seen: dict[int, Subgroup] = {}
        for img in self.hom_tuples(Q):
            sub = self.sub_by_members(img)
            seen.setdefault(sub.mask, sub)
        return tuple(sorted(seen.values(), key=Subgroup.key))

    def is_fully_normalized(self, Q: Subgroup) -> bool:
        parent = self.S.parent
        mine = normalizer(parent, self.S, Q).order
        return mine == max(
            normalizer(parent, self.S, Q2).order for Q2 in self.orbit(Q)
        )

    def is_fully_centralized(self, Q: Subgroup) -> bool:
        parent = self.S.parent
        mine = centralizer(parent, self.S, Q).order
        return mine == max(
            centralizer(parent, self.S, Q2).order for Q2 in self.orbit(Q)
        )

    def is_centric(self, Q: Subgroup) -> bool:
        """C_S(Q') = Z(Q') for every F-conjugate Q' of Q."""
        parent = self.S.parent
        return all(
            centralizer(parent, self.S, Q2) <= Q2 for Q2 in self.orbit(Q)
        )

    def n_phi(self, phi: GroupMap) -> Subgroup:
        """The extension-axiom domain of a morphism phi: Q -> S.

        N_phi = {g in N_S(Q) | phi c_g phi^{-1} is conjugation by an
        element of S on phi(Q)}.
        """
        if not phi.is_injective:
            raise PreconditionError("n_phi needs an injective morphism")
        Q = phi.source
        parent = self.S.parent
        Qi = phi.image_subgroup()
        aut_s = self.aut_s_tuples(Qi)
        back = {v: int(m) for m, v in zip(Q.arr, phi.img)}
        fwd = phi.images
        ct = parent.conj_table
        keep = []
        for g in normalizer(parent, self.S, Q).arr:
            g = int(g)
            transported = tuple(fwd[int(ct[g, back[int(x)]])] for x in Qi.arr)
            if transported in aut_s:
                keep.append(g)
        return Subgroup(parent, frozenset(keep))

    def contains(self, other: "FusionSystem") -> bool:
        """Every morphism of `other` is a morphism of this system."""
        _require_same_S(self, other)
        return all(
            set(other.hom_tuples(P)) <= set(self.hom_tuples(P))
            for P in other.subgroups
        )

    def morphism_count(self) -> int:
        return sum(len(self.hom_tuples(P)) for P in self.subgroups)

    def __repr__(self) -> str:
        return f"FusionSystem({self.label}, p={self.p}, |S|={self.S.order})"


def _require_same_S(F1: FusionSystem, F2: FusionSystem) -> None:
    if F1.S.parent is not F2.S.parent or F1.S.members != F2.S.members:
        raise ParentMismatchError("fusion systems live on different S")
    if F1.p != F2.p:
        raise ParentMismatchError("fusion systems have different primes")


# -- generated closures ----------------------------------------------------


def generated_closure(
    S: Subgroup,
    gens: Sequence[GroupMap],
    p: Optional[int] = None,
    max_morphisms: int = DEFAULT_MAX_MORPHISMS,
    label: str = "",
) -> FusionSystem:
    """Least fusion system on S containing the generators.

    Fixpoint under: all conjugation maps by elements of S, composition,
    restriction to subgroups, and inversion of isomorphisms onto image.
    """
    parent = S.parent
    if p is None:
        fac = factorize(S.order)
        if len(fac) != 1:
            raise PreconditionError("cannot infer p from a non-p-group")
        p = next(iter(fac))
    subs = all_subgroups(S)
    by_mask = {sub.mask: sub for sub in subs}
    contained_in: dict[int, list[Subgroup]] = {
        big.mask: [small for small in subs if small.mask & big.mask == small.mask]
        for big in subs
    }
    supersets_of: dict[int, list[Subgroup]] = {
        small.mask: [big for big in subs if small.mask & big.mask == small.mask]
        for small in subs
    }
    morph: dict[int, set[tuple[int, ...]]] = {sub.mask: set() for sub in subs}
    total = 0
    work: list[tuple[int, tuple[int, ...]]] = []

    def add(mask: int, img: tuple[int, ...]) -> None:
        nonlocal total
        bucket = morph[mask]
        if img in bucket:
            return
        if total >= max_morphisms:
            raise CapExceededError("max_morphisms", max_morphisms)
        bucket.add(img)
        total += 1
        work.append((mask, img))

    ct = parent.conj_table
    for sub in subs:
        arr = sub.arr
        for s in S.arr:
            row = ct[int(s), arr]
            if S.member_mask_array[row].all():
                add(sub.mask, tuple(int(v) for v in row))
    for g in gens:
        if not (g.source <= S and g.is_injective):
            raise PreconditionError("generators must be injective maps between subgroups of S")
        if not all(v in S.members for v in g.img):
            raise PreconditionError("generator image must lie inside S")
        g.validate()
        add(g.source.mask, g.img)

    while work:
        mask, img = work.pop()
        src = by_mask[mask]
        imap = dict(zip((int(x) for x in src.arr), img))
        # restrictions to subgroups of the source
        for small in contained_in[mask]:
            if small.mask != mask:
                add(small.mask, tuple(imap[int(x)] for x in small.arr))
        # inversion of the isomorphism onto the image
        img_mask = 0
        for v in img:
            img_mask |= 1 << v
        img_sub = by_mask[img_mask]
        back = {v: k for k, v in imap.items()}
        add(img_mask, tuple(back[int(x)] for x in img_sub.arr))
        # compositions: g o f with f the new map
        for big in supersets_of[img_mask]:
            for img2 in list(morph[big.mask]):
                gmap = dict(zip((int(x) for x in big.arr), img2))
                add(mask, tuple(gmap[v] for v in img))
        # compositions: f o g for existing g landing inside the source
        for other_mask, bucket in morph.items():
            for img2 in list(bucket):
                ok = True
                for v in img2:
                    if v not in imap:
                        ok = False
                        break
                if ok:
                    add(other_mask, tuple(imap[v] for v in img2))

    table = {m: frozenset(v) for m, v in morph.items()}
    return FusionSystem(p, S, morphisms=table, label=label or "generated")


# -- saturation --------------------------------------------------------------


def check_saturation(F: FusionSystem) -> VerificationReport:
    """Evaluate the Sylow and extension axioms on every subgroup of S.

    The report's conclusion holds iff no (subgroup, axiom) pair fails;
    the hypothesis records whether the system is transporter-realized
    with S Sylow in its ambient group (the case guaranteed saturated).
    """
    t0 = time.monotonic()
    parent = F.S.parent
    failures: list[str] = []
    for Q in F.subgroups:
        orbit = F.orbit(Q)
        max_n = max(normalizer(parent, F.S, Q2).order for Q2 in orbit)
        max_c = max(centralizer(parent, F.S, Q2).order for Q2 in orbit)
        fully_n = normalizer(parent, F.S, Q).order == max_n
        fully_c = centralizer(parent, F.S, Q).order == max_c
        if fully_n:
            if not fully_c:
                failures.append(f"sylow-axiom:{Q.describe()}:not fully centralized")
            aut_f = [img for img in F.hom_tuples(Q) if all(v in Q.members for v in img)]
            aut_s = F.aut_s_tuples(Q)
            if len(aut_s) != p_part(len(aut_f), F.p):
                failures.append(
                    f"sylow-axiom:{Q.describe()}:|Aut_S|={len(aut_s)} "
                    f"is not the p-part of |Aut_F|={len(aut_f)}"
                )
        for img in F.hom_tuples(Q):
            img_sub = F.sub_by_members(img)
            if centralizer(parent, F.S, img_sub).order != max_c:
                continue  # extension axiom only constrains fully centralized images
            phi = GroupMap(Q, F.S, img)
            n_phi = F.n_phi(phi)
            if n_phi.members == Q.members:
                continue
            dom = F.sub_by_members(n_phi.members)
            pos = {int(m): k for k, m in enumerate(dom.arr)}
            slots = [pos[int(m)] for m in Q.arr]
            extended = any(
                tuple(big[s] for s in slots) == img for big in F.hom_tuples(dom)
            )
            if not extended:
                failures.append(
                    f"extension-axiom:{Q.describe()}:{GroupMap(Q, F.S, img).describe()}"
                )
    hypothesis = False
    if F.kind == "transporter":
        amb = F.ambient
        hypothesis = p_part(amb.order, F.p) == F.S.order
    return VerificationReport(
        check_name="saturation",
        inputs=[F.label, f"p={F.p}", f"|S|={F.S.order}", f"kind={F.kind}"],
        hypothesis_held=hypothesis,
        conclusion_held=not failures,
        witnesses=sorted(failures),
        elapsed=time.monotonic() - t0,
    )


# -- essential subgroups and regeneration -------------------------------------


def essential_subgroups(F: FusionSystem) -> tuple[Subgroup, ...]:
    """F-centric subgroups whose outer automorphism group has a
    strongly p-embedded subgroup."""
    from .core import is_strongly_p_embedded
    from .core import quotient_group

    out = []
    for P in F.subgroups:
        if not F.is_centric(P):
            continue
        aut_f = F.aut(P)
        aut_grp, ordered_maps = aut_f.as_group()
        inner_idx = [
            i for i, m in enumerate(ordered_maps) if m.img in aut_f.inner_tuples
        ]
        inn = Subgroup(aut_grp, frozenset(inner_idx))
        out_grp, _ = quotient_group(aut_grp, inn)
        if out_grp.order % F.p != 0:
            continue
        found = False
        for H in all_subgroups(out_grp.whole):
            if is_strongly_p_embedded(H, out_grp, F.p):
                found = True
                break
        if found:
            out.append(P)
    return tuple(sorted(out, key=Subgroup.key))


def fusion_generators_from_essentials(F: FusionSystem) -> list[GroupMap]:
    """Automorphisms of essential subgroups plus Aut_F(S)."""
    gens: list[GroupMap] = []
    for P in essential_subgroups(F):
        gens.extend(F.aut(P).maps)
    gens.extend(F.aut(F.S).maps)
    return gens


# -- extensional comparison ----------------------------------------------------


def family_predicate(name: str, p: int) -> Callable[[Subgroup], bool]:
    """Named subgroup families used in hom-set comparisons."""
    if name == "all":
        return lambda A: True
    if name == "abelian":
        return lambda A: A.is_abelian()
    if name == "elementary-abelian":
        return lambda A: is_elementary_abelian(A, p)
    if name == "abelian-exponent-le-4":
        return lambda A: A.is_abelian() and 4 % exponent(A) == 0
    raise PreconditionError(f"unknown subgroup family {name!r}")


def fusion_equal_on(
    F1: FusionSystem,
    F2: FusionSystem,
    family: str | Callable[[Subgroup], bool] = "all",
) -> bool:
    return fusion_difference_witness(F1, F2, family) is None


def fusion_difference_witness(
    F1: FusionSystem,
    F2: FusionSystem,
    family: str | Callable[[Subgroup], bool] = "all",
) -> Optional[str]:
    """First subgroup in the family with differing hom sets, if any.

    Comparing Hom(A, S) for every A in the family is equivalent to the
    pairwise Hom(A, B) comparison because the bundled families are
    closed under taking images of injective morphisms.
    """
    _require_same_S(F1, F2)
    pred = family_predicate(family, F1.p) if isinstance(family, str) else family
    for A in F1.subgroups:
        if not pred(A):
            continue
        if set(F1.hom_tuples(A)) != set(F2.hom_tuples(A)):
            return A.describe()
    return None


# -- Rep-class computations ------------------------------------------------------


@dataclass(frozen=True)
class RepClassSet:
    """Conjugacy-orbit representatives of a homomorphism set."""

    source_name: str
    target_name: str
    classes: tuple[tuple[int, ...], ...]
    class_count: int

    def __post_init__(self):
        if self.class_count != len(self.classes):
            raise GroupInvariantError("class count does not match representatives")


def _canonical_rep(amb_arr: np.ndarray, ct: np.ndarray, values: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least simultaneous conjugate of a value tuple."""
    orbit = ct[np.ix_(amb_arr, np.asarray(values, dtype=np.int32))]
    idx = np.lexsort(tuple(orbit[:, k] for k in range(orbit.shape[1] - 1, -1, -1)))
    return tuple(int(v) for v in orbit[idx[0]])


def rep_classes(A: Group, G: Group | Subgroup, max_maps: int = DEFAULT_MAX_MORPHISMS) -> RepClassSet:
    """Hom(A, G) modulo post-composition with conjugation.

    Full element maps are enumerated from a generating sequence of A;
    the class representative is the lexicographically least map.
    """
    if len(factorize(A.order)) > 1 or not A.whole.is_abelian():
        import warnings

        warnings.warn("rep_classes is intended for abelian p-groups", stacklevel=2)
    parent, amb = _ambient(G)
    homs = homomorphisms(A, G, max_maps=max_maps)
    ct = parent.conj_table
    reps = {_canonical_rep(amb.arr, ct, h) for h in homs}
    classes = tuple(sorted(reps))
    return RepClassSet(A.name, parent.name, classes, len(classes))


def rep_classes_fusion(A: Group, F: FusionSystem, max_maps: int = DEFAULT_MAX_MORPHISMS) -> RepClassSet:
    """Hom(A, S) modulo morphisms of the fusion system."""
    homs = homomorphisms(A, F.S, max_maps=max_maps)
    seen: set[tuple[int, ...]] = set()
    classes = []
    for h in homs:
        if h in seen:
            continue
        orbit = {h}
        frontier = [h]
        while frontier:
            cur = frontier.pop()
            img_sub = F.sub_by_members(generate(F.S.parent, cur).members)
            for alpha in F.hom_tuples(img_sub):
                amap = dict(zip((int(x) for x in img_sub.arr), alpha))
                nxt = tuple(amap[v] for v in cur)
                if nxt not in orbit:
                    orbit.add(nxt)
                    frontier.append(nxt)
        seen |= orbit
        classes.append(min(orbit))
    classes.sort()
    return RepClassSet(A.name, F.label, tuple(classes), len(classes))


def p_element_indices(G: Group | Subgroup, p: int) -> np.ndarray:
    parent, amb = _ambient(G)
    orders = parent.element_orders[amb.arr]
    keep = np.array([_is_ppow(int(o), p) for o in orders], dtype=bool)
    return amb.arr[keep]


def _is_ppow(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def commuting_p_tuples(G: Group | Subgroup, p: int, n: int,
                       max_tuples: int = DEFAULT_MAX_TUPLES) -> list[tuple[int, ...]]:
    """All ordered commuting n-tuples of p-power-order elements."""
    parent, amb = _ambient(G)
    pe = p_element_indices(amb, p)
    if len(pe) ** n > max_tuples:
        raise CapExceededError("max_tuples", max_tuples, f"{len(pe)}^{n}")
    m = len(pe)
    sub_tab = parent.mul_table[np.ix_(pe, pe)]
    comm = sub_tab == sub_tab.T
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], cand_mask: np.ndarray) -> None:
        if len(prefix) == n:
            out.append(tuple(int(pe[i]) for i in prefix))
            return
        for i in range(m):
            if cand_mask[i]:
                rec(prefix + [i], cand_mask & comm[i])

    rec([], np.ones(m, dtype=bool))
    return out


def rep_zpn_classes(
    n: int,
    G: Group | Subgroup,
    p: int,
    max_tuples: int = DEFAULT_MAX_TUPLES,
) -> RepClassSet:
    """Classes of commuting n-tuples of p-elements up to conjugacy.

    These count homomorphisms from the rank-n free abelian pro-p group
    up to conjugation in G.
    """
    if n < 1:
        raise PreconditionError("tuple rank must be positive")
    parent, amb = _ambient(G)
    tuples = commuting_p_tuples(amb, p, n, max_tuples=max_tuples)
    ct = parent.conj_table
    reps = {_canonical_rep(amb.arr, ct, t) for t in tuples}
    classes = tuple(sorted(reps))
    name = parent.name if isinstance(G, Group) else f"{parent.name}|{amb.order}"
    return RepClassSet(f"(Z_{p})^{n}", name, classes, len(classes))


def rep_zpn_map_bijective(
    phi: GroupMap,
    n: int,
    p: int,
    max_tuples: int = DEFAULT_MAX_TUPLES,
) -> tuple[bool, str]:
    """Is the induced map on commuting-tuple classes a bijection?

    The map sends the class of (h_1..h_n) in the source to the class of
    (phi(h_1)..phi(h_n)) in the target; returns (answer, detail).
    """
    src = phi.source
    tgt_parent = phi.target.parent
    src_classes = rep_zpn_classes(n, src, p, max_tuples=max_tuples)
    tgt_classes = rep_zpn_classes(n, phi.target, p, max_tuples=max_tuples)
    look = phi.images
    ct = tgt_parent.conj_table
    tgt_amb = phi.target.arr
    image_reps = {
        _canonical_rep(tgt_amb, ct, tuple(look[v] for v in rep))
        for rep in src_classes.classes
    }
    injective = len(image_reps) == src_classes.class_count
    surjective = image_reps == set(tgt_classes.classes)
    detail = (
        f"classes: source={src_classes.class_count} target={tgt_classes.class_count} "
        f"image={len(image_reps)}"
    )
    return injective and surjective, detail


def rep_classes_map_bijective(
    A: Group,
    phi: GroupMap,
    max_maps: int = DEFAULT_MAX_MORPHISMS,
) -> tuple[bool, str]:
    """Is Rep(A, source) -> Rep(A, target) induced by phi a bijection?"""
    src = phi.source
    src_parent = src.parent
    tgt_parent = phi.target.parent
    homs = homomorphisms(A, src, max_maps=max_maps)
    ct_s = src_parent.conj_table
    src_reps = {_canonical_rep(src.arr, ct_s, h) for h in homs}
    tgt_set = rep_classes(A, phi.target, max_maps=max_maps)
    look = phi.images
    ct_t = tgt_parent.conj_table
    image_reps = {
        _canonical_rep(phi.target.arr, ct_t, tuple(look[v] for v in rep))
        for rep in src_reps
    }
    injective = len(image_reps) == len(src_reps)
    surjective = image_reps == set(tgt_set.classes)
    detail = (
        f"Rep({A.name}): source={len(src_reps)} target={tgt_set.class_count} "
        f"image={len(image_reps)}"
    )
    return injective and surjective, detail
