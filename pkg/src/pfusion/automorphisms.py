"""Automorphism groups, isomorphism and homomorphism search.

The search engine backtracks over images of a short generating
sequence.  The source group's closure chain is precomputed once per
search (BFS derivations plus multiplication-consistency edges), so each
candidate image tuple costs a linear pass over table lookups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .core import (
    DEFAULT_AUT_MAX_ORDER,
    Group,
    GroupMap,
    Subgroup,
    all_subgroups,
    centralizer,
    commutator_subgroup,
    exponent,
    factorize,
    generate,
    omega,
    _p_of,
)
from .errors import CapExceededError, GroupInvariantError, PreconditionError

_NODE_CAP = 20_000_000


def minimal_generating_sequence(G: Group) -> list[int]:
    """A short generating sequence; Burnside basis for p-groups."""
    if G.order == 1:
        return []
    fac = factorize(G.order)
    orders = G.element_orders
    if len(fac) == 1:
        p = next(iter(fac))
        powers = {G.power(x, p) for x in range(G.order)}
        frattini = commutator_subgroup(G.whole, G.whole)
        frattini = generate(G, set(frattini.members) | powers)
        cur = frattini
    else:
        cur = G.trivial
    gens: list[int] = []
    by_order = sorted(range(G.order), key=lambda x: (-int(orders[x]), x))
    while cur.order < G.order:
        x = next(e for e in by_order if e not in cur.members)
        gens.append(x)
        cur = generate(G, list(cur.members) + [x])
    return gens


def _class_sizes(G: Group) -> np.ndarray:
    n = G.order
    sizes = np.zeros(n, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    ct = G.conj_table
    for x in range(n):
        if seen[x]:
            continue
        orbit = np.unique(ct[:, x])
        sizes[orbit] = orbit.size
        seen[orbit] = True
    return sizes


@dataclass
class _Levels:
    gens: list[int]
    derivs: list[list[tuple[int, int, int]]]
    edges: list[list[tuple[int, int, int]]]
    closure_size: int


def _build_levels(src: Group, gens: list[int]) -> _Levels:
    sm = src.mul_table.tolist()
    m = src.order
    known = [False] * m
    known[0] = True
    closure = [0]
    derivs: list[list[tuple[int, int, int]]] = []
    edges: list[list[tuple[int, int, int]]] = []
    for k, g in enumerate(gens):
        dk: list[tuple[int, int, int]] = []
        ek: list[tuple[int, int, int]] = []
        start_new = len(closure)
        for e in closure[:start_new]:
            t = sm[e][g]
            if not known[t]:
                known[t] = True
                closure.append(t)
                dk.append((t, e, k))
            else:
                ek.append((e, k, t))
        i = start_new
        while i < len(closure):
            e = closure[i]
            for slot in range(k + 1):
                t = sm[e][gens[slot]]
                if not known[t]:
                    known[t] = True
                    closure.append(t)
                    dk.append((t, e, slot))
                else:
                    ek.append((e, slot, t))
            i += 1
        derivs.append(dk)
        edges.append(ek)
    return _Levels(gens, derivs, edges, len(closure))


def _search_maps(
    src: Group,
    tgt: Group,
    candidates: list[list[int]],
    levels: _Levels,
    injective: bool,
    first_only: bool = False,
    max_maps: Optional[int] = None,
) -> list[tuple[int, ...]]:
    """All maps src -> tgt extending some image choice per generator."""
    m = src.order
    tm = tgt.mul_table.tolist()
    gens = levels.gens
    d = len(gens)
    if d == 0:
        return [(0,)] if m == 1 else []
    f = [-1] * m
    f[0] = 0
    used = [False] * tgt.order
    used[0] = True
    h = [0] * d
    out: list[tuple[int, ...]] = []
    nodes = 0

    def rec(k: int) -> bool:
        nonlocal nodes
        if k == d:
            out.append(tuple(f))
            if max_maps is not None and len(out) > max_maps:
                raise CapExceededError("max_maps", max_maps)
            return first_only
        dk = levels.derivs[k]
        ek = levels.edges[k]
        for cand in candidates[k]:
            if injective and used[cand]:
                continue
            nodes += 1
            if nodes > _NODE_CAP:
                raise CapExceededError("search_nodes", _NODE_CAP)
            h[k] = cand
            assigned: list[int] = []
            ok = True
            for t, e, slot in dk:
                v = tm[f[e]][h[slot]]
                if injective:
                    if used[v]:
                        ok = False
                        break
                    used[v] = True
                f[t] = v
                assigned.append(t)
            if ok:
                for e, slot, t in ek:
                    if tm[f[e]][h[slot]] != f[t]:
                        ok = False
                        break
            if ok and rec(k + 1):
                for t in assigned:
                    if injective:
                        used[f[t]] = False
                    f[t] = -1
                return True
            for t in assigned:
                if injective:
                    used[f[t]] = False
                f[t] = -1
        return False

    rec(0)
    return out


def _aut_candidates(src: Group, tgt: Group, gens: list[int]) -> Optional[list[list[int]]]:
    """Fingerprint-filtered image candidates, or None when impossible."""
    so, to = src.element_orders, tgt.element_orders
    scs, tcs = _class_sizes(src), _class_sizes(tgt)
    src_fp = sorted(zip(so.tolist(), scs.tolist()))
    tgt_fp = sorted(zip(to.tolist(), tcs.tolist()))
    if src_fp != tgt_fp:
        return None
    cands = []
    for g in gens:
        fp = (int(so[g]), int(scs[g]))
        cands.append(
            [x for x in range(tgt.order) if (int(to[x]), int(tcs[x])) == fp]
        )
    return cands


def _automorphism_tuples(L: Group) -> list[tuple[int, ...]]:
    if L.order == 1:
        return [(0,)]
    gens = minimal_generating_sequence(L)
    cands = _aut_candidates(L, L, gens)
    levels = _build_levels(L, gens)
    return _search_maps(L, L, cands, levels, injective=True)


class AutGroup:
    """The automorphism group of a subgroup, as explicit maps."""

    def __init__(self, base: Subgroup, maps: Sequence[GroupMap], validate: bool = True):
        self.base = base
        self.maps = tuple(sorted(maps, key=GroupMap.key))
        self.pos = {int(v): i for i, v in enumerate(base.arr)}
        self.tuples = tuple(m.img for m in self.maps)
        self.tuple_set = frozenset(self.tuples)
        if validate:
            ident = tuple(int(v) for v in base.arr)
            if ident not in self.tuple_set:
                raise GroupInvariantError("automorphism set lacks the identity")
            orders = base.parent.element_orders
            for t in self.tuples:
                if sorted(orders[list(t)]) != sorted(orders[base.arr]):
                    raise GroupInvariantError("map does not preserve element orders")

    @property
    def order(self) -> int:
        return len(self.maps)

    def compose(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        """a after b, as image tuples aligned with base.arr."""
        pos = self.pos
        return tuple(a[pos[v]] for v in b)

    def identity_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.base.arr)

    def tuple_order(self, t: tuple[int, ...]) -> int:
        """Order of the map, via its cycle structure on the members."""
        pos = self.pos
        arr = self.base.arr
        seen = set()
        out = 1
        for start in arr:
            start = int(start)
            if start in seen:
                continue
            length = 0
            x = start
            while True:
                seen.add(x)
                x = t[pos[x]]
                length += 1
                if x == start:
                    break
            out = math.lcm(out, length)
        return out

    @cached_property
    def inner_tuples(self) -> frozenset[tuple[int, ...]]:
        ct = self.base.parent.conj_table
        arr = self.base.arr
        return frozenset(tuple(int(v) for v in ct[x, arr]) for x in arr)

    def is_inner(self, m: GroupMap) -> bool:
        return m.img in self.inner_tuples

    @cached_property
    def element_orbits(self) -> np.ndarray:
        """Orbit label per parent index of base members (else -1).

        The map list is closed under composition and inversion, so the
        orbit of a member is simply its image set across all maps.
        """
        labels = np.full(self.base.parent.order, -1, dtype=np.int64)
        img_matrix = np.array(self.tuples, dtype=np.int64)
        nxt = 0
        for slot, v in enumerate(self.base.arr):
            v = int(v)
            if labels[v] >= 0:
                continue
            orbit = np.unique(img_matrix[:, slot])
            labels[orbit] = nxt
            nxt += 1
        return labels

    def is_characteristic(self, H: Subgroup) -> bool:
        """H stable under every automorphism of the base."""
        if not H <= self.base:
            return False
        labs = self.element_orbits
        return all(
            _orbit_inside(labs, lab, H) for lab in {int(labs[v]) for v in H.arr}
        )

    def as_group(self, cap: int = 10_000) -> tuple[Group, list[GroupMap]]:
        """Composition table of this automorphism group.

        Returns the abstract group plus the map list aligned with its
        element indices (identity at 0).
        """
        if self.order > cap:
            raise CapExceededError("aut_as_group", cap, f"|Aut|={self.order}")
        ident = self.identity_tuple()
        ordered = [ident] + [t for t in self.tuples if t != ident]
        index = {t: i for i, t in enumerate(ordered)}
        k = len(ordered)
        table = np.zeros((k, k), dtype=np.int32)
        for i, a in enumerate(ordered):
            for j, b in enumerate(ordered):
                table[i, j] = index[self.compose(a, b)]
        by_tuple = {m.img: m for m in self.maps}
        grp = Group(table, name=f"Aut({self.base.parent.name}|{self.base.order})", validate=False)
        return grp, [by_tuple[t] for t in ordered]

    def __iter__(self):
        return iter(self.maps)

    def __repr__(self) -> str:
        return f"AutGroup(order={self.order} on subgroup of order {self.base.order})"


def _orbit_inside(labels: np.ndarray, lab: int, H: Subgroup) -> bool:
    members = np.nonzero(labels == lab)[0]
    return H.member_mask_array[members].all()


def closure_of_tuples(
    seeds: Iterable[tuple[int, ...]],
    compose: Callable[[tuple, tuple], tuple],
    cap: int = 1_000_000,
) -> set[tuple[int, ...]]:
    """Closure of a tuple set under a binary composition."""
    closed = set(seeds)
    work = list(closed)
    while work:
        a = work.pop()
        for b in list(closed):
            for c in (compose(a, b), compose(b, a)):
                if c not in closed:
                    if len(closed) >= cap:
                        raise CapExceededError("tuple_closure", cap)
                    closed.add(c)
                    work.append(c)
    return closed


def automorphism_group(P: Subgroup, max_order: int = DEFAULT_AUT_MAX_ORDER) -> AutGroup:
    """The full automorphism group of P as explicit element maps."""
    if P.order > max_order:
        raise CapExceededError("aut_max_order", max_order, f"|P|={P.order}")
    L = P.as_group()
    arr = P.arr
    tuples = _automorphism_tuples(L)
    maps = [
        GroupMap(P, P, tuple(int(arr[v]) for v in t), )
        for t in tuples
    ]
    return AutGroup(P, maps)


def isomorphism(A: Group, B: Group) -> Optional[GroupMap]:
    """One isomorphism A -> B found by generator-image search, or None."""
    if A.order != B.order:
        return None
    gens = minimal_generating_sequence(A)
    cands = _aut_candidates(A, B, gens)
    if cands is None:
        return None
    levels = _build_levels(A, gens)
    hits = _search_maps(A, B, cands, levels, injective=True, first_only=True)
    if not hits:
        return None
    return GroupMap(A.whole, B.whole, hits[0])


def homomorphisms(
    A: Group,
    B: Group | Subgroup,
    max_maps: int = 500_000,
) -> list[tuple[int, ...]]:
    """All homomorphisms A -> B as full image tuples over A's elements.

    When B is a subgroup, images are parent indices restricted to it.
    """
    if isinstance(B, Subgroup):
        tgt = B.as_group()
        back = B.arr
    else:
        tgt = B
        back = None
    gens = minimal_generating_sequence(A)
    if not gens:
        return [(0,)] if A.order == 1 else []
    so, to = A.element_orders, tgt.element_orders
    cands = [
        [x for x in range(tgt.order) if int(so[g]) % int(to[x]) == 0]
        for g in gens
    ]
    levels = _build_levels(A, gens)
    raw = _search_maps(A, tgt, cands, levels, injective=False, max_maps=max_maps)
    if back is None:
        return raw
    return [tuple(int(back[v]) for v in t) for t in raw]


# -- characteristic subgroups of small exponent -------------------------


def characteristic_subgroups(P: Subgroup, aut: Optional[AutGroup] = None) -> list[Subgroup]:
    """Subgroups of P stable under every automorphism."""
    if aut is None:
        aut = automorphism_group(P)
    return [H for H in all_subgroups(P) if aut.is_characteristic(H)]


def _quotient_by_center_elementary(C: Subgroup, p: int) -> bool:
    """C/Z(C) elementary abelian: x^p central and [C,C] central."""
    Z = C.center()
    parent = C.parent
    for x in C.arr:
        if parent.power(int(x), p) not in Z.members:
            return False
    return commutator_subgroup(C, C) <= Z


def _prime_to_p_nontrivial_tuples(aut: AutGroup, p: int) -> list[tuple[int, ...]]:
    out = []
    ident = aut.identity_tuple()
    for t in aut.tuples:
        if t == ident:
            continue
        if math.gcd(aut.tuple_order(t), p) == 1:
            out.append(t)
    return out


def _acts_trivially_on(aut: AutGroup, t: tuple[int, ...], H: Subgroup) -> bool:
    pos = aut.pos
    return all(t[pos[int(v)]] == int(v) for v in H.arr)


def critical_subgroup(P: Subgroup, aut: Optional[AutGroup] = None) -> Subgroup:
    """A Thompson critical subgroup of the p-group P.

    Characteristic C with C/Z(C) elementary abelian, [P,C] <= Z(C),
    C_P(C) = Z(C), and faithful for automorphisms of order prime to p.
    Chosen deterministically: maximal order, then least member bitset.
    """
    p = _p_of(P)
    if aut is None:
        aut = automorphism_group(P)
    primed = _prime_to_p_nontrivial_tuples(aut, p)
    best: Optional[Subgroup] = None
    for C in characteristic_subgroups(P, aut):
        Z = C.center()
        if not _quotient_by_center_elementary(C, p):
            continue
        if not commutator_subgroup(P, C) <= Z:
            continue
        if centralizer(P.parent, P, C) != Z:
            continue
        if any(_acts_trivially_on(aut, t, C) for t in primed):
            continue
        if best is None or (C.order, -C.mask) > (best.order, -best.mask):
            best = C
    if best is None:
        raise GroupInvariantError(
            "no critical subgroup found; this contradicts the critical subgroup theorem"
        )
    return best


def thompson_subgroup(P: Subgroup, aut: Optional[AutGroup] = None) -> Subgroup:
    """Small-exponent characteristic subgroup detecting prime-to-p maps.

    Omega_1 of a critical subgroup for odd p, Omega_2 for p = 2.  All
    guaranteed postconditions are re-checked: exponent dividing p
    (resp. 4), [D,P] <= Z(D), D characteristic, and faithfulness on
    automorphisms of order prime to p.
    """
    p = _p_of(P)
    if aut is None:
        aut = automorphism_group(P)
    C = critical_subgroup(P, aut)
    D = omega(C, 1 if p != 2 else 2)
    bound = p if p != 2 else 4
    if bound % exponent(D) != 0:
        raise GroupInvariantError(f"detection subgroup exponent {exponent(D)} exceeds {bound}")
    if not aut.is_characteristic(D):
        raise GroupInvariantError("detection subgroup is not characteristic")
    if not commutator_subgroup(D, P) <= D.center():
        raise GroupInvariantError("[D,P] is not central in D")
    for t in _prime_to_p_nontrivial_tuples(aut, p):
        if _acts_trivially_on(aut, t, D):
            raise GroupInvariantError("a prime-to-p automorphism is trivial on D")
    return D


def maximal_abelian_in(D: Subgroup) -> Subgroup:
    """An inclusion-maximal abelian subgroup, deterministically chosen.

    Tie-break: largest order, then least member bitset.
    """
    abelians = [A for A in all_subgroups(D) if A.is_abelian()]
    maximal = [
        A
        for A in abelians
        if not any(A < B for B in abelians)
    ]
    return max(maximal, key=lambda A: (A.order, -A.mask))


def verify_p2_identity(P: Subgroup) -> bool:
    """(xy)^4 = x^4 y^4 on a 2-group with elementary abelian P/Z(P).

    The precondition (2-group, central quotient elementary abelian) is
    itself checked and raises; a False return means the identity failed,
    which would contradict the guarantee.
    """
    if P.order > 1 and _p_of(P) != 2:
        raise PreconditionError("not a 2-group")
    Z = P.center()
    parent = P.parent
    for x in P.arr:
        if parent.power(int(x), 2) not in Z.members:
            raise PreconditionError("central quotient is not elementary abelian")
    if not commutator_subgroup(P, P) <= Z:
        raise PreconditionError("central quotient is not abelian")
    arr = P.arr
    mt = parent.mul_table
    fourth = np.empty(parent.order, dtype=np.int32)
    for x in arr:
        fourth[int(x)] = parent.power(int(x), 4)
    prods = mt[np.ix_(arr, arr)]
    lhs = fourth[prods]
    rhs = mt[fourth[arr][:, None], fourth[arr][None, :]]
    return bool((lhs == rhs).all())
