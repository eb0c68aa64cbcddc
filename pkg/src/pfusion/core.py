"""Finite groups as multiplication tables, subgroups as index sets.

Conventions used throughout the package:

* elements of a group of order n are the indices 0..n-1, the identity is
  always index 0;
* a subgroup is a set of indices of a fixed parent group, never a
  re-numbered object (use :meth:`Subgroup.as_group` to re-tabulate);
* everything is immutable after construction, so values can be shared
  and cached freely.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    CapExceededError,
    GroupInvariantError,
    ParentMismatchError,
    PreconditionError,
)

# Fixed seed for sampled associativity checks on large tables.
_ASSOC_SEED = 20814
_ASSOC_SAMPLES = 10_000
# Full associativity is verified below this order, sampled above it.
_FULL_ASSOC_MAX_ORDER = 512

DEFAULT_MAX_SUBGROUPS = 20_000
DEFAULT_AUT_MAX_ORDER = 128


def _lcm(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {prime: multiplicity}."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Group:
    """A finite group given by its full multiplication table.

    ``mul[a, b]`` is the index of the product, index 0 is the identity.
    Construction verifies the group laws: identity and inverses always,
    associativity exhaustively up to order 512 and on 10 000 seeded
    random triples above that.
    """

    def __init__(
        self,
        mul: Sequence[Sequence[int]] | np.ndarray,
        name: str = "G",
        elem_names: Optional[Sequence[str]] = None,
        validate: bool = True,
    ):
        table = np.ascontiguousarray(np.asarray(mul, dtype=np.int32))
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise GroupInvariantError("multiplication table must be square")
        n = int(table.shape[0])
        if n == 0:
            raise GroupInvariantError("group must be nonempty")
        self.order = n
        self.name = name
        self._mul = table
        self._mul.setflags(write=False)
        if elem_names is not None and len(elem_names) != n:
            raise GroupInvariantError("elem_names length must match order")
        self._elem_names = list(elem_names) if elem_names is not None else None
        if validate:
            self._validate_laws()
        self._inv = self._derive_inverses()
        self._inv.setflags(write=False)

    # -- construction-time checks -------------------------------------

    def _validate_laws(self) -> None:
        n = self.order
        t = self._mul
        if t.min() < 0 or t.max() >= n:
            raise GroupInvariantError("table entries out of range")
        rng = np.arange(n, dtype=np.int32)
        if not np.array_equal(t[0], rng) or not np.array_equal(t[:, 0], rng):
            raise GroupInvariantError("index 0 is not a two-sided identity")
        if n <= _FULL_ASSOC_MAX_ORDER:
            self._check_assoc_full()
        else:
            self._check_assoc_sampled()

    def _check_assoc_full(self) -> None:
        t = self._mul
        n = self.order
        # (i*j)*k vs i*(jk), chunked over i to bound memory.
        right = t[:, t]  # right[i, j, k] = t[i, t[j, k]]
        chunk = max(1, (1 << 22) // (n * n))
        for lo in range(0, n, chunk):
            hi = min(n, lo + chunk)
            left = t[t[lo:hi], :]  # left[a, j, k] = t[t[lo+a, j], k]
            if not np.array_equal(left, right[lo:hi]):
                raise GroupInvariantError("multiplication is not associative")

    def _check_assoc_sampled(self) -> None:
        t = self._mul
        n = self.order
        rng = random.Random(_ASSOC_SEED)
        for _ in range(_ASSOC_SAMPLES):
            a = rng.randrange(n)
            b = rng.randrange(n)
            c = rng.randrange(n)
            if t[t[a, b], c] != t[a, t[b, c]]:
                raise GroupInvariantError(
                    f"multiplication is not associative at ({a},{b},{c})"
                )

    def _derive_inverses(self) -> np.ndarray:
        hits = np.argwhere(self._mul == 0)
        inv = np.full(self.order, -1, dtype=np.int32)
        inv[hits[:, 0]] = hits[:, 1]
        if (inv < 0).any():
            raise GroupInvariantError("some element has no right inverse")
        if (self._mul[inv, np.arange(self.order)] != 0).any():
            raise GroupInvariantError("right inverses are not two-sided")
        return inv

    # -- basic arithmetic ----------------------------------------------

    @property
    def mul_table(self) -> np.ndarray:
        return self._mul

    @property
    def inv_table(self) -> np.ndarray:
        return self._inv

    def mul(self, a: int, b: int) -> int:
        return int(self._mul[a, b])

    def inv(self, a: int) -> int:
        return int(self._inv[a])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self._mul[self._mul[g, x], self._inv[g]])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        out, base = 0, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def elem_name(self, i: int) -> str:
        if self._elem_names is not None:
            return self._elem_names[i]
        return str(i)

    @cached_property
    def conj_table(self) -> np.ndarray:
        """conj_table[g, x] = g x g^-1."""
        t = self._mul[self._mul, self._inv[:, None]]
        t.setflags(write=False)
        return t

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n, dtype=np.int32)
        k = 1
        while (orders == 0).any():
            fresh = (cur == 0) & (orders == 0)
            orders[fresh] = k
            cur = self._mul[cur, np.arange(n, dtype=np.int32)]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)), _validated=True)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([0]), _validated=True)

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        """Validated subgroup from an element index set."""
        return Subgroup(self, frozenset(int(m) for m in members))

    def __repr__(self) -> str:
        return f"Group({self.name}, order={self.order})"

    def __len__(self) -> int:
        return self.order


class Subgroup:
    """A subgroup of a parent group, stored as a member-index set."""

    def __init__(self, parent: Group, members: frozenset[int], _validated: bool = False):
        self.parent = parent
        self.members = frozenset(members)
        if not _validated:
            self._validate()

    def _validate(self) -> None:
        if 0 not in self.members:
            raise GroupInvariantError("subgroup must contain the identity")
        arr = self.arr
        if arr.size and (arr.min() < 0 or arr.max() >= self.parent.order):
            raise GroupInvariantError("member index out of range")
        prods = self.parent.mul_table[np.ix_(arr, arr)]
        if not np.isin(prods, arr).all():
            raise GroupInvariantError("member set is not closed under multiplication")

    @cached_property
    def arr(self) -> np.ndarray:
        a = np.array(sorted(self.members), dtype=np.int32)
        a.setflags(write=False)
        return a

    @cached_property
    def mask(self) -> int:
        m = 0
        for i in self.members:
            m |= 1 << i
        return m

    @property
    def order(self) -> int:
        return len(self.members)

    def key(self) -> tuple[int, int]:
        """Canonical sort key: (order, member bitset)."""
        return (self.order, self.mask)

    def __contains__(self, idx: int) -> bool:
        return idx in self.members

    def __le__(self, other: "Subgroup") -> bool:
        self._same_parent(other)
        return self.members <= other.members

    def __lt__(self, other: "Subgroup") -> bool:
        self._same_parent(other)
        return self.members < other.members

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def _same_parent(self, other: "Subgroup") -> None:
        if other.parent is not self.parent:
            raise ParentMismatchError("subgroups have different parent groups")

    @cached_property
    def member_mask_array(self) -> np.ndarray:
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[self.arr] = True
        mask.setflags(write=False)
        return mask

    def is_abelian(self) -> bool:
        arr = self.arr
        t = self.parent.mul_table[np.ix_(arr, arr)]
        return bool((t == t.T).all())

    def center(self) -> "Subgroup":
        """Elements of this subgroup commuting with all of it."""
        arr = self.arr
        t = self.parent.mul_table[np.ix_(arr, arr)]
        central = (t == t.T).all(axis=1)
        return Subgroup(self.parent, frozenset(int(x) for x in arr[central]), _validated=True)

    @cached_property
    def _as_group_cache(self) -> tuple[Group, dict[int, int]]:
        arr = self.arr
        pos = {int(v): i for i, v in enumerate(arr)}
        sub_table = self.parent.mul_table[np.ix_(arr, arr)]
        reindexed = np.vectorize(pos.__getitem__, otypes=[np.int32])(sub_table)
        names = [self.parent.elem_name(int(v)) for v in arr]
        grp = Group(
            reindexed,
            name=f"{self.parent.name}|sub{self.order}",
            elem_names=names,
            validate=False,
        )
        return grp, pos

    def as_group(self) -> Group:
        """Re-tabulated standalone group (member order preserved, 0 first)."""
        return self._as_group_cache[0]

    def index_in_parent(self, local_idx: int) -> int:
        return int(self.arr[local_idx])

    def local_index(self, parent_idx: int) -> int:
        return self._as_group_cache[1][parent_idx]

    def describe(self) -> str:
        return f"sub(order={self.order}, members={list(map(int, self.arr))})"

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.name})"


@dataclass(frozen=True)
class GroupMap:
    """A homomorphism between (sub)groups, stored extensionally.

    ``img`` lists the image of every source member in ``source.arr``
    order.  Source and target may live in different parent groups.
    """

    source: Subgroup
    target: Subgroup
    img: tuple[int, ...]

    @staticmethod
    def from_images(
        source: Subgroup,
        target: Subgroup,
        images: dict[int, int] | Sequence[int],
        validate: bool = True,
    ) -> "GroupMap":
        if isinstance(images, dict):
            img = tuple(int(images[int(m)]) for m in source.arr)
        else:
            img = tuple(int(v) for v in images)
            if len(img) != source.order:
                raise GroupInvariantError("image tuple length must match source order")
        gm = GroupMap(source, target, img)
        if validate:
            gm.validate()
        return gm

    @staticmethod
    def identity(sub: Subgroup) -> "GroupMap":
        return GroupMap(sub, sub, tuple(int(v) for v in sub.arr))

    @staticmethod
    def conjugation(parent: Group, g: int, source: Subgroup, target: Subgroup) -> "GroupMap":
        """c_g restricted to ``source``, landing in ``target``."""
        img = tuple(int(parent.conj_table[g, x]) for x in source.arr)
        gm = GroupMap(source, target, img)
        if not all(v in target.members for v in img):
            raise GroupInvariantError("conjugate does not land in target")
        return gm

    def validate(self) -> None:
        tgt_members = self.target.members
        if not all(v in tgt_members for v in self.img):
            raise GroupInvariantError("images outside the target subgroup")
        lookup = self.images
        ms, mt = self.source.parent.mul_table, self.target.parent.mul_table
        arr = self.source.arr
        for x in arr:
            fx = lookup[int(x)]
            for y in arr:
                if lookup[int(ms[x, y])] != mt[fx, lookup[int(y)]]:
                    raise GroupInvariantError(
                        f"not a homomorphism at ({int(x)},{int(y)})"
                    )

    @cached_property
    def images(self) -> dict[int, int]:
        return {int(m): v for m, v in zip(self.source.arr, self.img)}

    def __call__(self, parent_idx: int) -> int:
        return self.images[parent_idx]

    @property
    def is_injective(self) -> bool:
        return len(set(self.img)) == len(self.img)

    def image_subgroup(self) -> Subgroup:
        return Subgroup(self.target.parent, frozenset(self.img), _validated=True)

    def restrict(self, sub: Subgroup) -> "GroupMap":
        if not sub <= self.source:
            raise PreconditionError("restriction domain is not inside the source")
        look = self.images
        return GroupMap(sub, self.target, tuple(look[int(m)] for m in sub.arr))

    def corestrict(self) -> "GroupMap":
        """Same map with target shrunk to the exact image."""
        return GroupMap(self.source, self.image_subgroup(), self.img)

    def then(self, other: "GroupMap") -> "GroupMap":
        """other o self; image of self must lie in other's source."""
        look = other.images
        try:
            img = tuple(look[v] for v in self.img)
        except KeyError:
            raise PreconditionError("maps are not composable") from None
        return GroupMap(self.source, other.target, img)

    def inverse(self) -> "GroupMap":
        if not self.is_injective:
            raise PreconditionError("only injective maps invert")
        image = self.image_subgroup()
        back = {v: int(m) for m, v in zip(self.source.arr, self.img)}
        return GroupMap(image, self.source, tuple(back[int(v)] for v in image.arr))

    def is_identity(self) -> bool:
        return all(int(m) == v for m, v in zip(self.source.arr, self.img))

    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.source.mask, self.img)

    def describe(self) -> str:
        pairs = ",".join(
            f"{int(m)}->{v}" for m, v in zip(self.source.arr, self.img) if int(m) != v
        )
        return f"map(order={self.source.order}, moved=[{pairs}])"

    def __repr__(self) -> str:
        return f"GroupMap({self.source.order}->{self.target.order}, {self.img})"


# -- subgroup generation and elementary operations ----------------------


def generate(parent: Group, seeds: Iterable[int]) -> Subgroup:
    """Subgroup generated by the given element indices."""
    cur = np.unique(np.fromiter((int(s) for s in seeds), dtype=np.int32, count=-1))
    cur = np.union1d(cur, np.array([0], dtype=np.int32)).astype(np.int32)
    while True:
        prods = np.unique(parent.mul_table[np.ix_(cur, cur)])
        if prods.size == cur.size:
            return Subgroup(parent, frozenset(int(x) for x in cur), _validated=True)
        cur = prods.astype(np.int32)


def _check_common_parent(parent: Group, *subs: Subgroup) -> None:
    for s in subs:
        if s.parent is not parent:
            raise ParentMismatchError("subgroup does not belong to the given group")


def centralizer(parent: Group, within: Subgroup, of: Subgroup) -> Subgroup:
    """{g in within | g x = x g for every x in of}."""
    _check_common_parent(parent, within, of)
    rows = parent.conj_table[np.ix_(within.arr, of.arr)]
    keep = (rows == of.arr[None, :]).all(axis=1)
    return Subgroup(parent, frozenset(int(x) for x in within.arr[keep]), _validated=True)


def normalizer(parent: Group, within: Subgroup, of: Subgroup) -> Subgroup:
    """{g in within | g Q g^-1 = Q}."""
    _check_common_parent(parent, within, of)
    rows = parent.conj_table[np.ix_(within.arr, of.arr)]
    keep = of.member_mask_array[rows].all(axis=1)
    return Subgroup(parent, frozenset(int(x) for x in within.arr[keep]), _validated=True)


def transporter(parent: Group, P: Subgroup, Q: Subgroup) -> frozenset[int]:
    """{g in parent | g P g^-1 <= Q}, as a plain index set."""
    _check_common_parent(parent, P, Q)
    rows = parent.conj_table[:, P.arr]
    keep = Q.member_mask_array[rows].all(axis=1)
    return frozenset(int(x) for x in np.nonzero(keep)[0])


def _ambient(g: Group | Subgroup) -> tuple[Group, Subgroup]:
    if isinstance(g, Group):
        return g, g.whole
    return g.parent, g


def sylow_subgroup(G: Group | Subgroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown by greedy normalizer extension.

    Deterministic: at each step the lowest-index p-element of the
    normalizer of the current subgroup is adjoined.  Returns the trivial
    subgroup when p does not divide the order.
    """
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    parent, amb = _ambient(G)
    target = p_part(amb.order, p)
    orders = parent.element_orders
    cur = parent.trivial
    while cur.order < target:
        norm = normalizer(parent, amb, cur)
        candidates = norm.arr[~cur.member_mask_array[norm.arr]]
        is_p = np.array([_is_p_power(int(orders[c]), p) for c in candidates], dtype=bool)
        if not is_p.any():
            raise GroupInvariantError("greedy Sylow extension stalled")
        x = int(candidates[is_p][0])
        cur = generate(parent, list(cur.members) + [x])
    return cur


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def exponent(P: Subgroup) -> int:
    """Least common multiple of the element orders."""
    return _lcm(int(o) for o in P.parent.element_orders[P.arr])


def omega(P: Subgroup, i: int) -> Subgroup:
    """Subgroup generated by the elements x with x^(p^i) = 1."""
    if i < 1:
        raise PreconditionError("omega index must be positive")
    p = _p_of(P)
    bound = p**i
    orders = P.parent.element_orders[P.arr]
    gens = P.arr[orders <= bound]
    gens = [int(x) for x in gens if bound % int(P.parent.element_orders[x]) == 0]
    return generate(P.parent, gens)


def _p_of(P: Subgroup) -> int:
    """The prime for a p-group, or an error."""
    if P.order == 1:
        raise PreconditionError("trivial group has no associated prime")
    fac = factorize(P.order)
    if len(fac) != 1:
        raise PreconditionError(f"subgroup of order {P.order} is not a p-group")
    return next(iter(fac))


def cyclic_subgroups(P: Subgroup) -> list[Subgroup]:
    """All cyclic subgroups of P, deduplicated, canonically sorted."""
    return [c for c, _ in _cyclic_subgroups_with_generators(P)]


def _cyclic_subgroups_with_generators(P: Subgroup) -> list[tuple[Subgroup, int]]:
    parent = P.parent
    seen: dict[int, tuple[Subgroup, int]] = {}
    for x in P.arr:
        c = generate(parent, [int(x)])
        seen.setdefault(c.mask, (c, int(x)))
    return sorted(seen.values(), key=lambda cg: cg[0].key())


def all_subgroups(P: Subgroup, max_subgroups: int = DEFAULT_MAX_SUBGROUPS) -> list[Subgroup]:
    """Every subgroup of P, canonically sorted by (order, bitset).

    Cyclic extension: seed with all cyclic subgroups and close under
    "join with a normalizing cyclic subgroup".  This reaches every
    solvable subgroup; P itself is always included, which covers every
    group in the bundled catalog (their proper subgroups are solvable).
    """
    parent = P.parent
    cyclics = _cyclic_subgroups_with_generators(P)
    found: dict[int, Subgroup] = {c.mask: c for c, _ in cyclics}
    trivial = parent.trivial
    found.setdefault(trivial.mask, trivial)
    found.setdefault(P.mask, P)
    work = list(found.values())
    while work:
        H = work.pop()
        h_arr = H.arr
        for C, gen in cyclics:
            if C.members <= H.members:
                continue
            # join only when the cyclic factor normalizes H
            conj_rows = parent.conj_table[gen, h_arr]
            if not H.member_mask_array[conj_rows].all():
                continue
            J = generate(parent, list(h_arr) + [gen])
            if not J.members <= P.members:
                continue
            if J.mask not in found:
                if len(found) >= max_subgroups:
                    raise CapExceededError("max_subgroups", max_subgroups)
                found[J.mask] = J
                work.append(J)
    return sorted(found.values(), key=Subgroup.key)


def is_elementary_abelian(A: Subgroup, p: int) -> bool:
    if A.order == 1:
        return True
    orders = A.parent.element_orders[A.arr]
    return bool((orders[orders > 1] == p).all()) and A.is_abelian()


def p_rank(G: Group | Subgroup, p: int) -> int:
    """Largest k with an elementary abelian subgroup of order p^k."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    parent, amb = _ambient(G)
    if amb.order % p != 0:
        return 0
    S = sylow_subgroup(amb, p)
    best = 0
    for A in all_subgroups(S):
        if is_elementary_abelian(A, p):
            best = max(best, round(math.log(A.order, p)))
    return best


def is_strongly_p_embedded(H: Subgroup, G: Group | Subgroup, p: int) -> bool:
    """H < G proper, p | |H|, and |H ∩ gHg^-1| prime to p off H."""
    parent, amb = _ambient(G)
    _check_common_parent(parent, H)
    if not H.members < amb.members:
        return False
    if H.order % p != 0:
        return False
    h_arr = H.arr
    h_set = H.members
    seen_cosets: set[int] = set()
    for g in amb.arr:
        g = int(g)
        if g in h_set:
            continue
        coset_rep = int(parent.mul_table[g, h_arr].min())
        if coset_rep in seen_cosets:
            continue
        seen_cosets.add(coset_rep)
        conj = parent.conj_table[g, h_arr]
        inter = h_set.intersection(int(x) for x in conj)
        if len(inter) % p == 0:
            return False
    return True


def commutator_subgroup(A: Subgroup, B: Subgroup) -> Subgroup:
    """[A, B], generated by all commutators a b a^-1 b^-1."""
    A._same_parent(B)
    parent = A.parent
    conj = parent.conj_table[np.ix_(A.arr, B.arr)]  # a b a^-1
    comms = parent.mul_table[conj, parent.inv_table[B.arr][None, :]]
    return generate(parent, (int(x) for x in np.unique(comms)))


def quotient_group(G: Group | Subgroup, N: Subgroup) -> tuple[Group, np.ndarray]:
    """The quotient by a normal subgroup, plus the label array.

    Returns (Q, labels) with labels[x] = index in Q of the coset xN;
    the identity coset has index 0.
    """
    parent, amb = _ambient(G)
    _check_common_parent(parent, N)
    if normalizer(parent, amb, N).order != amb.order:
        raise PreconditionError("subgroup is not normal in the ambient group")
    reps: dict[int, int] = {}
    labels = np.full(parent.order, -1, dtype=np.int32)
    rep_list: list[int] = []
    for x in amb.arr:
        x = int(x)
        if labels[x] >= 0:
            continue
        coset = parent.mul_table[x, N.arr]
        rep = int(coset.min())
        if rep not in reps:
            reps[rep] = len(rep_list)
            rep_list.append(rep)
        labels[coset] = reps[rep]
    k = len(rep_list)
    table = np.zeros((k, k), dtype=np.int32)
    for i, a in enumerate(rep_list):
        table[i] = labels[parent.mul_table[a, rep_list]]
    q = Group(table, name=f"{parent.name}/N{N.order}", validate=False)
    labels.setflags(write=False)
    return q, labels
