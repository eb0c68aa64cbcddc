"""Deterministic constructors for the bundled group corpus.

Every constructor numbers elements structurally: the identity gets
index 0 and the remaining elements follow in lexicographic order of
their structural tuples, so identical expressions rebuild identical
tables byte for byte.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .core import Group, Subgroup, factorize, quotient_group, sylow_subgroup
from .errors import ExprParseError, CapExceededError, GroupInvariantError, PreconditionError

DEFAULT_MAX_BUILD_ORDER = 1_000
GN_MAX_BUILD_ORDER = 1_200


# -- generic table assembly ---------------------------------------------


def _group_from_elements(elements, mult: Callable, name: str, namer=None) -> Group:
    """Tabulate a group from hashable element values and a product rule.

    Elements are sorted lexicographically with the identity hoisted to
    index 0; the identity is found as the unique two-sided unit.
    """
    elems = sorted(elements)
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    table = np.zeros((n, n), dtype=np.int32)
    for i, a in enumerate(elems):
        row = table[i]
        for j, b in enumerate(elems):
            row[j] = index[mult(a, b)]
    ident = None
    for i in range(n):
        if (table[i] == np.arange(n)).all() and (table[:, i] == np.arange(n)).all():
            ident = i
            break
    if ident is None:
        raise GroupInvariantError("constructed table has no identity")
    if ident != 0:
        perm = [ident] + [i for i in range(n) if i != ident]
        inv_perm = np.argsort(perm)
        table = inv_perm[table[np.ix_(perm, perm)]]
        elems = [elems[i] for i in perm]
    names = [namer(e) for e in elems] if namer else [repr(e) for e in elems]
    grp = Group(table, name=name, elem_names=names)
    grp._structural_elements = list(elems)  # index -> structural value
    return grp


# -- expression tree -----------------------------------------------------


@dataclass(frozen=True)
class GroupExpr:
    """A constructor-tree node; ``args`` holds ints, exprs or actions."""

    head: str
    args: tuple = ()

    def text(self) -> str:
        if not self.args:
            return self.head
        parts = []
        for a in self.args:
            if isinstance(a, GroupExpr):
                parts.append(a.text())
            elif isinstance(a, tuple):
                parts.append("action=" + _action_text(a))
            else:
                parts.append(str(a))
        return f"{self.head}({','.join(parts)})"


def _action_text(action: tuple) -> str:
    if action and isinstance(action[0], tuple):
        return "[" + ",".join("[" + ",".join(map(str, p)) + "]" for p in action) + "]"
    return "[" + ",".join(map(str, action)) + "]"


_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|[(),\[\]=])")


def parse_expr(text: str) -> GroupExpr:
    """Parse the textual constructor grammar, e.g. ``direct(cyclic(2),sl23)``."""
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExprParseError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    idx = 0

    def peek() -> Optional[str]:
        return tokens[idx][0] if idx < len(tokens) else None

    def take(expected: Optional[str] = None) -> str:
        nonlocal idx
        if idx >= len(tokens):
            raise ExprParseError("unexpected end of expression", len(text))
        tok, at = tokens[idx]
        if expected is not None and tok != expected:
            raise ExprParseError(f"expected {expected!r}, found {tok!r}", at)
        idx += 1
        return tok

    def parse_int_list() -> tuple:
        take("[")
        vals: list = []
        if peek() == "[":
            while True:
                vals.append(parse_int_list())
                if peek() == ",":
                    take(",")
                    continue
                break
        else:
            while peek() != "]":
                vals.append(int(take()))
                if peek() == ",":
                    take(",")
        take("]")
        return tuple(vals)

    def parse_node() -> GroupExpr:
        head = take()
        if not head[0].isalpha():
            raise ExprParseError(f"expected a constructor name, found {head!r}")
        if peek() != "(":
            return GroupExpr(head)
        take("(")
        args: list = []
        while peek() != ")":
            tok = peek()
            if tok == "action":
                take()
                take("=")
                args.append(parse_int_list())
            elif tok == "[":
                args.append(parse_int_list())
            elif tok is not None and tok.isdigit():
                args.append(int(take()))
            else:
                args.append(parse_node())
            if peek() == ",":
                take(",")
        take(")")
        return GroupExpr(head, tuple(args))

    node = parse_node()
    if idx != len(tokens):
        raise ExprParseError(f"trailing input {tokens[idx][0]!r}", tokens[idx][1])
    return node


# -- concrete families ----------------------------------------------------


def cyclic(n: int) -> Group:
    if n < 1:
        raise PreconditionError("cyclic order must be positive")
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return Group(table.astype(np.int32), name=f"C{n}", elem_names=[str(i) for i in range(n)])


def dihedral(n: int) -> Group:
    """Dihedral group of order 2n (symmetries of an n-gon)."""
    if n < 1:
        raise PreconditionError("dihedral parameter must be positive")

    def mult(a, b):
        r1, s1 = a
        r2, s2 = b
        # (r^a s^e)(r^b s^f): s r = r^-1 s
        if s1 == 0:
            return ((r1 + r2) % n, s2)
        return ((r1 - r2) % n, (s1 + s2) % 2)

    elems = [(r, s) for r in range(n) for s in range(2)]
    return _group_from_elements(elems, mult, name=f"D{2*n}")


_Q8_NAMES = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
# quaternion products in the element order above
_Q8_TABLE = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 1, 0, 6, 7, 5, 4],
    [3, 2, 0, 1, 7, 6, 4, 5],
    [4, 5, 7, 6, 1, 0, 2, 3],
    [5, 4, 6, 7, 0, 1, 3, 2],
    [6, 7, 4, 5, 3, 2, 1, 0],
    [7, 6, 5, 4, 2, 3, 0, 1],
]


def quaternion8() -> Group:
    return Group(_Q8_TABLE, name="Q8", elem_names=list(_Q8_NAMES))


def symmetric(n: int) -> Group:
    if n < 1 or n > 6:
        raise PreconditionError("symmetric(n) supported for 1 <= n <= 6")
    perms = sorted(itertools.permutations(range(n)))

    def mult(a, b):
        return tuple(a[b[i]] for i in range(n))

    return _group_from_elements(perms, mult, name=f"S{n}")


def alternating(n: int) -> Group:
    if n < 1 or n > 6:
        raise PreconditionError("alternating(n) supported for 1 <= n <= 6")

    def sign(p) -> int:
        s = 1
        seen = [False] * len(p)
        for i in range(len(p)):
            if seen[i]:
                continue
            ln = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                ln += 1
            if ln % 2 == 0:
                s = -s
        return s

    perms = [p for p in itertools.permutations(range(n)) if sign(p) == 1]

    def mult(a, b):
        return tuple(a[b[i]] for i in range(len(a)))

    return _group_from_elements(sorted(perms), mult, name=f"A{n}")


def elementary_abelian(p: int, k: int) -> Group:
    if k < 1:
        raise PreconditionError("rank must be positive")
    vectors = list(itertools.product(range(p), repeat=k))

    def mult(a, b):
        return tuple((x + y) % p for x, y in zip(a, b))

    return _group_from_elements(vectors, mult, name=f"E{p}^{k}")


def extraspecial_plus(p: int) -> Group:
    """p^(1+2) of exponent p for odd p (Heisenberg group mod p)."""
    if p == 2:
        raise PreconditionError("use dihedral(4) for the 2^(1+2) plus type")

    def mult(a, b):
        a1, a2, a3 = a
        b1, b2, b3 = b
        return ((a1 + b1) % p, (a2 + b2) % p, (a3 + b3 + a1 * b2) % p)

    triples = list(itertools.product(range(p), repeat=3))
    return _group_from_elements(triples, mult, name=f"ES+{p}")


def sl23() -> Group:
    """SL(2,3): 2x2 determinant-1 matrices over F_3."""
    mats = [
        (a, b, c, d)
        for a, b, c, d in itertools.product(range(3), repeat=4)
        if (a * d - b * c) % 3 == 1
    ]

    def mult(m1, m2):
        a, b, c, d = m1
        e, f, g, h = m2
        return (
            (a * e + b * g) % 3,
            (a * f + b * h) % 3,
            (c * e + d * g) % 3,
            (c * f + d * h) % 3,
        )

    return _group_from_elements(mats, mult, name="SL(2,3)")


def direct(A: Group, B: Group, name: Optional[str] = None) -> Group:
    """Direct product with tuple-lexicographic numbering (A major)."""
    na, nb = A.order, B.order
    ta = A.mul_table.astype(np.int64)
    tb = B.mul_table.astype(np.int64)
    table = (
        ta[:, None, :, None] * nb + tb[None, :, None, :]
    ).reshape(na * nb, na * nb)
    names = [
        f"({A.elem_name(a)},{B.elem_name(b)})" for a in range(na) for b in range(nb)
    ]
    return Group(
        table.astype(np.int32),
        name=name or f"{A.name}x{B.name}",
        elem_names=names,
        validate=False,
    )


def semidirect(base: Group, actor: Group, action: Sequence[Sequence[int]],
               name: Optional[str] = None) -> Group:
    """base ⋊ actor for a homomorphism actor -> Aut(base).

    ``action[a]`` is the image permutation of base indices under actor
    element a.  Validated: each permutation is an automorphism of base
    and the assignment is itself a homomorphism.  Elements are (b, a)
    pairs with (b1,a1)(b2,a2) = (b1 * a1(b2), a1*a2).
    """
    nb, na = base.order, actor.order
    act = np.asarray(action, dtype=np.int32)
    if act.shape != (na, nb):
        raise GroupInvariantError(
            f"action must map each of {na} actor elements to a permutation of {nb} base elements"
        )
    tb, ta_ = base.mul_table, actor.mul_table
    for a in range(na):
        perm = act[a]
        if sorted(perm.tolist()) != list(range(nb)):
            raise GroupInvariantError(f"action of actor element {a} is not a permutation")
        if not np.array_equal(perm[tb], tb[np.ix_(perm, perm)]):
            raise GroupInvariantError(f"action of actor element {a} is not an automorphism")
    for a1 in range(na):
        for a2 in range(na):
            if not np.array_equal(act[ta_[a1, a2]], act[a1][act[a2]]):
                raise GroupInvariantError("action is not a homomorphism into Aut(base)")

    def mult(x, y):
        b1, a1 = x
        b2, a2 = y
        return (int(tb[b1, act[a1][b2]]), int(ta_[a1, a2]))

    elems = [(b, a) for b in range(nb) for a in range(na)]
    return _group_from_elements(
        elems,
        mult,
        name=name or f"{base.name}:{actor.name}",
        namer=lambda e: f"({base.elem_name(e[0])},{actor.elem_name(e[1])})",
    )


def cyclic_action_from_generator(base: Group, actor_order: int, gen_perm: Sequence[int]) -> list[list[int]]:
    """Expand a single automorphism into an action of a cyclic actor."""
    perm = list(map(int, gen_perm))
    n = base.order
    out = [list(range(n))]
    cur = list(range(n))
    for _ in range(actor_order - 1):
        cur = [perm[c] for c in cur]
        out.append(list(cur))
    if [perm[c] for c in cur] != list(range(n)):
        raise GroupInvariantError("generator permutation order does not divide actor order")
    return out


# -- finite fields for the affine families --------------------------------


class _FiniteField:
    """F_{p^k} as polynomials modulo a fixed irreducible.

    Elements are coefficient tuples (c_0, ..., c_{k-1}), constant term
    first; the element order used everywhere is lexicographic in these
    tuples.
    """

    # fixed irreducibles: x^2 - x - 1 over F_3, x^3 + x + 1 over F_2
    _IRREDUCIBLE = {9: (3, 2, (1, 1)), 8: (2, 3, (1, 1, 0))}

    def __init__(self, q: int):
        if q not in self._IRREDUCIBLE:
            raise PreconditionError(f"finite field of order {q} is not bundled")
        self.q = q
        self.p, self.k, self.reduction = self._IRREDUCIBLE[q]
        self.elements = sorted(itertools.product(range(self.p), repeat=self.k))
        self.zero = (0,) * self.k
        self.one = (1,) + (0,) * (self.k - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce: x^k = reduction polynomial
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j, r in enumerate(self.reduction):
                    prod[d - k + j] = (prod[d - k + j] + c * r) % p
        return tuple(prod[:k])

    def frobenius(self, a, times: int = 1):
        out = a
        for _ in range(times % self.k):
            out = self._pow(out, self.p)
        return out

    def _pow(self, a, e: int):
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def units(self):
        return [e for e in self.elements if e != self.zero]


def affine_frobenius(q: int) -> Group:
    """The Frobenius group F_q ⋊ F_q^x of affine maps x -> u x + a."""
    F = _FiniteField(q)

    def mult(m1, m2):
        a1, u1 = m1
        a2, u2 = m2
        # compose x -> u1(u2 x + a2) + a1
        return (F.add(a1, F.mul(u1, a2)), F.mul(u1, u2))

    elems = [(a, u) for a in F.elements for u in F.units()]
    return _group_from_elements(elems, mult, name=f"AGL(1,{q})")


def affine_semilinear(q: int) -> Group:
    """F_q ⋊ F_q^x extended by the full Galois group of F_q."""
    F = _FiniteField(q)
    k = F.k

    def mult(m1, m2):
        a1, u1, f1 = m1
        a2, u2, f2 = m2
        # compose x -> u1 phi^f1(u2 phi^f2(x) + a2) + a1
        return (
            F.add(a1, F.mul(u1, F.frobenius(a2, f1))),
            F.mul(u1, F.frobenius(u2, f1)),
            (f1 + f2) % k,
        )

    elems = [(a, u, f) for a in F.elements for u in F.units() for f in range(k)]
    return _group_from_elements(elems, mult, name=f"AGammaL(1,{q})")


# -- builder over expression trees ----------------------------------------


_SIMPLE_BUILDERS: dict[str, Callable] = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "quaternion8": quaternion8,
    "symmetric": symmetric,
    "alternating": alternating,
    "elementary_abelian": elementary_abelian,
    "extraspecial_plus": extraspecial_plus,
    "sl23": sl23,
    "affine_frobenius": affine_frobenius,
    "affine_semilinear": affine_semilinear,
}


def _expr_order(expr: GroupExpr) -> Optional[int]:
    """Predicted order, used for the build cap; None when unknown."""
    h, a = expr.head, expr.args
    try:
        if h == "cyclic":
            return a[0]
        if h == "dihedral":
            return 2 * a[0]
        if h == "quaternion8":
            return 8
        if h == "symmetric":
            return math.factorial(a[0])
        if h == "alternating":
            return max(1, math.factorial(a[0]) // 2)
        if h == "elementary_abelian":
            return a[0] ** a[1]
        if h == "extraspecial_plus":
            return a[0] ** 3
        if h == "sl23":
            return 24
        if h == "affine_frobenius":
            return a[0] * (a[0] - 1)
        if h == "direct":
            lo = _expr_order(a[0])
            ro = _expr_order(a[1])
            return lo * ro if lo and ro else None
        if h in ("gn", "hn"):
            return 24 ** a[0] if h == "gn" else 24 ** a[0] // 3
    except Exception:
        return None
    return None


def build(expr: GroupExpr | str, max_order: int = DEFAULT_MAX_BUILD_ORDER) -> Group:
    """Evaluate a constructor expression to a Group."""
    if isinstance(expr, str):
        expr = parse_expr(expr)
    cap = GN_MAX_BUILD_ORDER if expr.head in ("gn", "hn") else max_order
    pre = _expr_order(expr)
    if pre is not None and pre > cap:
        raise CapExceededError("max_order", cap, f"{expr.text()} has order {pre}")
    g = _build_inner(expr, max_order)
    if g.order > cap:
        raise CapExceededError("max_order", cap, f"{expr.text()} has order {g.order}")
    return g


def _build_inner(expr: GroupExpr, max_order: int) -> Group:
    h, a = expr.head, expr.args
    if h in _SIMPLE_BUILDERS:
        builder = _SIMPLE_BUILDERS[h]
        return builder(*a) if a else builder()
    if h == "direct":
        return direct(_build_inner(a[0], max_order), _build_inner(a[1], max_order))
    if h == "semidirect":
        base = _build_inner(a[0], max_order)
        actor = _build_inner(a[1], max_order)
        action = a[2]
        if action and not isinstance(action[0], tuple):
            action = tuple(
                tuple(row) for row in cyclic_action_from_generator(base, actor.order, action)
            )
        return semidirect(base, actor, [list(r) for r in action])
    if h == "gn":
        return gn_hn(a[0])[0]
    if h == "hn":
        G, H = gn_hn(a[0])
        out = H.as_group()
        out.name = f"H{a[0]}"
        return out
    raise ExprParseError(f"unknown constructor {h!r}")


# -- named constructions from the source material --------------------------


@lru_cache(maxsize=None)
def gn_hn(n: int) -> tuple[Group, Subgroup]:
    """(2A4)^n together with the index-3 kernel of the product-of-cosets map."""
    if n < 1 or n > 2:
        raise CapExceededError("gn_max_n", 2, f"n={n}")
    base = sl23()
    G = base
    for _ in range(n - 1):
        G = direct(G, base)
    G.name = f"G{n}"
    # label map to the C3 quotient of one 2A4 factor
    q8 = sylow_subgroup(base, 2)
    _, labels = quotient_group(base, q8)
    qtable = _c3_quotient_table(base, labels)
    members = []
    for idx in range(G.order):
        total = 0
        rest = idx
        digits = []
        for _ in range(n):
            digits.append(rest % base.order)
            rest //= base.order
        digits.reverse()
        for d in digits:
            total = qtable[total][int(labels[d])]
        if total == 0:
            members.append(idx)
    H = Subgroup(G, frozenset(members))
    return G, H


def _c3_quotient_table(base: Group, labels: np.ndarray) -> list[list[int]]:
    reps: dict[int, int] = {}
    for x in range(base.order):
        reps.setdefault(int(labels[x]), x)
    k = len(reps)
    table = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            table[i][j] = int(labels[base.mul(reps[i], reps[j])])
    return table


def counterexample_rank2(p: int) -> tuple[Group, Subgroup]:
    """The index-prime-to-p inclusion with too-small tuple rank.

    For p = 3: AGL(1,9) inside AGammaL(1,9) (index 2).  For p = 2 the
    same construction over F_8 with its order-3 Galois group (index 3).
    """
    if p == 3:
        q = 9
    elif p == 2:
        q = 8
    else:
        raise PreconditionError("counterexample_rank2 is bundled for p in {2, 3}")
    G = affine_semilinear(q)
    # members with trivial Galois part form the inner affine group
    keep = [i for i, (a, u, f) in enumerate(G._structural_elements) if f == 0]
    H = Subgroup(G, frozenset(keep))
    return G, H


# -- the bundled catalog ---------------------------------------------------


CATALOG_EXPRS: tuple[str, ...] = (
    "cyclic(1)",
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(4)",
    "cyclic(5)",
    "cyclic(6)",
    "cyclic(8)",
    "cyclic(9)",
    "cyclic(16)",
    "cyclic(27)",
    "cyclic(32)",
    "cyclic(64)",
    "cyclic(81)",
    "elementary_abelian(2,2)",
    "elementary_abelian(2,3)",
    "elementary_abelian(2,4)",
    "elementary_abelian(3,2)",
    "elementary_abelian(3,3)",
    "direct(cyclic(2),cyclic(4))",
    "direct(cyclic(4),cyclic(4))",
    "direct(cyclic(8),cyclic(8))",
    "direct(cyclic(3),cyclic(9))",
    "direct(cyclic(9),cyclic(9))",
    "direct(cyclic(2),dihedral(4))",
    "direct(quaternion8,cyclic(2))",
    "direct(quaternion8,quaternion8)",
    "dihedral(3)",
    "dihedral(4)",
    "dihedral(5)",
    "dihedral(8)",
    "dihedral(16)",
    "quaternion8",
    "extraspecial_plus(3)",
    "extraspecial_plus(5)",
    "sl23",
    "symmetric(3)",
    "symmetric(4)",
    "symmetric(5)",
    "alternating(4)",
    "alternating(5)",
    "affine_frobenius(9)",
    "affine_semilinear(9)",
    "affine_frobenius(8)",
    "affine_semilinear(8)",
    "gn(1)",
    "hn(1)",
    "gn(2)",
    "hn(2)",
)


def catalog_names() -> list[str]:
    return list(CATALOG_EXPRS)


@lru_cache(maxsize=None)
def catalog_group(name: str) -> Group:
    if name not in CATALOG_EXPRS:
        # still allow any parsable expression
        return build(name)
    return build(name)


@dataclass(frozen=True)
class CatalogPair:
    """A bundled inclusion H <= G with the primes whose Sylow is shared."""

    name: str
    parent: Group = field(compare=False)
    H: Subgroup = field(compare=False)
    primes: tuple[int, ...] = ()


def _subgroup_by_predicate(G: Group, pred) -> Subgroup:
    members = frozenset(i for i in range(G.order) if pred(i))
    return Subgroup(G, members)


@lru_cache(maxsize=None)
def _a4_in_a5() -> tuple[Group, Subgroup]:
    G = alternating(5)
    # point stabilizer of the last letter
    members = [i for i, p in enumerate(G._structural_elements) if p[4] == 4]
    return G, Subgroup(G, frozenset(members))


@lru_cache(maxsize=None)
def _sym_in_sym(small: int, big: int) -> tuple[Group, Subgroup]:
    G = symmetric(big)
    members = [
        i
        for i, p in enumerate(G._structural_elements)
        if all(p[j] == j for j in range(small, big))
    ]
    return G, Subgroup(G, frozenset(members))


@lru_cache(maxsize=None)
def _alt_in_sym(n: int) -> tuple[Group, Subgroup]:
    G = symmetric(n)
    target = set(alternating(n)._structural_elements)
    members = [i for i, p in enumerate(G._structural_elements) if p in target]
    return G, Subgroup(G, frozenset(members))


@lru_cache(maxsize=None)
def _cyclic_in_cyclic(p: int) -> tuple[Group, Subgroup]:
    G = cyclic(p * p)
    members = frozenset(range(0, p * p, p))
    return G, Subgroup(G, members)


@lru_cache(maxsize=None)
def _v4_in_a4() -> tuple[Group, Subgroup]:
    G = alternating(4)
    orders = G.element_orders
    members = frozenset([0] + [i for i in range(G.order) if orders[i] == 2])
    return G, Subgroup(G, members)


@lru_cache(maxsize=None)
def _d8_in_s4() -> tuple[Group, Subgroup]:
    G = symmetric(4)
    return G, sylow_subgroup(G, 2)


@lru_cache(maxsize=None)
def _q8_in_sl23() -> tuple[Group, Subgroup]:
    G = sl23()
    return G, sylow_subgroup(G, 2)


@lru_cache(maxsize=None)
def _c3_in_s3() -> tuple[Group, Subgroup]:
    G = symmetric(3)
    return G, sylow_subgroup(G, 3)


@lru_cache(maxsize=None)
def _c5_in_d10() -> tuple[Group, Subgroup]:
    G = dihedral(5)
    return G, sylow_subgroup(G, 5)


_PAIR_BUILDERS: dict[str, Callable[[], tuple[Group, Subgroup]]] = {
    "quaternion8-in-sl23": _q8_in_sl23,
    "gn_hn(1)": lambda: gn_hn(1),
    "gn_hn(2)": lambda: gn_hn(2),
    "alternating(4)-in-alternating(5)": _a4_in_a5,
    "symmetric(4)-in-symmetric(5)": lambda: _sym_in_sym(4, 5),
    "symmetric(3)-in-symmetric(4)": lambda: _sym_in_sym(3, 4),
    "alternating(4)-in-symmetric(4)": lambda: _alt_in_sym(4),
    "alternating(5)-in-symmetric(5)": lambda: _alt_in_sym(5),
    "dihedral(4)-in-symmetric(4)": _d8_in_s4,
    "cyclic(3)-in-symmetric(3)": _c3_in_s3,
    "cyclic(5)-in-dihedral(5)": _c5_in_d10,
    "elementary_abelian(2,2)-in-alternating(4)": _v4_in_a4,
    "counterexample_rank2(3)": lambda: counterexample_rank2(3),
    "counterexample_rank2(2)": lambda: counterexample_rank2(2),
    "cyclic(2)-in-cyclic(4)": lambda: _cyclic_in_cyclic(2),
    "cyclic(3)-in-cyclic(9)": lambda: _cyclic_in_cyclic(3),
}


def pair_names() -> list[str]:
    return sorted(_PAIR_BUILDERS)


def named_pair(name: str) -> tuple[Group, Subgroup]:
    """Resolve a bundled inclusion name to (ambient group, subgroup)."""
    if name in _PAIR_BUILDERS:
        return _PAIR_BUILDERS[name]()
    m = re.fullmatch(r"(.+?)-in-(.+)", name)
    if not m:
        raise ExprParseError(f"unknown pair {name!r}")
    sub_expr, amb_expr = m.group(1), m.group(2)
    G = build(amb_expr)
    H_abs = build(sub_expr)
    found = _find_isomorphic_subgroup(G, H_abs)
    if found is None:
        raise PreconditionError(f"{sub_expr} has no isomorphic subgroup in {amb_expr}")
    return G, found


def _find_isomorphic_subgroup(G: Group, H_abs: Group) -> Optional[Subgroup]:
    from .automorphisms import isomorphism
    from .core import all_subgroups

    for cand in all_subgroups(G.whole):
        if cand.order != H_abs.order:
            continue
        if isomorphism(H_abs, cand.as_group()) is not None:
            return cand
    return None


def common_sylow_primes(G: Group, H: Subgroup) -> tuple[int, ...]:
    """Primes p where H contains a full Sylow p-subgroup of G."""
    from .core import factorize, p_part

    out = []
    for p in sorted(factorize(G.order)):
        if p_part(G.order, p) == p_part(H.order, p):
            out.append(p)
    return tuple(out)


@lru_cache(maxsize=None)
def catalog_pairs() -> tuple[CatalogPair, ...]:
    """All bundled inclusions, canonically ordered by name."""
    out = []
    for name in pair_names():
        G, H = _PAIR_BUILDERS[name]()
        out.append(CatalogPair(name, G, H, common_sylow_primes(G, H)))
    return tuple(out)


_GENERATED_DEMOS = ("c4-inversion",)


def generated_demo_names() -> list[str]:
    return list(_GENERATED_DEMOS)


def generated_demo(name: str):
    """Bundled hand-built generated fusion systems (for axiom checks)."""
    from .core import GroupMap
    from .fusion import generated_closure

    if name == "c4-inversion":
        c4 = build("cyclic(4)")
        inversion = GroupMap.from_images(c4.whole, c4.whole, {0: 0, 1: 3, 2: 2, 3: 1})
        return generated_closure(c4.whole, [inversion], label="generated:c4-inversion")
    raise ExprParseError(f"unknown generated demo {name!r}")


def catalog_p_groups(p: int, max_order: int) -> list[tuple[str, Group]]:
    """Bundled p-groups of order at most max_order, by catalog order."""
    out = []
    for name in CATALOG_EXPRS:
        g = catalog_group(name)
        if g.order == 1 or g.order > max_order:
            continue
        if set(factorize(g.order)) == {p}:
            out.append((name, g))
    return out
