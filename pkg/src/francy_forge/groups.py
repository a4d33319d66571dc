"""Finite permutation groups at desk scale.

Permutations are tuples of 1-based images: ``p[i - 1]`` is the image of point
``i``.  Composition is left-to-right, ``compose(p, q)(x) == q(p(x))``, and all
derived operations (conjugation, cyclic closure, generator parsing) follow
that convention.

Groups carry their full element set.  Subgroup enumeration is closure-based
saturation: starting from the trivial subgroup, every known subgroup is
extended by each outside element and closed, until no new subgroup appears.
The closure inner loop runs on the group's multiplication table via
``_kernels``.  Enumeration is capped at order 120 to keep brute force honest.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels

Perm = tuple[int, ...]

MAX_SYMMETRIC_DEGREE = 5
MAX_GROUP_ORDER = 120


def identity(degree: int) -> Perm:
    return tuple(range(1, degree + 1))


def compose(p: Perm, q: Perm) -> Perm:
    """Left-to-right product: apply ``p`` first, then ``q``."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return tuple(q[p[i] - 1] for i in range(len(p)))

def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, image in enumerate(p):
        out[image - 1] = i + 1
    return tuple(out)


def _check_perm(p: Perm) -> Perm:
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"not a permutation of 1..{len(p)}: {p!r}")
    return tuple(p)


def perm_from_cycles(cycles: list[tuple[int, ...]], degree: int) -> Perm:
    """Build a permutation from cycles, applied left-to-right."""
    result = identity(degree)
    for cycle in cycles:
        if len(set(cycle)) != len(cycle):
            raise ValueError(f"repeated point in cycle {cycle!r}")
        if cycle and not all(1 <= x <= degree for x in cycle):
            raise ValueError(f"cycle {cycle!r} exceeds degree {degree}")
        images = list(identity(degree))
        for i, x in enumerate(cycle):
            images[x - 1] = cycle[(i + 1) % len(cycle)]
        result = compose(result, tuple(images))
    return result


def cycle_notation(p: Perm) -> str:
    """GAP-style cycle string, e.g. ``"(1,2)(3,4)"``; identity is ``"()"``."""
    seen = [False] * len(p)
    parts = []
    for start in range(1, len(p) + 1):
        if seen[start - 1] or p[start - 1] == start:
            continue
        cycle = [start]
        seen[start - 1] = True
        x = p[start - 1]
        while x != start:
            cycle.append(x)
            seen[x - 1] = True
            x = p[x - 1]
        parts.append("(" + ",".join(str(x) for x in cycle) + ")")
    return "".join(parts) if parts else "()"


@dataclass(frozen=True)
class PermGroup:
    """A finite permutation group as an explicit, sorted element tuple."""

    degree: int
    elements: tuple[Perm, ...]
    name: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in set(self.elements)

    def __str__(self) -> str:
        return self.name or f"Group of order {self.order} on {self.degree} points"


def _make_group(elements: set[Perm], degree: int, name: str | None = None) -> PermGroup:
    ordered = tuple(sorted(elements))
    if name is None:
        gens = generating_set(ordered)
        name = "Group([ " + ", ".join(cycle_notation(g) for g in gens) + " ])"
    return PermGroup(degree=degree, elements=ordered, name=name)


def symmetric_group(n: int) -> PermGroup:
    """Full symmetric group on ``1..n``; desk-scale bound ``1 <= n <= 5``."""
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise ValueError(f"symmetric_group degree must be 1..{MAX_SYMMETRIC_DEGREE}, got {n}")
    from itertools import permutations

    elements = {tuple(p) for p in permutations(range(1, n + 1))}
    label = "Sym( [ 1 ] )" if n == 1 else f"Sym( [ 1 .. {n} ] )"
    return _make_group(elements, n, label)


def group_from_generators(generators: list[Perm], name: str | None = None) -> PermGroup:
    """Close a generator list under products; order is capped at 120."""
    if not generators:
        raise ValueError("at least one generator required")
    degree = len(generators[0])
    gens = [_check_perm(g) for g in generators]
    if any(len(g) != degree for g in gens):
        raise ValueError("generators must share one degree")
    elements = {identity(degree)}
    frontier = list(elements)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                p = compose(a, g)
                if p not in elements:
                    elements.add(p)
                    new.append(p)
                    if len(elements) > MAX_GROUP_ORDER:
                        raise ValueError(f"group order exceeds cap {MAX_GROUP_ORDER}")
        frontier = new
    return _make_group(elements, degree, name)


def generating_set(elements: tuple[Perm, ...]) -> list[Perm]:
    """Small deterministic generating set: greedily add the least outside element."""
    degree = len(elements[0])
    target = set(elements)
    if len(target) == 1:
        return [identity(degree)]
    gens: list[Perm] = []
    have = {identity(degree)}
    for p in sorted(target):
        if p in have:
            continue
        gens.append(p)
        have = set(_close_under_product(have | {p}))
        if have == target:
            break
    return gens


def _close_under_product(subset: set[Perm]) -> set[Perm]:
    cur = set(subset)
    frontier = list(cur)
    while frontier:
        new = []
        for a in frontier:
            for b in list(cur):
                for p in (compose(a, b), compose(b, a)):
                    if p not in cur:
                        cur.add(p)
                        new.append(p)
        frontier = new
    return cur


# --- index-table machinery -------------------------------------------------

@lru_cache(maxsize=None)
def _index_tables(group: PermGroup) -> tuple[np.ndarray, np.ndarray]:
    """(product table, inverse vector) over element indices, identity first."""
    elements = group.elements
    index = {p: i for i, p in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int32)
    inv = np.empty(n, dtype=np.int32)
    for i, p in enumerate(elements):
        inv[i] = index[inverse(p)]
        for j, q in enumerate(elements):
            table[i, j] = index[compose(p, q)]
    return table, inv


def _saturate_masks(table: np.ndarray, inv: np.ndarray, closure_fn=None) -> list[np.ndarray]:
    """All subgroup membership masks by one-element extension to fixpoint."""
    closure = closure_fn or _kernels.closure_mask
    n = table.shape[0]
    trivial = np.zeros(n, dtype=np.bool_)
    trivial[0] = True  # elements are sorted, so the identity is index 0
    found = {trivial.tobytes(): trivial}
    frontier = [trivial]
    while frontier:
        grown = []
        for mask in frontier:
            for g in np.flatnonzero(~mask):
                seed = mask.copy()
                seed[g] = True
                closed = np.asarray(closure(table, inv, seed))
                key = closed.tobytes()
                if key not in found:
                    found[key] = closed
                    grown.append(closed)
        frontier = grown
    return list(found.values())


@lru_cache(maxsize=None)
def all_subgroups(group: PermGroup) -> tuple[PermGroup, ...]:
    """Every subgroup exactly once, sorted by (order, element sequence)."""
    if group.order > MAX_GROUP_ORDER:
        raise ValueError(f"group order {group.order} exceeds cap {MAX_GROUP_ORDER}")
    table, inv = _index_tables(group)
    masks = _saturate_masks(table, inv)
    subgroups = []
    full = set(group.elements)
    for mask in masks:
        members = {group.elements[i] for i in np.flatnonzero(mask)}
        name = group.name if (group.name and members == full) else None
        subgroups.append(_make_group(members, group.degree, name))
    subgroups.sort(key=lambda h: (h.order, h.elements))
    return tuple(subgroups)


def is_subgroup(container: PermGroup, contained: PermGroup) -> bool:
    """True iff ``container`` holds every element of ``contained``."""
    return set(contained.elements) <= set(container.elements)


def is_normal(group: PermGroup, sub: PermGroup) -> bool:
    """True iff ``sub`` is invariant under conjugation by all of ``group``."""
    members = set(sub.elements)
    for g in group.elements:
        g_inv = inverse(g)
        for n in sub.elements:
            if compose(compose(g, n), g_inv) not in members:
                return False
    return True


def is_simple(group: PermGroup) -> bool:
    """Nontrivial with no proper nontrivial normal subgroup."""
    if group.order <= 1:
        return False
    return not any(
        1 < sub.order < group.order and is_normal(group, sub)
        for sub in all_subgroups(group)
    )


def containment_matrix(subgroups: tuple[PermGroup, ...]) -> np.ndarray:
    """Boolean matrix ``C[i, j]`` = subgroup ``i`` contains subgroup ``j``."""
    sets = [set(h.elements) for h in subgroups]
    k = len(sets)
    out = np.zeros((k, k), dtype=np.bool_)
    for i in range(k):
        for j in range(k):
            out[i, j] = sets[j] <= sets[i]
    return out


def transitive_reduction(relation: np.ndarray) -> np.ndarray:
    """Covering relation of a strict partial order given as a boolean matrix."""
    strict = relation & ~np.eye(relation.shape[0], dtype=np.bool_)
    two_step = (strict.astype(np.int32) @ strict.astype(np.int32)) > 0
    return strict & ~two_step


def subgroup_digraph(group: PermGroup, hasse: bool = False) -> list[tuple[int, int]]:
    """Containment pairs over ``all_subgroups(group)``, 1-based.

    Pair ``(i, j)`` means subgroup ``i`` contains subgroup ``j``; the reflexive
    pairs are included.  With ``hasse=True`` the transitive reduction is
    returned instead (covering relation, no loops).
    """
    subgroups = all_subgroups(group)
    matrix = containment_matrix(subgroups)
    if hasse:
        matrix = transitive_reduction(matrix)
    rows, cols = np.nonzero(matrix)
    return [(int(i) + 1, int(j) + 1) for i, j in zip(rows, cols)]


# --- generator-spec grammar --------------------------------------------------

_CYCLE = re.compile(r"\(\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\)")


def parse_generator_spec(spec: str) -> list[Perm]:
    """Parse cycles-in-parentheses notation, e.g. ``"(1,2);(1,2,3)"``.

    Permutations are separated by ``;``; within one permutation, cycles may be
    separated by whitespace (or juxtaposed) and are applied left-to-right.
    """
    chunks = [c for c in (part.strip() for part in spec.split(";")) if c]
    if not chunks:
        raise ValueError("empty generator spec")
    parsed: list[list[tuple[int, ...]]] = []
    degree = 1
    for chunk in chunks:
        rest = chunk
        cycles: list[tuple[int, ...]] = []
        while rest:
            match = _CYCLE.match(rest)
            if match is None:
                raise ValueError(f"bad generator spec near {rest!r}")
            points = tuple(int(x) for x in match.group(1).replace(" ", "").split(",") if x)
            if any(x < 1 for x in points):
                raise ValueError("cycle points must be >= 1")
            cycles.append(points)
            degree = max(degree, *points) if points else degree
            rest = rest[match.end():].lstrip()
        parsed.append(cycles)
    return [perm_from_cycles(cycles, degree) for cycles in parsed]
