"""
Rooted-tree representation of a laminar family with O(1) descendant tests.

Tree node 0 is the root and stands for V. Every other tree node is one
distinct set of the family; its parent is the smallest family set strictly
containing it. psi(v) is the smallest family set containing v (the root if
there is none). DFS in/out times make "x is a descendant of y" two integer
comparisons.
"""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

logger = logging.getLogger(__name__)

ROOT = 0


class LaminarityError(ValueError):
    """Raised when two members of a family cross."""

    def __init__(self, first: FrozenSet[int], second: FrozenSet[int]):
        self.first = first
        self.second = second
        super().__init__(
            f"sets {sorted(first)} and {sorted(second)} are not laminar"
        )


@dataclass(frozen=True)
class LaminarForest:
    n: int
    parent: Tuple[int, ...]
    psi: Tuple[int, ...]
    dfs_in: Tuple[int, ...]
    dfs_out: Tuple[int, ...]
    set_ids: Tuple[int, ...] = ()

    @property
    def size(self) -> int:
        """Number of tree nodes, root included."""
        return len(self.parent)

    def is_descendant(self, x: int, y: int) -> bool:
        """True iff tree node x is y or lies below y."""
        return self.dfs_in[y] <= self.dfs_in[x] and self.dfs_out[x] <= self.dfs_out[y]

    def contains(self, node: int, v: int) -> bool:
        """Membership of graph node v in the set of tree node `node`."""
        return self.is_descendant(self.psi[v], node)

    def children(self) -> List[List[int]]:
        kids: List[List[int]] = [[] for _ in range(self.size)]
        for x in range(1, self.size):
            kids[self.parent[x]].append(x)
        return kids


def build_forest(family: Sequence[Iterable[int]], n: int) -> LaminarForest:
    """
    Build the tree of a laminar family.

    Args:
        family: Member sets over nodes 0..n-1; equal sets share one tree node
        n: Number of graph nodes

    Returns:
        LaminarForest whose set_ids[i] is the tree node of family[i]

    Raises:
        LaminarityError: If two members cross
        ValueError: If a member is empty, equals V or leaves [0, n)
    """
    members = [frozenset(f) for f in family]
    for s in members:
        if not s:
            raise ValueError("laminar family members must be non-empty")
        if len(s) >= n and s == frozenset(range(n)):
            raise ValueError("laminar family members must be proper subsets of V")
        if min(s) < 0 or max(s) >= n:
            raise ValueError(f"set {sorted(s)} leaves [0, {n})")

    # Larger sets first, so a parent always precedes its children.
    distinct = sorted(set(members), key=lambda s: (-len(s), sorted(s)))
    node_of: Dict[FrozenSet[int], int] = {}
    sets: List[FrozenSet[int]] = [frozenset(range(n))]
    parent: List[int] = [-1]
    owner = [ROOT] * n

    for s in distinct:
        owners = {owner[v] for v in s}
        if len(owners) > 1:
            # Every earlier set is at least as large, so one of them crosses s.
            offender = next(
                (o for o in sorted(owners) if o != ROOT and not s <= sets[o]),
                max(owners),
            )
            raise LaminarityError(sets[offender], s)
        tree_node = len(sets)
        parent.append(owners.pop())
        sets.append(s)
        node_of[s] = tree_node
        for v in s:
            owner[v] = tree_node

    kids: List[List[int]] = [[] for _ in sets]
    for x in range(1, len(sets)):
        kids[parent[x]].append(x)
    for ks in kids:
        ks.sort(key=lambda x: min(sets[x]))

    dfs_in = [0] * len(sets)
    dfs_out = [0] * len(sets)
    clock = 0
    stack = [(ROOT, False)]
    while stack:
        x, done = stack.pop()
        if done:
            dfs_out[x] = clock
            clock += 1
            continue
        dfs_in[x] = clock
        clock += 1
        stack.append((x, True))
        for child in reversed(kids[x]):
            stack.append((child, False))

    forest = LaminarForest(
        n=n,
        parent=tuple(parent),
        psi=tuple(owner),
        dfs_in=tuple(dfs_in),
        dfs_out=tuple(dfs_out),
        set_ids=tuple(node_of[s] for s in members),
    )
    logger.debug(f"Laminar forest with {forest.size} tree nodes over n={n}")
    return forest
