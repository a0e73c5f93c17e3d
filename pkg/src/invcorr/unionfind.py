"""Union-find kernel shared by every quotient construction."""

from __future__ import annotations


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def classes(self) -> tuple[list[int], list[list[int]]]:
        """Class id per element and members per class.

        Ids are assigned in order of each class's smallest member, so the
        numbering only depends on the partition.
        """
        n = len(self.parent)
        ids = [-1] * n
        members: list[list[int]] = []
        root_id: dict[int, int] = {}
        for x in range(n):
            r = self.find(x)
            if r not in root_id:
                root_id[r] = len(members)
                members.append([])
            ids[x] = root_id[r]
            members[root_id[r]].append(x)
        return ids, members
