"""Union-find over arbitrary hashable keys with deterministic grouping."""

from __future__ import annotations


class UnionFind:
    def __init__(self, items=()):
        self.parent = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        self.add(a)
        self.add(b)
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def same(self, a, b):
        return self.find(a) == self.find(b)

    def groups(self):
        """Equivalence classes as sorted member lists, ordered by least member."""
        buckets = {}
        for x in self.parent:
            buckets.setdefault(self.find(x), []).append(x)
        out = [sorted(members) for members in buckets.values()]
        out.sort(key=lambda g: g[0])
        return out
