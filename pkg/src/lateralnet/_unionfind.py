class UnionFind:
    """Disjoint sets over the integers ``0..n-1`` with path halving."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # smaller index wins so that roots are reproducible
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def classes(self):
        """Return ``(labels, count)``: dense class labels ordered by first member."""
        labels = [-1] * len(self.parent)
        seen = {}
        for x in range(len(self.parent)):
            r = self.find(x)
            if r not in seen:
                seen[r] = len(seen)
            labels[x] = seen[r]
        return labels, len(seen)

    def groups(self):
        labels, count = self.classes()
        out = [[] for _ in range(count)]
        for x, lab in enumerate(labels):
            out[lab].append(x)
        return out
