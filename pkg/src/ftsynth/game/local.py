"""Local (single-component) game graphs."""

from dataclasses import dataclass


@dataclass
class LocalGame:
    """A bipartite two-player graph: control vertices v0, environment v1."""

    v0: tuple
    v1: tuple
    edges: tuple  # of (source, target)

    def __post_init__(self):
        self.v0 = tuple(self.v0)
        self.v1 = tuple(self.v1)
        self.edges = tuple(self.edges)
        self._v0set = set(self.v0)
        self._v1set = set(self.v1)
        self._succ = {}
        for u, v in self.edges:
            self._succ.setdefault(u, []).append(v)

    def validate(self):
        diags = []
        if self._v0set & self._v1set:
            diags.append(f"vertices in both classes: {sorted(self._v0set & self._v1set)}")
        allv = self._v0set | self._v1set
        for u, v in self.edges:
            if u not in allv or v not in allv:
                diags.append(f"edge ({u}, {v}) uses an undeclared vertex")
            elif (u in self._v0set) == (v in self._v0set):
                diags.append(f"edge ({u}, {v}) does not cross the partition")
        return diags

    def vertices(self):
        return self.v0 + self.v1

    def successors(self, vertex):
        return self._succ.get(vertex, [])

    def is_control(self, vertex):
        return vertex in self._v0set
