"""Combinatorial plane maps given by a rotation system.

Edges are stored as ``(u, v)`` vertex pairs; edge ``e`` owns the darts
``2 * e`` (``u -> v``) and ``2 * e + 1`` (``v -> u``).  Each vertex lists its
outgoing darts in counterclockwise order.  Faces are traced so that every
face lies to the *left* of its darts.
"""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Sequence


class PlanarityError(ValueError):
    """The rotation system does not describe a planar (genus 0) embedding."""


class PlaneMap:
    def __init__(self):
        self.edges: list[tuple[Hashable, Hashable]] = []
        self.tags: list[object] = []
        self.rot: dict[Hashable, list[int]] = {}
        self._faces: list[list[int]] | None = None
        self._face_of: list[int] | None = None

    # -- construction ----------------------------------------------------------
    def add_edge(self, u: Hashable, v: Hashable, tag: object = None) -> int:
        self.edges.append((u, v))
        self.tags.append(tag)
        self._faces = None
        return len(self.edges) - 1

    def set_rotation(self, v: Hashable, darts: Sequence[int]) -> None:
        self.rot[v] = list(darts)
        self._faces = None

    @staticmethod
    def dart(e: int, forward: bool = True) -> int:
        return 2 * e if forward else 2 * e + 1

    @staticmethod
    def twin(d: int) -> int:
        return d ^ 1

    def tail(self, d: int) -> Hashable:
        u, v = self.edges[d >> 1]
        return u if d % 2 == 0 else v

    def head(self, d: int) -> Hashable:
        return self.tail(d ^ 1)

    def edge_of(self, d: int) -> int:
        return d >> 1

    # -- checks ----------------------------------------------------------------
    def check(self) -> None:
        """Every dart appears exactly once, at its own tail."""
        seen = set()
        for v, darts in self.rot.items():
            for d in darts:
                if self.tail(d) != v:
                    raise ValueError(f"dart {d} listed at {v!r} but leaves {self.tail(d)!r}")
                if d in seen:
                    raise ValueError(f"dart {d} listed twice")
                seen.add(d)
        if len(seen) != 2 * len(self.edges):
            raise ValueError("rotation system does not cover every dart")

    # -- faces -----------------------------------------------------------------
    def next_in_face(self, d: int) -> int:
        t = d ^ 1
        lst = self.rot[self.tail(t)]
        i = lst.index(t)
        return lst[i - 1]

    def faces(self) -> list[list[int]]:
        if self._faces is None:
            self.check()
            face_of = [-1] * (2 * len(self.edges))
            faces: list[list[int]] = []
            for start in range(2 * len(self.edges)):
                if face_of[start] >= 0:
                    continue
                cyc = []
                d = start
                while face_of[d] < 0:
                    face_of[d] = len(faces)
                    cyc.append(d)
                    d = self.next_in_face(d)
                faces.append(cyc)
            self._faces = faces
            self._face_of = face_of
        return self._faces

    def face_of(self, d: int) -> int:
        self.faces()
        return self._face_of[d]

    def components(self) -> list[set[Hashable]]:
        adj: dict[Hashable, set[Hashable]] = {v: set() for v in self.rot}
        for u, v in self.edges:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        seen: set[Hashable] = set()
        comps = []
        for s in adj:
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def euler_characteristic(self) -> int:
        return len(self.rot) - len(self.edges) + len(self.faces())

    def require_planar(self) -> None:
        c = len(self.components())
        chi = self.euler_characteristic()
        if chi != 2 * c:
            raise PlanarityError(f"Euler check failed: V - E + F = {chi}, expected {2 * c}")

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- dual reachability -------------------------------------------------------
    def faces_reachable(self, start_face: int, blocked_edges: Iterable[int]) -> set[int]:
        """Faces reachable from ``start_face`` crossing any edge not in ``blocked_edges``."""
        blocked = set(blocked_edges)
        faces = self.faces()
        seen = {start_face}
        todo = deque([start_face])
        while todo:
            f = todo.popleft()
            for d in faces[f]:
                if (d >> 1) in blocked:
                    continue
                g = self._face_of[d ^ 1]
                if g not in seen:
                    seen.add(g)
                    todo.append(g)
        return seen
