"""Shared search plumbing: enumeration budget and a small union-find."""

from __future__ import annotations

import os


class SearchBudgetExceeded(Exception):
    """Raised when MCT_MAX_SEARCH enumeration steps are exhausted."""


_budget: list[int | None] = [None]   # remaining steps; None = unlimited
_initialized = False


def _init_from_env():
    global _initialized
    raw = os.environ.get("MCT_MAX_SEARCH")
    _budget[0] = int(raw) if raw else None
    _initialized = True


def reset_budget(limit: int | None = None):
    """Set the step budget explicitly (None = read MCT_MAX_SEARCH, unlimited if unset)."""
    global _initialized
    if limit is None:
        _init_from_env()
    else:
        _budget[0] = limit
        _initialized = True


def budget_tick(n: int = 1):
    if not _initialized:
        _init_from_env()
    if _budget[0] is None:
        return
    _budget[0] -= n
    if _budget[0] < 0:
        raise SearchBudgetExceeded(
            "enumeration exceeded MCT_MAX_SEARCH; raise the cap or shrink the input")


class UnionFind:
    """Union-find with deterministic representatives (smallest insertion index wins)."""

    def __init__(self):
        self.parent: dict = {}
        self.order: dict = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.order[x] = len(self.order)

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        """Merge; the earlier-added representative stays canonical. True if merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.order[rb] < self.order[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out
