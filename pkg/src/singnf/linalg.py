"""Sparse row echelon forms over the rationals.

Vectors are dicts ``column -> value``. Columns are ordered by a key function;
each stored row has its smallest column as pivot, with pivot value 1.
"""
from __future__ import annotations

import heapq
from typing import Callable, Hashable, Iterable, Optional


class Echelon:
    def __init__(self, colkey: Callable[[Hashable], tuple]):
        self.colkey = colkey
        self.rows: dict = {}
        self.tags: dict = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> set:
        return set(self.rows)

    def reduce(self, v: dict, tag: Optional[dict] = None) -> tuple[dict, Optional[dict]]:
        """Eliminate every pivot column from ``v``. With ``tag`` the row
        combinations are tracked: the result is ``v - sum(c_p * row_p)`` and
        the returned tag accumulates ``-c_p * tag_p``."""
        v = {k: c for k, c in v.items() if c}
        tag = dict(tag) if tag is not None else None
        key = self.colkey
        heap = [(key(k), k) for k in v]
        heapq.heapify(heap)
        seen = set()
        while heap:
            _, k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if c is None or k not in self.rows:
                continue
            row = self.rows[k]
            for kk, val in row.items():
                s = v.get(kk)
                if s is None:
                    v[kk] = -c * val
                    heapq.heappush(heap, (key(kk), kk))
                else:
                    s = s - c * val
                    if s:
                        v[kk] = s
                    else:
                        del v[kk]
            if tag is not None:
                for tk, tv in self.tags[k].items():
                    s = tag.get(tk, 0) - c * tv
                    if s:
                        tag[tk] = s
                    else:
                        tag.pop(tk, None)
        return v, tag

    def insert(self, v: dict, tag: Optional[dict] = None):
        """Add ``v`` to the row space; return its new pivot or ``None``."""
        r, t = self.reduce(v, tag)
        if not r:
            return None
        p = min(r, key=self.colkey)
        inv = 1 / r[p]
        self.rows[p] = {k: c * inv for k, c in r.items()}
        if t is not None:
            self.tags[p] = {k: c * inv for k, c in t.items()}
        return p

    def extend(self, vs: Iterable[dict]) -> None:
        for v in vs:
            self.insert(v)

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]


def rank(vectors: Iterable[dict], colkey: Callable = lambda k: k) -> int:
    e = Echelon(colkey)
    for v in vectors:
        e.insert(v)
    return len(e)
