"""Bounded coset enumeration, used as an order oracle.

Relator-driven (HLT-style) strategy with deterministic coset numbering:
cosets are created in scan order and coincidences keep the smaller
number, so the returned index never depends on timing.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from .presentation import Presentation
from .words import Letter, Word, parse_letter


class _Overflow:
    def __repr__(self) -> str:
        return "OVERFLOW"

    def __bool__(self) -> bool:
        return False


OVERFLOW = _Overflow()


def _signed_columns(p: Presentation) -> Tuple[Dict[Letter, int], List[Letter]]:
    """One column per signed generator; involutory generators fold."""
    columns: Dict[Letter, int] = {}
    order: List[Letter] = []
    for name in p.alphabet:
        pos = parse_letter(name)
        columns[pos] = len(order)
        order.append(pos)
        neg = pos.inverse()
        if name in p.involutory:
            columns[neg] = columns[pos]
        else:
            columns[neg] = len(order)
            order.append(neg)
    return columns, order


class _Table:
    def __init__(self, p: Presentation, max_cosets: int):
        self.columns, self.order = _signed_columns(p)
        self.inv_col = [self.columns[letter.inverse()] for letter in self.order]
        self.max_cosets = max_cosets
        self.rows: List[List[Optional[int]]] = [self._blank()]
        self.parent: List[int] = [0]
        self.queue: List[Tuple[int, int]] = []

    def _blank(self) -> List[Optional[int]]:
        return [None] * len(self.order)

    def rep(self, c: int) -> int:
        while self.parent[c] != c:
            self.parent[c] = self.parent[self.parent[c]]
            c = self.parent[c]
        return c

    def define(self, c: int, col: int) -> Optional[int]:
        if len(self.rows) >= self.max_cosets:
            return None
        new = len(self.rows)
        self.rows.append(self._blank())
        self.parent.append(new)
        self.set_entry(c, col, new)
        return new

    def set_entry(self, c: int, col: int, d: int) -> None:
        c, d = self.rep(c), self.rep(d)
        existing = self.rows[c][col]
        if existing is not None:
            if self.rep(existing) != d:
                self.queue.append((existing, d))
            return
        self.rows[c][col] = d
        back = self.rows[d][self.inv_col[col]]
        if back is None:
            self.rows[d][self.inv_col[col]] = c
        elif self.rep(back) != c:
            self.queue.append((back, c))

    def process_coincidences(self) -> None:
        while self.queue:
            a, b = self.queue.pop()
            a, b = self.rep(a), self.rep(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            moved = self.rows[b]
            self.rows[b] = self._blank()
            for col, target in enumerate(moved):
                if target is not None:
                    self.set_entry(a, col, self.rep(target))

    def image(self, c: int, letter: Letter) -> Optional[int]:
        entry = self.rows[c][self.columns[letter]]
        return None if entry is None else self.rep(entry)

    def scan_and_fill(self, c: int, word: Word) -> bool:
        """Trace word at c, defining cosets as needed; False on overflow."""
        if not word:
            return True
        while True:
            c = self.rep(c)
            f, i = c, 0
            while i < len(word):
                nxt = self.image(f, word[i])
                if nxt is None:
                    break
                f, i = nxt, i + 1
            if i == len(word):
                if f != c:
                    self.queue.append((f, c))
                    self.process_coincidences()
                return True
            b, j = c, len(word) - 1
            while j >= i:
                prev = self.image(b, word[j].inverse())
                if prev is None:
                    break
                b, j = prev, j - 1
            if j < i:
                if f != b:
                    self.queue.append((f, b))
                    self.process_coincidences()
                return True
            if j == i:
                self.set_entry(f, self.columns[word[i]], b)
                self.process_coincidences()
                return True
            if self.define(f, self.columns[word[i]]) is None:
                return False


def coset_enumerate(p: Presentation, subgroup_gens: Sequence[Word] = (), max_cosets: int = 100000):
    """Index of the subgroup, or OVERFLOW if max_cosets is exceeded."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    table = _Table(p, max_cosets)
    relators = p.effective_relators()
    for word in subgroup_gens:
        if not table.scan_and_fill(0, word):
            return OVERFLOW
    c = 0
    while c < len(table.rows):
        if table.rep(c) != c:
            c += 1
            continue
        for word in relators:
            if not table.scan_and_fill(table.rep(c), word):
                return OVERFLOW
            if table.rep(c) != c:
                break
        if table.rep(c) == c:
            for col in range(len(table.order)):
                if table.rows[c][col] is None:
                    if table.define(c, col) is None:
                        return OVERFLOW
        c += 1
    return sum(1 for c in range(len(table.rows)) if table.rep(c) == c)
