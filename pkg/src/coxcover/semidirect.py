"""Permutations acting on indexed free-group fibers.

Elements are pairs (perm, fiber) with fiber a finitely supported map
from indices 1..n to words over the ten cycle-edge symbols.  The product
rule is (s, f)(t, g) = (st, t^-1(f) g) where permutations act on fiber
indices, so evaluation of edge words is a homomorphism.
"""

from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .torus import FAIL, PASS, Check, TorusGraphData
from .words import Letter, Word, cyclic_reduce, invert, reduce

OMEGA = ("1", "2", "3", "4", "7", "10", "13", "15", "17", "23")
_OMEGA_SET = frozenset(OMEGA)


class Permutation:
    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        self.images = tuple(images)
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("not a permutation of 1..n")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def apply(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(self.apply(other.apply(x)) for x in range(1, self.n + 1))

    def inverse(self) -> "Permutation":
        images = [0] * self.n
        for x in range(1, self.n + 1):
            images[self.apply(x) - 1] = x
        return Permutation(images)

    def is_identity(self) -> bool:
        return all(self.apply(x) == x for x in range(1, self.n + 1))

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            x = self.apply(start)
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self.apply(x)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(x) for x in cycle) + ")" for cycle in cycles)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation{self.cycle_string()}"


class FiberElement:
    __slots__ = ("entries",)

    def __init__(self, entries: Union[Mapping[int, Sequence[Letter]],
                                      Iterable[Tuple[int, Sequence[Letter]]]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        merged: Dict[int, Word] = {}
        for index, word in items:
            if index < 1:
                raise ValueError(f"bad fiber index {index}")
            merged[index] = reduce(tuple(merged.get(index, ())) + tuple(word))
        self.entries = {index: word for index, word in merged.items() if word}
        for word in self.entries.values():
            for letter in word:
                if letter.primed or letter.sym not in _OMEGA_SET:
                    raise ValueError(f"fiber letter {letter} outside the cycle alphabet")

    def word_at(self, index: int) -> Word:
        return self.entries.get(index, ())

    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self.entries))

    def is_identity(self) -> bool:
        return not self.entries

    def multiply(self, other: "FiberElement") -> "FiberElement":
        indices = set(self.entries) | set(other.entries)
        return FiberElement({i: self.word_at(i) + other.word_at(i) for i in indices})

    def inverse(self) -> "FiberElement":
        return FiberElement({i: invert(w) for i, w in self.entries.items()})

    def act(self, perm: Permutation) -> "FiberElement":
        """Relabel indices: result at perm(a) is this element's word at a."""
        for index in self.entries:
            if index > perm.n:
                raise ValueError("fiber index outside permutation range")
        return FiberElement({perm.apply(i): w for i, w in self.entries.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FiberElement) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(tuple(sorted((i, w) for i, w in self.entries.items())))

    def __repr__(self) -> str:
        return f"FiberElement({format_fiber(self)!r})"


class SemidirectElement:
    __slots__ = ("perm", "fiber")

    def __init__(self, perm: Permutation, fiber: FiberElement):
        self.perm = perm
        self.fiber = fiber

    def is_identity(self) -> bool:
        return self.perm.is_identity() and self.fiber.is_identity()

    def __eq__(self, other) -> bool:
        return (isinstance(other, SemidirectElement)
                and self.perm == other.perm and self.fiber == other.fiber)

    def __repr__(self) -> str:
        return f"SemidirectElement({self.perm.cycle_string()}, {format_fiber(self.fiber)!r})"


def semi_identity(n: int) -> SemidirectElement:
    return SemidirectElement(Permutation.identity(n), FiberElement())


def semi_multiply(x: SemidirectElement, y: SemidirectElement) -> SemidirectElement:
    if x.perm.n != y.perm.n:
        raise ValueError("size mismatch")
    fiber = x.fiber.act(y.perm.inverse()).multiply(y.fiber)
    return SemidirectElement(x.perm * y.perm, fiber)


def semi_inverse(x: SemidirectElement) -> SemidirectElement:
    return SemidirectElement(x.perm.inverse(), x.fiber.inverse().act(x.perm))


def parse_fiber(text: str) -> FiberElement:
    pairs: List[Tuple[int, Word]] = []
    for token in text.split():
        body = token
        inv = body.endswith("-")
        if inv:
            body = body[:-1]
        sym, _, index = body.partition("_")
        if not index:
            raise ValueError(f"bad fiber token {token!r}")
        pairs.append((int(index), (Letter(sym, False, inv),)))
    return FiberElement(pairs)


def format_fiber(f: FiberElement) -> str:
    tokens = []
    for index in f.support():
        for letter in f.word_at(index):
            tokens.append(f"{letter.sym}_{index}" + ("-" if letter.inv else ""))
    return " ".join(tokens)


def generator_images(data: TorusGraphData) -> Dict[str, SemidirectElement]:
    n = data.planes.vertex_count
    images: Dict[str, SemidirectElement] = {}
    cycle_ids = set(data.spanning.cycle_ids())
    for edge_id in data.planes.edge_ids():
        u, v = data.planes.endpoints(edge_id)
        perm = Permutation.transposition(n, u, v)
        if edge_id in cycle_ids:
            alpha, beta = data.spanning.orientation(edge_id)
            fiber = FiberElement({beta: (Letter(edge_id, False, True),),
                                  alpha: (Letter(edge_id),)})
        else:
            fiber = FiberElement()
        images[edge_id] = SemidirectElement(perm, fiber)
    return images


def phi_eval(w: Sequence[Letter], data: TorusGraphData) -> SemidirectElement:
    """Evaluate an edge word; primed symbols use their underlying edge."""
    images = generator_images(data)
    out = semi_identity(data.planes.vertex_count)
    for letter in w:
        image = images.get(letter.sym)
        if image is None:
            raise ValueError(f"unknown edge symbol {letter.sym!r}")
        if letter.inv:
            image = semi_inverse(image)
        out = semi_multiply(out, image)
    return out


class AbVector:
    __slots__ = ("coords",)

    symbols = OMEGA

    def __init__(self, coords: Sequence[int] = (0,) * 10):
        self.coords = tuple(coords)
        if len(self.coords) != 10:
            raise ValueError("expected 10 coordinates")

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "AbVector") -> "AbVector":
        return AbVector(a + b for a, b in zip(self.coords, other.coords))

    def __eq__(self, other) -> bool:
        return isinstance(other, AbVector) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        parts = [f"{c}*e{s}" for s, c in zip(self.symbols, self.coords) if c]
        return "AbVector(" + (" + ".join(parts) if parts else "0") + ")"


def ab(f: FiberElement) -> AbVector:
    totals = {sym: 0 for sym in OMEGA}
    for word in f.entries.values():
        for letter in word:
            totals[letter.sym] += -1 if letter.inv else 1
    return AbVector(totals[sym] for sym in OMEGA)


def in_F(f: FiberElement) -> bool:
    return ab(f).is_zero()


def relator_to_fiber(r: Sequence[Letter], data: TorusGraphData) -> FiberElement:
    image = phi_eval(r, data)
    if not image.perm.is_identity():
        raise ValueError(f"nontrivial permutation part {image.perm.cycle_string()}")
    return image.fiber


def strip_conjugation(f: FiberElement) -> FiberElement:
    return FiberElement({i: cyclic_reduce(w) for i, w in f.entries.items()})


def sections(f: FiberElement) -> List[FiberElement]:
    return [FiberElement({i: f.word_at(i)}) for i in f.support()]


def genericize(f: FiberElement) -> FiberElement:
    """Canonical index labels: sections sorted by content get 1, 2, 3, ...

    Content order makes the result constant on index-relabeling orbits;
    equal sections are interchangeable, so their tie order is immaterial.
    """
    ordered = sorted(f.entries.items(), key=lambda item: (len(item[1]), item[1], item[0]))
    return FiberElement({new + 1: word for new, (_, word) in enumerate(ordered)})


def phi_soundness_check(data: TorusGraphData, table=None) -> List[Check]:
    """Generator images kill every defining relator and match the three
    published example values; replacement-table sides agree at the
    permutation level (full fiber equality is not expected there)."""
    from .graphs import coxeter_presentation
    from .torus import load_substitution_table

    checks: List[Check] = []
    presentation = coxeter_presentation(data.planes)
    bad = sum(1 for r in presentation.relators
              if not phi_eval(r, data).is_identity())
    checks.append(Check("relator-images-trivial", FAIL if bad else PASS,
                        f"{bad} of {len(presentation.relators)} relators survive"))

    anchors = (
        ("6", Permutation.transposition(18, 2, 3), FiberElement()),
        ("1", Permutation.transposition(18, 2, 7), parse_fiber("1_7- 1_2")),
        ("7", Permutation.transposition(18, 2, 6), parse_fiber("7_6- 7_2")),
    )
    for sym, perm, fiber in anchors:
        image = phi_eval((Letter(sym),), data)
        ok = image.perm == perm and image.fiber == fiber
        checks.append(Check(f"anchor-image-{sym}", PASS if ok else FAIL,
                            f"{image.perm.cycle_string()} {format_fiber(image.fiber)}"))

    if table is None:
        table = load_substitution_table()
    mismatched = [target for target, expansion in table
                  if phi_eval((Letter(target[:-1], True) if target.endswith("'")
                               else Letter(target),), data).perm
                  != phi_eval(expansion, data).perm]
    checks.append(Check("substitution-permutation-consistency",
                        FAIL if mismatched else PASS,
                        f"{len(table)} entries, {len(mismatched)} mismatched"))
    return checks
