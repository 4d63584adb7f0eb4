"""Finitely presented groups and length-reduction rewriting.

A presentation carries an ordered alphabet of generator names, a relator
list, a set of order-two generators, and a set of commuting generator
pairs.  The three rewriting passes (trivial collapse, seeded overlap
shortening, generator elimination) all return a new presentation plus a
log that can be replayed to reproduce the output exactly.
"""

from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .rng import DEFAULT_SEED, SplitMix64
from .words import (
    Letter,
    Word,
    canonical_cyclic,
    cyclic_reduce,
    format_word,
    invert,
    involutory_collapse,
    parse_letter,
    parse_word,
    reduce,
    rotations,
    sandwich_collapse,
)

ORDER_TWO = "order-two"
COMMUTING_CONJUGATES = "commuting-conjugates"
ORDER_THREE_PRODUCT = "order-three-product"
PRIME_CONJUGATE = "prime-conjugate"
OTHER = "other"


class Presentation:
    """Immutable presentation value; relators are normalized on entry."""

    __slots__ = ("alphabet", "relators", "involutory", "commuting")

    def __init__(self, alphabet: Iterable[str], relators: Iterable[Sequence[Letter]] = (),
                 involutory: Iterable[str] = (), commuting: Iterable[FrozenSet[str]] = ()):
        names = tuple(alphabet)
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for name in names:
            letter = parse_letter(name)
            if letter.inv or letter.key() != name:
                raise ValueError(f"bad generator name {name!r}")
        invol = frozenset(involutory)
        if not invol <= set(names):
            raise ValueError("involutory set mentions unknown generators")
        comm = frozenset(frozenset(pair) for pair in commuting)
        for pair in comm:
            if len(pair) != 2 or not pair <= set(names):
                raise ValueError(f"bad commuting pair {sorted(pair)}")
        known = set(names)
        rels = tuple(involutory_collapse(r, invol) for r in relators)
        for r in rels:
            for letter in r:
                if letter.key() not in known:
                    raise ValueError(f"relator uses unknown generator {letter.key()!r}")
        self.alphabet = names
        self.relators = rels
        self.involutory = invol
        self.commuting = comm

    def evolve(self, alphabet=None, relators=None, involutory=None, commuting=None) -> "Presentation":
        return Presentation(
            self.alphabet if alphabet is None else alphabet,
            self.relators if relators is None else relators,
            self.involutory if involutory is None else involutory,
            self.commuting if commuting is None else commuting,
        )

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def effective_relators(self) -> Tuple[Word, ...]:
        """Relators plus the implied order-two squares and commutators."""
        out = list(self.relators)
        for name in sorted(self.involutory):
            letter = parse_letter(name)
            out.append((letter, letter))
        for pair in sorted(map(sorted, self.commuting)):
            a, b = parse_letter(pair[0]), parse_letter(pair[1])
            out.append((a, b, a.inverse(), b.inverse()))
        return tuple(out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Presentation)
                and self.alphabet == other.alphabet
                and self.relators == other.relators
                and self.involutory == other.involutory
                and self.commuting == other.commuting)

    def __repr__(self) -> str:
        return f"Presentation({len(self.alphabet)} gens, {len(self.relators)} relators)"


class LogEntry(NamedTuple):
    rule: str
    index: int
    before: Word
    after: Word
    round_no: int


class RewriteLog:
    """Ordered rewrite record; replaying it reproduces the output."""

    def __init__(self, entries: Iterable[LogEntry] = ()):
        self.entries: List[LogEntry] = list(entries)

    def add(self, rule: str, index: int, before: Word, after: Word, round_no: int = 0) -> None:
        self.entries.append(LogEntry(rule, index, tuple(before), tuple(after), round_no))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def replay(p: Presentation, log: RewriteLog) -> Presentation:
    relators = list(p.relators)
    alphabet = list(p.alphabet)
    involutory = set(p.involutory)
    commuting = set(p.commuting)
    for entry in log:
        if entry.rule == "remove-generator":
            name = entry.before[0].key()
            alphabet.remove(name)
            involutory.discard(name)
            commuting = {pair for pair in commuting if name not in pair}
        elif entry.after == () and entry.rule in ("empty", "dedup"):
            del relators[entry.index]
        else:
            relators[entry.index] = entry.after
    return Presentation(alphabet, relators, involutory, commuting)


def _is_conjugated_generator(word: Word, involutory: FrozenSet[str]) -> bool:
    """u g u^-1 as a word: odd length, mirror-inverse around the center."""
    n = len(word)
    if n % 2 == 0 or n == 0:
        return False
    for i in range(n // 2):
        a, b = word[i], word[n - 1 - i]
        if b == a.inverse():
            continue
        if a == b and a.key() in involutory:
            continue
        return False
    return True


def _two_conjugate_split(word: Word, invol: FrozenSet[str]):
    for la in range(1, len(word), 2):
        lb = len(word) - la
        if lb < 1 or lb % 2 == 0:
            continue
        a, b = word[:la], word[la:]
        if _is_conjugated_generator(a, invol) and _is_conjugated_generator(b, invol):
            yield a, b


def classify_relator(r: Sequence[Letter], p: Presentation) -> str:
    invol = p.involutory
    w = cyclic_reduce(r, invol)
    if len(w) == 2 and w[1] == w[0]:
        return ORDER_TWO
    forms = list(rotations(w)) + list(rotations(invert(w)))
    for rot in forms:
        n = len(rot)
        if n >= 4 and n % 4 == 0:
            for a, b in _two_conjugate_split(rot[: n // 2], invol):
                c, d = rot[n // 2 : n // 2 + len(a)], rot[n // 2 + len(a):]
                if (c, d) == (a, b) or (c, d) == (invert(a), invert(b)):
                    return COMMUTING_CONJUGATES
    for rot in forms:
        n = len(rot)
        if n >= 6 and n % 3 == 0:
            third = rot[: n // 3]
            if rot == third * 3 and any(True for _ in _two_conjugate_split(third, invol)):
                return ORDER_THREE_PRODUCT
    for rot in forms:
        if len(rot) >= 2 and rot[0].primed and not rot[0].inv:
            tail = rot[1:]
            if _is_conjugated_generator(tail, invol):
                center = tail[len(tail) // 2]
                if center.sym == rot[0].sym and not center.primed:
                    return PRIME_CONJUGATE
    return OTHER


def _collapse(word: Word, p: Presentation) -> Word:
    w = sandwich_collapse(word, p.commuting, p.involutory)
    return cyclic_reduce(w, p.involutory)


def trivial_simplify(p: Presentation) -> Tuple[Presentation, RewriteLog]:
    log = RewriteLog()
    relators = list(p.relators)
    for i, r in enumerate(relators):
        collapsed = _collapse(r, p)
        if collapsed != r:
            log.add("collapse", i, r, collapsed)
            relators[i] = collapsed
    seen = set()
    i = 0
    while i < len(relators):
        r = relators[i]
        if not r:
            log.add("empty", i, r, ())
            del relators[i]
            continue
        canon = canonical_cyclic(r, p.involutory)
        if canon in seen:
            log.add("dedup", i, r, ())
            del relators[i]
            continue
        seen.add(canon)
        i += 1
    return p.evolve(relators=relators), log


def _rotation_forms(word: Word) -> List[Word]:
    forms = list(rotations(word))
    forms.extend(rotations(invert(word)))
    return forms


def _common_split(a: Word, b: Word) -> Optional[Tuple[Word, Word, Word]]:
    """Longest w with a ~ w w1 and b ~ w w2 over rotations and inversions."""
    best = None
    best_len = 0
    for ra in _rotation_forms(a):
        for rb in _rotation_forms(b):
            k = 0
            limit = min(len(ra), len(rb))
            while k < limit and ra[k] == rb[k]:
                k += 1
            if k > best_len:
                best_len = k
                best = (ra[:k], ra[k:], rb[k:])
    return best


def overlap_shorten(p: Presentation, seed: int = DEFAULT_SEED, max_rounds: int = 100,
                    sandwich_every: int = 3) -> Tuple[Presentation, RewriteLog]:
    """Seeded pairwise shortening by shared subwords.

    For each relator pair written w w1 = w w2 = 1 with w a maximal shared
    subword, the longer side is rewritten to w1^-1 w2 when that shortens
    it, and with probability one half when lengths tie.  Accepted rewrites
    are collected against a fixed snapshot per round and applied together,
    so the result depends only on the seed.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    rng = SplitMix64(seed)
    log = RewriteLog()
    relators = list(p.relators)

    def drop_empties(round_no: int) -> bool:
        dropped = False
        i = 0
        while i < len(relators):
            if not relators[i]:
                log.add("empty", i, relators[i], (), round_no)
                del relators[i]
                dropped = True
            else:
                i += 1
        return dropped

    for round_no in range(1, max_rounds + 1):
        changed = False
        if sandwich_every and round_no % sandwich_every == 0:
            for i, r in enumerate(relators):
                collapsed = _collapse(r, p)
                if collapsed != r:
                    log.add("sandwich", i, r, collapsed, round_no)
                    relators[i] = collapsed
                    changed = True
            changed |= drop_empties(round_no)
        order = sorted(range(len(relators)), key=lambda i: (len(relators[i]), relators[i]))
        planned: Dict[int, Word] = {}
        for pos_a in range(len(order)):
            for pos_b in range(pos_a + 1, len(order)):
                ia, ib = order[pos_a], order[pos_b]
                split = _common_split(relators[ia], relators[ib])
                if split is None or not split[0]:
                    continue
                w, w1, w2 = split
                for target, mine, other in ((ib, w2, w1), (ia, w1, w2)):
                    if target in planned:
                        continue
                    if len(w) > len(other) or (len(w) == len(other) and rng.coin()):
                        new_word = cyclic_reduce(reduce(invert(other) + mine), p.involutory)
                        if new_word != relators[target]:
                            planned[target] = new_word
                            break
        for target in sorted(planned):
            log.add("overlap", target, relators[target], planned[target], round_no)
            relators[target] = planned[target]
            changed = True
        changed |= drop_empties(round_no)
        if not changed:
            break
    return p.evolve(relators=relators), log


def eliminate_generator(p: Presentation, g: str, expr: Sequence[Letter]) -> Tuple[Presentation, RewriteLog]:
    """Tietze elimination of g, substituting expr for every occurrence."""
    if g not in p.alphabet:
        raise ValueError(f"{g!r} is not a generator")
    expr = tuple(expr)
    if any(letter.key() == g for letter in expr):
        raise ValueError("replacement expression mentions the eliminated generator")
    expr_inv = invert(expr)
    log = RewriteLog()
    relators = list(p.relators)
    for i, r in enumerate(relators):
        if not any(letter.key() == g for letter in r):
            continue
        pieces: List[Letter] = []
        for letter in r:
            if letter.key() == g:
                pieces.extend(expr_inv if letter.inv else expr)
            else:
                pieces.append(letter)
        new_word = involutory_collapse(pieces, p.involutory)
        log.add("substitute", i, r, new_word)
        relators[i] = new_word
    i = 0
    while i < len(relators):
        if not relators[i]:
            log.add("empty", i, relators[i], ())
            del relators[i]
        else:
            i += 1
    log.add("remove-generator", -1, (parse_letter(g),), ())
    out = Presentation(
        tuple(name for name in p.alphabet if name != g),
        relators,
        p.involutory - {g},
        {pair for pair in p.commuting if g not in pair},
    )
    return out, log


def apply_substitution_table(w: Sequence[Letter], table: Sequence[Tuple[str, Sequence[Letter]]],
                             step_cap: int = 100) -> Word:
    """Expand w through the table until no domain symbol remains.

    Entries may reference symbols defined elsewhere in the table; each
    entry is first resolved to a fixed point, so listing order does not
    matter.  A cyclic table is reported with the offending symbol chain.
    """
    domain = {name: tuple(expr) for name, expr in table}
    if len(domain) != len(table):
        raise ValueError("duplicate table entries")

    resolved: Dict[str, Word] = {}
    resolving: List[str] = []

    def resolve(name: str) -> Word:
        if name in resolved:
            return resolved[name]
        if name in resolving:
            chain = resolving[resolving.index(name):] + [name]
            raise ValueError("cyclic substitution table: " + " -> ".join(chain))
        resolving.append(name)
        word = domain[name]
        for _ in range(step_cap):
            if not any(letter.key() in domain for letter in word):
                break
            out: List[Letter] = []
            for letter in word:
                if letter.key() in domain:
                    body = resolve(letter.key())
                    out.extend(invert(body) if letter.inv else body)
                else:
                    out.append(letter)
            word = tuple(out)
        else:
            raise ValueError(f"substitution of {name!r} did not stabilize within {step_cap} steps")
        resolving.pop()
        resolved[name] = word
        return word

    out: List[Letter] = []
    for letter in w:
        if letter.key() in domain:
            body = resolve(letter.key())
            out.extend(invert(body) if letter.inv else body)
        else:
            out.append(letter)
    return reduce(out)


def parse_presentation(text: str) -> Presentation:
    alphabet: List[str] = []
    relators: List[Word] = []
    involutory: List[str] = []
    invol_all = False
    commuting: List[FrozenSet[str]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        head = head.strip()
        rest = rest.strip()
        if head == "gens":
            alphabet.extend(rest.split())
        elif head == "invol":
            if rest == "all":
                invol_all = True
            else:
                involutory.extend(rest.split())
        elif head == "comm":
            pair = rest.split()
            if len(pair) != 2:
                raise ValueError(f"comm line needs two symbols: {raw!r}")
            commuting.append(frozenset(pair))
        elif head == "rel":
            relators.append(parse_word(rest))
        else:
            raise ValueError(f"unknown directive {head!r}")
    if invol_all:
        involutory = list(alphabet)
    return Presentation(alphabet, relators, involutory, commuting)


def format_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.alphabet)]
    if p.involutory == set(p.alphabet) and p.alphabet:
        lines.append("invol: all")
    elif p.involutory:
        lines.append("invol: " + " ".join(sorted(p.involutory)))
    for pair in sorted(tuple(sorted(pair)) for pair in p.commuting):
        lines.append(f"comm: {pair[0]} {pair[1]}")
    for r in p.relators:
        lines.append("rel: " + format_word(r))
    return "\n".join(lines) + "\n"


class CorpusEntry(NamedTuple):
    name: str
    order: int
    eliminate: Optional[Tuple[str, Word]]
    presentation: Presentation


def load_corpus(directory: Optional[str] = None) -> List[CorpusEntry]:
    """Bundled small-group presentations with declared orders.

    Each file records the group order and, where present, a witness that
    one generator equals a word in the others, so the rewriting passes
    have something real to remove.
    """
    if directory is None:
        from importlib import resources
        root = resources.files("coxcover").joinpath("assets") / "corpus"
        paths = sorted(root.iterdir(), key=lambda entry: entry.name)
        texts = [(path.name, path.read_text()) for path in paths
                 if path.name.endswith(".pres")]
    else:
        import os
        names = sorted(n for n in os.listdir(directory) if n.endswith(".pres"))
        texts = []
        for name in names:
            with open(os.path.join(directory, name), encoding="utf-8") as fh:
                texts.append((name, fh.read()))
    out: List[CorpusEntry] = []
    for name, text in texts:
        order = 0
        eliminate: Optional[Tuple[str, Word]] = None
        for raw in text.splitlines():
            line = raw.strip()
            if line.startswith("# order:"):
                order = int(line.split(":", 1)[1])
            elif line.startswith("# eliminate:"):
                gen_name, _, expr = line.split(":", 1)[1].strip().partition(" ")
                eliminate = (gen_name, parse_word(expr))
        if not order:
            raise ValueError(f"corpus file {name} lacks an order line")
        out.append(CorpusEntry(name[:-5], order, eliminate, parse_presentation(text)))
    return out
