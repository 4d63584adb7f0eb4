"""Free-group words over a symbolic alphabet.

A letter is a symbol name plus two flags: a prime mark (a distinct
generator, written ``17'``) and an inverse mark (written ``13-``).  Words
are tuples of letters, kept in reduced form by the functions below.
"""

from typing import FrozenSet, Iterable, NamedTuple, Sequence, Set, Tuple


class Letter(NamedTuple):
    sym: str
    primed: bool = False
    inv: bool = False

    def inverse(self) -> "Letter":
        return Letter(self.sym, self.primed, not self.inv)

    def key(self) -> str:
        """Name without the inverse mark; identifies the generator."""
        return self.sym + ("'" if self.primed else "")

    def __str__(self) -> str:
        return self.key() + ("-" if self.inv else "")


Word = Tuple[Letter, ...]


def parse_letter(token: str) -> Letter:
    text = token
    inv = text.endswith("-")
    if inv:
        text = text[:-1]
    primed = text.endswith("'")
    if primed:
        text = text[:-1]
    if not text or "'" in text or "-" in text or " " in text:
        raise ValueError(f"bad letter token {token!r}")
    return Letter(text, primed, inv)


def parse_word(text: str) -> Word:
    return tuple(parse_letter(tok) for tok in text.split())


def format_word(word: Iterable[Letter]) -> str:
    return " ".join(str(letter) for letter in word)


def invert(word: Sequence[Letter]) -> Word:
    return tuple(letter.inverse() for letter in reversed(word))


def reduce(word: Iterable[Letter]) -> Word:
    """Free reduction: cancel adjacent x x- pairs."""
    out: list = []
    for letter in word:
        if out and out[-1] == letter.inverse():
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def multiply(*words: Sequence[Letter]) -> Word:
    combined: list = []
    for w in words:
        combined.extend(w)
    return reduce(combined)


def conjugate(word: Sequence[Letter], by: Sequence[Letter]) -> Word:
    """by . word . by^-1"""
    return multiply(by, word, invert(by))


def commutator(a: Sequence[Letter], b: Sequence[Letter]) -> Word:
    return multiply(a, b, invert(a), invert(b))


def involutory_collapse(word: Iterable[Letter], involutory: Set[str]) -> Word:
    """Reduce treating every generator named in ``involutory`` as order two.

    Inverse marks on involutory letters are dropped (x- is x), then both
    x x- and x x cancellations apply.  Names are letter keys, e.g. "17'".
    """
    out: list = []
    for letter in word:
        if letter.inv and letter.key() in involutory:
            letter = Letter(letter.sym, letter.primed, False)
        if out and (out[-1] == letter.inverse() or (out[-1] == letter and letter.key() in involutory)):
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def letters_commute(a: Letter, b: Letter, commutes: Set[FrozenSet[str]]) -> bool:
    if a.key() == b.key():
        return True
    return frozenset((a.key(), b.key())) in commutes


def sandwich_collapse(word: Sequence[Letter], commutes: Set[FrozenSet[str]],
                      involutory: Set[str] = frozenset()) -> Word:
    """Cancel x ... x- pairs whose interior commutes letterwise with x.

    ``commutes`` holds frozensets of commuting generator-key pairs.  The
    scan is deterministic: leftmost x first, nearest matching partner.
    """
    letters = list(involutory_collapse(word, involutory) if involutory else reduce(word))
    changed = True
    while changed:
        changed = False
        for i in range(len(letters)):
            for j in range(i + 1, len(letters)):
                a, b = letters[i], letters[j]
                cancels = b == a.inverse() or (b == a and a.key() in involutory)
                if cancels and all(letters_commute(a, mid, commutes) for mid in letters[i + 1:j]):
                    del letters[j]
                    del letters[i]
                    letters = list(involutory_collapse(letters, involutory) if involutory else reduce(letters))
                    changed = True
                    break
                if not letters_commute(a, b, commutes):
                    break
            if changed:
                break
    return tuple(letters)


def rotations(word: Sequence[Letter]) -> Tuple[Word, ...]:
    w = tuple(word)
    if not w:
        return (w,)
    return tuple(w[i:] + w[:i] for i in range(len(w)))


def cyclic_reduce(word: Sequence[Letter], involutory: Set[str] = frozenset()) -> Word:
    w = involutory_collapse(word, involutory) if involutory else reduce(word)
    while len(w) >= 2:
        head, tail = w[0], w[-1]
        if tail == head.inverse() or (tail == head and head.key() in involutory):
            w = w[1:-1]
            w = involutory_collapse(w, involutory) if involutory else reduce(w)
        else:
            break
    return w


def canonical_cyclic(word: Sequence[Letter], involutory: Set[str] = frozenset()) -> Word:
    """Least rotation over the word and its inverse; detects duplicates."""
    w = cyclic_reduce(word, involutory)
    candidates = list(rotations(w)) + list(rotations(invert(w)))
    return min(candidates)
