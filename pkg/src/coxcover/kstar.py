"""Exact normal-form arithmetic in three nilpotent groups.

The big group carries a central subgroup generated by fifteen bookkeeping
symbols plus, per index i in 1..18, five letters ordered c < 7 < 1 < 10 < 4.
Letters at distinct indices commute exactly; within an index, moving a
letter left past a higher one emits central corrections plus lower letters,
so every word has a unique normal form theta * prod_i c^a 7^b 1^d 10^e 4^f.
The same machinery with the central part dropped drives the five-generator
group H, and index-difference elements generate the kernel K of the
abelianization map.
"""

from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .graphs import SpanningData
from .presentation import apply_substitution_table
from .rng import DEFAULT_SEED, SplitMix64
from .semidirect import (
    AbVector,
    FiberElement,
    OMEGA,
    Permutation,
    ab as fiber_ab,
    phi_eval,
)
from .torus import (
    FAIL,
    PASS,
    WARN,
    Check,
    load_substitution_table,
    load_torus_data,
    projective_input_word,
    simple_alphabet,
)
from .words import Letter, involutory_collapse
from .zmodule import (
    AbelianInvariants,
    invariants_of_quotient,
    left_kernel,
    smith_normal_form,
)

N_INDICES = 18

SYMBOL_ORDER = ("c", "7", "1", "10", "4")
_POS = {sym: pos for pos, sym in enumerate(SYMBOL_ORDER)}

FREE_THETA = ("15", "17", "23", "2", "3", "1,7", "10,1", "4,1", "4,7", "4,10")
TORSION_THETA = ("1,c", "7,c", "10,c", "10,7", "4,c")
THETA_NAMES = FREE_THETA + TORSION_THETA

_ZERO_ROW = (0, 0, 0, 0, 0)
_ZERO_ROWS = (_ZERO_ROW,) * N_INDICES

# Derived letters expand to a central symbol and primitive letters before
# collection; the pair (13, 4) defines c, so 13 itself expands via c.
_DERIVED = {
    "13": (None, (("c", False), ("4", True))),
    "15": ("15", (("7", True), ("4", False))),
    "17": ("17", (("10", False), ("7", False))),
    "23": ("23", (("c", False), ("7", True))),
    "2": ("2", (("c", False), ("c", False), ("7", True), ("10", True), ("1", False))),
    "3": ("3", (("c", False), ("7", True), ("10", True), ("1", False))),
}


class ThetaVector:
    """Canonical coordinates of the central subgroup.

    Ten free exponents (order matches FREE_THETA) and three torsion
    residues mod 3, 3, 12.  Raw 15-symbol exponent vectors convert via
    from_raw, which kills exactly the five defining torsion relations.
    """

    __slots__ = ("free", "torsion")

    def __init__(self, free: Sequence[int] = (0,) * 10,
                 torsion: Sequence[int] = (0, 0, 0)):
        self.free = tuple(free)
        r3a, r3b, r12 = torsion
        self.torsion = (r3a % 3, r3b % 3, r12 % 12)
        if len(self.free) != 10:
            raise ValueError("expected 10 free coordinates")

    @classmethod
    def from_raw(cls, raw: Dict[str, int]) -> "ThetaVector":
        free = tuple(raw.get(name, 0) for name in FREE_THETA)
        a = raw.get("1,c", 0)
        b = raw.get("10,7", 0) + 4 * raw.get("10,c", 0)
        return cls(free, (raw.get("4,c", 0), a, 2 * a + b))

    @classmethod
    def unit(cls, name: str, exp: int = 1) -> "ThetaVector":
        if name not in THETA_NAMES:
            raise ValueError(f"unknown central symbol {name!r}")
        return cls.from_raw({name: exp})

    def multiply(self, other: "ThetaVector") -> "ThetaVector":
        return ThetaVector(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)))

    def inverse(self) -> "ThetaVector":
        return ThetaVector(tuple(-a for a in self.free),
                           tuple(-a for a in self.torsion))

    def power(self, n: int) -> "ThetaVector":
        return ThetaVector(tuple(n * a for a in self.free),
                           tuple(n * a for a in self.torsion))

    def is_identity(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ThetaVector)
                and self.free == other.free and self.torsion == other.torsion)

    def __hash__(self) -> int:
        return hash((self.free, self.torsion))

    def __repr__(self) -> str:
        return f"ThetaVector({self.free}, {self.torsion})"


class KStarElement:
    __slots__ = ("theta", "exps")

    def __init__(self, theta: ThetaVector = ThetaVector(),
                 exps: Sequence[Sequence[int]] = _ZERO_ROWS):
        self.theta = theta
        self.exps = tuple(tuple(row) for row in exps)
        if len(self.exps) != N_INDICES or any(len(r) != 5 for r in self.exps):
            raise ValueError("expected an 18 x 5 exponent matrix")

    @classmethod
    def identity(cls) -> "KStarElement":
        return cls()

    def is_identity(self) -> bool:
        return self.theta.is_identity() and self.exps == _ZERO_ROWS

    def __eq__(self, other) -> bool:
        return (isinstance(other, KStarElement)
                and self.theta == other.theta and self.exps == other.exps)

    def __hash__(self) -> int:
        return hash((self.theta, self.exps))

    def __repr__(self) -> str:
        return f"KStarElement({self.theta!r}, nonzero={self.support()})"

    def support(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i, row in enumerate(self.exps) if row != _ZERO_ROW)


class GeneratorRef(NamedTuple):
    sym: str
    index: int
    inv: bool = False


def _zero_raw() -> Dict[str, int]:
    return {name: 0 for name in THETA_NAMES}


def theta_relation_rows() -> List[List[int]]:
    """Defining torsion relations as rows over the THETA_NAMES basis."""
    index = {name: k for k, name in enumerate(THETA_NAMES)}

    def row(pairs) -> List[int]:
        out = [0] * len(THETA_NAMES)
        for name, coef in pairs:
            out[index[name]] = coef
        return out

    return [
        row([("10,c", 1), ("10,7", -4)]),
        row([("10,7", 6), ("1,c", -3)]),
        row([("7,c", 1)]),
        row([("4,c", 3)]),
        row([("1,c", 6)]),
    ]


def _append_run(row: List[int], pos: int, m: int, raw: Dict[str, int]) -> None:
    """Multiply the normal form `row` on the right by letter^m.

    Crossing emissions are closed forms in the run exponents, so this is
    exact for any integer m.  Emitted lower letters are folded into their
    runs immediately, crossing whatever still separates them.
    """
    if m == 0:
        return
    a, b, d, e, f = row
    if pos == 4:
        row[4] = f + m
        return
    if pos == 3:
        if f:
            raw["4,10"] += f * m
            raw["4,c"] += 3 * m * (f * (f - 1) // 2)
            raw["10,c"] += 3 * f * (m * (m - 1) // 2)
            g = 3 * f * m
            raw["10,c"] += e * g
            raw["1,c"] += d * g
            raw["7,c"] += b * g
            row[0] = a + g
        row[3] = e + m
        return
    if pos == 2:
        if f:
            raw["4,1"] += f * m
            raw["4,c"] += -f * (f - 1) * m
            raw["4,7"] += f * (f - 1) * m
            raw["1,c"] += -f * m * (m - 1) - f * m * (m - 1) * (m - 2)
            raw["1,7"] += f * m * (m - 1)
            g = -2 * f * m - 3 * f * m * (m - 1)
            delta = 2 * f * m
            raw["10,c"] += e * g
            raw["1,c"] += d * g
            raw["7,c"] += b * g
            row[0] += g
            raw["10,7"] += e * delta
            raw["1,7"] += d * delta
            raw["1,c"] += -3 * delta * (d * (d - 1) // 2)
            raw["7,c"] += -3 * d * (b * delta + delta * (delta - 1) // 2)
            row[0] += -3 * d * delta
            row[1] = b + delta
        raw["10,1"] += e * m
        row[2] = d + m
        return
    if pos == 1:
        raw["4,7"] += f * m
        raw["10,7"] += e * m
        raw["1,7"] += d * m
        raw["1,c"] += -3 * m * (d * (d - 1) // 2)
        raw["7,c"] += -3 * d * (b * m + m * (m - 1) // 2)
        row[0] = a - 3 * d * m
        row[1] = b + m
        return
    raw["4,c"] += f * m
    raw["10,c"] += e * m
    raw["1,c"] += d * m
    raw["7,c"] += b * m
    row[0] = a + m


def _expand_ref(ref) -> Tuple[Dict[str, int], List[Tuple[str, int, bool]]]:
    sym, index, inv = ref
    if not 1 <= index <= N_INDICES:
        raise ValueError(f"index out of range: {index}")
    if sym in _POS:
        return {}, [(sym, index, inv)]
    if sym not in _DERIVED:
        raise ValueError(f"unknown generator symbol {sym!r}")
    theta_name, letters = _DERIVED[sym]
    theta = {theta_name: -1 if inv else 1} if theta_name else {}
    if inv:
        letters = tuple((s, not v) for s, v in reversed(letters))
    return theta, [(s, index, v) for s, v in letters]


def _raw_collect(word, raw: Dict[str, int], rows: List[List[int]]) -> None:
    for ref in word:
        theta, letters = _expand_ref(ref)
        for name, exp in theta.items():
            raw[name] += exp
        for sym, index, inv in letters:
            _append_run(rows[index - 1], _POS[sym], -1 if inv else 1, raw)


def kstar_collect(word: Iterable, theta: Optional[ThetaVector] = None) -> KStarElement:
    """Collect a word of (sym, index, inv) letters into normal form."""
    raw = _zero_raw()
    rows = [[0] * 5 for _ in range(N_INDICES)]
    _raw_collect(word, raw, rows)
    out = ThetaVector.from_raw(raw)
    if theta is not None:
        out = theta.multiply(out)
    return KStarElement(out, rows)


def _merge_rows(rows: List[List[int]], other: Sequence[Sequence[int]],
                raw: Dict[str, int]) -> None:
    for i, src in enumerate(other):
        if src == _ZERO_ROW:
            continue
        row = rows[i]
        for pos in range(5):
            _append_run(row, pos, src[pos], raw)


def kstar_multiply(x: KStarElement, y: KStarElement) -> KStarElement:
    raw = _zero_raw()
    rows = [list(r) for r in x.exps]
    _merge_rows(rows, y.exps, raw)
    theta = x.theta.multiply(y.theta).multiply(ThetaVector.from_raw(raw))
    return KStarElement(theta, rows)


def kstar_invert(x: KStarElement) -> KStarElement:
    raw = _zero_raw()
    rows = [[0] * 5 for _ in range(N_INDICES)]
    for i, src in enumerate(x.exps):
        if src == _ZERO_ROW:
            continue
        row = rows[i]
        for pos in (4, 3, 2, 1, 0):
            _append_run(row, pos, -src[pos], raw)
    theta = x.theta.inverse().multiply(ThetaVector.from_raw(raw))
    return KStarElement(theta, rows)


def kstar_commutator(x: KStarElement, y: KStarElement) -> KStarElement:
    return kstar_multiply(kstar_multiply(x, y),
                          kstar_multiply(kstar_invert(x), kstar_invert(y)))


def kstar_power(x: KStarElement, n: int) -> KStarElement:
    if n < 0:
        return kstar_power(kstar_invert(x), -n)
    out = KStarElement.identity()
    base = x
    while n:
        if n & 1:
            out = kstar_multiply(out, base)
        base = kstar_multiply(base, base)
        n >>= 1
    return out


def gen(sym: str, index: int, inv: bool = False) -> KStarElement:
    return kstar_collect([GeneratorRef(sym, index, inv)])


def theta_element(name: str, exp: int = 1) -> KStarElement:
    return KStarElement(ThetaVector.unit(name, exp))


def act_on_kstar(x: KStarElement, perm: Permutation) -> KStarElement:
    """Relabel indices: the row at i moves to perm(i)."""
    if perm.n != N_INDICES:
        raise ValueError("permutation size mismatch")
    rows = [None] * N_INDICES
    for i in range(1, N_INDICES + 1):
        rows[perm.apply(i) - 1] = x.exps[i - 1]
    return KStarElement(x.theta, rows)


def format_kstar(x: KStarElement) -> str:
    head = ("theta: " + " ".join(str(v) for v in x.theta.free)
            + " | " + " ".join(str(v) for v in x.theta.torsion))
    lines = [head]
    for i, (a, b, d, e, f) in enumerate(x.exps, start=1):
        lines.append(f"{i}: c^{a} 7^{b} 1^{d} 10^{e} 4^{f}")
    return "\n".join(lines) + "\n"


def parse_kstar(text: str) -> KStarElement:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0]
    if not head.startswith("theta:"):
        raise ValueError("expected a theta header line")
    free_text, _, torsion_text = head[len("theta:"):].partition("|")
    theta = ThetaVector([int(v) for v in free_text.split()],
                        [int(v) for v in torsion_text.split()])
    rows = []
    for ln in lines[1:]:
        _, _, body = ln.partition(":")
        rows.append(tuple(int(term.split("^")[1]) for term in body.split()))
    return KStarElement(theta, rows)


# ---------------------------------------------------------------------------
# Abelianization maps

_OMEGA_INDEX = {sym: i for i, sym in enumerate(OMEGA)}


def _ab_coords(pairs: Dict[str, int]) -> Tuple[int, ...]:
    out = [0] * len(OMEGA)
    for sym, coef in pairs.items():
        out[_OMEGA_INDEX[sym]] = coef
    return tuple(out)


# Images of the central symbols: each is forced by linearity from the
# letter images and the defining expansion that introduces the symbol.
_AB_THETA = {
    "15": _ab_coords({"15": 1, "7": 1, "4": -1}),
    "17": _ab_coords({"17": 1, "7": -1, "10": -1}),
    "23": _ab_coords({"23": 1, "13": -1, "4": -1, "7": 1}),
    "2": _ab_coords({"2": 1, "13": -2, "4": -2, "7": 1, "10": 1, "1": -1}),
    "3": _ab_coords({"3": 1, "13": -1, "4": -1, "7": 1, "10": 1, "1": -1}),
    "1,7": _ab_coords({"13": 3, "4": 3}),
    "10,1": _ab_coords({}),
    "4,1": _ab_coords({"13": 2, "4": 2, "7": -2}),
    "4,7": _ab_coords({}),
    "4,10": _ab_coords({"13": -3, "4": -3}),
}

_AB_SYMBOL = (
    _ab_coords({"13": 1, "4": 1}),   # c
    _ab_coords({"7": 1}),            # 7
    _ab_coords({"1": 1}),            # 1
    _ab_coords({"10": 1}),           # 10
    _ab_coords({"4": 1}),            # 4
)


def ab_kstar(x: KStarElement) -> AbVector:
    total = [0] * len(OMEGA)
    for name, coef in zip(FREE_THETA, x.theta.free):
        if coef:
            vec = _AB_THETA[name]
            for k in range(len(OMEGA)):
                total[k] += coef * vec[k]
    for row in x.exps:
        for pos in range(5):
            coef = row[pos]
            if coef:
                vec = _AB_SYMBOL[pos]
                for k in range(len(OMEGA)):
                    total[k] += coef * vec[k]
    return AbVector(total)


def in_K(x: KStarElement) -> bool:
    return ab_kstar(x).is_zero()


def embed(f: FiberElement) -> KStarElement:
    """Rewrite a fiber element over the ten indexed symbols and collect."""
    refs = []
    for index in f.support():
        for letter in f.word_at(index):
            refs.append(GeneratorRef(letter.sym, index, letter.inv))
    return kstar_collect(refs)


def kstar_abelianization() -> AbelianInvariants:
    """Invariants of the full group modulo its commutator subgroup."""
    n_theta = len(THETA_NAMES)
    symbols = ("c", "7", "1", "10", "4", "2", "3", "15", "17", "23")
    col = {}
    for i in range(N_INDICES):
        for j, sym in enumerate(symbols):
            col[(sym, i)] = n_theta + 10 * i + j
    width = n_theta + 10 * N_INDICES
    t_col = {name: THETA_NAMES.index(name) for name in THETA_NAMES}

    def row(theta: Dict[str, int], letters: Dict[Tuple[str, int], int]) -> List[int]:
        out = [0] * width
        for name, v in theta.items():
            out[t_col[name]] = v
        for key, v in letters.items():
            out[col[key]] = v
        return out

    rows = []
    for i in range(N_INDICES):
        rows.append(row({"4,c": 1}, {}))
        rows.append(row({"4,7": 1}, {}))
        rows.append(row({"4,10": 1}, {("c", i): 3}))
        rows.append(row({"4,1": 1}, {("c", i): -2, ("7", i): 2}))
        rows.append(row({"10,7": 1}, {}))
        rows.append(row({"1,7": 1}, {("c", i): -3}))
        rows.append(row({"7,c": 1}, {}))
        rows.append(row({"1,c": 1}, {}))
        rows.append(row({"10,c": 1}, {}))
        rows.append(row({"10,1": 1}, {}))
        rows.append(row({"15": 1}, {("15", i): -1, ("7", i): -1, ("4", i): 1}))
        rows.append(row({"17": 1}, {("17", i): -1, ("10", i): 1, ("7", i): 1}))
        rows.append(row({"23": 1}, {("23", i): -1, ("c", i): 1, ("7", i): -1}))
        rows.append(row({"2": 1}, {("2", i): -1, ("c", i): 2, ("7", i): -1,
                                   ("10", i): -1, ("1", i): 1}))
        rows.append(row({"3": 1}, {("3", i): -1, ("c", i): 1, ("7", i): -1,
                                   ("10", i): -1, ("1", i): 1}))
    rows.append(row({"10,c": 1, "10,7": -4}, {}))
    rows.append(row({"10,7": 6, "1,c": -3}, {}))
    rows.append(row({"7,c": 1}, {}))
    rows.append(row({"4,c": 3}, {}))
    rows.append(row({"1,c": 6}, {}))
    return invariants_of_quotient(width, rows)


# ---------------------------------------------------------------------------
# The abelian subalgebra spanned by the central symbols and the c, 7 letters

_COORD_FREE = 10 + 2 * N_INDICES
_COORD_TORSION = (3, 3, 12)
_COORD_LEN = _COORD_FREE + 3


def subalgebra_coordinates(x: KStarElement) -> Optional[List[int]]:
    """Coordinates in Z^46 x Z/3 x Z/3 x Z/12, or None if x escapes."""
    vec = list(x.theta.free)
    sevens = []
    for row in x.exps:
        if row[2] or row[3] or row[4]:
            return None
        vec.append(row[0])
        sevens.append(row[1])
    vec.extend(sevens)
    vec.extend(x.theta.torsion)
    return vec


def _torsion_rows() -> List[List[int]]:
    rows = []
    for t, d in enumerate(_COORD_TORSION):
        r = [0] * _COORD_LEN
        r[_COORD_FREE + t] = d
        rows.append(r)
    return rows


def _subalgebra_invariants(gens: Sequence[Sequence[int]],
                           mods: Sequence[Sequence[int]] = ()) -> AbelianInvariants:
    """Invariants of <gens> inside the subalgebra modulo <mods>."""
    rel = _torsion_rows() + [list(m) for m in mods]
    g_all = [list(g) for g in gens] + [list(r) for r in rel]
    if not g_all:
        return AbelianInvariants(0)
    stacked = g_all + [list(r) for r in rel]
    pres = [r[:len(g_all)] for r in left_kernel(stacked)]
    return invariants_of_quotient(len(g_all), pres)


def _lattice_contains(rows: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """Integer membership of vec in the row span (torsion rows included)."""
    mat = [list(r) for r in rows] + _torsion_rows()
    diag, u, v = smith_normal_form(mat)
    cols = len(vec)
    w = [sum(vec[k] * v[k][j] for k in range(cols)) for j in range(cols)]
    for j in range(cols):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            if w[j] != 0:
                return False
        elif w[j] % d != 0:
            return False
    return True


def _dedup(vectors: Iterable[Sequence[int]]) -> List[List[int]]:
    seen = set()
    out = []
    for v in vectors:
        key = tuple(v)
        if any(key) and key not in seen:
            seen.add(key)
            out.append(list(v))
    return out


# ---------------------------------------------------------------------------
# Lower central series, center, centralizer

class LcsReport(NamedTuple):
    group: str
    invariants: Tuple[AbelianInvariants, AbelianInvariants, AbelianInvariants]
    nilpotency_class: int
    checks: List[Check]


def _pair_commutators() -> List[KStarElement]:
    out = []
    for i in range(1, N_INDICES + 1):
        for x in SYMBOL_ORDER:
            for y in SYMBOL_ORDER:
                if x != y:
                    out.append(kstar_commutator(gen(x, i), gen(y, i)))
    return out


def _bracket_with_generators(targets: Sequence[KStarElement]) -> List[KStarElement]:
    out = []
    for t in targets:
        indices = t.support() or (1,)
        for sym in SYMBOL_ORDER:
            for i in indices:
                out.append(kstar_commutator(gen(sym, i), t))
    return out


def lower_central_series(group: str = "K*") -> LcsReport:
    """Terms gamma_2..gamma_4 with invariants; class from the last nonzero.

    Pair commutators at one index realize the series generators for the
    kernel group too: cross-index letters commute exactly, so commutators
    of index-difference generators split into per-index pair commutators,
    and the difference patterns realize each of them individually.
    """
    if group == "H":
        return _h_lower_central_series()
    if group not in ("K*", "K", "K/p"):
        raise ValueError(f"unknown group {group!r}")
    checks: List[Check] = []
    mods = []
    if group == "K/p":
        p_vec = subalgebra_coordinates(projective_element())
        mods.append(p_vec)
    pair = _dedup_elements(_pair_commutators())
    gamma3 = _dedup_elements(_bracket_with_generators(pair))
    gamma4 = _dedup_elements(_bracket_with_generators(gamma3))

    escape = [t for t in pair + gamma3 + gamma4 if subalgebra_coordinates(t) is None]
    checks.append(Check("series-inside-abelian-subalgebra",
                        FAIL if escape else PASS,
                        f"{len(escape)} escapees"))

    def invs(elems: Sequence[KStarElement]) -> AbelianInvariants:
        vecs = _dedup(subalgebra_coordinates(t) for t in elems
                      if subalgebra_coordinates(t) is not None)
        return _subalgebra_invariants(vecs, mods)

    inv2 = invs(pair + gamma3)
    inv3 = invs(gamma3)
    inv4 = invs(gamma4)
    nontrivial = [not inv2.is_trivial(), not inv3.is_trivial(), not inv4.is_trivial()]
    klass = 1 + max([k + 1 for k, flag in enumerate(nontrivial) if flag], default=0)
    checks.append(Check("gamma4-trivial", PASS if inv4.is_trivial() else FAIL,
                        str(inv4)))
    checks.append(Check("nilpotency-class", PASS if klass == 3 else FAIL,
                        f"class {klass}"))
    return LcsReport(group, (inv2, inv3, inv4), klass, checks)


def _dedup_elements(elems: Iterable[KStarElement]) -> List[KStarElement]:
    seen = set()
    out = []
    for el in elems:
        if el.is_identity() or el in seen:
            continue
        seen.add(el)
        out.append(el)
    return out


class CenterReport(NamedTuple):
    generator_labels: Tuple[str, ...]
    invariants: AbelianInvariants
    checks: List[Check]


def _all_generators() -> List[KStarElement]:
    return [gen(sym, i) for sym in SYMBOL_ORDER for i in range(1, N_INDICES + 1)]


def center_kstar() -> CenterReport:
    checks: List[Check] = []
    everything = _all_generators()
    central = [theta_element(name) for name in THETA_NAMES]
    central += [kstar_power(gen("c", i), 6) for i in range(1, N_INDICES + 1)]
    labels = tuple(f"theta({name})" for name in THETA_NAMES) + tuple(
        f"c_{i}^6" for i in range(1, N_INDICES + 1))
    bad = sum(1 for z in central for g in everything
              if not kstar_commutator(z, g).is_identity())
    checks.append(Check("listed-generators-central", FAIL if bad else PASS,
                        f"{bad} failing commutators"))
    bad_powers = []
    for i in range(1, N_INDICES + 1):
        for k in range(1, 6):
            if kstar_commutator(kstar_power(gen("c", i), k), gen("1", i)).is_identity():
                bad_powers.append((i, k))
    checks.append(Check("small-c-powers-not-central",
                        FAIL if bad_powers else PASS,
                        f"{len(bad_powers)} unexpectedly central"))
    vecs = _dedup(v for v in (subalgebra_coordinates(z) for z in central)
                  if v is not None)
    invariants = _subalgebra_invariants(vecs)
    return CenterReport(labels, invariants, checks)


def _omega_difference(sym: str, alpha: int, beta: int) -> KStarElement:
    return kstar_collect([GeneratorRef(sym, alpha), GeneratorRef(sym, beta, True)])


def centralizer_of_K_check(seed: int = DEFAULT_SEED) -> List[Check]:
    checks: List[Check] = []
    c_hat = kstar_collect([GeneratorRef("c", i) for i in range(1, N_INDICES + 1)])
    rng = SplitMix64(seed)
    pairs = [(2, 5)]
    while len(pairs) < 20:
        a = rng.randrange(N_INDICES) + 1
        b = rng.randrange(N_INDICES) + 1
        if a != b:
            pairs.append((a, b))
    bad = sum(1 for sym in OMEGA for (a, b) in pairs
              if not kstar_commutator(c_hat, _omega_difference(sym, a, b)).is_identity())
    checks.append(Check("c-product-commutes-with-kernel", FAIL if bad else PASS,
                        f"{bad} failing pairs of {len(pairs) * len(OMEGA)}"))
    shifted = kstar_multiply(c_hat, theta_element("4,10", 6))
    checks.append(Check("shifted-c-product-in-kernel",
                        PASS if in_K(shifted) else FAIL,
                        str(ab_kstar(shifted))))
    lone_ok = kstar_commutator(gen("c", 1), _omega_difference("7", 2, 5)).is_identity()
    lone_bad = not kstar_commutator(gen("c", 1), _omega_difference("1", 1, 2)).is_identity()
    checks.append(Check("single-c-not-in-centralizer",
                        PASS if lone_ok and lone_bad else FAIL,
                        "commutes off-support, fails on-support"))
    return checks


# ---------------------------------------------------------------------------
# The projective element

def projective_element() -> KStarElement:
    theta = ThetaVector.unit("4,10", 3)
    theta = theta.multiply(ThetaVector.unit("4,c", 2))
    theta = theta.multiply(ThetaVector.unit("1,7", -3))
    theta = theta.multiply(ThetaVector.unit("1,c", 1))
    rows = ((1, 0, 0, 0, 0),) * N_INDICES
    return KStarElement(theta, rows)


def in_p_span(x: KStarElement) -> bool:
    """Membership in the cyclic group generated by the projective element."""
    p = projective_element()
    n = x.exps[0][0]
    return x == kstar_power(p, n)


def verify_p(seed: int = DEFAULT_SEED) -> List[Check]:
    checks: List[Check] = []
    p = projective_element()
    checks.append(Check("p-in-kernel", PASS if in_K(p) else FAIL, str(ab_kstar(p))))
    rows_equal = len(set(p.exps)) == 1
    rng = SplitMix64(seed)
    fixed = True
    for _ in range(10):
        images = list(range(1, N_INDICES + 1))
        rng.shuffle(images)
        if act_on_kstar(p, Permutation(images)) != p:
            fixed = False
    checks.append(Check("p-symmetric", PASS if rows_equal and fixed else FAIL,
                        "identical rows, fixed by sampled relabelings"))
    pairs = []
    while len(pairs) < 12:
        a = rng.randrange(N_INDICES) + 1
        b = rng.randrange(N_INDICES) + 1
        if a != b:
            pairs.append((a, b))
    bad = sum(1 for sym in OMEGA for (a, b) in pairs
              if not kstar_commutator(p, _omega_difference(sym, a, b)).is_identity())
    checks.append(Check("p-commutes-with-kernel", FAIL if bad else PASS,
                        f"{bad} failing pairs"))
    scaling = all(kstar_power(p, n).exps[0][0] == n for n in (-5, 2, 17))
    checks.append(Check("p-infinite-order", PASS if scaling else FAIL,
                        "letter exponents scale linearly with the power"))
    torsion_witness = theta_element("1,c", 3)
    checks.append(Check("torsion-witness-outside-p-span",
                        FAIL if in_p_span(torsion_witness) else PASS,
                        "order-2 central element is not a power of p"))
    return checks


class ProjectiveResult(NamedTuple):
    element: KStarElement
    word_length: int
    flipped_edge: Optional[str]
    checks: List[Check]


def _element_diff(got: KStarElement, want: KStarElement) -> str:
    parts = []
    for name, a, b in zip(FREE_THETA, got.theta.free, want.theta.free):
        if a != b:
            parts.append(f"theta[{name}] {a} != {b}")
    if got.theta.torsion != want.theta.torsion:
        parts.append(f"torsion {got.theta.torsion} != {want.theta.torsion}")
    for i in range(N_INDICES):
        for pos in range(5):
            a, b = got.exps[i][pos], want.exps[i][pos]
            if a != b:
                parts.append(f"{SYMBOL_ORDER[pos]}_{i + 1} {a} != {b}")
    return "; ".join(parts) if parts else "equal"


def _flip_orientation(data, edge_id: str):
    flipped = tuple((eid, beta, alpha) if eid == edge_id else (eid, alpha, beta)
                    for eid, alpha, beta in data.spanning.cycle_edges)
    return data._replace(spanning=SpanningData(data.spanning.tree_edges, flipped))


def evaluate_projective_word(directory: Optional[str] = None) -> ProjectiveResult:
    """Drive the bundled length-54 word through the whole pipeline."""
    data = load_torus_data(directory)
    table = load_substitution_table(directory)
    checks: List[Check] = []
    expanded = apply_substitution_table(projective_input_word(), table)
    collapsed = involutory_collapse(expanded, set(simple_alphabet()))
    checks.append(Check("substituted-word-length",
                        PASS if len(collapsed) == 3822 else FAIL,
                        f"{len(collapsed)} letters"))

    def run(graph_data) -> Tuple[Optional[KStarElement], bool]:
        image = phi_eval(collapsed, graph_data)
        if not image.perm.is_identity():
            return None, False
        return embed(image.fiber), True

    element, perm_ok = run(data)
    checks.append(Check("permutation-part-trivial", PASS if perm_ok else FAIL,
                        "" if perm_ok else "image moves fiber indices"))
    target = projective_element()
    flipped_edge = None
    if element is not None and element == target:
        checks.append(Check("projective-element-match", PASS, "exact"))
    else:
        diff = _element_diff(element, target) if element is not None else "no value"
        # A mismatch counts as explained only if reversing one of the
        # convention-flagged orientations reproduces the target exactly.
        for eid in data.flagged:
            candidate, ok = run(_flip_orientation(data, eid))
            if ok and candidate == target:
                flipped_edge = eid
                break
        if flipped_edge is not None:
            checks.append(Check("projective-element-match", WARN,
                                f"matches after flipping the orientation of "
                                f"flagged edge {flipped_edge}; original diff: {diff}"))
            element = target
        else:
            checks.append(Check("projective-element-match", FAIL, diff))
    final = all(row[0] == 1 for row in element.exps) if element is not None else False
    checks.append(Check("c-exponents-all-one", PASS if final else FAIL, ""))
    return ProjectiveResult(element, len(collapsed), flipped_edge, checks)


# ---------------------------------------------------------------------------
# The five-generator group H (central symbols dropped)

class HElement(NamedTuple):
    a_c: int
    a_7: int
    a_1: int
    a_10: int
    a_4: int

    def is_identity(self) -> bool:
        return self == (0, 0, 0, 0, 0)


def h_collect(word: Sequence[Letter]) -> HElement:
    row = [0] * 5
    sink = _zero_raw()
    for letter in word:
        if letter.primed or letter.sym not in _POS:
            raise ValueError(f"unknown letter {letter}")
        _append_run(row, _POS[letter.sym], -1 if letter.inv else 1, sink)
    return HElement(*row)


def h_multiply(x: HElement, y: HElement) -> HElement:
    row = list(x)
    sink = _zero_raw()
    for pos in range(5):
        _append_run(row, pos, y[pos], sink)
    return HElement(*row)


def h_invert(x: HElement) -> HElement:
    row = [0] * 5
    sink = _zero_raw()
    for pos in (4, 3, 2, 1, 0):
        _append_run(row, pos, -x[pos], sink)
    return HElement(*row)


def h_commutator(x: HElement, y: HElement) -> HElement:
    return h_multiply(h_multiply(x, y), h_multiply(h_invert(x), h_invert(y)))


def _h_gens() -> List[HElement]:
    out = []
    for sym in SYMBOL_ORDER:
        row = [0] * 5
        row[_POS[sym]] = 1
        out.append(HElement(*row))
    return out


def _h_pair_commutators() -> List[HElement]:
    gens = _h_gens()
    return [h_commutator(x, y) for x in gens for y in gens if x != y]


def _h_lower_central_series() -> LcsReport:
    checks: List[Check] = []
    gens = _h_gens()
    pair = [t for t in _h_pair_commutators() if not t.is_identity()]
    gamma3 = [h_commutator(g, t) for g in gens for t in pair]
    gamma3 = [t for t in gamma3 if not t.is_identity()]
    gamma4 = [h_commutator(g, t) for g in gens for t in gamma3]
    gamma4 = [t for t in gamma4 if not t.is_identity()]
    escape = [t for t in pair + gamma3 if t.a_1 or t.a_10 or t.a_4]
    checks.append(Check("series-inside-abelian-subalgebra",
                        FAIL if escape else PASS, f"{len(escape)} escapees"))

    def invs(elems: Sequence[HElement]) -> AbelianInvariants:
        vecs = _dedup([t.a_c, t.a_7] for t in elems)
        if not vecs:
            return AbelianInvariants(0)
        return _subalgebra_invariants_free(vecs)

    inv2 = invs(pair + gamma3)
    inv3 = invs(gamma3)
    inv4 = invs(gamma4)
    klass = 3 if gamma3 else (2 if pair else 1)
    if gamma4:
        klass = 4
    checks.append(Check("gamma4-trivial", PASS if not gamma4 else FAIL, str(inv4)))
    checks.append(Check("nilpotency-class", PASS if klass == 3 else FAIL,
                        f"class {klass}"))
    return LcsReport("H", (inv2, inv3, inv4), klass, checks)


def _subalgebra_invariants_free(vecs: Sequence[Sequence[int]]) -> AbelianInvariants:
    g_all = [list(v) for v in vecs]
    pres = left_kernel(g_all)
    return invariants_of_quotient(len(g_all), pres)


def h_structure() -> List[Check]:
    checks: List[Check] = []
    report = _h_lower_central_series()
    checks.extend(report.checks)
    inv2, inv3, _ = report.invariants
    checks.append(Check("gamma2-rank-two",
                        PASS if inv2 == AbelianInvariants(2) else FAIL, str(inv2)))
    checks.append(Check("gamma3-infinite-cyclic",
                        PASS if inv3 == AbelianInvariants(1) else FAIL, str(inv3)))
    pair = [t for t in _h_pair_commutators() if not t.is_identity()]
    abelian = all(h_commutator(x, y).is_identity() for x in pair for y in pair)
    checks.append(Check("derived-length-two",
                        PASS if pair and abelian else FAIL,
                        "commutator subgroup is abelian and nontrivial"))
    c, s7, _, s10, _ = _h_gens()
    commuting = (h_commutator(c, s7).is_identity()
                 and h_commutator(c, s10).is_identity()
                 and h_commutator(s7, s10).is_identity())
    free = _subalgebra_invariants_free(
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == AbelianInvariants(3)
    checks.append(Check("c-7-10-free-abelian",
                        PASS if commuting and free else FAIL, "Z^3"))
    stable = True
    for g in _h_gens():
        for s in (c, s7, s10):
            conj = h_multiply(h_multiply(g, s), h_invert(g))
            if conj.a_1 or conj.a_4:
                stable = False
    checks.append(Check("c-7-10-normal", PASS if stable else FAIL, ""))
    rows = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 0, 1, 0]]
    for t in pair:
        rows.append(list(t))
    quotient = invariants_of_quotient(5, rows)
    checks.append(Check("quotient-by-c-7-10",
                        PASS if quotient == AbelianInvariants(2) else FAIL,
                        str(quotient)))
    return checks


# ---------------------------------------------------------------------------
# Consistency report

_EQ_REL_SECTION_I = "7 1- 13- 2 4- 7 4 2- 13 1 7- 7-"
_EQ_REL_SECTION_J = "7 1- 13- 2 4- 7- 4 2- 13 1"


def _refs_from_text(text: str, index: int) -> List[GeneratorRef]:
    out = []
    for token in text.split():
        inv = token.endswith("-")
        out.append(GeneratorRef(token.rstrip("-"), index, inv))
    return out


def _signed_letters() -> List[Tuple[str, int, bool]]:
    return [(sym, 1, inv) for sym in SYMBOL_ORDER for inv in (False, True)]


def _raw_of(word) -> Tuple[Dict[str, int], List[List[int]]]:
    raw = _zero_raw()
    rows = [[0] * 5 for _ in range(N_INDICES)]
    _raw_collect(word, raw, rows)
    return raw, rows


def _raw_multiply(a, b):
    raw = dict(a[0])
    for name, v in b[0].items():
        raw[name] += v
    rows = [list(r) for r in a[1]]
    _merge_rows(rows, b[1], raw)
    return raw, rows


def consistency_check(conversion=None, seed: int = DEFAULT_SEED,
                      random_triples: int = 10000,
                      indices: Sequence[int] = range(1, N_INDICES + 1)) -> List[Check]:
    """Defining relators, associativity, and the index-difference identity."""
    convert = conversion if conversion is not None else ThetaVector.from_raw
    checks: List[Check] = []

    cross = sum(1 for x in SYMBOL_ORDER for y in SYMBOL_ORDER for i, j in ((1, 2), (3, 18))
                if not kstar_commutator(gen(x, i), gen(y, j)).is_identity())
    checks.append(Check("cross-index-commutation", FAIL if cross else PASS,
                        f"{cross} failures"))

    expected = {
        ("4", "c"): theta_element("4,c"),
        ("4", "7"): theta_element("4,7"),
        ("4", "10"): kstar_collect([GeneratorRef("c", 1)] * 3,
                                   ThetaVector.unit("4,10")),
        ("4", "1"): kstar_multiply(
            theta_element("4,1"),
            kstar_collect([GeneratorRef("c", 1, True)] * 2
                          + [GeneratorRef("7", 1)] * 2)),
        ("10", "7"): theta_element("10,7"),
        ("1", "7"): kstar_collect([GeneratorRef("c", 1, True)] * 3,
                                  ThetaVector.unit("1,7")),
        ("7", "c"): KStarElement.identity(),
        ("1", "c"): theta_element("1,c"),
        ("10", "c"): theta_element("10,c"),
        ("10", "1"): theta_element("10,1"),
    }
    conj_bad = []
    for (x, y), want_1 in expected.items():
        for i in (1, 9, 18):
            shift = Permutation.identity(N_INDICES) if i == 1 else \
                Permutation.transposition(N_INDICES, 1, i)
            want = act_on_kstar(want_1, shift)
            if kstar_commutator(gen(x, i), gen(y, i)) != want:
                conj_bad.append((x, y, i))
    checks.append(Check("conjugation-relators", FAIL if conj_bad else PASS,
                        f"{len(conj_bad)} failures"))

    derived_bad = []
    for sym, (theta_name, letters) in _DERIVED.items():
        for i in (1, 18):
            refs = [GeneratorRef(s, i, v) for s, v in letters]
            want = kstar_collect(
                refs, ThetaVector.unit(theta_name) if theta_name else None)
            if gen(sym, i) != want:
                derived_bad.append((sym, i))
    checks.append(Check("derived-symbol-definitions", FAIL if derived_bad else PASS,
                        f"{len(derived_bad)} failures"))

    u = ThetaVector.unit
    relation_ok = (
        u("10,c") == u("10,7", 4)
        and u("10,7", 6) == u("1,c", 3)
        and u("7,c").is_identity()
        and u("4,c", 3).is_identity()
        and u("1,c", 6).is_identity()
        and u("10,c") == u("10,7", -2).multiply(u("1,c", 3))
        and u("10,c", 3).is_identity()
        and u("10,7", 12).is_identity()
        and not u("1,c", 3).is_identity()
    )
    checks.append(Check("central-relations", PASS if relation_ok else FAIL, ""))

    letters = _signed_letters()
    assoc_bad = 0
    first = ""
    for x in letters:
        rx = _raw_of([x])
        for y in letters:
            ry = _raw_of([y])
            xy = _raw_multiply(rx, ry)
            for z in letters:
                rz = _raw_of([z])
                left = _raw_multiply(xy, rz)
                right = _raw_multiply(rx, _raw_multiply(ry, rz))
                if left[1] != right[1] or convert(left[0]) != convert(right[0]):
                    assoc_bad += 1
                    if not first:
                        first = f"first failure at {x} {y} {z}"
    checks.append(Check("associativity-letter-triples", FAIL if assoc_bad else PASS,
                        first or "1000 triples"))

    rng = SplitMix64(seed)
    rand_bad = 0
    for _ in range(random_triples):
        triple = []
        for _ in range(3):
            word = [(SYMBOL_ORDER[rng.randrange(5)], rng.randrange(3) + 1, rng.coin())
                    for _ in range(rng.randrange(5))]
            triple.append(_raw_of(word))
        x, y, z = triple
        left = _raw_multiply(_raw_multiply(x, y), z)
        right = _raw_multiply(x, _raw_multiply(y, z))
        if left[1] != right[1] or convert(left[0]) != convert(right[0]):
            rand_bad += 1
    checks.append(Check("associativity-random-triples", FAIL if rand_bad else PASS,
                        f"{rand_bad} of {random_triples} failed"))

    pair_word = _refs_from_text(_EQ_REL_SECTION_I, 10) + \
        _refs_from_text(_EQ_REL_SECTION_J, 14)
    checks.append(Check("two-section-relator",
                        PASS if kstar_collect(pair_word).is_identity() else FAIL,
                        ""))

    remark_bad = 0
    for x in SYMBOL_ORDER:
        for y in SYMBOL_ORDER:
            single = {i: kstar_commutator(gen(x, i), gen(y, i)) for i in indices}
            for i in indices:
                for j in indices:
                    if j == i:
                        continue
                    left_factor = _omega_pair(x, i, j)
                    for k in indices:
                        if k == i or k == j:
                            continue
                        got = kstar_commutator(left_factor, _omega_pair(y, i, k))
                        if got != single[i]:
                            remark_bad += 1
    checks.append(Check("index-difference-commutators", FAIL if remark_bad else PASS,
                        f"{remark_bad} failures"))
    return checks


def _omega_pair(sym: str, i: int, j: int) -> KStarElement:
    return kstar_collect([GeneratorRef(sym, i), GeneratorRef(sym, j, True)])
