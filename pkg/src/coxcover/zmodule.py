"""Exact integer linear algebra: Smith normal form and abelian invariants.

All arithmetic is on Python ints (arbitrary precision); matrices are lists
of lists of ints. Sizes here stay small (at most a few hundred rows), so
clarity wins over sparsity tricks.
"""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, src, dst, k):
    # dst += k * src
    row_s, row_d = m[src], m[dst]
    for t in range(len(row_d)):
        row_d[t] += k * row_s[t]


def _add_col(m, src, dst, k):
    for row in m:
        row[dst] += k * row[src]


def _negate_row(m, i):
    m[i] = [-x for x in m[i]]


def smith_normal_form(matrix):
    """Return (diag, U, V) with U*matrix*V diagonal, U and V unimodular.

    diag is the list of diagonal entries (length min(rows, cols)), each
    nonnegative, satisfying the divisibility chain d1 | d2 | ...
    Pivot choice is the smallest nonzero absolute value, ties broken
    row-major, so the run is reproducible.
    """
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = _identity(rows)
    v = _identity(cols)
    n = min(rows, cols)

    for t in range(n):
        while True:
            # pick pivot: smallest |entry| != 0 in the trailing block
            pi = pj = -1
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x != 0 and (best is None or abs(x) < best):
                        best = abs(x)
                        pi, pj = i, j
            if best is None:
                break
            if pi != t:
                _swap_rows(a, t, pi)
                _swap_rows(u, t, pi)
            if pj != t:
                _swap_cols(a, t, pj)
                _swap_cols(v, t, pj)
            if a[t][t] < 0:
                _negate_row(a, t)
                _negate_row(u, t)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    _add_row(a, t, i, -q)
                    _add_row(u, t, i, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    _add_col(a, t, j, -q)
                    _add_col(v, t, j, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # row and column are clear; enforce p | rest of the block
            stray = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        stray = i
                        break
                if stray is not None:
                    break
            if stray is None:
                break
            _add_row(a, stray, t, 1)
            _add_row(u, stray, t, 1)

    diag = [a[i][i] for i in range(n)]
    # divisibility chain: gcd-fold adjacent violations
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            x, y = diag[i], diag[i + 1]
            if x and y % x == 0:
                continue
            if x == 0 and y == 0:
                continue
            # merge via gcd/lcm; adjust transforms by redoing a 2x2 smith
            g = _gcd(x, y)
            l = x * y // g if g else 0
            if x == 0:
                # zero must sink to the end of the chain
                diag[i], diag[i + 1] = y, 0
                _fix_transforms_swap(a, u, v, i)
                changed = True
                continue
            diag[i], diag[i + 1] = g, l
            _fix_transforms_gcd(a, u, v, i, x, y, g, l)
            changed = True
    return diag, u, v


def _gcd(x, y):
    x, y = abs(x), abs(y)
    while y:
        x, y = y, x % y
    return x


def _fix_transforms_swap(a, u, v, i):
    _swap_rows(a, i, i + 1)
    _swap_rows(u, i, i + 1)
    _swap_cols(a, i, i + 1)
    _swap_cols(v, i, i + 1)


def _fix_transforms_gcd(a, u, v, i, x, y, g, l):
    # On diag(x, y) with g = gcd, l = lcm: column op then a 2x2 cleanup
    # reproduces diag(g, l) while keeping U, V unimodular.
    _add_col(a, i + 1, i, 1)
    _add_col(v, i + 1, i, 1)
    # block is now [[x, 0], [y, y]]; clear it by exact Euclid on rows/cols
    _mini_smith(a, u, v, i)


def _mini_smith(a, u, v, t):
    rows, cols = len(a), len(a[0])
    while True:
        pi = pj = -1
        best = None
        for i in (t, t + 1):
            for j in (t, t + 1):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pi, pj = i, j
        if best is None:
            return
        if pi != t:
            _swap_rows(a, t, pi)
            _swap_rows(u, t, pi)
        if pj != t:
            _swap_cols(a, t, pj)
            _swap_cols(v, t, pj)
        if a[t][t] < 0:
            _negate_row(a, t)
            _negate_row(u, t)
        p = a[t][t]
        i, j = t + 1, t + 1
        done = True
        if a[i][t]:
            q = a[i][t] // p
            _add_row(a, t, i, -q)
            _add_row(u, t, i, -q)
            done = done and a[i][t] == 0
        if a[t][j]:
            q = a[t][j] // p
            _add_col(a, t, j, -q)
            _add_col(v, t, j, -q)
            done = done and a[t][j] == 0
        if done:
            if a[t + 1][t + 1] < 0:
                _negate_row(a, t + 1)
                _negate_row(u, t + 1)
            return


class AbelianInvariants:
    """Isomorphism type of a finitely generated abelian group:
    free rank plus the torsion chain d1 | d2 | ... (all >= 2)."""

    __slots__ = ("free_rank", "torsion")

    def __init__(self, free_rank, torsion=()):
        self.free_rank = free_rank
        self.torsion = tuple(torsion)
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion entry {d} < 2")

    def __eq__(self, other):
        return (isinstance(other, AbelianInvariants)
                and self.free_rank == other.free_rank
                and self.torsion == other.torsion)

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __repr__(self):
        return f"AbelianInvariants({self.free_rank}, {self.torsion})"

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        if not parts:
            return "0"
        return " x ".join(parts)


def invariants_of_quotient(rank, relations):
    """Invariants of Z^rank / (row span of relations)."""
    for row in relations:
        if len(row) != rank:
            raise ValueError(f"relation row has {len(row)} entries, expected {rank}")
    if not relations:
        return AbelianInvariants(rank)
    diag, _, _ = smith_normal_form(relations)
    nonzero = [d for d in diag if d != 0]
    torsion = [d for d in nonzero if d > 1]
    return AbelianInvariants(rank - len(nonzero), torsion)


def left_kernel(matrix):
    """Basis (list of rows) for {x : x * matrix = 0} over Z."""
    rows = len(matrix)
    if rows == 0:
        return []
    diag, u, _ = smith_normal_form(matrix)
    rank = sum(1 for d in diag if d != 0)
    return [list(u[i]) for i in range(rank, rows)]


def subgroup_invariants(free_rank, ambient_torsion, gens):
    """Invariants of the subgroup of Z^free_rank x prod Z/d generated by gens.

    Each generator is a coordinate vector of length free_rank +
    len(ambient_torsion), torsion coordinates last, in the same order as
    ambient_torsion.
    """
    n = free_rank + len(ambient_torsion)
    for g in gens:
        if len(g) != n:
            raise ValueError(f"generator has {len(g)} coords, expected {n}")
    rel_rows = []
    for t, d in enumerate(ambient_torsion):
        row = [0] * n
        row[free_rank + t] = d
        rel_rows.append(row)
    # The preimage in Z^n of the generated subgroup is spanned by the
    # generators together with the torsion relation rows; the subgroup is
    # that lattice M modulo the relation lattice R. Writing M as the image
    # of Z^k, the kernel of Z^k -> M/R is {x : x*G in R}, read off from the
    # left kernel of the stacked matrix [G; R].
    g_all = [list(g) for g in gens] + [list(r) for r in rel_rows]
    k = len(g_all)
    if k == 0:
        return AbelianInvariants(0)
    stacked = g_all + [list(r) for r in rel_rows]
    pres = [row[:k] for row in left_kernel(stacked)]
    return invariants_of_quotient(k, pres)


def parse_matrix(text):
    """Matrix file format: first non-comment line `rows cols`, then entries."""
    values = []
    header = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"bad matrix header: {raw!r}")
            header = (int(parts[0]), int(parts[1]))
            continue
        values.extend(int(tok) for tok in line.split())
    if header is None:
        raise ValueError("empty matrix file")
    rows, cols = header
    if len(values) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(values)}")
    return [values[i * cols:(i + 1) * cols] for i in range(rows)]


def format_matrix(matrix):
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    lines = [f"{rows} {cols}"]
    lines.extend(" ".join(str(x) for x in row) for row in matrix)
    return "\n".join(lines) + "\n"
