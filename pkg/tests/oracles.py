"""Independent oracles used by the test suite.

Everything here is deliberately written against the definitions rather
than the library's own algorithms: an integer Smith form by alternating
row/column Euclid, a brute-force projective-line count over all residue
pairs, and a small Todd-Coxeter coset enumerator.  Each oracle is itself
sanity-checked in test_oracles.py before anything else relies on it.
"""

from __future__ import annotations


def snf_diagonal(rows, ncols):
    """Diagonal of an integer Smith-like form (no divisibility chain).

    Returns the list of nonzero diagonal entries after full
    diagonalization; the presented abelian group is
    Z^(ncols - len(diag)) + sum of Z/d for d in the diagonal.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    diag = []
    r = c = 0
    while r < nrows and c < ncols:
        # smallest nonzero entry as pivot keeps coefficients small
        pos = None
        for i in range(r, nrows):
            mi = m[i]
            for j in range(c, ncols):
                v = mi[j]
                if v:
                    av = -v if v < 0 else v
                    if pos is None or av < pos[0]:
                        pos = (av, i, j)
                        if av == 1:
                            break
            if pos is not None and pos[0] == 1:
                break
        if pos is None:
            break
        _, i, j = pos
        m[r], m[i] = m[i], m[r]
        if j != c:
            for row in m:
                row[c], row[j] = row[j], row[c]
        while True:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            p = m[r][c]
            changed = False
            # nearest-quotient euclid down the column
            for i in range(nrows):
                if i != r and m[i][c]:
                    q, rem = divmod(m[i][c], p)
                    if 2 * rem > p:
                        q += 1
                    if q:
                        mr = m[r]
                        m[i] = [x - q * y for x, y in zip(m[i], mr)]
                    if m[i][c]:
                        m[r], m[i] = m[i], m[r]
                        changed = True
                        break
            if changed:
                continue
            # nearest-quotient euclid across the row
            for j in range(ncols):
                if j != c and m[r][j]:
                    q, rem = divmod(m[r][j], p)
                    if 2 * rem > p:
                        q += 1
                    if q:
                        for i in range(nrows):
                            m[i][j] -= q * m[i][c]
                    if m[r][j]:
                        for i in range(nrows):
                            m[i][c], m[i][j] = m[i][j], m[i][c]
                        changed = True
                        break
            if not changed:
                break
        diag.append(abs(m[r][c]))
        r += 1
        c += 1
    return diag


def abelian_invariants(rows, ncols):
    """(free_rank, sorted prime-power torsion list) of coker of the rows."""
    diag = snf_diagonal(rows, ncols)
    tors = []
    for d in diag:
        d = abs(d)
        if d in (0, 1):
            continue
        p = 2
        while p * p <= d:
            if d % p == 0:
                q = 1
                while d % p == 0:
                    d //= p
                    q *= p
                tors.append(q)
            p += 1
        if d > 1:
            tors.append(d)
    free = ncols - len(diag)
    return free, sorted(tors)


def brute_p1_count(n) -> int:
    """|P^1(O/n)| by enumerating all pairs and dividing out unit rays."""
    from bianchicoh.ideals import ResidueSystem
    from bianchicoh.qfield import gcd

    rs = ResidueSystem(n)
    g = n.gen
    units = rs.invertible_reps()
    seen = set()
    count = 0
    for c in rs.reps:
        for d in rs.reps:
            if not n.is_unit_ideal():
                h = gcd(gcd(c, d), g) if not (c.is_zero() and d.is_zero()) else g
                if not h.is_unit():
                    continue
            key = (c.a, c.b, d.a, d.b)
            if key in seen:
                continue
            count += 1
            for u in units:
                uc, ud = rs.reduce(u * c), rs.reduce(u * d)
                seen.add((uc.a, uc.b, ud.a, ud.b))
    return count


def brute_p1_count_fast(n) -> int:
    """|P^1(O/n)| by pair enumeration with a precomputed gcd table.

    Same definition as brute_p1_count -- a pair (c, d) is projective
    when gcd(c, d, gen) is a unit -- but gcd(c, d, gen) equals
    gcd(gcd(c, gen), gcd(d, gen)), so each residue is first mapped to
    its gcd-with-gen divisor class and the pair test becomes a lookup
    in a small divisor-by-divisor coprimality table.  Invertible
    scalars act freely on projective pairs (u fixing one forces
    u = 1 mod n), so the point count is the pair count divided by the
    number of invertible residues.
    """
    from bianchicoh.ideals import PIdeal, ResidueSystem, divisors
    from bianchicoh.qfield import gcd

    rs = ResidueSystem(n)
    g = n.gen
    if n.is_unit_ideal():
        return 1
    divs = divisors(n)
    div_index = {dv: k for k, dv in enumerate(divs)}
    coprime = [
        [gcd(a.gen, b.gen).is_unit() for b in divs] for a in divs
    ]
    cls = [div_index[PIdeal(gcd(x, g))] for x in rs.reps]
    counts = [0] * len(divs)
    for k in cls:
        counts[k] += 1
    npairs = 0
    for k1, c1 in enumerate(counts):
        if not c1:
            continue
        row = coprime[k1]
        for k2, c2 in enumerate(counts):
            if c2 and row[k2]:
                npairs += c1 * c2
    return npairs // len(rs.invertible_reps())


def todd_coxeter(ngens, relators, subgens, limit=100000, want_table=False):
    """Index of the subgroup generated by subgens in the presented group.

    relators and subgens are sequences of words, each word a sequence of
    (generator-id, +-1).  Plain HLT enumeration with a union-find for
    coincidences; sweeps with definitions until a sweep changes nothing.
    Raises RuntimeError if more than limit cosets get defined.  With
    want_table=True returns (index, table) where table[x][2g + (0 if
    e=1 else 1)] is the coset x * g^e over renumbered live cosets,
    coset 0 being the subgroup itself.
    """
    nslots = 2 * ngens
    table = [[None] * nslots]
    parent = [0]
    state = {"changed": False}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def newcoset():
        table.append([None] * nslots)
        parent.append(len(table) - 1)
        if len(table) > limit:
            raise RuntimeError("coset limit exceeded")
        state["changed"] = True
        return len(table) - 1

    def slot(g, e):
        return 2 * g + (0 if e == 1 else 1)

    pend = []

    def set_edge(x, sl, y):
        x, y = find(x), find(y)
        cur = table[x][sl]
        if cur is None:
            table[x][sl] = y
            state["changed"] = True
        elif find(cur) != y:
            pend.append((find(cur), y))
        back = table[y][sl ^ 1]
        if back is None:
            table[y][sl ^ 1] = x
            state["changed"] = True
        elif find(back) != x:
            pend.append((find(back), x))

    def process_coincidences():
        while pend:
            a, b = pend.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            parent[b] = a
            state["changed"] = True
            for sl in range(nslots):
                tb = table[b][sl]
                if tb is not None:
                    set_edge(a, sl, find(tb))

    def trace(start, word, define):
        x = find(start)
        n = len(word)
        for i, (g, e) in enumerate(word):
            x = find(x)
            sl = slot(g, e)
            y = table[x][sl]
            if y is None:
                if not define:
                    return
                y = find(start) if i == n - 1 else newcoset()
                set_edge(x, sl, y)
                y = table[find(x)][sl]
                if y is None:
                    return  # a coincidence rewired things; next sweep
            x = find(y)
        if x != find(start):
            pend.append((x, find(start)))
        process_coincidences()

    while True:
        state["changed"] = False
        for w in subgens:
            trace(0, w, define=True)
        x = 0
        while x < len(table):
            if find(x) == x:
                for w in relators:
                    trace(x, w, define=True)
                    if find(x) != x:
                        break
            x += 1
        process_coincidences()
        if not state["changed"]:
            break
    live = [x for x in range(len(table)) if find(x) == x]
    for x in live:
        for sl in range(nslots):
            if table[x][sl] is None:
                raise RuntimeError("coset table incomplete after sweeps")
    if not want_table:
        return len(live)
    renum = {x: i for i, x in enumerate(live)}
    clean = [
        [renum[find(table[x][sl])] for sl in range(nslots)] for x in live
    ]
    return len(live), clean


def tc_subgroup_abelianization(ngens, relators, subgens, limit=100000):
    """(free_rank, torsion) of the subgroup's abelianization.

    Runs Todd-Coxeter for the coset table, then an abelianized
    Reidemeister-Schreier rewriting on that table: BFS spanning tree,
    Schreier generators on non-tree positive edges, relators traced
    from every coset, subgroup generator words traced from coset 0.
    Completely independent of the library's own Schreier code path.
    """
    _, table = todd_coxeter(
        ngens, relators, subgens, limit=limit, want_table=True
    )
    ncos = len(table)
    tree_pos = set()
    visited = [False] * ncos
    visited[0] = True
    queue = [0]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for g in range(ngens):
            for e, sl in ((1, 2 * g), (-1, 2 * g + 1)):
                y = table[x][sl]
                if not visited[y]:
                    visited[y] = True
                    tree_pos.add((x, g) if e == 1 else (y, g))
                    queue.append(y)
    sidx = {}
    for x in range(ncos):
        for g in range(ngens):
            if (x, g) not in tree_pos:
                sidx[(x, g)] = len(sidx)
    nsg = len(sidx)

    def walk(word, start):
        vec = [0] * nsg
        pos = start
        for g, e in word:
            if e == 1:
                k = sidx.get((pos, g))
                if k is not None:
                    vec[k] += 1
                pos = table[pos][2 * g]
            else:
                prev = table[pos][2 * g + 1]
                k = sidx.get((prev, g))
                if k is not None:
                    vec[k] -= 1
                pos = prev
        return pos, vec

    rows = []
    for r in relators:
        for x in range(ncos):
            end, vec = walk(r, x)
            assert end == x
            rows.append(vec)
    # subgroup generator words must land in the subgroup
    for w in subgens:
        end, _ = walk(w, 0)
        assert end == 0
    return abelian_invariants(rows, nsg)


def sympy_invariants(rows, ncols):
    """Same invariants as abelian_invariants, via sympy's Smith form."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    if not rows:
        return ncols, []
    m = smith_normal_form(Matrix(rows), domain=ZZ)
    diag = [int(m[i, i]) for i in range(min(m.rows, m.cols))]
    tors = []
    rank = 0
    for d in diag:
        d = abs(d)
        if d == 0:
            continue
        rank += 1
        if d == 1:
            continue
        p = 2
        while p * p <= d:
            if d % p == 0:
                q = 1
                while d % p == 0:
                    d //= p
                    q *= p
                tors.append(q)
            p += 1
        if d > 1:
            tors.append(d)
    return ncols - rank, sorted(tors)
