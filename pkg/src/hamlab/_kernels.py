"""Compiled bitset kernels.

Every kernel takes a digraph as ``out`` (int64 out-neighbour row masks) and,
where needed, ``inn`` (in-neighbour masks).  Orders are limited to 62 so that
no mask touches the sign bit.
"""

import numpy as np
from numba import njit

KERNEL_MAX_ORDER = 62

# theorem codes understood by evaluate_case
T_FACTOR = 1
T_MANOUSSAKIS = 2
T_MEYNIEL = 3
T_TRIPLE = 4
T_TRICHOTOMY = 5
T_CYCLES_111 = 6
T_PANCYCLIC_116 = 7
T_EQUIV_33 = 8
T_ONEPAIR_34 = 9
T_NEARHAM_36 = 10
T_LONGCYCLE_17 = 11
T_WOODALL = 12
T_GHOUILA = 13
T_ORE = 14
T_TWOCYCLE_37 = 15
T_LEMMA_31 = 16
T_LEMMA_32 = 17
T_LEMMA_35 = 18
T_PROBLEM_117 = 19
T_REMARK = 20

# prefilter / condition codes understood by condition_code_holds
C_STRONG = 1
C_TWO_STRONG = 2
C_CONDITION_M = 3
C_MEYNIEL = 4
C_TRIPLE = 5
C_WOODALL = 6
C_GHOUILA = 7
C_ORE = 8

N_STATS = 4
BIG = 1 << 40


@njit(cache=True)
def popcount(x):
    x = x - ((x >> 1) & 0x5555555555555555)
    x = (x & 0x3333333333333333) + ((x >> 2) & 0x3333333333333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0F
    return (x * 0x0101010101010101) >> 56 & 0xFF


@njit(cache=True)
def ctz(x):
    return popcount((x & -x) - 1)


@njit(cache=True)
def make_in_rows(out, n):
    inn = np.zeros(n, np.int64)
    fill_in_rows(out, n, inn)
    return inn


@njit(cache=True)
def fill_in_rows(out, n, inn):
    for v in range(n):
        inn[v] = 0
    for u in range(n):
        r = out[u]
        while r:
            low = r & -r
            inn[ctz(low)] |= np.int64(1) << u
            r ^= low


@njit(cache=True)
def reach(adj, alive, s):
    seen = np.int64(1) << s
    frontier = seen
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        new = adj[ctz(low)] & alive & ~seen
        seen |= new
        frontier |= new
    return seen


@njit(cache=True)
def strong_within(out, inn, alive):
    if alive == 0:
        return True
    s = ctz(alive)
    if reach(out, alive, s) != alive:
        return False
    return reach(inn, alive, s) == alive


@njit(cache=True)
def is_two_strong(out, inn, n):
    if n < 3:
        return False
    full = (np.int64(1) << n) - 1
    if not strong_within(out, inn, full):
        return False
    for v in range(n):
        if not strong_within(out, inn, full ^ (np.int64(1) << v)):
            return False
    return True


@njit(cache=True)
def k_strong_by_deletion(out, inn, n, k):
    """k-strong test by deleting every vertex subset of size <= k-1."""
    if n < k + 1:
        return False
    full = (np.int64(1) << n) - 1
    for sub in range(np.int64(1) << n):
        if popcount(sub) <= k - 1:
            if not strong_within(out, inn, full & ~sub):
                return False
    return True


@njit(cache=True)
def fill_degrees(out, inn, n, deg, dout, din):
    for v in range(n):
        dout[v] = popcount(out[v])
        din[v] = popcount(inn[v])
        deg[v] = dout[v] + din[v]


# -- degree conditions ---------------------------------------------------------


@njit(cache=True)
def nonadjacent_count(out, inn, n):
    full = (np.int64(1) << n) - 1
    c = 0
    for u in range(n):
        higher = full & ~((np.int64(2) << u) - 1)
        c += popcount(~(out[u] | inn[u]) & higher)
    return c


@njit(cache=True)
def two_smallest_pair_sums(out, inn, n, deg):
    """(count, smallest, second smallest) non-adjacent pair degree sums."""
    full = (np.int64(1) << n) - 1
    a = BIG
    b = BIG
    c = 0
    for u in range(n):
        higher = full & ~((np.int64(2) << u) - 1)
        r = ~(out[u] | inn[u]) & higher
        while r:
            low = r & -r
            r ^= low
            s = deg[u] + deg[ctz(low)]
            c += 1
            if s < a:
                b = a
                a = s
            elif s < b:
                b = s
    return c, a, b


@njit(cache=True)
def condition_m(out, inn, n, deg):
    c, a, b = two_smallest_pair_sums(out, inn, n, deg)
    if c < 2:
        return True
    return a + b >= 4 * n - 3


@njit(cache=True)
def condition_m_relaxed(out, inn, n, deg):
    """Same as condition (M) with threshold 4n-4."""
    c, a, b = two_smallest_pair_sums(out, inn, n, deg)
    if c < 2:
        return True
    return a + b >= 4 * n - 4


@njit(cache=True)
def meyniel(out, inn, n, deg):
    c, a, b = two_smallest_pair_sums(out, inn, n, deg)
    return c == 0 or a >= 2 * n - 1


@njit(cache=True)
def triple_condition(out, inn, n, deg, dout, din):
    for x in range(n):
        nb = out[x] | inn[x]
        for y in range(n):
            if y == x or (nb >> y) & 1:
                continue
            base = deg[x] + deg[y]
            for z in range(n):
                if z == x:
                    continue
                if not (out[x] >> z) & 1:
                    if base + dout[x] + din[z] < 3 * n - 2:
                        return False
                if not (out[z] >> x) & 1:
                    if base + din[x] + dout[z] < 3 * n - 2:
                        return False
    return True


@njit(cache=True)
def woodall(out, n, dout, din):
    for x in range(n):
        for y in range(n):
            if x != y and not (out[x] >> y) & 1 and dout[x] + din[y] < n:
                return False
    return True


@njit(cache=True)
def ghouila_houri(n, dout, din):
    for x in range(n):
        if 2 * dout[x] < n or 2 * din[x] < n:
            return False
    return True


@njit(cache=True)
def ore_underlying(out, inn, n):
    full = (np.int64(1) << n) - 1
    for u in range(n):
        gu = popcount(out[u] | inn[u])
        higher = full & ~((np.int64(2) << u) - 1)
        r = ~(out[u] | inn[u]) & higher
        while r:
            low = r & -r
            r ^= low
            v = ctz(low)
            if gu + popcount(out[v] | inn[v]) < n:
                return False
    return True


@njit(cache=True)
def condition_code_holds(code, out, inn, n, deg, dout, din):
    full = (np.int64(1) << n) - 1
    if code == C_STRONG:
        return strong_within(out, inn, full)
    if code == C_TWO_STRONG:
        return is_two_strong(out, inn, n)
    if code == C_CONDITION_M:
        return condition_m(out, inn, n, deg)
    if code == C_MEYNIEL:
        return meyniel(out, inn, n, deg)
    if code == C_TRIPLE:
        return triple_condition(out, inn, n, deg, dout, din)
    if code == C_WOODALL:
        return woodall(out, n, dout, din)
    if code == C_GHOUILA:
        return ghouila_houri(n, dout, din)
    if code == C_ORE:
        return ore_underlying(out, inn, n)
    return False


# -- cycles ------------------------------------------------------------------------


@njit(cache=True)
def _ham_next(out, inn, n, v, visited):
    """Candidate successors of path end v, or 0 when some unvisited vertex is
    already cut off (no possible predecessor or successor)."""
    full = (np.int64(1) << n) - 1
    rest = full & ~visited
    r = rest
    while r:
        low = r & -r
        r ^= low
        w = ctz(low)
        if (inn[w] & (rest | (np.int64(1) << v))) == 0:
            return np.int64(0)
        if (out[w] & (rest | 1)) == 0:
            return np.int64(0)
    return out[v] & rest


@njit(cache=True)
def ham_dfs(out, inn, n, path, cands):
    """Depth-first Hamiltonian cycle search anchored at vertex 0.

    Successors are tried in increasing order, so the cycle left in ``path`` is
    the lexicographically smallest one starting at 0.  ``cands`` is scratch of
    length >= n.
    """
    if n < 2:
        return False
    path[0] = 0
    visited = np.int64(1)
    depth = 1
    cands[1] = _ham_next(out, inn, n, 0, visited)
    while depth > 0:
        c = cands[depth]
        if c == 0:
            depth -= 1
            if depth > 0:
                visited ^= np.int64(1) << path[depth]
            continue
        low = c & -c
        cands[depth] = c ^ low
        w = ctz(low)
        path[depth] = w
        visited |= low
        if depth == n - 1:
            if out[w] & 1:
                return True
            visited ^= low
            continue
        depth += 1
        cands[depth] = _ham_next(out, inn, n, w, visited)
    return False


@njit(cache=True)
def fill_return_table(out, n, R):
    """R[mask] = vertices v of mask with a path v -> ... -> min(mask) covering exactly mask.

    A cycle with vertex set ``mask`` exists iff ``out[min(mask)] & R[mask]``.
    """
    size = np.int64(1) << n
    R[0] = 0
    for mask in range(1, size):
        s = ctz(mask)
        sb = np.int64(1) << s
        if mask == sb:
            R[mask] = sb
            continue
        acc = np.int64(0)
        rest = mask ^ sb
        while rest:
            low = rest & -rest
            rest ^= low
            if out[ctz(low)] & R[mask ^ low]:
                acc |= low
        R[mask] = acc


@njit(cache=True)
def has_cycle_on(out, R, mask):
    if mask == 0:
        return False
    return (out[ctz(mask)] & R[mask]) != 0


@njit(cache=True)
def length_profile(out, n, R):
    """Bitmask with bit l set iff some cycle has length l."""
    prof = np.int64(0)
    for mask in range(1, np.int64(1) << n):
        if out[ctz(mask)] & R[mask]:
            prof |= np.int64(1) << popcount(mask)
    return prof


@njit(cache=True)
def fill_length_closure(out, n, R, L):
    """L[mask] = OR of (1 << |T|) over vertex sets T inside mask carrying a cycle."""
    size = np.int64(1) << n
    L[0] = 0
    for mask in range(1, size):
        acc = np.int64(0)
        if out[ctz(mask)] & R[mask]:
            acc = np.int64(1) << popcount(mask)
        r = mask
        while r:
            low = r & -r
            r ^= low
            acc |= L[mask ^ low]
        L[mask] = acc


@njit(cache=True)
def cycle_partners(out, n, R, partners):
    """partners[u] = vertices lying on a common cycle with u."""
    for u in range(n):
        partners[u] = 0
    for mask in range(1, np.int64(1) << n):
        if out[ctz(mask)] & R[mask]:
            r = mask
            while r:
                low = r & -r
                r ^= low
                partners[ctz(low)] |= mask


@njit(cache=True)
def lexmin_sequence(out, R, mask, seq):
    """Lexicographically smallest cycle with vertex set ``mask``, starting at its minimum."""
    s = ctz(mask)
    sb = np.int64(1) << s
    seq[0] = s
    cur = s
    rem = mask
    k = 1
    while rem != sb:
        cand = out[cur] & R[rem] & ~sb
        w = ctz(cand)
        seq[k] = w
        k += 1
        rem ^= np.int64(1) << w
        cur = w
    return k


@njit(cache=True)
def _seq_less(a, b, k):
    for i in range(k):
        if a[i] != b[i]:
            return a[i] < b[i]
    return False


@njit(cache=True)
def best_cycle(out, n, R, length, need, avoid, best):
    """Lex-smallest cycle of the given length whose vertex set contains ``need``
    and misses ``avoid``; length 0 means "longest available".  Returns its length
    (0 if none) with the sequence in ``best``.
    """
    size = np.int64(1) << n
    target = length
    if target == 0:
        for mask in range(1, size):
            if (mask & need) == need and (mask & avoid) == 0 and out[ctz(mask)] & R[mask]:
                c = popcount(mask)
                if c > target:
                    target = c
        if target == 0:
            return 0
    tmp = np.empty(n, np.int64)
    found = False
    for mask in range(1, size):
        if popcount(mask) != target or (mask & need) != need or (mask & avoid) != 0:
            continue
        if not out[ctz(mask)] & R[mask]:
            continue
        lexmin_sequence(out, R, mask, tmp)
        if not found or _seq_less(tmp, best, target):
            for i in range(target):
                best[i] = tmp[i]
            found = True
    return target if found else 0


@njit(cache=True)
def shortest_cycle_through(out, n, R, need, best):
    size = np.int64(1) << n
    for length in range(2, n + 1):
        got = best_cycle(out, n, R, length, need, np.int64(0), best)
        if got:
            return got
    return 0


@njit(cache=True)
def profile_witnesses(out, n, R, witnesses):
    """Lex-smallest witness per length into ``witnesses[length, :]``; returns profile mask."""
    prof = length_profile(out, n, R)
    for length in range(2, n + 1):
        if (prof >> length) & 1:
            best_cycle(out, n, R, length, np.int64(0), np.int64(0), witnesses[length])
    return prof


# -- cycle factors -------------------------------------------------------------------


@njit(cache=True)
def max_matching(out, n, match_r):
    """Maximum matching of the split bipartite model (tail copy u -- head copy v
    for every arc u->v) by BFS augmenting paths; ``match_r[v]`` is the tail
    matched to head v, or -1."""
    match_l = np.full(n, -1, np.int64)
    from_left = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    for v in range(n):
        match_r[v] = -1
    size = 0
    for u in range(n):
        seen_r = np.int64(0)
        head = 0
        tail = 1
        queue[0] = u
        found = -1
        while head < tail and found < 0:
            x = queue[head]
            head += 1
            cand = out[x] & ~seen_r
            while cand:
                low = cand & -cand
                cand ^= low
                v = ctz(low)
                seen_r |= low
                from_left[v] = x
                if match_r[v] < 0:
                    found = v
                    break
                queue[tail] = match_r[v]
                tail += 1
        if found >= 0:
            v = found
            while True:
                x = from_left[v]
                nxt = match_l[x]
                match_r[v] = x
                match_l[x] = v
                if x == u:
                    break
                v = nxt
            size += 1
    return size


@njit(cache=True)
def has_cycle_factor(out, n):
    match_r = np.empty(n, np.int64)
    return max_matching(out, n, match_r) == n


@njit(cache=True)
def partition_oracle(out, inn, n, witness):
    """Exhaustive search for (Y, Z, R1, R2) blocking a cycle factor.

    Enumerates independent Y, then Z with |Z| < |Y| among the rest, then every
    split of the remainder into R1 and R2.  Writes the first hit to ``witness``.
    """
    full = (np.int64(1) << n) - 1
    for Y in range(1, full + 1):
        ok = True
        outY = np.int64(0)
        r = Y
        while r:
            low = r & -r
            r ^= low
            y = ctz(low)
            if (out[y] | inn[y]) & Y:
                ok = False
                break
            outY |= out[y]
        if not ok:
            continue
        ny = popcount(Y)
        comp = full & ~Y
        Z = comp
        while True:
            if popcount(Z) < ny:
                rest = comp & ~Z
                R1 = rest
                while True:
                    if (outY & R1) == 0:
                        R2 = rest & ~R1
                        bad = False
                        r2 = R2
                        while r2:
                            low = r2 & -r2
                            r2 ^= low
                            if out[ctz(low)] & (R1 | Y):
                                bad = True
                                break
                        if not bad:
                            witness[0] = Y
                            witness[1] = Z
                            witness[2] = R1
                            witness[3] = R2
                            return True
                    if R1 == 0:
                        break
                    R1 = (R1 - 1) & rest
            if Z == 0:
                break
            Z = (Z - 1) & comp
    return False


# -- Definition 1.9 family ----------------------------------------------------------


@njit(cache=True)
def _phi_cands(out, inn, n, m, i, lab, used):
    # admissible vertices for x_i (1-indexed) once x_{i+1..n} are placed
    above = used & ~(np.int64(1) << lab[i + 1])
    cand = out[lab[i + 1]] & ~used
    keep = np.int64(0)
    while cand:
        low = cand & -cand
        cand ^= low
        w = ctz(low)
        if inn[w] & above:
            continue
        if i <= n - m + 1:
            if ((out[w] | inn[w]) >> lab[i + m - 1]) & 1:
                continue
        keep |= low
    return keep


@njit(cache=True)
def find_phi_labeling(out, inn, n, m, lab):
    """Labeling x_1..x_n (``lab[1..n]``) meeting conditions (i)-(iv) of the family
    definition for parameter m; condition (v) is left to the caller."""
    if not (2 * m > n + 1 and m <= n - 1):
        return False
    cands = np.zeros(n + 1, np.int64)
    for a in range(n):
        lab[n] = a
        used = np.int64(1) << a
        i = n - 1
        cands[i] = _phi_cands(out, inn, n, m, i, lab, used)
        while i < n:
            c = cands[i]
            if c == 0:
                i += 1
                if i < n:
                    used ^= np.int64(1) << lab[i]
                continue
            low = c & -c
            cands[i] = c ^ low
            w = ctz(low)
            lab[i] = w
            used |= low
            if i == 1:
                if (out[w] >> lab[n]) & 1:
                    return True
                used ^= low
                continue
            i -= 1
            cands[i] = _phi_cands(out, inn, n, m, i, lab, used)
    return False


@njit(cache=True)
def bipartite_exception(out, inn, n):
    """True iff the digraph is K*_{n/2,n/2} or K*_{n/2,n/2} minus one arc."""
    if n % 2 or n < 2:
        return False
    color = np.full(n, -1, np.int64)
    color[0] = 0
    stack = np.empty(n, np.int64)
    top = 1
    stack[0] = 0
    while top:
        top -= 1
        u = stack[top]
        nb = out[u] | inn[u]
        while nb:
            low = nb & -nb
            nb ^= low
            w = ctz(low)
            if color[w] < 0:
                color[w] = 1 - color[u]
                stack[top] = w
                top += 1
            elif color[w] == color[u]:
                return False
    ones = 0
    for v in range(n):
        if color[v] < 0:
            return False
        ones += color[v]
    if 2 * ones != n:
        return False
    arcs = 0
    for v in range(n):
        arcs += popcount(out[v])
    half = n // 2
    return arcs >= 2 * half * half - 1


# -- theorem evaluation -------------------------------------------------------------


@njit(cache=True)
def _low_pairs(out, inn, n, deg, lo, hi, pairs):
    """Non-adjacent pairs with lo <= d(u)+d(v) <= hi, written as (u, v) rows; returns count."""
    full = (np.int64(1) << n) - 1
    c = 0
    for u in range(n):
        higher = full & ~((np.int64(2) << u) - 1)
        r = ~(out[u] | inn[u]) & higher
        while r:
            low = r & -r
            r ^= low
            v = ctz(low)
            s = deg[u] + deg[v]
            if lo <= s <= hi:
                pairs[c, 0] = u
                pairs[c, 1] = v
                c += 1
    return c


@njit(cache=True)
def workspace(n):
    return (np.empty(np.int64(1) << n, np.int64), np.empty(np.int64(1) << n, np.int64),
            np.empty(9 * n + 16, np.int64), np.empty((n * n, 2), np.int64))


@njit(cache=True)
def evaluate_case(code, n, out, inn, R, L, W, pairs, stats):
    """0: hypothesis false, 1: hypothesis true and conclusion holds, 2: conclusion fails.

    ``R``/``L`` are 2**n scratch tables, ``W``/``pairs`` small scratch arrays from
    ``workspace``; ``stats`` accumulates per-theorem counters (meanings are listed
    in the registry).
    """
    full = (np.int64(1) << n) - 1
    deg = W[0:n]
    dout = W[n:2 * n]
    din = W[2 * n:3 * n]
    path = W[3 * n:4 * n + 1]
    lab = W[4 * n + 1:5 * n + 2]
    partners = W[5 * n + 2:6 * n + 2]
    sym = W[6 * n + 2:7 * n + 2]
    cands = W[7 * n + 2:8 * n + 3]
    fill_degrees(out, inn, n, deg, dout, din)

    if code == T_FACTOR:
        w = np.empty(4, np.int64)
        matched = has_cycle_factor(out, n)
        blocked = partition_oracle(out, inn, n, w)
        if matched:
            stats[0] += 1
        else:
            stats[1] += 1
        if matched == blocked:
            if matched:
                stats[2] += 1
            else:
                stats[3] += 1
            return 2
        return 1

    if code == T_MANOUSSAKIS:
        if n < 3 or not condition_m(out, inn, n, deg) or not is_two_strong(out, inn, n):
            return 0
        return 1 if ham_dfs(out, inn, n, path, cands) else 2

    if code == T_MEYNIEL:
        if n < 2 or not meyniel(out, inn, n, deg) or not strong_within(out, inn, full):
            return 0
        return 1 if ham_dfs(out, inn, n, path, cands) else 2

    if code == T_TRIPLE:
        if n < 4 or not strong_within(out, inn, full) or not triple_condition(out, inn, n, deg, dout, din):
            return 0
        return 1 if ham_dfs(out, inn, n, path, cands) else 2

    if code == T_WOODALL:
        if n < 2 or not woodall(out, n, dout, din):
            return 0
        return 1 if ham_dfs(out, inn, n, path, cands) else 2

    if code == T_GHOUILA:
        if n < 2 or not ghouila_houri(n, dout, din):
            return 0
        return 1 if ham_dfs(out, inn, n, path, cands) else 2

    if code == T_ORE:
        if n < 3 or not ore_underlying(out, inn, n):
            return 0
        for v in range(n):
            sym[v] = out[v] | inn[v]
        return 1 if ham_dfs(sym, sym, n, path, cands) else 2

    if code == T_ONEPAIR_34:
        if n < 3 or nonadjacent_count(out, inn, n) > 1 or not is_two_strong(out, inn, n):
            return 0
        return 1 if ham_dfs(out, inn, n, path, cands) else 2

    if code == T_REMARK:
        # search mode: a "failure" is a strong, not 2-strong, non-Hamiltonian digraph
        # with exactly one non-adjacent pair
        if nonadjacent_count(out, inn, n) != 1 or not strong_within(out, inn, full):
            return 0
        if is_two_strong(out, inn, n):
            return 0
        return 1 if ham_dfs(out, inn, n, path, cands) else 2

    if code == T_TRICHOTOMY:
        if n < 3 or not meyniel(out, inn, n, deg) or not strong_within(out, inn, full):
            return 0
        fill_return_table(out, n, R)
        prof = length_profile(out, n, R)
        want = ((np.int64(1) << (n + 1)) - 1) & ~np.int64(7)  # lengths 3..n
        if (prof & want) == want:
            stats[0] += 1
            return 1
        if bipartite_exception(out, inn, n):
            stats[1] += 1
            return 1
        for m in range(3, n):
            if find_phi_labeling(out, inn, n, m, lab):
                # membership established; the family misses length m
                if (prof >> m) & 1:
                    return 2
                stats[2] += 1
                return 1
        return 2

    if code == T_CYCLES_111 or code == T_PANCYCLIC_116:
        if n < 6 or not condition_m(out, inn, n, deg):
            return 0
        c, a, b = two_smallest_pair_sums(out, inn, n, deg)
        if c == 0 or a > 2 * n - 4:
            return 0
        if not is_two_strong(out, inn, n):
            return 0
        fill_return_table(out, n, R)
        prof = length_profile(out, n, R)
        top = n if code == T_PANCYCLIC_116 else n - 1
        want = ((np.int64(1) << (top + 1)) - 1) & ~np.int64(7)
        return 1 if (prof & want) == want else 2

    if code == T_PROBLEM_117:
        if n < 3 or not condition_m(out, inn, n, deg):
            return 0
        if _low_pairs(out, inn, n, deg, 2 * n - 3, 2 * n - 2, pairs) == 0:
            return 0
        if not is_two_strong(out, inn, n):
            return 0
        fill_return_table(out, n, R)
        prof = length_profile(out, n, R)
        want = ((np.int64(1) << (n + 1)) - 1) & ~np.int64(7)
        return 1 if (prof & want) == want else 2

    if code == T_EQUIV_33 or code == T_NEARHAM_36 or code == T_TWOCYCLE_37:
        if n < 3 or not condition_m(out, inn, n, deg):
            return 0
        np_ = _low_pairs(out, inn, n, deg, 0, 2 * n - 2, pairs)
        if np_ == 0 or not is_two_strong(out, inn, n):
            return 0
        fill_return_table(out, n, R)
        ham = has_cycle_on(out, R, full)
        if code == T_EQUIV_33:
            cycle_partners(out, n, R, partners)
            status = 1
            for i in range(np_):
                u = pairs[i, 0]
                v = pairs[i, 1]
                through = ((partners[u] >> v) & 1) == 1
                if ham and through:
                    stats[0] += 1
                elif not ham and not through:
                    stats[1] += 1
                else:
                    status = 2
            return status
        if code == T_NEARHAM_36:
            status = 1
            for i in range(np_):
                u = pairs[i, 0]
                v = pairs[i, 1]
                a = has_cycle_on(out, R, full ^ (np.int64(1) << v))
                b = has_cycle_on(out, R, full ^ (np.int64(1) << u))
                if ham:
                    stats[0] += 1
                if a:
                    stats[1] += 1
                if b:
                    stats[2] += 1
                if not (ham or a or b):
                    status = 2
            return status
        # T_TWOCYCLE_37
        if ham:
            return 0
        status = 1
        for i in range(np_):
            u = pairs[i, 0]
            v = pairs[i, 1]
            if deg[u] > n - 1 or deg[v] > n - 1:
                status = 2
            if popcount(out[u] & inn[u]) > 1 or popcount(out[v] & inn[v]) > 1:
                status = 2
        return status

    if code == T_LONGCYCLE_17:
        if n < 2 or not condition_m(out, inn, n, deg) or not strong_within(out, inn, full):
            return 0
        if ham_dfs(out, inn, n, path, cands):
            stats[0] += 1
            return 1
        fill_return_table(out, n, R)
        for v in range(n):
            if has_cycle_on(out, R, full ^ (np.int64(1) << v)):
                stats[1] += 1
                return 1
        return 2

    if code == T_LEMMA_31:
        if n < 3:
            return 0
        fill_return_table(out, n, R)
        fill_length_closure(out, n, R, L)
        instances = 0
        status = 1
        for S in range(1, full + 1):
            m = popcount(S)
            if m < 2 or m > n - 1:
                continue
            if not out[ctz(S)] & R[S]:
                continue
            ext = full & ~S
            while ext:
                low = ext & -ext
                ext ^= low
                x = ctz(low)
                if popcount(out[x] & S) + popcount(inn[x] & S) >= m + 1:
                    instances += 1
                    want = ((np.int64(1) << (m + 2)) - 1) & ~np.int64(3)
                    if (L[S | low] & want) != want:
                        status = 2
        if instances == 0:
            return 0
        stats[0] += instances
        return status

    if code == T_LEMMA_32:
        instances = 0
        status = 1
        for x in range(n):
            for y in range(n):
                if x == y or (out[x] >> y) & 1:
                    continue
                k = dout[x] + din[y] - (n - 2)
                if k >= 1:
                    instances += 1
                    if popcount(out[x] & inn[y]) < k:
                        status = 2
        if instances == 0:
            return 0
        stats[0] += instances
        return status

    if code == T_LEMMA_35:
        if n < 3 or not is_two_strong(out, inn, n):
            return 0
        fill_return_table(out, n, R)
        cycle_partners(out, n, R, partners)
        instances = 0
        status = 1
        for u in range(n):
            for v in range(u + 1, n):
                if (partners[u] >> v) & 1:
                    continue
                instances += 1
                if ((out[u] | inn[u]) >> v) & 1:
                    status = 2
                if out[u] & inn[v] or out[v] & inn[u]:
                    status = 2
                if deg[u] + deg[v] > 2 * n - 4:
                    status = 2
        if instances == 0:
            return 0
        stats[0] += instances
        return status

    return 0


# -- enumeration drivers ------------------------------------------------------------------


@njit(cache=True)
def _prefilter_ok(prefilter, out, inn, n):
    if prefilter.shape[0] == 0:
        return True
    deg = np.empty(n, np.int64)
    dout = np.empty(n, np.int64)
    din = np.empty(n, np.int64)
    fill_degrees(out, inn, n, deg, dout, din)
    for i in range(prefilter.shape[0]):
        if not condition_code_holds(prefilter[i], out, inn, n, deg, dout, din):
            return False
    return True


@njit(cache=True)
def decode_arc_index(index, n, out):
    b = 0
    for u in range(n):
        row = np.int64(0)
        for v in range(n):
            if v == u:
                continue
            if (index >> b) & 1:
                row |= np.int64(1) << v
            b += 1
        out[u] = row


@njit(cache=True)
def _record(status, out, n, fails, nfail):
    if status == 2:
        if nfail < fails.shape[0]:
            for v in range(n):
                fails[nfail, v] = out[v]
        return nfail + 1
    return nfail


@njit(cache=True)
def run_exhaustive(code, n, start, stop, prefilter, fails, stats, counts):
    """Evaluate labeled digraphs with arc-index codes in [start, stop).

    counts <- (examined, hits, failures); failure rows beyond fails' capacity are
    counted but not stored.
    """
    out = np.empty(n, np.int64)
    inn = np.empty(n, np.int64)
    R, L, W, P = workspace(n)
    examined = 0
    hits = 0
    nfail = 0
    for idx in range(start, stop):
        decode_arc_index(idx, n, out)
        fill_in_rows(out, n, inn)
        if not _prefilter_ok(prefilter, out, inn, n):
            continue
        examined += 1
        st = evaluate_case(code, n, out, inn, R, L, W, P, stats)
        if st:
            hits += 1
            nfail = _record(st, out, n, fails, nfail)
    counts[0] = examined
    counts[1] = hits
    counts[2] = nfail


@njit(cache=True)
def _set_pair_state(out, inn, u, v, state):
    bu = np.int64(1) << u
    bv = np.int64(1) << v
    out[u] &= ~bv
    out[v] &= ~bu
    inn[u] &= ~bv
    inn[v] &= ~bu
    if state == 0 or state == 2:
        out[u] |= bv
        inn[v] |= bu
    if state == 1 or state == 2:
        out[v] |= bu
        inn[u] |= bv


@njit(cache=True)
def run_complement(code, n, pair_u, pair_v, pattern, start, stop, prefilter, fails, stats, counts):
    """Evaluate digraphs whose non-adjacent pairs are exactly ``pattern`` (mask over
    pair indices).  Each adjacent pair i takes a state digit in {0: u->v, 1: v->u,
    2: both}; state index = sum digit_i * 3**rank_i over adjacent pairs in
    increasing pair order.  States [start, stop) are evaluated.
    """
    npairs = pair_u.shape[0]
    adj_idx = np.empty(npairs, np.int64)
    k = 0
    for i in range(npairs):
        if not (pattern >> i) & 1:
            adj_idx[k] = i
            k += 1
    digits = np.zeros(k, np.int64)
    s = start
    for j in range(k):
        digits[j] = s % 3
        s //= 3
    out = np.zeros(n, np.int64)
    inn = np.zeros(n, np.int64)
    for j in range(k):
        i = adj_idx[j]
        _set_pair_state(out, inn, pair_u[i], pair_v[i], digits[j])
    R, L, W, P = workspace(n)
    examined = 0
    hits = 0
    nfail = 0
    idx = start
    while idx < stop:
        if _prefilter_ok(prefilter, out, inn, n):
            examined += 1
            st = evaluate_case(code, n, out, inn, R, L, W, P, stats)
            if st:
                hits += 1
                nfail = _record(st, out, n, fails, nfail)
        idx += 1
        if idx >= stop:
            break
        j = 0
        while j < k:
            digits[j] += 1
            if digits[j] == 3:
                digits[j] = 0
                i = adj_idx[j]
                _set_pair_state(out, inn, pair_u[i], pair_v[i], 0)
                j += 1
            else:
                i = adj_idx[j]
                _set_pair_state(out, inn, pair_u[i], pair_v[i], digits[j])
                break
    counts[0] = examined
    counts[1] = hits
    counts[2] = nfail


@njit(cache=True)
def run_batch(code, n, rows, start, stop, prefilter, fails, stats, counts):
    out = np.empty(n, np.int64)
    inn = np.empty(n, np.int64)
    R, L, W, P = workspace(n)
    examined = 0
    hits = 0
    nfail = 0
    for b in range(start, stop):
        for v in range(n):
            out[v] = rows[b, v]
        fill_in_rows(out, n, inn)
        if not _prefilter_ok(prefilter, out, inn, n):
            continue
        examined += 1
        st = evaluate_case(code, n, out, inn, R, L, W, P, stats)
        if st:
            hits += 1
            nfail = _record(st, out, n, fails, nfail)
    counts[0] = examined
    counts[1] = hits
    counts[2] = nfail


@njit(cache=True)
def filter_condition_m_two_strong(rows, keep):
    B = rows.shape[0]
    n = rows.shape[1]
    deg = np.empty(n, np.int64)
    dout = np.empty(n, np.int64)
    din = np.empty(n, np.int64)
    out = np.empty(n, np.int64)
    inn = np.empty(n, np.int64)
    for b in range(B):
        for v in range(n):
            out[v] = rows[b, v]
        fill_in_rows(out, n, inn)
        fill_degrees(out, inn, n, deg, dout, din)
        keep[b] = condition_m(out, inn, n, deg) and is_two_strong(out, inn, n)
