# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled option-combination search; behavioral twin of `_pysearch`.

The depth-first walk over per-voter priced options dominates the runtime of
the exhaustive solvers, so it is the one piece built as a C extension.
"""

from cpython cimport array
import array

from .errors import CapacityError

DEF MODE_SCORES = 0
DEF MODE_MAXIMIN = 1
DEF MODE_COPELAND = 2

cdef long long _NO_BEST = -1


cdef bint _wins(long long* acc, Py_ssize_t m, Py_ssize_t p, int mode,
                long long cop_num, long long cop_den,
                long long* scratch) noexcept:
    cdef Py_ssize_t i, j
    cdef long long sp, si, a, b
    if mode == MODE_SCORES:
        sp = acc[p]
        for i in range(m):
            if acc[i] > sp:
                return False
        return True
    if m == 1:
        return True
    if mode == MODE_MAXIMIN:
        sp = acc[p * m] if p != 0 else acc[1]
        for j in range(m):
            if j != p and acc[p * m + j] < sp:
                sp = acc[p * m + j]
        for i in range(m):
            if i == p:
                continue
            si = acc[i * m] if i != 0 else acc[i * m + 1]
            for j in range(m):
                if j != i and acc[i * m + j] < si:
                    si = acc[i * m + j]
            if si > sp:
                return False
        return True
    # Copeland: scores scaled by the denominator of alpha.
    for i in range(m):
        scratch[i] = 0
    for i in range(m):
        for j in range(i + 1, m):
            a = acc[i * m + j]
            b = acc[j * m + i]
            if a > b:
                scratch[i] += cop_den
            elif b > a:
                scratch[j] += cop_den
            else:
                scratch[i] += cop_num
                scratch[j] += cop_num
    sp = scratch[p]
    for i in range(m):
        if scratch[i] > sp:
            return False
    return True


def search_best(costs_obj, offsets_obj, effects_obj, Py_ssize_t eff_len,
                Py_ssize_t m, long long budget, Py_ssize_t p, int mode,
                long long cop_num, long long cop_den, long long node_cap):
    """Same contract as `_pysearch.search_best`, on array('q') buffers."""
    cdef long long[::1] costs = costs_obj
    cdef long long[::1] offsets = offsets_obj
    cdef long long[::1] effects = effects_obj
    cdef Py_ssize_t n = offsets.shape[0] - 1
    cdef Py_ssize_t i, depth, idx
    cdef long long o, lo, hi, base, c2, cheapest

    for i in range(n):
        if offsets[i] >= offsets[i + 1]:
            return None

    cdef array.array template = array.array('q', [])
    cdef array.array suffix_arr = array.clone(template, n + 1, zero=True)
    cdef array.array acc_arr = array.clone(template, eff_len, zero=True)
    cdef array.array scratch_arr = array.clone(template, m, zero=True)
    cdef array.array choice_arr = array.clone(template, n if n else 1, zero=True)
    cdef array.array best_arr = array.clone(template, n if n else 1, zero=True)
    cdef array.array iter_arr = array.clone(template, n + 1, zero=True)
    cdef array.array cost_arr = array.clone(template, n + 1, zero=True)
    cdef long long[::1] suffix_min = suffix_arr
    cdef long long[::1] acc = acc_arr
    cdef long long[::1] scratch = scratch_arr
    cdef long long[::1] choice = choice_arr
    cdef long long[::1] best_choice = best_arr
    cdef long long[::1] opt_iter = iter_arr
    cdef long long[::1] cost_at = cost_arr

    for i in range(n - 1, -1, -1):
        cheapest = costs[offsets[i]]
        for o in range(offsets[i] + 1, offsets[i + 1]):
            if costs[o] < cheapest:
                cheapest = costs[o]
        suffix_min[i] = cheapest + suffix_min[i + 1]

    cdef long long best_cost = _NO_BEST
    cdef long long nodes = 0
    cdef bint capped = False

    depth = 0
    cost_at[0] = 0
    if n > 0:
        opt_iter[0] = offsets[0]

    if n == 0:
        if _wins(&acc[0], m, p, mode, cop_num, cop_den, &scratch[0]):
            return 0, []
        return None

    while depth >= 0:
        if depth == n:
            # Pruning guarantees this leaf strictly improves on best_cost.
            if _wins(&acc[0], m, p, mode, cop_num, cop_den, &scratch[0]):
                best_cost = cost_at[n]
                for i in range(n):
                    best_choice[i] = choice[i]
            depth -= 1
            o = offsets[depth] + choice[depth]
            base = o * eff_len
            for idx in range(eff_len):
                acc[idx] -= effects[base + idx]
            continue
        lo = offsets[depth]
        hi = offsets[depth + 1]
        o = opt_iter[depth]
        if o >= hi:
            depth -= 1
            if depth >= 0:
                o = offsets[depth] + choice[depth]
                base = o * eff_len
                for idx in range(eff_len):
                    acc[idx] -= effects[base + idx]
            continue
        opt_iter[depth] = o + 1
        c2 = cost_at[depth] + costs[o]
        if c2 + suffix_min[depth + 1] > budget:
            continue
        if best_cost >= 0 and c2 + suffix_min[depth + 1] >= best_cost:
            continue
        nodes += 1
        if nodes > node_cap:
            capped = True
            break
        base = o * eff_len
        for idx in range(eff_len):
            acc[idx] += effects[base + idx]
        choice[depth] = o - lo
        cost_at[depth + 1] = c2
        depth += 1
        if depth < n:
            opt_iter[depth] = offsets[depth]

    if capped:
        raise CapacityError(
            f"combination search exceeded its node cap ({node_cap})"
        )
    if best_cost < 0:
        return None
    return best_cost, [best_choice[i] for i in range(n)]
