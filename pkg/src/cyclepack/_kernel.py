"""Compiled branch-and-bound kernel (numba).

Same search as the pure Python engine in solver.py: Russian-doll row loop
with a prefix-optimum table, greedy weighted clique cover per node, and
optional capacity-family pruning.  Candidate sets are fixed-width bitsets
in uint64 words; the recursion is unrolled onto explicit stacks so the
whole search runs inside one nopython region.

Wall-clock budgets are enforced between rows and by adaptive node chunks,
so they are approximate; node budgets are exact.
"""

from __future__ import annotations

import time
from typing import List, Optional

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _chain_dp(k, masses, allows, ub, f, g, run):
    """Exact optimum of the cyclic program max sum x_l with x_l <= masses[l]
    and x_l + x_{l+1} <= allows[l] (indices mod k).  Scratch arrays f, g,
    run must be at least V+1 long where V bounds the values."""
    V = 0
    for l in range(k):
        if masses[l] > V:
            V = masses[l]
    A = 0
    for l in range(k):
        if allows[l] > A:
            A = allows[l]
    if A < V:
        V = A
    if V > f.shape[0] - 1:
        V = f.shape[0] - 1
    for l in range(k):
        u = masses[l]
        if allows[l] < u:
            u = allows[l]
        if allows[(l - 1) % k] < u:
            u = allows[(l - 1) % k]
        if u > V:
            u = V
        if u < 0:
            u = 0
        ub[l] = u
    best = 0
    if k == 1:
        return ub[0]
    if k == 2:
        for x0 in range(ub[0] + 1):
            x1 = masses[1]
            if allows[0] - x0 < x1:
                x1 = allows[0] - x0
            if allows[1] - x0 < x1:
                x1 = allows[1] - x0
            if x1 < 0:
                x1 = 0
            if x0 + x1 > best:
                best = x0 + x1
        return best
    NEG = np.int64(-1) << 40
    for x0 in range(ub[0] + 1):
        for y in range(V + 1):
            f[y] = NEG
        top = allows[0] - x0
        if ub[1] < top:
            top = ub[1]
        for x in range(top + 1):
            f[x] = x0 + x
        for l in range(2, k):
            acc = NEG
            for y in range(V + 1):
                if f[y] > acc:
                    acc = f[y]
                run[y] = acc
            for y in range(V + 1):
                g[y] = NEG
            for x in range(ub[l] + 1):
                rem = allows[l - 1] - x
                if rem < 0:
                    break
                if rem > V:
                    rem = V
                if run[rem] > NEG:
                    g[x] = run[rem] + x
            for y in range(V + 1):
                f[y] = g[y]
        top = allows[k - 1] - x0
        if ub[k - 1] < top:
            top = ub[k - 1]
        for x in range(top + 1):
            if f[x] > best:
                best = f[x]
    return best


@njit(cache=True, nogil=True)
def _bnb(nwords, adjbits, nonadj, weights, Ctab, P0, curw0, chosen_init, n_init,
         best_in, best_out_set, target, node_budget,
         ngrp, vgrp, grp_cap, grp_fam, fam_m, nfam, used0, grp_mask,
         nch_f, vlayer, chain_k, chain_caps, kmax, usedL0,
         order_stk, cum_stk, k_stk, curw_stk, nch_stk, R_stk, chosen_stk, used_stk,
         usedL_stk, pwl, dp_masses, dp_allows, dp_ub, dp_f, dp_g, dp_run,
         commons, cmax, csize, cvert, pw, fam_sum):
    best = best_in
    nodes = 0
    found = False
    aborted = False
    lvl = 0
    for w in range(nwords):
        R_stk[0, w] = P0[w]
    curw_stk[0] = curw0
    nch_stk[0] = n_init
    for t in range(n_init):
        chosen_stk[0, t] = chosen_init[t]
    for g in range(ngrp):
        used_stk[0, g] = used0[g]
    for q in range(nch_f * kmax):
        usedL_stk[0, q] = usedL0[q]
    entered = True
    while lvl >= 0:
        if entered:
            entered = False
            nodes += 1
            if node_budget > 0 and nodes > node_budget:
                aborted = True
                break
            curw = curw_stk[lvl]
            if ngrp > 0:
                for g in range(ngrp):
                    if grp_cap[g] - used_stk[lvl, g] <= 0:
                        for w in range(nwords):
                            R_stk[lvl, w] &= ~grp_mask[g, w]
            hb = -1
            for w in range(nwords - 1, -1, -1):
                x = R_stk[lvl, w]
                if x != np.uint64(0):
                    b = 63
                    while (x >> np.uint64(b)) == np.uint64(0):
                        b -= 1
                    hb = (w << 6) + b
                    break
            if hb < 0:
                lvl -= 1
                continue
            if curw + Ctab[hb] <= best:
                lvl -= 1
                continue
            if ngrp > 0:
                for g in range(ngrp):
                    pw[g] = 0
            for q in range(nch_f * kmax):
                pwl[q] = 0
            ncl = 0
            for w in range(nwords):
                x = R_stk[lvl, w]
                base = w << 6
                while x != np.uint64(0):
                    lsb = x & (np.uint64(0) - x)
                    b = 0
                    t = lsb
                    while t > np.uint64(1):
                        t >>= np.uint64(1)
                        b += 1
                    u = base + b
                    x ^= lsb
                    wu = weights[u]
                    if ngrp > 0:
                        for q in range(vgrp.shape[1]):
                            g = vgrp[u, q]
                            if g < 0:
                                break
                            pw[g] += wu
                    for f in range(nch_f):
                        pwl[f * kmax + vlayer[u, f]] += wu
                    placed = False
                    uw = u >> 6
                    ub = np.uint64(1) << np.uint64(u & 63)
                    for j in range(ncl):
                        if (commons[j, uw] & ub) != np.uint64(0):
                            for ww in range(nwords):
                                commons[j, ww] &= adjbits[u, ww]
                            if wu > cmax[j]:
                                cmax[j] = wu
                            cvert[j, csize[j]] = u
                            csize[j] += 1
                            placed = True
                            break
                    if not placed:
                        for ww in range(nwords):
                            commons[ncl, ww] = adjbits[u, ww]
                        cmax[ncl] = wu
                        cvert[ncl, 0] = u
                        csize[ncl] = 1
                        ncl += 1
            cap_term = np.int64(1) << 60
            if ngrp > 0:
                for f in range(nfam):
                    fam_sum[f] = 0
                for g in range(ngrp):
                    allow = grp_cap[g] - used_stk[lvl, g]
                    if allow < 0:
                        allow = 0
                    t2 = pw[g]
                    if allow < t2:
                        t2 = allow
                    fam_sum[grp_fam[g]] += t2
                for f in range(nfam):
                    t3 = fam_sum[f] // fam_m[f]
                    if t3 < cap_term:
                        cap_term = t3
            for f in range(nch_f):
                kk = chain_k[f]
                for l in range(kk):
                    dp_masses[l] = pwl[f * kmax + l]
                    a = chain_caps[f, l] - usedL_stk[lvl, f * kmax + l] \
                        - usedL_stk[lvl, f * kmax + ((l + 1) % kk)]
                    if a < 0:
                        a = 0
                    dp_allows[l] = a
                t4 = _chain_dp(kk, dp_masses, dp_allows, dp_ub, dp_f, dp_g, dp_run)
                if t4 < cap_term:
                    cap_term = t4
            if (ngrp > 0 or nch_f > 0) and curw + cap_term <= best:
                lvl -= 1
                continue
            idx = 0
            run = np.int64(0)
            for j in range(ncl):
                run += cmax[j]
                if run > cap_term:
                    run = cap_term
                for t2 in range(csize[j]):
                    order_stk[lvl, idx] = cvert[j, t2]
                    cum_stk[lvl, idx] = run
                    idx += 1
            k_stk[lvl] = idx - 1
            continue
        k = k_stk[lvl]
        if k < 0:
            lvl -= 1
            continue
        if curw_stk[lvl] + cum_stk[lvl, k] <= best:
            lvl -= 1
            continue
        v = order_stk[lvl, k]
        nw = curw_stk[lvl] + weights[v]
        nch = nch_stk[lvl]
        if nw > best:
            best = nw
            for t2 in range(nch):
                best_out_set[t2] = chosen_stk[lvl, t2]
            best_out_set[nch] = v
            best_out_set[nch + 1] = -1
            if best >= target:
                found = True
                break
        vw = v >> 6
        vb = np.uint64(1) << np.uint64(v & 63)
        R_stk[lvl, vw] ^= vb
        k_stk[lvl] = k - 1
        anych = False
        for w in range(nwords):
            cm = R_stk[lvl, w] & nonadj[v, w]
            R_stk[lvl + 1, w] = cm
            if cm != np.uint64(0):
                anych = True
        if anych:
            curw_stk[lvl + 1] = nw
            for t2 in range(nch):
                chosen_stk[lvl + 1, t2] = chosen_stk[lvl, t2]
            chosen_stk[lvl + 1, nch] = v
            nch_stk[lvl + 1] = nch + 1
            for g in range(ngrp):
                used_stk[lvl + 1, g] = used_stk[lvl, g]
            for q in range(vgrp.shape[1]):
                g = vgrp[v, q]
                if g < 0:
                    break
                used_stk[lvl + 1, g] += weights[v]
            for q in range(nch_f * kmax):
                usedL_stk[lvl + 1, q] = usedL_stk[lvl, q]
            for f in range(nch_f):
                usedL_stk[lvl + 1, f * kmax + vlayer[v, f]] += weights[v]
            lvl += 1
            entered = True
    return best, nodes, aborted, found


def _masks_to_words(masks: List[int], n: int, nwords: int) -> np.ndarray:
    out = np.zeros((len(masks), nwords), dtype=np.uint64)
    nbytes = nwords * 8
    for i, m in enumerate(masks):
        out[i] = np.frombuffer(m.to_bytes(nbytes, "little"), dtype="<u8")
    return out


class _State:
    """Preallocated stacks and scratch for one instance size."""

    def __init__(self, n: int, weights: List[int], adj: List[int], families: list,
                 chains: list = ()):
        nwords = max(1, (n + 63) // 64)
        self.n = n
        self.nwords = nwords
        self.weights = np.asarray(weights, dtype=np.int64)
        full = (1 << n) - 1
        self.adjbits = _masks_to_words(adj, n, nwords)
        self.nonadj = _masks_to_words(
            [full & ~m & ~(1 << v) for v, m in enumerate(adj)], n, nwords)
        group_masks: List[int] = []
        caps: List[int] = []
        fams: List[int] = []
        mults: List[int] = []
        for fi, (mult, groups) in enumerate(families):
            mults.append(mult)
            for (mask, cap) in groups:
                group_masks.append(mask)
                caps.append(cap)
                fams.append(fi)
        G = len(group_masks)
        self.ngrp = G
        self.nfam = len(mults)
        # cyclic chain families
        F = len(chains)
        self.nch_f = F
        kmax = max([len(c[1]) for c in chains], default=1)
        self.kmax = kmax
        self.vlayer = np.zeros((max(1, n), max(1, F)), dtype=np.int32)
        self.chain_k = np.zeros(max(1, F), dtype=np.int64)
        self.chain_caps = np.zeros((max(1, F), kmax), dtype=np.int64)
        self.usedL0 = np.zeros(max(1, F) * kmax, dtype=np.int64)
        vcap = 1
        for f, (layers, ccaps, used0) in enumerate(chains):
            self.chain_k[f] = len(ccaps)
            for l, c in enumerate(ccaps):
                self.chain_caps[f, l] = c
                if c > vcap:
                    vcap = c
            for v in range(n):
                self.vlayer[v, f] = layers[v]
            for l, u in enumerate(used0):
                self.usedL0[f * kmax + l] = u
        vcap = min(vcap, 255)
        self.dp_masses = np.zeros(kmax, dtype=np.int64)
        self.dp_allows = np.zeros(kmax, dtype=np.int64)
        self.dp_ub = np.zeros(kmax, dtype=np.int64)
        self.dp_f = np.zeros(vcap + 2, dtype=np.int64)
        self.dp_g = np.zeros(vcap + 2, dtype=np.int64)
        self.dp_run = np.zeros(vcap + 2, dtype=np.int64)
        self.pwl = np.zeros(max(1, F) * kmax, dtype=np.int64)
        if G:
            memb = [[] for _ in range(n)]
            for g, mask in enumerate(group_masks):
                m = mask
                while m:
                    lsb = m & -m
                    memb[lsb.bit_length() - 1].append(g)
                    m ^= lsb
            mg = max(1, max(len(x) for x in memb))
            self.vgrp = np.full((n, mg), -1, dtype=np.int32)
            for v in range(n):
                for q, g in enumerate(memb[v]):
                    self.vgrp[v, q] = g
            self.grp_cap = np.asarray(caps, dtype=np.int64)
            self.grp_fam = np.asarray(fams, dtype=np.int32)
            self.fam_m = np.asarray(mults, dtype=np.int64)
            self.grp_mask = _masks_to_words(group_masks, n, nwords)
        else:
            self.vgrp = np.full((max(1, n), 1), -1, dtype=np.int32)
            self.grp_cap = np.zeros(1, dtype=np.int64)
            self.grp_fam = np.zeros(1, dtype=np.int32)
            self.fam_m = np.ones(1, dtype=np.int64)
            self.grp_mask = np.zeros((1, nwords), dtype=np.uint64)
        md = n + 2
        self.order_stk = np.zeros((md, max(1, n)), dtype=np.int32)
        self.cum_stk = np.zeros((md, max(1, n)), dtype=np.int64)
        self.k_stk = np.zeros(md, dtype=np.int64)
        self.curw_stk = np.zeros(md, dtype=np.int64)
        self.nch_stk = np.zeros(md, dtype=np.int64)
        self.R_stk = np.zeros((md, nwords), dtype=np.uint64)
        self.chosen_stk = np.zeros((md, max(1, n)), dtype=np.int32)
        self.used_stk = np.zeros((md, max(1, G)), dtype=np.int64)
        self.usedL_stk = np.zeros((md, max(1, F) * kmax), dtype=np.int64)
        self.commons = np.zeros((max(1, n), nwords), dtype=np.uint64)
        self.cmax = np.zeros(max(1, n), dtype=np.int64)
        self.csize = np.zeros(max(1, n), dtype=np.int64)
        self.cvert = np.zeros((max(1, n), max(1, n)), dtype=np.int32)
        self.pw = np.zeros(max(1, G), dtype=np.int64)
        self.fam_sum = np.zeros(max(1, self.nfam), dtype=np.int64)


def row_loop_solve(n: int, weights: List[int], adj: List[int], families: list,
                   chains: list, warm: List[int], budget, t0: float,
                   floor: int = 0):
    """Engine entry point, signature-compatible with the Python engine."""
    node_limit = budget.node_limit if budget else None
    time_limit = budget.time_limit if budget else None
    st = _State(n, weights, adj, families, chains)
    nwords = st.nwords
    Ctab = np.zeros(max(1, n), dtype=np.int64)
    best = max(sum(weights[v] for v in warm), floor)
    best_set = sorted(warm)
    total_nodes = 0
    out_set = np.full(n + 2, -1, dtype=np.int32)
    P0 = np.zeros(nwords, dtype=np.uint64)
    chosen_init = np.zeros(max(1, n), dtype=np.int32)
    used0 = np.zeros(st.used_stk.shape[1], dtype=np.int64)
    usedL0 = np.zeros(st.usedL_stk.shape[1], dtype=np.int64)
    optimal = True
    rate = 2_000_000.0    # refined after the first row
    for i in range(n):
        if time_limit is not None and time.monotonic() - t0 > time_limit:
            optimal = False
            break
        target = best + weights[i]
        mask = ~adj[i] & ((1 << i) - 1)
        if weights[i] > best:
            best = weights[i]
            best_set = [i]
        if not mask:
            Ctab[i] = best
            continue
        P0[:] = np.frombuffer(mask.to_bytes(nwords * 8, "little"), dtype="<u8")
        chosen_init[0] = i
        used0[:] = 0
        for q in range(st.vgrp.shape[1]):
            g = st.vgrp[i, q]
            if g < 0:
                break
            used0[g] += weights[i]
        usedL0[:] = st.usedL0
        for f in range(st.nch_f):
            usedL0[f * st.kmax + st.vlayer[i, f]] += weights[i]
        chunk = 0
        if node_limit is not None:
            chunk = node_limit - total_nodes
            if chunk <= 0:
                optimal = False
                break
        if time_limit is not None:
            remaining = time_limit - (time.monotonic() - t0)
            est = int(rate * max(remaining, 0.0) * 1.25) + 500_000
            chunk = min(chunk, est) if chunk else est
        tcall = time.monotonic()
        b, nodes, aborted, found = _bnb(
            nwords, st.adjbits, st.nonadj, st.weights, Ctab,
            P0, weights[i], chosen_init, 1,
            best, out_set, target, chunk,
            st.ngrp, st.vgrp, st.grp_cap, st.grp_fam, st.fam_m,
            max(1, st.nfam), used0, st.grp_mask,
            st.nch_f, st.vlayer, st.chain_k, st.chain_caps, st.kmax, usedL0,
            st.order_stk, st.cum_stk, st.k_stk, st.curw_stk,
            st.nch_stk, st.R_stk, st.chosen_stk, st.used_stk,
            st.usedL_stk, st.pwl, st.dp_masses, st.dp_allows, st.dp_ub,
            st.dp_f, st.dp_g, st.dp_run,
            st.commons, st.cmax, st.csize, st.cvert, st.pw, st.fam_sum)
        dt = time.monotonic() - tcall
        if dt > 0.5:
            rate = max(100_000.0, nodes / dt)
        total_nodes += nodes
        if b > best:
            best = int(b)
            best_set = []
            for t in out_set:
                if t < 0:
                    break
                best_set.append(int(t))
        if aborted:
            optimal = False
            break
        Ctab[i] = best
    return best, best_set, total_nodes, optimal
