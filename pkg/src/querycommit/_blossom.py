"""Maximum-weight matching on general graphs (Galil's primal-dual blossom
method, O(n^3)).

Array-based port of the classic mwmatching formulation: blossoms are numbered
n..2n-1, endpoints 2k/2k+1 address the two ends of edge k, and all state lives
in flat arrays so the routine compiles under numba (with a plain-Python
fallback when the JIT is unavailable or QC_NO_JIT is set).  Edges can be
masked out per call via ``alive``, which lets simulation code re-solve
shrinking residual graphs against one static adjacency structure.

With unit weights a maximum-weight matching is a maximum-cardinality
matching, so the same kernel serves both.
"""

from __future__ import annotations

import os

import numpy as np

try:
    if os.environ.get("QC_NO_JIT"):
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


@njit(cache=True)
def _enqueue_leaves(b, n, childs_start, childs_len, childs_pool, stack, queue, qlen):
    """Push every vertex inside blossom b onto the scan queue."""
    ls = 0
    stack[ls] = b
    ls += 1
    while ls > 0:
        ls -= 1
        t = stack[ls]
        if t < n:
            queue[qlen] = t
            qlen += 1
        else:
            s0 = childs_start[t]
            for ii in range(childs_len[t] - 1, -1, -1):
                stack[ls] = childs_pool[s0 + ii]
                ls += 1
    return qlen


@njit(cache=True)
def _set_inblossom_leaves(b, top, n, childs_start, childs_len, childs_pool, stack, inblossom):
    ls = 0
    stack[ls] = b
    ls += 1
    while ls > 0:
        ls -= 1
        t = stack[ls]
        if t < n:
            inblossom[t] = top
        else:
            s0 = childs_start[t]
            for ii in range(childs_len[t] - 1, -1, -1):
                stack[ls] = childs_pool[s0 + ii]
                ls += 1


@njit(cache=True)
def _assign_label(
    w,
    t,
    p,
    n,
    label,
    labelend,
    bestedge,
    inblossom,
    blossombase,
    mate_ep,
    endpoint,
    childs_start,
    childs_len,
    childs_pool,
    stack,
    queue,
    qlen,
):
    """Label vertex w (and its blossom) with S (t=1) or T (t=2).

    A T label immediately S-labels the mate of the blossom base, whose
    leaves join the scan queue.  Returns the new queue length.
    """
    b = inblossom[w]
    label[w] = t
    label[b] = t
    labelend[w] = p
    labelend[b] = p
    bestedge[w] = -1
    bestedge[b] = -1
    if t == 1:
        qlen = _enqueue_leaves(b, n, childs_start, childs_len, childs_pool, stack, queue, qlen)
    else:
        base = blossombase[b]
        mb = mate_ep[base]
        w2 = endpoint[mb]
        b2 = inblossom[w2]
        label[w2] = 1
        label[b2] = 1
        labelend[w2] = mb ^ 1
        labelend[b2] = mb ^ 1
        bestedge[w2] = -1
        bestedge[b2] = -1
        qlen = _enqueue_leaves(b2, n, childs_start, childs_len, childs_pool, stack, queue, qlen)
    return qlen


@njit(cache=True)
def _augment_blossom(
    b,
    v,
    n,
    blossomparent,
    blossombase,
    childs_start,
    childs_len,
    childs_pool,
    endps_pool,
    endpoint,
    mate_ep,
    job_stack,
    rot_buf,
):
    """Rotate matched edges inside blossom b so that vertex v becomes the base.

    Iterative version of the classic recursion: sub-blossom jobs are pushed
    onto a stack; parent-level mate writes and child-internal writes touch
    disjoint vertices, so processing order does not matter.
    """
    top = 0
    job_stack[top] = b
    job_stack[top + 1] = v
    top += 2
    while top > 0:
        top -= 2
        ab = job_stack[top]
        av = job_stack[top + 1]
        # bubble up from av to the immediate child of ab containing it
        t = av
        while blossomparent[t] != ab:
            t = blossomparent[t]
        if t >= n:
            job_stack[top] = t
            job_stack[top + 1] = av
            top += 2
        cs = childs_start[ab]
        cl = childs_len[ab]
        i0 = 0
        for ii in range(cl):
            if childs_pool[cs + ii] == t:
                i0 = ii
                break
        if i0 & 1:
            jj = i0 - cl
            jstep = 1
            endptrick = 0
        else:
            jj = i0
            jstep = -1
            endptrick = 1
        while jj != 0:
            jj += jstep
            pp = endps_pool[cs + ((jj - endptrick) % cl)] ^ endptrick
            t2 = childs_pool[cs + (jj % cl)]
            if t2 >= n:
                job_stack[top] = t2
                job_stack[top + 1] = endpoint[pp]
                top += 2
            jj += jstep
            t2 = childs_pool[cs + (jj % cl)]
            if t2 >= n:
                job_stack[top] = t2
                job_stack[top + 1] = endpoint[pp ^ 1]
                top += 2
            mate_ep[endpoint[pp]] = pp ^ 1
            mate_ep[endpoint[pp ^ 1]] = pp
        if i0 > 0:
            for ii in range(cl):
                rot_buf[ii] = childs_pool[cs + (i0 + ii) % cl]
            for ii in range(cl):
                childs_pool[cs + ii] = rot_buf[ii]
            for ii in range(cl):
                rot_buf[ii] = endps_pool[cs + (i0 + ii) % cl]
            for ii in range(cl):
                endps_pool[cs + ii] = rot_buf[ii]
        blossombase[ab] = blossombase[childs_pool[cs]]


@njit(cache=True)
def _mwm_kernel(n, eu, ev, wt, alive, nb_ptr, nb_end):
    """Maximum-weight matching over the alive edges.

    Returns mate[v] = matched partner vertex or -1.  nb_ptr/nb_end is the
    static CSR adjacency over remote endpoint ids (edge k has endpoints
    2k -> eu[k] and 2k+1 -> ev[k]; entries point away from the owning
    vertex).
    """
    m = len(eu)
    mate = np.full(n, -1, dtype=np.int32)
    if n == 0 or m == 0:
        return mate

    maxweight = 0.0
    any_alive = False
    for k in range(m):
        if alive[k]:
            any_alive = True
            if wt[k] > maxweight:
                maxweight = wt[k]
    if not any_alive:
        return mate

    two = 2 * n
    endpoint = np.empty(2 * m, dtype=np.int32)
    for k in range(m):
        endpoint[2 * k] = eu[k]
        endpoint[2 * k + 1] = ev[k]

    mate_ep = np.full(n, -1, dtype=np.int32)
    label = np.zeros(two, dtype=np.int8)
    labelend = np.full(two, -1, dtype=np.int32)
    inblossom = np.empty(n, dtype=np.int32)
    for v in range(n):
        inblossom[v] = v
    blossomparent = np.full(two, -1, dtype=np.int32)
    blossombase = np.full(two, -1, dtype=np.int32)
    for v in range(n):
        blossombase[v] = v
    bestedge = np.full(two, -1, dtype=np.int32)
    dualvar = np.empty(two, dtype=np.float64)
    for v in range(n):
        dualvar[v] = maxweight
    for b in range(n, two):
        dualvar[b] = 0.0
    allowedge = np.zeros(m, dtype=np.uint8)

    # Blossom children and cycle endpoints: parallel flat pools addressed by
    # childs_start/childs_len.  Live data is at most 2n-1 entries (the
    # blossom forest), so compaction always recovers space.
    pool_cap = 16 * n + 64
    childs_pool = np.zeros(pool_cap, dtype=np.int32)
    endps_pool = np.zeros(pool_cap, dtype=np.int32)
    scratch_c = np.empty(pool_cap, dtype=np.int32)
    scratch_e = np.empty(pool_cap, dtype=np.int32)
    childs_start = np.zeros(two, dtype=np.int32)
    childs_len = np.zeros(two, dtype=np.int32)
    pool_top = 0

    # Per-blossom least-slack edge lists (len -1 meaning absent); reset every
    # stage.  Live size is bounded by (#nontrivial blossoms)x(#top blossoms).
    bbe_cap = (n * n) // 3 + 8 * n + 64
    bbe_pool = np.zeros(bbe_cap, dtype=np.int32)
    bbe_scratch = np.empty(bbe_cap, dtype=np.int32)
    bbe_start = np.zeros(two, dtype=np.int32)
    bbe_len = np.full(two, -1, dtype=np.int32)
    bbe_top = 0

    unused = np.empty(n, dtype=np.int32)
    n_unused = 0
    for b in range(two - 1, n - 1, -1):
        unused[n_unused] = b
        n_unused += 1

    qcap = 16 * n + 64
    queue = np.empty(qcap, dtype=np.int32)
    qlen = 0

    stack = np.empty(two + 2, dtype=np.int32)
    leaf_buf = np.empty(n, dtype=np.int32)
    job_stack = np.empty(4 * n + 8, dtype=np.int32)
    path_buf = np.empty(two, dtype=np.int32)
    ends_buf = np.empty(two, dtype=np.int32)
    exp_list = np.empty(two, dtype=np.int32)
    bestedgeto = np.full(two, -1, dtype=np.int32)
    rot_buf = np.empty(n + 2, dtype=np.int32)

    for _stage in range(n):
        for b in range(two):
            label[b] = 0
            bestedge[b] = -1
            bbe_len[b] = -1
        bbe_top = 0
        for k in range(m):
            allowedge[k] = 0
        qlen = 0

        for v in range(n):
            if mate_ep[v] == -1 and label[inblossom[v]] == 0:
                qlen = _assign_label(
                    v, 1, -1, n, label, labelend, bestedge, inblossom,
                    blossombase, mate_ep, endpoint, childs_start, childs_len,
                    childs_pool, stack, queue, qlen,
                )

        augmented = False
        while True:
            while qlen > 0 and not augmented:
                if qlen > qcap - 4 * n - 8:
                    raise RuntimeError("blossom queue overflow")
                qlen -= 1
                v = queue[qlen]
                for pi in range(nb_ptr[v], nb_ptr[v + 1]):
                    p = nb_end[pi]
                    k = p // 2
                    if not alive[k]:
                        continue
                    w = endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    kslack = 0.0
                    if not allowedge[k]:
                        kslack = dualvar[eu[k]] + dualvar[ev[k]] - 2.0 * wt[k]
                        if kslack <= 0.0:
                            allowedge[k] = 1
                    if allowedge[k]:
                        bw = inblossom[w]
                        if label[bw] == 0:
                            qlen = _assign_label(
                                w, 2, p ^ 1, n, label, labelend, bestedge,
                                inblossom, blossombase, mate_ep, endpoint,
                                childs_start, childs_len, childs_pool, stack,
                                queue, qlen,
                            )
                        elif label[bw] == 1:
                            # scan for the lowest common ancestor base
                            base = -1
                            pv = v
                            pw = w
                            path_n = 0
                            while pv != -2 or pw != -2:
                                b = inblossom[pv]
                                if label[b] & 4:
                                    base = blossombase[b]
                                    break
                                path_buf[path_n] = b
                                path_n += 1
                                label[b] = 5
                                if labelend[b] == -1:
                                    pv = -2
                                else:
                                    pv = endpoint[labelend[b]]
                                    b = inblossom[pv]
                                    pv = endpoint[labelend[b]]
                                if pw != -2:
                                    tmp = pv
                                    pv = pw
                                    pw = tmp
                            for ii in range(path_n):
                                label[path_buf[ii]] = 1
                            if base >= 0:
                                # ---- add a new blossom around the cycle ----
                                if pool_top + n + 2 > pool_cap:
                                    # compact live slices
                                    newtop = 0
                                    for b2 in range(n, two):
                                        if childs_len[b2] > 0:
                                            s0 = childs_start[b2]
                                            for ii in range(childs_len[b2]):
                                                scratch_c[newtop + ii] = childs_pool[s0 + ii]
                                                scratch_e[newtop + ii] = endps_pool[s0 + ii]
                                            childs_start[b2] = newtop
                                            newtop += childs_len[b2]
                                    for ii in range(newtop):
                                        childs_pool[ii] = scratch_c[ii]
                                        endps_pool[ii] = scratch_e[ii]
                                    pool_top = newtop
                                bb = inblossom[base]
                                bv_ = inblossom[v]
                                bw_ = inblossom[w]
                                n_unused -= 1
                                bnew = unused[n_unused]
                                blossombase[bnew] = base
                                blossomparent[bnew] = -1
                                blossomparent[bb] = bnew
                                cn = 0
                                while bv_ != bb:
                                    blossomparent[bv_] = bnew
                                    path_buf[cn] = bv_
                                    ends_buf[cn] = labelend[bv_]
                                    cn += 1
                                    vv = endpoint[labelend[bv_]]
                                    bv_ = inblossom[vv]
                                start = pool_top
                                childs_pool[pool_top] = bb
                                pool_top += 1
                                for ii in range(cn - 1, -1, -1):
                                    childs_pool[pool_top] = path_buf[ii]
                                    pool_top += 1
                                epn = 0
                                for ii in range(cn - 1, -1, -1):
                                    endps_pool[start + epn] = ends_buf[ii]
                                    epn += 1
                                endps_pool[start + epn] = 2 * k
                                epn += 1
                                while bw_ != bb:
                                    blossomparent[bw_] = bnew
                                    childs_pool[pool_top] = bw_
                                    pool_top += 1
                                    endps_pool[start + epn] = labelend[bw_] ^ 1
                                    epn += 1
                                    ww = endpoint[labelend[bw_]]
                                    bw_ = inblossom[ww]
                                childs_start[bnew] = start
                                childs_len[bnew] = epn
                                label[bnew] = 1
                                labelend[bnew] = labelend[bb]
                                dualvar[bnew] = 0.0
                                # relabel leaves; former T-vertices join queue
                                ls = 0
                                stack[ls] = bnew
                                ls += 1
                                while ls > 0:
                                    ls -= 1
                                    t = stack[ls]
                                    if t < n:
                                        if label[inblossom[t]] == 2:
                                            queue[qlen] = t
                                            qlen += 1
                                        inblossom[t] = bnew
                                    else:
                                        s0 = childs_start[t]
                                        for ii in range(childs_len[t] - 1, -1, -1):
                                            stack[ls] = childs_pool[s0 + ii]
                                            ls += 1
                                # least-slack edges from the new blossom to
                                # every other top-level S-blossom
                                if bbe_top + two > bbe_cap:
                                    newtop = 0
                                    for b2 in range(two):
                                        if bbe_len[b2] >= 0:
                                            s0 = bbe_start[b2]
                                            for ii in range(bbe_len[b2]):
                                                bbe_scratch[newtop + ii] = bbe_pool[s0 + ii]
                                            bbe_start[b2] = newtop
                                            newtop += bbe_len[b2]
                                    for ii in range(newtop):
                                        bbe_pool[ii] = bbe_scratch[ii]
                                    bbe_top = newtop
                                    if bbe_top + two > bbe_cap:
                                        raise RuntimeError("blossom best-edge pool overflow")
                                for b2 in range(two):
                                    bestedgeto[b2] = -1
                                for ci in range(childs_len[bnew]):
                                    bv2 = childs_pool[childs_start[bnew] + ci]
                                    if bbe_len[bv2] < 0:
                                        # examine every edge of every leaf
                                        nl = 0
                                        ls = 0
                                        stack[ls] = bv2
                                        ls += 1
                                        while ls > 0:
                                            ls -= 1
                                            t = stack[ls]
                                            if t < n:
                                                leaf_buf[nl] = t
                                                nl += 1
                                            else:
                                                s0 = childs_start[t]
                                                for ii in range(childs_len[t] - 1, -1, -1):
                                                    stack[ls] = childs_pool[s0 + ii]
                                                    ls += 1
                                        for li in range(nl):
                                            lv = leaf_buf[li]
                                            for pi2 in range(nb_ptr[lv], nb_ptr[lv + 1]):
                                                k2 = nb_end[pi2] // 2
                                                if not alive[k2]:
                                                    continue
                                                jv = ev[k2] if inblossom[ev[k2]] != bnew else eu[k2]
                                                bj = inblossom[jv]
                                                if bj != bnew and label[bj] == 1:
                                                    ks2 = (
                                                        dualvar[eu[k2]]
                                                        + dualvar[ev[k2]]
                                                        - 2.0 * wt[k2]
                                                    )
                                                    be = bestedgeto[bj]
                                                    if be == -1 or ks2 < (
                                                        dualvar[eu[be]] + dualvar[ev[be]] - 2.0 * wt[be]
                                                    ):
                                                        bestedgeto[bj] = k2
                                    else:
                                        for ii in range(bbe_len[bv2]):
                                            k2 = bbe_pool[bbe_start[bv2] + ii]
                                            jv = ev[k2] if inblossom[ev[k2]] != bnew else eu[k2]
                                            bj = inblossom[jv]
                                            if bj != bnew and label[bj] == 1:
                                                ks2 = (
                                                    dualvar[eu[k2]]
                                                    + dualvar[ev[k2]]
                                                    - 2.0 * wt[k2]
                                                )
                                                be = bestedgeto[bj]
                                                if be == -1 or ks2 < (
                                                    dualvar[eu[be]] + dualvar[ev[be]] - 2.0 * wt[be]
                                                ):
                                                    bestedgeto[bj] = k2
                                    bbe_len[bv2] = -1
                                    bestedge[bv2] = -1
                                bbe_start[bnew] = bbe_top
                                cnt = 0
                                for b2 in range(two):
                                    if bestedgeto[b2] != -1:
                                        bbe_pool[bbe_top] = bestedgeto[b2]
                                        bbe_top += 1
                                        cnt += 1
                                bbe_len[bnew] = cnt
                                bestedge[bnew] = -1
                                for ii in range(cnt):
                                    k2 = bbe_pool[bbe_start[bnew] + ii]
                                    be = bestedge[bnew]
                                    if be == -1 or (
                                        dualvar[eu[k2]] + dualvar[ev[k2]] - 2.0 * wt[k2]
                                    ) < (dualvar[eu[be]] + dualvar[ev[be]] - 2.0 * wt[be]):
                                        bestedge[bnew] = k2
                            else:
                                # ---- augmenting path found through edge k ----
                                for side in range(2):
                                    if side == 0:
                                        s = eu[k]
                                        p2 = 2 * k + 1
                                    else:
                                        s = ev[k]
                                        p2 = 2 * k
                                    while True:
                                        bs = inblossom[s]
                                        if bs >= n:
                                            _augment_blossom(
                                                bs, s, n, blossomparent,
                                                blossombase, childs_start,
                                                childs_len, childs_pool,
                                                endps_pool, endpoint, mate_ep,
                                                job_stack, rot_buf,
                                            )
                                        mate_ep[s] = p2
                                        if labelend[bs] == -1:
                                            break
                                        t = endpoint[labelend[bs]]
                                        bt = inblossom[t]
                                        s = endpoint[labelend[bt]]
                                        jv = endpoint[labelend[bt] ^ 1]
                                        if bt >= n:
                                            _augment_blossom(
                                                bt, jv, n, blossomparent,
                                                blossombase, childs_start,
                                                childs_len, childs_pool,
                                                endps_pool, endpoint, mate_ep,
                                                job_stack, rot_buf,
                                            )
                                        mate_ep[jv] = labelend[bt]
                                        p2 = labelend[bt] ^ 1
                                augmented = True
                                break
                        elif label[w] == 0:
                            # w sits in a labeled blossom but is unreached
                            label[w] = 2
                            labelend[w] = p ^ 1
                    elif label[inblossom[w]] == 1:
                        b = inblossom[v]
                        be = bestedge[b]
                        if be == -1 or kslack < (
                            dualvar[eu[be]] + dualvar[ev[be]] - 2.0 * wt[be]
                        ):
                            bestedge[b] = k
                    elif label[w] == 0:
                        be = bestedge[w]
                        if be == -1 or kslack < (
                            dualvar[eu[be]] + dualvar[ev[be]] - 2.0 * wt[be]
                        ):
                            bestedge[w] = k

            if augmented:
                break

            # ---- dual adjustment -------------------------------------------
            deltatype = 1
            delta = dualvar[0]
            for v in range(1, n):
                if dualvar[v] < delta:
                    delta = dualvar[v]
            deltaedge = -1
            deltablossom = -1
            for v in range(n):
                if label[inblossom[v]] == 0 and bestedge[v] != -1:
                    be = bestedge[v]
                    d = dualvar[eu[be]] + dualvar[ev[be]] - 2.0 * wt[be]
                    if d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = be
            for b in range(two):
                if blossomparent[b] == -1 and label[b] == 1 and bestedge[b] != -1:
                    be = bestedge[b]
                    d = (dualvar[eu[be]] + dualvar[ev[be]] - 2.0 * wt[be]) / 2.0
                    if d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = be
            for b in range(n, two):
                if (
                    blossombase[b] >= 0
                    and blossomparent[b] == -1
                    and label[b] == 2
                    and dualvar[b] < delta
                ):
                    delta = dualvar[b]
                    deltatype = 4
                    deltablossom = b

            for v in range(n):
                lb = label[inblossom[v]]
                if lb == 1:
                    dualvar[v] -= delta
                elif lb == 2:
                    dualvar[v] += delta
            for b in range(n, two):
                if blossombase[b] >= 0 and blossomparent[b] == -1:
                    if label[b] == 1:
                        dualvar[b] += delta
                    elif label[b] == 2:
                        dualvar[b] -= delta

            if deltatype == 1:
                break
            elif deltatype == 2:
                allowedge[deltaedge] = 1
                iv = eu[deltaedge]
                if label[inblossom[iv]] == 0:
                    iv = ev[deltaedge]
                queue[qlen] = iv
                qlen += 1
            elif deltatype == 3:
                allowedge[deltaedge] = 1
                queue[qlen] = eu[deltaedge]
                qlen += 1
            else:
                # expand the T-blossom whose dual reached zero (mid-stage)
                b = deltablossom
                cs = childs_start[b]
                cl = childs_len[b]
                for ci in range(cl):
                    s = childs_pool[cs + ci]
                    blossomparent[s] = -1
                    if s < n:
                        inblossom[s] = s
                    else:
                        _set_inblossom_leaves(
                            s, s, n, childs_start, childs_len, childs_pool,
                            stack, inblossom,
                        )
                # relabel along the path from the entry child to the base
                entrychild = inblossom[endpoint[labelend[b] ^ 1]]
                i0 = 0
                for ii in range(cl):
                    if childs_pool[cs + ii] == entrychild:
                        i0 = ii
                        break
                if i0 & 1:
                    jj = i0 - cl
                    jstep = 1
                    endptrick = 0
                else:
                    jj = i0
                    jstep = -1
                    endptrick = 1
                p = labelend[b]
                while jj != 0:
                    label[endpoint[p ^ 1]] = 0
                    label[
                        endpoint[endps_pool[cs + ((jj - endptrick) % cl)] ^ endptrick ^ 1]
                    ] = 0
                    qlen = _assign_label(
                        endpoint[p ^ 1], 2, p, n, label, labelend, bestedge,
                        inblossom, blossombase, mate_ep, endpoint,
                        childs_start, childs_len, childs_pool, stack, queue,
                        qlen,
                    )
                    allowedge[endps_pool[cs + ((jj - endptrick) % cl)] // 2] = 1
                    jj += jstep
                    p = endps_pool[cs + ((jj - endptrick) % cl)] ^ endptrick
                    allowedge[p // 2] = 1
                    jj += jstep
                bv2 = childs_pool[cs + (jj % cl)]
                label[endpoint[p ^ 1]] = 2
                label[bv2] = 2
                labelend[endpoint[p ^ 1]] = p
                labelend[bv2] = p
                bestedge[bv2] = -1
                jj += jstep
                while childs_pool[cs + (jj % cl)] != entrychild:
                    bv2 = childs_pool[cs + (jj % cl)]
                    if label[bv2] == 1:
                        jj += jstep
                        continue
                    # find any labeled leaf; relabel its blossom from it
                    vfound = -1
                    ls = 0
                    stack[ls] = bv2
                    ls += 1
                    while ls > 0:
                        ls -= 1
                        t = stack[ls]
                        if t < n:
                            if label[t] != 0:
                                vfound = t
                                break
                        else:
                            s0 = childs_start[t]
                            for ii in range(childs_len[t] - 1, -1, -1):
                                stack[ls] = childs_pool[s0 + ii]
                                ls += 1
                    if vfound >= 0:
                        label[vfound] = 0
                        label[endpoint[mate_ep[blossombase[bv2]]]] = 0
                        qlen = _assign_label(
                            vfound, 2, labelend[vfound], n, label, labelend,
                            bestedge, inblossom, blossombase, mate_ep,
                            endpoint, childs_start, childs_len, childs_pool,
                            stack, queue, qlen,
                        )
                    jj += jstep
                label[b] = -1
                labelend[b] = -1
                blossombase[b] = -1
                bbe_len[b] = -1
                bestedge[b] = -1
                childs_len[b] = 0
                unused[n_unused] = b
                n_unused += 1

        if not augmented:
            break

        # ---- end of stage: expand S-blossoms whose dual fell to zero -------
        en = 0
        for b in range(n, two):
            if (
                blossomparent[b] == -1
                and blossombase[b] >= 0
                and label[b] == 1
                and dualvar[b] == 0.0
            ):
                exp_list[en] = b
                en += 1
        while en > 0:
            en -= 1
            b = exp_list[en]
            cs = childs_start[b]
            cl = childs_len[b]
            for ci in range(cl):
                s = childs_pool[cs + ci]
                blossomparent[s] = -1
                if s < n:
                    inblossom[s] = s
                elif dualvar[s] == 0.0:
                    exp_list[en] = s
                    en += 1
                else:
                    _set_inblossom_leaves(
                        s, s, n, childs_start, childs_len, childs_pool, stack,
                        inblossom,
                    )
            label[b] = -1
            labelend[b] = -1
            blossombase[b] = -1
            bbe_len[b] = -1
            bestedge[b] = -1
            childs_len[b] = 0
            unused[n_unused] = b
            n_unused += 1

    for v in range(n):
        if mate_ep[v] >= 0:
            mate[v] = endpoint[mate_ep[v]]
    return mate


def build_adjacency(n: int, eu: np.ndarray, ev: np.ndarray):
    """Static CSR of remote endpoints: nb_end[nb_ptr[v]:nb_ptr[v+1]]."""
    m = len(eu)
    deg = np.zeros(n + 1, dtype=np.int64)
    for k in range(m):
        deg[eu[k] + 1] += 1
        deg[ev[k] + 1] += 1
    nb_ptr = np.cumsum(deg).astype(np.int32)
    nb_end = np.empty(2 * m, dtype=np.int32)
    fill = nb_ptr[:-1].copy()
    for k in range(m):
        nb_end[fill[eu[k]]] = 2 * k + 1
        fill[eu[k]] += 1
        nb_end[fill[ev[k]]] = 2 * k
        fill[ev[k]] += 1
    return nb_ptr, nb_end


def max_weight_mate(
    n: int,
    eu: np.ndarray,
    ev: np.ndarray,
    weights: np.ndarray,
    alive: np.ndarray | None = None,
    adjacency=None,
) -> np.ndarray:
    """Convenience wrapper: mate array for the alive subgraph."""
    eu = np.ascontiguousarray(eu, dtype=np.int32)
    ev = np.ascontiguousarray(ev, dtype=np.int32)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    if alive is None:
        alive = np.ones(len(eu), dtype=np.uint8)
    else:
        alive = np.ascontiguousarray(alive, dtype=np.uint8)
    if adjacency is None:
        adjacency = build_adjacency(n, eu, ev)
    nb_ptr, nb_end = adjacency
    return _mwm_kernel(n, eu, ev, weights, alive, nb_ptr, nb_end)


def mate_to_edges(eu: np.ndarray, ev: np.ndarray, mate: np.ndarray) -> list[int]:
    """Edge indices present in a mate array, ascending."""
    out = []
    for k in range(len(eu)):
        if mate[eu[k]] == ev[k] and mate[ev[k]] == eu[k]:
            out.append(k)
    return out
