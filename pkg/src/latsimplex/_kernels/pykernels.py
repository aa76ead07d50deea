"""Pure-Python reference kernels.

These are the fallback implementations of the two hot inner loops: breadth
first closure of a generating set under coordinatewise addition mod 1, and
lattice-point counting over an integer box.  The compiled extension in
``_speed.pyx`` mirrors their behaviour exactly; both must stay in lockstep.
"""

from __future__ import annotations

STATUS_OK = 0
STATUS_TOO_LARGE = 1
STATUS_WEIGHT = 2
STATUS_HEIGHT = 3


def closure_table(gens, e, den, cap, max_weight=-1, max_height_num=-1,
                  require_integral=False):
    """Close ``gens`` (numerator tuples mod ``den``) under addition.

    Returns ``(status, elements)`` where ``elements`` is the sorted table of
    all group elements (or None if a limit was violated).  Optional limits:
    ``max_weight`` caps the support size of every element, ``max_height_num``
    caps the numerator sum, and ``require_integral`` rejects any element
    whose numerator sum is not divisible by ``den``.
    """
    zero = (0,) * e
    seen = {zero}
    frontier = [zero]
    gens = [tuple(g) for g in gens]
    for g in gens:
        if len(g) != e:
            raise ValueError("generator length does not match e")
    while frontier:
        nxt = []
        for base in frontier:
            for g in gens:
                s = tuple((a + b) % den for a, b in zip(base, g))
                if s in seen:
                    continue
                total = sum(s)
                if require_integral and total % den != 0:
                    return STATUS_HEIGHT, None
                if max_height_num >= 0 and total > max_height_num:
                    return STATUS_HEIGHT, None
                if max_weight >= 0 and e - s.count(0) > max_weight:
                    return STATUS_WEIGHT, None
                seen.add(s)
                if len(seen) > cap:
                    return STATUS_TOO_LARGE, None
                nxt.append(s)
        frontier = nxt
    return STATUS_OK, sorted(seen)


def extend_closure(prev, row, e, den, cap, max_weight=-1, max_height_num=-1,
                   require_integral=False):
    """Close ``prev`` (an already closed, sorted group table) with one row.

    The extension is the union of the cosets ``prev + t*row`` for
    t = 0..ord-1, so violations surface after a handful of additions.
    Same status codes and limits as ``closure_table``.
    """
    base = set(prev)
    row = tuple(row)
    if len(row) != e:
        raise ValueError("row length does not match e")
    layers = []
    cur = row
    total_new = 0
    while cur not in base:
        layer = []
        for h in prev:
            s = tuple((a + b) % den for a, b in zip(h, cur))
            total = sum(s)
            if require_integral and total % den != 0:
                return STATUS_HEIGHT, None
            if max_height_num >= 0 and total > max_height_num:
                return STATUS_HEIGHT, None
            if max_weight >= 0 and e - s.count(0) > max_weight:
                return STATUS_WEIGHT, None
            layer.append(s)
        total_new += len(layer)
        if len(prev) + total_new > cap:
            return STATUS_TOO_LARGE, None
        layers.append(layer)
        cur = tuple((a + b) % den for a, b in zip(cur, row))
    out = list(prev)
    for layer in layers:
        out.extend(layer)
    out.sort()
    return STATUS_OK, out


def count_box_points(adj, det_sign, lows, highs, n, strict=False):
    """Count integer points of the dilation ``n * simplex`` inside a box.

    ``adj`` is the adjugate of the bordered vertex matrix (rows ``(v_i, 1)``),
    so for a point ``p`` the vector ``(p, n) @ adj`` equals ``det`` times the
    barycentric coordinates.  Membership is a sign test against ``det_sign``;
    all arithmetic is exact integer arithmetic.
    """
    d = len(lows)
    m = d + 1
    rows = [tuple(det_sign * x for x in row) for row in adj]
    if d == 0:
        return 1
    for j in range(d):
        if lows[j] > highs[j]:
            return 0
    # t holds det_sign * (p, n) @ adj for the current point p.
    t = [n * rows[d][i] for i in range(m)]
    for j in range(d):
        lj = lows[j]
        for i in range(m):
            t[i] += lj * rows[j][i]
    pos = list(lows)
    count = 0
    while True:
        if strict:
            ok = all(x > 0 for x in t)
        else:
            ok = all(x >= 0 for x in t)
        if ok:
            count += 1
        k = 0
        while k < d:
            if pos[k] < highs[k]:
                pos[k] += 1
                rk = rows[k]
                for i in range(m):
                    t[i] += rk[i]
                break
            span = highs[k] - lows[k]
            pos[k] = lows[k]
            rk = rows[k]
            for i in range(m):
                t[i] -= span * rk[i]
            k += 1
        else:
            return count
