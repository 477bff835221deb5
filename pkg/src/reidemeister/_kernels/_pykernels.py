"""Pure-Python kernels.  Reference semantics for ``_ckernels.pyx``.

All tables are flat ``array('i')`` buffers: ``table[a * n + b]`` is the
index of ``a * b``.
"""

from array import array


def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _label(parent, n):
    class_of = array("i", [-1]) * n
    root_label = {}
    reps = []
    for x in range(n):
        r = _find(parent, x)
        lab = root_label.get(r)
        if lab is None:
            lab = root_label[r] = len(reps)
            reps.append(x)
        class_of[x] = lab
    return class_of, reps


def twisted_orbits(table, n, inv, phi, movers):
    """Orbits of ``h . x = h x phi(h)^-1`` for ``h`` in ``movers``.

    Returns ``(class_of, reps)``: class ids are contiguous, numbered in order
    of each class's smallest element, and ``reps[c]`` is that element.
    """
    parent = list(range(n))
    size = [1] * n
    for h in movers:
        hn = h * n
        tail = phi[inv[h]]
        for x in range(n):
            y = table[table[hn + x] * n + tail]
            rx, ry = _find(parent, x), _find(parent, y)
            if rx != ry:
                if size[rx] < size[ry]:
                    rx, ry = ry, rx
                parent[ry] = rx
                size[rx] += size[ry]
    return _label(parent, n)


def is_homomorphism(src, n, dst, m, mapping):
    """True iff ``mapping[a*b] == mapping[a]*mapping[b]`` for all ``a, b``."""
    for a in range(n):
        an = a * n
        fa = mapping[a] * m
        for b in range(n):
            if mapping[src[an + b]] != dst[fa + mapping[b]]:
                return False
    return True


def associative_on(table, n, gens):
    """Light's test: ``(a b) g == a (b g)`` for all ``a, b`` and ``g`` in ``gens``."""
    for g in gens:
        col = [table[b * n + g] for b in range(n)]
        for a in range(n):
            an = a * n
            for b in range(n):
                if table[table[an + b] * n + g] != table[an + col[b]]:
                    return False
    return True


def coset_conjugacy_labels(table, n, inv, phi, phi_powers, m):
    """Partition ``G`` by: ``x ~ y`` iff ``g phi^k(x) = y phi(g)`` for some
    ``g`` and ``0 <= k < m``.

    ``phi_powers[k * n + x]`` is ``phi^k(x)``.  Returns ``(labels, ok)``;
    ``ok`` is False when the swept sets fail to form a partition.
    """
    labels = array("i", [-1]) * n
    count = 0
    ok = True
    for x in range(n):
        if labels[x] != -1:
            continue
        seen = set()
        for k in range(m):
            xk = phi_powers[k * n + x]
            for g in range(n):
                seen.add(table[table[g * n + xk] * n + phi[inv[g]]])
        for y in seen:
            if labels[y] != -1:
                ok = False
            labels[y] = count
        count += 1
    return labels, ok
