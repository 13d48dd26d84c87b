"""Pure-Python closure kernels, used when the compiled extension is absent.

Both backends work on a compact formula:

* literal indices ``0 .. n_lits-1`` with ``i ^ 1`` the complement of ``i``;
* ``cl_start``/``cl_lits``: CSR list of each clause's literal indices;
* ``occ_start``/``occ_cls``: CSR list of the clauses containing each literal.

A seed of ``-1`` means the seed literal does not occur in the formula.
"""

BACKEND = "python"


def closure_stages(cl_start, cl_lits, occ_start, occ_cls, n_lits, seed):
    """Run the staged closure from ``seed``.

    Returns ``(added, covered)``: the literal indices added at each stage
    after the seed (stage order, ascending index within a stage) and the
    ascending indices of covered clauses.
    """
    n_clauses = len(cl_start) - 1
    unc = [occ_start[i + 1] - occ_start[i] for i in range(n_lits)]
    covered = bytearray(n_clauses)
    in_s = bytearray(n_lits)

    def cover(u):
        for k in range(occ_start[u], occ_start[u + 1]):
            c = occ_cls[k]
            if not covered[c]:
                covered[c] = 1
                for j in range(cl_start[c], cl_start[c + 1]):
                    unc[cl_lits[j]] -= 1

    banned = -1
    if seed >= 0:
        in_s[seed] = 1
        banned = seed ^ 1
        cover(seed)
    added = []
    while True:
        # all candidates are tested against the same stage before any is applied
        new = [
            u
            for u in range(n_lits)
            if not in_s[u] and u != banned and unc[u] and not unc[u ^ 1]
        ]
        if not new:
            break
        for u in new:
            in_s[u] = 1
        for u in new:
            cover(u)
        added.append(new)
    return added, [c for c in range(n_clauses) if covered[c]]


def first_redundant(cl_start, cl_lits, occ_start, occ_cls, n_lits, order):
    """First literal index in ``order`` whose complement's clauses all get covered."""
    n_clauses = len(cl_start) - 1
    base = [occ_start[i + 1] - occ_start[i] for i in range(n_lits)]
    for seed in order:
        unc = list(base)
        covered = bytearray(n_clauses)
        in_s = bytearray(n_lits)
        banned = seed ^ 1
        frontier = [seed]
        in_s[seed] = 1
        while frontier:
            for u in frontier:
                for k in range(occ_start[u], occ_start[u + 1]):
                    c = occ_cls[k]
                    if not covered[c]:
                        covered[c] = 1
                        for j in range(cl_start[c], cl_start[c + 1]):
                            unc[cl_lits[j]] -= 1
            if not unc[banned]:
                return seed
            frontier = [
                u
                for u in range(n_lits)
                if not in_s[u] and u != banned and unc[u] and not unc[u ^ 1]
            ]
            for u in frontier:
                in_s[u] = 1
    return -1
