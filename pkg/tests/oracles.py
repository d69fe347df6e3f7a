"""Independent brute-force oracles.

Everything here recomputes results from first principles (subset
enumeration, relation composition, union-find), sharing no algorithmic
path with the package, so differential tests mean something.
"""

from itertools import chain, combinations


def reachability(elements, covers):
    """Reflexive-transitive closure of the cover relation by repeated
    composition."""
    leq = {(e, e) for e in elements}
    leq |= {(a, b) for a, b in covers}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(leq):
            for (c, d) in list(leq):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
    return leq


def all_subsets(elements):
    elements = sorted(elements)
    return chain.from_iterable(combinations(elements, r) for r in range(len(elements) + 1))


def brute_up_sets(elements, covers):
    """Every upward-closed subset, by filtering the full power set."""
    leq = reachability(elements, covers)
    result = []
    for subset in all_subsets(elements):
        s = set(subset)
        if all(b in s for a in s for (x, b) in leq if x == a):
            result.append(frozenset(s))
    return result


def brute_antichain_count(elements, covers):
    leq = reachability(elements, covers)
    count = 0
    for subset in all_subsets(elements):
        s = list(subset)
        if all((a, b) not in leq and (b, a) not in leq
               for i, a in enumerate(s) for b in s[i + 1:]):
            count += 1
    return count


def brute_components(nodes, edges):
    """Union-find connected components of an undirected graph."""
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    comps = {}
    for n in nodes:
        comps.setdefault(find(n), set()).add(n)
    return sorted((frozenset(c) for c in comps.values()), key=min)


def brute_poset_components(elements, covers):
    leq = reachability(elements, covers)
    edges = [(a, b) for (a, b) in leq if a != b]
    return brute_components(set(elements), edges)


def brute_chains(elements, covers):
    """All non-empty strict chains, by filtering subsets for total
    comparability."""
    leq = reachability(elements, covers)

    def comparable(a, b):
        return (a, b) in leq or (b, a) in leq

    found = []
    for subset in all_subsets(elements):
        if not subset:
            continue
        if all(comparable(a, b) for i, a in enumerate(subset) for b in subset[i + 1:]):
            found.append(frozenset(subset))
    return found


def brute_closure_faces(maximal_faces):
    """All non-empty subsets of the given faces."""
    faces = set()
    for f in maximal_faces:
        f = sorted(f)
        for r in range(1, len(f) + 1):
            for sub in combinations(f, r):
                faces.add(frozenset(sub))
    return faces


def is_forest(nodes, edges):
    """An undirected graph is a forest iff every component has one more
    node than it has edges."""
    comps = brute_components(nodes, edges)
    edge_count = {min(c): 0 for c in comps}
    lookup = {n: min(c) for c in comps for n in c}
    for a, b in edges:
        edge_count[lookup[a]] += 1
    return all(len(c) == edge_count[min(c)] + 1 for c in comps)
