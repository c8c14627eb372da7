from permtol.lattice import enumerate_lattices
from permtol.tolerance import BinaryRelation


def catalog(max_n, min_n=1):
    return [L for n in range(min_n, max_n + 1) for L in enumerate_lattices(n)]


def rel(n, *edges):
    return BinaryRelation.from_pairs(n, edges)
