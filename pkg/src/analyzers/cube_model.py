"""
Cube Model Module
-----------------
Cubes are the structural unit of a 2^n-periodic sequence's support: a 0-cube is
a single vertex; an m-cube is two (m-1)-cubes with the same edge exponents whose
paired vertices all lie at 2-adic distance 2^{i_m}, i_m above every lower edge.

This module recognizes and constructs cubes, evaluates their linear complexity
(2^n minus the sum of the edge lengths), and computes the standard cube
decomposition, the Games-Chan driven partition of a support into disjoint cubes
listed in ascending order of linear complexity.
"""

import logging
from dataclasses import dataclass
from itertools import combinations

from src.analyzers.bitseq_core import PeriodicSequence, SupportSet
from src.errors import ConstructionError, InputError, InvariantViolation
from src.utils.bit_ops import is_power_of_two, mask_from_positions, valuation2

logger = logging.getLogger(__name__)


def element_distance(i, j):
    """Distance 2^y between positions whose difference is (2x+1)·2^y."""
    if i == j:
        raise InputError("Distance needs two distinct positions")
    return 1 << valuation2(j - i)


def _check_edges(n, edges):
    edges = tuple(edges)
    if any(not isinstance(e, int) or e < 0 or e >= n for e in edges):
        raise InputError(f"Edge exponents must lie in [0, {n})")
    if any(b <= a for a, b in zip(edges, edges[1:])):
        raise InputError("Edge exponents must be strictly increasing")
    return edges


def cube_lc(n, edges):
    """
    Linear complexity 2^n - (2^{i_1} + … + 2^{i_m}) of a cube with these edges.

    :param n: int - Period exponent.
    :param edges: sequence of int - Strictly increasing edge exponents below n.
    :return: int - The linear complexity (2^n for the 0-cube).
    """
    edges = _check_edges(n, edges)
    return (1 << n) - sum(1 << e for e in edges)


@dataclass(frozen=True)
class Cube:
    n: int
    base_support: SupportSet
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", _check_edges(self.n, self.edges))
        if self.base_support.n != self.n:
            raise InputError("Cube support and cube period differ")
        if len(self.base_support) != 1 << len(self.edges):
            raise InputError(
                f"A {len(self.edges)}-cube has {1 << len(self.edges)} vertices, "
                f"got {len(self.base_support)}"
            )

    @property
    def dimension(self):
        return len(self.edges)

    @property
    def positions(self):
        return self.base_support.positions

    @property
    def anchor(self):
        return self.base_support.positions[0]

    @property
    def linear_complexity(self):
        return cube_lc(self.n, self.edges)

    @property
    def mask(self):
        return mask_from_positions(self.positions)


def _cube_edges(residues, width):
    """
    Edge exponents of a vertex set given as distinct residues mod 2^width, or
    None when the set is not a cube.

    The top edge is the largest v at which two residues agree mod 2^v. The set
    is a cube iff every class mod 2^v holds exactly two vertices and the classes
    themselves form a cube mod 2^v.
    """
    size = len(residues)
    if size == 1:
        return []
    if not is_power_of_two(size):
        return None
    top = width - 1
    while top >= 0 and len({r & ((1 << top) - 1) for r in residues}) == size:
        top -= 1
    if top < 0:
        return None
    folded = {r & ((1 << top) - 1) for r in residues}
    if len(folded) * 2 != size:
        return None
    lower = _cube_edges(folded, top)
    if lower is None:
        return None
    return lower + [top]


def recognize_cube(p):
    """
    :param p: SupportSet - Candidate vertex set (at least one position).
    :return: Cube or None - The cube with its unique edge exponents, or None when
             p is not a cube.
    """
    if len(p) == 0:
        raise InputError("Cube recognition needs at least one position")
    edges = _cube_edges(set(p.positions), p.n)
    if edges is None:
        return None
    return Cube(p.n, p, tuple(edges))


def materialize(c):
    return c.base_support.to_sequence()


def construct_cube(n, edges, anchor, offsets):
    """
    Build the cube with vertices anchor + Σ_{t∈T} offsets[t]·2^{i_t} mod 2^n
    over all subsets T of the edges.

    :param n: int - Period exponent.
    :param edges: sequence of int - Strictly increasing edge exponents.
    :param anchor: int - Base vertex in [0, 2^n).
    :param offsets: sequence of int - One odd positive multiplier per edge.
    :return: Cube - The constructed cube.
    :raises ConstructionError: Offsets are not odd and positive, or two vertices
                               collide.
    """
    edges = _check_edges(n, edges)
    period = 1 << n
    offsets = tuple(offsets)
    if not 0 <= anchor < period:
        raise InputError(f"Anchor must lie in [0, {period})")
    if len(offsets) != len(edges):
        raise ConstructionError("Need exactly one offset per edge")
    if any(o <= 0 or o % 2 == 0 for o in offsets):
        raise ConstructionError("Offsets must be odd and positive")

    vertices = [anchor]
    for exponent, offset in zip(edges, offsets):
        step = (offset << exponent) % period
        vertices = vertices + [(v + step) % period for v in vertices]
    if len(set(vertices)) != len(vertices):
        raise ConstructionError("Generated cube vertices collide modulo the period")

    cube = recognize_cube(SupportSet.of(n, vertices))
    if cube is None or cube.edges != edges:
        raise InvariantViolation(
            f"Constructed vertex set {sorted(vertices)} is not the requested cube"
        )
    return cube


@dataclass(frozen=True)
class CubeDecomposition:
    n: int
    cubes: tuple
    lone_vertex: int = None

    @property
    def linear_complexities(self):
        return [c.linear_complexity for c in self.cubes]

    def reconstruct(self):
        """XOR of every cube (and the lone vertex) back into one sequence."""
        mask = 0
        for cube in self.cubes:
            mask ^= cube.mask
        if self.lone_vertex is not None:
            mask ^= 1 << self.lone_vertex
        return PeriodicSequence(self.n, mask)

    def edge_profile(self):
        """Sorted edge-exponent tuples; ignores anchors and order."""
        return tuple(sorted(c.edges for c in self.cubes))


def _decompose(positions, width):
    """
    Standard decomposition of a vertex set mod 2^width.

    Pairs matched across the two halves are decomposed one level down and lifted
    by doubling every vertex (adding edge width-1); unmatched survivors fold into
    one half, are decomposed there and unfold to their source half.

    :return: (list of (vertices, edges), lone vertex or None)
    """
    if not positions:
        return [], None
    if width == 0:
        return [], 0
    half = 1 << (width - 1)
    left = {x for x in positions if x < half}
    right = {x - half for x in positions if x >= half}

    cubes = []
    matched_cubes, matched_lone = _decompose(left & right, width - 1)
    for vertices, edges in matched_cubes:
        cubes.append((vertices + [v + half for v in vertices], edges + [width - 1]))
    if matched_lone is not None:
        cubes.append(([matched_lone, matched_lone + half], [width - 1]))

    def unfold(v):
        return v if v in left else v + half

    folded_cubes, lone = _decompose(left ^ right, width - 1)
    for vertices, edges in folded_cubes:
        cubes.append(([unfold(v) for v in vertices], edges))
    if lone is not None:
        lone = unfold(lone)
    return cubes, lone


def standard_decompose(s):
    """
    :param s: PeriodicSequence - Any sequence (the zero sequence decomposes into
              nothing).
    :return: CubeDecomposition - Disjoint cubes ascending by linear complexity,
             plus the lone vertex of an odd-weight sequence.
    """
    raw, lone = _decompose(set(s.support.positions), s.n)
    logger.debug(f"Decomposed weight {s.weight} into {len(raw)} cubes")
    cubes = [Cube(s.n, SupportSet.of(s.n, vertices), tuple(edges)) for vertices, edges in raw]
    cubes.sort(key=lambda c: (c.linear_complexity, c.positions))
    return CubeDecomposition(s.n, tuple(cubes), lone)


def inter_cube_distance(a, b):
    """Minimum element_distance over all pairs (u in a, v in b)."""
    if set(a.positions) & set(b.positions):
        raise InputError("Cubes overlap")
    return min(element_distance(u, v) for u in a.positions for v in b.positions)


def has_unique_decomposition_hint(s):
    """
    Sufficient condition for a unique cube decomposition: distinct cube
    complexities, and every inter-cube distance below the shortest edge 2^w.
    False means uniqueness is not established.

    :raises InputError: Odd-weight or zero sequence.
    """
    if s.weight % 2:
        raise InputError("The uniqueness condition applies to even-weight sequences")
    if s.is_zero():
        raise InputError("The zero sequence has no cubes")
    decomposition = standard_decompose(s)
    complexities = decomposition.linear_complexities
    if len(set(complexities)) != len(complexities):
        return False
    shortest_edge = min(1 << c.edges[0] for c in decomposition.cubes)
    return all(
        inter_cube_distance(a, b) < shortest_edge
        for a, b in combinations(decomposition.cubes, 2)
    )


def longest_edge_in_smallest_cube(d):
    """
    True iff the longest edge of the complete graph on the support is realized
    inside the cube of minimal linear complexity.
    """
    if not d.cubes:
        raise InputError("Empty decomposition")
    support = [p for c in d.cubes for p in c.positions]
    if d.lone_vertex is not None:
        support.append(d.lone_vertex)
    longest = max(element_distance(u, v) for u, v in combinations(support, 2))
    smallest = d.cubes[0]
    return any(
        element_distance(u, v) == longest for u, v in combinations(smallest.positions, 2)
    )


def leading_ones_cube(n, k):
    """The sequence whose first 2^k terms are 1 and the rest 0 (a k-cube)."""
    if not 0 <= k <= n:
        raise InputError(f"Need 0 <= k <= n, got k={k}, n={n}")
    return PeriodicSequence(n, (1 << (1 << k)) - 1)


def eight_term_configuration(n, i, a, b, c, u, v, w, y):
    """
    Eight positions E_ij + E_kl + E_mn + E_pq with j - i = 2a+1, l - k = 2b+1,
    k - i = 4c+2, and m, n, p, q at i, j, k, l plus 4 + 8·(u, v, w, y). When
    l - j is 2 mod 4 as well, the support has linear complexity 2^n - 7.

    :return: PeriodicSequence or None when l - j is not 2 mod 4, or the
             positions leave the period or coincide.
    """
    j = i + 2 * a + 1
    k = i + 4 * c + 2
    l_pos = k + 2 * b + 1
    if (l_pos - j) % 4 != 2:
        return None
    m = i + 4 + 8 * u
    n_pos = j + 4 + 8 * v
    p = k + 4 + 8 * w
    q = l_pos + 4 + 8 * y
    positions = [i, j, k, l_pos, m, n_pos, p, q]
    period = 1 << n
    if max(positions) >= period or len(set(positions)) != 8:
        return None
    return PeriodicSequence.from_positions(n, positions)
