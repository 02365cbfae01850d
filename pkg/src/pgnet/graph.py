"""Undirected loop-free multigraph with dense integer nodes.

Nodes are 0..N-1 in arrival order. Edges are stored as a multiplicity map
keyed by the normalized pair (u, w) with u < w, so parallel edges are counts,
not repeated objects. This is the shape every generator and the replay
likelihood work against.
"""

import numpy as np

from .errors import GraphError, GraphFormatError


class MultiGraph:
    """Loop-free undirected multigraph on nodes 0..n-1."""

    __slots__ = ("_mult", "_deg", "_num_edges")

    def __init__(self, n_nodes=0):
        if n_nodes < 0:
            raise GraphError(f"node count must be >= 0, got {n_nodes}")
        self._mult = {}
        self._deg = [0] * int(n_nodes)
        self._num_edges = 0

    # -- construction ----------------------------------------------------

    @classmethod
    def pair_seed(cls):
        """Default seed: two nodes joined by one edge."""
        g = cls(2)
        g.add_edge(0, 1)
        return g

    @classmethod
    def single_seed(cls):
        """One isolated node (the seed convention the likelihood assumes)."""
        return cls(1)

    @classmethod
    def from_edge_arrays(cls, n_nodes, us, ws):
        """Build from parallel arrays holding one entry per edge copy."""
        g = cls(n_nodes)
        for u, w in zip(us, ws):
            g.add_edge(int(u), int(w))
        return g

    def copy(self):
        g = MultiGraph(self.num_nodes)
        g._mult = dict(self._mult)
        g._deg = list(self._deg)
        g._num_edges = self._num_edges
        return g

    # -- mutation ---------------------------------------------------------

    def add_node(self):
        """Append a new isolated node, returning its index."""
        self._deg.append(0)
        return len(self._deg) - 1

    def add_edge(self, u, w, copies=1):
        if not isinstance(copies, (int, np.integer)) or isinstance(copies, bool) or copies < 1:
            raise GraphError(f"copies must be a positive integer, got {copies!r}")
        self._check_node(u)
        self._check_node(w)
        if u == w:
            raise GraphError(f"self-loop at node {u} not allowed")
        if u > w:
            u, w = w, u
        self._mult[(u, w)] = self._mult.get((u, w), 0) + copies
        self._deg[u] += copies
        self._deg[w] += copies
        self._num_edges += copies

    def remove_edge(self, u, w, copies=1):
        """Remove edge copies; raises if fewer than `copies` are present."""
        if u > w:
            u, w = w, u
        have = self._mult.get((u, w), 0)
        if have < copies:
            raise GraphError(f"cannot remove {copies} copies of ({u},{w}); have {have}")
        if have == copies:
            del self._mult[(u, w)]
        else:
            self._mult[(u, w)] = have - copies
        self._deg[u] -= copies
        self._deg[w] -= copies
        self._num_edges -= copies

    def _check_node(self, u):
        if not isinstance(u, (int, np.integer)):
            raise GraphError(f"node id must be an integer, got {u!r}")
        if u < 0 or u >= len(self._deg):
            raise GraphError(f"node {u} out of range for graph with {len(self._deg)} nodes")

    # -- queries ----------------------------------------------------------

    @property
    def num_nodes(self):
        return len(self._deg)

    @property
    def num_edges(self):
        """Edge count with multiplicity."""
        return self._num_edges

    def degree(self, u):
        self._check_node(u)
        return self._deg[u]

    def degrees(self):
        """Degree vector as int64 array."""
        return np.asarray(self._deg, dtype=np.int64)

    def multiplicity(self, u, w):
        if u > w:
            u, w = w, u
        return self._mult.get((u, w), 0)

    def edges(self):
        """List of (u, w, copies) sorted by pair."""
        return [(u, w, self._mult[(u, w)]) for (u, w) in sorted(self._mult)]

    def edge_arrays(self):
        """One entry per edge copy, sorted by pair; used by the kernels."""
        us = np.empty(self._num_edges, dtype=np.int64)
        ws = np.empty(self._num_edges, dtype=np.int64)
        i = 0
        for u, w, c in self.edges():
            us[i : i + c] = u
            ws[i : i + c] = w
            i += c
        return us, ws

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.num_nodes == other.num_nodes and self._mult == other._mult

    def __repr__(self):
        return f"MultiGraph(n={self.num_nodes}, edges={self._num_edges})"


class DegreeHistogram:
    """Degree counts n(k) with the node total, the estimator input."""

    __slots__ = ("counts", "total")

    def __init__(self, counts, total=None):
        self.counts = {int(k): c for k, c in counts.items() if c != 0}
        for k, c in self.counts.items():
            if k < 0:
                raise GraphError(f"negative degree {k} in histogram")
            if c < 0:
                raise GraphError(f"negative count {c} for degree {k}")
        summed = sum(self.counts.values())
        self.total = summed if total is None else total
        if self.total != summed:
            raise GraphError(f"total {self.total} != sum of counts {summed}")

    @classmethod
    def from_degrees(cls, degrees):
        counts = np.bincount(np.asarray(degrees, dtype=np.int64))
        return cls({k: int(c) for k, c in enumerate(counts) if c > 0})

    def p(self, k):
        """Empirical fraction of nodes with degree k."""
        return self.counts.get(k, 0) / self.total

    def max_degree(self):
        return max(self.counts) if self.counts else 0

    def as_arrays(self):
        """Sorted (k, n(k)) arrays over degrees with nonzero count."""
        ks = np.array(sorted(self.counts), dtype=np.int64)
        ns = np.array([self.counts[k] for k in ks], dtype=np.int64)
        return ks, ns

    def __eq__(self, other):
        if not isinstance(other, DegreeHistogram):
            return NotImplemented
        return self.counts == other.counts and self.total == other.total

    def __repr__(self):
        return f"DegreeHistogram(total={self.total}, kmax={self.max_degree()})"


def degree_histogram(g):
    """Degree histogram of a MultiGraph."""
    return DegreeHistogram.from_degrees(g.degrees())


def write_graph(g, path):
    """Write the text format: header "N <count>", then one "u w" line per
    edge copy with u < w."""
    with open(path, "w") as fh:
        fh.write(f"N {g.num_nodes}\n")
        for u, w, c in g.edges():
            for _ in range(c):
                fh.write(f"{u} {w}\n")


def read_graph(path):
    """Read the format written by write_graph.

    Accepts edge endpoints in either order (normalized on read); rejects
    loops, out-of-range ids, and malformed lines, reporting the line number.
    """
    with open(path) as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2 or parts[0] != "N":
            raise GraphFormatError(f"expected header 'N <count>', got {header.strip()!r}", line=1)
        try:
            n = int(parts[1])
        except ValueError:
            raise GraphFormatError(f"bad node count {parts[1]!r}", line=1) from None
        if n < 0:
            raise GraphFormatError(f"negative node count {n}", line=1)
        g = MultiGraph(n)
        for lineno, raw in enumerate(fh, start=2):
            if not raw.strip():
                raise GraphFormatError("blank line", line=lineno)
            parts = raw.split()
            if len(parts) != 2:
                raise GraphFormatError(f"expected 'u w', got {raw.strip()!r}", line=lineno)
            try:
                u, w = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"non-integer endpoint in {raw.strip()!r}", line=lineno) from None
            try:
                g.add_edge(u, w)
            except GraphError as exc:
                raise GraphFormatError(str(exc), line=lineno) from None
    return g
