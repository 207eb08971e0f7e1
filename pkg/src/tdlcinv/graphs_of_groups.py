"""Finite graphs of finite groups.

A datum assigns a finite group to each vertex, a finite group to each
geometric edge, and an injective homomorphism from the edge group into the
terminus vertex group for each directed edge.  The fundamental group is
presented by the vertex groups and one letter per edge, subject to edge
inversion and the conjugation relation carrying one edge embedding to the
other; edges of a fixed maximal subtree are collapsed.

Normal forms.  Words are kept in the reduced path form rooted at the base
vertex: an alternating sequence of coset representatives and directed
edges followed by a vertex-group tail.  Representatives are the minimum
elements of left cosets of the incoming edge-group image, and a
representative that is trivial never follows the reversal of the previous
edge.  With the subtree and orientation fixed by id order and transversals
fixed by least elements, the form is unique, so word arithmetic and coset
bookkeeping (hence the tree construction) are exact.

The universal tree is materialized as balls only: vertices are the reduced
representative words themselves, the root being the empty word.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError
from .euler import TRIVIAL_BASE, HaarValue
from .groups import Hom, group_from_spec
from .ratlin import RationalMatrix
from .serre_graphs import SerreGraph


class NotInjective(ValidationError):
    pass


class NotHomomorphism(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class NotUnimodular(ValidationError):
    pass


class RelationViolated(ValidationError):
    pass


class NotInvertible(ValidationError):
    pass


def aut_tree_chi(degree):
    """Euler characteristic of the orientation-preserving automorphisms of
    the regular tree with degree + 1 neighbors per vertex, normalized at an
    edge stabilizer: (1 - degree) / (1 + degree)."""
    if degree < 1:
        raise ValidationError("tree degree parameter must be >= 1")
    return HaarValue(Fraction(1 - degree, 1 + degree), "G_e")


def cycle_index_ratio_products(graph, edge_index):
    """Products of directed-edge indices around a cycle basis of the graph.

    ``edge_index[e]`` is the index of the edge subgroup image inside the
    terminus vertex group of ``e``.  Each directed edge gets the ratio
    index(e) / index(bar e); a spanning forest is fixed by id order and
    every non-tree oriented edge contributes the ratio product along its
    fundamental cycle.  The stable letter of such an edge scales Haar
    measure by exactly this product, so the fundamental group is unimodular
    exactly when every returned product is 1.
    """

    def ratio(e):
        return Fraction(edge_index[e]) / Fraction(edge_index[graph.bar[e]])

    parent = {}
    order = []
    for root in graph.vertices:
        if root in parent:
            continue
        parent[root] = None
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for e in sorted(graph.star(v)):
                w = graph.terminus[e]
                if w not in parent:
                    parent[w] = e
                    queue.append(w)
    tree_edges = {e for e in parent.values() if e is not None}
    tree_edges |= {graph.bar[e] for e in tree_edges}

    def path_ratio_to_root(v):
        value = Fraction(1)
        while parent[v] is not None:
            e = parent[v]
            value *= ratio(e)
            v = graph.origin[e]
        return value

    products = []
    for e in graph.orientation():
        if e in tree_edges:
            continue
        # cycle: root -> o(e), then e, then t(e) -> root through the tree
        value = path_ratio_to_root(graph.origin[e])
        value *= ratio(e)
        value /= path_ratio_to_root(graph.terminus[e])
        products.append(value)
    return products


class GraphOfFiniteGroups:
    """Finite connected graph decorated with finite groups and embeddings."""

    def __init__(self, graph, vertex_groups, edge_groups, embeddings):
        self.graph = graph
        self.vertex_groups = dict(vertex_groups)
        self.edge_groups = {}
        for e in graph.edges:
            key = min(e, graph.bar[e])
            if key not in edge_groups:
                raise ValidationError(f"no group for geometric edge {key!r}")
            self.edge_groups[e] = edge_groups[key]
        self.embeddings = dict(embeddings)
        for v in graph.vertices:
            if v not in self.vertex_groups:
                raise ValidationError(f"no group for vertex {v!r}")
        for e in graph.edges:
            if e not in self.embeddings:
                raise ValidationError(f"no embedding for directed edge {e!r}")
        self._tree_edges, self._base_vertex = self._spanning_tree()
        self._transversals = {}
        self._trivial_rep = {}
        self._sections = {}
        self._images = {}
        self._image_sets = {}
        for e in graph.edges:
            incoming = self.embeddings[self.graph.bar[e]]  # edge group into o(e)
            image = tuple(sorted(incoming.image_set()))
            group_at_origin = self.vertex_groups[self.graph.origin[e]]
            self._images[e] = image
            self._image_sets[e] = frozenset(image)
            self._transversals[e] = group_at_origin.left_coset_reps(image)
            self._trivial_rep[e] = group_at_origin.left_coset(group_at_origin.identity, image)[0]
            self._sections[e] = incoming.section()

    # -- deterministic subtree and orientation -------------------------------------

    def _spanning_tree(self):
        base = min(self.graph.vertices, key=lambda v: (str(type(v)), str(v)))
        parent = {base: None}
        queue = [base]
        tree = set()
        while queue:
            v = queue.pop(0)
            for e in sorted(self.graph.star(v)):
                w = self.graph.terminus[e]
                if w not in parent:
                    parent[w] = e
                    tree.add(e)
                    tree.add(self.graph.bar[e])
                    queue.append(w)
        if len(parent) != len(self.graph.vertices):
            raise Disconnected("underlying graph is not connected")
        return tree, base

    @property
    def base_vertex(self):
        return self._base_vertex

    def subtree_edges(self):
        return frozenset(self._tree_edges)

    def orientation(self):
        return self.graph.orientation()

    def stable_letters(self):
        """Oriented edges outside the maximal subtree, in id order."""
        return tuple(e for e in self.orientation() if e not in self._tree_edges)

    # -- validation -------------------------------------------------------------------

    def validate(self):
        """Check embeddings are injective homomorphisms and the graph is
        connected; returns the index of each directed-edge image."""
        indices = {}
        for e in self.graph.edges:
            hom = self.embeddings[e]
            edge_group = self.edge_groups[e]
            target = self.vertex_groups[self.graph.terminus[e]]
            if hom.dom.mult != edge_group.mult or hom.cod.mult != target.mult:
                raise ValidationError(f"embedding for {e!r} connects the wrong groups")
            if not hom.is_homomorphism():
                raise NotHomomorphism(f"edge {e!r}")
            if not hom.is_injective():
                raise NotInjective(f"edge {e!r}")
            indices[e] = target.order // edge_group.order
        return indices

    # -- unimodularity and Euler characteristic ---------------------------------------

    def unimodularity_check(self):
        """True when the index-ratio product around every basis cycle is 1.

        For a tree there is nothing to check.  With finite vertex groups
        each directed index is a quotient of group orders, so the products
        always telescope to 1; the check still evaluates them exactly.
        """
        indices = self.validate()
        return all(p == 1 for p in cycle_index_ratio_products(self.graph, indices))

    def euler_characteristic(self):
        """Alternating sum of reciprocal group orders over vertices and
        geometric edges, as a measure over the trivial subgroup."""
        if not self.unimodularity_check():
            raise NotUnimodular("fundamental group is not unimodular")
        total = Fraction(0)
        for v in self.graph.vertices:
            total += Fraction(1, self.vertex_groups[v].order)
        for e in self.orientation():
            total -= Fraction(1, self.edge_groups[e].order)
        return HaarValue(total, TRIVIAL_BASE)

    # -- word machinery ------------------------------------------------------------------

    def _push_edge(self, syllables, tail, e):
        """Multiply the reduced word (syllables, tail) by the edge letter e."""
        origin = self.graph.origin[e]
        group = self.vertex_groups[origin]
        section = self._sections[e]
        outgoing = self.embeddings[e]
        if tail in self._image_sets[e] and syllables and syllables[-1][0] == self.graph.bar[e]:
            # the whole tail slides through the edge and the letters cancel
            carried = outgoing(section[tail])
            prev_edge, prev_rep = syllables[-1]
            prev_group = self.vertex_groups[self.graph.origin[prev_edge]]
            return syllables[:-1], prev_group.op(prev_rep, carried)
        coset = group.left_coset(tail, self._images[e])
        rep = coset[0]
        remainder = group.op(group.inverse(rep), tail)
        carried = outgoing(section[remainder])
        return syllables + ((e, rep),), carried

    def _push_vertex(self, syllables, tail, vertex, element):
        group = self.vertex_groups[vertex]
        return syllables, group.op(tail, element)

    def _word_end_vertex(self, syllables):
        if not syllables:
            return self._base_vertex
        return self.graph.terminus[syllables[-1][0]]

    def _tree_path(self, target):
        """Directed subtree edges from the base vertex to the target vertex."""
        if target == self._base_vertex:
            return ()
        parent = {self._base_vertex: None}
        queue = [self._base_vertex]
        while queue:
            v = queue.pop(0)
            for e in sorted(self.graph.star(v)):
                if e not in self._tree_edges:
                    continue
                w = self.graph.terminus[e]
                if w not in parent:
                    parent[w] = e
                    if w == target:
                        path = []
                        while parent[w] is not None:
                            path.append(parent[w])
                            w = self.graph.origin[parent[w]]
                        return tuple(reversed(path))
                    queue.append(w)
        raise ValidationError(f"vertex {target!r} not reachable in the subtree")

    # -- the universal tree ----------------------------------------------------------------

    def bass_serre_ball(self, radius):
        """Ball of the universal tree around the base coset.

        Vertices are reduced representative words (tuples of (edge,
        representative) pairs); the empty word is the root.  Children of a
        word extend it by one edge letter with a coset representative,
        skipping exactly the combination that backtracks to the parent.
        """
        self.validate()
        root = ()
        vertices = [root]
        pairs = []
        frontier = [root]
        for _ in range(radius):
            next_frontier = []
            for word in frontier:
                at = self._word_end_vertex(word)
                last = word[-1] if word else None
                for e in sorted(self.graph.star(at)):
                    for rep in self._transversals[e]:
                        if (
                            last is not None
                            and e == self.graph.bar[last[0]]
                            and rep == self._trivial_rep[e]
                        ):
                            continue  # the parent edge
                        child = word + ((e, rep),)
                        vertices.append(child)
                        pairs.append((word, child))
                        next_frontier.append(child)
            frontier = next_frontier
        return SerreGraph.from_geometric(vertices, pairs)

    # -- tree-action cohomology ---------------------------------------------------------------

    def tree_action_cohomology(self, representation):
        """Kernel and cokernel dims of the vertex-to-edge fixed-space map.

        For a finite-dimensional rational representation of the fundamental
        group (validated against all defining relations), the map sends a
        tuple of vertex-group-fixed vectors to, per oriented edge, the
        stable-letter translate of the terminus component minus the origin
        component, read inside the edge-group-fixed subspace.
        """
        self.validate()
        representation.validate(self)
        dim = representation.dim
        identity = RationalMatrix.identity(dim)

        def fixed_space(matrices):
            if not matrices:
                return [tuple(identity.entry(i, j) for j in range(dim)) for i in range(dim)]
            entries = {}
            for k, m in enumerate(matrices):
                for i in range(dim):
                    for j in range(dim):
                        value = m.entry(i, j) - (1 if i == j else 0)
                        if value:
                            entries[(k * dim + i, j)] = value
            return RationalMatrix(len(matrices) * dim, dim, entries).kernel_basis()

        vertex_bases = {}
        offset = 0
        vertex_offsets = {}
        for v in self.graph.vertices:
            group = self.vertex_groups[v]
            mats = [representation.vertex_matrix(v, a) for a in group.elements if a != group.identity]
            basis = fixed_space(mats)
            vertex_bases[v] = basis
            vertex_offsets[v] = offset
            offset += len(basis)
        domain_dim = offset

        rows = 0
        blocks = []
        for e in self.orientation():
            origin, terminus = self.graph.origin[e], self.graph.terminus[e]
            incoming = self.embeddings[self.graph.bar[e]]  # edge group inside o(e)
            edge_group = self.edge_groups[e]
            mats = [
                representation.vertex_matrix(origin, incoming(a))
                for a in edge_group.elements
                if a != edge_group.identity
            ]
            edge_basis = fixed_space(mats)
            if not edge_basis:
                continue
            basis_matrix = RationalMatrix(
                dim,
                len(edge_basis),
                {
                    (i, j): edge_basis[j][i]
                    for j in range(len(edge_basis))
                    for i in range(dim)
                    if edge_basis[j][i]
                },
            )
            letter = representation.stable_matrix(e) if e in self.stable_letters() else identity
            blocks.append((e, origin, terminus, letter, basis_matrix, rows))
            rows += len(edge_basis)

        entries = {}
        for e, origin, terminus, letter, basis_matrix, row0 in blocks:
            for v, sign, transform in ((terminus, 1, letter), (origin, -1, None)):
                for k, b in enumerate(vertex_bases[v]):
                    vector = list(b)
                    if transform is not None:
                        vector = transform.apply(vector)
                    if sign < 0:
                        vector = [-x for x in vector]
                    if all(x == 0 for x in vector):
                        continue
                    coords = basis_matrix.solve(vector)
                    for i, c in enumerate(coords):
                        if c:
                            key = (row0 + i, vertex_offsets[v] + k)
                            entries[key] = entries.get(key, Fraction(0)) + c
        matrix = RationalMatrix(rows, domain_dim, entries)
        rank = matrix.rank()
        return domain_dim - rank, rows - rank


class PiWord:
    """Element of the fundamental group in reduced representative form.

    Build words with ``identity``, ``vertex_element`` and ``stable_letter``
    and combine with ``*`` and ``inverse``; equal group elements always
    produce equal objects.
    """

    __slots__ = ("gog", "syllables", "tail")

    def __init__(self, gog, syllables, tail):
        self.gog = gog
        self.syllables = tuple(syllables)
        self.tail = tail

    @classmethod
    def identity(cls, gog):
        return cls(gog, (), gog.vertex_groups[gog.base_vertex].identity)

    @classmethod
    def vertex_element(cls, gog, vertex, element):
        """The image of a vertex-group element, carried to the base point
        along the subtree."""
        word = cls.identity(gog)
        path = gog._tree_path(vertex)
        for e in path:
            word = word._times_edge(e)
        word = word._times_vertex(vertex, element)
        for e in reversed(path):
            word = word._times_edge(gog.graph.bar[e])
        return word

    @classmethod
    def stable_letter(cls, gog, e):
        """The generator attached to an oriented non-subtree edge."""
        if e not in gog.stable_letters():
            raise ValidationError(f"{e!r} is not an oriented non-subtree edge")
        word = cls.identity(gog)
        for step in gog._tree_path(gog.graph.origin[e]):
            word = word._times_edge(step)
        word = word._times_edge(e)
        for step in reversed(gog._tree_path(gog.graph.terminus[e])):
            word = word._times_edge(gog.graph.bar[step])
        return word

    # -- primitive pushes -------------------------------------------------------------

    def _times_edge(self, e):
        if self.gog.graph.origin[e] != self.gog._word_end_vertex(self.syllables):
            raise ValidationError("edge letter does not start at the word end")
        syllables, tail = self.gog._push_edge(self.syllables, self.tail, e)
        return PiWord(self.gog, syllables, tail)

    def _times_vertex(self, vertex, element):
        if vertex != self.gog._word_end_vertex(self.syllables):
            raise ValidationError("vertex element sits at the wrong vertex")
        syllables, tail = self.gog._push_vertex(self.syllables, self.tail, vertex, element)
        return PiWord(self.gog, syllables, tail)

    # -- group operations --------------------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, PiWord) or other.gog is not self.gog:
            return NotImplemented
        out = self
        for e, rep in other.syllables:
            out = out._times_vertex(self.gog.graph.origin[e], rep)
            out = out._times_edge(e)
        return out._times_vertex(self.gog._word_end_vertex(other.syllables), other.tail)

    def inverse(self):
        # (s_1 e_1 ... s_n e_n t)^-1 = t^-1 bar(e_n) s_n^-1 ... bar(e_1) s_1^-1
        gog = self.gog
        end_vertex = gog._word_end_vertex(self.syllables)
        group = gog.vertex_groups[end_vertex]
        out = PiWord.identity(gog)._times_vertex(end_vertex, group.inverse(self.tail))
        for e, rep in reversed(self.syllables):
            origin = gog.graph.origin[e]
            out = out._times_edge(gog.graph.bar[e])
            out = out._times_vertex(origin, gog.vertex_groups[origin].inverse(rep))
        return out

    def is_identity(self):
        base_group = self.gog.vertex_groups[self.gog.base_vertex]
        return not self.syllables and self.tail == base_group.identity

    def __eq__(self, other):
        if not isinstance(other, PiWord):
            return NotImplemented
        return (self.gog is other.gog and self.syllables == other.syllables and self.tail == other.tail)

    def __hash__(self):
        return hash((id(self.gog), self.syllables, self.tail))

    def __repr__(self):
        return f"PiWord(syllables={self.syllables}, tail={self.tail})"


class PiRepresentation:
    """Finite-dimensional rational representation of the fundamental group.

    Vertex groups act through full matrix tables; every oriented non-subtree
    edge carries a stable-letter matrix.  ``validate`` checks each vertex
    table is a homomorphism, stable matrices are invertible, and all edge
    relations hold: along subtree edges the two edge-group embeddings act
    identically, along the others they differ by stable-letter conjugation.
    """

    def __init__(self, dim, vertex_matrices, stable_matrices):
        self.dim = dim
        self._vertex = {
            v: tuple(RationalMatrix.from_rows(m) for m in mats)
            for v, mats in vertex_matrices.items()
        }
        self._stable = {e: RationalMatrix.from_rows(m) for e, m in stable_matrices.items()}

    @classmethod
    def trivial(cls, gog):
        one = [[1]]
        return cls(
            1,
            {v: [one] * gog.vertex_groups[v].order for v in gog.graph.vertices},
            {e: one for e in gog.stable_letters()},
        )

    def vertex_matrix(self, v, element):
        return self._vertex[v][element]

    def stable_matrix(self, e):
        return self._stable[e]

    def validate(self, gog):
        identity = RationalMatrix.identity(self.dim)
        for v in gog.graph.vertices:
            group = gog.vertex_groups[v]
            mats = self._vertex.get(v)
            if mats is None or len(mats) != group.order:
                raise ValidationError(f"vertex {v!r} needs one matrix per group element")
            for m in mats:
                if (m.rows, m.cols) != (self.dim, self.dim):
                    raise ValidationError("matrix dimensions disagree with the representation")
            if mats[group.identity] != identity:
                raise RelationViolated(f"identity of vertex {v!r} must act trivially")
            for a in group.elements:
                for b in group.elements:
                    if mats[group.op(a, b)] != mats[a] @ mats[b]:
                        raise RelationViolated(f"vertex {v!r} table is not multiplicative at ({a}, {b})")
        for e in gog.stable_letters():
            m = self._stable.get(e)
            if m is None:
                raise ValidationError(f"missing stable-letter matrix for {e!r}")
            if (m.rows, m.cols) != (self.dim, self.dim):
                raise ValidationError("stable-letter matrix has wrong dimensions")
            if m.rank() != self.dim:
                raise NotInvertible(f"stable letter of {e!r}")
        for e in gog.orientation():
            outgoing = gog.embeddings[e]  # edge group into t(e)
            incoming = gog.embeddings[gog.graph.bar[e]]  # edge group into o(e)
            origin, terminus = gog.graph.origin[e], gog.graph.terminus[e]
            letter = self._stable.get(e) if e in gog.stable_letters() else None
            for a in gog.edge_groups[e].elements:
                via_t = self.vertex_matrix(terminus, outgoing(a))
                via_o = self.vertex_matrix(origin, incoming(a))
                if letter is None:
                    if via_t != via_o:
                        raise RelationViolated(f"subtree edge {e!r} at element {a}")
                else:
                    if letter @ via_t != via_o @ letter:
                        raise RelationViolated(f"stable edge {e!r} at element {a}")
        return True


def build_gog(vertices, geometric_edges, vertex_groups, edge_groups, embeddings):
    """Assemble a graph of groups from plain data.

    ``geometric_edges``: list of (edge_id, origin, terminus); each id e
    produces directed edges (e, "+") and (e, "-").  ``embeddings`` maps
    (edge_id, direction) to a Hom into the terminus ("+": origin ->
    terminus direction).
    """
    origin, terminus, bar = {}, {}, {}
    for edge_id, u, v in geometric_edges:
        plus, minus = (edge_id, "+"), (edge_id, "-")
        origin[plus], terminus[plus] = u, v
        origin[minus], terminus[minus] = v, u
        bar[plus], bar[minus] = minus, plus
    graph = SerreGraph(vertices, origin, terminus, bar)
    edge_groups_full = {}
    for edge_id, _, _ in geometric_edges:
        key = min((edge_id, "+"), (edge_id, "-"))
        edge_groups_full[key] = edge_groups[edge_id]
    return GraphOfFiniteGroups(graph, vertex_groups, edge_groups_full, embeddings)


def load_gog(data):
    """Read the JSON form of a graph of finite groups.

    Shape::

        {"vertices": [...],
         "vertex_groups": {vertex: groupspec, ...},
         "edges": [{"id": ..., "from": u, "to": v, "group": groupspec,
                    "embed_to": {"gens": [...], "images": [...]},
                    "embed_from": {"gens": [...], "images": [...]}}]}

    Group specs are preset names or explicit tables; embeddings list
    generator/image pairs, extended multiplicatively and fully re-checked.
    """
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise ValidationError("graph-of-groups JSON needs 'vertices' and 'edges'")
    vertices = [str(v) for v in data["vertices"]]
    raw_vgroups = data.get("vertex_groups", {})
    vertex_groups = {}
    for v in vertices:
        if v not in raw_vgroups:
            raise ValidationError(f"no group given for vertex {v!r}")
        vertex_groups[v] = group_from_spec(raw_vgroups[v])
    geometric = []
    edge_groups = {}
    embeddings = {}
    for record in data["edges"]:
        try:
            edge_id = str(record["id"])
            u, v = str(record["from"]), str(record["to"])
        except (KeyError, TypeError):
            raise ValidationError(f"edge record {record!r} needs id/from/to")
        group = group_from_spec(record.get("group", "1"))
        geometric.append((edge_id, u, v))
        edge_groups[edge_id] = group

        def hom_from(spec, codomain):
            if spec is None:
                if group.order != 1:
                    raise ValidationError(f"edge {edge_id!r} needs explicit embeddings")
                return Hom(group, codomain, [codomain.identity])
            return Hom.from_generator_images(
                group, codomain, list(spec.get("gens", [])), list(spec.get("images", []))
            )

        embeddings[(edge_id, "+")] = hom_from(record.get("embed_to"), vertex_groups[v])
        embeddings[(edge_id, "-")] = hom_from(record.get("embed_from"), vertex_groups[u])
    gog = build_gog(vertices, geometric, vertex_groups, edge_groups, embeddings)
    gog.validate()
    return gog
