from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence

import networkx as nx

from src.error.errors import InvalidSpec
from src.error.logger import get_logger
from src.groups.core import Element, MetricGroup

logger = get_logger(__name__)


@dataclass(frozen=True)
class WordMetricTable:
    """Word length of every element of a finite group, read off its Cayley graph."""

    identity: Element
    lengths: Dict[Element, int]
    generators: tuple
    symmetric: bool

    @property
    def size(self) -> int:
        return len(self.lengths)

    @classmethod
    def build(cls, elements: Sequence[Element], identity: Element, multiply, inverse,
              generators: Iterable[Element]) -> 'WordMetricTable':
        """
        Breadth-first search from the identity over the Cayley graph.

        Args:
            elements: Every element of the group
            identity: The identity element
            multiply: Group product
            inverse: Group inverse
            generators: Generating set; edges join g and g·s

        Returns:
            The table of word lengths
        """
        generators = tuple(generators)
        graph = nx.Graph()
        graph.add_nodes_from(elements)
        for g in elements:
            for s in generators:
                graph.add_edge(g, multiply(g, s))
        lengths = nx.single_source_shortest_path_length(graph, identity)
        if len(lengths) != len(elements):
            raise InvalidSpec(f"generators {generators} do not generate the group")
        gen_set = set(generators)
        symmetric = all(inverse(s) in gen_set for s in generators)
        logger.debug(f"Word metric on {len(elements)} elements, diameter {max(lengths.values())}")
        return cls(identity, dict(lengths), generators, symmetric)

    def length(self, g: Element) -> int:
        return self.lengths[g]

    def diameter(self) -> int:
        return max(self.lengths.values())


def word_metric_distance(table: WordMetricTable, group: MetricGroup, g: Element, p: Element) -> int:
    """d(g, p) = |g^-1 p| in the word metric."""
    return table.length(group.multiply(group.inverse(g), p))


def sphere(table: WordMetricTable, radius: int) -> List[Element]:
    return sorted(g for g, length in table.lengths.items() if length == radius)
