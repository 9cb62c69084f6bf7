"""Documentation defect taxonomy.

The tree itself is data (docdrift/data/taxonomy.yaml); only the leaf names
that drift detection and documentation testing suggest are named here.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

ERRONEOUS_CODE_EXAMPLES = 'Erroneous code examples'
MISSING_DOC_NEW_FEATURE = 'Missing documentation for new feature/component'
OUTDATED_EXAMPLE = 'Outdated example'
OTHER_UP_TO_DATENESS = 'Other Up-to-dateness issues'


@dataclass(frozen=True)
class TaxonomyNode:
    key: str
    name: str
    parent: Optional[str] = None
    children: Tuple[str, ...] = ()
    automation_flag: bool = False

    @property
    def is_leaf(self) -> bool:
        return not self.children


class Taxonomy:
    """A validated defect category tree; nodes are addressed by key or display name"""

    def __init__(self, nodes: Dict[str, TaxonomyNode]):
        self._nodes = nodes
        self._lookup: Dict[str, str] = {}
        for node in nodes.values():
            self._lookup[node.key.casefold()] = node.key
            self._lookup[node.name.casefold()] = node.key

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, key: str) -> bool:
        return key in self._nodes

    def __getitem__(self, key: str) -> TaxonomyNode:
        return self._nodes[key]

    @property
    def roots(self) -> List[TaxonomyNode]:
        return [node for node in self._nodes.values() if node.parent is None]

    @property
    def leaves(self) -> List[TaxonomyNode]:
        return [node for node in self.walk() if node.is_leaf]

    @property
    def automation_leaves(self) -> List[TaxonomyNode]:
        return [node for node in self.leaves if node.automation_flag]

    def resolve(self, label: str) -> Optional[TaxonomyNode]:
        key = self._lookup.get(label.strip().casefold())
        return self._nodes[key] if key is not None else None

    def ancestors(self, key: str) -> List[TaxonomyNode]:
        """Parents from the immediate one up to the root"""
        chain = []
        parent = self._nodes[key].parent
        while parent is not None:
            chain.append(self._nodes[parent])
            parent = self._nodes[parent].parent
        return chain

    def depth(self, key: str) -> int:
        return len(self.ancestors(key))

    def walk(self) -> Iterator[TaxonomyNode]:
        """Pre-order traversal in declaration order"""
        stack = list(reversed(self.roots))
        while stack:
            node = stack.pop()
            yield node
            stack.extend(self._nodes[child] for child in reversed(node.children))
