import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from docdrift.config.settings import Config
from docdrift.exceptions import NonLeafLabel, TaxonomyError, UnknownLabel
from docdrift.models.taxonomy import Taxonomy, TaxonomyNode

logger = logging.getLogger(__name__)


class TaxonomyService:
    """Service for loading defect taxonomies"""

    @staticmethod
    def load(path: Optional[Union[str, Path]] = None) -> Taxonomy:
        """
        Load a taxonomy file (see docs/taxonomy-format.md)

        Args:
            path: Taxonomy YAML; the packaged default when None

        Returns:
            Validated Taxonomy

        Raises:
            TaxonomyError: File unreadable or tree invalid
        """
        path = Path(path) if path is not None else Config.DEFAULT_TAXONOMY
        try:
            data = yaml.safe_load(path.read_text(encoding='utf-8'))
        except (OSError, yaml.YAMLError) as exc:
            raise TaxonomyError(f'cannot read taxonomy {path}: {exc}') from exc
        return TaxonomyService.from_data(data)

    @staticmethod
    def from_data(data: Any) -> Taxonomy:
        if not isinstance(data, dict) or not isinstance(data.get('nodes'), list):
            raise TaxonomyError('taxonomy must be a mapping with a "nodes" list')

        raw_nodes: List[Dict[str, Any]] = []
        for item in data['nodes']:
            if not isinstance(item, dict) or not item.get('key'):
                raise TaxonomyError(f'taxonomy node needs a key: {item!r}')
            raw_nodes.append(item)

        keys = [str(item['key']) for item in raw_nodes]
        names = [str(item.get('name', item['key'])).casefold() for item in raw_nodes]
        if len(set(keys)) != len(keys):
            raise TaxonomyError('taxonomy node keys must be unique')
        if len(set(names)) != len(names):
            raise TaxonomyError('taxonomy node names must be unique')

        # labels resolve by key or name, case-insensitively; each spelling must reach one node
        owners: Dict[str, str] = {}
        for key, name in zip(keys, names):
            for alias in (key.casefold(), name):
                other = owners.setdefault(alias, key)
                if other != key:
                    raise TaxonomyError(f'label {alias!r} names both {other!r} and {key!r}')

        children: Dict[str, List[str]] = {key: [] for key in keys}
        for item in raw_nodes:
            parent = item.get('parent')
            if parent is None:
                continue
            if str(parent) not in children:
                raise TaxonomyError(f'node {item["key"]!r} has unknown parent {parent!r}')
            children[str(parent)].append(str(item['key']))

        nodes = {}
        for item in raw_nodes:
            key = str(item['key'])
            automation = bool(item.get('automation', False))
            if automation and children[key]:
                raise TaxonomyError(f'automation flag on internal node {key!r}; flags belong on leaves')
            nodes[key] = TaxonomyNode(
                key=key,
                name=str(item.get('name', key)),
                parent=str(item['parent']) if item.get('parent') is not None else None,
                children=tuple(children[key]),
                automation_flag=automation,
            )

        taxonomy = Taxonomy(nodes)
        if sum(1 for _ in taxonomy.walk()) != len(nodes):
            raise TaxonomyError('taxonomy contains a cycle')
        logger.debug('loaded taxonomy with %d nodes', len(nodes))
        return taxonomy

    @staticmethod
    def leaf_for(taxonomy: Taxonomy, label: str) -> TaxonomyNode:
        """
        Resolve a label to its leaf node

        Raises:
            UnknownLabel: No node has that key or name
            NonLeafLabel: The label names an internal node
        """
        node = taxonomy.resolve(label)
        if node is None:
            raise UnknownLabel(label)
        if not node.is_leaf:
            raise NonLeafLabel(label)
        return node
