"""Permutation-group kernel and executable checks of composition-factor bounds
for point stabilizers of transitive groups."""
from .perm import Permutation, PermutationError, compose
from .group import (DEFAULT_ENUM_LIMIT, PermGroup, ResourceLimitError,
                    alternating_group, cyclic_group, group_from_generators,
                    symmetric_group)

__all__ = [
    "DEFAULT_ENUM_LIMIT", "PermGroup", "Permutation", "PermutationError",
    "ResourceLimitError", "alternating_group", "compose", "cyclic_group",
    "group_from_generators", "symmetric_group",
]
