"""Decreasing-sequence trees over ordinals: orders, ranks, embeddings,
similarity classes, uniform colourings and finite partition searches."""

from .dstree import Tree, generate_ds, graft, meet, subtrees
from .embed import is_embedding, iter_embeddings, sibling_check
from .errors import DsError, Verdict
from .ordinal import Ordinal, parse_ordinal
from .rank import rank, rank_embed
from .search import (
    Certificate,
    adversary_search,
    find_uniform_copy,
    partition_number,
    stepping_up_pipeline,
    verify_certificate,
)
from .similarity import class_index, class_of_index, invariant, similar
from .uniformity import Colouring, is_end_uniform, is_n_end_uniform, is_uniform

__all__ = [
    "Certificate",
    "Colouring",
    "DsError",
    "Ordinal",
    "Tree",
    "Verdict",
    "adversary_search",
    "class_index",
    "class_of_index",
    "find_uniform_copy",
    "generate_ds",
    "graft",
    "invariant",
    "is_embedding",
    "is_end_uniform",
    "is_n_end_uniform",
    "is_uniform",
    "iter_embeddings",
    "meet",
    "parse_ordinal",
    "partition_number",
    "rank",
    "rank_embed",
    "sibling_check",
    "similar",
    "stepping_up_pipeline",
    "subtrees",
    "verify_certificate",
]
