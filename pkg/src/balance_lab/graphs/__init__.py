"""Graph classes and the antimatroids built from them."""

from .constructions import (PosetRelation, closure_family, elimination_antimatroid,
                            node_search_antimatroid, node_search_elements,
                            poset_antimatroid)
from .graph import (BlockCutForest, CliqueTree, Graph, biconnected_components,
                    clique_tree, generate_block_graph, generate_dh_graph,
                    generate_ktree, generate_split_graph, is_block_graph,
                    is_chordal, is_distance_hereditary, is_ktree, is_split,
                    maximal_cliques_chordal, maximum_cardinality_search,
                    prune_sequence)
from .ladders import (Extraction, block_graph_double_ladder, dh_node_search_double_ladder,
                      dh_split_analysis, ktree_double_ladder, split_node_search_height,
                      vertex_powers)
