"""Reconstructing random graphs from their local neighborhoods."""

from .assemble_one import AssemblyOutcome, Status, assemble_from_1nbhd
from .assemble_two import assemble_auto, assemble_diameter2, assemble_from_2nbhd_fingerprint
from .graph import ErParams, Graph, sample_er
from .iso import certificate, is_isomorphic
from .shotgun import NeighborhoodCollection, NeighborhoodView, recover_centers, shred
from .witness import same_r_neighborhoods, search_nonrecon_pair, star_witness

__all__ = [
    "AssemblyOutcome", "ErParams", "Graph", "NeighborhoodCollection", "NeighborhoodView",
    "Status", "assemble_auto", "assemble_diameter2", "assemble_from_1nbhd",
    "assemble_from_2nbhd_fingerprint", "certificate", "is_isomorphic", "recover_centers",
    "same_r_neighborhoods", "sample_er", "search_nonrecon_pair", "shred", "star_witness",
]
__version__ = "0.1.0"
