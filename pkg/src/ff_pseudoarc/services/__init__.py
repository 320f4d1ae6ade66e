"""__init__ para services"""

from ff_pseudoarc.services.membership import cover_by_antidiagonal, is_in_family_F
from ff_pseudoarc.services.chessboard import product_coloring, solecki_amalgamate, steinhaus_check
from ff_pseudoarc.services.cap_amalgamation import cap_witness, jpp_witness
from ff_pseudoarc.services.verifiers import PropertyVerifier, VerificationReport
from ff_pseudoarc.services.tower import Tower, check_tower, extend_tower, new_tower

__all__ = [
    "cover_by_antidiagonal",
    "is_in_family_F",
    "product_coloring",
    "solecki_amalgamate",
    "steinhaus_check",
    "cap_witness",
    "jpp_witness",
    "PropertyVerifier",
    "VerificationReport",
    "Tower",
    "check_tower",
    "extend_tower",
    "new_tower",
]
