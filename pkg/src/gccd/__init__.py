"""Graph-coloring check digits for bit strings."""

from .codec import (
    BitString,
    CodecError,
    ExtensionPlan,
    Graph,
    Padding,
    bits_to_graph,
    graph_to_bits,
    order_for_length,
    padding_bit,
    pair_at,
    pos_of,
    serialize_symbols,
)
from .coloring import (
    ChromaticCertificate,
    Coloring,
    OrderGuardExceeded,
    brooks_bound,
    canonical_coloring,
    chromatic_number,
    clique_lower,
    dsatur_upper,
    is_k_colorable,
    is_proper,
)
from .scheme import CheckedMessage, Stage, VerificationOutcome, encode, parse_message, serialize_message, verify

__version__ = "0.1.0"
