"""Finite co-Heyting algebras as downset algebras of finite posets: duality,
minimal extensions, Maksimova varieties, density/splitting witnesses and a
self-extending ambient algebra."""
from .duality import Embedding, LatticeTable, algebra_from_table, check_embedding, lifted_embedding
from .embedding import Ambient, ambient_density, ambient_new, ambient_splitting, embed_finite, embed_over, realize_signature
from .enumeration import canonical_form, enumerate_posets, enumerate_subalgebras, isomorphic
from .errors import CoheytError
from .extensions import (
    PrimitiveTuple,
    Signature,
    enumerate_signatures,
    find_primitive_tuple,
    iso_over,
    minimal_extension,
    primitive_check,
    primitive_tower,
)
from .lattice import Algebra, Downset, Poset, build_poset
from .subalgebra import Subalgebra, generated_subalgebra, is_subalgebra
from .terms import eval_term, parse_term
from .varieties import (
    check_equational,
    check_structural,
    chain_product_embedding,
    component_factorization,
    dimension,
    in_variety,
)
from .witnesses import (
    bounded_extension_search,
    check_density,
    check_splitting,
    density_extension,
    product_lift_witness,
    splitting_extension,
)
