"""Dominant families of sets: dominance tests, covering-subset parity,
squarefree lcm labelings and Taylor multidegree certificates."""

from .counting import (
    CountReport,
    PairCountReport,
    count_covering_bruteforce,
    count_covering_inclusion_exclusion,
    count_covering_subsets,
    count_report,
    full_union_subfamily_count,
    grinberg_pair_count,
)
from .family import (
    SetFamily,
    Universe,
    build_family,
    family_union,
    format_family,
    is_dominant,
    is_dominant_direct,
    parse_family,
    private_elements,
    reduce_family,
    subfamily_union,
    subfamily_unions_distinct,
)
from .monomial import (
    CertificateReport,
    Monomial,
    MonomialIdeal,
    divides,
    generators_of_m,
    is_dominant_ideal,
    minimal_generators_of_m,
    minimal_monomial_generators,
    mono_lcm,
    parse_ideal,
    parse_monomial,
    polarize,
    support,
    taylor_parity_certificate,
)
from .squarefree import (
    all_labels_distinct,
    condition_c,
    count_dominated_divisors,
    multiface_labels,
    squarefree_factorize,
)

__version__ = "0.1.0"
