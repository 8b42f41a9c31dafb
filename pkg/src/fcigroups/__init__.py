"""Locally finite groups with finite centralizer indices: symbolic specs,
classification certificates, finite truncations, and brute-force oracles."""

from .abelian import (
    AbelianPComponent,
    AbelianPVector,
    FiniteAbelianPGroup,
    UnitResidue,
    fixed_subgroup_order,
    omega1_order,
    teichmuller_lift,
    unit_order,
)
from .bruteforce import (
    CayleyGroup,
    KernelSet,
    SubgroupHandle,
    catalog,
    centralizer,
    check_example21,
    check_lucido,
    check_prop22,
    derived_subgroup,
    dih,
    is_cyclic,
    is_metabelian,
    is_normal_cyclic,
    kernel_set,
    q8_automorphisms,
    q8_group,
    quotient,
)
from .dedekind import (
    ComponentElementSpec,
    DedekindElementSpec,
    DedekindSpec,
    DedekindTruncation,
    TailRule,
    TruncationParams,
    center_elements,
    is_dedekind_bruteforce,
    truncate,
    validate_spec,
)
from .errors import OrderCapError, SpecError
from .extension import (
    BciReport,
    Certificate,
    Classification,
    ExtensionTruncation,
    FciGroupSpec,
    classify,
    empirical_bci,
    global_bound,
    multiply,
    truncate_group,
    validate_all,
    validate_extension,
)
from .power_aut import (
    Cardinal,
    INFINITE,
    M_value,
    PowerAutSpec,
    UnitLabel,
    centralizer_bound,
    component_order,
    finiteness_check,
    phi_order,
    pi0_pi1,
    symbolic_centralizer_order,
)
from .power_aut import apply as apply_power_aut
from .specio import (
    BUNDLED_FCI,
    bundled_names,
    classification_report,
    load_bundled,
    load_spec_file,
    parse_spec_document,
    spec_document,
)

__version__ = "0.1.0"
