"""Additive capacities of finite-dimensional quantum channels."""
from .channels import (
    ChannelClass,
    ChoiState,
    KrausChannel,
    apply,
    apply_extended,
    canonical,
    channel_from_choi,
    choi_apply,
    choi_of,
    classify,
    complementary,
    compose,
    dilation,
    tensor,
)
from .capacity import (
    CapacityReport,
    EaoEnsemble,
    OrtEnsemble,
    Undefined,
    classical_capacity,
    classical_capacity_basis_search,
    coherent_classical_capacity,
    ea_classical_capacity_search,
    ea_mutual_information,
    eao_classical_capacity,
    eao_quantum_capacity,
    holevo_eao,
    holevo_ort,
    private_capacity,
    quantum_capacity,
    uniform_weyl_ensemble,
    zero_capacity_threshold,
)
from .information import (
    channel_coherent_info,
    coherent_information,
    coherent_mutual_information,
    purify,
    relative_entropy,
    von_neumann_entropy,
)
from . import zoo

__version__ = "0.1.0"
