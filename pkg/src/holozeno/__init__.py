"""Holonomic two-qubit gates from Zeno-projected two-atom cavity dynamics."""

__version__ = "0.1.0"

from .analysis import (  # noqa: E402
    ClassificationReport,
    GateInvariants,
    WeylPoint,
    classify_gate,
    entangling_power_closed,
    entangling_power_mc,
    is_perfect_entangler,
    makhlin_invariants,
    max_concurrence,
    weyl_c_closed,
    weyl_coordinates,
)
from .design import (  # noqa: E402
    DesignTarget,
    SweepGrid,
    design_for_entangling_power,
    design_for_weyl_c,
    design_perfect_entangler,
    sweep_entangling_power,
    table_row_pulses,
)
from .dfs import (  # noqa: E402
    AngularParams,
    PulseSet,
    ZenoRegime,
    build_laser_hamiltonian,
    dfs_projector,
    effective_hamiltonian_closed_form,
    from_angular,
    project_to_dfs,
    to_angular,
    zeno_regime_check,
)
from .errors import (  # noqa: E402
    DegenerateDriveError,
    HolozenoError,
    InvalidInputError,
    InvalidRegimeError,
    VerificationError,
)
from .evolution import (  # noqa: E402
    HolonomicGate,
    check_cyclicity,
    check_parallel_transport,
    eigensystem,
    explicit_gate_matrix,
    holonomy_gate,
    holonomy_run_time,
    propagator_closed_form,
    propagator_oracle,
)
