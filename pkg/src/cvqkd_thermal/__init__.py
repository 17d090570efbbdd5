"""
Secret key rates and security thresholds for continuous-variable QKD with
noisy (thermal) state preparation under the entangling-cloner attack.
"""

from .blackbody import (
    CONSTANTS,
    PhysicalConstants,
    ThermalEnvironment,
    WirelessScenario,
    mean_photon_number,
    omega_from_ghz_as_rad_s,
    omega_from_hz,
    thermal_variance,
    wireless_threshold,
)
from .channel import (
    ChannelParams,
    ModulationParams,
    bob_conditional_variance,
    bob_variance,
    mutual_information_ab,
)
from .errors import CVQKDError, DomainError, InvalidParameterError, NumericError, UnphysicalStateError
from .eve import (
    BobCorrelations,
    EveState,
    bob_correlations,
    eve_cm,
    dr_conditional_spectrum,
    eve_conditional_cm_dr,
    eve_conditional_cm_rr,
    eve_spectrum,
    holevo_dr,
    holevo_rr,
    rr_conditional_spectrum,
)
from .gaussian import (
    SymplecticSpectrum,
    TwoModeCM,
    assemble_cm,
    g_entropy,
    symplectic_form,
    symplectic_spectrum_closed,
    symplectic_spectrum_generic,
    von_neumann_entropy,
)
from .keyrate import (
    KeyRateResult,
    Protocol,
    ThresholdResult,
    Verdict,
    best_protocol,
    rr_noise_bound,
    key_rate,
    noise_threshold,
    transmission_threshold,
)

__version__ = "0.1.0"
