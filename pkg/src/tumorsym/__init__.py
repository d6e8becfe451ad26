"""Verification library for a moving-boundary tumour-growth model.

Closed-form solution families of the (1+2)-dimensional model, the Lie
group actions that generate them, symmetry reductions to radial profiles,
and independent residual checks of all of the above.
"""

from .core_model import (ConstitutiveTriplet, DegenerateScaleError,
                         DomainError, FieldValue, GeneralTriplet,
                         PhysConstants, PowerLawParams, PowerLawTriplet,
                         ScaleExponents, compatibility_residual,
                         constitutive_eval, scale_exponents,
                         sigma_from_proliferation, validate_power_law)
from .jets import AnalyticEngine, FdEngine, Field, FieldJet, JetProvider, \
    analytic_jet, fd_jet
from .reduction import (ReducedProfiles, first_integral_R,
                        integrate_ode_4_6, lift_profiles,
                        overdetermined_residual, pressure_from_lambda,
                        reduced_bc_residual, reduced_ode_residual,
                        steady_residual)
from .residuals import (ResidualReport, SampleSet, boundary_residual,
                        cross_engine_check, governing_residual)
from .solutions import (FAMILY_IDS, BoundaryCircle, ConstantState, Full413,
                        Moving442, Moving444, RestrictionError,
                        SingularityError, Stationary413s, Steady432,
                        boundary_of, derived_constants_4_40, eval_jet,
                        reduced_profiles_of, regular_c3_4_38,
                        restrictions_4_42, restrictions_4_44,
                        steady_constants_4_36)
from .symmetry import (Galilei, InapplicableSymmetryError, PressureShift,
                       Rotation, Scale, TimeTranslation,
                       boundary_invariance, orbit_residual,
                       transform_field)

__version__ = "1.0.0"
