"""invarforms: exact invariant exterior calculus on Lie algebras.

Everything runs over the Gaussian rationals — structure equations, twisted
differentials, Lefschetz theory, cohomology tables, feasibility of
conformally closed metric structures, and machine-checkable nonexistence
certificates.  No floating point anywhere.
"""

from .algebra import (AlgebraSpec, ValidationReport, del_bar, del_hol,
                      exterior_d, parse_complex_dsl, parse_form, parse_salamon,
                      spec_from_json, spec_to_json, to_complex_dsl, to_salamon,
                      validate_spec)
from .catalog import catalog_names, load_catalog
from .certificates import (CertResult, certificate_check, check_certificate,
                           load_certificate, shipped_certificate_names)
from .cohomology import (CohomologyReport, bc_to_dolbeault_injectivity,
                         betti_numbers, cohomology_dims, ddbar_lemma_check,
                         delta_degree, weak_ddbar_check)
from .feasibility import (GenericAnsatz, PositivityProfile, ResidualSystem,
                          Witness, build_ansatz, contact_search,
                          d_theta_exact_solve, k_gauduchon_scalar,
                          positivity_check, positivity_coefficient,
                          residual_conformal, residual_pluriclosed,
                          verify_witness, witness_search)
from .forms import Bidegree, Form, Frame
from .operators import MetricData, OperatorMatrix, twisted_d, weil_J
from .reports import Report, emit_report
from .scalars import GaussRat, ParamRegistry, Scalar
from .suites import run_suite

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec", "Bidegree", "CertResult", "CohomologyReport", "Form",
    "Frame", "GaussRat", "GenericAnsatz", "MetricData", "OperatorMatrix",
    "ParamRegistry", "PositivityProfile", "Report", "ResidualSystem",
    "Scalar", "ValidationReport", "Witness",
    "bc_to_dolbeault_injectivity", "betti_numbers", "build_ansatz",
    "catalog_names", "certificate_check", "check_certificate",
    "cohomology_dims", "contact_search", "d_theta_exact_solve", "ddbar_lemma_check",
    "del_bar", "del_hol", "delta_degree", "emit_report", "exterior_d",
    "k_gauduchon_scalar", "load_catalog", "load_certificate",
    "parse_complex_dsl", "parse_form", "parse_salamon", "positivity_check",
    "positivity_coefficient", "residual_conformal", "residual_pluriclosed",
    "run_suite", "shipped_certificate_names", "spec_from_json", "spec_to_json",
    "to_complex_dsl", "to_salamon", "twisted_d", "validate_spec",
    "verify_witness", "weak_ddbar_check", "weil_J", "witness_search",
]
