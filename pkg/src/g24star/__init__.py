"""Star product with separation of variables on the complex Grassmannian G_{2,4}(C).

Main entry points:

    recurrence_T_table, closed_form_T, oracle_T_linear_system   coefficients T^n
    build_T_n, matrix_element                                   Fock-space operators
    build_chart, metric_entry, D_up, D_bar                      chart geometry
    star_coeff_form, star_direct_form                           the product itself
    parse_expr                                                  test-function language
"""
from .closed_form import check_I_independence, closed_form_T, closed_form_table
from .errors import (BadIndex, BadWeight, BoundExceeded, DivisionByZero, EvalSingular, G24Error,
                     NegativeValuation, ParseError, PoleAtValue, UnsupportedShape)
from .exact_scalars import GaussianRational, HRational, hr_arith, hr_eval, hr_series_at_zero
from .fock import build_T_n, matrix_element
from .geometry import (D_bar, D_up, apply_multi_D, build_chart, curvature_constant,
                       inv_metric_entry, metric_entry)
from .oracle import oracle_T_linear_system
from .parser import parse_expr
from .recurrence import recurrence_T_table
from .residuals import residual_cor32, residual_general_grassmann, residual_hs
from .ring import CoeffPoly
from .star import HSeries, star_coeff_form, star_direct_form

__version__ = "0.1.0"
