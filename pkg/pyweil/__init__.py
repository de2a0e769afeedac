from .DiophantineSystem import DiophantineSystem, hensel_lift, infinitesimal_points, tangent_space
from .FormalGroupLaw import FormalGroupLaw, WeierstrassCurve, build_formal_group_law, jet_group_add, trivialize
from .PadicNumber import PadicNumber, arith, make_padic, norm
from .PowerSeries import PowerSeries
from .WeilAlgebra import WeilAlgebra, WeilElement, build_algebra, make_dual_numbers, make_jet_algebra
from .WeilBundle import ChartTransition, DifferentialForm, WeilPoint, transition_lift
from .analyticfunctions import check_convergence, lift_series, mahler_coefficients, mahler_eval, series_eval

__all__ = [
    "PadicNumber",
    "WeilAlgebra",
    "WeilElement",
    "PowerSeries",
    "WeilPoint",
    "ChartTransition",
    "DifferentialForm",
    "WeierstrassCurve",
    "FormalGroupLaw",
    "DiophantineSystem",
    "make_padic",
    "arith",
    "norm",
    "build_algebra",
    "make_dual_numbers",
    "make_jet_algebra",
    "series_eval",
    "lift_series",
    "check_convergence",
    "mahler_coefficients",
    "mahler_eval",
    "transition_lift",
    "build_formal_group_law",
    "jet_group_add",
    "trivialize",
    "tangent_space",
    "infinitesimal_points",
    "hensel_lift",
]
