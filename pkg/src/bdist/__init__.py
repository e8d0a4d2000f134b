"""Exact calculus of distributions over binary step test functions."""
from .core import Bit, Window, fmt_rat, parity, rat
from .dist import (
    DeltaLeft,
    DeltaRight,
    Distribution,
    IntDerivLeft,
    IntDerivRight,
    Parity,
    Regular,
    apply,
    classify_regularity,
    delta,
    delta_left,
    delta_right,
    deriv_left_dist,
    deriv_right_dist,
    limit_left,
    limit_right,
    regular,
    scale_dist,
    translate_dist,
    xor_dist,
)
from .dsl import deserialize, evaluate, parse, print_canonical, serialize, to_text
from .errors import BdistError, DomainError
from .fundamental import bundle, regularity_criterion
from .point_sets import LocallyFiniteSet
from .step_fn import StepFunction, TestFunction, chi, chi_interval, chi_point
from .tensor_conv import apply2, convolve, tensor
from .test_fn import TestFunction2, chi2, integral

__version__ = "0.1.0"
