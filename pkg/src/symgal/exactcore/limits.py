"""Optional cap on integer growth, controlled by SYMGAL_MAX_COEFF_BITS."""

import os

from ..errors import CoefficientOverflow

ENV_VAR = "SYMGAL_MAX_COEFF_BITS"


def max_coeff_bits():
    raw = os.environ.get(ENV_VAR)
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    return value if value > 0 else None


def check_ints(values, where=""):
    cap = max_coeff_bits()
    if cap is None:
        return
    for v in values:
        if abs(v).bit_length() > cap:
            raise CoefficientOverflow(f"integer of {abs(v).bit_length()} bits exceeds "
                                      f"{ENV_VAR}={cap}" + (f" in {where}" if where else ""))


def check_rationals(values, where=""):
    if max_coeff_bits() is None:
        return
    ints = []
    for q in values:
        ints.append(q.numerator)
        ints.append(q.denominator)
    check_ints(ints, where)
