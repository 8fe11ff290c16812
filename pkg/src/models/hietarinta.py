"""
Hietarinta Equation
Quad equation consistent around a cube, evaluated through its polynomial form
"""
import logging
from fractions import Fraction
from typing import Any, Mapping, Optional, Tuple

from core.exception import DegenerateException, RealityException, SingularConfigurationException
from models.base import QuadModel, Shift
from utils.str import parse_rational

logger = logging.getLogger(__name__)


def hietarinta_o2(e1: Any, e2: Any, o1: Any) -> Fraction:
    """
    The o2 making the Hietarinta dispersion relation real.

    Args:
        e1, e2, o1: Model parameters

    Returns:
        o2 = e1 e2 o1 / (e1 e2 - o1 (e1 - e2))

    Raises:
        RealityException: the denominator vanishes
    """
    e1, e2, o1 = (parse_rational(v) for v in (e1, e2, o1))
    denominator = e1 * e2 - o1 * (e1 - e2)
    if denominator == 0:
        raise RealityException(
            "No o2 gives a real Hietarinta dispersion",
            e1=str(e1), e2=str(e2), o1=str(o1),
        )
    return e1 * e2 * o1 / denominator


def reality_residual(e1: Fraction, e2: Fraction, o1: Fraction, o2: Fraction) -> Fraction:
    """o2 (e1 e2 - o1 (e1 - e2)) - e1 e2 o1, zero when the dispersion is real"""
    return o2 * (e1 * e2 - o1 * (e1 - e2)) - e1 * e2 * o1


class HietarintaModel(QuadModel):
    """(u+e2)(u11+o2)(u10+o1)(u01+e1) = (u10+e2)(u01+o2)(u+e1)(u11+o1), background 0"""

    kind = "hietarinta"
    background = 0
    param_names = ("e1", "e2", "o1", "o2")

    def __init__(self, e1: Any, e2: Any, o1: Any, o2: Optional[Any] = None):
        if o2 is None:
            o2 = hietarinta_o2(e1, e2, o1)
            logger.debug(f"Derived o2 = {o2} from the reality condition")
        super().__init__(e1=e1, e2=e2, o1=o1, o2=o2)

    def validate(self) -> None:
        for name in ("e1", "e2", "o1", "o2"):
            if self.params[name] == 0:
                raise DegenerateException(f"hietarinta requires {name} != 0", **self.describe_params())

    @property
    def is_real(self) -> bool:
        return reality_residual(*(self.params[n] for n in self.param_names)) == 0

    def equation(self, u: Mapping[Shift, Any], params: Mapping[str, Any]) -> Any:
        e1, e2, o1, o2 = params["e1"], params["e2"], params["o1"], params["o2"]
        left = (u[(0, 0)] + e2) * (u[(1, 1)] + o2) * (u[(1, 0)] + o1) * (u[(0, 1)] + e1)
        right = (u[(1, 0)] + e2) * (u[(0, 1)] + o2) * (u[(0, 0)] + e1) * (u[(1, 1)] + o1)
        return left - right

    def rational_residual(self, corner_values: Any) -> float:
        """Residual of the ratio form; raises at its poles"""
        u = self._as_mapping(corner_values)
        e1, e2, o1, o2 = (self.float_params()[n] for n in self.param_names)
        denominators = {
            (0, 0): u[(0, 0)] + e1,
            (1, 1): u[(1, 1)] + o1,
            (1, 0): u[(1, 0)] + o1,
            (0, 1): u[(0, 1)] + e1,
        }
        for shift, value in denominators.items():
            if value == 0:
                raise SingularConfigurationException("hietarinta: pole of the ratio form", site=shift)
        left = (u[(0, 0)] + e2) / denominators[(0, 0)] * (u[(1, 1)] + o2) / denominators[(1, 1)]
        right = (u[(1, 0)] + e2) / denominators[(1, 0)] * (u[(0, 1)] + o2) / denominators[(0, 1)]
        return left - right

    def check_reality(self, k: float) -> None:
        if not self.is_real:
            raise RealityException(
                "hietarinta: o2 violates the reality condition o2 = e1 e2 o1 / (e1 e2 - o1 (e1 - e2))",
                **self.describe_params(),
            )

    def pq(self) -> Optional[Tuple[Fraction, Fraction]]:
        if not self.is_real:
            return None
        e1, e2, o1 = self.params["e1"], self.params["e2"], self.params["o1"]
        return o1 * (e1 - e2), e1 * (o1 - e2)
