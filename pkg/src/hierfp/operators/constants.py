"""Admissibility of the constants mu, rho, gamma, L, eta and the modulus nu."""

import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from hierfp.core.interfaces import ConstantsError
from hierfp.core.models import ConstantsReport, InequalityCheck

MU_BOUND = "0<μ<2η/L²"
RHO_BOUND = "0≤ργ<ν"
ETA_BOUND = "η≤L"


def compute_nu(mu: float, eta: float, lip: float) -> float:
    """nu = 1 - sqrt(1 - mu (2 eta - mu L^2)), in (0, 1]."""
    if lip <= 0 or eta <= 0 or not 0 < mu < 2 * eta / lip**2:
        raise ConstantsError(
            f"mu out of admissible range: need {MU_BOUND}, got mu={mu}, "
            f"eta={eta}, L={lip}"
        )
    radicand = 1.0 - mu * (2.0 * eta - mu * lip**2)
    # Negative only when eta > L, which no operator satisfies.
    return 1.0 - math.sqrt(max(radicand, 0.0))


class Constants(BaseModel):
    """The tuple (mu, rho, gamma, L, eta); nu is derived."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    mu: float
    rho: float = 0.0
    gamma: float = Field(default=0.0, ge=0)
    lip: float = Field(gt=0)
    eta: float = Field(gt=0)

    @property
    def nu(self) -> Optional[float]:
        """nu when mu is admissible, otherwise None."""
        try:
            return compute_nu(self.mu, self.eta, self.lip)
        except ConstantsError:
            return None

    @property
    def monotonicity(self) -> float:
        """mu eta - rho gamma, the strong monotonicity of mu F - rho V."""
        return self.mu * self.eta - self.rho * self.gamma


def validate_constants(c: Constants) -> ConstantsReport:
    """Check 0 < mu < 2 eta / L^2 and 0 <= rho gamma < nu."""
    bound = 2.0 * c.eta / c.lip**2
    nu = c.nu
    rho_gamma = c.rho * c.gamma
    checks = [
        InequalityCheck(
            name=MU_BOUND,
            passed=0.0 < c.mu < bound,
            detail=f"mu={c.mu:g}, 2η/L²={bound:g}",
        ),
        InequalityCheck(
            name=RHO_BOUND,
            passed=nu is not None and 0.0 <= rho_gamma < nu,
            detail=(
                f"ργ={rho_gamma:g}, ν={nu:g}"
                if nu is not None
                else f"ργ={rho_gamma:g}, ν undefined"
            ),
        ),
        InequalityCheck(
            name=ETA_BOUND,
            passed=c.eta <= c.lip,
            detail=f"η={c.eta:g}, L={c.lip:g}",
        ),
    ]
    return ConstantsReport(
        mu=c.mu, rho=c.rho, gamma=c.gamma, lip=c.lip, eta=c.eta, nu=nu, checks=checks
    )


def require_admissible(c: Constants) -> float:
    """Return nu, or raise ConstantsError quoting every violated inequality."""
    report = validate_constants(c)
    if not report.passed:
        raise ConstantsError("; ".join(report.failures()))
    assert report.nu is not None
    return report.nu


def scale_constants(c: Constants, factor: float) -> Constants:
    """Multiply mu and rho by factor; the result is revalidated by the caller."""
    if factor <= 0:
        raise ConstantsError(f"scale factor must be positive, got {factor}")
    return c.model_copy(update={"mu": c.mu * factor, "rho": c.rho * factor})
