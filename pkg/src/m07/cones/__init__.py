from .desc import ConeDesc, primitive
from .dd import dual_description, NotPointedError
from .lp import LPCertificate, InfeasibleCertificate, lp_min, lp_express
from .reduce import orbit_reduce

__all__ = [
    "ConeDesc", "primitive", "dual_description", "NotPointedError",
    "LPCertificate", "InfeasibleCertificate", "lp_min", "lp_express",
    "orbit_reduce",
]
