from .descent import DescentConfig, DescentResult, descend
from .sweep import SweepPoint, SweepResult, sweep

__all__ = ["DescentConfig", "DescentResult", "SweepPoint", "SweepResult", "descend", "sweep"]
