from .base import SrReportBase, tabulate
from .csv import SrReportCSV
from .hdf5 import SrReportHdf5
from .json import SrReportJSON, aggregate_payload, dumps, loss_payload
from .sweep import SweepReportCSV

__all__ = [
    "SrReportBase",
    "SrReportCSV",
    "SrReportHdf5",
    "SrReportJSON",
    "SweepReportCSV",
    "aggregate_payload",
    "dumps",
    "loss_payload",
    "tabulate",
]
