from cathaul.models.report import AxiomReport, CCReport, CheckEntry, CheckReport, Report, ValidationReport
from cathaul.models.run_config import RunConfig

__all__ = ['CheckEntry', 'CheckReport', 'ValidationReport', 'CCReport', 'AxiomReport', 'Report', 'RunConfig']
