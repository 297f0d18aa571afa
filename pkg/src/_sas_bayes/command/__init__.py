from _sas_bayes.command.generate import generate
from _sas_bayes.command.fit import fit
from _sas_bayes.command.report import report, write_report_files
from _sas_bayes.command.presets import list_presets

__all__ = [
    "generate",
    "fit",
    "report",
    "write_report_files",
    "list_presets",
]
