from _sas_bayes.__version import __version__  # noqa: F401

__author__ = "sas-bayes developers"
_external_package_name = "sas-bayes"
_internal_package_name = __package__
