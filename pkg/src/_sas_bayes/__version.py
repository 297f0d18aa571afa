import sas_bayes_core

__version__ = sas_bayes_core.__version__
