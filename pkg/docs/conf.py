#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# sas-bayes documentation build configuration file.

import os
import sys

sys.path.insert(0, os.path.abspath("../src"))

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "sphinx_autodoc_typehints",
    "sphinx_rtd_theme",
    "sphinxarg.ext",
]

source_suffix = ".rst"
master_doc = "index"

project = "sas-bayes"
copyright = "2026, sas-bayes developers"
author = "sas-bayes developers"

version = "1.0"
release = "1.0.0"

language = "en"
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"

html_theme = "sphinx_rtd_theme"
htmlhelp_basename = "sas-bayesdoc"
