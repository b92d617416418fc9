# Configuration file for the Sphinx documentation builder.

# -- Environment setup ------------------------------------------------------

import sys
import os

sys.path.insert(0, os.path.abspath("../.."))

# -- Project information -----------------------------------------------------

project = 'PyGrowth'
copyright = '2022, Matt Riley'
author = 'Matt Riley'
release = '0.1'

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
]

templates_path = ['_templates']

exclude_patterns = [
    "*/__pycache__/*",
    "tests",
    "docs"
]

python_use_unqualified_type_names = True

# -- Autodoc configuration ---------------------------------------------------

autodoc_default_options = {
    "members":  True,
    "member-order": "bysource"
}

autodoc_type_aliases = {
    "VertexId": "~pygrowth.VertexId",
    "StateId": "~pygrowth.StateId",
    "Word": "~pygrowth.Word",
}

autodoc_typehints_format = "short"

autodoc_preserve_defaults = True

# -- Intersphinx configuration ----------------------------------------------

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "sympy": ("https://docs.sympy.org/latest", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "click": ("https://click.palletsprojects.com/en/stable", None),
}

# -- Options for HTML output -------------------------------------------------

html_use_index = False
html_domain_indices = False

html_theme = "bizstyle"

html_theme_options = {
    "nosidebar": True,
}
