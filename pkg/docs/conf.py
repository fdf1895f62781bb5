# Sphinx configuration for the crossvar documentation.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

sys.path.insert(0, os.path.abspath(".."))

from crossvar import __version__  # noqa: E402


# -- Project information -----------------------------------------------------

project = "crossvar"
copyright = "2026, crossvar developers"
author = "crossvar developers"
version = release = __version__


# -- General configuration ---------------------------------------------------

extensions = [
    "insegel",
    "sphinx.ext.autodoc",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
]

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

# docstrings are Google style throughout
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_use_rtype = False

autodoc_member_order = "bysource"
autodoc_typehints = "description"
autodoc_default_options = {
    "members": True,
    "show-inheritance": True,
}


# -- Options for HTML output -------------------------------------------------

html_theme = "insegel"
html_title = f"crossvar {release}"
