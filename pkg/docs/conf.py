# Configuration file for the Sphinx documentation builder.
#
# For the full list of options see
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys

sys.path.insert(0, os.path.abspath("../"))

# -- Project information -----------------------------------------------------
project = "fedbandit"
copyright = "2026, fedbandit developers"
author = "fedbandit developers"

# The full version, including alpha/beta/rc tags
release = "0.1.0"

# Set master doc to `index.rst`.
master_doc = "index"


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.viewcode",
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.napoleon",
    "sphinx_rtd_theme",
    "sphinx_copybutton",
    # Enable .md doc files
    "recommonmark",
]
autosummary_generate = True

templates_path = []

exclude_patterns = ["_build"]

autodoc_mock_imports = []

htmlhelp_basename = "fedbandit_doc"

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_theme_options = {
    "collapse_navigation": False,
}

# Don't show module names in front of class names.
add_module_names = True

# Sort members by group
autodoc_member_order = "groupwise"

# -- Options for Sphinx Copy Button-------------------------------------------------

# Exclude the prompt symbol ">>>" when copying text
copybutton_prompt_text = ">>> "

copybutton_line_continuation_character = "\\"
