#!/usr/bin/env python
#
# MODELFORGE documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

# The package is documented from the src/ layout without installing it.
import os
import sys
sys.path.insert(0, os.path.abspath('../../src/'))

import sphinx_rtd_theme

import modelforge

# -- General configuration ---------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.intersphinx',
    'sphinx.ext.todo',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'sphinx.ext.autosectionlabel',
    'sphinx_rtd_theme',
]

source_suffix = '.rst'

# The master toctree document.
master_doc = 'index'

# General information about the project.
project = 'modelforge'
copyright = "2026, MODELFORGE developers"
author = "MODELFORGE developers"

# The short X.Y version.
version = modelforge.__version__
# The full version, including alpha/beta/rc tags.
release = modelforge.__version__

language = 'en'

exclude_patterns = ['build', 'Thumbs.db', '.DS_Store']

pygments_style = 'sphinx'

todo_include_todos = False

autosectionlabel_prefix_document = True


# -- Options for HTML output -------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_options = {
}

html_static_path = []


# -- Options for HTMLHelp output ---------------------------------------

htmlhelp_basename = 'modelforgedoc'


# -- Options for LaTeX output ------------------------------------------

latex_elements = {
}

latex_documents = [
    (master_doc, 'modelforge.tex',
     'MODELFORGE Documentation',
     author, 'manual'),
]


# -- Options for manual page output ------------------------------------

man_pages = [
    (master_doc, 'modelforge',
     'MODELFORGE Documentation',
     [author], 1)
]


intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
    'h5py': ('https://docs.h5py.org/en/stable', None),
    'lark': ('https://lark-parser.readthedocs.io/en/stable', None),
}
