# -*- coding: utf-8 -*-
#
# edtsync documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os

# make the package importable for autodoc without installing it
sys.path.insert(0, os.path.abspath(os.path.join('..', '..')))

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.intersphinx',
    'sphinx.ext.todo', 'sphinx.ext.coverage', 'sphinx.ext.doctest']

templates_path = ['_templates']
source_suffix = '.rst'
source_encoding = 'utf-8'
master_doc = 'index'

# General information about the project.
project = u'edtsync'
copyright = u'2026, edtsync developers'

# The short X.Y version.
version = '0.1'
# The full version, including alpha/beta/rc tags.
release = '0.1'

exclude_trees = []

pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'nature'
html_static_path = []
htmlhelp_basename = 'edtsyncdoc'

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('index', 'edtsync.tex', u'edtsync Documentation',
   u'edtsync developers', 'manual'),
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}
