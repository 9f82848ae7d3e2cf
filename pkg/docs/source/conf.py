# -*- coding: utf-8 -*-
#
# daglms documentation build configuration file, run by sphinx-build (see ../build_docs.sh).

from pathlib import Path

# Read the version from the code itself
version_file = Path(__file__).absolute().parents[2] / 'daglms' / 'daglms_version.py'
with version_file.open() as fid:
    vers = next(line.split("'")[1] for line in fid.readlines() if '__version__' in line)

# -- Project information --------------------------------------------------

project = u'daglms'
copyright = u'2026, the daglms developers'
author = u'the daglms developers'
version = vers
release = vers

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.napoleon',
    'sphinx.ext.autodoc',
    'sphinx.ext.todo',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.autosectionlabel',  # So we can link directly to the section header names
]

autodoc_default_options = {'member-order': 'bysource'}
autosectionlabel_prefix_document = True

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = []
pygments_style = 'sphinx'
highlight_language = 'python3'
todo_include_todos = True

# Google-style docstrings
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_init_with_doc = True
napoleon_use_admonition_for_notes = False
napoleon_use_ivar = False
napoleon_use_param = False
napoleon_use_rtype = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'daglmsdoc'

# -- Options for LaTeX and manual page output -----------------------------

latex_documents = [(master_doc, 'daglms.tex', u'daglms Documentation', author, 'manual')]
man_pages = [(master_doc, 'daglms', u'daglms Documentation', [author], 1)]
