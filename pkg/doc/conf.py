# -*- coding: utf-8 -*-
#
# thirring_automaton documentation build configuration file.

import sys
import os
import re

import sphinx_rtd_theme

sys.path.insert(0, os.path.abspath("../"))

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'numpydoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.imgmath',
]

numpydoc_show_class_members = False

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'thirring_automaton'
copyright = u'2026, thirring_automaton developers'

with open(os.path.join('..', 'thirring_automaton', '_version.py')) as f:
    release = re.search(r'__version__ = "(.+)"', f.read()).group(1)
version = '.'.join(release.split('.')[:2])

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
html_static_path = ['_static']
htmlhelp_basename = 'thirring_automatondoc'

latex_documents = [
  ('index', 'thirring_automaton.tex', u'thirring_automaton Documentation',
   u'thirring_automaton developers', 'manual'),
]

man_pages = [
    ('index', 'thirring_automaton', u'thirring_automaton Documentation',
     [u'thirring_automaton developers'], 1)
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
}
