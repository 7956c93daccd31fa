import sys
import os.path

import alabaster

sys.path.append(os.path.abspath('.'))
sys.path.append(os.path.abspath('..'))

import sdcd

extensions = [
    'sphinx.ext.autodoc', 'sphinx.ext.doctest', 'sphinx.ext.viewcode',
    'alabaster'
]

project = 'SDCD'
source_suffix = '.rst'
master_doc = 'index'

version = sdcd.__version__
release = sdcd.__version__
copyright = 'SDCD team'

epub_basename = 'SDCD - {}'.format(version)
epub_author = 'SDCD team'

html_theme_path = [alabaster.get_path()]
html_theme = 'alabaster'

# vim: sw=4:et:ai
