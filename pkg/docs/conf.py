# Copyright 2024 The DUDF Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================


# Sphinx configuration, built from the docs directory
import os
import sys

sys.path.insert(0, os.path.abspath('..'))

from m2r import M2R

import dudf


extensions = ['recommonmark', 'sphinx.ext.autodoc', 'sphinx.ext.napoleon']
source_suffix = ['.rst', '.md']
master_doc = 'index'
exclude_patterns = ['_build']

project = 'DUDF'
copyright = '2024, The DUDF Authors'
author = 'The DUDF Authors'
version = dudf.__version__
release = dudf.__version__

html_theme = 'sphinx_rtd_theme'

m2r = M2R()


def process_docstring(app, what, name, obj, options, lines):
    """Docstrings carry markdown and inline HTML, converted to reStructuredText."""
    rest = m2r('\n'.join(lines)).replace('\r\n', '\n')
    del lines[:]
    lines.extend(rest.split('\n'))


def setup(app):
    app.connect('autodoc-process-docstring', process_docstring)
