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

import os
from setuptools import find_packages, setup
import sys


"""
test: pytest test
python setup.py sdist bdist_wheel
"""

if sys.version_info.major != 3:
    raise NotImplementedError("DUDF is only compatible with Python 3.")

dudf_directory = os.path.abspath(os.path.dirname(__file__))

# Extract version from dudf/__init__.py
with open(os.path.join(dudf_directory, 'dudf', '__init__.py'), 'r') as filehandle:
    for line in filehandle:
        if line.startswith('__version__'):
            version = line[15:-2]

# Extract long_description from README.md introduction
long_description = list()
with open(os.path.join(dudf_directory, 'README.md'), 'r') as filehandle:
    lines = iter(filehandle)
    line = next(lines)
    if not line.startswith('# DUDF:'):
        raise NotImplementedError
    long_description.append(line)
    for line in lines:
        if line == '#### Introduction\n':
            break
    for line in lines:
        if line.startswith('#### '):
            break
        long_description.append(line)
long_description = ''.join(long_description).rstrip() + '\n'

# Find packages
packages = find_packages(exclude=('test',))
assert all(package.startswith('dudf') for package in packages)

# Extract install_requires from requirements.txt
install_requires = list()
with open(os.path.join(dudf_directory, 'requirements.txt'), 'r') as filehandle:
    for line in filehandle:
        line = line.strip()
        if line:
            install_requires.append(line)

setup(
    name='dudf',
    version=version,
    description='DUDF: neural hyperbolically scaled unsigned distance fields',
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=packages,
    py_modules=['run'],
    license='Apache 2.0',
    python_requires='>=3.7',
    classifiers=[
        'Natural Language :: English',
        'Topic :: Scientific/Engineering',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9'
    ],
    install_requires=install_requires,
    extras_require=dict(
        docs=[
            'm2r >= 0.2.1', 'recommonmark >= 0.6.0', 'sphinx >= 3.1.1', 'sphinx-rtd-theme >= 0.5.0'
        ]
    ),
    entry_points=dict(console_scripts=['dudf = run:main']),
    zip_safe=False
)
