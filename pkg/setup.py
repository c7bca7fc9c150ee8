# Copyright 2024 The planar-greenosher developers
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

import shutil
import os
from setuptools import setup, find_packages  # type: ignore

metadata: dict = {}
with open("_metadata.py") as fp:
    exec(fp.read(), metadata)
shutil.copy(
    "_metadata.py",
    os.path.join("greenosher", "_metadata.py"),
)


setup(
    name="planar-greenosher",
    version=metadata["__extension_version__"],
    author="planar-greenosher developers",
    python_requires=">=3.10",
    description=(
        "Numerical verification of the extended Green-Osher inequality for "
        "smooth planar strictly convex bodies at a dilation position"
    ),
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    license="Apache 2",
    packages=find_packages(include=["greenosher", "greenosher.*"]),
    include_package_data=True,
    install_requires=[
        "pytket >= 1.33.0",
        "numpy >= 1.24",
        "scipy >= 1.10",
    ],
    entry_points={
        "console_scripts": ["greenosher = greenosher.cli:main"],
    },
    classifiers=[
        "Environment :: Console",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: MacOS :: MacOS X",
        "Operating System :: POSIX :: Linux",
        "Operating System :: Microsoft :: Windows",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    zip_safe=False,
)
