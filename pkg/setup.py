# Copyright 2026 The wgsq-lib Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


from setuptools import find_packages, setup

setup(
    name="wgsq-lib",
    classifiers=[
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    description="Design and analysis of waveguide squeezed-light sources",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    use_scm_version=True,
    setup_requires=["setuptools_scm"],
    install_requires=[
        "numpy",
        "scipy",
        "pydantic>=2",
        "jmespath",
        "tenacity",
    ],
    packages=find_packages(include=["wgsq*"]),
    package_data={"wgsq.materials": ["data/*.json"]},
    entry_points={"console_scripts": ["wgsq=wgsq.cli:main"]},
    license="Apache 2.0",
    keywords="squeezed light waveguide quasi-phase-matching homodyne",
)
