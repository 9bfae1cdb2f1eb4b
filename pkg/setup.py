#!/usr/bin/env python
from setuptools import find_packages, setup


project = "spinlab"
version = "1.0.0"

setup(
    name=project,
    version=version,
    description="Spin geometry toolkit for connections with parallel skew torsion and split holonomy",
    author="Globality Engineering",
    author_email="engineering@globality.com",
    url="https://github.com/globality-corp/spinlab",
    packages=find_packages(exclude=["*.tests", "*.tests.*", "tests.*", "tests"]),
    include_package_data=True,
    package_data={
        "spinlab": ["schemas/*.json"],
    },
    zip_safe=False,
    python_requires=">=3.10",
    keywords="microcosm",
    install_requires=[
        "jsonschema>=4.0.0",
        "microcosm>=2.12.0",
        "microcosm-logging>=1.5.0",
        "numpy>=1.22.0",
    ],
    setup_requires=[
    ],
    dependency_links=[
    ],
    extras_require={
        "test": [
            "coverage>=3.7.1",
            "hypothesis>=6.0.0",
            "PyHamcrest>=1.8.5",
            "pytest-cov>=3.0.0",
            "pytest>=6.2.5",
        ],
    },
    entry_points={
        "console_scripts": [
            "spinlab = spinlab.main:main",
        ],
        "microcosm.factories": [
            "analysis_pipeline = spinlab.pipeline:AnalysisPipeline",
            "catalog = spinlab.catalog:Catalog",
        ],
    },
)
