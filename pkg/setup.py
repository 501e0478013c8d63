#!/usr/bin/env python3
"""
garside-germs - Setup Script
Backward compatibility setup.py for older Python environments
"""

from setuptools import setup, find_namespace_packages
from pathlib import Path
import re

# Read version from __version__.py without importing (avoids import issues in build environment)
def get_version():
    version_file = Path(__file__).parent / "src" / "__version__.py"
    with open(version_file, 'r', encoding='utf-8') as f:
        content = f.read()
        version_match = re.search(r'^__version__\s*=\s*[\'"]([^\'"]*)[\'"]', content, re.MULTILINE)
        if version_match:
            return version_match.group(1)
        raise RuntimeError('Unable to find version string in __version__.py')

__version__ = get_version()
__title__ = "garside-germs"
__description__ = "Garside categories from finite germs: axioms, normal forms, lattices"
__author__ = "garside-germs contributors"
__license__ = "MIT"

readme_path = Path(__file__).parent / "README.md"
if readme_path.exists():
    long_description = readme_path.read_text(encoding="utf-8")
else:
    long_description = __description__

# Requirement lines carry an inline comment each
requirements_path = Path(__file__).parent / "requirements.txt"
requirements = []
if requirements_path.exists():
    with open(requirements_path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith("#") and ">=" in line:
                requirements.append(line.split("#")[0].strip())

setup(
    name="garside-germs",
    version=__version__,
    author=__author__,
    description=__description__,
    long_description=long_description,
    long_description_content_type="text/markdown",

    packages=find_namespace_packages(include=["src", "src.*"]),
    py_modules=["garside_runner"],
    package_data={
        "": ["*.md", "*.yaml"],
    },
    include_package_data=True,

    install_requires=requirements,
    extras_require={
        "dev": ["pytest>=7.4.0", "pytest-cov>=4.1.0", "hypothesis>=6.80.0"],
    },

    python_requires=">=3.9",

    entry_points={
        "console_scripts": [
            "garside=garside_runner:main",
        ],
    },

    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
        "License :: OSI Approved :: MIT License",
    ],

    keywords="garside germ braid artin coxeter normal-form category",
)
