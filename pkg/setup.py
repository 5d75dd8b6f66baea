from setuptools import setup, find_packages
from codecs import open
from os import path

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

setup(
    # Package data:
    name="henonlab",
    description="Least energy solutions of Henon type equations and their concentration",
    long_description=long_description,
    long_description_content_type="text/markdown",
    version="0.3.0",
    python_requires=">=3.8",
    install_requires=[
        "numpy",
        "scipy>=1.12",
    ],
    setup_requires=[
        "pytest-runner",
    ],
    tests_require=[
        "pytest",
    ],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Environment :: Console",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
    ],
    keywords="Henon equation elliptic PDE concentration Rayleigh quotient",
    # Contents:
    packages=find_packages(exclude=["examples", "docs", "tests"]),
    entry_points={
        "console_scripts": [
            "henonlab=henonlab.main:run",
        ],
    },
)
