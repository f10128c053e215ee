import unittest
import os
import re
from setuptools import Command, setup

HERE = os.path.abspath(os.path.dirname(__file__))
README = os.path.join(HERE, "README.rst")
INIT = os.path.join(HERE, "liftcurv", "__init__.py")

class RunLiftCurvTests(Command):
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        suite = unittest.TestLoader().discover("tests")
        t = unittest.TextTestRunner(verbosity = 2)
        t.run(suite)

with open(README, 'r') as f:
    long_description = f.read()

# liftcurv/__init__.py imports numpy, so the version is read as text
with open(INIT, 'r') as f:
    version = re.search(r'^__version__ = "([^"]+)"', f.read(), re.MULTILINE).group(1)

setup(
    name='liftcurv',
    version=version,
    description=('Curvature and conformal flatness checks for natural lifted metrics on tangent bundles'),
    long_description=long_description,
    license='Apache 2.0',
    packages=['liftcurv'],
    cmdclass={'test': RunLiftCurvTests},
    install_requires=[
        "numpy>=1.21",
        "tomli>=1.1.0; python_version < '3.11'",
    ],
    entry_points={
        "console_scripts": [
            "liftcurv=liftcurv.cli:run",
        ],
    },
    include_package_data=True,
    zip_safe=False,
    python_requires=">=3.8",
    keywords=[
        "differential geometry",
        "riemannian",
        "curvature",
        "weyl tensor",
        "conformal flatness",
        "tangent bundle",
        "finite differences"
    ],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Education",
        "License :: OSI Approved :: Apache Software License",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
)
