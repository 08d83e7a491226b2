try:
    from setuptools import setup, find_packages
except ImportError:
    from distutils.core import setup
from codecs import open
import sys

if sys.version_info[:3] < (3, 10, 0):
    sys.stdout.write("Requires Python 3.10 to run.")
    sys.exit(1)

with open("README.md", encoding="utf-8") as file:
    readme = file.read()

setup(
    name="qubitradiometer",
    version="0.1.0",
    description="Microwave radiometry with a dephasing superconducting qubit",
    long_description=readme,
    long_description_content_type="text/markdown",
    keywords="radiometer qubit dephasing circuit-qed thermometry microwave calibration",
    include_package_data=True,
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    entry_points={
        "console_scripts": ["qubitradiometer = qubitradiometer.qubitradiometer:main"]
    },
    install_requires=[
        "numpy",
        "pandas",
        "pydantic>=2",
        "pyyaml",
        "scipy",
        "tqdm",
        "typing-extensions",
    ],
    extras_require={"test": ["pytest"]},
    python_requires=">=3.10",
    license="MIT",
)
