from setuptools import find_packages, setup

setup(
    name="witt_supports",
    packages=find_packages(),
    version="0.1.0",
    install_requires=[
        "iniconfig==2.0.0",
        "joblib==1.2.0",
        "mpmath==1.3.0",
        "numpy==1.24.2",
        "packaging==23.1",
        "pandas==2.0.0",
        "pluggy==1.0.0",
        "pytest==7.2.2",
        "python-dateutil==2.8.2",
        "pytz==2023.3",
        "PyYAML==6.0",
        "six==1.16.0",
        "sympy==1.11.1",
        "tqdm==4.65.0",
        "tzdata==2023.3",
    ],
)
