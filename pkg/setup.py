from setuptools import setup, find_packages

setup(
    name="ellft",
    version="0.1.0",
    author="anycodes",
    author_email="liuyu@xmail.tech",
    description="Exact verification of the elliptic Fourier transform identities for unipotent representations of exceptional p-adic groups.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["test*"]),
    package_data={"ellft": ["data/catalog.json"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    install_requires=[
        "python-dotenv>=0.19.0,<1",
        "typing-extensions>=3.7.4,<5",
        "sympy>=1.12",
        "numpy>=1.19",
    ],
    extras_require={
        "test": ["unittest2>=1.1.0"],
    },
    entry_points={
        "console_scripts": ["ellft=ellft.cli:main"],
    },
    license="MIT",
    keywords="Fourier transform unipotent representations character tables cyclotomic",
    include_package_data=True,
)
