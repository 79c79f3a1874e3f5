from setuptools import find_packages, setup

with open("README.md", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="owenset",
    version="0.1.0",
    author="Owenset Team",
    author_email="team@owenset.example.com",
    description="Leximin and leximax Owen imputations of flow, branching and matching games",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/yourusername/owenset",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"owenset": ["fixtures/*.json"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.12",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.12",
    install_requires=[
        "pydantic>=2.3.0",
        "pydantic-settings>=2.0.3",
        "python-dotenv>=1.0.0",
        "networkx>=3.1",
    ],
    extras_require={
        "dev": [
            "pytest>=7.3.1",
            "pytest-cov>=4.1.0",
            "black>=23.7.0",
            "ruff>=0.0.280",
            "mypy>=1.5.1",
            "pre-commit>=3.3.3",
        ],
    },
    entry_points={
        "console_scripts": [
            "owenset=owenset.scripts.cli:main",
        ],
    },
)
