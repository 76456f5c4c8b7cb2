from setuptools import setup

setup(
    name="fairway",
    packages=["fairway"],
    version="0.1",
    description="Explicit-state checking of universal temporal properties of qualitative pathway models under strong fairness, with component projections.",
    keywords=["pathway", "model checking", "ctl", "fairness", "systems biology"],
    classifiers=[],
    package_data={"fairway": ["data/*.pw", "data/*.actl", "data/*.json"]},
    install_requires=[
        "epc",
        "lark",
        "networkx",
        "jsonschema",
    ],
    extras_require={"test": ["pytest"]},
    entry_points={"console_scripts": ["fairway = fairway.__main__:main"]},
)
