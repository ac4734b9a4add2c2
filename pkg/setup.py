import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name='twigcalc',
    version='0.1.0',
    description='Exact twig calculus and cusp configuration searches for rational cuspidal plane curves',
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='Apache 2.0',
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
        "Framework :: Robot Framework",
        "Framework :: Robot Framework :: Library",
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires='>=3.8',
    packages=setuptools.find_packages(exclude=['tests', 'tests.*']),
    package_data={'twigcalc.resources': ['*.yaml'], },
    include_package_data=True,
    install_requires=['robotframework>=6.1',
                      'anytree>=2.8.0',
                      'pyyaml>=6.0',
                      'click>=8.0',
                      'networkx>=2.6',
                      'sympy>=1.9', ],
    entry_points={
        'console_scripts': ['twigcalc=twigcalc.cli.twigcalc:twigcalc_entry']
    },
)
