#!/usr/bin/env python

try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup

with open('README.md') as f:
    readme = f.read()

with open('pseudotwin/core/_version.py') as f:
    exec(f.read())

setup(name='pseudotwin',
      version=__version__,
      description='Numerical verification of a prime counting theorem along floor(iL(n))',
      long_description=readme,
      long_description_content_type="text/markdown",
      author='The pseudotwin developers',
      packages=['pseudotwin', 'pseudotwin/core', 'pseudotwin/specfun',
                'pseudotwin/arith', 'pseudotwin/expsums', 'pseudotwin/vaughan',
                'pseudotwin/counting', 'pseudotwin/cli'],
      scripts=['bin/pseudotwin.py'],
      install_requires=['numpy', 'scipy', 'mpmath', 'sympy'],
      license='GPLv3',
      classifiers=[
          'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
          'Development Status :: 4 - Beta',
          'Intended Audience :: Science/Research',
          'Programming Language :: Python :: 3',
          'Programming Language :: Python :: 3.9',
          'Topic :: Scientific/Engineering :: Mathematics',
      ]
)
