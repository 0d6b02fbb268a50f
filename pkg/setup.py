from setuptools import setup

setup(
    name='MUBEntropy',
    version='0.1',
    packages=['src', 'src.Model', 'src.Model.batchprocessing',
              'src.Controller'],
    py_modules=['main'],
    license='',
    description='Entropic uncertainty bounds for measurements in '
                'mutually unbiased bases: basis construction, entropy and '
                'purity evaluation, closed-form bounds and numerical '
                'tightness checks.',
    entry_points={'console_scripts': ['mubentropy=main:main']},
)
