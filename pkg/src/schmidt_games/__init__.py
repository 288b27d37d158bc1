"""Schmidt (alpha,beta)-games on fractal supports and badly approximable linear forms.

Subpackages/modules:

- ``game_engine``       rules, legality and execution of the nested-ball game
- ``supports``          support oracles (full space, interval, Cantor set, CF cylinder sets)
- ``strategies``        implemented player strategies (zero-centered Black, rational
                        avoidance White, gradient-push White, adversarial baselines)
- ``linear_forms``      lattice distances, badness quality by exhaustive enumeration,
                        extended vectors, minor vectors/determinants, stage windows
- ``continued_fractions`` continuants, cylinder intervals, Farey/Stern-Brocot helpers
- ``fractal_ifs``       contracting-similarity systems, attractor cells, dimensions
- ``friendly_measures`` cylinder measures, ball-mass bracketing, doubling/decay checks
- ``cli``               the ``sgame`` command line surface
"""

__version__ = "0.1.0"
