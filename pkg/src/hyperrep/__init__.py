"""hyperrep: an executable calculus of represented spaces.

Lazy Baire-space points and continuous-map realizers, ordinal-indexed
spaces of countable-type functionals, and a symbolic engine that
propagates hierarchy complexity bounds through space constructions,
emitting machine-checkable derivation traces.
"""

__version__ = "0.1.0"
