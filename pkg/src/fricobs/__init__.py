"""Model-free friction observers for flexible joint robots.

Simulation library reproducing the single-link stiction study: a two-mass
flexible joint plant with bristle friction, nominal-signal friction
observers (pid, pd, and a measured-feedback baseline), and numerical
verification of the structural results (Riccati identity, low-pass
equivalence, stuck-state equilibria, stiction passivity, gain-sweep
practical stability).
"""

from . import control, friction, observer, plant, presets, sim

__version__ = "0.1.0"

__all__ = ["control", "friction", "observer", "plant", "presets", "sim", "__version__"]
