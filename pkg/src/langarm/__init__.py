"""langarm: natural-language end-effector control patterns with a deterministic
desk simulator, safety verbalization, scene rendering, and an evaluation harness.
"""

__version__ = "0.1.0"
