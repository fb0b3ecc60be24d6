"""Single source of the tool version embedded in run manifests.

Keep in sync with pyproject.toml.
"""

__version__ = "0.1.0"
