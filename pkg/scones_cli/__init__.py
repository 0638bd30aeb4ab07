"""Command-line interface: subcommands, run manifests and report writers."""

__version__ = "0.1.0"
