"""avc: machine-check structured adequacy rationales and emit review checklists."""

__version__ = "0.1.0"
