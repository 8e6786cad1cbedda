"""omit CLI — figure sweeps and feasibility reports for OMIT spin readout."""

__version__ = '0.1.0'
