# bandrec - kernel interpolation of bandlimited functions
__version__ = "0.1.0"
