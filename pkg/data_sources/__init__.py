"""
Inputs for the interpolation engine
Kadec node sequences and bandlimited test functions
"""
