"""
Core module for the EOFP toolkit

Contains configuration, the float codec, both quantizers, bit packing and
the model container.
"""
