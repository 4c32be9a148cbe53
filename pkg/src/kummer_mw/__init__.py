"""Exact arithmetic for the j = 0 elliptic surfaces attached to the Kummer
surface of E_b x E_b' and its base changes t -> t^(3n), down to their
height lattices and Mordell-Weil groups over F_q."""

__version__ = "0.1.0"
