"""Codes on the quotient curves y^q + y = x^m over GF(q^2)."""
