"""Signs of coefficients of powers of the infinite Borwein product."""
