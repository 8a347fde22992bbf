# Tests package for smoothphi
