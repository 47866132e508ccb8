# Lattice construction, bipartitions and region specs
