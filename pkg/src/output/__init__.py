# Sweep table and lattice dump writers
