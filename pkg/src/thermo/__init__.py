# Closed-form finite-temperature entropies
