# Oracle result caching
