# Parameter sweep driver
