# Brute-force stabilizer group oracle
