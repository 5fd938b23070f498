"""Power allocation, phase control and the alternating solver."""
