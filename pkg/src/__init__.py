# Color Code Thermal Entanglement
