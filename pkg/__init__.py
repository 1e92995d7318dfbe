# RIS-EM - RIS channel simulation and Nakagami-m mixture fitting
__version__ = "0.1.0"
