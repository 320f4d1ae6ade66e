"""__init__ para ui"""
