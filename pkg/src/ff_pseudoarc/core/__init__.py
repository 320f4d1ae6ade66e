"""__init__ para core"""
