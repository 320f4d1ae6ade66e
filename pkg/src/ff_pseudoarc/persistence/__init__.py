"""__init__ para persistence"""
