"""src package"""
