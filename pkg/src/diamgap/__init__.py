"""Diameter hardness gadgets, certifying gap-Diameter algorithms and additive hopsets."""
