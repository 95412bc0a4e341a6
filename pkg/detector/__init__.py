"""
flowsentry detector application: flow-based IoT intrusion-detection workbench.
"""
