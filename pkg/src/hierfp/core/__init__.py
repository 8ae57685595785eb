"""Core vector arithmetic, shared models and interfaces for hierfp."""
