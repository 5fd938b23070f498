# Test package for fdsr-secrecy
