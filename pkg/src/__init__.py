"""Source code root for fdsr-secrecy."""
