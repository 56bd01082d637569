"""
Test Suite for the Heisenberg-Noether Engine

Unit tests per module plus integration tests with:
- Exact expected values from hand computation
- Edge cases and error paths
- Seeded randomized properties
- Command line exit codes
"""
