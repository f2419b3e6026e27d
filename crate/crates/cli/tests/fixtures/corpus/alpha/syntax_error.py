def broken(a, b)
    """Missing colon above."""
    return a + b
