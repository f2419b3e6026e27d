class Field:
    """A typed column description."""

    def __init__(self, name: str, dtype: type, nullable: bool = True):
        """Initialize the field.

        Args:
            name (str): The name.
            dtype (type): The dtype.
            nullable (bool): Whether nullable.
        """
        self.name = name
        self.dtype = dtype
        self.nullable = nullable

    def validate(self, value) -> bool:
        """True if value may be stored here: None only when nullable, otherwise an instance of dtype."""
        if value is None:
            return self.nullable
        return isinstance(value, self.dtype)
