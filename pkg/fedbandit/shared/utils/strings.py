def default_class_repr(self):
    """``ClassName(key: value, ...)`` over :meth:`extra_repr_keys`.

    Keys are read with ``getattr`` so properties can be listed too.
    """
    keys = self.extra_repr_keys() if hasattr(self, "extra_repr_keys") else []
    if not keys:
        return self.__class__.__name__
    lines = [f"  ({key}):  {getattr(self, key)}" for key in keys]
    return f"{self.__class__.__name__}(\n" + "\n".join(lines) + "\n)"


class ReprMixin(object):
    """Mixin for enhanced __repr__ and __str__."""

    def __repr__(self):
        return default_class_repr(self)

    __str__ = __repr__

    def extra_repr_keys(self):
        """extra fields to be included in the representation of a class."""
        return []


ANSI_COLORS = {
    "green": "\033[92m",
    "red": "\033[91m",
    "blue": "\033[94m",
    "bold": "\033[1m",
}
ANSI_STOP = "\033[0m"


def color_text(text, color=None, method=None):
    """Wraps ``text`` in ANSI color codes; ``method=None`` returns it as is."""
    if not isinstance(color, str):
        raise TypeError(f"Cannot color text with provided color of type {type(color)}")
    if method is None:
        return text
    if method != "ansi":
        raise ValueError(f"unknown text color method {method}")
    if color not in ANSI_COLORS:
        raise ValueError(f"unknown text color {color}")
    return ANSI_COLORS[color] + text + ANSI_STOP
