import re


def remove_comments(text: str, comment_style: str = "#") -> str:
    # Remove single-line comments, keeping line and column positions of the rest
    return re.sub(rf"{re.escape(comment_style)}.*", "", text)


def until_closing_bracket(s: str, opening: str = "[", closing: str = "]") -> tuple[str, str]:
    """
    Split ``s``, which must start with ``opening``, after its matching ``closing`` bracket.
    Returns the bracket contents (without the brackets) and the remaining string.
    """
    if not s.startswith(opening):
        raise ValueError(f"The string must start with '{opening}'")
    depth = 0
    for index, char in enumerate(s):
        if char == opening:
            depth += 1
        elif char == closing:
            depth -= 1
            if depth == 0:
                return s[1:index], s[index + 1 :]
    raise ValueError("No closing bracket found in the string `%s`" % s)


def split_top_level(s: str, sep: str = ",", nesting: str = "{}") -> list[str]:
    """Split at ``sep`` characters that are not inside ``nesting`` brackets."""
    parts, depth, current = [], 0, []
    for char in s:
        if char == nesting[0]:
            depth += 1
        elif char == nesting[1]:
            depth -= 1
        if char == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(char)
    parts.append("".join(current))
    return [p.strip() for p in parts]


def line_and_column(text: str, offset: int) -> tuple[int, int]:
    """1-based line and column of ``offset`` in ``text``."""
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column
