def chunked(seq, size: int):
    """Split seq into lists of at most size items; the last list may be shorter."""
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def flatten(nested):
    """Flatten nested."""
    return [x for sub in nested for x in sub]


def unique(items):
    seen = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out
