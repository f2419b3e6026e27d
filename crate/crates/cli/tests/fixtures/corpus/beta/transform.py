def normalize(values):
    lo, hi = min(values), max(values)
    return [(v - lo) / (hi - lo) for v in values]


def clip(values, lower, upper):
    return [min(max(v, lower), upper) for v in values]


def rolling(values, window):
    return [sum(values[i:i + window]) / window for i in range(len(values) - window + 1)]
