"""Name-keyed sparse vectors: dicts ``{basis name: coefficient}``."""


def add_into(acc, v, c, p):
    """acc += c*v, dropping zeros."""
    if not c:
        return acc
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if p:
            y %= p
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def lin(terms, p):
    """Sum of c*v over (c, v) pairs."""
    out = {}
    for c, v in terms:
        add_into(out, v, c, p)
    return out


def scale(v, c, p):
    return add_into({}, v, c, p)


def sub(u, v, p):
    return add_into(dict(u), v, -1, p)


def clean(v, p):
    return add_into({}, v, 1, p)


def sign(e):
    return -1 if e % 2 else 1
