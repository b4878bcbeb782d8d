"""The fixed catalog of operator words and their symbolic dual."""

from __future__ import annotations

K0 = ("id", "b", "i", "bi", "ib", "bib", "ibi")
F0 = ("0", "f", "if", "fif", "bif", "ff", "fb", "fi", "fbi", "fib")
G0 = ("g", "bg", "fbg")

KF0 = K0 + F0
KFG0 = KF0 + G0


def complement_name(word: str) -> str:
    """Spelling of ``a`` composed on the left of ``word``."""
    if word == "id":
        return "a"
    if word == "a":
        return "id"
    if word == "0":
        return "1"
    if word == "1":
        return "0"
    if word.startswith("a"):
        return word[1:]
    return "a" + word


def _odd(words: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(complement_name(w) for w in words)


K = K0 + _odd(K0)
KF = KF0 + _odd(KF0)
KFG = KFG0 + _odd(KFG0)

CATALOGS: dict[str, tuple[str, ...]] = {
    "K0": K0,
    "KF0": KF0,
    "KFG0": KFG0,
    "K": K,
    "KF": KF,
    "KFG": KFG,
}

# the eighteen words labelling the rows and columns of the composition table
PRODUCT_WORDS = ("b", "i", "bi", "ib", "bib", "ibi", "f", "ff", "fi", "fb", "fbi", "fib", "fif", "bif", "if", "g", "bg", "fbg")

RIGHT_COMPLEMENTED = tuple(w + "a" for w in KFG if w not in ("id", "a"))
RECOGNIZED = frozenset(KFG) | frozenset(RIGHT_COMPLEMENTED)

LETTERS = frozenset("abifg")


def is_even(word: str) -> bool:
    return word in KFG0


def _swap(letters: str) -> str:
    return letters.translate(str.maketrans("bi", "ib"))


def dual_name(word: str) -> str | None:
    """Catalog spelling of ``a o a`` for a KF word, or None outside KF.

    Uses ``aa = id``, ``ba = ai``, ``ia = ab`` and ``fa = f``: the right-hand
    ``a`` travels left, swapping ``b`` and ``i``, until an ``f`` absorbs it.
    Border words have no dual in the catalog (``aga`` is not a catalog word).
    """
    if word not in KF:
        return None
    odd = word not in KF0
    core = complement_name(word) if odd else word
    if core == "id":
        result = "id"
    elif core == "0":
        result = "1"
    elif "f" not in core:
        result = _swap(core)
    else:
        k = core.rindex("f")
        result = "a" + core[: k + 1] + _swap(core[k + 1 :])
    if odd:
        result = complement_name(result)
    return result


def tokens(word: str) -> list[str]:
    """Split a word into primitive tokens, rightmost applied first."""
    if word in ("id", "0", "1"):
        return [word]
    out = []
    if word[:1] in ("0", "1"):
        out.append(word[0])
        word = word[1:]
    for ch in word:
        if ch not in LETTERS:
            raise ValueError(f"bad letter {ch!r} in {word!r}")
        out.append(ch)
    return out
