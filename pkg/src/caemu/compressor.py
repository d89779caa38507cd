"""Deterministic dictionary compressor used by the complexity index.

LZ78-family scheme over bytes with concatenation growth: the dictionary
starts with the 256 single bytes, each emission codes the longest
dictionary phrase matching the input head with ``ceil(log2(phrases))``
bits, and after every emission the concatenation of the two most recent
matches joins the dictionary.  Concatenation makes phrase length grow
like a Fibonacci sequence on constant input, so fully ordered streams
shrink far below one token per byte while incompressible streams still
cost more than 8 bits per byte.

Phrases live in a byte trie so the longest match is found even when its
proper prefixes are not phrases themselves.  Only the output *size*
matters to callers; no bitstream is materialised.
"""

from __future__ import annotations

_PHRASE = 256  # key marking a trie node as a phrase end


def _insert(root: dict, phrase: bytes) -> bool:
    node = root
    for b in phrase:
        node = node.setdefault(b, {})
    if _PHRASE in node:
        return False
    node[_PHRASE] = True
    return True


def compressed_size_bits(data: bytes) -> int:
    """Size in bits of the token stream for ``data``; deterministic."""
    if not data:
        return 0
    root: dict = {}
    for b in range(256):
        root[b] = {_PHRASE: True}
    phrases = 256
    total = 0
    previous = b""
    i = 0
    n = len(data)
    while i < n:
        node = root
        match_len = 0
        depth = 0
        while i + depth < n:
            child = node.get(data[i + depth])
            if child is None:
                break
            node = child
            depth += 1
            if _PHRASE in node:
                match_len = depth
        match = data[i : i + match_len]
        total += max(1, (phrases - 1).bit_length())
        if previous and _insert(root, previous + match):
            phrases += 1
        previous = match
        i += match_len
    return total
