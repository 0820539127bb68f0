"""Forced-prefix evaluation of group words on finite binary inputs.

A word acts letter by letter, left to right.  Each letter is a small
transducer: a subscripted letter first matches its subscript (copying
bits, and degenerating to the identity as soon as the input leaves the
subscript's cylinder), then runs the root table of x, y or p_n, where
the y rows recurse into y or y^-1.  Feeding input bit by bit through
the chain gives the output prefix forced by an input prefix; the chain
states are hashable tuples, which the depth-bounded equality search
exploits for memoized pruning instead of enumerating 2^d inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import words

State = Tuple
IDENT: State = ("id",)


@dataclass(frozen=True)
class PrefixResult:
    forced: str
    exhausted: bool


def _root_state(kind: str, sg: int) -> State:
    if kind == "p":
        raise AssertionError("p letters carry an index, not a subscript")
    return (kind, sg, "")


def initial_states(word) -> Tuple[State, ...]:
    """One transducer per unit letter, in application order."""
    states: List[State] = []
    for kind, sub, exp in word.letters:
        sg = 1 if exp > 0 else -1
        for _ in range(abs(exp)):
            if kind == "p":
                states.append(("p", sub, sg, ""))
            elif sub == "":
                states.append(_root_state(kind, sg))
            else:
                states.append(("m", kind, sub, sg, 0))
    return tuple(states)


def _rows(state):
    tag = state[0]
    if tag == "x":
        sg = state[1]
        return tuple((pat, out, IDENT) for pat, out in words.X_ROWS[sg])
    if tag == "y":
        sg = state[1]
        if sg > 0:
            return (("00", "0", ("y", 1, "")),
                    ("01", "10", ("y", -1, "")),
                    ("1", "11", ("y", 1, "")))
        return (("0", "00", ("y", -1, "")),
                ("10", "01", ("y", 1, "")),
                ("11", "1", ("y", -1, "")))
    if tag == "p":
        n, sg = state[1], state[2]
        return tuple((pat, out, IDENT) for pat, out in words.p_rows(n, sg))
    raise AssertionError(f"rowless state {state!r}")


def _feed(state: State, b: str) -> Tuple[State, str]:
    """Push one input bit into a letter; return (new state, emitted bits)."""
    tag = state[0]
    if tag == "id":
        return state, b
    if tag == "m":
        _, kind, sub, sg, i = state
        if b == sub[i]:
            i += 1
            if i == len(sub):
                return _root_state(kind, sg), b
            return ("m", kind, sub, sg, i), b
        return IDENT, b  # input left the subscript cylinder: identity from here on
    buf = state[-1] + b
    for pat, out, nxt in _rows(state):
        if buf == pat:
            return nxt, out
    return state[:-1] + (buf,), ""


def _pending(state: State) -> str:
    """Output forced by a partially matched root buffer (the common
    prefix of the row images still reachable from the buffer)."""
    tag = state[0]
    if tag in ("id", "m"):
        return ""
    buf = state[-1]
    if not buf:
        return ""
    outs = [out for pat, out, _ in _rows(state) if pat.startswith(buf)]
    if not outs:
        raise AssertionError(f"buffer {buf!r} matches no row of {state!r}")
    first = min(outs, key=len)
    k = 0
    while k < len(first) and all(o[k] == first[k] for o in outs):
        k += 1
    return first[:k]


def feed_word(states: Tuple[State, ...], bits: str) -> Tuple[Tuple[State, ...], str]:
    """Feed input bits through the whole chain; return final emission."""
    sts = list(states)
    out = bits
    for j in range(len(sts)):
        chunk, out = out, ""
        for b in chunk:
            sts[j], o = _feed(sts[j], b)
            out += o
    return tuple(sts), out


def forced_tail(states: Tuple[State, ...]) -> str:
    """Extra output already forced by buffered bits, cascaded to the end
    of the chain.  Probes a copy; the argument states are not advanced."""
    if all(_pending(s) == "" for s in states):
        return ""
    sts = list(states)
    n = len(sts)
    tail = ""
    for j in range(n):
        chunk = _pending(sts[j])
        for k in range(j + 1, n):
            nxt = ""
            for b in chunk:
                sts[k], o = _feed(sts[k], b)
                nxt += o
            chunk = nxt
        tail += chunk
    return tail


def act_prefix(word, xi: str) -> PrefixResult:
    """Longest output prefix forced by the input prefix xi."""
    words.check_word(xi)
    states, out = feed_word(initial_states(word), xi)
    forced = out + forced_tail(states)
    exhausted = all(s[0] in ("id", "m") or s[-1] == "" for s in states)
    return PrefixResult(forced, exhausted)


def _incompatible(x: str, y: str) -> bool:
    m = min(len(x), len(y))
    return x[:m] != y[:m]


def equal_at_depth(w1, w2, depth: int) -> Optional[str]:
    """Search all inputs of length <= depth for one forcing incompatible
    output prefixes of w1 and w2.

    Returns such an input (a sound witness that the words are distinct
    homeomorphisms), or None if the words agree so far.  The search
    walks the input tree once, sharing state: a node is pruned when the
    same pair of chain states and the same outstanding output lag have
    already been cleared to at least the remaining depth.
    """
    memo = {}

    def walk(st1, st2, a, b, path, remaining):
        # a/b: output emitted by one word but not yet matched by the other
        if _incompatible(a + forced_tail(st1), b + forced_tail(st2)):
            return path
        if remaining == 0:
            return None
        key = (st1, st2, a, b)
        if memo.get(key, -1) >= remaining:
            return None
        for bit in "01":
            s1, o1 = feed_word(st1, bit)
            s2, o2 = feed_word(st2, bit)
            na, nb = a + o1, b + o2
            m = min(len(na), len(nb))
            if na[:m] != nb[:m]:
                return path + bit
            na, nb = na[m:], nb[m:]
            r = walk(s1, s2, na, nb, path + bit, remaining - 1)
            if r is not None:
                return r
        memo[key] = remaining
        return None

    return walk(initial_states(w1), initial_states(w2), "", "", "", depth)


def fixes_endpoints(word, depth: int = 16) -> bool:
    """True iff the forced images of 0^depth and 1^depth stay on the
    constant sequences."""
    f0 = act_prefix(word, "0" * depth).forced
    f1 = act_prefix(word, "1" * depth).forced
    return set(f0) <= {"0"} and set(f1) <= {"1"}
