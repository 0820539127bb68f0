"""Group words over the Lodha-Moore generating families.

A GroupWord is a tagged sequence of signed letters x_s, y_s, p_n.  The
tag names the ambient group and constrains the letters:

    F     x letters only
    T     x and p letters
    G     y subscripts avoid the runs 0^n and 1^n (n >= 0)
    Gy    y subscripts avoid 0^n
    yG    y subscripts avoid 1^n
    yGy   any y subscripts
    Shat  any letters (the group generated by yGy together with T)

Besides word plumbing this module provides the characters chi0, chi1,
psi0, psi1, psi and the abelianization character psihat of Shat,
special forms, exact tree-pair arithmetic for T (prefix maps), a
rewriting engine that converts any word to a standard form
f . y_{s1}^{e1} ... y_{sn}^{en} with f a T-word and the subscripts
strictly increasing in the tree order, and the word-problem /
F-membership / coset machinery built on all of that.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import action
from .words import (
    check_word,
    consecutive,
    independent,
    is_one_run,
    is_zero_run,
    partial_action,
    text_to_word,
    tree_order_less,
    word_to_text,
)

Letter = Tuple[str, object, int]  # (kind, subscript-or-index, exponent)

TAGS = ("F", "T", "G", "Gy", "yG", "yGy", "Shat")

DEFAULT_DEPTH = 16


class TagViolation(ValueError):
    pass


class CharacterUndefined(ValueError):
    pass


class RewriteBudgetExceeded(RuntimeError):
    def __init__(self, partial, message):
        super().__init__(message)
        self.partial = partial


def y_subscript_allowed(tag: str, s: str) -> bool:
    if tag in ("yGy", "Shat"):
        return True
    if tag == "G":
        return not (is_zero_run(s) or is_one_run(s))
    if tag == "Gy":
        return not is_zero_run(s)
    if tag == "yG":
        return not is_one_run(s)
    return False


def _validate_letter(letter, tag: str) -> Letter:
    kind, sub, exp = letter
    if not isinstance(exp, int) or exp == 0:
        raise TagViolation(f"exponent must be a nonzero integer, got {exp!r}")
    if kind == "p":
        if tag not in ("T", "Shat"):
            raise TagViolation(f"p letters are not allowed under tag {tag}")
        if not isinstance(sub, int) or sub < 0:
            raise TagViolation(f"p index must be a natural number, got {sub!r}")
    elif kind == "x":
        check_word(sub)
    elif kind == "y":
        if tag in ("F", "T"):
            raise TagViolation(f"y letters are not allowed under tag {tag}")
        check_word(sub)
        if not y_subscript_allowed(tag, sub):
            raise TagViolation(f"subscript {word_to_text(sub)!r} violates tag {tag}")
    else:
        raise TagViolation(f"unknown letter kind {kind!r}")
    return (kind, sub, exp)


@dataclass(frozen=True)
class GroupWord:
    letters: Tuple[Letter, ...]
    tag: str = "Shat"

    def __post_init__(self):
        if self.tag not in TAGS:
            raise TagViolation(f"unknown tag {self.tag!r}")
        object.__setattr__(
            self, "letters", tuple(_validate_letter(l, self.tag) for l in self.letters)
        )

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if self.tag != other.tag:
            raise TagViolation(f"tag mismatch: {self.tag} vs {other.tag}")
        return GroupWord(self.letters + other.letters, self.tag)

    def inverse(self) -> "GroupWord":
        return GroupWord(
            tuple((k, s, -e) for k, s, e in reversed(self.letters)), self.tag
        )

    def __pow__(self, n: int) -> "GroupWord":
        if n == 0:
            return GroupWord((), self.tag)
        base = self if n > 0 else self.inverse()
        return GroupWord(base.letters * abs(n), self.tag)

    def retag(self, tag: str) -> "GroupWord":
        return GroupWord(self.letters, tag)

    def unit_letters(self) -> List[Letter]:
        units: List[Letter] = []
        for k, s, e in self.letters:
            sg = 1 if e > 0 else -1
            units.extend([(k, s, sg)] * abs(e))
        return units

    def to_string(self) -> str:
        if not self.letters:
            return "e"
        parts = []
        for k, s, e in self.letters:
            body = f"p{s}" if k == "p" else f"{k}[{word_to_text(s)}]"
            parts.append(body if e == 1 else f"{body}^{e}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_string()


def word(text: str, tag: str = "Shat") -> GroupWord:
    """Parse the word grammar: letters x[w], y[w], p<k> with optional
    ^<int>, w a binary string or "e", whitespace separated."""
    letters: List[Letter] = []
    pat = re.compile(r"^(?:([xy])\[([01]+|e)\]|p(\d+))(?:\^(-?\d+))?$")
    for tok in text.split():
        if tok == "e":
            continue
        m = pat.match(tok)
        if not m:
            raise ValueError(f"cannot parse letter {tok!r}")
        kind, sub, pidx, exp = m.groups()
        e = int(exp) if exp else 1
        if e == 0:
            raise ValueError(f"zero exponent in {tok!r}")
        if pidx is not None:
            letters.append(("p", int(pidx), e))
        else:
            letters.append((kind, text_to_word(sub), e))
    return GroupWord(tuple(letters), tag)


def infer_tag(text_or_letters) -> str:
    """Smallest tag admitting the letters (used by the CLI)."""
    if isinstance(text_or_letters, str):
        letters = word(text_or_letters, "Shat").letters
    else:
        letters = text_or_letters
    has_p = any(k == "p" for k, _, _ in letters)
    ysubs = [s for k, s, _ in letters if k == "y"]
    if has_p:
        return "Shat" if ysubs else "T"
    if not ysubs:
        return "F"
    zero = any(is_zero_run(s) for s in ysubs)
    one = any(is_one_run(s) for s in ysubs)
    if zero and one:
        return "yGy"
    if zero:
        return "yG"
    if one:
        return "Gy"
    return "G"


def x_letter(sub: str, exp: int = 1, tag: str = "Shat") -> GroupWord:
    return GroupWord((("x", sub, exp),), tag)


def y_letter(sub: str, exp: int = 1, tag: str = "Shat") -> GroupWord:
    return GroupWord((("y", sub, exp),), tag)


def p_letter(n: int, exp: int = 1, tag: str = "Shat") -> GroupWord:
    return GroupWord((("p", n, exp),), tag)


def identity(tag: str = "Shat") -> GroupWord:
    return GroupWord((), tag)


# --------------------------------------------------------------------------
# Characters


CHARACTERS = ("chi0", "chi1", "psi0", "psi1", "psi", "psihat")

AVAILABLE_CHARACTERS: Dict[str, frozenset] = {
    "F": frozenset({"chi0", "chi1"}),
    "T": frozenset(),
    "G": frozenset({"chi0", "chi1", "psi"}),
    "Gy": frozenset({"chi0", "psi1", "psi"}),
    "yG": frozenset({"psi0", "chi1", "psi"}),
    "yGy": frozenset({"psi0", "psi1", "psi"}),
    "Shat": frozenset({"psihat"}),
}


def _char_letter(name: str, kind: str, sub) -> int:
    if kind == "x":
        if name == "chi0" and is_zero_run(sub):
            return -1
        if name == "chi1" and is_one_run(sub):
            return 1
        return 0
    if kind == "y":
        if name in ("psi", "psihat"):
            return 1
        if name == "psi0":
            return 1 if is_zero_run(sub) else 0
        if name == "psi1":
            return 1 if is_one_run(sub) else 0
        return 0
    return 0  # p letters vanish under every character


def char_value(name: str, w: GroupWord) -> int:
    """Value of the named character, summed over letters weighted by
    exponent.  Defined only where the character is a nontrivial
    homomorphism of the tagged group."""
    if name not in CHARACTERS:
        raise CharacterUndefined(f"unknown character {name!r}")
    if name not in AVAILABLE_CHARACTERS[w.tag]:
        raise CharacterUndefined(f"character {name} is not defined on tag {w.tag}")
    return sum(e * _char_letter(name, k, s) for k, s, e in w.letters)


def psi_like_value(w: GroupWord) -> int:
    """The exponent sum over y letters (psi on the Lodha-Moore groups,
    psihat on Shat); used as the Morse height."""
    return sum(e for k, _, e in w.letters if k == "y")


# --------------------------------------------------------------------------
# Special forms


@dataclass(frozen=True)
class SpecialForm:
    entries: Tuple[Tuple[str, int], ...]  # (subscript, sign), signs alternating

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a special form is nonempty")
        for (s, e1), (t, e2) in zip(self.entries, self.entries[1:]):
            if e2 != -e1:
                raise ValueError("signs must alternate")
            if consecutive(s, t) is None:
                raise ValueError(f"subscripts {s!r}, {t!r} are not consecutive")

    def subscripts(self) -> Tuple[str, ...]:
        return tuple(s for s, _ in self.entries)

    def word(self, tag: str = "G") -> GroupWord:
        return GroupWord(tuple(("y", s, e) for s, e in self.entries), tag)

    def inverse_entries(self) -> Tuple[Tuple[str, int], ...]:
        return tuple((s, -e) for s, e in self.entries)

    def to_string(self) -> str:
        return self.word("yGy").to_string()


def special_form(text: str) -> SpecialForm:
    sf = is_special_form(word(text, "yGy"))
    if sf is None:
        raise ValueError(f"{text!r} is not a special form")
    return sf


def is_special_form(w: GroupWord) -> Optional[SpecialForm]:
    """The validated special form if the word literally matches the
    pattern y_{s1}^{e1}...y_{sk}^{ek} with consecutive subscripts and
    alternating unit signs, else None."""
    units: List[Tuple[str, int]] = []
    for k, s, e in w.letters:
        if k != "y":
            return None
        sg = 1 if e > 0 else -1
        units.extend([(s, sg)] * abs(e))
    if not units:
        return None
    for (s, e1), (t, e2) in zip(units, units[1:]):
        if e2 != -e1 or consecutive(s, t) is None:
            return None
    subs = [s for s, _ in units]
    # consecutive chains are automatically independent; keep the cheap check
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            if not independent(subs[i], subs[j]):
                raise AssertionError("consecutive chain with dependent subscripts")
    return SpecialForm(tuple(units))


def independent_forms(forms) -> bool:
    """True iff subscripts across distinct forms are pairwise independent."""
    forms = list(forms)
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            for s in forms[i].subscripts():
                for t in forms[j].subscripts():
                    if not independent(s, t):
                        return False
    return True


# --------------------------------------------------------------------------
# Tree pairs: exact prefix-map arithmetic for T


PrefixMap = Tuple[Tuple[str, str], ...]

IDENTITY_PM: PrefixMap = (("", ""),)


def pm_reduce(m: PrefixMap) -> PrefixMap:
    d = dict(m)
    again = True
    while again:
        again = False
        for a in list(d):
            if a.endswith("0"):
                a1 = a[:-1] + "1"
                if a in d and a1 in d:
                    b0, b1 = d[a], d[a1]
                    if b0.endswith("0") and b1 == b0[:-1] + "1":
                        del d[a], d[a1]
                        d[a[:-1]] = b0[:-1]
                        again = True
                        break
    return tuple(sorted(d.items()))


def pm_compose(m1: PrefixMap, m2: PrefixMap) -> PrefixMap:
    """Apply m1 then m2."""
    out = []
    for a, b in m1:
        for c, d in m2:
            if b.startswith(c):
                out.append((a, d + b[len(c):]))
            elif c.startswith(b) and c != b:
                out.append((a + c[len(b):], d))
    return pm_reduce(tuple(sorted(out)))


def pm_invert(m: PrefixMap) -> PrefixMap:
    return tuple(sorted((b, a) for a, b in m))


def pm_x(sub: str, sign: int) -> PrefixMap:
    pairs = [(sub[:i] + ("1" if sub[i] == "0" else "0"),) * 2 for i in range(len(sub))]
    core = [(sub + "00", sub + "0"), (sub + "01", sub + "10"), (sub + "1", sub + "11")]
    if sign < 0:
        core = [(b, a) for a, b in core]
    return tuple(sorted(pairs + core))


def pm_p(n: int, sign: int) -> PrefixMap:
    leaves = ["1" * k + "0" for k in range(n + 1)] + ["1" * (n + 1)]
    rot = leaves[1:] + leaves[:1]
    pairs = list(zip(leaves, rot))
    if sign < 0:
        pairs = [(b, a) for a, b in pairs]
    return tuple(sorted(pairs))


def pm_of_word(w: GroupWord) -> PrefixMap:
    pm = IDENTITY_PM
    for kind, sub, sg in w.unit_letters():
        if kind == "x":
            step = pm_x(sub, sg)
        elif kind == "p":
            step = pm_p(sub, sg)
        else:
            raise TagViolation("tree pairs exist only for x/p words")
        pm = pm_compose(pm, step)
    return pm


def pm_is_identity(m: PrefixMap) -> bool:
    return pm_reduce(m) == IDENTITY_PM


def pm_order_preserving(m: PrefixMap) -> bool:
    """True iff the leaf map preserves the linear (lexicographic) order,
    i.e. the element lies in F."""
    imgs = [b for _, b in sorted(m)]
    return imgs == sorted(imgs)


def pm_apply(m: PrefixMap, s: str) -> Optional[str]:
    for a, b in m:
        if s.startswith(a):
            return b + s[len(a):]
    return None


def decide_T_identity(w: GroupWord) -> bool:
    """Exact word problem for T via reduced tree pairs."""
    if any(k == "y" for k, _, _ in w.letters):
        raise TagViolation("decide_T_identity expects an x/p word")
    return pm_is_identity(pm_of_word(w))


def comb_leaves(k: int) -> List[str]:
    """The k-leaf right comb: 0, 10, 110, ..., 1^(k-2)0, 1^(k-1)."""
    if k < 1:
        raise ValueError("a code has at least one leaf")
    if k == 1:
        return [""]
    return ["1" * i + "0" for i in range(k - 1)] + ["1" * (k - 1)]


def _embed_x_letters(letters: List[Letter], prefix: str) -> List[Letter]:
    return [("x", prefix + s, e) for _, s, e in letters]


def pm_to_word_F(pm: PrefixMap, _budget: int = 10_000) -> List[Letter]:
    """Letters of an x-word realizing an order-preserving prefix map.

    The root letter x shifts leaves across the top split, so emitting
    x^{+-1} rebalances the split until both sides agree, after which the
    two subtrees convert independently (x_u acts inside the cylinder at
    u exactly as x acts globally)."""
    pm = pm_reduce(pm)
    if pm == IDENTITY_PM:
        return []
    if not pm_order_preserving(pm):
        raise ValueError("not an order-preserving prefix map")
    letters: List[Letter] = []
    for _ in range(_budget):
        if pm == IDENTITY_PM:
            return letters
        pairs = sorted(pm)
        a = sum(1 for d, _ in pairs if d.startswith("0"))
        c = sum(1 for _, r in pairs if r.startswith("0"))
        if a == c:
            break
        if a > c:
            letters.append(("x", "", 1))
            pm = pm_compose(pm_x("", -1), pm)
        else:
            letters.append(("x", "", -1))
            pm = pm_compose(pm_x("", 1), pm)
    else:
        raise AssertionError("root rebalancing did not converge")
    pairs = sorted(pm)
    a = sum(1 for d, _ in pairs if d.startswith("0"))
    left = tuple(sorted((d[1:], r[1:]) for d, r in pairs[:a]))
    right = tuple(sorted((d[1:], r[1:]) for d, r in pairs[a:]))
    letters += _embed_x_letters(pm_to_word_F(left), "0")
    letters += _embed_x_letters(pm_to_word_F(right), "1")
    return letters


def pm_to_word_T(pm: PrefixMap) -> GroupWord:
    """A T-word realizing a cyclic-order-preserving prefix map: comb the
    domain and range, rotate by the leaf shift with the comb rotation
    p_{k-2}, and validate against the input map."""
    pm = pm_reduce(pm)
    if pm == IDENTITY_PM:
        return identity("T")
    pairs = sorted(pm)
    doms = [d for d, _ in pairs]
    rngs = sorted(r for _, r in pairs)
    k = len(pairs)
    img = dict(pairs)
    r = rngs.index(img[doms[0]])
    for j, d in enumerate(doms):
        if img[d] != rngs[(j + r) % k]:
            raise ValueError("prefix map does not preserve the cyclic order")
    comb = comb_leaves(k)
    letters: List[Letter] = []
    letters += pm_to_word_F(tuple(sorted(zip(doms, comb))))
    if r:
        letters.append(("p", k - 2, r))
    v_letters = pm_to_word_F(tuple(sorted(zip(rngs, comb))))
    letters += [(kk, ss, -ee) for kk, ss, ee in reversed(v_letters)]
    out = GroupWord(_merge_letters(letters), "T")
    if pm_of_word(out) != pm:
        raise AssertionError("tree-pair conversion produced a different map")
    return out


# --------------------------------------------------------------------------
# Standard forms and the rewriting engine


@dataclass(frozen=True)
class StandardForm:
    head: GroupWord  # x/p letters only
    tail: Tuple[Tuple[str, int], ...]  # (subscript, exponent), strictly increasing
    tag: str

    def word(self) -> GroupWord:
        tail = GroupWord(tuple(("y", s, e) for s, e in self.tail), self.tag)
        return GroupWord(self.head.letters, self.tag) * tail


def _expand_y(sub: str, sg: int) -> List[Letter]:
    # y_s = x_s y_{s0} y_{s10}^-1 y_{s11}
    if sg > 0:
        return [("x", sub, 1), ("y", sub + "0", 1),
                ("y", sub + "10", -1), ("y", sub + "11", 1)]
    return [("y", sub + "11", -1), ("y", sub + "10", 1),
            ("y", sub + "0", -1), ("x", sub, -1)]


def _commutes(s: str, t: str) -> bool:
    return s == t or independent(s, t)


def _find_quad(L: List[Letter], start: int) -> Optional[Tuple[int, int, int, int, str]]:
    """Locate letters y_{u0} y_{u10}^-1 y_{u11} y_u^-1 (in that order,
    possibly separated by letters that commute across them); their
    product is x_u^-1."""
    for q in range(start, len(L)):
        kq, u, eq = L[q]
        if kq != "y" or eq != -1:
            continue
        want = [(u + "0", 1), (u + "10", -1), (u + "11", 1)]
        pos = []
        lo = start
        ok = True
        for sub, sg in want:
            found = None
            for i in range(lo, q):
                if L[i] == ("y", sub, sg):
                    found = i
                    break
            if found is None:
                ok = False
                break
            pos.append(found)
            lo = found + 1
        if not ok:
            continue
        chosen = {pos[0]: want[0][0], pos[1]: want[1][0], pos[2]: want[2][0], q: u}
        feasible = True
        for p in range(pos[0] + 1, q):
            if p in chosen:
                continue
            v = L[p][1]
            for pi, ci in chosen.items():
                if pi < p and not _commutes(ci, v):
                    feasible = False
                    break
            if not feasible:
                break
        if feasible:
            return pos[0], pos[1], pos[2], q, u
    return None


def rewrite_standard_form(
    w: GroupWord,
    *,
    max_steps: int = 100_000,
    max_subscript: int = 12,
    validate: bool = True,
    depth: int = DEFAULT_DEPTH,
) -> StandardForm:
    """Convert w into a standard form representing the same element.

    Strategy: push x/p letters leftward through y letters by the
    transport relations, expanding y_s = x_s y_{s0} y_{s10}^-1 y_{s11}
    whenever the needed partial action is undefined; then sort the y
    tail by the tree order using commutation of independent letters,
    expanding nested out-of-order pairs, and contracting the quadruple
    y_{u0} y_{u10}^-1 y_{u11} y_u^-1 back to x_u^-1.  Budgets guard
    termination; the result is checked against the action oracle.
    """
    L = w.unit_letters()
    steps = 0

    def bump():
        nonlocal steps
        steps += 1
        if steps > max_steps:
            raise RewriteBudgetExceeded(_word_of(L, w.tag), "rewriting step budget exceeded")

    def guard(sub):
        if len(sub) + 2 > max_subscript:
            raise RewriteBudgetExceeded(
                _word_of(L, w.tag), "rewriting subscript depth budget exceeded"
            )

    while True:
        moved = False
        # phase 1: no y letter may precede an x/p letter
        for i in range(len(L) - 1):
            if L[i][0] == "y" and L[i + 1][0] in ("x", "p"):
                bump()
                _, s, e = L[i]
                g = L[i + 1]
                s2 = partial_action(s, g)
                if s2 is not None:
                    L[i], L[i + 1] = g, ("y", s2, e)
                else:
                    guard(s)
                    L[i:i + 1] = _expand_y(s, e)
                moved = True
                break
        if moved:
            continue

        h = next((i for i, l in enumerate(L) if l[0] == "y"), len(L))

        # phase 2: cancel, sort and merge the y tail
        for j in range(h, len(L) - 1):
            (k1, s, e), (k2, t, f) = L[j], L[j + 1]
            if s == t and e + f == 0:
                bump()
                del L[j:j + 2]
                moved = True
                break
            if s == t or tree_order_less(s, t):
                continue
            bump()
            if independent(s, t):
                L[j], L[j + 1] = L[j + 1], L[j]
            else:
                # t extends s and must come first: deepen y_s
                guard(s)
                L[j:j + 1] = _expand_y(s, e)
            moved = True
            break
        if moved:
            continue

        quad = _find_quad(L, h)
        if quad is not None:
            bump()
            p1, p2, p3, q, u = quad
            for idx in (q, p3, p2, p1):
                del L[idx]
            L.insert(q - 3, ("x", u, -1))
            continue

        # head absorption: x_u^-1 y_u = y_{u0} y_{u10}^-1 y_{u11}, after
        # sliding x_u^-1 right through the tail prefix (transport by x_u)
        if h > 0 and L[h - 1][0] == "x" and L[h - 1][2] == -1:
            u = L[h - 1][1]
            j = next(
                (j for j in range(h, len(L)) if L[j][1] == u and L[j][2] == 1), None
            )
            if j is not None:
                transformed: Optional[List[Letter]] = []
                for jj in range(h, j):
                    v2 = partial_action(L[jj][1], ("x", u, 1))
                    if v2 is None:
                        transformed = None
                        break
                    transformed.append(("y", v2, L[jj][2]))
                if transformed is not None:
                    bump()
                    L[h - 1:j + 1] = transformed + [
                        ("y", u + "0", 1),
                        ("y", u + "10", -1),
                        ("y", u + "11", 1),
                    ]
                    continue
        break

    h = next((i for i, l in enumerate(L) if l[0] == "y"), len(L))
    head = GroupWord(_merge_letters(L[:h]), w.tag)
    tail_units = L[h:]
    tail: List[Tuple[str, int]] = []
    for _, s, e in tail_units:
        if tail and tail[-1][0] == s:
            tail[-1] = (s, tail[-1][1] + e)
            if tail[-1][1] == 0:
                tail.pop()
        else:
            tail.append((s, e))
    for (s, _), (t, _) in zip(tail, tail[1:]):
        if not tree_order_less(s, t):
            raise AssertionError("standard-form tail is not sorted")
    sf = StandardForm(head, tuple(tail), w.tag)
    if validate:
        witness = action.equal_at_depth(w, sf.word(), depth)
        if witness is not None:
            raise AssertionError(
                f"rewriting produced an unequal word (witness input {witness!r})"
            )
    return sf


def _merge_letters(units: List[Letter]) -> Tuple[Letter, ...]:
    out: List[Letter] = []
    for k, s, e in units:
        if out and out[-1][0] == k and out[-1][1] == s:
            me = out[-1][2] + e
            if me == 0:
                out.pop()
            else:
                out[-1] = (k, s, me)
        else:
            out.append((k, s, e))
    return tuple(out)


def _word_of(units: List[Letter], tag: str) -> GroupWord:
    return GroupWord(_merge_letters(units), tag)


# --------------------------------------------------------------------------
# Word problem, F-membership, cosets


@dataclass(frozen=True)
class Verdict:
    result: str  # "yes" / "no" / "unknown" or "identity" / "not-identity"
    witness: Optional[object] = None


def word_problem(w: GroupWord, depth: int = DEFAULT_DEPTH) -> Verdict:
    """Identity only when the standard form has an empty tail and a
    trivial tree pair; NotIdentity only with an action witness."""
    budget_note = ""
    try:
        sf = rewrite_standard_form(w, depth=depth)
    except RewriteBudgetExceeded as exc:
        sf = None
        budget_note = str(exc)
    if sf is not None and not sf.tail and decide_T_identity(sf.head):
        return Verdict("identity")
    witness = action.equal_at_depth(w, identity(w.tag), depth)
    if witness is not None:
        return Verdict("not-identity", witness)
    if sf is None:
        return Verdict("unknown", budget_note)
    return Verdict("unknown", f"agrees with the identity to depth {depth}")


def in_F(w: GroupWord, depth: int = DEFAULT_DEPTH) -> Verdict:
    """Sound tri-state membership in F.

    Yes: empty standard-form tail and an order-preserving tree pair.
    No: a psi-type character separates w from F, or w moves an endpoint.
    Unknown otherwise (a nonempty tail alone is not proof).
    """
    if w.tag == "F":
        return Verdict("yes")
    try:
        sf = rewrite_standard_form(w, depth=depth)
    except RewriteBudgetExceeded as exc:
        return Verdict("unknown", str(exc))
    if not sf.tail:
        pm = pm_of_word(sf.head)
        if pm_order_preserving(pm):
            return Verdict("yes")
        # outside F the element moves an endpoint; the move shows up at
        # the depth of the tree pair's leaves
        scan = max(depth, max(len(a) for a, _ in pm) + 1)
        for d in range(1, scan + 1):
            for base in ("0", "1"):
                xi = base * d
                forced = action.act_prefix(w, xi).forced
                if set(forced) - {base}:
                    return Verdict("no", xi)
        raise AssertionError("tree pair outside F but endpoints undisturbed")
    for name in AVAILABLE_CHARACTERS[w.tag] - {"chi0", "chi1"}:
        if char_value(name, w) != 0:
            return Verdict("no", ("character", name, char_value(name, w)))
    if not action.fixes_endpoints(w, depth):
        for d in range(1, depth + 1):
            for base in ("0", "1"):
                xi = base * d
                forced = action.act_prefix(w, xi).forced
                if set(forced) - {base}:
                    return Verdict("no", xi)
    return Verdict("unknown", "nonempty standard-form tail only")


def same_coset(g: GroupWord, g2: GroupWord, depth: int = DEFAULT_DEPTH) -> Verdict:
    """Whether Fg = Fg2, decided as F-membership of g g2^-1."""
    return in_F(g * g2.inverse(), depth=depth)


# --------------------------------------------------------------------------
# Canonical coset keys (vertices of the cluster complex)


def _triple_contract(tail: List[Tuple[str, int]]) -> Optional[List[Tuple[str, int]]]:
    """Find y_{u0} y_{u10}^-1 y_{u11} inside a sorted unit tail and
    absorb its x_u^-1 into the F part on the left, transporting the
    letters it passes; returns the new unit tail or None."""
    for p3 in range(len(tail)):
        v, sg = tail[p3]
        if sg != 1 or not v.endswith("11"):
            continue
        u = v[:-2]
        want = [(u + "0", 1), (u + "10", -1)]
        pos = []
        lo = 0
        ok = True
        for pat in want:
            found = None
            for i in range(lo, p3):
                if tail[i] == pat:
                    found = i
                    break
            if found is None:
                ok = False
                break
            pos.append(found)
            lo = found + 1
        if not ok:
            continue
        p1, p2 = pos
        chosen = {p1: u + "0", p2: u + "10", p3: u + "11"}
        feasible = True
        for p in range(p1 + 1, p3):
            if p in chosen:
                continue
            for pi, ci in chosen.items():
                if pi < p and not _commutes(ci, tail[p][0]):
                    feasible = False
                    break
            if not feasible:
                break
        if not feasible:
            continue
        new: List[Tuple[str, int]] = []
        transported = True
        for i, (s, e) in enumerate(tail[:p3]):
            if i in chosen:
                continue
            s2 = partial_action(s, ("x", u, -1))
            if s2 is None:
                transported = False
                break
            new.append((s2, e))
        if not transported:
            continue
        new.append((u, 1))
        new.extend(tail[p3 + 1:])
        return new
    return None


def canonical_coset(g: GroupWord, depth: int = DEFAULT_DEPTH) -> GroupWord:
    """Canonical representative word for the coset Fg: the standard-form
    tail with the F head dropped and every left-absorbable triple
    y_{u0} y_{u10}^-1 y_{u11} contracted to y_u."""
    return _canonical_coset_cached(g.letters, g.tag, depth)


@lru_cache(maxsize=65536)
def _canonical_coset_cached(letters, tag: str, depth: int) -> GroupWord:
    g = GroupWord(letters, tag)
    sf = rewrite_standard_form(g, depth=depth)
    if sf.head.letters and not pm_order_preserving(pm_of_word(sf.head)):
        raise TagViolation("coset representative has a head outside F")
    units = [(s, sg) for s, e in sf.tail for sg in ([1] * e if e > 0 else [-1] * (-e))]
    for _ in range(10_000):
        new = _triple_contract(units)
        if new is None:
            break
        yw = GroupWord(tuple(("y", s, e) for s, e in new), g.tag)
        sf2 = rewrite_standard_form(yw, depth=depth)
        if sf2.head.letters and not pm_order_preserving(pm_of_word(sf2.head)):
            raise AssertionError("contracted tail produced a head outside F")
        units = [
            (s, sg) for s, e in sf2.tail for sg in ([1] * e if e > 0 else [-1] * (-e))
        ]
    key = GroupWord(_merge_letters([("y", s, e) for s, e in units]), g.tag)
    if psi_like_value(key) != psi_like_value(g):
        raise AssertionError("coset key changed the psi height")
    return key


def coset_key_string(g: GroupWord, depth: int = DEFAULT_DEPTH) -> str:
    return canonical_coset(g, depth=depth).to_string()
