"""Independent oracles used to check engine implementations.

Everything in this module is written from first principles and must stay
independent of the code under test: the Gaussian NB oracle works in plain
probability space with math.exp, the rule-matching oracle enumerates
substrings and matches them with a recursive character matcher instead of
regexes, and the metric oracle recomputes scores straight from the
confusion-matrix definitions.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass

ASCII_ALNUM = set(string.ascii_letters + string.digits)

# Own copy of the look-alike substitution table (mirrors the shipped data
# file by construction, not by import).
LOOKALIKES = {
    "a": ["@", "4"],
    "e": ["3"],
    "i": ["1", "!"],
    "l": ["1"],
    "o": ["0"],
    "s": ["$", "5"],
    "t": ["7"],
    "b": ["8"],
    "g": ["9"],
}


# ---------------------------------------------------------------------------
# Naive rule-matching oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OracleFlags:
    repeated_letters: bool = False
    case_insensitive: bool = False
    char_substitution: bool = False
    noun_forms: bool = False
    verb_forms: bool = False


# Hand-written inflections for the small test alphabet.  These are the
# forms a correct inflector must produce; they are NOT derived from the
# engine's tables.
ORACLE_NOUN_FORMS = {
    "cool": ["cools"],
    "idiot": ["idiots"],
    "kill": ["kills"],
    "trust": ["trusts"],
    "apple": ["apples"],
    "fox": ["foxes"],
}

ORACLE_VERB_FORMS = {
    "cool": ["cools", "cooled", "cooling"],
    "idiot": ["idiots", "idioted", "idioting"],
    "kill": ["kills", "killed", "killing"],
    "trust": ["trusts", "trusted", "trusting"],
    "apple": ["apples", "appled", "appling"],
    "fox": ["foxes", "foxed", "foxing"],
}


def _allowed_chars(c: str, flags: OracleFlags) -> set[str]:
    """Set of text characters that may stand in for phrase character c."""
    out = {c}
    if c.isalpha():
        if flags.case_insensitive:
            out.update({c.lower(), c.upper()})
        if flags.char_substitution:
            for base in {c.lower()}:
                out.update(LOOKALIKES.get(base, []))
    return out


def naive_token_match(word: str, token: str, flags: OracleFlags) -> bool:
    """Match a single word against a token, character by character."""

    def rec(i: int, j: int) -> bool:
        if i == len(word):
            return j == len(token)
        c = word[i]
        allowed = _allowed_chars(c, flags)
        if flags.repeated_letters and c.isalpha():
            k = j
            while k < len(token) and token[k] in allowed:
                k += 1
                if rec(i + 1, k):
                    return True
            return False
        if j < len(token) and token[j] in allowed:
            return rec(i + 1, j + 1)
        return False

    return rec(0, 0)


def _segment_match(words: list[str], s: str, flags: OracleFlags) -> bool:
    """Match a sequence of words against substring s, separated by runs of
    non-alphanumeric characters."""

    def rec(wi: int, j: int) -> bool:
        if wi == len(words):
            return j == len(s)
        for k in range(j + 1, len(s) + 1):
            if not naive_token_match(words[wi], s[j:k], flags):
                continue
            if wi == len(words) - 1:
                if k == len(s):
                    return True
                continue
            sep = k
            while sep < len(s) and s[sep] not in ASCII_ALNUM:
                sep += 1
                if rec(wi + 1, sep):
                    return True
        return False

    return rec(0, 0)


def oracle_expansions(phrase: str, flags: OracleFlags) -> list[str]:
    """Phrase surface forms, inflecting the final word via the hand table."""
    words = phrase.split()
    head = words[-1]
    heads = [head]
    if flags.noun_forms:
        heads.extend(ORACLE_NOUN_FORMS.get(head, []))
    if flags.verb_forms:
        heads.extend(f for f in ORACLE_VERB_FORMS.get(head, []) if f not in heads)
    return [" ".join(words[:-1] + [h]) for h in heads]


def naive_phrase_search(phrase: str, text: str, flags: OracleFlags):
    """Earliest (start, end) span matching the phrase, or None.

    Tries every substring whose edges sit on non-alphanumeric boundaries.
    """
    expansions = [e.split() for e in oracle_expansions(phrase, flags)]
    for start in range(len(text)):
        if start > 0 and text[start - 1] in ASCII_ALNUM:
            continue
        for end in range(start + 1, len(text) + 1):
            if end < len(text) and text[end] in ASCII_ALNUM:
                continue
            for words in expansions:
                if _segment_match(words, text[start:end], flags):
                    return (start, end)
    return None


def naive_condition_match(phrases: list[str], text: str, flags: OracleFlags) -> bool:
    return any(naive_phrase_search(p, text, flags) is not None for p in phrases)


def naive_rule_match(includes, exclude, text: str) -> bool:
    """includes: list of (phrases, flags); exclude: (phrases, flags) or None."""
    for phrases, flags in includes:
        if not naive_condition_match(phrases, text, flags):
            return False
    if exclude is not None:
        phrases, flags = exclude
        if naive_condition_match(phrases, text, flags):
            return False
    return True


def naive_classify(rules, text: str) -> bool:
    """rules: list of (includes, exclude). True means Remove."""
    return any(naive_rule_match(inc, exc, text) for inc, exc in rules)


# ---------------------------------------------------------------------------
# Obfuscation generators (variant soundness suite)
# ---------------------------------------------------------------------------

def obfuscate_repeat(rng, phrase: str) -> str:
    return "".join(c * rng.randint(1, 4) if c.isalpha() else c for c in phrase)


def obfuscate_case(rng, phrase: str) -> str:
    return "".join(
        c.upper() if c.isalpha() and rng.random() < 0.5 else c.lower() for c in phrase
    )


def obfuscate_substitute(rng, phrase: str) -> str:
    out = []
    for c in phrase:
        subs = LOOKALIKES.get(c.lower(), [])
        if c.isalpha() and subs and rng.random() < 0.5:
            out.append(rng.choice(subs))
        else:
            out.append(c)
    return "".join(out)


# ---------------------------------------------------------------------------
# Closed-form Gaussian Naive Bayes oracle (probability domain)
# ---------------------------------------------------------------------------

def gnb_oracle_fit(points_by_class: dict[str, list[list[float]]]):
    """Fit per-class priors, means and smoothed population variances.

    Smoothing follows the model definition: eps = 1e-9 times the largest
    pooled per-dimension population variance, floored at 1e-12.
    """
    all_points = [p for pts in points_by_class.values() for p in pts]
    n_total = len(all_points)
    dim = len(all_points[0])

    pooled_var = []
    for d in range(dim):
        col = [p[d] for p in all_points]
        mu = sum(col) / len(col)
        pooled_var.append(sum((v - mu) ** 2 for v in col) / len(col))
    eps = max(1e-9 * max(pooled_var), 1e-12)

    params = {}
    for label, pts in points_by_class.items():
        n = len(pts)
        means, variances = [], []
        for d in range(dim):
            col = [p[d] for p in pts]
            mu = sum(col) / n
            var = sum((v - mu) ** 2 for v in col) / n
            means.append(mu)
            variances.append(var + eps)
        params[label] = (n / n_total, means, variances)
    return params


def gnb_oracle_predict(params, x: list[float], positive: str) -> float:
    """P(class == positive | x) computed with plain densities."""
    densities = {}
    for label, (prior, means, variances) in params.items():
        dens = prior
        for xd, mu, var in zip(x, means, variances):
            dens *= math.exp(-((xd - mu) ** 2) / (2 * var)) / math.sqrt(
                2 * math.pi * var
            )
        densities[label] = dens
    total = sum(densities.values())
    if total == 0.0:
        # Degenerate underflow: fall back to log-space comparison.
        logd = {}
        for label, (prior, means, variances) in params.items():
            acc = math.log(prior)
            for xd, mu, var in zip(x, means, variances):
                acc += -0.5 * math.log(2 * math.pi * var) - ((xd - mu) ** 2) / (2 * var)
            logd[label] = acc
        m = max(logd.values())
        exp = {k: math.exp(v - m) for k, v in logd.items()}
        return exp[positive] / sum(exp.values())
    return densities[positive] / total


# ---------------------------------------------------------------------------
# Metric recomputation oracle
# ---------------------------------------------------------------------------

def recompute_metrics(tp: int, fp: int, fn: int, tn: int) -> dict[str, float]:
    n = tp + fp + fn + tn
    accuracy = (tp + tn) / n if n else 0.0
    precision = tp / (tp + fp) if (tp + fp) else 0.0
    recall = tp / (tp + fn) if (tp + fn) else 0.0
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) else 0.0
    return {
        "accuracy": accuracy,
        "precision": precision,
        "recall": recall,
        "f1": f1,
    }
