#!/usr/bin/env python3
"""Generates the template-based fixture corpora under data/fixtures/.

  correct_1k.txt   1000 correct, space-tokenized sentences
  parallel.tsv     incorrect<TAB>correct pairs with one or two errors each,
                   plus about 10% unchanged pairs

Every word is checked against data/lexicon.tsv so the annotator reads the
sentences the way the templates intend. Output is deterministic.

Usage: python3 tools/make_fixtures.py [--pairs N] [--seed S]
"""

import argparse
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")


def load_lexicon():
    lex = {}
    with open(os.path.join(DATA, "lexicon.tsv"), encoding="utf-8") as f:
        for line in f:
            if not line.strip() or line.startswith("#"):
                continue
            word, pos, lemma = line.rstrip("\n").split("\t")
            lex.setdefault(word, []).append((pos, lemma))
    irregular = {"VERB": {}, "NOUN": {}, "ADJ": {}}
    with open(os.path.join(DATA, "irregular.tsv"), encoding="utf-8") as f:
        for line in f:
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.rstrip("\n").split("\t")
            irregular[cols[0]][cols[1]] = cols[2:]
    return lex, irregular


LEX, IRREGULAR = load_lexicon()


def first_reading(word):
    readings = LEX.get(word.lower())
    return readings[0] if readings else None


def has_reading(word, pos, lemma=None):
    return any(p == pos and (lemma is None or l == lemma) for p, l in LEX.get(word.lower(), []))


def vowel(c):
    return c in "aeiou"


def plural(noun):
    if noun in IRREGULAR["NOUN"]:
        return IRREGULAR["NOUN"][noun][0]
    if noun.endswith(("s", "x", "z", "ch", "sh")):
        return noun + "es"
    if len(noun) > 1 and noun[-1] == "y" and not vowel(noun[-2]):
        return noun[:-1] + "ies"
    return noun + "s"


def third(verb):
    if verb in ("go", "do"):
        return verb + "es"
    if verb == "have":
        return "has"
    return plural(verb) if verb not in IRREGULAR["NOUN"] else verb + "s"


def past(verb):
    if verb in IRREGULAR["VERB"]:
        return IRREGULAR["VERB"][verb][0]
    candidates = []
    if verb.endswith("e"):
        candidates.append(verb + "d")
    elif len(verb) > 1 and verb[-1] == "y" and not vowel(verb[-2]):
        candidates.append(verb[:-1] + "ied")
    else:
        candidates += [verb + verb[-1] + "ed", verb + "ed"]
    for c in candidates:
        if has_reading(c, "VERB", verb):
            return c
    return None


def gerund(verb):
    if verb.endswith("ie"):
        c = [verb[:-2] + "ying"]
    elif verb.endswith("e") and not verb.endswith(("ee", "ye", "oe")) and verb != "be":
        c = [verb[:-1] + "ing"]
    else:
        c = [verb + verb[-1] + "ing", verb + "ing"]
    for w in c:
        if has_reading(w, "VERB", verb):
            return w
    return None


def comparative(adj):
    if adj in IRREGULAR["ADJ"]:
        return IRREGULAR["ADJ"][adj][0]
    for c in (adj + "er", adj + "r", adj[:-1] + "ier", adj + adj[-1] + "er"):
        if has_reading(c, "ADJ", adj):
            return c
    return None


def need(word, pos):
    r = first_reading(word)
    if r is None or r[0] != pos:
        raise SystemExit(f"fixture word {word!r} is not read as {pos} (got {r})")
    return word


# Vocabulary ---------------------------------------------------------------

SUBJECTS = [  # (tokens, person)
    (["I"], "1"), (["You"], "2"), (["He"], "3"), (["She"], "3"), (["We"], "p"), (["They"], "p"),
    (["My", "friend"], "3"), (["My", "brother"], "3"), (["My", "sister"], "3"), (["The", "teacher"], "3"),
    (["My", "parents"], "p"), (["The", "students"], "p"), (["My", "father"], "3"), (["Our", "neighbor"], "3"),
    (["My", "friends"], "p"), (["The", "children"], "p"),
]
OBJECT_PRONOUNS = ["me", "him", "her", "us", "them"]
SUBJECT_OF = {"me": "I", "him": "he", "her": "she", "us": "we", "them": "they"}

TRANSITIVE = ["like", "want", "need", "buy", "see", "read", "write", "make", "take", "bring", "use", "love",
              "visit", "watch", "find", "carry", "clean", "open", "cook", "sell", "keep", "choose", "build",
              "draw", "paint", "wash", "borrow", "order", "collect", "prepare"]
INTRANSITIVE_PP = ["go", "walk", "run", "swim", "travel", "study", "work", "live", "stay", "wait", "play",
                   "sleep", "sit", "arrive"]
ACTIVITIES = ["play", "read", "cook", "swim", "dance", "study", "travel", "paint", "draw", "sing", "walk"]
GERUND_VERBS = ["enjoy", "like", "love", "hate", "finish", "start"]
INF_VERBS = ["want", "need", "decide", "plan", "hope", "try", "like", "promise"]

COUNT_NOUNS = ["book", "car", "house", "dog", "cat", "bag", "shoe", "picture", "letter", "computer", "bike",
               "phone", "cake", "song", "movie", "game", "friend", "present", "ticket", "camera", "chair", "table",
               "apple", "toy", "shirt", "jacket", "flower", "map", "pen", "window", "door", "story", "child",
               "person", "box", "dress", "watch", "city", "country", "key", "bottle", "photo", "sandwich",
               "hat", "guitar", "subject", "student", "teacher", "lesson", "room", "garden", "horse", "bird"]
MASS_NOUNS = ["music", "coffee", "tea", "water", "homework", "information", "advice", "money", "bread", "milk"]
PLACES = ["park", "station", "library", "school", "office", "beach", "restaurant", "hospital", "market",
          "museum", "airport", "cinema", "supermarket", "village", "city", "kitchen", "garden", "classroom"]
TIMES_PRESENT = ["every day", "every week", "on Sundays", "in the morning", "after school", "at night"]
TIMES_PAST = ["yesterday", "last week", "last year", "last night", "two days ago"]
FREQ_ADVERBS = ["always", "often", "usually", "sometimes", "never", "rarely"]
MANNER_ADVERBS = ["quickly", "carefully", "slowly", "easily", "quietly", "loudly", "badly", "clearly",
                  "seriously", "happily", "politely", "safely", "correctly", "perfectly", "nicely", "strongly"]
ADJECTIVES = ["big", "small", "old", "new", "beautiful", "expensive", "cheap", "interesting", "happy", "tired",
              "busy", "difficult", "easy", "cold", "hot", "nice", "good", "bad", "large", "kind", "famous",
              "delicious", "boring", "young", "strong", "tall", "short", "clean", "quiet", "pretty", "long",
              "heavy", "warm", "funny", "strange", "useful", "careful", "quick", "slow", "bright", "dark"]
PREP_PLACE = {"park": "in", "station": "at", "library": "at", "school": "at", "office": "in", "beach": "on",
              "restaurant": "at", "hospital": "in", "market": "at", "museum": "at", "airport": "at", "cinema": "at",
              "supermarket": "at", "village": "in", "city": "in", "kitchen": "in", "garden": "in",
              "classroom": "in"}

SYNONYM_ADJ = [("big", "large"), ("small", "little"), ("happy", "glad"), ("beautiful", "pretty"),
               ("difficult", "hard"), ("good", "nice"), ("quick", "fast"), ("cheap", "poor"), ("bad", "terrible"),
               ("tired", "sleepy"), ("famous", "popular"), ("expensive", "rich"), ("funny", "strange"),
               ("quiet", "silent"), ("strong", "powerful"), ("delicious", "tasty")]
VERB_CONFUSIONS = [("make", "do"), ("take", "bring"), ("see", "watch"), ("buy", "take"), ("read", "see"),
                   ("say", "tell"), ("borrow", "lend"), ("find", "see"), ("bring", "take"), ("open", "make"),
                   ("watch", "see"), ("clean", "wash"), ("keep", "hold"), ("choose", "take"), ("cook", "make")]
NOUN_CONFUSIONS = [("house", "home"), ("bike", "car"), ("film", "movie"), ("trip", "travel"), ("job", "work"),
                   ("city", "town"), ("store", "shop"), ("present", "gift"), ("picture", "photo"),
                   ("lesson", "class"), ("friend", "partner"), ("road", "street"), ("book", "novel")]
PREP_CONFUSIONS = [("in", "on"), ("in", "at"), ("at", "in"), ("on", "in"), ("at", "on"), ("with", "by"),
                   ("to", "at"), ("for", "to"), ("about", "of"), ("of", "for")]
OTHER_SWAPS = [("fun", "funny"), ("interesting", "interest"), ("boring", "bored"), ("lot", "many"),
               ("home", "house"), ("person", "people"), ("money", "cost"), ("job", "working")]
MORPH_SWAPS = [("quickly", "quick"), ("carefully", "careful"), ("slowly", "slow"), ("easily", "easy"),
               ("quietly", "quiet"), ("loudly", "loud"), ("badly", "bad"), ("clearly", "clear"),
               ("seriously", "serious"), ("happily", "happy"), ("politely", "polite"), ("safely", "safe"),
               ("correctly", "correct"), ("perfectly", "perfect"), ("nicely", "nice"), ("strongly", "strong")]
NOUN_INFL = {"child": "childs", "person": "persons", "man": "mans", "woman": "womans", "foot": "foots",
             "tooth": "tooths", "mouse": "mouses", "information": "informations", "advice": "advices",
             "homework": "homeworks", "equipment": "equipments", "furniture": "furnitures"}


# Sentence construction -----------------------------------------------------
#
# A sentence is a list of [word, role] pairs. Roles mark the slots the error
# generators look for.

def verb_form(lemma, person, tense):
    if tense == "past":
        return past(lemma)
    if person == "3":
        return third(lemma)
    return lemma


def be_form(person, tense):
    if tense == "past":
        return "was" if person in ("1", "3") else "were"
    return {"1": "am", "2": "are", "3": "is", "p": "are"}[person]


def noun_phrase(rng, allow_plural=True, det=True):
    noun = rng.choice(COUNT_NOUNS)
    use_plural = allow_plural and rng.random() < 0.4
    toks = []
    if use_plural:
        if rng.random() < 0.5:
            toks.append([rng.choice(["these", "the", "some", "my", "his", "her", "our", "their", "two", "many"]), "DET"])
    elif det:
        choice = rng.choice(["the", "a", "my", "this", "his", "her", "our", "their", "the"])
        if choice == "a" and noun[0] in "aeiou":
            choice = "an"
        toks.append([choice, "DET"])
    if rng.random() < 0.35:
        adj = rng.choice(ADJECTIVES)
        if toks and toks[-1][0] == "a" and adj[0] in "aeiou":
            toks[-1][0] = "an"
        if toks and toks[-1][0] == "an" and adj[0] not in "aeiou":
            toks[-1][0] = "a"
        toks.append([adj, "ADJ"])
    toks.append([plural(noun) if use_plural else noun, "NPL" if use_plural else "NSG"])
    return toks


def place_phrase(rng):
    place = rng.choice(PLACES)
    return [[PREP_PLACE[place], "PREP"], ["the", "DET"], [place, "NSG"]]


def time_phrase(text):
    out = []
    for w in text.split():
        if w in ("in", "on", "at", "after"):
            out.append([w, "PREP"])
        elif w in ("every", "last", "the"):
            out.append([w, "DET"])
        elif w in ("two",):
            out.append([w, "NUM"])
        elif w == "ago":
            out.append([w, "ADV"])
        elif w == "yesterday":
            out.append([w, "ADV"])
        else:
            out.append([w, "NTIME"])
    return out


def subject(rng):
    toks, person = rng.choice(SUBJECTS)
    roles = []
    for i, t in enumerate(toks):
        if len(toks) == 1:
            roles.append([t, "SUBJPRON"])
        elif i == 0:
            roles.append([t, "DET"])
        else:
            roles.append([t, "NPL" if person == "p" else "NSG"])
    return roles, person


def s_transitive(rng):
    subj, person = subject(rng)
    tense = rng.choice(["present", "present", "past"])
    verb = rng.choice(TRANSITIVE)
    form = verb_form(verb, person, tense)
    if form is None:
        return None
    out = subj[:]
    if tense == "present" and rng.random() < 0.5:
        out.append([rng.choice(FREQ_ADVERBS), "FREQ"])
    out.append([form, "V:" + verb + ":" + ("past" if tense == "past" else ("3sg" if person == "3" else "base"))])
    if rng.random() < 0.2:
        pron = rng.choice(OBJECT_PRONOUNS)
        out.append([pron, "OBJPRON"])
    else:
        out += noun_phrase(rng)
    r = rng.random()
    if r < 0.3:
        out += place_phrase(rng)
    elif r < 0.5:
        out.append([rng.choice(MANNER_ADVERBS), "MANNER"])
    if tense == "past":
        out += time_phrase(rng.choice(TIMES_PAST))
    elif rng.random() < 0.3:
        out += time_phrase(rng.choice(TIMES_PRESENT))
    out.append([".", "PUNCT"])
    return out


def s_intransitive(rng):
    subj, person = subject(rng)
    tense = rng.choice(["present", "past"])
    verb = rng.choice(INTRANSITIVE_PP)
    form = verb_form(verb, person, tense)
    if form is None:
        return None
    out = subj + [[form, "V:" + verb + ":" + ("past" if tense == "past" else ("3sg" if person == "3" else "base"))]]
    out += place_phrase(rng)
    if tense == "past":
        out += time_phrase(rng.choice(TIMES_PAST))
    out.append([".", "PUNCT"])
    return out


def s_copula(rng):
    if rng.random() < 0.5:
        subj, person = subject(rng)
    else:
        noun = rng.choice(COUNT_NOUNS)
        subj, person = [["The", "DET"], [noun, "NSG"]], "3"
    tense = rng.choice(["present", "past"])
    out = subj + [[be_form(person, tense), "BE:" + person + ":" + tense]]
    if rng.random() < 0.3:
        out.append([rng.choice(["very", "really", "so", "too"]), "DEG"])
    out.append([rng.choice(ADJECTIVES), "ADJ"])
    if rng.random() < 0.3:
        out += [["today", "ADV"]] if tense == "present" else time_phrase(rng.choice(TIMES_PAST))
    out.append([".", "PUNCT"])
    return out


def s_infinitive(rng):
    subj, person = subject(rng)
    verb = rng.choice(INF_VERBS)
    out = subj + [[verb_form(verb, person, "present"), "V:" + verb + ":" + ("3sg" if person == "3" else "base")]]
    act = rng.choice(TRANSITIVE)
    out += [["to", "TO"], [act, "VINF:" + act]]
    out += noun_phrase(rng)
    out.append([".", "PUNCT"])
    return out


def s_gerund(rng):
    subj, person = subject(rng)
    verb = rng.choice(GERUND_VERBS)
    act = rng.choice(ACTIVITIES)
    g = gerund(act)
    if g is None:
        return None
    out = subj + [[verb_form(verb, person, "present"), "V:" + verb + ":" + ("3sg" if person == "3" else "base")]]
    out.append([g, "VGER:" + act])
    if rng.random() < 0.5:
        out += [["with", "PREP"], ["my", "DET"], ["friends", "NPL"]]
    out.append([".", "PUNCT"])
    return out


def s_negative(rng):
    subj, person = subject(rng)
    aux = "does" if person == "3" else "do"
    verb = rng.choice(TRANSITIVE)
    out = subj + [[aux, "AUX"], ["n't", "NEG"], [verb, "VINF:" + verb]]
    out += noun_phrase(rng)
    out.append([".", "PUNCT"])
    return out


def s_possessive(rng):
    owner = rng.choice(["friend", "brother", "sister", "teacher", "mother", "father", "neighbor", "cousin"])
    thing = rng.choice(["car", "house", "dog", "bag", "phone", "bike", "book", "room", "garden", "computer"])
    out = [["My", "DET"], [owner, "NSG"], ["'s", "POSS"], [thing, "NSG"], ["is", "BE:3:present"]]
    out.append([rng.choice(ADJECTIVES), "ADJ"])
    out.append([".", "PUNCT"])
    return out


def s_compound(rng):
    first = s_transitive(rng)
    second = s_intransitive(rng)
    if first is None or second is None:
        return None
    conj = rng.choice(["and", "but", "so"])
    first = first[:-1] + [[",", "COMMA"], [conj, "CONJ"]]
    second[0][0] = second[0][0] if second[0][0] == "I" else second[0][0].lower()
    return first + second


def s_mine(rng):
    thing = rng.choice(["book", "bag", "pen", "car", "phone", "bike", "key", "ticket"])
    owner = rng.choice(["mine", "yours", "his", "hers", "ours", "theirs"])
    return [["This", "DET"], [thing, "NSG"], ["is", "BE:3:present"], [owner, "POSSPRON"], [".", "PUNCT"]]


BUILDERS = [(s_transitive, 6), (s_intransitive, 3), (s_copula, 3), (s_infinitive, 2), (s_gerund, 2),
            (s_negative, 1), (s_possessive, 1), (s_compound, 2), (s_mine, 1)]


def make_sentence(rng):
    total = sum(w for _, w in BUILDERS)
    while True:
        r = rng.uniform(0, total)
        for build, w in BUILDERS:
            r -= w
            if r <= 0:
                break
        s = build(rng)
        if s is not None:
            s[0][0] = s[0][0][0].upper() + s[0][0][1:]
            return s


# Error generators: take a sentence, return a corrupted copy or None -------

def _find(sent, pred):
    return [i for i, (w, r) in enumerate(sent) if pred(w, r)]


def _copy(sent):
    return [list(t) for t in sent]


def _recase(sent):
    # Keep the first token capitalized after an edit at position 0.
    out = _copy(sent)
    if out and out[0][0] and out[0][0][0].islower() and out[0][0] not in ("n't",):
        out[0][0] = out[0][0][0].upper() + out[0][0][1:]
    return out


def e_noun_num(rng, s):
    idx = _find(s, lambda w, r: r in ("NSG", "NPL"))
    idx = [i for i in idx if s[i][0].lower() in {c for c in COUNT_NOUNS} | {plural(c) for c in COUNT_NOUNS}]
    if not idx:
        return None
    i = rng.choice(idx)
    out = _copy(s)
    w = out[i][0]
    lower = w.lower()
    if out[i][1] == "NPL":
        sg = next((c for c in COUNT_NOUNS if plural(c) == lower), None)
        if sg is None:
            return None
        out[i][0] = sg
    else:
        out[i][0] = plural(lower)
    if i == 0:
        out = _recase(out)
    return out


def e_sva(rng, s):
    idx = _find(s, lambda w, r: r.startswith("V:") and r.split(":")[2] in ("3sg", "base") or r.startswith("BE:"))
    idx += _find(s, lambda w, r: r == "AUX")
    if not idx:
        return None
    i = rng.choice(idx)
    out = _copy(s)
    w, r = out[i]
    if r == "AUX":
        out[i][0] = "do" if w == "does" else "does"
    elif r.startswith("BE:"):
        swap = {"is": "are", "are": "is", "am": "is", "was": "were", "were": "was"}
        out[i][0] = swap[w]
    else:
        lemma, form = r.split(":")[1], r.split(":")[2]
        out[i][0] = lemma if form == "3sg" else third(lemma)
    return out


def e_tense(rng, s):
    idx = _find(s, lambda w, r: r.startswith("V:") or (r.startswith("BE:")))
    if not idx:
        return None
    i = rng.choice(idx)
    out = _copy(s)
    w, r = out[i]
    if r.startswith("BE:"):
        _, person, tense = r.split(":")
        out[i][0] = be_form(person, "present" if tense == "past" else "past")
        return out
    lemma, form = r.split(":")[1], r.split(":")[2]
    if form == "past":
        out[i][0] = rng.choice([lemma, third(lemma)])
    else:
        p = past(lemma)
        if p is None:
            return None
        out[i][0] = p
    return out


def e_verb_form(rng, s):
    idx = _find(s, lambda w, r: r.startswith("VINF:") or r.startswith("VGER:"))
    if not idx:
        return None
    i = rng.choice(idx)
    out = _copy(s)
    kind, lemma = out[i][1].split(":")
    if kind == "VINF":
        g = gerund(lemma)
        if g is None:
            return None
        out[i][0] = rng.choice([g] * 3 + [third(lemma)]) if s[i - 1][1] == "TO" else g
    else:
        out[i][0] = lemma if rng.random() < 0.6 else "to " + lemma
    return out


def e_verb_infl(rng, s):
    idx = _find(s, lambda w, r: r.startswith("V:") and r.endswith(":past") and r.split(":")[1] in IRREGULAR["VERB"])
    if not idx:
        return None
    i = rng.choice(idx)
    lemma = s[i][1].split(":")[1]
    bad = lemma + ("d" if lemma.endswith("e") else "ed")
    if bad.lower() in LEX:
        return None
    out = _copy(s)
    out[i][0] = bad
    return out


def e_verb(rng, s):
    idx = _find(s, lambda w, r: (r.startswith("V:") or r.startswith("VINF:")))
    rng.shuffle(idx)
    for i in idx:
        parts = s[i][1].split(":")
        lemma = parts[1]
        form = parts[2] if parts[0] == "V" else "base"
        subs = [b for a, b in VERB_CONFUSIONS if a == lemma]
        if not subs:
            continue
        other = rng.choice(subs)
        word = {"base": other, "3sg": third(other), "past": past(other)}[form]
        if word is None or not has_reading(word, "VERB", other):
            continue
        out = _copy(s)
        out[i][0] = word
        return out
    return None


def e_det(rng, s):
    idx = _find(s, lambda w, r: r == "DET" and w.lower() in ("the", "a", "an", "this", "these", "some"))
    nouns = _find(s, lambda w, r: r == "NSG")
    out = _copy(s)
    choice = rng.random()
    if idx and choice < 0.5:
        i = rng.choice(idx)
        if i == 0:
            return None
        w = out[i][0]
        if w == "the":
            nxt = out[i + 1][0]
            if out[i + 1][1] == "NPL":
                del out[i]
            else:
                out[i][0] = "an" if nxt[0] in "aeiou" else "a"
        elif w in ("a", "an"):
            out[i][0] = "the"
        else:
            del out[i]
        return out
    if idx and choice < 0.8:
        i = rng.choice(idx)
        if i == 0:
            return None
        del out[i]
        return out
    # Insert a superfluous article before a bare mass noun or plural.
    cands = [i for i, (w, r) in enumerate(s) if r in ("NPL",) and i > 0 and s[i - 1][1] not in ("DET", "ADJ")]
    cands += [i for i in nouns if i > 0 and s[i][0] in MASS_NOUNS and s[i - 1][1] not in ("DET", "ADJ")]
    if not cands:
        return None
    i = rng.choice(cands)
    out.insert(i, ["the", "DET"])
    return out


def e_prep(rng, s):
    idx = _find(s, lambda w, r: r == "PREP")
    if not idx:
        return None
    i = rng.choice(idx)
    w = s[i][0]
    subs = [b for a, b in PREP_CONFUSIONS if a == w]
    out = _copy(s)
    if subs and rng.random() < 0.8:
        out[i][0] = rng.choice(subs)
    else:
        del out[i]
    return out


def e_pron(rng, s):
    idx = _find(s, lambda w, r: r in ("OBJPRON", "POSSPRON"))
    if not idx:
        return None
    i = rng.choice(idx)
    out = _copy(s)
    w = s[i][0]
    if s[i][1] == "OBJPRON":
        out[i][0] = SUBJECT_OF[w]
    else:
        out[i][0] = {"mine": "me", "yours": "you", "his": "him", "hers": "her", "ours": "us", "theirs": "them"}[w]
    return out


def e_punct(rng, s):
    idx = _find(s, lambda w, r: r in ("PUNCT", "COMMA"))
    if not idx:
        return None
    i = rng.choice(idx)
    out = _copy(s)
    if s[i][1] == "COMMA" or rng.random() < 0.7:
        del out[i]
    else:
        out[i][0] = rng.choice([",", "!"])
    return out


def e_spell(rng, s):
    idx = [i for i, (w, r) in enumerate(s) if len(w) >= 5 and w.isalpha() and w.islower()]
    if not idx:
        return None
    for _ in range(10):
        i = rng.choice(idx)
        w = s[i][0]
        k = rng.randrange(1, len(w) - 2)
        kind = rng.random()
        if kind < 0.4:
            bad = w[:k] + w[k + 1] + w[k] + w[k + 2:]
        elif kind < 0.7:
            bad = w[:k] + w[k + 1:]
        else:
            bad = w[:k] + w[k] + w[k:]
        if bad != w and bad not in LEX:
            out = _copy(s)
            out[i][0] = bad
            return out
    return None


def e_orth(rng, s):
    out = _copy(s)
    idx = _find(s, lambda w, r: w == "I")
    if idx and rng.random() < 0.5:
        out[rng.choice(idx)][0] = "i"
        return out
    if s[0][0] == "I":
        return None
    out[0][0] = s[0][0].lower()
    return out


def e_adj(rng, s):
    idx = _find(s, lambda w, r: r == "ADJ")
    rng.shuffle(idx)
    for i in idx:
        w = s[i][0]
        subs = [b for a, b in SYNONYM_ADJ if a == w] + [a for a, b in SYNONYM_ADJ if b == w]
        subs = [x for x in subs if has_reading(x, "ADJ") and first_reading(x)[0] == "ADJ"]
        if not subs:
            continue
        out = _copy(s)
        out[i][0] = rng.choice(subs)
        if i > 0 and out[i - 1][0] in ("a", "an"):
            out[i - 1][0] = "an" if out[i][0][0] in "aeiou" else "a"
        return out
    return None


def e_adj_form(rng, s):
    idx = _find(s, lambda w, r: r == "ADJ")
    rng.shuffle(idx)
    for i in idx:
        c = comparative(s[i][0])
        if c is None:
            if rng.random() < 0.5:
                out = _copy(s)
                out.insert(i, ["more", "DEG"])
                return out
            continue
        out = _copy(s)
        out[i][0] = c
        return out
    return None


def e_adv(rng, s):
    idx = _find(s, lambda w, r: r in ("FREQ", "DEG"))
    if not idx:
        return None
    i = rng.choice(idx)
    out = _copy(s)
    pool = FREQ_ADVERBS if s[i][1] == "FREQ" else ["very", "really", "too"]
    subs = [x for x in pool if x != s[i][0]]
    if rng.random() < 0.6:
        out[i][0] = rng.choice(subs)
    else:
        del out[i]
    return out


def e_morph(rng, s):
    idx = _find(s, lambda w, r: r == "MANNER" and any(a == w for a, _ in MORPH_SWAPS))
    if not idx:
        return None
    i = rng.choice(idx)
    out = _copy(s)
    out[i][0] = dict(MORPH_SWAPS)[s[i][0]]
    return out


def e_noun(rng, s):
    idx = _find(s, lambda w, r: r in ("NSG",))
    rng.shuffle(idx)
    for i in idx:
        subs = [b for a, b in NOUN_CONFUSIONS if a == s[i][0]] + [a for a, b in NOUN_CONFUSIONS if b == s[i][0]]
        subs = [x for x in subs if first_reading(x) and first_reading(x)[0] == "NOUN"]
        if not subs:
            continue
        out = _copy(s)
        out[i][0] = rng.choice(subs)
        if i > 0 and out[i - 1][0] in ("a", "an"):
            out[i - 1][0] = "an" if out[i][0][0] in "aeiou" else "a"
        return out
    return None


def e_noun_infl(rng, s):
    idx = _find(s, lambda w, r: r == "NPL" and any(plural(k) == w.lower() for k in NOUN_INFL))
    idx += _find(s, lambda w, r: w in MASS_NOUNS and w in NOUN_INFL)
    if not idx:
        return None
    i = rng.choice(idx)
    w = s[i][0].lower()
    key = next((k for k in NOUN_INFL if plural(k) == w or k == w), None)
    bad = NOUN_INFL[key]
    if bad in LEX:
        return None
    out = _copy(s)
    out[i][0] = bad if s[i][0].islower() else bad.capitalize()
    return out


def e_noun_poss(rng, s):
    idx = _find(s, lambda w, r: r == "POSS")
    out = _copy(s)
    if idx:
        del out[idx[0]]
        return out
    # "my friend car" style is covered above; otherwise add a stray 's.
    nouns = [i for i in _find(s, lambda w, r: r == "NSG") if i + 1 < len(s) and s[i + 1][1] in ("NSG", "PREP")]
    if not nouns:
        return None
    i = rng.choice(nouns)
    out.insert(i + 1, ["'s", "POSS"])
    return out


def e_part(rng, s):
    idx = _find(s, lambda w, r: r == "TO")
    if not idx:
        return None
    out = _copy(s)
    del out[idx[0]]
    return out


def e_contr(rng, s):
    idx = _find(s, lambda w, r: r == "NEG")
    if not idx:
        return None
    out = _copy(s)
    out[idx[0]][0] = "not"
    return out


def e_conj(rng, s):
    idx = _find(s, lambda w, r: r == "CONJ")
    if not idx:
        return None
    i = idx[0]
    out = _copy(s)
    out[i][0] = rng.choice([c for c in ("and", "but", "so", "or") if c != s[i][0]])
    return out


def e_word_order(rng, s):
    cands = []
    for i in range(1, len(s) - 1):
        a, b = s[i], s[i + 1]
        if a[1] == "FREQ" and b[1].startswith("V:"):
            cands.append(i)
        if a[1] == "ADJ" and b[1] in ("NSG", "NPL"):
            cands.append(i)
        if a[1] == "DEG" and b[1] == "ADJ":
            cands.append(i)
    if not cands:
        return None
    i = rng.choice(cands)
    out = _copy(s)
    out[i], out[i + 1] = out[i + 1], out[i]
    return out


def e_other(rng, s):
    for i, (w, r) in enumerate(s):
        subs = [b for a, b in OTHER_SWAPS if a == w]
        if subs:
            out = _copy(s)
            out[i][0] = subs[0]
            return out
    # Replace a two-word time phrase with an unrelated expression.
    idx = _find(s, lambda w, r: r == "NTIME")
    if idx:
        i = idx[0]
        out = _copy(s)
        out[i - 1: i + 1] = [["in", "PREP"], ["holiday", "NSG"]] if s[i - 1][0] == "every" else out[i - 1: i + 1]
        if out != s:
            return out
    return None


# Weights loosely follow the skew of learner corpora: determiners,
# prepositions, noun number and tense dominate, contractions are rare.
ERRORS = [
    (e_det, 14), (e_prep, 12), (e_noun_num, 12), (e_tense, 9), (e_spell, 9), (e_punct, 8), (e_sva, 7),
    (e_verb_form, 6), (e_verb, 5), (e_orth, 4), (e_other, 4), (e_adj, 3), (e_noun, 3), (e_pron, 3),
    (e_adv, 3), (e_morph, 2), (e_adj_form, 2), (e_word_order, 2), (e_noun_poss, 3), (e_part, 3),
    (e_conj, 3), (e_verb_infl, 2), (e_noun_infl, 2), (e_contr, 2),
]


def corrupt(rng, sent):
    n = 1 if rng.random() < 0.7 else 2
    total = sum(w for _, w in ERRORS)
    current = sent
    applied = 0
    for _ in range(20):
        if applied == n:
            break
        r = rng.uniform(0, total)
        for fn, w in ERRORS:
            r -= w
            if r <= 0:
                break
        out = fn(rng, current)
        if out is not None and out != current:
            current = out
            applied += 1
    return current if applied else None


def text(sent):
    return " ".join(w for w, _ in sent)


def check_words(sent):
    for w, r in sent:
        for part in w.split():
            if part in ("I",) or part in (".", ",", "!", "'s"):
                continue
            if part.lower() not in LEX:
                raise SystemExit(f"fixture word {part!r} missing from lexicon")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=1500)
    ap.add_argument("--seed", type=int, default=13)
    ap.add_argument("--out", default=os.path.join(DATA, "fixtures"))
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    rng = random.Random(args.seed)
    seen = set()
    correct = []
    while len(correct) < 1000:
        s = make_sentence(rng)
        check_words(s)
        t = text(s)
        if t not in seen:
            seen.add(t)
            correct.append(t)
    with open(os.path.join(args.out, "correct_1k.txt"), "w", encoding="utf-8") as f:
        for t in correct:
            f.write(t + "\n")

    rng = random.Random(args.seed + 1)
    pairs = []
    while len(pairs) < args.pairs:
        s = make_sentence(rng)
        check_words(s)
        if rng.random() < 0.1:
            pairs.append((text(s), text(s)))
            continue
        bad = corrupt(rng, s)
        if bad is None:
            continue
        pairs.append((text(bad), text(s)))
    with open(os.path.join(args.out, "parallel.tsv"), "w", encoding="utf-8") as f:
        for bad, good in pairs:
            f.write(f"{bad}\t{good}\n")


if __name__ == "__main__":
    main()
