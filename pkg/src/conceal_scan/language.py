"""Built-in language identification heuristic.

The pipeline only needs an English/non-English gate, so the detector is
deliberately small: per-language stopword ratios combined with character
trigram profiles derived from embedded sample text. An external detector
can be plugged in through the LanguageDetector protocol.
"""

from __future__ import annotations

import re
from collections import Counter
from typing import Dict, Protocol, Tuple

ENGLISH_STOPWORD_THRESHOLD = 0.05

STOPWORDS: Dict[str, set] = {
    "en": {
        "the", "and", "of", "to", "a", "in", "is", "it", "you", "that",
        "he", "she", "was", "for", "on", "are", "with", "as", "his", "her",
        "they", "be", "at", "have", "this", "from", "or", "had", "by",
        "not", "but", "what", "all", "we", "when", "your", "can", "an",
        "their", "if", "do", "will", "each", "about", "how", "them", "then",
        "so", "some", "would", "there", "us", "our", "out", "has", "more",
    },
    "es": {
        "el", "la", "de", "que", "y", "a", "en", "un", "ser", "se", "no",
        "haber", "por", "con", "su", "para", "como", "estar", "tener",
        "le", "lo", "todo", "pero", "mas", "más", "hacer", "o", "poder",
        "decir", "este", "ir", "otro", "ese", "si", "me", "ya", "ver",
        "porque", "dar", "cuando", "muy", "sin", "sobre", "mi", "también",
        "hasta", "hay", "donde", "quien", "desde", "nos", "durante", "una",
        "los", "las", "es", "del", "al", "esta", "son",
    },
    "fr": {
        "le", "la", "de", "et", "les", "des", "est", "un", "une", "du",
        "que", "qui", "dans", "pour", "pas", "sur", "ne", "se", "ce",
        "il", "elle", "nous", "vous", "ils", "au", "aux", "avec", "son",
        "sa", "ses", "mais", "ou", "si", "leur", "bien", "plus", "tout",
        "être", "avoir", "faire", "comme", "par", "sont", "cette", "votre",
    },
    "de": {
        "der", "die", "das", "und", "ist", "in", "den", "von", "zu", "mit",
        "sich", "des", "auf", "für", "nicht", "ein", "eine", "als", "auch",
        "es", "an", "werden", "aus", "er", "hat", "dass", "sie", "nach",
        "wird", "bei", "einer", "um", "am", "sind", "noch", "wie", "einem",
        "über", "so", "zum", "haben", "nur", "oder", "aber", "vor", "zur",
    },
    "it": {
        "il", "di", "che", "e", "la", "per", "un", "in", "una", "sono",
        "mi", "si", "ho", "ma", "lo", "con", "le", "se", "ti", "della",
        "del", "non", "i", "questo", "questa", "più", "anche", "come",
        "sua", "suo", "ci", "nel", "alla", "da", "gli", "essere", "hanno",
    },
    "pt": {
        "o", "a", "de", "que", "e", "do", "da", "em", "um", "para", "com",
        "não", "uma", "os", "no", "se", "na", "por", "mais", "as", "dos",
        "como", "mas", "foi", "ao", "ele", "das", "tem", "seu", "sua",
        "ou", "ser", "quando", "muito", "nos", "já", "está", "eu", "também",
    },
}

_SAMPLE_TEXT: Dict[str, str] = {
    "en": (
        "the quick brown fox jumps over the lazy dog and when you have a "
        "problem we can solve it for you because this is what we do every "
        "day with all of our customers who are happy to work with us"
    ),
    "es": (
        "el rápido zorro marrón salta sobre el perro perezoso y cuando "
        "usted tiene un problema nosotros podemos resolverlo porque esto "
        "es lo que hacemos todos los días con nuestros clientes que están "
        "contentos de trabajar con nosotros"
    ),
    "fr": (
        "le renard brun rapide saute par dessus le chien paresseux et "
        "quand vous avez un problème nous pouvons le résoudre parce que "
        "c'est ce que nous faisons tous les jours avec nos clients"
    ),
    "de": (
        "der schnelle braune fuchs springt über den faulen hund und wenn "
        "sie ein problem haben können wir es lösen denn das ist was wir "
        "jeden tag mit allen unseren kunden machen die gerne mit uns arbeiten"
    ),
    "it": (
        "la rapida volpe marrone salta sopra il cane pigro e quando avete "
        "un problema noi possiamo risolverlo perché questo è quello che "
        "facciamo ogni giorno con tutti i nostri clienti"
    ),
    "pt": (
        "a rápida raposa marrom salta sobre o cão preguiçoso e quando "
        "você tem um problema nós podemos resolver porque isso é o que "
        "fazemos todos os dias com todos os nossos clientes"
    ),
}


def _trigram_profile(text: str) -> Counter:
    padded = re.sub(r"\s+", " ", f" {text.lower()} ")
    grams = Counter(padded[i:i + 3] for i in range(len(padded) - 2))
    return grams


_PROFILES = {lang: _trigram_profile(text) for lang, text in _SAMPLE_TEXT.items()}


def _cosine(a: Counter, b: Counter) -> float:
    if not a or not b:
        return 0.0
    dot = sum(count * b[g] for g, count in a.items())
    norm_a = sum(c * c for c in a.values()) ** 0.5
    norm_b = sum(c * c for c in b.values()) ** 0.5
    return dot / (norm_a * norm_b)


class LanguageDetector(Protocol):
    def identify(self, text: str) -> Tuple[str, float]:
        """Return (language code, confidence in [0,1])."""
        ...


class HeuristicDetector:
    """Stopword-ratio plus trigram-profile scorer over a small language set."""

    def __init__(self, english_threshold: float = ENGLISH_STOPWORD_THRESHOLD):
        self.english_threshold = english_threshold

    def identify(self, text: str) -> Tuple[str, float]:
        tokens = [t for t in re.split(r"[^\w'áéíóúüñàèìòùâêîôûäöß]+", text.lower()) if t]
        if not tokens:
            return "und", 0.0
        profile = _trigram_profile(" ".join(tokens))
        scores: Dict[str, float] = {}
        ratios: Dict[str, float] = {}
        for lang, stopwords in STOPWORDS.items():
            ratio = sum(1 for t in tokens if t in stopwords) / len(tokens)
            ratios[lang] = ratio
            scores[lang] = ratio + 0.5 * _cosine(profile, _PROFILES[lang])
        best = max(scores, key=lambda lang: scores[lang])
        confidence = min(1.0, scores[best])
        if best == "en" and ratios["en"] < self.english_threshold:
            # not enough English function words to commit to English
            return "und", confidence
        if scores[best] <= 0.0:
            return "und", 0.0
        return best, confidence


def identify_language(text: str) -> Tuple[str, float]:
    return HeuristicDetector().identify(text)
