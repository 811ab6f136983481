from conceal_scan.language import HeuristicDetector

from conftest import ENGLISH_HTML, SPANISH_HTML

DETECTOR = HeuristicDetector()

SAMPLES = {
    "en": "the weather is nice today and we are going to the market with "
          "all of our friends because they have the best prices in town",
    "es": "hola amigo este es un mensaje para usted y esperamos que todo "
          "vaya muy bien con las cosas que usted hace todos los dias",
    "fr": "bonjour mon ami ceci est un message pour vous et nous espérons "
          "que tout va bien avec les choses que vous faites tous les jours",
    "de": "hallo mein freund das ist eine nachricht für dich und wir hoffen "
          "dass alles gut geht mit den dingen die du jeden tag machst",
}


def test_identifies_each_language():
    for expected, text in SAMPLES.items():
        lang, confidence = DETECTOR.identify(text)
        assert lang == expected, f"{expected}: got {lang}"
        assert confidence > 0


def test_empty_and_junk_are_undetermined():
    assert DETECTOR.identify("")[0] == "und"
    assert DETECTOR.identify("zzz qqq xxx 123 456")[0] != "en"


def test_english_needs_stopword_evidence():
    # letters trigram-similar to English but with no English stopwords
    lang, _ = DETECTOR.identify("zorgon blarpt kljs vrxt plmn qwrtz")
    assert lang != "en"


def test_fixture_corpus_texts():
    assert DETECTOR.identify(
        "hello friend this is a simple message for you and we hope that "
        "you are doing well with all of the things that you do"
    )[0] == "en"
    assert DETECTOR.identify(
        "hola amigo este es un mensaje muy simple para usted y esperamos "
        "que todo vaya bien con las cosas que usted hace"
    )[0] != "en"
