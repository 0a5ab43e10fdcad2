#include "benqc/builtin_data.hpp"

namespace benqc {

std::string_view builtin_taxonomy_text() {
    static constexpr std::string_view text = R"BQC(# Two-layer question class inventory.
# Format: COARSE<TAB>FINE1,FINE2,...  Lines starting with '#' are comments.
# Repeating a coarse class on a later line appends fine classes, so local
# extensions can be kept in a separate file concatenated after this one.
PER	GROUP,INDIVIDUAL,APPELLATION,INVENTOR/DISCOVERER,POSITION,OTHER
ORG	BANK,COMPANY,SPORT-TEAM,UNIVERSITY,OTHER
LOC	CITY,CONTINENT,COUNTRY,ISLAND,LAKE,MOUNTAIN,OCEAN,ADDRESS,RIVER,OTHER
TEM	DATE,TIME,YEAR,MONTH,WEEK,DAY,OTHER
NUM	AGE,AREA,COUNT,LENGTH,FREQUENCY,MONEY,PERCENT,PHONE-NUMBER,SPEED,WEIGHT,TEMPERATURE,OTHER
METH	NATURAL,ARTIFICIAL
REA	INSTRUMENTAL,NON-INSTRUMENTAL
DEF	ANIMAL,BODY,CREATION,CURRENCY,FOOD,INSTRUMENT,OTHER,PLANT,PRODUCT,SPORT,SYMBOL,TECHNIQUE,TERM,WORD
MISC	COLOR,CURRENCY,ENTERTAINMENT,LANGUAGE,OTHER,VEHICLE,AFFAIR,DISEASE,PRESS,RELIGION
)BQC";
    return text;
}

std::string_view builtin_interrogatives_text() {
    static constexpr std::string_view text = R"BQC(# Interrogative lexicon (WX notation): word<TAB>type
# Types: SI = simple/unit, DI = dual, CI = compound/composite.
# Dual interrogatives are normally detected from reduplication in context,
# so no word is inherently tagged DI here; the tag is accepted for
# user-supplied entries.
ke	SI
kArA	SI
kAkeV	SI
kAra	SI
kAxeVra	SI
ki	SI
kI	SI
keVna	SI
koWAyZa	SI
koVna	SI
koVnati	SI
kawa	SI
kayZa	SI
kaKana	SI
keVmana	SI
kisera	SI
kiseV	SI
kawajana	CI
kawabAra	CI
kawakRaNa	CI
kawaxina	CI
kayZati	CI
kawaguli	CI
kawagulo	CI
kiBAbeV	CI
keVmaneV	CI
)BQC";
    return text;
}

std::string_view builtin_gazetteers_text() {
    static constexpr std::string_view text = R"BQC(# Related-word gazetteers (WX notation): listname<TAB>word
date	janmaxina
date	xina
date	xaSaka
date	GantA
date	sapwAha
date	mAsa
date	baCara
date	sAla
date	yuga
date	muhUrwa
food	KAbAra
food	mACa
food	KAxya
food	mAKana
food	Pala
food	Alu
food	miRti
food	sbAxa
food	xuXa
food	cAla
human-authority	narapawi
human-authority	rAjA
human-authority	praXAnamanwrI
human-authority	bicArapawi
human-authority	mahAparicAlaka
human-authority	ceyZAramyAna
human-authority	jenArela
human-authority	sulawAna
human-authority	samrAta
human-authority	mahAXyakRa
human-authority	rARtrapawi
human-authority	neVwA
)BQC";
    return text;
}

std::string_view builtin_sample_jsonl() {
    static constexpr std::string_view text = R"BQC({"id": "mini-001", "text": "ke gOdZa prawiRTA karena ?", "tokens": [{"form": "ke", "pos": "WQ", "chunk": "O"}, {"form": "gOdZa", "pos": "NNP", "chunk": "B-NP", "ne": "Location"}, {"form": "prawiRTA", "pos": "NN", "chunk": "O"}, {"form": "karena", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "PER", "fine": "INDIVIDUAL", "split": "train"}
{"id": "mini-002", "text": "sinXu saByawAra safgeV koVna saByawAra mila KuzjeV pAoVyZA yAyZa ?", "tokens": [{"form": "sinXu", "pos": "NNP", "chunk": "B-NP", "ne": "Location"}, {"form": "saByawAra", "pos": "NN", "chunk": "I-NP"}, {"form": "safgeV", "pos": "PSP", "chunk": "O"}, {"form": "koVna", "pos": "WQ", "chunk": "O"}, {"form": "saByawAra", "pos": "NN", "chunk": "B-NP"}, {"form": "mila", "pos": "NN", "chunk": "I-NP"}, {"form": "KuzjeV", "pos": "VM", "chunk": "O"}, {"form": "pAoVyZA", "pos": "VM", "chunk": "O"}, {"form": "yAyZa", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "ORG", "fine": "OTHER", "split": "train"}
{"id": "mini-003", "text": "gOdZa koWAyZa abashiwa ?", "tokens": [{"form": "gOdZa", "pos": "NNP", "chunk": "B-NP", "ne": "Location"}, {"form": "koWAyZa", "pos": "WQ", "chunk": "O"}, {"form": "abashiwa", "pos": "JJ", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "LOC", "fine": "CITY", "split": "train"}
{"id": "mini-004", "text": "BAikiM-2 kawa baCara karmakRama Cila ?", "tokens": [{"form": "BAikiM-2", "pos": "NNP", "chunk": "B-NP"}, {"form": "kawa", "pos": "WQ", "chunk": "O"}, {"form": "baCara", "pos": "NN", "chunk": "B-NP"}, {"form": "karmakRama", "pos": "JJ", "chunk": "O"}, {"form": "Cila", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "TEM", "fine": "YEAR", "split": "train"}
{"id": "mini-005", "text": "sUrya WeVkeV Sani graheVra gadZa xUrawba kawa ?", "tokens": [{"form": "sUrya", "pos": "NNP", "chunk": "B-NP"}, {"form": "WeVkeV", "pos": "PSP", "chunk": "O"}, {"form": "Sani", "pos": "NNP", "chunk": "B-NP"}, {"form": "graheVra", "pos": "NN", "chunk": "I-NP"}, {"form": "gadZa", "pos": "JJ", "chunk": "O"}, {"form": "xUrawba", "pos": "NN", "chunk": "B-NP"}, {"form": "kawa", "pos": "WQ", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "NUM", "fine": "LENGTH", "split": "train"}
{"id": "mini-006", "text": "AryasaByawA mahilArA kiBAbeV cula bAzXawa ?", "tokens": [{"form": "AryasaByawA", "pos": "NNP", "chunk": "B-NP"}, {"form": "mahilArA", "pos": "NN", "chunk": "B-NP"}, {"form": "kiBAbeV", "pos": "WQ", "chunk": "O"}, {"form": "cula", "pos": "NN", "chunk": "B-NP"}, {"form": "bAzXawa", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "METH", "fine": "ARTIFICIAL", "split": "train"}
{"id": "mini-007", "text": "AryasaByawAkeV keVna bExika saByawA balA hayZa ?", "tokens": [{"form": "AryasaByawAkeV", "pos": "NNP", "chunk": "B-NP"}, {"form": "keVna", "pos": "WQ", "chunk": "O"}, {"form": "bExika", "pos": "JJ", "chunk": "B-NP"}, {"form": "saByawA", "pos": "NN", "chunk": "I-NP"}, {"form": "balA", "pos": "VM", "chunk": "O"}, {"form": "hayZa", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "REA", "fine": "NON-INSTRUMENTAL", "split": "train"}
{"id": "mini-008", "text": "beVxa ki ?", "tokens": [{"form": "beVxa", "pos": "NN", "chunk": "B-NP"}, {"form": "ki", "pos": "WQ", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "DEF", "fine": "TERM", "split": "train"}
{"id": "mini-009", "text": "Arya samAjeV cArati barNa ki ki Cila ?", "tokens": [{"form": "Arya", "pos": "NNP", "chunk": "B-NP"}, {"form": "samAjeV", "pos": "NN", "chunk": "I-NP"}, {"form": "cArati", "pos": "QC", "chunk": "B-NP"}, {"form": "barNa", "pos": "NN", "chunk": "I-NP"}, {"form": "ki", "pos": "WQ", "chunk": "O"}, {"form": "ki", "pos": "WQ", "chunk": "O"}, {"form": "Cila", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "MISC", "fine": "OTHER", "split": "train"}
{"id": "mini-010", "text": "ke gedZera sbAXIna narapawi Cilena ?", "tokens": [{"form": "ke", "pos": "WQ", "chunk": "O"}, {"form": "gedZera", "pos": "NNP", "chunk": "B-NP", "ne": "Location"}, {"form": "sbAXIna", "pos": "JJ", "chunk": "B-NP"}, {"form": "narapawi", "pos": "NN", "chunk": "I-NP"}, {"form": "Cilena", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "PER", "fine": "POSITION", "split": "train"}
{"id": "mini-011", "text": "koVna saByawAkeV bExika saByawA balA hayZa ?", "tokens": [{"form": "koVna", "pos": "WQ", "chunk": "O"}, {"form": "saByawAkeV", "pos": "NN", "chunk": "B-NP"}, {"form": "bExika", "pos": "JJ", "chunk": "B-NP"}, {"form": "saByawA", "pos": "NN", "chunk": "I-NP"}, {"form": "balA", "pos": "VM", "chunk": "O"}, {"form": "hayZa", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "ORG", "fine": "OTHER", "split": "test"}
{"id": "mini-012", "text": "BArawera praWama rARtrapawi ke Cilena ?", "tokens": [{"form": "BArawera", "pos": "NNP", "chunk": "B-NP", "ne": "Location"}, {"form": "praWama", "pos": "JJ", "chunk": "I-NP"}, {"form": "rARtrapawi", "pos": "NN", "chunk": "I-NP"}, {"form": "ke", "pos": "WQ", "chunk": "O"}, {"form": "Cilena", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "PER", "fine": "POSITION", "split": "test"}
{"id": "mini-013", "text": "koVna byAMka 1806 sAleV sWApiwa hayZa ?", "tokens": [{"form": "koVna", "pos": "WQ", "chunk": "O"}, {"form": "byAMka", "pos": "NN", "chunk": "B-NP"}, {"form": "1806", "pos": "QC", "chunk": "B-NP"}, {"form": "sAleV", "pos": "NN", "chunk": "I-NP"}, {"form": "sWApiwa", "pos": "VM", "chunk": "O"}, {"form": "hayZa", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "ORG", "fine": "BANK", "split": "test"}
{"id": "mini-014", "text": "koVna naxIra wIreV kalakAwA abashiwa ?", "tokens": [{"form": "koVna", "pos": "WQ", "chunk": "O"}, {"form": "naxIra", "pos": "NN", "chunk": "B-NP"}, {"form": "wIreV", "pos": "NN", "chunk": "I-NP"}, {"form": "kalakAwA", "pos": "NNP", "chunk": "B-NP", "ne": "Location"}, {"form": "abashiwa", "pos": "JJ", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "LOC", "fine": "RIVER", "split": "train"}
{"id": "mini-015", "text": "APrikAra bqhawwama xeSa koVnati ?", "tokens": [{"form": "APrikAra", "pos": "NNP", "chunk": "B-NP", "ne": "Location"}, {"form": "bqhawwama", "pos": "JJ", "chunk": "B-NP"}, {"form": "xeSa", "pos": "NN", "chunk": "I-NP"}, {"form": "koVnati", "pos": "WQ", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "LOC", "fine": "COUNTRY", "split": "test"}
{"id": "mini-016", "text": "BArawa kaKana sbAXIna hayZa ?", "tokens": [{"form": "BArawa", "pos": "NNP", "chunk": "B-NP", "ne": "Location"}, {"form": "kaKana", "pos": "WQ", "chunk": "O"}, {"form": "sbAXIna", "pos": "JJ", "chunk": "O"}, {"form": "hayZa", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "TEM", "fine": "DATE", "split": "train"}
{"id": "mini-017", "text": "baCareVra koVna mAsa sabaceVyZeV garama ?", "tokens": [{"form": "baCareVra", "pos": "NN", "chunk": "B-NP"}, {"form": "koVna", "pos": "WQ", "chunk": "O"}, {"form": "mAsa", "pos": "NN", "chunk": "B-NP"}, {"form": "sabaceVyZeV", "pos": "RB", "chunk": "O"}, {"form": "garama", "pos": "JJ", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "TEM", "fine": "MONTH", "split": "test"}
{"id": "mini-018", "text": "bAMlAxeSe arWanIwi kaleja kayZati ?", "tokens": [{"form": "bAMlAxeSe", "pos": "NNP", "chunk": "B-NP", "ne": "Location"}, {"form": "arWanIwi", "pos": "NN", "chunk": "I-NP"}, {"form": "kaleja", "pos": "NN", "chunk": "I-NP"}, {"form": "kayZati", "pos": "WQ", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "NUM", "fine": "COUNT", "split": "train"}
{"id": "mini-019", "text": "cAleVra xAma kawa ?", "tokens": [{"form": "cAleVra", "pos": "NN", "chunk": "B-NP"}, {"form": "xAma", "pos": "NN", "chunk": "I-NP"}, {"form": "kawa", "pos": "WQ", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "NUM", "fine": "MONEY", "split": "test"}
{"id": "mini-020", "text": "prAkqwika upAyZeV kiBAbeV jala SoXana karA yAyZa ?", "tokens": [{"form": "prAkqwika", "pos": "JJ", "chunk": "B-NP"}, {"form": "upAyZeV", "pos": "NN", "chunk": "I-NP"}, {"form": "kiBAbeV", "pos": "WQ", "chunk": "O"}, {"form": "jala", "pos": "NN", "chunk": "B-NP"}, {"form": "SoXana", "pos": "NN", "chunk": "I-NP"}, {"form": "karA", "pos": "VM", "chunk": "O"}, {"form": "yAyZa", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "METH", "fine": "NATURAL", "split": "test"}
{"id": "mini-021", "text": "ki xbArA kAgaja kAtA yAyZa ?", "tokens": [{"form": "ki", "pos": "WQ", "chunk": "O"}, {"form": "xbArA", "pos": "PSP", "chunk": "O"}, {"form": "kAgaja", "pos": "NN", "chunk": "B-NP"}, {"form": "kAtA", "pos": "VM", "chunk": "O"}, {"form": "yAyZa", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "REA", "fine": "INSTRUMENTAL", "split": "test"}
{"id": "mini-022", "text": "KAxya ki |", "tokens": [{"form": "KAxya", "pos": "NN", "chunk": "B-NP"}, {"form": "ki", "pos": "WQ", "chunk": "O"}, {"form": "|", "pos": "SYM", "chunk": "O"}], "end_marker": "|", "coarse": "DEF", "fine": "FOOD", "split": "train"}
{"id": "mini-023", "text": "upaniRaxa ki |", "tokens": [{"form": "upaniRaxa", "pos": "NN", "chunk": "B-NP"}, {"form": "ki", "pos": "WQ", "chunk": "O"}, {"form": "|", "pos": "SYM", "chunk": "O"}], "end_marker": "|", "coarse": "DEF", "fine": "TERM", "split": "test"}
{"id": "mini-024", "text": "jApAneVra muxrA ki ?", "tokens": [{"form": "jApAneVra", "pos": "NNP", "chunk": "B-NP", "ne": "Location"}, {"form": "muxrA", "pos": "NN", "chunk": "I-NP"}, {"form": "ki", "pos": "WQ", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "MISC", "fine": "CURRENCY", "split": "test"}
{"id": "mini-025", "text": "kArA sinXu saByawA gadZeV wuleVCila ?", "tokens": [{"form": "kArA", "pos": "WQ", "chunk": "O"}, {"form": "sinXu", "pos": "NNP", "chunk": "B-NP", "ne": "Location"}, {"form": "saByawA", "pos": "NN", "chunk": "I-NP"}, {"form": "gadZeV", "pos": "VM", "chunk": "O"}, {"form": "wuleVCila", "pos": "VM", "chunk": "O"}, {"form": "?", "pos": "SYM", "chunk": "O"}], "end_marker": "?", "coarse": "PER", "fine": "GROUP", "split": "test"}
)BQC";
    return text;
}

std::string_view builtin_sample_manifest_json() {
    static constexpr std::string_view text = R"BQC({
  "total": 25,
  "train": 14,
  "test": 11,
  "per_class": {
    "PER": 4,
    "ORG": 3,
    "LOC": 3,
    "TEM": 3,
    "NUM": 3,
    "METH": 2,
    "REA": 2,
    "DEF": 3,
    "MISC": 2
  }
}
)BQC";
    return text;
}

}  // namespace benqc
