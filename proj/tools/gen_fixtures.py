#!/usr/bin/env python3
"""Writes the small HopeEDI-format fixtures under data/fixtures.

Rows are drawn from short hand-written comment pools. Label counts per file
are fixed by COUNTS so tests can check the loader against them.
"""

import pathlib
import random

POOLS = {
    "en": {
        "Hope_speech": [
            "You are all amazing, keep spreading love",
            "We stand together with equal rights for everyone",
            "Thank you for being so brave and honest",
            "Love is love and everyone deserves respect",
            "Stay strong, better days are coming",
            "So proud of this community, you inspire me",
            "Everyone deserves to be happy and safe",
            "Never give up on your dreams, we believe in you",
            "This message of kindness made my day",
            "All lives matter when we care for each other",
            "Sending hope and strength to every family",
            "Together we can build a brighter future",
        ],
        "Non_hope_speech": [
            "Who is watching this in 2020",
            "The camera quality is really bad",
            "First comment, like if you agree",
            "What is the name of the song at the end",
            "This video is too long and boring",
            "I came here after the news report",
            "The audio is out of sync again",
            "Nobody asked for this opinion",
            "Why is the thumbnail so misleading",
            "Subscribe to my channel for more videos",
            "The traffic in this city is terrible",
            "I do not understand the point of this",
            "He clearly has no idea what he is talking about",
            "The comments here are better than the video",
        ],
        "not-English": [
            "Fox News is pure Garbage!",
            "bhai kya baat hai bahut accha laga",
            "semma video thalaiva vera level",
            "adipoli aayittundu chetta",
        ],
    },
    "ta": {
        "Hope_speech": [
            "anbu dhaan ellaathaiyum maathum thalaiva",
            "nambikkai vaazhkai romba azhagu nanba",
            "ungaluku en vaazhthukkal sagodhara",
            "ellaarum samam dhaan anbaana makkal",
            "nee romba dhairiyamaana ponnu vaazhga",
            "நம்பிக்கை தான் வாழ்க்கை",
            "ottrumai dhaan namma valimai",
            "kandippa jeyippom nambikkai irukku",
        ],
        "Non_hope_speech": [
            "indha padam eppo release aagum",
            "semma comedy scene anna",
            "yaaru indha paattu paadinadhu",
            "thalaivar padam pakka ready",
            "video romba neelam aa irukku",
            "enna da idhu romba mokka",
            "naalaikku kalloori leave ah",
            "இந்த படம் சூப்பர்",
            "romba naal aachu unga video paathu",
            "kadai la kootam romba adhigam",
            "trailer paatha udane pudichirukku",
        ],
        "not-Tamil": [
            "This movie is going to be a blockbuster",
            "Please upload the full video",
            "bhai ye gaana bahut accha hai",
            "What a performance by the actor",
            "I love this song so much",
        ],
    },
    "ml": {
        "Hope_speech": [
            "ningal cheyyunnathu valiya karyam aanu nanni",
            "ellarum onnaanu sneham mathram mathi",
            "pratheeksha kaividaruthu njangal koode undu",
            "dhairyamaayi munnottu pokoo ningal jeyikkum",
            "നമ്മൾ ഒന്നാണ് സ്നേഹം മാത്രം",
            "ee samooham ningale orthu abhimaanikkunnu",
            "santhoshamaayi irikkoo ellaam sheriyaakum",
        ],
        "Non_hope_speech": [
            "ee padam eppol release aakum",
            "adipoli trailer ikka",
            "paattu kollaam pakshe video mosham",
            "aarokke innu kaanunnu",
            "kidilan acting mone",
            "ithu ethu sthalam aanu",
            "ഈ പാട്ട് കിടിലൻ",
            "video kurachu neelam koodi poyi",
            "theatre il pokaan kaathirikkunnu",
            "ente ammayude ishtappetta paattu",
        ],
        "not-malayalam": [
            "Waiting for the release next week",
            "This trailer gave me goosebumps",
            "kya scene hai bhai mast",
            "Best movie of the year for sure",
        ],
    },
}

# (Hope, NotHope, NotLanguage) per file.
COUNTS = {
    "en": {"train": (14, 44, 2), "dev": (6, 23, 1), "test": (7, 22, 1)},
    "ta": {"train": (12, 38, 10), "dev": (5, 20, 5), "test": (6, 19, 5)},
    "ml": {"train": (13, 40, 7), "dev": (6, 20, 4), "test": (6, 20, 4)},
}

DECORATIONS = ["", "", "", "!", "!!", " 🙏", " ❤️", " :)", "...", " 👍"]


def main() -> None:
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures"
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(1905)
    for lang, splits in COUNTS.items():
        labels = list(POOLS[lang])
        for split, counts in splits.items():
            rows = []
            for label, count in zip(labels, counts):
                pool = POOLS[lang][label]
                for i in range(count):
                    text = pool[i % len(pool)]
                    if i >= len(pool) or rng.random() < 0.3:
                        text += rng.choice(DECORATIONS)
                    rows.append((text, label))
            rng.shuffle(rows)
            with open(out_dir / f"{lang}_{split}.tsv", "w", encoding="utf-8") as f:
                for text, label in rows:
                    f.write(f"{text}\t{label}\n")
            print(lang, split, counts)


if __name__ == "__main__":
    main()
