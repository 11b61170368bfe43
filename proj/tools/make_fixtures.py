#!/usr/bin/env python3
"""Regenerate tests/fixtures/corpus20 (deterministic)."""

import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "corpus20"

SYLLABLES = ["ka", "lo", "mi", "ter", "vos", "quin", "dra", "pel", "sor", "ux", "bri", "zan", "fol", "gem", "hup"]

FILLER = (
    "this is one of the pages that we keep for the people who come here and it has some of "
    "the things that they want to read about when they have time to look at it with their friends"
).split()


def word(rng, used):
    while True:
        w = "".join(rng.choice(SYLLABLES) for _ in range(3))
        if w not in used:
            used.add(w)
            return w


def page(title, body_words):
    lines = [" ".join(body_words[i:i + 12]) for i in range(0, len(body_words), 12)]
    paras = "\n".join(f"<p>{line}</p>" for line in lines)
    return (
        "<!DOCTYPE html>\n<html>\n<head>\n"
        f"<title>{title}</title>\n"
        "<script>var tracking = 'ignored words here';</script>\n"
        "</head>\n<body>\n"
        f"{paras}\n"
        "</body>\n</html>\n"
    )


def body(rng, salient, extra=()):
    words = []
    for w in salient:
        words += [w] * 3
    words += list(extra)
    words += FILLER
    rng.shuffle(words)
    return words


def main():
    rng = random.Random(20090201)
    used = set()
    docs = []

    for i in range(5):
        title_words = [word(rng, used) for _ in range(3)]
        salient = [word(rng, used) for _ in range(8)]
        title = " ".join(w.capitalize() for w in title_words)
        docs.append((f"u{i:02d}", f"http://unique{i}.example.org/home/", title,
                     page(title, body(rng, salient, title_words))))

    for i in range(10):
        title_words = [word(rng, used) for _ in range(2)]
        salient = [word(rng, used) for _ in range(6)]
        template = ["welcome", "new", "website", "my"] * 4
        title = " ".join(w.capitalize() for w in title_words) + " Templates"
        docs.append((f"d{i:02d}", f"http://templates{i}.example.net/free-website-templates.html", title,
                     page(title, body(rng, salient, template + title_words))))

    for i in range(5):
        salient = [word(rng, used) for _ in range(8)]
        title = "Welcome to my new website!"
        docs.append((f"w{i:02d}", f"http://Welcome{i}.Example.COM:80/index.html#top", title,
                     page(title, body(rng, salient))))

    docs.append(("r00", "http://short.example.org/", "Tiny page", page("Tiny page", ["just", "a", "stub"])))
    foreign = ("la casa del sol es grande y la luz entra por las ventanas durante el dia entero sin parar "
               "cuando llega el verano todos los vecinos salen a la calle para hablar de sus cosas favoritas "
               "mientras los perros corren por el parque junto al rio que cruza la ciudad vieja").split()
    docs.append(("r01", "http://foreign.example.es/", "Pagina personal", page("Pagina personal", foreign)))

    ROOT.mkdir(parents=True, exist_ok=True)
    pages = ROOT / "pages"
    pages.mkdir(exist_ok=True)
    with open(ROOT / "manifest.jsonl", "w", newline="\n") as manifest:
        for n, (doc_id, uri, _title, html) in enumerate(docs):
            name = f"{doc_id}.html"
            (pages / name).write_text(html, newline="\n")
            day = 1 + n % 28
            manifest.write(json.dumps({"id": doc_id, "uri": uri, "fetched_at": f"2009-03-{day:02d}T12:00:00Z",
                                       "path": f"pages/{name}"}) + "\n")

    # Archived copies of the five unique pages, spread over several windows.
    snaps = ROOT / "snapshots"
    snaps.mkdir(exist_ok=True)
    rows = []
    stamps = ["2008-08-10T00:00:00Z", "2007-02-15T00:00:00Z", "2007-02-20T00:00:00Z", "2004-08-05T00:00:00Z",
              "1999-02-03T00:00:00Z"]
    for i, (doc_id, uri, title, html) in enumerate(docs[:5]):
        for j, stamp in enumerate(stamps[: 2 + i % 4]):
            old_title = title if j == 0 else (title.split()[0] + " " + "Archive" * j)
            text = html.replace(f"<title>{title}</title>", f"<title>{old_title}</title>")
            if j >= 2:
                text = text.replace("</body>", "<p>older content that was later removed from this page</p></body>")
            name = f"{doc_id}-{j}.html"
            (snaps / name).write_text(text, newline="\n")
            rows.append(f"{uri}\t{stamp}\tsnapshots/{name}")
    (ROOT / "snapshots.tsv").write_text("\n".join(rows) + "\n", newline="\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
