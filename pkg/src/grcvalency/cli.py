"""Command-line entry point for reproducible batch runs.

Exit codes: 0 success, 1 usage or I/O failure, 2 partial data failure
(some input files unusable, the rest processed), 3 empty result set.
"""

import argparse
import sys
from pathlib import Path

from . import __version__
from .betacode import BetaCodeError, beta_to_unicode
from .casestudy import load_config, run_case_study, write_case_study_outputs
from .frames import extract_entries
from .lexicon import (
    FORMAT_VERSION,
    Lexicon,
    LexiconFormatError,
    constructions_for_verb,
    diff_constructions,
    frame_frequencies,
    query_entries,
    read_lexicon,
    stats_basic,
    stats_by_author,
    write_lexicon,
)
from .manifest import build_manifest, write_manifest
from .semantics import VectorSpaceError, load_vector_space
from .treebank import (
    TreebankParseError,
    load_manifest,
    parse_treebank_file,
    validate_sentence,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARTIAL = 2
EXIT_EMPTY = 3

_ENCODING = "utf-8"


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; the contract here reserves 2 for
    # partial data failures, so usage errors are forced onto exit 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grcvalency", description=__doc__)
    parser.add_argument(
        "--version",
        action="version",
        version=f"grcvalency {__version__} (lexicon format {FORMAT_VERSION})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    extract = sub.add_parser("extract", help="build a lexicon from a treebank XML directory")
    extract.add_argument("treebank_dir")
    extract.add_argument("-o", "--output", default="lexicon.tsv")
    extract.add_argument("--manifest", help="sidecar TSV: filename<TAB>author<TAB>title")
    extract.add_argument(
        "--include-participles",
        action=argparse.BooleanOptionalAction,
        default=True,
    )
    extract.add_argument(
        "--figure1-layout",
        action="store_true",
        help="emit the eight-column layout without root_id",
    )
    extract.set_defaults(func=cmd_extract)

    stats = sub.add_parser("stats", help="aggregate tables over a lexicon TSV")
    stats.add_argument("lexicon")
    group = stats.add_mutually_exclusive_group()
    group.add_argument("--basic", action="store_true")
    group.add_argument("--by-author", action="store_true")
    group.add_argument("--frames", type=int, metavar="TOP_K")
    stats.set_defaults(func=cmd_stats)

    query = sub.add_parser("query", help="filter lexicon entries")
    query.add_argument("lexicon")
    query.add_argument("--verb")
    query.add_argument("--author")
    query.add_argument("--title")
    query.add_argument("--voice")
    query.add_argument("--frame-contains")
    query.add_argument("--realization")
    query.add_argument("--mediator")
    query.set_defaults(func=cmd_query)

    constructions = sub.add_parser(
        "constructions", help="construction inventory (and diff) for one verb"
    )
    constructions.add_argument("lexicon")
    constructions.add_argument("--verb", required=True)
    constructions.add_argument("--min-count", type=int, default=1)
    constructions.add_argument("--min-authors", type=int, default=1)
    constructions.add_argument(
        "--known-frames", help="file with one known frame per line; switches to diff output"
    )
    constructions.set_defaults(func=cmd_constructions)

    casestudy = sub.add_parser("casestudy", help="run the formulaic-vs-baseline comparison")
    casestudy.add_argument("--config", required=True)
    casestudy.add_argument("--treebank-dir")
    casestudy.add_argument("--lexicon", dest="lexicon_path")
    casestudy.add_argument("--vectors", dest="vector_space_path")
    casestudy.add_argument("--spans", dest="formula_span_path")
    casestudy.add_argument("--output-dir")
    casestudy.add_argument("--min-epic-tokens", type=int)
    casestudy.add_argument("--min-object-types", type=int)
    casestudy.set_defaults(func=cmd_casestudy)

    betacode = sub.add_parser("betacode", help="transcode Beta Code to Unicode Greek")
    betacode.add_argument("text", nargs="?")
    betacode.add_argument("--file", dest="path")
    betacode.set_defaults(func=cmd_betacode)

    return parser


def cmd_extract(args) -> int:
    directory = Path(args.treebank_dir)
    if not directory.is_dir():
        return _fail(f"not a directory: {directory}")
    meta = {}
    if args.manifest:
        try:
            meta = load_manifest(args.manifest)
        except (OSError, ValueError) as exc:
            return _fail(str(exc))

    files = sorted(directory.glob("*.xml"))
    trees = []
    report_rows = []  # (file, sentence_id, kind, detail)
    parsed_paths = []
    failed_files = 0
    for path in files:
        try:
            data = path.read_bytes()
            file_trees, issues = parse_treebank_file(data, fallback_meta=meta.get(path.name))
        except (OSError, TreebankParseError) as exc:
            failed_files += 1
            report_rows.append((path.name, "", "file_error", str(exc)))
            continue
        parsed_paths.append(path)
        for issue in issues:
            report_rows.append(
                (path.name, str(issue.sentence_id or ""), "word_skipped", issue.message)
            )
        for tree in file_trees:
            validation = validate_sentence(tree)
            if validation.ok:
                trees.append(tree)
            else:
                report_rows.append(
                    (
                        path.name,
                        str(tree.sentence_id),
                        "sentence_excluded",
                        "; ".join(validation.messages()),
                    )
                )

    entries = extract_entries(trees, include_participles=args.include_participles)
    output = Path(args.output)
    try:
        write_lexicon(Lexicon(entries), output, figure1_layout=args.figure1_layout)
    except OSError as exc:
        return _fail(str(exc))

    report_path = output.with_name(output.name + ".report.tsv")
    lines = ["file\tsentence_id\tkind\tdetail"]
    lines += ["\t".join(row) for row in report_rows]
    report_path.write_text("\n".join(lines) + "\n", encoding=_ENCODING)

    manifest = build_manifest(
        command="extract",
        config={
            "treebank_dir": str(directory),
            "include_participles": args.include_participles,
            "figure1_layout": args.figure1_layout,
            "manifest": args.manifest or "",
            "output": str(output),
        },
        input_paths=parsed_paths,
    )
    write_manifest(manifest, output.with_name(output.name + ".manifest.json"))

    print(
        f"extracted {len(entries)} entries from {len(parsed_paths)} file(s); "
        f"{failed_files} file(s) failed; report: {report_path}"
    )
    return EXIT_PARTIAL if failed_files else EXIT_OK


def _load_lexicon(path):
    try:
        return read_lexicon(path)
    except (OSError, LexiconFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None


def cmd_stats(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    if lexicon is None:
        return EXIT_USAGE
    if args.by_author:
        print("author\tentries")
        for author, count in stats_by_author(lexicon):
            print(f"{author}\t{count}")
    elif args.frames is not None:
        if args.frames < 0:
            return _fail("--frames takes a non-negative count")
        print("frame\tcount")
        for frame, count in frame_frequencies(lexicon, args.frames):
            print(f"{frame}\t{count}")
    else:
        print("metric\tvalue")
        for metric, value in stats_basic(lexicon).items():
            print(f"{metric}\t{value}")
    return EXIT_OK


def _print_entries(entries) -> None:
    print("\t".join(
        ("author", "title", "subdoc", "verb", "voice", "sentence_id", "root_id",
         "frame", "frame_fillers")
    ))
    for e in entries:
        print(
            f"{e.author}\t{e.title}\t{e.subdoc}\t{e.verb}\t{e.voice}"
            f"\t{e.sentence_id}\t{e.root_id}\t{e.frame}\t{e.frame_fillers}"
        )


def cmd_query(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    if lexicon is None:
        return EXIT_USAGE
    try:
        entries = query_entries(
            lexicon,
            verb=args.verb,
            author=args.author,
            title=args.title,
            voice=args.voice,
            frame_contains=args.frame_contains,
            realization=args.realization,
            mediator=args.mediator,
        )
    except LexiconFormatError as exc:
        # realization/mediator filters parse frame strings and can trip
        # over hand-edited files
        return _fail(str(exc))
    _print_entries(entries)
    return EXIT_OK if entries else EXIT_EMPTY


def cmd_constructions(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    if lexicon is None:
        return EXIT_USAGE
    if args.known_frames:
        try:
            known = [
                line.strip()
                for line in Path(args.known_frames).read_text(encoding=_ENCODING).splitlines()
                if line.strip()
            ]
        except OSError as exc:
            return _fail(str(exc))
        only_lexicon, only_known = diff_constructions(lexicon, args.verb, known)
        only_lexicon = [
            r for r in only_lexicon
            if r.count >= args.min_count and len(r.authors) >= args.min_authors
        ]
        print("side\tframe\tcount\tauthors")
        for record in only_lexicon:
            print(f"lexicon\t{record.frame}\t{record.count}\t{';'.join(sorted(record.authors))}")
        for frame in only_known:
            print(f"known\t{frame}\t\t")
        return EXIT_OK if (only_lexicon or only_known) else EXIT_EMPTY
    records = constructions_for_verb(
        lexicon, args.verb, min_count=args.min_count, min_authors=args.min_authors
    )
    print("verb\tframe\tcount\tauthors")
    for record in records:
        print(f"{record.verb}\t{record.frame}\t{record.count}\t{';'.join(sorted(record.authors))}")
    return EXIT_OK if records else EXIT_EMPTY


def cmd_casestudy(args) -> int:
    overrides = {
        "treebank_dir": args.treebank_dir,
        "lexicon_path": args.lexicon_path,
        "vector_space_path": args.vector_space_path,
        "formula_span_path": args.formula_span_path,
        "output_dir": args.output_dir,
        "min_epic_tokens": args.min_epic_tokens,
        "min_object_types": args.min_object_types,
    }
    try:
        config = load_config(args.config, overrides=overrides)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    for key in ("treebank_dir", "lexicon_path", "vector_space_path", "formula_span_path"):
        if not getattr(config, key):
            return _fail(f"config is missing {key}")

    directory = Path(config.treebank_dir)
    if not directory.is_dir():
        return _fail(f"not a directory: {directory}")
    meta = {}
    if config.manifest_path:
        try:
            meta = load_manifest(config.manifest_path)
        except (OSError, ValueError) as exc:
            return _fail(str(exc))
    corpus = []
    input_paths = []
    try:
        for path in sorted(directory.glob("*.xml")):
            trees, _ = parse_treebank_file(path.read_bytes(), fallback_meta=meta.get(path.name))
            corpus.extend(tree for tree in trees if validate_sentence(tree).ok)
            input_paths.append(path)
        lexicon = read_lexicon(config.lexicon_path)
        space = load_vector_space(config.vector_space_path)
        result = run_case_study(config, corpus, lexicon, space)
    except (OSError, TreebankParseError, LexiconFormatError, VectorSpaceError, ValueError) as exc:
        return _fail(str(exc))

    paths = write_case_study_outputs(result, config.output_dir)
    manifest = build_manifest(
        command="casestudy",
        config={
            "epic_works": ["|".join(w) for w in config.epic_works],
            "baseline_exclusions": ["|".join(w) for w in config.baseline_exclusions],
            "min_epic_tokens": config.min_epic_tokens,
            "min_object_types": config.min_object_types,
            "include_participles": config.include_participles,
            "ks_exact_limit": config.ks_exact_limit,
            "variance_convention": "sample (n-1)",
            "quartile_convention": "midpoint-inclusive",
        },
        input_paths=input_paths
        + [config.lexicon_path, config.vector_space_path, config.formula_span_path],
    )
    write_manifest(manifest, Path(config.output_dir) / "manifest.json")
    print(
        f"reported {len(result.comparisons)} verb(s); outputs: "
        + ", ".join(str(p) for p in paths.values())
    )
    return EXIT_OK if result.comparisons else EXIT_EMPTY


def cmd_betacode(args) -> int:
    if args.text is None and not args.path:
        return _fail("provide TEXT or --file")
    if args.text is not None and args.path:
        return _fail("provide either TEXT or --file, not both")
    try:
        lines = (
            [args.text]
            if args.text is not None
            else Path(args.path).read_text(encoding=_ENCODING).splitlines()
        )
        for line in lines:
            print(beta_to_unicode(line))
    except (OSError, BetaCodeError) as exc:
        return _fail(str(exc))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
