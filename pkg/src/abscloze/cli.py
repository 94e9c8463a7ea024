"""Command-line interface.

Subcommands: predict, evaluate, sweep, augment, features, attribute.  Every
config key can come from a ``--config`` file, an ``ABSCLOZE_*`` environment
variable, or a flag, in that order of increasing precedence.  Exit code 0 on
success, 2 on validation failures (bad config, bad input data, missing
backend).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import attribution, lexdb, pipeline
from .augment import AugmentConfig, augment_article, emit_mlm_file
from .config import Config, load_config
from .errors import AbsClozeError
from .lingfeat import FeatureConfig, embed
from .remote import RemoteScorer
from .rerank import argmax
from .scorer import build_context, score_context
from .toyscorer import toy_scorer_build


def _add_config_flags(parser: argparse.ArgumentParser):
    g = parser.add_argument_group("configuration overrides")
    g.add_argument("--config", metavar="FILE", help="key = value config file")
    g.add_argument("--backend-url", action="append", dest="backend_urls",
                   metavar="URL", help="inference service URL (repeat for an ensemble)")
    g.add_argument("--toy-corpus", metavar="FILE",
                   help="document-per-line corpus for the built-in scorer")
    g.add_argument("--timeout-ms", type=int)
    g.add_argument("--retries", type=int)
    g.add_argument("--max-len", type=int)
    g.add_argument("--stride", type=int)
    g.add_argument("--strategy", choices=["plain", "voting", "max-context"])
    g.add_argument("--weighting", choices=["exact", "similarity"])
    g.add_argument("--method", choices=["none", "difference", "threshold"])
    g.add_argument("--improver", choices=["linguistic", "hyponym"])
    g.add_argument("--diff-threshold", type=float)
    g.add_argument("--prob-threshold", type=float)
    g.add_argument("--majority", type=int)
    g.add_argument("--hyponym-depth", type=int)
    g.add_argument("--large-value", type=float)
    g.add_argument("--default-embedding", choices=["oriented", "zeros"])
    g.add_argument("--n", type=int)
    g.add_argument("--mask-rate", type=float)
    g.add_argument("--seed", type=int)
    g.add_argument("--n-steps", type=int)
    g.add_argument("--jobs", type=int)
    g.add_argument("--wordnet-dir", metavar="DIR")
    g.add_argument("--senti-file", metavar="FILE")
    g.add_argument("--freq-file", metavar="FILE")


def _config_from_args(args: argparse.Namespace) -> Config:
    overrides = {}
    for key in Config.__dataclass_fields__:
        value = getattr(args, key, None)
        if value is None:
            continue
        overrides[key] = tuple(value) if key == "backend_urls" else value
    return load_config(args.config, None, overrides)


def _build_backends(cfg: Config):
    if cfg.backend_urls:
        return [
            RemoteScorer(url, cfg.timeout_ms, cfg.retries)
            for url in cfg.backend_urls
        ]
    if cfg.toy_corpus:
        with open(cfg.toy_corpus, encoding="utf-8") as fh:
            docs = [line.rstrip("\n") for line in fh if line.strip()]
        return [toy_scorer_build(docs, max_len=cfg.max_len)]
    raise AbsClozeError(
        "no scoring backend configured: pass --backend-url or --toy-corpus"
    )


def _load_db(cfg: Config, required: bool):
    if not cfg.wordnet_dir:
        if required:
            raise AbsClozeError("this command needs --wordnet-dir")
        return None
    return lexdb.load(
        cfg.wordnet_dir, cfg.senti_file or None, cfg.freq_file or None
    )


def _ingest(path: str) -> pipeline.IngestResult:
    result = pipeline.ingest(path)
    for line_no, reason in result.rejections:
        print(f"warning: {path}:{line_no}: {reason}", file=sys.stderr)
    if not result.samples:
        print(f"warning: no valid samples in {path}", file=sys.stderr)
    return result


def _cmd_predict(args) -> int:
    cfg = _config_from_args(args)
    backends = _build_backends(cfg)
    db = _load_db(cfg, required=cfg.method != "none")
    result = _ingest(args.infile)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for sample in result.samples:
            pred = pipeline.predict(sample, backends, db, cfg)
            out.write(
                json.dumps(
                    {
                        "id": sample.id,
                        "chosen": pred.chosen,
                        "option": sample.options[pred.chosen],
                        "fired": list(pred.fired),
                        "probs": [round(p, 10) for p in pred.probs],
                    },
                    sort_keys=True,
                )
                + "\n"
            )
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_evaluate(args) -> int:
    cfg = _config_from_args(args)
    backends = _build_backends(cfg)
    db = _load_db(cfg, required=cfg.method != "none")
    result = _ingest(args.infile)
    report = pipeline.evaluate(result.samples, backends, db, cfg)
    if args.out:
        Path(args.out).write_text(pipeline.report_lines(report), encoding="utf-8")
    sys.stdout.write(pipeline.report_summary(report))
    return 0


def _cmd_sweep(args) -> int:
    cfg = _config_from_args(args)
    backends = _build_backends(cfg)
    db = _load_db(cfg, required=True)
    result = _ingest(args.infile)
    grid = [float(t) for t in args.grid.split(",") if t.strip()]
    sweep = pipeline.sweep_threshold(result.samples, backends, db, cfg, grid)
    for t, acc in sweep.points:
        print(f"{t:g}\t{acc:.4f}")
    print(f"best\t{sweep.best_threshold:g}")
    return 0


def _cmd_augment(args) -> int:
    cfg = _config_from_args(args)
    db = _load_db(cfg, required=True)
    result = _ingest(args.infile)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    total = 0
    for index, sample in enumerate(result.samples):
        acfg = AugmentConfig(n=cfg.n, mask_rate=cfg.mask_rate, seed=cfg.seed ^ index)
        variants = augment_article(db, sample.article, acfg)
        total += emit_mlm_file(variants, acfg, out_dir / f"{sample.id}.tsv")
    print(f"wrote {total} records for {len(result.samples)} samples to {out_dir}")
    return 0


def _cmd_features(args) -> int:
    cfg = _config_from_args(args)
    db = _load_db(cfg, required=True)
    fcfg = FeatureConfig(cfg.large_value, cfg.default_embedding)
    with open(args.wordlist, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if not word:
                continue
            emb = embed(db, word, fcfg)
            print(word + "\t" + "\t".join(f"{v:g}" for v in emb.values))
    return 0


def _cmd_attribute(args) -> int:
    cfg = _config_from_args(args)
    backend = _build_backends(cfg)[0]
    result = _ingest(args.infile)
    matches = [s for s in result.samples if s.id == args.sample_id]
    if not matches:
        raise AbsClozeError(f"sample id {args.sample_id!r} not found")
    sample = matches[0]
    question = backend.tokenize(sample.question)
    context = build_context(backend, backend.tokenize(sample.article), question)
    scores = score_context(backend, context, sample.options)
    predicted = sample.options[argmax(scores.raw)]
    target = backend.tokenize(predicted).token_ids[0]
    res = attribution.attribute(backend, context, target, cfg.n_steps)
    ranked = sorted(
        range(len(res.word_scores)), key=lambda i: (-res.word_scores[i][1], i)
    )[:10]
    norm_of = {i: res.top10[rank][1] for rank, i in enumerate(ranked)}
    print(
        f"# target option: {predicted}  "
        f"completeness gap: {res.completeness_gap:.3g}"
    )
    for i, (word, score) in enumerate(res.word_scores):
        flag = "top10" if i in norm_of else "-"
        print(f"{word}\t{score:.6g}\t{flag}\t{norm_of.get(i, 0.0):.6f}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="abscloze",
        description="Multiple-choice cloze answering with lexical re-ranking, "
        "chunk voting, and gradient attributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_predict = sub.add_parser("predict", help="predict answers for a dataset")
    p_predict.add_argument("--in", dest="infile", required=True)
    p_predict.add_argument("--out", help="output file (default stdout)")
    _add_config_flags(p_predict)
    p_predict.set_defaults(func=_cmd_predict)

    p_eval = sub.add_parser("evaluate", help="accuracy over a labeled dataset")
    p_eval.add_argument("--in", dest="infile", required=True)
    p_eval.add_argument("--out", help="per-sample report file")
    _add_config_flags(p_eval)
    p_eval.set_defaults(func=_cmd_evaluate)

    p_sweep = sub.add_parser("sweep", help="tune the improver threshold on a grid")
    p_sweep.add_argument("--in", dest="infile", required=True)
    p_sweep.add_argument("--grid", required=True, help="comma-separated thresholds")
    _add_config_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_aug = sub.add_parser("augment", help="emit hypernym-substituted MLM files")
    p_aug.add_argument("--in", dest="infile", required=True)
    p_aug.add_argument("--out", required=True, help="output directory")
    _add_config_flags(p_aug)
    p_aug.set_defaults(func=_cmd_augment)

    p_feat = sub.add_parser("features", help="emit 13-dim word embeddings")
    p_feat.add_argument("wordlist", help="file with one word per line")
    _add_config_flags(p_feat)
    p_feat.set_defaults(func=_cmd_features)

    p_attr = sub.add_parser("attribute", help="integrated-gradients explanation")
    p_attr.add_argument("--in", dest="infile", required=True)
    p_attr.add_argument("--sample-id", required=True)
    _add_config_flags(p_attr)
    p_attr.set_defaults(func=_cmd_attribute)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AbsClozeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
