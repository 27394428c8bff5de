"""A small seeded corpus over all ensembles, the same checks the CLI runs."""

from polarpert import CorpusConfig, run_corpus

report = run_corpus(CorpusConfig(trials=300, seed=42))
print("failures:", report.failures)
print("worst qdist/bound:", {k: round(v, 4) for k, v in sorted(report.worst_slack.items())})
print("counts:", report.counts)
print(f"{report.runtime_seconds:.1f}s")
