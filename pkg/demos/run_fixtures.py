"""Run the full pipeline on every bundled fixture and print the text reports."""
from exceptional_primes.config import load_fixture
from exceptional_primes.pipeline import render_text, run_pipeline


FIXTURES = ["q_i", "q_sqrt2", "q_sqrt3", "q_sqrt5", "q_sqrt13", "cubic9", "biquadratic"]


def main():
    for name in FIXTURES:
        cfg = load_fixture(name)
        result = run_pipeline(cfg)
        print(f"=== {name}: {cfg.name}")
        print(render_text(result.report))
        for w in result.witnesses:
            print(f"witness for p={w.p}: {w.description}: {'holds' if w.holds else 'FAILS'}")
        print()


if __name__ == "__main__":
    main()
