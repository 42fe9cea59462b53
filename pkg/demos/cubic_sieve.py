"""Cyclic cubic field of conductor 9: intersect three sieves, then eliminate."""
from exceptional_primes.config import load_fixture
from exceptional_primes.pipeline import render_text, run_pipeline


def main():
    cfg = load_fixture("cubic9")
    report = run_pipeline(cfg, ells=[17, 19, 37]).report
    print(render_text(report))
    print("survivors of the 17, 19, 37 sieves:", sorted(report.survivors))


if __name__ == "__main__":
    main()
