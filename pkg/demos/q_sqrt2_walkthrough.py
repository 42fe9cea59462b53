"""Step through the Q(sqrt 2) example by hand: traces, sieves, elimination, witness."""
from exceptional_primes.config import load_fixture
from exceptional_primes.criteria import (
    eliminate,
    exceptional_candidates,
    ideal_traces,
    p_ell_star,
    screening_primes,
    x0_witness,
)


def main():
    cfg = load_fixture("q_sqrt2")
    E = cfg.working_curve
    print("curve:", E)
    for ell in (11, 13, 19, 29, 41):
        print(f"traces above {ell}:", sorted(fd.trace for fd in ideal_traces(E, ell)))

    print("screening primes:", sorted(screening_primes(E)))
    for ell in cfg.sieve_primes():
        r = p_ell_star(E, ell)
        print(f"P_{ell}* = {r.p_ell_star}")
        print(f"B_{ell} = {r.b_ell}")

    report = exceptional_candidates(E, cfg.sieve_primes())
    print("sieve survivors:", sorted(report.survivors))
    print("candidates:", sorted(report.candidates))

    statuses = eliminate(E, sorted(report.candidates), cfg.eliminate_bound)
    for p, status in sorted(statuses.items()):
        print(f"  p={p}: {status}")

    # 13 survives elimination; the rational point sqrt 2 on X_0(13) explains why
    print("X_0(13) witness at sqrt 2:", x0_witness(cfg.curve, 13, cfg.field.gen()))


if __name__ == "__main__":
    main()
