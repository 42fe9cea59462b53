"""The biquadratic curve: B_ell vanishes identically, so fall back on R_q."""
from exceptional_primes.arith import factorize
from exceptional_primes.config import load_fixture
from exceptional_primes.criteria import p_ell_star, r_ideal_data


def main():
    cfg = load_fixture("biquadratic")
    E = cfg.working_curve
    for ell in (3, 7):
        r = p_ell_star(E, ell)
        print(f"P_{ell}* = {r.p_ell_star}   B_{ell} = {r.b_ell}")

    for ri in cfg.r_inputs():
        res = r_ideal_data(E, ri.ideal, ri.h, ri.m_gamma)
        print(f"--- q above {ri.ideal.ell}, m_gamma = {res.m_gamma}")
        print("P_q       =", res.frobenius.frobenius_poly)
        print("P_q^(12)  =", res.p_adams)
        print("m^(12)    =", res.m_adams)
        print("(m^(12))^*2 =", res.star_power(2))
        print("R_q =", factorize(res.value))


if __name__ == "__main__":
    main()
