#pragma once
// Assembly of the derived constants: the error coefficients of the split
// Sigma_v(U) analysis (T1, Upsilon 1-5, chi, phi, tau, xi, eta, psi), the
// |Xi_v(U)| majorant and its merged forms, K_v, the constants s_v, and the
// explicit Brun-Titchmarsh coefficient.
//
// Every entry bottoms out in validated catalog enclosures, scan/sup constants
// and kernel bounds from the pinned inputs table, or interval arithmetic on
// fundamental constants; each carries a provenance list naming what it
// consumed.  Branch constants defined as a maximum (analytic branch vs
// machine-verified scan constant) keep the max structure explicitly.

#include <logsieve/euler.hpp>
#include <logsieve/hq.hpp>
#include <logsieve/inputs.hpp>
#include <logsieve/interval.hpp>

#include <map>
#include <string>
#include <vector>

namespace logsieve {

struct pipeline_options {
  u64 cutoff = default_product_cutoff;
  // kernel integral over [1, 1e8]; defaults to the pinned reference
  // enclosures (reproduced by the nightly sweep), overridable by a fresh run
  interval hq_1e8_v1{inputs::hq_integral_1e8_v1[0], inputs::hq_integral_1e8_v1[1]};
  interval hq_1e8_v2{inputs::hq_integral_1e8_v2[0], inputs::hq_integral_1e8_v2[1]};
};

struct constants_report {
  unsigned v = 1;
  double regime_exponent = 7;  // 7 or 12.5
  double c = 10;
  std::vector<std::pair<std::string, interval>> entries;
  std::map<std::string, std::vector<std::string>> provenance;

  const interval& at(const std::string& name) const {
    for (const auto& [k, x] : entries)
      if (k == name) return x;
    throw std::invalid_argument("no report entry named " + name);
  }
};

// Admissible c windows per regime: Z = c U^{2/3} must satisfy Z >= 4e5 at the
// regime floor, U/Z >= 20, the scan constraint c < 1e4, and (numeric regime)
// the e^5 rule that keeps every log-power piece decreasing past the floor.
inline void check_admissible(double regime_exponent, double c) {
  double E = regime_exponent;
  double lo, hi;
  if (E == 7.0) {
    lo = 4e5 / std::pow(10.0, 2.0 * E / 3.0);
    hi = std::pow(10.0, E / 3.0) / 20.0;
  } else if (E == 12.5) {
    lo = 4e5 / std::pow(10.0, 2.0 * E / 3.0);
    hi = std::pow(10.0, E / 3.0) / std::exp(5.0);
  } else {
    throw std::invalid_argument("regime exponent must be 7 or 12.5");
  }
  if (!(c >= lo && c < hi && c < 1e4))
    throw std::invalid_argument("c = " + std::to_string(c) +
                                " outside the admissible window [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + ") for regime 1e" +
                                std::to_string(E));
}

namespace pipeline_detail {

inline interval upper_branch_max(const interval& analytic, double scan_constant) {
  // max of the analytic branch and the machine-verified scan constant
  return {std::fmax(analytic.lo, scan_constant), std::fmax(analytic.hi, scan_constant)};
}

// Everything v-independent (or needed for both v) in one bundle.
struct base_constants {
  interval gamma, theta, pi2, sqrt2;
  interval eta[3], psi[3], chi1[3], chi2[3], phi1[3], phi2[3], tau[3];
  interval T1[3], U1[3], U2[3], U3[3], U4[3], omega[3], Psi[3];
  interval h_parity[3];  // parity remainder coefficients
  interval s_v[3];
};

inline base_constants make_base(const pipeline_options& opt) {
  base_constants b;
  const u64 P0 = opt.cutoff;
  b.gamma = gamma_const();
  b.theta = theta_const();
  b.pi2 = powi(pi_const(), 2);
  b.sqrt2 = sqrt(interval(2.0));
  interval one(1.0);

  interval logC7 = log(interval(1e7));

  // eta (weighted Selberg-factor average), branch max at the 1e7 crossover
  {
    interval G = eval_catalog("G_prod", P0).total;
    interval gsum = eval_catalog("G_sum", P0).total + b.gamma;
    interval gerr = delta_input(1, 1.0 / 3.0) * eval_catalog("G_err_prod", P0).total;
    interval j2 = local_factor_product("sumvar1log_j", 2);
    interval sg2 = local_factor_sum("sumvar1log_g", 2);
    interval k2 = local_factor_product("sumvar1log_k", 2);
    interval a1 = G * (interval(0.5) + gsum / logC7) + gerr * 3.0 / (logC7 * logC7);
    interval a2 = G * j2 * (interval(0.5) + (gsum + sg2) / logC7) +
                  gerr * k2 * 3.0 / (logC7 * logC7);
    b.eta[1] = upper_branch_max(a1, inputs::scan_sumvar1log_v1);
    b.eta[2] = upper_branch_max(a2, inputs::scan_sumvar1log_v2);
  }

  // psi (sqrt-weighted average), same crossover
  {
    interval F = zeta_point(interval(1.5)) / zeta_point(interval(3.0));
    interval fsum = eval_catalog("sqhalf_sum", P0).total + b.gamma;
    interval ferr = delta_input(1, 1.0 / 3.0) * eval_catalog("sqhalf_err_prod", P0).total;
    interval k2 = local_factor_product("sq1half_k", 2);
    interval ff2 = local_factor_sum("sq1half_f", 2);
    interval l2 = local_factor_product("sq1half_l", 2);
    interval a1 = F * (interval(0.5) + fsum / logC7) + ferr / (logC7 * logC7);
    interval a2 = k2 * F * (interval(0.5) + (fsum + ff2) / logC7) +
                  l2 * ferr / (logC7 * logC7);
    b.psi[1] = upper_branch_max(a1, inputs::scan_sqhalf_v1);
    b.psi[2] = upper_branch_max(a2, inputs::scan_sqhalf_v2);
  }

  // chi1 / chi2 (phi_half mass), crossover at 5e8
  {
    interval D = eval_catalog("D_prod", P0).total;
    interval err = delta_input(1, 1.0 / 3.0) * eval_catalog("sumhalf_err_prod", P0).total;
    interval err2 = err * (one + interval(1.0) / (one - interval(1.0) / 3.0));
    interval F2 = local_factor_product("sum12_f", 2);
    interval H2 = local_factor_product("sum12_h", 2);
    interval prog(inputs::scan_end_half);
    interval p13 = pow(prog, interval(1.0) / 3.0);
    interval lp = log(prog);
    interval a11 = D + err / p13 / lp;
    interval a12 = F2 * D + H2 * err / p13 / lp;
    b.chi1[1] = upper_branch_max(a11, inputs::scan_invphihalf_v1);
    b.chi1[2] = upper_branch_max(a12, inputs::scan_invphihalf_v2);
    interval a21 = D + err2 / p13;
    interval a22 = F2 * D + H2 * err2 / p13;
    b.chi2[1] = upper_branch_max(a21, inputs::scan_lphihalf_v1);
    b.chi2[2] = upper_branch_max(a22, inputs::scan_lphihalf_v2);
  }

  // phi1 / phi2 (phi^2 tail mass), crossovers at 1e6 and 1e8
  {
    interval I = eval_catalog("I_prod", P0).total;
    interval errI = eval_catalog("sumvarp_err_prod", P0).total;
    interval E1 = remainder_coefficient(2, 1);
    interval E2 = remainder_coefficient(2, 2);
    interval u2 = local_factor_product("sumvarp_u", 2);
    interval v2 = local_factor_product("sumvarp_v", 2);
    interval r = b.sqrt2 - one;  // sqrt(2) - 1
    // |p^2 f(p) - 1| at p = 2 with f = 1/phi(p)^2 equals 3
    interval w1 = r / (r + 3.0) * (E1 + E2 * 3.0 / r);
    interval i1 = w1 * errI;
    interval i2 = E2 * errI;
    interval s6 = sqrt(interval(inputs::scan_end_phitail));
    interval s8 = sqrt(interval(inputs::scan_end_l2phi));
    b.phi1[1] = upper_branch_max(I + i1 / s6, inputs::scan_phitail_v1);
    b.phi1[2] = upper_branch_max(u2 * I + v2 * i2 / s6, inputs::scan_phitail_v2);
    b.phi2[1] = upper_branch_max(I + 5.0 * (i1 / s8), inputs::scan_l2phi_v1);
    b.phi2[2] = upper_branch_max(u2 * I + 5.0 * (v2 * i2 / s8), inputs::scan_l2phi_v2);
  }

  // parity remainder coefficients (for Upsilon2)
  {
    interval errP = eval_catalog("parity_err_prod", P0).total;
    interval r = b.sqrt2 - one;
    interval cc1(inputs::cc1), cc2(inputs::cc2);
    interval w1 = r / (r + one) * (cc1 + cc2 / r);  // |2 f(2) - 1| = 1 here
    b.h_parity[1] = w1 * errP;
    b.h_parity[2] = cc2 * errP;
  }

  // tau (theta-weighted mass beyond 1e12)
  {
    interval P2 = eval_catalog("ss1log_prod2", P0).total;
    interval P3 = eval_catalog("ss1log_prod3", P0).total;
    interval f22 = local_factor_product("ss1log_f2", 2);
    interval f23 = local_factor_product("ss1log_f3", 2);
    interval lPW = log(interval(1e12));
    interval e = e_const();
    interval coef = interval(4.0) / e / lPW + interval(16.0) / (e * e) / (lPW * lPW);
    b.tau[1] = P2 + coef * P3;
    b.tau[2] = f22 * P2 + coef * (f23 * P3);
  }

  // T1 (the S_I remainder coefficient)
  {
    interval cc1(inputs::cc1), cc2(inputs::cc2);
    interval r = b.sqrt2 - one;
    interval coeff_r = 2.0 * (cc2 / cc1) / b.sqrt2 / r;
    b.T1[1] = 2.0 * (cc1 * (coeff_r + one) *
                     (b.psi[1] * b.psi[2] + b.psi[1] * b.psi[1]));
    b.T1[2] = 2.0 * (cc2 * b.sqrt2 / r * (b.psi[2] * b.psi[2]));
  }

  // Upsilon 1..4 and omega
  {
    interval ram(inputs::ram), ram2(inputs::ram_even);
    b.U1[1] = 2.0 * (ram * ram2 * b.eta[2]) + 2.0 * (ram * b.eta[2]);
    b.U1[2] = 2.0 * (ram * ram2 * b.eta[2]);

    interval twin = eval_catalog("twin_inverse", P0).total;
    b.U2[1] = twin * b.sqrt2 * b.h_parity[2];
    b.U2[2] = 4.0 * (twin * b.h_parity[2]);

    b.U3[1] = b.phi1[1] * b.phi2[1];
    b.U3[2] = b.phi1[2] * b.phi2[2] * 4.0;

    interval half1 = one;                 // phi_half(1)^2
    interval half2 = powi(b.sqrt2 - one, 2);  // phi_half(2)^2
    b.omega[1] = half1 / (b.chi1[1] * b.chi2[1]);
    b.omega[2] = half2 / (b.chi1[2] * b.chi2[2] * 4.0);
    b.U4[1] = (one + b.omega[1]) * b.chi1[1] * b.chi2[1];
    b.U4[2] = (one + b.omega[2]) * (b.chi1[2] * b.chi2[2]) * 2.0 / half2;
  }

  for (unsigned v : {1u, 2u}) {
    b.Psi[v] = interval(inputs::T2[v]) + interval(inputs::T3[v]) / log(interval(20.0));
    interval I = v == 1 ? opt.hq_1e8_v1 : opt.hq_1e8_v2;
    interval tb = hq_tail_bound(1e8, v);
    b.s_v[v] = sv_from_integral(I + interval(-tb.hi, tb.hi), v);
  }
  return b;
}

inline const base_constants& base_for(const pipeline_options& opt) {
  static std::map<std::tuple<u64, double, double, double, double>, base_constants> cache;
  auto key = std::make_tuple(opt.cutoff, opt.hq_1e8_v1.lo, opt.hq_1e8_v1.hi,
                             opt.hq_1e8_v2.lo, opt.hq_1e8_v2.hi);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_base(opt)).first;
  return it->second;
}

// xi (the log-weighted theta mass bound), a function of c
inline interval xi_of_c(const base_constants& b, unsigned v, double c, u64 P0) {
  interval one(1.0);
  interval J = eval_catalog("J_prod", P0).total;
  interval Jsum = eval_catalog("ss2log_sum", P0).total + b.gamma;
  interval errJ = eval_catalog("ss2log_err_prod", P0).total;
  interval cc1(inputs::cc1), cc2(inputs::cc2);
  interval r = b.sqrt2 - one;
  interval pt = pow(interval(2.0), b.theta);
  interval f2 = one / ((interval(2.0) / (pt * pt)) * powi(pt - one, 2));
  interval dev = abs(2.0 * f2 - one);
  interval w1 = r / (r + dev) * (cc1 + cc2 * dev / r);
  interval j1 = w1 * errJ;
  interval j2 = cc2 * errJ;

  interval PW(1e12);
  interval lPW = log(PW);
  interval ci(c);
  interval lll = log(pow(PW, interval(1.0) / 3.0) / ci);
  interval sqq = log(pow(PW, interval(4.0) / 3.0) / ci);
  interval W = one / sqrt(ci) / sqrt(pow(PW, interval(2.0) / 3.0)) +
               interval(4.0) / (interval(0.5) * sqq) +
               interval(4.0) / (pow(ci, interval(0.25)) * pow(PW, interval(1.0) / 6.0) * lll);
  interval denom = one / 3.0 - log(ci) / lPW;
  interval ttt = log(ci) / lPW + interval(2.0) / 3.0;
  if (v == 1) {
    interval X = J * (one / ttt + Jsum / lPW);
    interval Y = j1 * W / lll / denom;
    return X + Y;
  }
  interval xx2 = local_factor_product("ss2log_x", 2);
  interval ss2 = local_factor_sum("ss2log_s", 2);
  interval yy2 = local_factor_product("ss2log_y", 2);
  interval X = xx2 * J * (one / ttt + (Jsum + ss2) / lPW);
  interval Y = yy2 * j2 * W / lll / denom;
  return X + Y;
}

inline interval upsilon5(const base_constants& b, unsigned v, const interval& xi_c) {
  interval one(1.0);
  interval inv389sq = one / interval(389.0 * 389.0);
  interval mult = (one + one / b.omega[v]) * inv389sq * b.tau[v] * xi_c;
  if (v == 1) return mult;
  interval pt = pow(interval(2.0), b.theta);
  return mult * (pt * pt) / powi(pt - one, 2);
}

}  // namespace pipeline_detail

// The ten-term |Xi_v(U)| majorant with Z = c U^{2/3}.  Valid for U at or
// above the regime floor the c was validated for.
inline interval xi_bound(double U, unsigned v, double c,
                         const pipeline_options& opt = {}) {
  if (v != 1 && v != 2) throw std::domain_error("xi_bound: v must be 1 or 2");
  double E = U >= 3.16e12 ? 12.5 : 7.0;
  if (!(U >= 1e7)) throw std::domain_error("xi_bound: need U >= 1e7");
  check_admissible(E, c);
  const auto& b = pipeline_detail::base_for(opt);
  interval one(1.0);
  interval Ui(U);
  interval lU = log(Ui);
  interval ci(c);
  interval c3 = powi(ci, 3);
  interval lUc = log(Ui / c3);
  interval u13 = pow(Ui, interval(1.0) / 3.0);
  interval sc = sqrt(ci);
  mult_value_t mv = mult_value(v);
  interval vk = ratio(static_cast<i64>(v), mv.kappa);
  interval xi_c = pipeline_detail::xi_of_c(b, v, c, opt.cutoff);
  interval U5 = pipeline_detail::upsilon5(b, v, xi_c);

  // with Z = c U^{2/3}: 1/(1-choice) = 3, and both U^{choice/2} and
  // U^{1-choice} are U^{1/3}
  interval t1 = b.T1[v] * powi(lUc, 4) / (81.0 * (sc * u13));
  interval t2 = 2.0 * (b.U1[v] * powi(lUc, 2)) / (9.0 * (sc * u13));
  interval t3 = (2.0 * ci) * b.Psi[v] * vk / b.pi2 * lUc / u13;
  interval t4 = b.U4[v] * lU / (3.0 * u13);
  interval t5 = (6.0 * ci) * b.Psi[v] * vk / b.pi2 / u13;
  interval t6 = b.U2[v] / (sc * u13);
  interval t7 = ci * b.U3[v] / u13;
  interval t8 = b.U4[v] / u13;
  interval t9 = (36.0 * interval(inputs::T4[v])) * vk / b.pi2 /
                (one - log(c3) / lU) / lU;
  interval t10 = U >= 1e12 ? U5 / lU : interval(0.0);
  return t1 + t2 + t3 + t4 + t5 + t6 + t7 + t8 + t9 + t10;
}

inline constants_report assemble(unsigned v, double regime_exponent, double c,
                                 const pipeline_options& opt = {}) {
  if (v != 1 && v != 2) throw std::domain_error("assemble: v must be 1 or 2");
  check_admissible(regime_exponent, c);
  const auto& b = pipeline_detail::base_for(opt);
  constants_report rep;
  rep.v = v;
  rep.regime_exponent = regime_exponent;
  rep.c = c;
  interval one(1.0);

  auto put = [&rep](const std::string& name, const interval& x,
                    std::vector<std::string> prov) {
    rep.entries.emplace_back(name, x);
    rep.provenance[name] = std::move(prov);
  };

  interval xi_c = pipeline_detail::xi_of_c(b, v, c, opt.cutoff);
  interval U5 = pipeline_detail::upsilon5(b, v, xi_c);

  put("eta_2", b.eta[2], {"G_prod", "G_sum", "G_err_prod", "scan_sumvar1log"});
  put("eta", b.eta[v], {"G_prod", "G_sum", "G_err_prod", "scan_sumvar1log"});
  put("psi", b.psi[v], {"zeta(3/2)/zeta(3)", "sqhalf_sum", "sqhalf_err_prod", "scan_sqhalf"});
  put("psi_2", b.psi[2], {"zeta(3/2)/zeta(3)", "sqhalf_sum", "sqhalf_err_prod", "scan_sqhalf"});
  put("chi1", b.chi1[v], {"D_prod", "sumhalf_err_prod", "scan_invphihalf"});
  put("chi2", b.chi2[v], {"D_prod", "sumhalf_err_prod", "scan_lphihalf"});
  put("phi1", b.phi1[v], {"I_prod", "sumvarp_err_prod", "remainder_coefficient", "scan_phitail"});
  put("phi2", b.phi2[v], {"I_prod", "sumvarp_err_prod", "remainder_coefficient", "scan_l2phi"});
  put("tau", b.tau[v], {"ss1log_prod2", "ss1log_prod3"});
  put("xi_c", xi_c, {"J_prod", "ss2log_sum", "ss2log_err_prod"});
  put("omega", b.omega[v], {"chi1", "chi2"});
  put("T1", b.T1[v], {"psi", "psi_2", "cc1", "cc2"});
  put("Upsilon1", b.U1[v], {"eta_2", "ram", "ram_even"});
  put("Upsilon2", b.U2[v], {"twin_inverse", "parity_err_prod", "cc2"});
  put("Upsilon3", b.U3[v], {"phi1", "phi2"});
  put("Upsilon4", b.U4[v], {"chi1", "chi2", "omega"});
  put("Upsilon5", U5, {"tau", "xi_c", "omega"});
  put("Psi", b.Psi[v], {"kernel_bounds"});
  put("s_v", b.s_v[v], {"hq_integral_1e8", "kernel_bounds"});

  mult_value_t mv = mult_value(v);
  interval vk = ratio(static_cast<i64>(v), mv.kappa);
  if (regime_exponent == 7.0) {
    // merged coefficients: |Xi_v(U)| <= xi_log4_coeff log^4(U)/U^(1/3)
    //                                   + xi_loginv_coeff / log(U)   (U >= 1e7)
    interval lD = log(interval(1e7));
    interval ci(c);
    interval sc = sqrt(ci);
    interval m1 = b.T1[v] / (81.0 * sc) + 2.0 * (b.U1[v] / (9.0 * (sc * (lD * lD)))) +
                  (2.0 * ci) * b.Psi[v] * vk / b.pi2 / powi(lD, 3) +
                  b.U4[v] / (3.0 * powi(lD, 3));
    interval m2 = ((6.0 * ci) * b.Psi[v] * vk / b.pi2 + b.U2[v] / sc + ci * b.U3[v] +
                   b.U4[v]) /
                  powi(lD, 4);
    interval mlog = (12.0 * interval(inputs::T4[v])) * vk / b.pi2 /
                        (one / 3.0 - log(ci) / lD) +
                    U5;
    put("xi_log4_coeff", m1 + m2, {"T1", "Upsilon1..4", "Psi"});
    put("xi_loginv_coeff", mlog, {"kernel_bounds", "Upsilon5"});
  } else {
    double trick = std::pow(10.0, 12.5);
    interval num = xi_bound(trick, v, c, opt);
    interval K = num * log(interval(trick));
    put("xi_numeric", num, {"xi_bound"});
    put("K", K, {"xi_bound"});
  }
  return rep;
}

// Closed forms / upper bounds for int_1^Z du/(u^m log^n(X/u)).
inline interval log_integral_bound(double Z, double X, double m, double n) {
  if (!(m >= 1 && Z >= 1 && Z < X))
    throw std::domain_error("log_integral_bound: need m >= 1 and 1 <= Z < X");
  interval Xi(X), Zi(Z);
  if (m == 1.0) {
    if (n == 1.0) return log(log(Xi) / log(Xi / Zi));
    interval nm1(n - 1.0);
    return (pow(log(Xi / Zi), interval(1.0 - n)) - pow(log(Xi), interval(1.0 - n))) / nm1;
  }
  if (!(n > 0)) throw std::domain_error("log_integral_bound: need n > 0 when m > 1");
  interval mm1(m - 1.0);
  interval a = pow(log(Xi / sqrt(Zi)), interval(-n));
  interval bterm = pow(log(Xi / Zi), interval(-n)) / sqrt(pow(Zi, interval(m - 1.0)));
  return (a + bterm) / mm1;
}

// ---------------------------------------------------------------------------
// Brun-Titchmarsh chain.
// ---------------------------------------------------------------------------

struct bt_result {
  interval iota;
  interval coefficient;  // the displayed positive second-order constant
  interval bound;        // 2Y/(phi(q) log(Y/q)) (1 - coefficient/log(Y/q))
};

inline bt_result brun_titchmarsh(double Y, u64 q, const pipeline_options& opt = {}) {
  if (!(Y >= 1e25 * double(q)))
    throw std::domain_error("brun_titchmarsh: need Y >= 1e25 q");
  const auto& b = pipeline_detail::base_for(opt);
  interval one(1.0);
  bt_result r;
  r.iota = 2.0 * (one - interval(4.0) / b.pi2);

  // numeric-regime remainder for v = 2 at its published c
  double trick = std::pow(10.0, 12.5);
  interval num2 = xi_bound(trick, 2, 16, opt);

  interval y14 = pow(interval(1e25), interval(0.25));
  interval chain =
      4.0 * (interval(-b.s_v[2].lo) / 2.0 + num2 / 2.0 +
             4.0 * powi(interval(4.0) / b.pi2 + r.iota / y14, 2));
  interval l25 = log(interval(1e25));
  // the displayed coefficient is the negated half of the chain plus the
  // sqrt-range correction
  r.coefficient = -((chain + (l25 * l25) / sqrt(interval(1e25))) / 2.0);

  mult_value_t mq = mult_value(q);
  interval lyq = log(interval(Y) / interval(double(q)));
  r.bound = (2.0 * interval(Y)) / (interval(double(mq.phi)) * lyq) *
            (one - r.coefficient / lyq);
  return r;
}

}  // namespace logsieve
