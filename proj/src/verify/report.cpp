#include "gbcurv/verify/report.hpp"

#include <array>

namespace gbcurv::verify {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::NotApplicable: return "not-applicable";
  }
  return "?";
}

Row make_row(std::string id, nlohmann::json params, double lhs, double rhs, double residual,
             double tolerance) {
  Row row;
  row.id = std::move(id);
  row.anchor = anchor_for(row.id);
  row.params = std::move(params);
  row.lhs = lhs;
  row.rhs = rhs;
  row.residual = residual;
  row.tolerance = tolerance;
  row.status = residual > tolerance ? Status::Fail : Status::Pass;
  return row;
}

Row not_applicable_row(std::string id, nlohmann::json params, double lhs, double rhs,
                       double residual) {
  Row row;
  row.id = std::move(id);
  row.anchor = anchor_for(row.id);
  row.params = std::move(params);
  row.lhs = lhs;
  row.rhs = rhs;
  row.residual = residual;
  row.tolerance = 0.0;
  row.status = Status::NotApplicable;
  return row;
}

namespace {

constexpr IdentityInfo kCatalog[] = {
    // algebra
    {"alg.adjoint", "<g^r a, b> == <a, c^r b>", "algebra"},
    {"alg.star_involution", "**w == w on (p,p)-forms", "algebra"},
    {"alg.star_conjugation", "*c^r*w == g^r w and *g^r*w == c^r w", "algebra"},
    {"alg.determinant_law", "h^k(x_1..x_k; y_1..y_k) == k! det[h(x_i,y_j)]", "algebra"},
    {"alg.metric_contraction", "c^r g^m == m!/(m-r)! (n-m+r)!/(n-m)! g^(m-r)", "algebra"},
    {"alg.associativity", "(a b) c == a (b c)", "algebra"},
    {"alg.graded_commutativity", "a b == (-1)^(pr+qs) b a", "algebra"},
    {"alg.gauss_bianchi", "h^2 satisfies the first Bianchi identity", "algebra"},
    // curvature identities
    {"curv.h2k_cross", "h_2k: *(g^(n-2k) R^k)/(n-2k)! == c^(2k) R^k/(2k)!", "curvature-identities"},
    {"curv.lovelock_cross",
     "T_2k: h_2k g - c^(2k-1)R^k/(2k-1)! == *(g^(n-2k-1)R^k)/(n-2k-1)!", "curvature-identities"},
    {"curv.lovelock_top", "T_n == 0", "curvature-identities"},
    {"curv.schouten_trace", "c(R - gA) == 0 with A = (Ric - Scal g/(2(n-1)))/(n-2)",
     "curvature-identities"},
    {"curv.weyl_traceless", "c(W) == 0 for W = R - gA", "curvature-identities"},
    {"curv.sigma_eigen", "sigma_k(h) == e_k(eigenvalues of h)", "curvature-identities"},
    {"curv.theorem_split",
     "h_2k == (n-k)!k!/(n-2k)! sigma_k + sum_i C(k,i)/(n-2k)! <*(g^(n-2k+i)A^i), W^(k-i)>",
     "curvature-identities"},
    {"curv.confflat_h2k", "W == 0 implies h_2k == (n-k)!k!/(n-2k)! sigma_k", "curvature-identities"},
    {"curv.h4_weyl_sigma2", "h_4 == |W|^2 + 2(n-2)(n-3) sigma_2", "curvature-identities"},
    {"curv.sigma2_display", "2(n-2)^2 sigma_2 == n|c^2 R|^2/(4(n-1)) - |cR|^2",
     "curvature-identities"},
    {"curv.einstein_sigma2", "Einstein metrics: sigma_2 == Scal^2/(8n(n-1))", "curvature-identities"},
    {"curv.avez", "h_4 == |R|^2 - |cR|^2 + |c^2 R|^2/4", "curvature-identities"},
    {"curv.avez_higher",
     "h_(2k+2) == <c^(2k-2)R^k/(2k-2)!, R> - <c^(2k-1)R^k/(2k-1)!, cR> + h_2k h_2",
     "curvature-identities"},
    {"curv.deficiency_einstein", "|Ric|^2 - Scal^2/n == 0 iff Einstein", "curvature-identities"},
    {"curv.deficiency_confflat",
     "|R|^2 - |Ric|^2/(n-2) + Scal^2/(2(n-1)(n-2)) == |W|^2, zero iff conformally flat",
     "curvature-identities"},
    {"curv.deficiency_spaceform", "|R|^2 - Scal^2/(2n(n-1)) == 0 iff constant sectional curvature",
     "curvature-identities"},
    {"curv.product_h4", "h_4(M1 x M2) == (h_4)_1 + Scal_1 Scal_2 / 2 + (h_4)_2",
     "curvature-identities"},
    {"curv.s3xsp_signs",
     "S^3(r) x S^p(1), small r: sec >= 0, Ric > 0, T_2 > 0, h_4 > 0 while sigma_2 < 0",
     "curvature-identities"},
    {"curv.spaceform_h4", "h_4(S^n(1)) == n!/(4(n-4)!)", "curvature-identities"},
    // newton
    {"newton.explicit", "N_k(w) == sum_r (-1)^(r+pk) g^(p-pk+r) c^r w^k/((p-pk+r)! r!)", "newton"},
    {"newton.formula", "<N_k(w), w> == c^(pk+p) w^(k+1)/(pk+p)!", "newton"},
    {"newton.gb", "h_(2k+2) == <N_k(R), R>", "newton"},
    {"newton.trace_first", "c N_k(R) == (n-2k-1) T_2k", "newton"},
    {"newton.trace_full", "c^2 N_k(R) == (n-2k)(n-2k-1) h_2k", "newton"},
    {"newton.n1_linear", "N_1(a w + b e) == a N_1(w) + b N_1(e)", "newton"},
    {"newton.n1_selfadjoint", "<N_1 w, e> == <w, N_1 e>", "newton"},
    {"newton.n1_tracefree", "c w == 0 implies N_1(w) == (-1)^p w", "newton"},
    {"newton.classic", "t_k(h): star form == sigma_k g - c^(k-1)h^k/((k-1)!k!) == sigma_k g - h t_(k-1)",
     "newton"},
    {"newton.pq_einstein",
     "c^(2k-2)R^k prop. to g^2: h_(2k+2) == {2k(2k-1)/(n(n-1)) + (n-4k)/n} h_2k h_2", "newton"},
    {"newton.gnf", "c^(p+k)(w h^k)/(p+k)! == <*(g^(n-p-k) w)/(n-p-k)!, h^k>", "newton"},
    // conformal pointwise
    {"chart.flat", "identity metric has R == 0", "conformal-pointwise"},
    {"chart.sphere", "S^n(1) chart: frame curvature == g^2/2", "conformal-pointwise"},
    {"chart.frame", "E^T g E == I at every frame point", "conformal-pointwise"},
    {"chart.convergence", "fd error contracts like 2^order under step halving", "conformal-pointwise"},
    {"conf.h4_law", "e^(4f) h_4(e^(2f)g) == h_4(g) + scrL_g(f)", "conformal-pointwise"},
    {"conf.volume", "mu(e^(2f)g) == e^(nf) mu(g)", "conformal-pointwise"},
    {"conf.weyl", "Weyl(e^(2f)g) == e^(2f) W as tensors", "conformal-pointwise"},
    {"conf.riemann", "R(e^(2f)g) == e^(2f)(R - gH), H = Hess f - df.df + |df|^2 g/2",
     "conformal-pointwise"},
    {"conf.cocycle", "scrL_g(f+phi) - scrL_g(f) == e^(4f) scrL_(e^(2f)g)(phi)", "conformal-pointwise"},
    {"conf.k_law", "v^((n+12)/(n-4)) h_4(v^(8/(n-4))g) == h_4 v + 8(n-3)/(n-4) L_g(v)",
     "conformal-pointwise"},
    {"conf.bidegree", "K_(a^2 g)(phi) == a^(-(n+12)/4) K_g(a^((n-4)/4) phi)", "conformal-pointwise"},
    {"conf.t2_definiteness", "diagnostic: eigenvalue range of T_2 at sample points",
     "conformal-pointwise"},
    // conformal integral
    {"int.bochner", "integral 2 sigma_2(Hess f) mu == integral Ric(grad f, grad f) mu",
     "conformal-integral"},
    {"int.hess", "integral 2 Hess f(grad f, grad f) mu == integral |df|^2 Delta f mu",
     "conformal-integral"},
    {"int.laplacian", "integral Delta f mu == 0", "conformal-integral"},
    {"int.ell2", "integral ell_2(f) mu == 0", "conformal-integral"},
    {"int.dim4_scrl", "n = 4: integral scrL_g(f) mu == 0", "conformal-integral"},
    {"int.dim4_h4", "n = 4: integral h_4(g_bar) mu_bar == integral h_4(g) mu", "conformal-integral"},
    {"int.h4bar",
     "n > 4: integral h_4(g_bar) mu_bar == integral v^4 h_4 mu + 16(n-3)/(n-4) integral v^2 "
     "T_2(grad v, grad v) mu + 16(n-2)(n-3)/(n-4)^3 A(v)",
     "conformal-integral"},
    {"int.ricci_change",
     "(n-4) integral v^2 (Ric_bar - Ric)(grad v, grad v) mu == -A(v) + 4(n-1) integral |dv|^4 mu",
     "conformal-integral"},
    {"int.ricci_change_printed",
     "reference only: same left side against -2 A_v(v) + 4(n-1) integral |dv|^4 with the "
     "v-weighted A_v(v) = integral ((n-4) v |dv|^2 Delta(v^2) - 4|dv|^4) mu",
     "conformal-integral"},
};

}  // namespace

std::span<const IdentityInfo> identity_catalog() { return kCatalog; }

const char* anchor_for(const std::string& id) {
  for (const IdentityInfo& info : kCatalog)
    if (id == info.id) return info.anchor;
  return "";
}

nlohmann::json make_report(const nlohmann::json& config_echo, const std::vector<Row>& rows) {
  nlohmann::json jrows = nlohmann::json::array();
  nlohmann::json max_residual = nlohmann::json::object();
  int pass = 0, fail = 0, na = 0;
  for (const Row& row : rows) {
    jrows.push_back({{"id", row.id},
                     {"anchor", row.anchor},
                     {"params", row.params},
                     {"lhs", row.lhs},
                     {"rhs", row.rhs},
                     {"residual", row.residual},
                     {"tolerance", row.tolerance},
                     {"status", to_string(row.status)}});
    switch (row.status) {
      case Status::Pass: ++pass; break;
      case Status::Fail: ++fail; break;
      case Status::NotApplicable: ++na; break;
    }
    if (row.status != Status::NotApplicable) {
      const double prev = max_residual.contains(row.id) ? max_residual[row.id].get<double>() : 0.0;
      if (row.residual >= prev) max_residual[row.id] = row.residual;
    }
  }
  return {{"schema_version", kSchemaVersion},
          {"tool", {{"name", "gbcurv"}, {"version", kToolVersion}}},
          {"config", config_echo},
          {"rows", jrows},
          {"summary",
           {{"pass", pass},
            {"fail", fail},
            {"not_applicable", na},
            {"max_residual_by_id", max_residual}}}};
}

int count_failures(const std::vector<Row>& rows) {
  int fails = 0;
  for (const Row& row : rows)
    if (row.status == Status::Fail) ++fails;
  return fails;
}

}  // namespace gbcurv::verify
