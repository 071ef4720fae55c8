// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>

#include "hopfforge/cli.hpp"

using namespace hopfforge;
namespace fs = std::filesystem;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimitB0 = 5, kLimitXmas = 300, kLimitMin = 5, kLimitWedge = 180, kLimitIterated = 60;

struct Outcome {
  bool ok = true;
  std::vector<std::string> why;
  void need(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      why.push_back(what);
    }
  }
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.need(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit > 0) o.need(secs < limit, "took " + std::to_string(secs) + " s, limit " + std::to_string(limit) + " s");
  std::cout << id << " " << (o.ok ? "PASS" : "FAIL") << " " << title << " [" << std::fixed << std::setprecision(2) << secs
            << " s]";
  for (const auto& w : o.why) std::cout << " | " << w;
  std::cout << std::endl;
  if (!o.ok) ++failures;
}

const Cyc q6 = Cyc::zeta(6);

struct Induced {
  ProjectionSetup s;
  InducedPreBialgebra ind;
  ThinResult thin;
  std::optional<CocycleAnalysis> ca;
};

Induced induce(ProjectionSetup s) {
  Induced r{s, induced_structures(s), {}, std::nullopt};
  r.thin = thinness_and_basis(r.ind.P, &r.ind.xi);
  if (r.thin.thin) r.ca = cocycle_analysis(r.ind.P, r.ind.xi, *r.thin.basis, s.flags);
  return r;
}

// Coefficients of prod_{i<n} (1 + q^i t), one polynomial multiplication at a time.
std::vector<Cyc> product_expansion(int n, const Cyc& q) {
  std::vector<Cyc> c{Cyc(1)};
  for (int i = 0; i < n; ++i) {
    Cyc qi = q.pow(i);
    std::vector<Cyc> next(c.size() + 1, Cyc(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] += qi * c[k];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace

int main() {
  const fs::path golden = fs::path(HOPFFORGE_SOURCE_DIR) / "tests" / "golden";

  criterion("AC1", "B0 reconstruction from (KC6, g^3, -1, 0)", kLimitB0, [&](Outcome& o) {
    cli::Output out = cli::cmd_example("b0");
    auto kv = cli::parse_kv(out.report.text());
    o.need(out.report.exit_code() == 0, "check suite failed");
    o.need(kv["dim"] == "12", "dim " + kv["dim"]);
    for (const char* rel : {"g^6=1", "x^2=0", "gx+xg=0", "Delta(x)", "S(x)"}) {
      bool seen = false;
      for (const auto& l : out.report.lines()) seen = seen || (l.name == std::string("relation:") + rel && l.status == "PASS");
      o.need(seen, std::string("relation ") + rel);
    }
    for (const auto& [rel, text] : out.files) o.need(io::read_text(golden / rel) == text, "golden mismatch " + rel);
  });

  std::optional<OreHopf> xmas;
  criterion("AC2", "Xmas reconstruction, dim 72 Hopf algebra", kLimitXmas, [&](Outcome& o) {
    xmas = catalog::xmas();
    const HopfSC& A = xmas->O;
    o.need(A.dim() == 72, "dim");
    o.need(check_hopf(A).ok(), "Hopf check");
    const SparseVec Y = basis_vec(12), G = basis_vec(1), X = basis_vec(6);
    o.need(power(A.algebra, Y, 6).empty(), "Y^6");
    o.need(multiply(A.algebra, G, Y) == q6 * multiply(A.algebra, Y, G), "GY = qYG");
    o.need(multiply(A.algebra, X, Y) == Cyc(-1) * multiply(A.algebra, Y, X), "XY = -YX");
  });

  criterion("AC3", "non-normalized projection pi on Xmas", 0, [&](Outcome& o) {
    if (!xmas) xmas = catalog::xmas();
    ProjectionSetup s = ProjectionSetup::from_ore(*xmas);
    s.pi = catalog::xmas_pi(*xmas);
    CheckReport v = validate_setup(s);
    o.need(v.ok(), "validate_setup");
    o.need(v.passed("coalgebra_map") && v.passed("H_bilinear"), "coalgebra + bilinear");
    o.need(!v.passed("info:algebra_map"), "pi must not be multiplicative");
    o.need(s.pi != xmas->p, "pi == p");
    Induced in = induce(s);
    auto Yi = [](std::size_t i, std::size_t h = 0) { return basis_vec(12 * i + h); };
    const Mat& T = in.ind.tau;
    o.need(T.apply(Yi(3)) == Yi(3) - Yi(0, 6), "tau(Y^3)");
    o.need(T.apply(Yi(4)) == Yi(4) - (Cyc(2) * q6 - Cyc(1)) * Yi(1, 6), "tau(Y^4)");
    o.need(T.apply(Yi(5)) == Yi(5) + Yi(2, 6), "tau(Y^5)");
    o.need(in.thin.thin, "thin");
    auto yp = r_powers(in.ind.P, in.thin.basis->y, 4);
    PreBialgebraOps ops(in.ind.P, &in.ind.xi);
    o.need(ops.xi(kron(yp[1], yp[2], 6)) == basis_vec(6), "xi(y, y^2) = X");
    SparseVec rho4 = kron(basis_vec(4), yp[4], 6) + (Cyc(2) * q_binomial(4, 3, q6)) * kron(basis_vec(7), yp[1], 6);
    o.need(ops.rho(yp[4]) == rho4, "rho(y^4)");
    AnalysisReport r = equivalence_report(s, in.ind, in.thin, *in.ca);
    for (const char* k : {"a", "b", "c", "d"}) o.need(!r.equivalences[k], std::string("(") + k + ") should be false");
    o.need(r.report.ok(), "equivalence report");
  });

  criterion("AC4", "minimal nontrivial bosonization over KC4", kLimitMin, [&](Outcome& o) {
    OreHopf O = catalog::c4min();
    o.need(O.O.dim() == 8 && check_hopf(O.O).ok(), "dim 8 Hopf");
    ProjectionSetup s = ProjectionSetup::from_ore(O);
    Induced in = induce(s);
    o.need(in.thin.thin && in.thin.datum.has_value(), "thin");
    if (!in.thin.thin) return;
    o.need(in.thin.basis->N == 2 && is_quantum_line(in.ind.P, *in.thin.datum, in.thin.basis->y), "R is the N=2 quantum line");
    PreBialgebraOps ops(in.ind.P, &in.ind.xi);
    const SparseVec y = in.thin.basis->y, w = basis_vec(0) - basis_vec(2);
    o.need(ops.xi(kron(y, y, 2)) == w && !w.empty(), "xi(y, y) = 1 - g^2");
    AnalysisReport r = equivalence_report(s, in.ind, in.thin, *in.ca);
    for (const char* k : {"1", "2", "3", "4"}) o.need(!r.equivalences[k], std::string("(") + k + ") should be false");
    const HopfSC& H = *O.H;
    o.need(convolution_power(in.thin.basis->chi, 2, H.coalgebra) == H.coalgebra.counit, "chi^2 = eps");
    SparseVec g2 = power(H.algebra, in.thin.basis->g, 2);
    bool central = true;
    for (std::size_t h = 0; h < H.dim(); ++h)
      central = central && multiply(H.algebra, g2, basis_vec(h)) == multiply(H.algebra, basis_vec(h), g2);
    o.need(central && g2 != H.algebra.unit, "g^2 central and != 1");
    o.need(r.consequences["chi^N = eps"] && r.consequences["g^N central"] && r.consequences["g^N != 1"], "reported consequences");
  });

  std::vector<catalog::Entry> entries = catalog::setups();
  entries.push_back({"kc12_lambda", ProjectionSetup::from_ore(catalog::kc12_lambda())});
  std::map<std::string, Induced> induced;
  for (const auto& e : entries) induced.emplace(e.name, induce(e.setup));

  criterion("AC5", "omega round trip on every catalog setup", 0, [&](Outcome& o) {
    for (const auto& e : entries) {
      CheckReport r = omega_roundtrip_report(e.setup, induced.at(e.name).ind);
      o.need(r.ok() && r.passed("multiplication") && r.passed("comultiplication"), e.name);
    }
  });

  criterion("AC6", "cocycle relations, support and line constancy", 0, [&](Outcome& o) {
    for (const auto& e : entries) {
      const Induced& in = induced.at(e.name);
      CheckReport c = check_cocycle(in.ind.P, in.ind.xi);
      for (const char* k : {"YD3'", "YD5'", "YD6'", "YD7'", "YD8'", "YD10'"}) o.need(c.passed(k), e.name + " " + k);
      if (in.ca) o.need(in.ca->report.passed("support"), e.name + " support");
    }
    const Induced& x = induced.at("xmas_pi");
    const Cyc two = q_factorial(2, x.thin.basis->q);
    for (std::size_t a = 1; a <= 2; ++a) o.need(x.ca->ytable[a][3 - a] == two * x.ca->x, "Xmas line a+b=3 at a=" + std::to_string(a));
    o.need(x.ca->ytable[1][2] == basis_vec(6), "Xmas line value X");
    const Induced& k = induced.at("kc12_lambda");
    const SparseVec w = basis_vec(0) - basis_vec(6);
    for (std::size_t a = 1; a < 6; ++a) o.need(k.ca->ytable[a][6 - a] == w, "KC12 line a+b=6 at a=" + std::to_string(a));
    o.need(k.ca->report.ok(), "KC12 cocycle analysis");
  });

  criterion("AC7", "lambda = 0 entries are Radford-Majid", 0, [&](Outcome& o) {
    for (const char* name : {"b0", "xmas_p", "smash36"}) {
      const Induced& in = induced.at(name);
      const ProjectionSetup& s = in.s;
      Cocycle eps = trivial_cocycle(in.ind.P);
      o.need(in.ind.xi.xi == eps.xi, std::string(name) + " xi = eps (x) eps");
      o.need(validate_setup(s).passed("info:algebra_map"), std::string(name) + " pi multiplicative");
      Bosonization smash = bosonize(in.ind.P, eps, false);
      CheckReport t = omega_transport(s, in.ind, smash.B);
      o.need(t.ok(), std::string(name) + " smash product tensors");
    }
  });

  criterion("AC8", "dim A_1 = 2 dim H exactly for thin R", kLimitWedge, [&](Outcome& o) {
    for (const char* name : {"xmas_pi", "c4min"}) {
      const Induced& in = induced.at(name);
      std::size_t d = first_layer_dim(in.s);
      o.need(d == 2 * in.s.H->dim(), std::string(name) + " dim A_1 = " + std::to_string(d));
      o.need(in.thin.thin, std::string(name) + " thin");
    }
    o.need(first_layer_dim(induced.at("xmas_pi").s) == 24, "Xmas dim A_1 = 24");
    ProjectionSetup n = catalog::non_thin();
    InducedPreBialgebra ind = induced_structures(n);
    bool thin = thinness_and_basis(ind.P, &ind.xi).thin;
    std::size_t d = 0;
    o.need(!thin, "control must not be thin");
    o.need(thin_criterion_agrees(n, thin, &d) && d != 2 * n.H->dim(), "control dim A_1 = " + std::to_string(d));
  });

  criterion("AC9", "uniqueness of the retraction over cosemisimple H", 0, [&](Outcome& o) {
    for (const char* name : {"b0", "c4min", "smash36", "kc12_lambda"}) {
      const ProjectionSetup& s = induced.at(name).s;
      auto fam = bilinear_retractions(*s.A, *s.H, s.sigma);
      o.need(fam && fam->directions.empty(), std::string(name) + " bilinear family is a point");
      if (!fam) continue;
      ProjectionSetup other = s;
      other.pi = fam->particular;
      o.need(validate_setup(other).ok(), std::string(name) + " second retraction valid");
      RetractionTransport t = retraction_tools(s, other);
      o.need(t.asserted && t.equal, std::string(name) + " asserted equal");
    }
    RetractionTransport t = retraction_tools(induced.at("xmas_pi").s, induced.at("xmas_p").s);
    o.need(!t.equal && !t.asserted && t.mutually_inverse && t.coalgebra_maps, "Xmas pi != p with transport");
  });

  criterion("AC10", "Gaussian binomials against the product expansion", 0, [&](Outcome& o) {
    std::vector<std::pair<std::string, Cyc>> qs{{"1", Cyc(1)},          {"-1", Cyc(-1)},       {"zeta3", Cyc::zeta(3)},
                                                {"zeta4", Cyc::zeta(4)}, {"zeta6", Cyc::zeta(6)}, {"zeta12", Cyc::zeta(12)}};
    for (const auto& [qn, q] : qs)
      for (int n = 0; n <= 12; ++n) {
        // prod_{i<n} (1 + q^i t) = sum_k q^{k(k-1)/2} binom(n,k)_q t^k
        std::vector<Cyc> c = product_expansion(n, q);
        for (int k = 0; k <= n; ++k)
          o.need(q_binomial(n, k, q) * q.pow(k * (k - 1) / 2) == c[static_cast<std::size_t>(k)],
                 "binom(" + std::to_string(n) + "," + std::to_string(k) + ") at q=" + qn);
      }
    for (long n = 0; n <= 2; ++n) o.need(q_binomial(n, 3, q6).is_zero(), "binom(n,3) = 0 for n <= 2");
    o.need(q_binomial(4, 3, q6) == Cyc(2) * q6 - Cyc(1), "binom(4,3) = 2q - 1 at zeta6");
  });

  criterion("AC11", "iterated datum equivalence over B0", kLimitIterated, [&](Outcome& o) {
    OreHopf B = catalog::b0();
    auto check = [&](const SparseVec& G, const Vec& chi, const Cyc& lambda, const std::string& label) {
      IteratedDatumReport r = iterated_datum_check(B, G, chi, lambda);
      o.need(r.agree(), label + " sides disagree");
      o.need(r.datum1_lhs == r.datum1_rhs, label + " datum 1");
      o.need(r.datum2_lhs == r.datum2_rhs, label + " datum 2");
      o.need(r.datum3_lhs == r.datum3_rhs, label + " datum 3");
      return r;
    };
    IteratedDatumReport x = check(basis_vec(1), catalog::b0_character(q6), Cyc(0), "Xmas");
    o.need(x.side1 && x.side2, "Xmas datum compatible");
    std::mt19937 rng(20240611);
    const std::vector<Cyc> lambdas{Cyc(0), Cyc(1), Cyc(-1), Cyc(2), Cyc(Rational(1, 2))};
    for (int t = 0; t < 20; ++t) {
      std::size_t j = rng() % 6, k = rng() % 6, l = rng() % lambdas.size();
      check(basis_vec(j), catalog::b0_character(q6.pow(static_cast<long>(k))), lambdas[l],
            "(g^" + std::to_string(j) + ", zeta6^" + std::to_string(k) + ", " + lambdas[l].str() + ")");
    }
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
